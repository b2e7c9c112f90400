#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "xpg/errors.hpp"
#include "xpg/interval_set.hpp"

namespace xpg {

// One coordinate of a point in feature space: an atom for finite domains,
// a real for numeric ones.
using Value = std::variant<std::string, double>;

std::string value_str(const Value& v);

enum class DomainKind { finite, numeric };

struct FeatureDomain {
    DomainKind kind = DomainKind::finite;
    std::vector<std::string> values; // finite only: non-empty, duplicate-free

    static FeatureDomain finite(std::vector<std::string> atoms);
    static FeatureDomain numeric();

    // Position of an atom in a finite domain, -1 if absent.
    int index_of(const std::string& atom) const;
};

struct Feature {
    std::string name;
    FeatureDomain domain;
};

// Edge guard: the subset of the source feature's domain the edge admits.
// Finite guards hold a sorted, deduplicated atom list; numeric guards a
// normalized interval union.
class Literal {
public:
    static Literal finite(std::vector<std::string> atoms);
    static Literal numeric(IntervalSet ranges);

    bool is_numeric() const { return numeric_; }
    bool empty() const;
    bool admits(const Value& v) const;

    const std::vector<std::string>& atoms() const { return atoms_; }
    const IntervalSet& ranges() const { return ranges_; }

    std::string str() const;

private:
    std::vector<std::string> atoms_;
    IntervalSet ranges_;
    bool numeric_ = false;
};

// A point in feature space, one value per feature in declaration order.
struct Instance {
    std::vector<Value> values;
};

struct Finding {
    std::string code; // stable identifier, e.g. "overlapping-literals"
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> errors;
    std::vector<Finding> warnings;

    bool ok() const { return errors.empty(); }
    bool has_error(const std::string& code) const;
    bool has_warning(const std::string& code) const;
    std::string str() const;
};

// Rooted-DAG classifier: feature-labeled internal nodes, class-labeled
// terminals, literal-guarded edges whose admit sets partition the values
// consistent at the node. Immutable once built; node ids from the source
// document are kept verbatim for diagnostics.
class DecisionGraph {
public:
    struct Node {
        std::string id;
        int feature = -1; // internal nodes
        int cls = -1;     // terminal nodes
        bool terminal() const { return cls >= 0; }
    };
    struct Edge {
        int from = -1;
        int to = -1;
        Literal literal;
    };

    int num_features() const { return static_cast<int>(features_.size()); }
    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<Feature>& features() const { return features_; }
    const std::vector<std::string>& classes() const { return classes_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& out_edges(int node) const { return out_[node]; }
    int root() const { return root_; }

    // True when every node has at most one incoming edge.
    bool is_tree() const;

    int node_index(const std::string& id) const; // -1 if unknown
    int feature_index(const std::string& name) const;
    int class_index(const std::string& label) const;

private:
    std::vector<Feature> features_;
    std::vector<std::string> classes_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_;
    std::map<std::string, int> by_id_;
    int root_ = -1;

    friend class DecisionGraphBuilder;
};

// Programmatic construction with the same structural checks as the parser.
// build() throws ParseError on violations (dangling refs, literal/domain
// mismatch, multiple roots, ...).
class DecisionGraphBuilder {
public:
    DecisionGraphBuilder& feature(std::string name, FeatureDomain domain);
    DecisionGraphBuilder& classes(std::vector<std::string> labels);
    int terminal(std::string id, const std::string& cls);
    int internal(std::string id, int feature);
    void edge(int from, int to, Literal literal);
    void root(int node);

    DecisionGraph build();

private:
    DecisionGraph dg_;
    bool root_set_ = false;
};

DecisionGraph parse_model(const std::string& json_text);
DecisionGraph load_model(const std::string& path);
std::string model_to_json(const DecisionGraph& dg);

ValidationReport validate(const DecisionGraph& dg);

// Follows the unique admitting edge from the root; throws DomainError when no
// edge admits (an assumption-(i) gap validate could not certify) and
// InvariantError when several do.
std::string classify(const DecisionGraph& dg, const Instance& v);
int classify_index(const DecisionGraph& dg, const Instance& v);

// Finite witness set per feature: the whole domain for finite features; for
// numeric features every literal endpoint plus one interior point per induced
// open cell, so that points of one cell traverse identical edges everywhere.
std::vector<std::vector<Value>> representative_points(const DecisionGraph& dg);

// Instance input: raw per-feature strings (CLI -v), a CSV file with a feature
// name header, or a JSON array (one instance) / array of arrays.
Instance parse_instance_values(const DecisionGraph& dg, const std::vector<std::string>& raw);
std::vector<Instance> load_instances(const DecisionGraph& dg, const std::string& path);
std::vector<Instance> instances_from_json(const DecisionGraph& dg, const std::string& json_text);
std::vector<Instance> instances_from_csv(const DecisionGraph& dg, const std::string& csv_text);

std::string instance_str(const DecisionGraph& dg, const Instance& v);

} // namespace xpg
