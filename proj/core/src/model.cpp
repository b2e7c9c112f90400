#include "xpg/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace xpg {

using nlohmann::json;

std::string value_str(const Value& v) {
    if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
    std::ostringstream os;
    os << std::get<double>(v);
    return os.str();
}

FeatureDomain FeatureDomain::finite(std::vector<std::string> atoms) {
    FeatureDomain d;
    d.kind = DomainKind::finite;
    d.values = std::move(atoms);
    return d;
}

FeatureDomain FeatureDomain::numeric() {
    FeatureDomain d;
    d.kind = DomainKind::numeric;
    return d;
}

int FeatureDomain::index_of(const std::string& atom) const {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == atom) return static_cast<int>(i);
    return -1;
}

Literal Literal::finite(std::vector<std::string> atoms) {
    Literal l;
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    l.atoms_ = std::move(atoms);
    l.numeric_ = false;
    return l;
}

Literal Literal::numeric(IntervalSet ranges) {
    Literal l;
    l.ranges_ = std::move(ranges);
    l.numeric_ = true;
    return l;
}

bool Literal::empty() const {
    return numeric_ ? ranges_.empty() : atoms_.empty();
}

bool Literal::admits(const Value& v) const {
    if (numeric_) {
        if (!std::holds_alternative<double>(v))
            throw InvariantError("numeric literal probed with a finite value");
        return ranges_.contains(std::get<double>(v));
    }
    if (!std::holds_alternative<std::string>(v))
        throw InvariantError("finite literal probed with a numeric value");
    const std::string& atom = std::get<std::string>(v);
    return std::binary_search(atoms_.begin(), atoms_.end(), atom);
}

std::string Literal::str() const {
    if (numeric_) return ranges_.str();
    std::string out = "{";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) out += ",";
        out += atoms_[i];
    }
    out += "}";
    return out;
}

bool ValidationReport::has_error(const std::string& code) const {
    for (const Finding& f : errors)
        if (f.code == code) return true;
    return false;
}

bool ValidationReport::has_warning(const std::string& code) const {
    for (const Finding& f : warnings)
        if (f.code == code) return true;
    return false;
}

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (const Finding& f : errors) os << "error[" << f.code << "]: " << f.message << "\n";
    for (const Finding& f : warnings) os << "warning[" << f.code << "]: " << f.message << "\n";
    return os.str();
}

bool DecisionGraph::is_tree() const {
    std::vector<int> indeg(nodes_.size(), 0);
    for (const Edge& e : edges_)
        if (++indeg[e.to] > 1) return false;
    return true;
}

int DecisionGraph::node_index(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? -1 : it->second;
}

int DecisionGraph::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < features_.size(); ++i)
        if (features_[i].name == name) return static_cast<int>(i);
    return -1;
}

int DecisionGraph::class_index(const std::string& label) const {
    for (std::size_t i = 0; i < classes_.size(); ++i)
        if (classes_[i] == label) return static_cast<int>(i);
    return -1;
}

// ---------------------------------------------------------------------------
// Builder

DecisionGraphBuilder& DecisionGraphBuilder::feature(std::string name, FeatureDomain domain) {
    dg_.features_.push_back(Feature{std::move(name), std::move(domain)});
    return *this;
}

DecisionGraphBuilder& DecisionGraphBuilder::classes(std::vector<std::string> labels) {
    dg_.classes_ = std::move(labels);
    return *this;
}

int DecisionGraphBuilder::terminal(std::string id, const std::string& cls) {
    int ci = dg_.class_index(cls);
    if (ci < 0) throw ParseError("node '" + id + "': unknown class '" + cls + "'");
    if (dg_.by_id_.count(id)) throw ParseError("duplicate node id '" + id + "'");
    int idx = static_cast<int>(dg_.nodes_.size());
    dg_.by_id_[id] = idx;
    DecisionGraph::Node n;
    n.id = std::move(id);
    n.cls = ci;
    dg_.nodes_.push_back(std::move(n));
    return idx;
}

int DecisionGraphBuilder::internal(std::string id, int feature) {
    if (feature < 0 || feature >= dg_.num_features())
        throw ParseError("node '" + id + "': feature index out of range");
    if (dg_.by_id_.count(id)) throw ParseError("duplicate node id '" + id + "'");
    int idx = static_cast<int>(dg_.nodes_.size());
    dg_.by_id_[id] = idx;
    DecisionGraph::Node n;
    n.id = std::move(id);
    n.feature = feature;
    dg_.nodes_.push_back(std::move(n));
    return idx;
}

void DecisionGraphBuilder::edge(int from, int to, Literal literal) {
    if (from < 0 || from >= dg_.num_nodes() || to < 0 || to >= dg_.num_nodes())
        throw ParseError("edge references an unknown node");
    const DecisionGraph::Node& src = dg_.nodes_[from];
    if (src.terminal())
        throw ParseError("edge leaving terminal node '" + src.id + "'");
    const FeatureDomain& dom = dg_.features_[src.feature].domain;
    if (literal.is_numeric() != (dom.kind == DomainKind::numeric))
        throw ParseError("edge from '" + src.id + "': literal kind does not match the feature domain");
    if (!literal.is_numeric()) {
        for (const std::string& a : literal.atoms())
            if (dom.index_of(a) < 0)
                throw ParseError("edge from '" + src.id + "': literal value '" + a +
                                 "' is outside the feature domain");
    }
    dg_.edges_.push_back(DecisionGraph::Edge{from, to, std::move(literal)});
}

void DecisionGraphBuilder::root(int node) {
    if (node < 0 || node >= dg_.num_nodes()) throw ParseError("root references an unknown node");
    dg_.root_ = node;
    root_set_ = true;
}

DecisionGraph DecisionGraphBuilder::build() {
    if (dg_.features_.empty()) throw ParseError("model declares no features");
    if (dg_.classes_.empty()) throw ParseError("model declares no classes");
    {
        std::set<std::string> seen;
        for (const Feature& f : dg_.features_)
            if (!seen.insert(f.name).second)
                throw ParseError("duplicate feature name '" + f.name + "'");
        for (const Feature& f : dg_.features_) {
            if (f.domain.kind != DomainKind::finite) continue;
            if (f.domain.values.empty())
                throw ParseError("feature '" + f.name + "': finite domain is empty");
            std::set<std::string> vals(f.domain.values.begin(), f.domain.values.end());
            if (vals.size() != f.domain.values.size())
                throw ParseError("feature '" + f.name + "': duplicate domain value");
        }
    }
    if (dg_.nodes_.empty()) throw ParseError("model declares no nodes");

    std::vector<int> indeg(dg_.nodes_.size(), 0);
    dg_.out_.assign(dg_.nodes_.size(), {});
    for (std::size_t ei = 0; ei < dg_.edges_.size(); ++ei) {
        const DecisionGraph::Edge& e = dg_.edges_[ei];
        dg_.out_[e.from].push_back(static_cast<int>(ei));
        ++indeg[e.to];
    }
    std::vector<int> sources;
    for (std::size_t i = 0; i < dg_.nodes_.size(); ++i)
        if (indeg[i] == 0) sources.push_back(static_cast<int>(i));
    if (sources.size() > 1) {
        std::string ids;
        for (int s : sources) ids += (ids.empty() ? "" : ", ") + dg_.nodes_[s].id;
        throw ParseError("multiple roots: nodes {" + ids + "} have no incoming edge");
    }
    if (sources.empty()) throw ParseError("no source node: every node has an incoming edge");
    if (!root_set_) dg_.root_ = sources[0];
    if (dg_.root_ != sources[0])
        throw ParseError("declared root '" + dg_.nodes_[dg_.root_].id +
                         "' is not the unique source node '" + dg_.nodes_[sources[0]].id + "'");
    return std::move(dg_);
}

// ---------------------------------------------------------------------------
// JSON model schema

namespace {

std::string scalar_to_atom(const json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number()) {
        std::ostringstream os;
        os << j.get<double>();
        return os.str();
    }
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    throw ParseError(std::string(what) + ": expected a scalar");
}

IntervalSet parse_intervals(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": 'intervals' must be an array");
    IntervalSet set;
    for (const json& item : arr) {
        if (!item.is_array() || item.size() < 2)
            throw ParseError(where + ": interval must be [lo, hi, loOpen, hiOpen]");
        Interval iv;
        if (item[0].is_null()) {
            iv.lo = -std::numeric_limits<double>::infinity();
            iv.lo_open = true;
        } else {
            iv.lo = item[0].get<double>();
            iv.lo_open = false;
        }
        if (item[1].is_null()) {
            iv.hi = std::numeric_limits<double>::infinity();
            iv.hi_open = true;
        } else {
            iv.hi = item[1].get<double>();
            iv.hi_open = false;
        }
        if (item.size() > 2 && !item[2].is_null()) iv.lo_open = item[2].get<bool>() || std::isinf(iv.lo);
        if (item.size() > 3 && !item[3].is_null()) iv.hi_open = item[3].get<bool>() || std::isinf(iv.hi);
        if (std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo > iv.hi)
            throw ParseError(where + ": interval has lo > hi");
        set.add(iv);
    }
    return set;
}

} // namespace

DecisionGraph parse_model(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed model document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("model document must be a JSON object");
    for (const char* key : {"features", "classes", "nodes", "edges", "root"})
        if (!doc.contains(key)) throw ParseError(std::string("model document is missing '") + key + "'");

    DecisionGraphBuilder b;
    for (const json& jf : doc["features"]) {
        if (!jf.is_object() || !jf.contains("name") || !jf.contains("domain"))
            throw ParseError("feature entries need 'name' and 'domain'");
        const json& jd = jf["domain"];
        std::string kind = jd.value("kind", "finite");
        if (kind == "finite") {
            if (!jd.contains("values")) throw ParseError("finite domain needs 'values'");
            std::vector<std::string> atoms;
            for (const json& v : jd["values"]) atoms.push_back(scalar_to_atom(v, "domain value"));
            b.feature(jf["name"].get<std::string>(), FeatureDomain::finite(std::move(atoms)));
        } else if (kind == "numeric") {
            b.feature(jf["name"].get<std::string>(), FeatureDomain::numeric());
        } else {
            throw ParseError("unknown domain kind '" + kind + "'");
        }
    }
    std::vector<std::string> classes;
    for (const json& c : doc["classes"]) classes.push_back(scalar_to_atom(c, "class label"));
    b.classes(std::move(classes));

    // First pass creates nodes so edges can refer to them in any order.
    std::map<std::string, int> index_of_id;
    int num_features = static_cast<int>(doc["features"].size());
    for (const json& jn : doc["nodes"]) {
        if (!jn.is_object() || !jn.contains("id"))
            throw ParseError("node entries need an 'id'");
        std::string id = scalar_to_atom(jn["id"], "node id");
        int idx;
        if (jn.contains("class")) {
            idx = b.terminal(id, scalar_to_atom(jn["class"], "node class"));
        } else if (jn.contains("feature")) {
            int f = jn["feature"].get<int>();
            if (f < 1 || f > num_features)
                throw ParseError("node '" + id + "': feature index " + std::to_string(f) +
                                 " out of range 1.." + std::to_string(num_features));
            idx = b.internal(id, f - 1);
        } else {
            throw ParseError("node '" + id + "' carries neither 'feature' nor 'class'");
        }
        index_of_id[id] = idx;
    }

    auto resolve = [&](const json& jid, const char* what) {
        std::string id = scalar_to_atom(jid, what);
        auto it = index_of_id.find(id);
        if (it == index_of_id.end())
            throw ParseError(std::string(what) + " references unknown node '" + id + "'");
        return it->second;
    };

    for (const json& je : doc["edges"]) {
        if (!je.is_object() || !je.contains("from") || !je.contains("to") || !je.contains("literal"))
            throw ParseError("edge entries need 'from', 'to' and 'literal'");
        int from = resolve(je["from"], "edge 'from'");
        int to = resolve(je["to"], "edge 'to'");
        const json& jl = je["literal"];
        std::string where = "edge " + scalar_to_atom(je["from"], "edge") + "->" +
                            scalar_to_atom(je["to"], "edge");
        Literal lit;
        if (jl.contains("values")) {
            std::vector<std::string> atoms;
            for (const json& v : jl["values"]) atoms.push_back(scalar_to_atom(v, "literal value"));
            lit = Literal::finite(std::move(atoms));
        } else if (jl.contains("intervals")) {
            lit = Literal::numeric(parse_intervals(jl["intervals"], where));
        } else {
            throw ParseError(where + ": literal needs 'values' or 'intervals'");
        }
        b.edge(from, to, std::move(lit));
    }

    b.root(resolve(doc["root"], "root"));
    return b.build();
}

DecisionGraph load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string model_to_json(const DecisionGraph& dg) {
    json doc;
    doc["features"] = json::array();
    for (const Feature& f : dg.features()) {
        json jd;
        if (f.domain.kind == DomainKind::finite) {
            jd = {{"kind", "finite"}, {"values", f.domain.values}};
        } else {
            jd = {{"kind", "numeric"}};
        }
        doc["features"].push_back({{"name", f.name}, {"domain", jd}});
    }
    doc["classes"] = dg.classes();
    doc["root"] = dg.nodes()[dg.root()].id;
    doc["nodes"] = json::array();
    for (const DecisionGraph::Node& n : dg.nodes()) {
        if (n.terminal())
            doc["nodes"].push_back({{"id", n.id}, {"class", dg.classes()[n.cls]}});
        else
            doc["nodes"].push_back({{"id", n.id}, {"feature", n.feature + 1}});
    }
    doc["edges"] = json::array();
    for (const DecisionGraph::Edge& e : dg.edges()) {
        json jl;
        if (e.literal.is_numeric()) {
            json arr = json::array();
            for (const Interval& iv : e.literal.ranges().parts()) {
                json item = json::array();
                item.push_back(std::isinf(iv.lo) ? json(nullptr) : json(iv.lo));
                item.push_back(std::isinf(iv.hi) ? json(nullptr) : json(iv.hi));
                item.push_back(iv.lo_open);
                item.push_back(iv.hi_open);
                arr.push_back(item);
            }
            jl["intervals"] = arr;
        } else {
            jl["values"] = e.literal.atoms();
        }
        doc["edges"].push_back({{"from", dg.nodes()[e.from].id},
                                {"to", dg.nodes()[e.to].id},
                                {"literal", jl}});
    }
    return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Classification

int classify_index(const DecisionGraph& dg, const Instance& v) {
    if (static_cast<int>(v.values.size()) != dg.num_features())
        throw DomainError("instance arity does not match the model");
    int node = dg.root();
    while (!dg.nodes()[node].terminal()) {
        const Value& x = v.values[dg.nodes()[node].feature];
        int next = -1;
        for (int ei : dg.out_edges(node)) {
            if (!dg.edges()[ei].literal.admits(x)) continue;
            if (next >= 0)
                throw InvariantError("overlapping literals at node '" + dg.nodes()[node].id + "'");
            next = dg.edges()[ei].to;
        }
        if (next < 0)
            throw DomainError("no admitting edge at node '" + dg.nodes()[node].id +
                              "' for value " + value_str(x));
        node = next;
    }
    return dg.nodes()[node].cls;
}

std::string classify(const DecisionGraph& dg, const Instance& v) {
    return dg.classes()[classify_index(dg, v)];
}

std::vector<std::vector<Value>> representative_points(const DecisionGraph& dg) {
    std::vector<std::vector<Value>> reps(dg.num_features());
    for (int f = 0; f < dg.num_features(); ++f) {
        const FeatureDomain& dom = dg.features()[f].domain;
        if (dom.kind == DomainKind::finite) {
            for (const std::string& a : dom.values) reps[f].push_back(a);
            continue;
        }
        std::vector<double> cuts;
        for (const DecisionGraph::Edge& e : dg.edges()) {
            if (dg.nodes()[e.from].feature != f) continue;
            for (double x : e.literal.ranges().endpoints()) cuts.push_back(x);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        if (cuts.empty()) {
            reps[f].push_back(0.0); // one unbounded cell
            continue;
        }
        reps[f].push_back(cuts.front() - 1.0);
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            reps[f].push_back(cuts[i]);
            if (i + 1 < cuts.size()) reps[f].push_back((cuts[i] + cuts[i + 1]) / 2.0);
        }
        reps[f].push_back(cuts.back() + 1.0);
    }
    return reps;
}

// ---------------------------------------------------------------------------
// Instance input

namespace {

Value value_from_raw(const Feature& f, const std::string& raw) {
    if (f.domain.kind == DomainKind::finite) {
        if (f.domain.index_of(raw) < 0)
            throw DomainError("value '" + raw + "' is not in the domain of feature '" + f.name + "'");
        return raw;
    }
    try {
        std::size_t pos = 0;
        double d = std::stod(raw, &pos);
        while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return d;
    } catch (const std::exception&) {
        throw DomainError("feature '" + f.name + "' is numeric but value '" + raw + "' is not a number");
    }
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

} // namespace

Instance parse_instance_values(const DecisionGraph& dg, const std::vector<std::string>& raw) {
    if (static_cast<int>(raw.size()) != dg.num_features())
        throw DomainError("expected " + std::to_string(dg.num_features()) + " values, got " +
                          std::to_string(raw.size()));
    Instance v;
    for (int f = 0; f < dg.num_features(); ++f)
        v.values.push_back(value_from_raw(dg.features()[f], raw[f]));
    return v;
}

std::vector<Instance> instances_from_csv(const DecisionGraph& dg, const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty instance file");
    std::vector<std::string> header = split_csv_line(line);
    std::vector<int> col_feature(header.size(), -1);
    std::vector<int> feature_col(dg.num_features(), -1);
    for (std::size_t c = 0; c < header.size(); ++c) {
        int f = dg.feature_index(header[c]);
        if (f < 0) throw ParseError("instance column '" + header[c] + "' is not a model feature");
        if (feature_col[f] >= 0) throw ParseError("instance column '" + header[c] + "' repeats");
        col_feature[c] = f;
        feature_col[f] = static_cast<int>(c);
    }
    for (int f = 0; f < dg.num_features(); ++f)
        if (feature_col[f] < 0)
            throw ParseError("instance file lacks a column for feature '" + dg.features()[f].name + "'");

    std::vector<Instance> out;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw ParseError("instance row has " + std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
        std::vector<std::string> ordered(dg.num_features());
        for (int f = 0; f < dg.num_features(); ++f) ordered[f] = cells[feature_col[f]];
        out.push_back(parse_instance_values(dg, ordered));
    }
    return out;
}

std::vector<Instance> instances_from_json(const DecisionGraph& dg, const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed instance document: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("instance document must be a JSON array");
    auto one = [&](const json& arr) {
        std::vector<std::string> raw;
        for (const json& v : arr) raw.push_back(scalar_to_atom(v, "instance value"));
        return parse_instance_values(dg, raw);
    };
    std::vector<Instance> out;
    if (!doc.empty() && doc[0].is_array()) {
        for (const json& row : doc) out.push_back(one(row));
    } else {
        out.push_back(one(doc));
    }
    return out;
}

std::vector<Instance> load_instances(const DecisionGraph& dg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        return instances_from_csv(dg, buf.str());
    return instances_from_json(dg, buf.str());
}

std::string instance_str(const DecisionGraph& dg, const Instance& v) {
    std::string out = "(";
    for (int f = 0; f < dg.num_features(); ++f) {
        if (f) out += ",";
        out += value_str(v.values[f]);
    }
    return out + ")";
}

} // namespace xpg
