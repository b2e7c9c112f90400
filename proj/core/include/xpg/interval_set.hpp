#pragma once

#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

namespace xpg {

// One interval over the reals with individually open or closed endpoints.
// Unbounded ends are encoded as IEEE infinities and are always open.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = true;
    bool hi_open = true;

    bool empty() const;
    bool contains(double x) const;
};

// Normalized finite union of intervals: parts are sorted, pairwise disjoint,
// and maximal (mergeable neighbours are fused). Value semantics throughout.
class IntervalSet {
public:
    IntervalSet() = default; // empty set
    IntervalSet(std::initializer_list<Interval> parts);

    static IntervalSet all();
    static IntervalSet point(double x);

    void add(const Interval& iv);

    bool empty() const { return parts_.empty(); }
    bool contains(double x) const;
    bool intersects(const IntervalSet& other) const;

    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet unite(const IntervalSet& other) const;

    bool operator==(const IntervalSet& other) const;
    bool operator!=(const IntervalSet& other) const { return !(*this == other); }

    const std::vector<Interval>& parts() const { return parts_; }

    // Finite endpoint values, sorted and deduplicated.
    std::vector<double> endpoints() const;

    std::string str() const;

private:
    std::vector<Interval> parts_;

    void normalize();
};

} // namespace xpg
