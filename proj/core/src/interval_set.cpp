#include "xpg/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace xpg {

namespace {

// Orders lower bounds; a closed bound at x starts before an open one at x.
int cmp_lower(double a, bool a_open, double b, bool b_open) {
    if (a < b) return -1;
    if (a > b) return 1;
    if (a_open == b_open) return 0;
    return a_open ? 1 : -1;
}

// Orders upper bounds; an open bound at x ends before a closed one at x.
int cmp_upper(double a, bool a_open, double b, bool b_open) {
    if (a < b) return -1;
    if (a > b) return 1;
    if (a_open == b_open) return 0;
    return a_open ? -1 : 1;
}

} // namespace

bool Interval::empty() const {
    if (lo > hi) return true;
    if (lo == hi) return lo_open || hi_open || std::isinf(lo);
    return false;
}

bool Interval::contains(double x) const {
    const bool above = lo_open ? x > lo : x >= lo;
    const bool below = hi_open ? x < hi : x <= hi;
    return above && below;
}

IntervalSet::IntervalSet(std::initializer_list<Interval> parts) {
    for (const Interval& iv : parts) parts_.push_back(iv);
    normalize();
}

IntervalSet IntervalSet::all() {
    IntervalSet s;
    s.parts_.push_back(Interval{});
    return s;
}

IntervalSet IntervalSet::point(double x) {
    IntervalSet s;
    s.parts_.push_back(Interval{x, x, false, false});
    return s;
}

void IntervalSet::add(const Interval& iv) {
    parts_.push_back(iv);
    normalize();
}

void IntervalSet::normalize() {
    std::erase_if(parts_, [](const Interval& iv) { return iv.empty(); });
    std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
        int c = cmp_lower(a.lo, a.lo_open, b.lo, b.lo_open);
        if (c != 0) return c < 0;
        return cmp_upper(a.hi, a.hi_open, b.hi, b.hi_open) < 0;
    });
    std::vector<Interval> merged;
    for (const Interval& iv : parts_) {
        if (!merged.empty()) {
            Interval& last = merged.back();
            // Overlapping, or adjacent with at least one closed touching end.
            const bool joinable =
                cmp_lower(iv.lo, iv.lo_open, last.hi, last.hi_open) < 0 ||
                (iv.lo == last.hi && !(iv.lo_open && last.hi_open));
            if (joinable) {
                if (cmp_upper(iv.hi, iv.hi_open, last.hi, last.hi_open) > 0) {
                    last.hi = iv.hi;
                    last.hi_open = iv.hi_open;
                }
                continue;
            }
        }
        merged.push_back(iv);
    }
    parts_ = std::move(merged);
}

bool IntervalSet::contains(double x) const {
    for (const Interval& iv : parts_)
        if (iv.contains(x)) return true;
    return false;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < parts_.size() && j < other.parts_.size()) {
        const Interval& a = parts_[i];
        const Interval& b = other.parts_[j];
        Interval x;
        if (cmp_lower(a.lo, a.lo_open, b.lo, b.lo_open) >= 0) {
            x.lo = a.lo;
            x.lo_open = a.lo_open;
        } else {
            x.lo = b.lo;
            x.lo_open = b.lo_open;
        }
        if (cmp_upper(a.hi, a.hi_open, b.hi, b.hi_open) <= 0) {
            x.hi = a.hi;
            x.hi_open = a.hi_open;
        } else {
            x.hi = b.hi;
            x.hi_open = b.hi_open;
        }
        if (!x.empty()) out.parts_.push_back(x);
        if (cmp_upper(a.hi, a.hi_open, b.hi, b.hi_open) < 0)
            ++i;
        else
            ++j;
    }
    return out; // pieces of a sorted sweep are already normalized
}

bool IntervalSet::intersects(const IntervalSet& other) const {
    return !intersect(other).empty();
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    IntervalSet out;
    out.parts_ = parts_;
    out.parts_.insert(out.parts_.end(), other.parts_.begin(), other.parts_.end());
    out.normalize();
    return out;
}

bool IntervalSet::operator==(const IntervalSet& other) const {
    if (parts_.size() != other.parts_.size()) return false;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const Interval& a = parts_[i];
        const Interval& b = other.parts_[i];
        if (a.lo != b.lo || a.hi != b.hi || a.lo_open != b.lo_open || a.hi_open != b.hi_open)
            return false;
    }
    return true;
}

std::vector<double> IntervalSet::endpoints() const {
    std::vector<double> out;
    for (const Interval& iv : parts_) {
        if (std::isfinite(iv.lo)) out.push_back(iv.lo);
        if (std::isfinite(iv.hi)) out.push_back(iv.hi);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string IntervalSet::str() const {
    std::ostringstream os;
    bool first = true;
    for (const Interval& iv : parts_) {
        if (!first) os << " u ";
        first = false;
        os << (iv.lo_open ? '(' : '[');
        if (std::isinf(iv.lo))
            os << "-inf";
        else
            os << iv.lo;
        os << ',';
        if (std::isinf(iv.hi))
            os << "+inf";
        else
            os << iv.hi;
        os << (iv.hi_open ? ')' : ']');
    }
    if (first) os << "()";
    return os.str();
}

} // namespace xpg
