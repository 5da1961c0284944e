#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ergolab {

/// Half-open arc [lo, hi) with 0 <= lo < hi <= 1.
struct Arc {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

/// Finite union of arcs on the circle [0,1), kept sorted, disjoint and split
/// at the wrap point. Arithmetic is exact interval arithmetic on doubles; a
/// merge tolerance absorbs endpoint dust so that 1e5 successive rotations do
/// not fragment a set into thousands of slivers.
class CircleSet {
  public:
    static constexpr double merge_tol = 1e-12;

    CircleSet() = default;

    /// Normalizes raw arcs: wraps endpoints mod 1 (an arc given with lo > hi
    /// is read as passing through 0), splits at the wrap point, sorts, merges
    /// overlaps and near-contacts.
    static CircleSet from_arcs(const std::vector<Arc>& raw) {
        std::vector<Arc> pieces;
        for (Arc a : raw) {
            if (a.hi == a.lo) continue;              // degenerate, not wrapped
            double span = a.hi - a.lo;
            if (span < 0.0) span += 1.0;             // wrapped literal
            if (span <= 0.0) continue;
            if (span >= 1.0) return full_circle();
            double lo = wrap(a.lo);
            const double hi = lo + span;
            if (hi <= 1.0) {
                pieces.push_back({lo, hi});
            } else {
                pieces.push_back({lo, 1.0});
                pieces.push_back({0.0, hi - 1.0});
            }
        }
        return merged(std::move(pieces));
    }

    static CircleSet interval(double lo, double hi) { return from_arcs({{lo, hi}}); }
    static CircleSet empty_set() { return CircleSet(); }
    static CircleSet full_circle() {
        CircleSet s;
        s.arcs_.push_back({0.0, 1.0});
        return s;
    }

    double measure() const {
        double m = 0.0;
        for (const Arc& a : arcs_) m += a.length();
        return m;
    }

    bool empty() const { return arcs_.empty(); }
    const std::vector<Arc>& arcs() const { return arcs_; }

    bool contains(double x) const {
        x = wrap(x);
        for (const Arc& a : arcs_)
            if (x >= a.lo && x < a.hi) return true;
        return false;
    }

    /// Number of arcs counted on the circle, i.e. pieces meeting across the
    /// wrap point count once.
    std::size_t circular_arc_count() const {
        if (arcs_.empty()) return 0;
        std::size_t n = arcs_.size();
        if (n > 1 && arcs_.front().lo <= merge_tol && arcs_.back().hi >= 1.0 - merge_tol)
            --n;
        return n;
    }

    static double wrap(double x) {
        double y = std::fmod(x, 1.0);
        if (y < 0.0) y += 1.0;
        if (y >= 1.0) y = 0.0;  // fmod can round up to 1.0 for tiny negatives
        return y;
    }

  private:
    friend CircleSet rotate_set(const CircleSet&, double);
    friend CircleSet intersect_sets(const CircleSet&, const CircleSet&);

    static CircleSet merged(std::vector<Arc> pieces) {
        std::sort(pieces.begin(), pieces.end(),
                  [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
        CircleSet s;
        for (const Arc& a : pieces) {
            if (a.length() <= 0.0) continue;
            if (!s.arcs_.empty() && a.lo <= s.arcs_.back().hi + merge_tol)
                s.arcs_.back().hi = std::max(s.arcs_.back().hi, a.hi);
            else
                s.arcs_.push_back(a);
        }
        return s;
    }

    std::vector<Arc> arcs_;
};

/// Translate every arc by -shift mod 1; this realizes preimages under the
/// rotation x -> x + shift, since {x : x + shift in A} = A - shift.
/// Measure is preserved exactly (endpoints move rigidly).
inline CircleSet rotate_set(const CircleSet& set, double shift) {
    std::vector<Arc> moved;
    moved.reserve(set.arcs().size());
    for (const Arc& a : set.arcs()) {
        const double lo = CircleSet::wrap(a.lo - shift);
        moved.push_back({lo, lo + a.length()});  // from_arcs splits at 1
    }
    return CircleSet::from_arcs(moved);
}

/// Arc-wise intersection by a two-pointer sweep over the sorted arc lists.
inline CircleSet intersect_sets(const CircleSet& a, const CircleSet& b) {
    std::vector<Arc> out;
    std::size_t i = 0, j = 0;
    const auto& u = a.arcs();
    const auto& v = b.arcs();
    while (i < u.size() && j < v.size()) {
        const double lo = std::max(u[i].lo, v[j].lo);
        const double hi = std::min(u[i].hi, v[j].hi);
        if (hi > lo) out.push_back({lo, hi});
        (u[i].hi < v[j].hi ? i : j) += 1;
    }
    return CircleSet::merged(std::move(out));
}

}  // namespace ergolab
