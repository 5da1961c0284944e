#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cylinder.hpp"
#include "series.hpp"

namespace ergolab {

/// Membership oracle over positive integers: an explicit finite set, the
/// union of doubling blocks [4^j, 2*4^j], or everything. The block rule is
/// the one driving the divergence construction; its density oscillates
/// between 1/3 and 2/3 along powers of 4 forever.
class IndexSet {
  public:
    static IndexSet doubling_blocks() { return IndexSet(Kind::blocks); }
    static IndexSet all() { return IndexSet(Kind::all); }
    static IndexSet explicit_set(std::vector<std::uint64_t> members) {
        IndexSet s(Kind::finite);
        s.members_.insert(members.begin(), members.end());
        return s;
    }

    bool contains(std::uint64_t n) const {
        if (n == 0) return false;
        switch (kind_) {
            case Kind::all:
                return true;
            case Kind::finite:
                return members_.count(n) != 0;
            case Kind::blocks: {
                const unsigned j = (std::bit_width(n) - 1) / 2;  // 4^j <= n < 4^(j+1)
                return n <= 2 * (std::uint64_t{1} << (2 * j));
            }
        }
        return false;
    }

  private:
    enum class Kind { finite, blocks, all };
    explicit IndexSet(Kind k) : kind_(k) {}
    Kind kind_;
    std::unordered_set<std::uint64_t> members_;
};

/// Injective partial map on the even integers, fixing 0. Forward and inverse
/// maps are kept together so injectivity is enforced at insertion time rather
/// than checked after the fact.
class PartialPermutation {
  public:
    PartialPermutation() {
        fwd_[0] = 0;
        inv_[0] = 0;
    }

    void define(std::int64_t x, std::int64_t y) {
        if (x == 0 || y == 0) throw std::invalid_argument("PartialPermutation: 0 is pinned");
        if (x % 2 != 0 || y % 2 != 0)
            throw std::invalid_argument("PartialPermutation: domain is the even integers");
        if (fwd_.count(x)) throw std::invalid_argument("PartialPermutation: value already mapped");
        if (inv_.count(y)) throw std::invalid_argument("PartialPermutation: image already taken");
        fwd_[x] = y;
        inv_[y] = x;
    }

    bool defined(std::int64_t x) const { return fwd_.count(x) != 0; }
    bool image_taken(std::int64_t y) const { return inv_.count(y) != 0; }

    std::int64_t at(std::int64_t x) const {
        auto it = fwd_.find(x);
        if (it == fwd_.end()) throw std::out_of_range("PartialPermutation: undefined point");
        return it->second;
    }

    std::int64_t preimage(std::int64_t y) const {
        auto it = inv_.find(y);
        if (it == inv_.end()) throw std::out_of_range("PartialPermutation: value has no preimage");
        return it->second;
    }

    /// Pairs excluding the pinned 0.
    std::size_t size() const { return fwd_.size() - 1; }

    const std::map<std::int64_t, std::int64_t>& forward() const { return fwd_; }

    bool consistent() const {
        if (fwd_.size() != inv_.size()) return false;
        for (const auto& [x, y] : fwd_) {
            auto it = inv_.find(y);
            if (it == inv_.end() || it->second != x) return false;
        }
        return true;
    }

  private:
    std::map<std::int64_t, std::int64_t> fwd_;
    std::map<std::int64_t, std::int64_t> inv_;
};

namespace detail {

inline void check_injective_nonzero(const std::vector<std::int64_t>& v, std::uint64_t horizon,
                                    const char* label) {
    if (v.size() < horizon)
        throw std::invalid_argument(std::string("build_permutation: ") + label + " shorter than horizon");
    std::unordered_set<std::int64_t> seen;
    for (std::uint64_t i = 0; i < horizon; ++i) {
        if (v[i] == 0)
            throw std::invalid_argument(std::string("build_permutation: ") + label + " contains 0");
        if (!seen.insert(v[i]).second)
            throw std::invalid_argument(std::string("build_permutation: ") + label + " not injective");
    }
}

}  // namespace detail

/// Builds pi on the doubled values: pi(2 b(n)) = 2 a(n) exactly when n is in
/// F, and a different even integer otherwise. Constrained pairs go in first;
/// the remaining points take the smallest unused even integer by absolute
/// value, positive before negative, skipping the single forbidden image.
/// a_vals[i], b_vals[i] hold the sequence values at n = i+1.
inline PartialPermutation build_permutation(const std::vector<std::int64_t>& a_vals,
                                            const std::vector<std::int64_t>& b_vals,
                                            const IndexSet& f_set, std::uint64_t horizon) {
    if (horizon == 0) throw std::invalid_argument("build_permutation: empty horizon");
    detail::check_injective_nonzero(a_vals, horizon, "a");
    detail::check_injective_nonzero(b_vals, horizon, "b");

    PartialPermutation pi;
    for (std::uint64_t n = 1; n <= horizon; ++n)
        if (f_set.contains(n)) pi.define(2 * b_vals[n - 1], 2 * a_vals[n - 1]);

    for (std::uint64_t n = 1; n <= horizon; ++n) {
        if (f_set.contains(n)) continue;
        const std::int64_t forbidden = 2 * a_vals[n - 1];
        std::int64_t chosen = 0;
        for (std::int64_t k = 2;; k += 2) {
            if (k != forbidden && !pi.image_taken(k)) {
                chosen = k;
                break;
            }
            if (-k != forbidden && !pi.image_taken(-k)) {
                chosen = -k;
                break;
            }
        }
        pi.define(2 * b_vals[n - 1], chosen);
    }
    return pi;
}

/// The event "(T^m x)_0 = 1" under the plain shift is the constraint x_m = 1.
inline void add_plain_shift_event(CylinderConstraint& c, std::int64_t m) { c.require(m, 1); }

/// The event "(S^n x)_0 = 1" under the permutation-conjugated flipped shift
/// reads the coordinate pi(n) and flips it, so it is the constraint
/// x_{pi(n)} = 0.
inline void add_conjugated_shift_event(CylinderConstraint& c, std::int64_t n,
                                       const PartialPermutation& pi) {
    c.require(pi.at(n), 0);
}

/// Exact measure of the cylinder {x_{2a(n)} = 1, x_{pi(2b(n))} = 0}: the two
/// constraints land on the same coordinate (impossible, measure 0) exactly
/// when pi maps 2b(n) to 2a(n), and on distinct coordinates (measure 1/4)
/// otherwise.
inline Dyadic pair_intersection_measure(std::uint64_t n, const std::vector<std::int64_t>& a_vals,
                                        const std::vector<std::int64_t>& b_vals,
                                        const PartialPermutation& pi) {
    if (n == 0 || n > a_vals.size() || n > b_vals.size())
        throw std::out_of_range("pair_intersection_measure: index outside sequences");
    CylinderConstraint c;
    add_plain_shift_event(c, 2 * a_vals[n - 1]);
    add_conjugated_shift_event(c, 2 * b_vals[n - 1], pi);
    return cylinder_measure(c);
}

struct DivergenceReport {
    double liminf_est = 0.0;
    double limsup_est = 0.0;
    double gap = 0.0;
};

/// Running average (1/N) sum_{n<=N} (1/4) 1{n not in F} for the doubling
/// blocks F. Inside a block the average falls, outside it climbs; the min
/// and max over the last two powers-of-4 cycles estimate liminf (target
/// 1/12) and limsup (target 1/6).
inline DivergenceReport divergence_gap(std::uint64_t n_max) {
    if (n_max < 1024) throw std::invalid_argument("divergence_gap: need n_max >= 4^5");
    const IndexSet f = IndexSet::doubling_blocks();

    unsigned top = 0;
    while ((std::uint64_t{1} << (2 * (top + 1))) <= n_max) ++top;  // largest 4^top <= n_max
    const std::uint64_t window_lo = std::uint64_t{1} << (2 * (top - 2));

    std::uint64_t outside = 0;
    DivergenceReport rep;
    rep.liminf_est = 1.0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (!f.contains(n)) ++outside;
        if (n < window_lo) continue;
        const double avg = static_cast<double>(outside) / (4.0 * static_cast<double>(n));
        rep.liminf_est = std::min(rep.liminf_est, avg);
        rep.limsup_est = std::max(rep.limsup_est, avg);
    }
    rep.gap = rep.limsup_est - rep.liminf_est;
    return rep;
}

/// The same running average sampled at checkpoints, for reporting.
inline AverageSeries divergence_series(const std::vector<std::uint64_t>& checkpoints) {
    if (checkpoints.empty()) throw std::invalid_argument("divergence_series: no checkpoints");
    const IndexSet f = IndexSet::doubling_blocks();
    AverageSeries out;
    out.meta = "divergence";
    out.checkpoints = checkpoints;
    std::uint64_t outside = 0, n = 0;
    for (std::uint64_t cp : checkpoints) {
        if (cp <= n) throw std::invalid_argument("divergence_series: checkpoints not increasing");
        while (n < cp)
            if (!f.contains(++n)) ++outside;
        out.values.emplace_back(static_cast<double>(outside) / (4.0 * static_cast<double>(cp)), 0.0);
    }
    return out;
}

}  // namespace ergolab
