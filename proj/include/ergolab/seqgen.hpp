#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rng.hpp"
#include "summation.hpp"

namespace ergolab {

/// Parameters of the random selection process: index n enters the selected
/// set independently with probability sigma(n) = n^(-a), 0 < a < 1.
struct SelectionProfile {
    double a = 0.5;

    explicit SelectionProfile(double exponent) : a(exponent) {
        if (!(a > 0.0) || !(a < 1.0))
            throw std::invalid_argument("SelectionProfile: exponent must lie in (0,1)");
    }

    double sigma(std::uint64_t n) const {
        return std::pow(static_cast<double>(n), -a);
    }
};

/// Sum of selection probabilities W_N = sum_{n<=N} n^(-a); grows like
/// N^(1-a)/(1-a), so it is the natural normalizer for selection counts.
inline double weight_sum(const SelectionProfile& profile, std::uint64_t n_max) {
    KahanSum<double> w;
    for (std::uint64_t n = 1; n <= n_max; ++n) w.add(profile.sigma(n));
    return w.value();
}

/// One realized draw of the selection process up to n_max, with the prefix
/// counts P_n = X_1 + ... + X_n cached for O(1) lookup. Bits are recomputable
/// from (profile, seed) alone; the sample exists to amortize that work.
class SelectionSample {
  public:
    SelectionSample(SelectionProfile profile, std::uint64_t n_max, std::uint64_t seed)
        : profile_(profile), seed_(seed) {
        if (n_max == 0 || n_max > max_length)
            throw std::invalid_argument("SelectionSample: n_max out of range");
        bits_.resize(n_max + 1, 0);
        prefix_.resize(n_max + 1, 0);
        std::uint32_t count = 0;
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            const bool hit = uniform01(seed_, n) < profile_.sigma(n);
            bits_[n] = hit ? 1 : 0;
            count += hit;
            prefix_[n] = count;
        }
    }

    /// Indicator X_n of the event "n is selected".
    int x(std::uint64_t n) const { return bits_[n]; }
    /// Prefix count P_n; P_0 = 0.
    std::uint32_t prefix(std::uint64_t n) const { return prefix_[n]; }
    /// Centered indicator Y_n = X_n - sigma(n).
    double y(std::uint64_t n) const { return bits_[n] - profile_.sigma(n); }

    std::uint64_t size() const { return bits_.size() - 1; }
    std::uint32_t count() const { return prefix_.back(); }
    const SelectionProfile& profile() const { return profile_; }
    std::uint64_t seed() const { return seed_; }

    static constexpr std::uint64_t max_length = (1ULL << 31) - 1;

  private:
    SelectionProfile profile_;
    std::uint64_t seed_;
    std::vector<std::uint8_t> bits_;
    std::vector<std::uint32_t> prefix_;
};

/// The sparse sequence a_1 < a_2 < ... of selected indices: a_n is the
/// position of the n-th set bit, so P_{a_n} = n by construction.
class SparseSequence {
  public:
    explicit SparseSequence(const SelectionSample& sample)
        : a_exponent_(sample.profile().a) {
        terms_.reserve(sample.count());
        for (std::uint64_t n = 1; n <= sample.size(); ++n)
            if (sample.x(n)) terms_.push_back(n);
    }

    /// Sequence from an explicit bit vector (bits[i] is X_{i+1}); exponent is
    /// carried along for the growth diagnostics.
    static SparseSequence from_bits(const std::vector<std::uint8_t>& bits, double exponent) {
        SparseSequence seq;
        seq.a_exponent_ = exponent;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) seq.terms_.push_back(i + 1);
        return seq;
    }

    /// n-th selected index, 1-based.
    std::uint64_t at(std::uint64_t n) const {
        if (n == 0 || n > terms_.size())
            throw std::out_of_range("SparseSequence: index outside realized range");
        return terms_[n - 1];
    }

    std::uint64_t count() const { return terms_.size(); }
    double exponent() const { return a_exponent_; }
    const std::vector<std::uint64_t>& terms() const { return terms_; }

  private:
    SparseSequence() = default;

    double a_exponent_ = 0.5;
    std::vector<std::uint64_t> terms_;
};

/// Log-log growth diagnostics for a realized sparse sequence. The sequence
/// should grow like c * n^(1/(1-a)) with c = (1-a)^(1/(1-a)), equivalently
/// a_M / ((1-a) M)^(1/(1-a)) -> 1, which is what ratio_tail measures.
struct GrowthFit {
    double slope = 0.0;
    double intercept = 0.0;
    double ratio_tail = 0.0;
    std::uint64_t points = 0;
};

/// Least-squares fit of log a_n against log n over index window [lo, hi]
/// (clipped to the realized range). Requires at least 100 usable indices so
/// the slope is not dominated by a handful of early terms.
inline GrowthFit growth_fit(const SparseSequence& seq, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t m = seq.count();
    if (m == 0) throw std::invalid_argument("growth_fit: empty sequence");
    if (hi > m) hi = m;
    if (lo == 0) lo = 1;
    if (lo > hi || hi - lo + 1 < 100)
        throw std::invalid_argument("growth_fit: window must contain at least 100 indices");

    KahanSum<double> sx, sy, sxx, sxy;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        const double lx = std::log(static_cast<double>(n));
        const double ly = std::log(static_cast<double>(seq.at(n)));
        sx.add(lx);
        sy.add(ly);
        sxx.add(lx * lx);
        sxy.add(lx * ly);
    }
    const double k = static_cast<double>(hi - lo + 1);
    const double det = k * sxx.value() - sx.value() * sx.value();
    GrowthFit fit;
    fit.points = hi - lo + 1;
    fit.slope = (k * sxy.value() - sx.value() * sy.value()) / det;
    fit.intercept = (sy.value() - fit.slope * sx.value()) / k;

    const double a = seq.exponent();
    const double expo = 1.0 / (1.0 - a);
    fit.ratio_tail = static_cast<double>(seq.at(m)) /
                     std::pow((1.0 - a) * static_cast<double>(m), expo);
    return fit;
}

}  // namespace ergolab
