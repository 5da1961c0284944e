#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ergolab {

/// A running average recorded at increasing checkpoints N_1 < ... < N_K.
/// Averages are only ever inspected along such grids; storing every N would
/// be wasteful and the lacunary machinery wants geometric grids anyway.
struct AverageSeries {
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::complex<double>> values;
    std::string meta;

    std::complex<double> final_value() const {
        if (values.empty()) throw std::logic_error("AverageSeries: empty");
        return values.back();
    }

    std::vector<double> real_values() const {
        std::vector<double> r(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) r[i] = values[i].real();
        return r;
    }

    /// max - min of |value| over the trailing window; the convergence
    /// diagnostic used by the lacunary verdicts.
    double spread_last(std::size_t window) const {
        if (values.empty()) return 0.0;
        const std::size_t begin = values.size() > window ? values.size() - window : 0;
        double lo = std::abs(values[begin]), hi = lo;
        for (std::size_t i = begin; i < values.size(); ++i) {
            const double v = std::abs(values[i]);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return hi - lo;
    }

    /// Convergence verdict: spread of |value| over the trailing window under
    /// the threshold. Window 5 and threshold 0.02 are the report defaults.
    bool converged(std::size_t window = 5, double threshold = 0.02) const {
        return spread_last(window) <= threshold;
    }

    /// Triangle-inequality sanity bound: every Cesaro average of terms with
    /// |term| <= bound must itself satisfy |value| <= bound.
    bool bounded_by(double bound, double tol = 1e-9) const {
        return std::all_of(values.begin(), values.end(),
                           [&](std::complex<double> v) { return std::abs(v) <= bound + tol; });
    }
};

/// Geometric checkpoint grid round(ratio^k), deduplicated, clipped to n_max,
/// with n_max itself always included as the final checkpoint.
inline std::vector<std::uint64_t> make_checkpoints(std::uint64_t n_max, double ratio = 1.25) {
    if (n_max == 0) throw std::invalid_argument("make_checkpoints: n_max must be positive");
    if (!(ratio > 1.0)) throw std::invalid_argument("make_checkpoints: ratio must exceed 1");
    std::vector<std::uint64_t> cps;
    for (double g = 1.0; g < static_cast<double>(n_max); g *= ratio) {
        const auto n = static_cast<std::uint64_t>(std::llround(g));
        if (n >= n_max) break;
        if (cps.empty() || n > cps.back()) cps.push_back(n);
    }
    cps.push_back(n_max);
    return cps;
}

}  // namespace ergolab
