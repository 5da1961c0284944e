#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fft.hpp"
#include "rng.hpp"
#include "seqgen.hpp"
#include "series.hpp"
#include "summation.hpp"
#include "systems.hpp"
#include "trigpoly.hpp"

namespace ergolab {

// ---------------------------------------------------------------------------
// van der Corput inequality

struct VdcReport {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    double lhs = 0.0;
    double rhs = 0.0;

    /// The inequality is a theorem; the slack only absorbs rounding.
    bool holds(double rel_slack = 1e-12) const { return lhs <= rhs * (1.0 + rel_slack); }
};

namespace detail {

inline void vdc_validate(const std::vector<std::vector<std::complex<double>>>& v) {
    if (v.empty()) throw std::invalid_argument("vdc_check: empty vector list");
    const std::size_t dim = v[0].size();
    if (dim == 0) throw std::invalid_argument("vdc_check: zero-dimensional vectors");
    for (const auto& x : v)
        if (x.size() != dim) throw std::invalid_argument("vdc_check: dimension mismatch");
}

inline double vdc_lhs(const std::vector<std::vector<std::complex<double>>>& v) {
    const std::size_t dim = v[0].size();
    double lhs = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        KahanSum<std::complex<double>> s;
        for (const auto& x : v) s.add(x[i]);
        lhs += std::norm(s.value());
    }
    return lhs;
}

inline double vdc_sumsq(const std::vector<std::vector<std::complex<double>>>& v) {
    KahanSum<double> s;
    for (const auto& x : v)
        for (const auto& c : x) s.add(std::norm(c));
    return s.value();
}

/// |sum_n <v_{n+m}, v_n>| for m = 1..N, with <u,w> = sum u_i conj(w_i).
inline std::vector<double> vdc_corr_moduli(const std::vector<std::vector<std::complex<double>>>& v) {
    const std::size_t n = v.size();
    std::vector<double> mods(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        KahanSum<std::complex<double>> c;
        for (std::size_t i = 0; i + m < n; ++i) {
            KahanSum<std::complex<double>> ip;
            for (std::size_t d = 0; d < v[i].size(); ++d)
                ip.add(v[i + m][d] * std::conj(v[i][d]));
            c.add(ip.value());
        }
        mods[m - 1] = std::abs(c.value());
    }
    return mods;  // mods[m-1]; the m = N entry is the empty sum, 0
}

}  // namespace detail

/// ||sum v_n||^2 <= 2 N/M sum ||v_n||^2 + 4 N/M sum_{m<=M} |sum_n <v_{n+m}, v_n>|
/// for an integer shift budget 1 <= M <= N.
inline VdcReport vdc_check(const std::vector<std::vector<std::complex<double>>>& v,
                           std::uint64_t m_budget) {
    detail::vdc_validate(v);
    const std::uint64_t n = v.size();
    if (m_budget < 1 || m_budget > n) throw std::invalid_argument("vdc_check: M out of range");
    const auto mods = detail::vdc_corr_moduli(v);
    KahanSum<double> corr;
    for (std::uint64_t m = 1; m <= m_budget; ++m) corr.add(mods[m - 1]);
    const double nd = static_cast<double>(n), md = static_cast<double>(m_budget);
    VdcReport r;
    r.n = n;
    r.m = m_budget;
    r.lhs = detail::vdc_lhs(v);
    r.rhs = 2.0 * nd / md * detail::vdc_sumsq(v) + 4.0 * nd / md * corr.value();
    return r;
}

/// Every admissible M at once; the correlation sums are shared so this costs
/// the same as a single check plus O(N) bookkeeping.
inline std::vector<VdcReport> vdc_check_all(const std::vector<std::vector<std::complex<double>>>& v) {
    detail::vdc_validate(v);
    const std::uint64_t n = v.size();
    const auto mods = detail::vdc_corr_moduli(v);
    const double lhs = detail::vdc_lhs(v);
    const double sumsq = detail::vdc_sumsq(v);
    std::vector<VdcReport> out;
    out.reserve(n);
    KahanSum<double> corr;
    for (std::uint64_t m = 1; m <= n; ++m) {
        corr.add(mods[m - 1]);
        VdcReport r;
        r.n = n;
        r.m = m;
        r.lhs = lhs;
        r.rhs = 2.0 * static_cast<double>(n) / static_cast<double>(m) * sumsq +
                4.0 * static_cast<double>(n) / static_cast<double>(m) * corr.value();
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// sup-norm brackets for autocorrelation trigonometric polynomials

struct SupNormBracket {
    double grid_max = 0.0;
    double upper_bound = 0.0;
    std::size_t grid_size = 0;
    std::size_t degree = 0;
};

/// |P(j/K)| for j = 0..K/2 of P(t) = sum_{n=1}^{D} c_n e(nt) with real
/// coefficients (c is 1-based: c[0] ignored, degree = c.size()-1). Real
/// coefficients give |P(1-t)| = |P(t)|, so half the grid carries the maximum.
inline std::vector<double> grid_moduli(const std::vector<double>& coeffs, std::size_t grid_size,
                                       FftBank& bank) {
    if (coeffs.size() < 2) throw std::invalid_argument("grid_moduli: no coefficients");
    const std::size_t degree = coeffs.size() - 1;
    if (grid_size <= degree) throw std::invalid_argument("grid_moduli: grid below degree");
    RealFft& fft = bank.get(grid_size);
    double* in = fft.input();
    for (std::size_t n = 1; n <= degree; ++n) in[n] = coeffs[n];
    fft.execute();
    std::vector<double> mods(fft.bins());
    for (std::size_t k = 0; k < fft.bins(); ++k) mods[k] = std::abs(fft.output(k));
    for (std::size_t n = 1; n <= degree; ++n) in[n] = 0.0;
    return mods;
}

/// Certified bracket for max over m in [1,N] and t in [0,1] of
/// |sum_{n=1}^{N-m} y_{n+m} y_n e(nt)|, the autocorrelation polynomial sweep.
/// y is 1-based (y[0] ignored). Every shift is evaluated on one shared
/// K-point grid with K = 32 x max degree rounded up to a power of two; the
/// Bernstein derivative bound 2 pi D sup|P| then certifies
/// sup <= grid_max / (1 - pi D / K) across all shifts at once.
inline SupNormBracket autocorr_supnorm(const std::vector<double>& y, std::size_t n_terms,
                                       FftBank& bank) {
    if (n_terms < 2) throw std::invalid_argument("autocorr_supnorm: need at least two terms");
    if (y.size() < n_terms + 1) throw std::invalid_argument("autocorr_supnorm: y too short");
    const std::size_t max_degree = n_terms - 1;
    const std::size_t grid = next_pow2(32 * max_degree);
    if (static_cast<double>(grid) <= std::numbers::pi * static_cast<double>(max_degree))
        throw std::invalid_argument("autocorr_supnorm: grid does not dominate pi x degree");

    RealFft& fft = bank.get(grid);
    double* in = fft.input();
    double grid_max = 0.0;
    for (std::size_t m = 1; m < n_terms; ++m) {
        const std::size_t deg = n_terms - m;
        for (std::size_t n = 1; n <= deg; ++n) in[n] = y[n + m] * y[n];
        fft.execute();
        for (std::size_t k = 0; k < fft.bins(); ++k)
            grid_max = std::max(grid_max, std::abs(fft.output(k)));
        for (std::size_t n = 1; n <= deg; ++n) in[n] = 0.0;
    }
    SupNormBracket b;
    b.grid_max = grid_max;
    b.grid_size = grid;
    b.degree = max_degree;
    b.upper_bound = grid_max / (1.0 - std::numbers::pi * static_cast<double>(max_degree) /
                                          static_cast<double>(grid));
    return b;
}

/// The production entry: centered selection variables Y_n = X_n - sigma_n
/// from a sample. The sample must extend to 2N (the shifted factor Y_{n+m}
/// reaches index N; the stronger requirement keeps a margin for diagnostics
/// that widen the shift range).
inline SupNormBracket pair_corr_supnorm(const SelectionSample& sample, std::size_t n_terms,
                                        FftBank& bank) {
    if (sample.size() < 2 * static_cast<std::uint64_t>(n_terms))
        throw std::invalid_argument("pair_corr_supnorm: sample shorter than 2N");
    std::vector<double> y(n_terms + 1, 0.0);
    for (std::size_t n = 1; n <= n_terms; ++n) y[n] = sample.y(n);
    return autocorr_supnorm(y, n_terms, bank);
}

// ---------------------------------------------------------------------------
// scaling fit for the sup-norm growth exponent

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) throw std::invalid_argument("fit_line: need two points");
    KahanSum<double> sx, sy;
    for (std::size_t i = 0; i < n; ++i) {
        sx.add(xs[i]);
        sy.add(ys[i]);
    }
    const double xbar = sx.value() / static_cast<double>(n);
    const double ybar = sy.value() / static_cast<double>(n);
    KahanSum<double> sxx, sxy;
    for (std::size_t i = 0; i < n; ++i) {
        sxx.add((xs[i] - xbar) * (xs[i] - xbar));
        sxy.add((xs[i] - xbar) * (ys[i] - ybar));
    }
    if (sxx.value() <= 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = sxy.value() / sxx.value();
    f.intercept = ybar - f.slope * xbar;
    if (n > 2) {
        KahanSum<double> rss;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ys[i] - (f.intercept + f.slope * xs[i]);
            rss.add(r * r);
        }
        f.stderr_slope = std::sqrt(rss.value() / static_cast<double>(n - 2) / sxx.value());
    }
    return f;
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median_of: empty");
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

struct ScalingRow {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double grid_max = 0.0;
    double upper_bound = 0.0;
};

struct ScalingFit {
    double a = 0.0;
    std::vector<std::uint64_t> sizes;
    std::vector<double> medians;  // per-size median of grid_max over seeds
    std::vector<ScalingRow> rows;
    double slope = 0.0;
    double half_width = 0.0;  // 2 x standard error of the slope
    double target = 0.0;      // 1/2 - a
};

/// Fits the growth exponent of the autocorrelation sup-norm: per size N take
/// the median grid_max over seeds, divide out sqrt(log N), and regress the
/// log against log N. The expected slope is 1/2 - a.
inline ScalingFit supnorm_scaling_fit(double a, const std::vector<std::uint64_t>& sizes,
                                      const std::vector<std::uint64_t>& seeds, FftBank& bank) {
    if (sizes.size() < 4) throw std::invalid_argument("supnorm_scaling_fit: need 4 sizes");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("supnorm_scaling_fit: sizes must increase");
    if (seeds.size() < 10) throw std::invalid_argument("supnorm_scaling_fit: need 10 seeds");

    const SelectionProfile profile(a);
    ScalingFit fit;
    fit.a = a;
    fit.sizes = sizes;
    fit.target = 0.5 - a;
    std::vector<double> xs, ys;
    for (std::uint64_t n : sizes) {
        std::vector<double> maxima;
        for (std::uint64_t seed : seeds) {
            const SelectionSample sample(profile, 2 * n, seed);
            const SupNormBracket b = pair_corr_supnorm(sample, n, bank);
            fit.rows.push_back({n, seed, b.grid_max, b.upper_bound});
            maxima.push_back(b.grid_max);
        }
        const double med = median_of(maxima);
        fit.medians.push_back(med);
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(med / std::sqrt(std::log(static_cast<double>(n)))));
    }
    const LineFit line = fit_line(xs, ys);
    fit.slope = line.slope;
    fit.half_width = 2.0 * line.stderr_slope;
    return fit;
}

// ---------------------------------------------------------------------------
// probabilistic lemma diagnostics

/// P_N / W_N at the checkpoints: the selection count against its expected
/// mass. The strong law drives this ratio to 1. Templated so diagnostics can
/// substitute a deterministic stand-in for the sample.
template <typename SampleLike>
AverageSeries slln_ratio(const SampleLike& sample,
                         const std::vector<std::uint64_t>& checkpoints) {
    if (checkpoints.empty() || checkpoints.back() > sample.size())
        throw std::invalid_argument("slln_ratio: checkpoints exceed sample");
    AverageSeries out;
    out.meta = "slln";
    out.checkpoints = checkpoints;
    KahanSum<double> w;
    std::uint64_t n = 0;
    for (std::uint64_t cp : checkpoints) {
        if (cp <= n) throw std::invalid_argument("slln_ratio: checkpoints not increasing");
        while (n < cp) w.add(sample.profile().sigma(++n));
        out.values.emplace_back(static_cast<double>(sample.prefix(cp)) / w.value(), 0.0);
    }
    return out;
}

struct PairSumReport {
    double value = 0.0;
    double bound = 0.0;
    std::uint64_t shifts = 0;      // floor(N^b)
    bool in_lemma_range = false;   // a in (0, 1/6)
};

/// sum_{m=1}^{floor(N^b)} sum_{n=1}^{N} X_{n+m} X_n against the frozen
/// envelope C N^{b+1-2a}. Outside a in (0,1/6) the value is still computed
/// but flagged as outside the proven range.
template <typename SampleLike>
PairSumReport pair_sum_bound(const SampleLike& sample, std::uint64_t n_terms, double b,
                             double envelope_c) {
    if (n_terms == 0) throw std::invalid_argument("pair_sum_bound: empty range");
    if (!(b > 0.0) || !(b < 1.0)) throw std::invalid_argument("pair_sum_bound: b must be in (0,1)");
    const auto shifts =
        static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(n_terms), b)));
    if (shifts == 0) throw std::invalid_argument("pair_sum_bound: N^b below 1");
    if (sample.size() < n_terms + shifts)
        throw std::invalid_argument("pair_sum_bound: sample shorter than N + N^b");

    std::vector<std::uint8_t> bits(n_terms + shifts + 1, 0);
    for (std::uint64_t n = 1; n <= n_terms + shifts; ++n)
        bits[n] = static_cast<std::uint8_t>(sample.x(n));
    std::uint64_t total = 0;
    for (std::uint64_t m = 1; m <= shifts; ++m)
        for (std::uint64_t n = 1; n <= n_terms; ++n) total += bits[n + m] & bits[n];

    const double a = sample.profile().a;
    PairSumReport r;
    r.value = static_cast<double>(total);
    r.shifts = shifts;
    r.bound = envelope_c * std::pow(static_cast<double>(n_terms), b + 1.0 - 2.0 * a);
    r.in_lemma_range = a > 0.0 && a < 1.0 / 6.0;
    return r;
}

/// Running density (1/N) sum 1{event_n} for independent events with
/// probability p(n); under summable-enough p the density dies out.
template <typename Prob>
AverageSeries bc_density(Prob&& p, std::uint64_t seed, std::uint64_t n_max,
                         const std::vector<std::uint64_t>& checkpoints) {
    if (checkpoints.empty() || checkpoints.back() > n_max)
        throw std::invalid_argument("bc_density: checkpoints exceed n_max");
    AverageSeries out;
    out.meta = "bc-density";
    out.checkpoints = checkpoints;
    std::uint64_t hits = 0, n = 0;
    for (std::uint64_t cp : checkpoints) {
        if (cp <= n) throw std::invalid_argument("bc_density: checkpoints not increasing");
        while (n < cp) {
            ++n;
            const double pn = p(n);
            if (!(pn >= 0.0 && pn <= 1.0))
                throw std::invalid_argument("bc_density: probability outside [0,1]");
            if (uniform01(seed, n) < pn) ++hits;
        }
        out.values.emplace_back(static_cast<double>(hits) / static_cast<double>(cp), 0.0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// tail-norm diagnostics for the centered weighted averages

enum class TailIterate {
    prefix_count,  // f moved by X_1 + ... + X_n, g moved by n
    diagonal,      // both moved by n
};

struct TailReport {
    std::vector<std::uint64_t> sizes;  // N_k = floor(gamma^k)
    std::vector<double> terms;         // squared L2 norm of the inner average at N_k
    std::vector<double> partials;      // running sum of terms
};

/// Squared L2 norms of (1/W_N) sum_{n<=N} Y_n f(x + i(n) alpha) g(x + n beta)
/// along N = floor(gamma^k), k = 1..K, where i(n) is the prefix count or n
/// itself. The norm is exact: the integrand is a trigonometric polynomial of
/// degree deg f + deg g, so averaging |.|^2 over a finer power-of-two grid
/// equals the integral. Summability of the terms is the quantity of interest.
template <typename SampleLike>
TailReport centered_tail_norms(const TorusRotationPair& sys, const TrigPolynomial& f,
                               const TrigPolynomial& g, const SampleLike& sample, double gamma,
                               int k_count, TailIterate mode) {
    if (!(gamma > 1.0)) throw std::invalid_argument("centered_tail_norms: gamma must exceed 1");
    if (k_count < 1) throw std::invalid_argument("centered_tail_norms: need at least one term");

    const std::int64_t combined = f.degree() + g.degree();
    std::size_t grid = 8;
    while (grid <= 2 * static_cast<std::size_t>(combined)) {
        grid *= 2;
        if (grid > 65536)
            throw std::invalid_argument("centered_tail_norms: combined degree exceeds grid capacity");
    }

    std::vector<std::uint64_t> sizes(k_count);
    for (int k = 1; k <= k_count; ++k)
        sizes[k - 1] = static_cast<std::uint64_t>(std::floor(std::pow(gamma, k)));
    if (sizes.back() > sample.size())
        throw std::invalid_argument("centered_tail_norms: sample shorter than gamma^K");

    const double av = sys.alpha.value(), bv = sys.beta.value();
    std::vector<KahanSum<std::complex<double>>> acc(grid);
    KahanSum<double> w;
    KahanSum<double> partial;

    TailReport rep;
    rep.sizes = sizes;
    std::uint64_t n = 0;
    for (std::uint64_t target : sizes) {
        while (n < target) {
            ++n;
            const double yn = sample.y(n);
            const double fi = mode == TailIterate::prefix_count
                                  ? static_cast<double>(sample.prefix(n))
                                  : static_cast<double>(n);
            w.add(sample.profile().sigma(n));
            for (std::size_t j = 0; j < grid; ++j) {
                const double xj = static_cast<double>(j) / static_cast<double>(grid);
                acc[j].add(yn * f.eval(wrap_unit(xj + fi * av)) *
                           g.eval(wrap_unit(xj + static_cast<double>(n) * bv)));
            }
        }
        KahanSum<double> norm2;
        for (std::size_t j = 0; j < grid; ++j) norm2.add(std::norm(acc[j].value() / w.value()));
        const double term = norm2.value() / static_cast<double>(grid);
        partial.add(term);
        rep.terms.push_back(term);
        rep.partials.push_back(partial.value());
    }
    return rep;
}

}  // namespace ergolab
