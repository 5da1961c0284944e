#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circleset.hpp"
#include "seqgen.hpp"
#include "series.hpp"
#include "summation.hpp"
#include "systems.hpp"
#include "trigpoly.hpp"

namespace ergolab {

/// Core Cesaro accumulator: values (1/N) sum_{n<=N} term(n) recorded at the
/// given checkpoints. All concrete averages below are instances of this with
/// different term functions; keeping one kernel keeps the compensated
/// summation and checkpoint logic in a single place.
template <typename Term>
AverageSeries cesaro_series(Term&& term, const std::vector<std::uint64_t>& checkpoints,
                            std::string meta) {
    if (checkpoints.empty())
        throw std::invalid_argument("cesaro_series: no checkpoints");
    AverageSeries out;
    out.meta = std::move(meta);
    out.checkpoints = checkpoints;
    out.values.reserve(checkpoints.size());
    KahanSum<std::complex<double>> acc;
    std::uint64_t n = 0;
    for (std::uint64_t cp : checkpoints) {
        if (cp <= n) throw std::invalid_argument("cesaro_series: checkpoints not increasing");
        while (n < cp) acc.add(term(++n));
        out.values.push_back(acc.value() / static_cast<double>(cp));
    }
    return out;
}

/// (1/N) sum f(x + n alpha) g(x + a_n beta): the mixed average with the
/// deterministic iterate on T and the sparse random iterate on S.
inline AverageSeries mixed_average(const TorusRotationPair& sys, const TrigPolynomial& f,
                                   const TrigPolynomial& g, const SparseSequence& seq, double x,
                                   const std::vector<std::uint64_t>& checkpoints) {
    if (seq.count() < checkpoints.back())
        throw std::invalid_argument("mixed_average: sequence shorter than final checkpoint");
    const double av = sys.alpha.value(), bv = sys.beta.value();
    return cesaro_series(
        [&, av, bv, x](std::uint64_t n) {
            return f.eval(wrap_unit(x + static_cast<double>(n) * av)) *
                   g.eval(wrap_unit(x + static_cast<double>(seq.at(n)) * bv));
        },
        checkpoints, "mixed");
}

/// Predicted limit of the mixed average: the product of the two invariant
/// projections evaluated at the base point.
inline std::complex<double> limit_formula(const TorusRotationPair& sys, const TrigPolynomial& f,
                                          const TrigPolynomial& g, double x) {
    return cond_exp_invariant(f, sys.alpha).eval(x) * cond_exp_invariant(g, sys.beta).eval(x);
}

/// (1/N) sum f(x + a_n alpha) g(x + a_n beta): both iterates along the sparse
/// sequence.
inline AverageSeries same_iterate_average(const TorusRotationPair& sys, const TrigPolynomial& f,
                                          const TrigPolynomial& g, const SparseSequence& seq,
                                          double x, const std::vector<std::uint64_t>& checkpoints) {
    if (seq.count() < checkpoints.back())
        throw std::invalid_argument("same_iterate_average: sequence shorter than final checkpoint");
    const double av = sys.alpha.value(), bv = sys.beta.value();
    return cesaro_series(
        [&, av, bv, x](std::uint64_t n) {
            const auto an = static_cast<double>(seq.at(n));
            return f.eval(wrap_unit(x + an * av)) * g.eval(wrap_unit(x + an * bv));
        },
        checkpoints, "same-iterate");
}

/// (1/N) sum f(x + n alpha) g(x + n beta): the classical full double average,
/// the comparison target whose limit the sparse same-iterate average shares.
inline AverageSeries full_double_average(const TorusRotationPair& sys, const TrigPolynomial& f,
                                         const TrigPolynomial& g, double x,
                                         const std::vector<std::uint64_t>& checkpoints) {
    const double av = sys.alpha.value(), bv = sys.beta.value();
    return cesaro_series(
        [&, av, bv, x](std::uint64_t n) {
            const auto nn = static_cast<double>(n);
            return f.eval(wrap_unit(x + nn * av)) * g.eval(wrap_unit(x + nn * bv));
        },
        checkpoints, "full-double");
}

/// (1/N) sum measure(A n T^-n A n S^-a_n A), by exact arc arithmetic. The
/// triple-intersection averages whose limit is bounded below by measure(A)^3.
inline AverageSeries recurrence_series(const TorusRotationPair& sys, const CircleSet& set,
                                       const SparseSequence& seq,
                                       const std::vector<std::uint64_t>& checkpoints) {
    if (seq.count() < checkpoints.back())
        throw std::invalid_argument("recurrence_series: sequence shorter than final checkpoint");
    const double av = sys.alpha.value(), bv = sys.beta.value();
    return cesaro_series(
        [&, av, bv](std::uint64_t n) -> std::complex<double> {
            const CircleSet tpart = rotate_set(set, static_cast<double>(n) * av);
            const CircleSet spart = rotate_set(set, static_cast<double>(seq.at(n)) * bv);
            return intersect_sets(intersect_sets(set, tpart), spart).measure();
        },
        checkpoints, "recurrence");
}

struct ChuReport {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Verifies the projection inequality int f E(f|P1) E(f|P2) dmu >= (int f dmu)^3
/// for a nonnegative f on a finite space with partitions P1, P2 given as
/// block labels. mu defaults to uniform and is normalized.
inline ChuReport chu_check(const std::vector<double>& f, const std::vector<int>& part1,
                           const std::vector<int>& part2, std::vector<double> mu = {}) {
    const std::size_t m = f.size();
    if (m == 0 || part1.size() != m || part2.size() != m)
        throw std::invalid_argument("chu_check: size mismatch");
    if (mu.empty()) mu.assign(m, 1.0 / static_cast<double>(m));
    if (mu.size() != m) throw std::invalid_argument("chu_check: bad measure size");
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (f[i] < 0.0) throw std::invalid_argument("chu_check: f must be nonnegative");
        if (mu[i] < 0.0) throw std::invalid_argument("chu_check: mu must be nonnegative");
        total += mu[i];
    }
    if (total <= 0.0) throw std::invalid_argument("chu_check: measure must be nontrivial");
    for (double& w : mu) w /= total;

    auto conditional = [&](const std::vector<int>& labels) {
        // E(f|P)(x) = block average of f weighted by mu over the block of x.
        std::vector<double> num, den;
        std::vector<int> keys;
        auto block_index = [&](int label) {
            for (std::size_t j = 0; j < keys.size(); ++j)
                if (keys[j] == label) return j;
            keys.push_back(label);
            num.push_back(0.0);
            den.push_back(0.0);
            return keys.size() - 1;
        };
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = block_index(labels[i]);
            num[j] += f[i] * mu[i];
            den[j] += mu[i];
        }
        std::vector<double> e(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = block_index(labels[i]);
            e[i] = den[j] > 0.0 ? num[j] / den[j] : 0.0;
        }
        return e;
    };

    const std::vector<double> e1 = conditional(part1);
    const std::vector<double> e2 = conditional(part2);
    KahanSum<double> lhs, mean;
    for (std::size_t i = 0; i < m; ++i) {
        lhs.add(f[i] * e1[i] * e2[i] * mu[i]);
        mean.add(f[i] * mu[i]);
    }
    const double fbar = mean.value();
    return {lhs.value(), fbar * fbar * fbar};
}

struct WeightedCompareReport {
    std::complex<double> plain;
    std::complex<double> weighted;
    double difference = 0.0;
};

/// Plain Cesaro mean (1/N) sum v_n against the n^-a weighted mean
/// (1/W_N) sum n^-a v_n; for bounded v these are asymptotically equal.
template <typename Sequence>
WeightedCompareReport weighted_compare(Sequence&& v, const SelectionProfile& profile,
                                       std::uint64_t n_max) {
    if (n_max == 0) throw std::invalid_argument("weighted_compare: empty range");
    KahanSum<std::complex<double>> plain, weighted;
    KahanSum<double> w;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const std::complex<double> vn = v(n);
        const double sn = profile.sigma(n);
        plain.add(vn);
        weighted.add(sn * vn);
        w.add(sn);
    }
    WeightedCompareReport r;
    r.plain = plain.value() / static_cast<double>(n_max);
    r.weighted = weighted.value() / w.value();
    r.difference = std::abs(r.plain - r.weighted);
    return r;
}

struct StageComparison {
    std::complex<double> sparse_indexed;      // (1/N) sum f(x+n a) g(x+a_n b)
    std::complex<double> selection_weighted;  // (1/W_N) sum X_n f(x+P_n a) g(x+n b)
    std::complex<double> sigma_weighted;      // (1/W_N) sum sigma_n f(x+P_n a) g(x+n b)

    double max_pairwise_gap() const {
        const double d1 = std::abs(sparse_indexed - selection_weighted);
        const double d2 = std::abs(sparse_indexed - sigma_weighted);
        const double d3 = std::abs(selection_weighted - sigma_weighted);
        return std::max({d1, d2, d3});
    }
};

/// The three computable stages of the successive-comparison strategy: the
/// sparse-indexed average, its selection-weighted rewriting, and the
/// probability-weighted form obtained by replacing bits with their means.
/// All three share one limit; finite-N agreement is the cross-check.
inline StageComparison compare_average_forms(const TorusRotationPair& sys,
                                             const TrigPolynomial& f, const TrigPolynomial& g,
                                             const SelectionSample& sample, double x,
                                             std::uint64_t n_max) {
    if (sample.prefix(sample.size()) < n_max)
        throw std::invalid_argument("compare_average_forms: sample realizes fewer terms than n_max");
    const SparseSequence seq(sample);
    const double av = sys.alpha.value(), bv = sys.beta.value();

    KahanSum<std::complex<double>> stage1, stage2, stage3;
    KahanSum<double> w;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        stage1.add(f.eval(wrap_unit(x + static_cast<double>(n) * av)) *
                   g.eval(wrap_unit(x + static_cast<double>(seq.at(n)) * bv)));
        const std::complex<double> fp =
            f.eval(wrap_unit(x + static_cast<double>(sample.prefix(n)) * av));
        const std::complex<double> gn = g.eval(wrap_unit(x + static_cast<double>(n) * bv));
        if (sample.x(n)) stage2.add(fp * gn);
        stage3.add(sample.profile().sigma(n) * fp * gn);
        w.add(sample.profile().sigma(n));
    }
    StageComparison c;
    c.sparse_indexed = stage1.value() / static_cast<double>(n_max);
    c.selection_weighted = stage2.value() / w.value();
    c.sigma_weighted = stage3.value() / w.value();
    return c;
}

struct LacunaryReport {
    std::vector<double> gammas;
    std::vector<double> limits;   // per-gamma estimate: mean of last 3 sampled values
    std::vector<double> spreads;  // per-gamma max-min of last 3 sampled values
    bool consistent = false;
};

/// Reads a nonnegative series along the subsequences [gamma^k] for each gamma
/// and reports whether the per-gamma limits agree as gamma decreases toward 1.
/// Nonnegativity is required because the underlying subsequence trick only
/// upgrades convergence for nonnegative averages.
inline LacunaryReport lacunary_extrapolate(const AverageSeries& series,
                                           const std::vector<double>& gammas,
                                           double agreement = 0.02) {
    if (series.values.size() < 4)
        throw std::invalid_argument("lacunary_extrapolate: series too short");
    for (const auto& v : series.values)
        if (v.real() < -1e-12 || std::abs(v.imag()) > 1e-12)
            throw std::invalid_argument("lacunary_extrapolate: series terms must be nonnegative reals");

    LacunaryReport rep;
    const double n_last = static_cast<double>(series.checkpoints.back());
    for (double gamma : gammas) {
        if (!(gamma > 1.0))
            throw std::invalid_argument("lacunary_extrapolate: gamma must exceed 1");
        std::vector<double> picked;
        std::size_t prev_choice = static_cast<std::size_t>(-1);
        for (double target = gamma; target <= n_last + 0.5; target *= gamma) {
            // nearest checkpoint in log scale
            std::size_t best = 0;
            double best_gap = 1e300;
            for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
                const double gap = std::abs(std::log(static_cast<double>(series.checkpoints[i])) -
                                            std::log(target));
                if (gap < best_gap) {
                    best_gap = gap;
                    best = i;
                }
            }
            if (best == prev_choice) continue;
            prev_choice = best;
            picked.push_back(series.values[best].real());
        }
        if (picked.size() < 3)
            throw std::invalid_argument("lacunary_extrapolate: too few subsequence samples");
        const double a = picked[picked.size() - 3], b = picked[picked.size() - 2],
                     c = picked[picked.size() - 1];
        rep.gammas.push_back(gamma);
        rep.limits.push_back((a + b + c) / 3.0);
        rep.spreads.push_back(std::max({a, b, c}) - std::min({a, b, c}));
    }
    double lo = rep.limits[0], hi = rep.limits[0];
    for (double v : rep.limits) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const bool limits_agree = (hi - lo) <= agreement;
    const bool spreads_shrink = rep.spreads.back() <= rep.spreads.front() + agreement;
    rep.consistent = limits_agree && spreads_shrink;
    return rep;
}

/// Mean-square distance between two functions sampled on a common grid:
/// sqrt((1/G) sum |u_j - v_j|^2). With G exceeding twice the combined degree
/// this equals the true L2 distance of trigonometric polynomials.
inline double grid_l2_distance(const std::vector<std::complex<double>>& u,
                               const std::vector<std::complex<double>>& v) {
    if (u.size() != v.size() || u.empty())
        throw std::invalid_argument("grid_l2_distance: size mismatch");
    KahanSum<double> acc;
    for (std::size_t i = 0; i < u.size(); ++i) acc.add(std::norm(u[i] - v[i]));
    return std::sqrt(acc.value() / static_cast<double>(u.size()));
}

/// Smallest power-of-two grid strictly finer than Nyquist for products of f
/// and g (combined degree = deg f + deg g).
inline std::size_t nyquist_grid_size(const TrigPolynomial& f, const TrigPolynomial& g) {
    const std::int64_t combined = f.degree() + g.degree();
    std::size_t grid = 8;
    while (grid <= 2 * static_cast<std::size_t>(combined)) grid *= 2;
    return grid;
}

}  // namespace ergolab
