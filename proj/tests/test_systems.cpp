#include <catch2/catch_amalgamated.hpp>

#include "ergolab/angle.hpp"
#include "ergolab/circleset.hpp"
#include "ergolab/cylinder.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/systems.hpp"
#include "ergolab/trigpoly.hpp"

using namespace ergolab;
using Catch::Matchers::WithinAbs;

TEST_CASE("angles reduce, normalize and parse", "[systems]") {
    const Angle half = Angle::rational(2, 4);
    CHECK(half.num() == 1);
    CHECK(half.den() == 2);
    CHECK(half.value() == 0.5);

    const Angle neg = Angle::rational(-1, 3);
    CHECK(neg.num() == 2);
    CHECK(neg.den() == 3);

    CHECK_THROWS_AS(Angle::rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Angle::rational(1, -2), std::invalid_argument);

    CHECK(Angle::parse("2/4").num() == 1);
    CHECK(Angle::parse("3").num() == 0);  // integer shifts are the identity on the circle
    CHECK(Angle::parse("sqrt2m1").value() == tag_value(IrrationalTag::sqrt2m1));
    CHECK_FALSE(Angle::parse("goldenm1").is_rational());
    CHECK_THROWS_AS(Angle::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Angle::parse("nonsense"), std::invalid_argument);
}

TEST_CASE("resonance is structural, not numeric", "[systems]") {
    const Angle irr = Angle::irrational(IrrationalTag::goldenm1);
    CHECK(irr.resonant(0));
    CHECK_FALSE(irr.resonant(1));
    CHECK_FALSE(irr.resonant(-17));

    const Angle third = Angle::rational(1, 3);
    CHECK(third.resonant(0));
    CHECK(third.resonant(3));
    CHECK(third.resonant(-6));
    CHECK_FALSE(third.resonant(1));
    CHECK_FALSE(third.resonant(2));

    const Angle zero = Angle::zero();
    CHECK(zero.resonant(1));
    CHECK(zero.resonant(-5));
}

TEST_CASE("trig polynomials merge terms and evaluate", "[systems]") {
    const TrigPolynomial p =
        TrigPolynomial::from_terms({{1, {0.5, 0.0}}, {1, {0.5, 0.0}}, {2, {0.0, 0.0}}});
    CHECK(p.coeff(1) == Complex{1.0, 0.0});
    CHECK(p.coeff(2) == Complex{0.0, 0.0});
    CHECK(p.degree() == 1);

    const TrigPolynomial h = TrigPolynomial::harmonic(1, {1.0, 0.0});
    const Complex at_quarter = h.eval(0.25);  // e(1/4) = i
    CHECK_THAT(at_quarter.real(), WithinAbs(0.0, 1e-15));
    CHECK_THAT(at_quarter.imag(), WithinAbs(1.0, 1e-15));

    const TrigPolynomial mixed = TrigPolynomial::from_terms({{-3, {0.25, 0.0}}, {2, {0.0, 1.0}}});
    CHECK(mixed.degree() == 3);
    CHECK(mixed.sup_bound() == 1.25);

    const TrigPolynomial real_poly =
        TrigPolynomial::from_terms({{0, {1.0, 0.0}}, {1, {0.25, 0.5}}, {-1, {0.25, -0.5}}});
    CHECK(real_poly.is_real());
    const TrigPolynomial lopsided = TrigPolynomial::from_terms({{0, {1.0, 0.0}}, {1, {0.5, 0.0}}});
    CHECK_FALSE(lopsided.is_real());
}

TEST_CASE("invariant projection keeps exactly the resonant frequencies", "[systems]") {
    const Angle irr = Angle::irrational(IrrationalTag::sqrt2m1);
    CHECK(cond_exp_invariant(TrigPolynomial::harmonic(1, {1, 0}), irr).empty());

    const TrigPolynomial e2 = TrigPolynomial::harmonic(2, {1, 0});
    const TrigPolynomial kept = cond_exp_invariant(e2, Angle::rational(1, 2));
    REQUIRE_FALSE(kept.empty());
    CHECK(kept.coeff(2) == Complex{1.0, 0.0});

    const TrigPolynomial c = TrigPolynomial::constant({0.7, -0.2});
    CHECK(cond_exp_invariant(c, irr).coeff(0) == Complex{0.7, -0.2});
}

TEST_CASE("projection is idempotent, invariant and contractive", "[systems]") {
    for (std::uint64_t inst = 0; inst < 50; ++inst) {
        std::vector<std::pair<std::int64_t, Complex>> terms;
        for (std::int64_t k = -6; k <= 6; ++k)
            terms.push_back({k, {uniform01(900, inst * 13 + k + 6) - 0.5,
                                 uniform01(901, inst * 13 + k + 6) - 0.5}});
        const TrigPolynomial f = TrigPolynomial::from_terms(terms);
        const Angle angle = inst % 2 ? Angle::rational(static_cast<std::int64_t>(inst % 5 + 1),
                                                       static_cast<std::int64_t>(inst % 3 + 2))
                                     : Angle::irrational(IrrationalTag::em2);

        const TrigPolynomial once = cond_exp_invariant(f, angle);
        const TrigPolynomial twice = cond_exp_invariant(once, angle);
        REQUIRE(once.terms() == twice.terms());

        for (const auto& [k, coeff] : once.terms()) REQUIRE(angle.resonant(k));
        CHECK(once.sup_bound() <= f.sup_bound() + 1e-15);

        // numeric invariance at a few points: g(x + angle) = g(x)
        for (double x : {0.0, 0.123, 0.77}) {
            const Complex d = once.eval(wrap_unit(x + angle.value())) - once.eval(x);
            REQUIRE_THAT(std::abs(d), WithinAbs(0.0, 1e-9));
        }
    }
}

TEST_CASE("circle sets rotate with exact measure", "[systems]") {
    const CircleSet a = CircleSet::interval(0.0, 0.5);
    CHECK(rotate_set(a, 0.0).measure() == a.measure());
    const CircleSet shifted = rotate_set(a, 0.5);
    REQUIRE(shifted.arcs().size() == 1);
    CHECK_THAT(shifted.arcs()[0].lo, WithinAbs(0.5, 1e-12));
    CHECK_THAT(shifted.arcs()[0].hi, WithinAbs(1.0, 1e-12));

    const CircleSet wrap = CircleSet::from_arcs({{0.9, 1.0}, {0.0, 0.1}});
    const CircleSet merged = rotate_set(wrap, 0.05);
    CHECK_THAT(merged.measure(), WithinAbs(0.2, 1e-12));
    CHECK(merged.circular_arc_count() == 1);
}

TEST_CASE("rotation preserves measure on random sets", "[systems]") {
    for (std::uint64_t inst = 0; inst < 1000; ++inst) {
        std::vector<Arc> arcs;
        const int n_arcs = 1 + static_cast<int>(uniform01(700, inst * 7) * 3);
        for (int j = 0; j < n_arcs; ++j) {
            const double lo = uniform01(701, inst * 7 + j);
            const double len = uniform01(702, inst * 7 + j) * 0.4;
            arcs.push_back({lo, lo + len});
        }
        const CircleSet set = CircleSet::from_arcs(arcs);
        const double shift = uniform01(703, inst);
        REQUIRE_THAT(rotate_set(set, shift).measure(), WithinAbs(set.measure(), 1e-12));
    }
}

TEST_CASE("intersections match the half-open algebra", "[systems]") {
    const CircleSet a = CircleSet::interval(0.0, 0.5);
    CHECK(intersect_sets(a, a).measure() == a.measure());
    CHECK(intersect_sets(a, CircleSet::interval(0.5, 1.0)).empty());

    CHECK(a.contains(0.2));
    CHECK(a.contains(0.0));
    CHECK_FALSE(a.contains(0.5));
}

TEST_CASE("intersection measures agree with a grid oracle", "[systems]") {
    for (std::uint64_t inst = 0; inst < 10; ++inst) {
        auto random_set = [&](std::uint64_t salt) {
            std::vector<Arc> arcs;
            for (int j = 0; j < 3; ++j) {
                const double lo = uniform01(800 + salt, inst * 3 + j);
                const double len = uniform01(810 + salt, inst * 3 + j) * 0.35;
                arcs.push_back({lo, lo + len});
            }
            return CircleSet::from_arcs(arcs);
        };
        const CircleSet a = random_set(0), b = random_set(1);
        const CircleSet both = intersect_sets(a, b);

        std::int64_t hits = 0;
        const std::int64_t grid = 1000000;
        for (std::int64_t j = 0; j < grid; ++j) {
            const double x = (j + 0.5) / static_cast<double>(grid);
            if (a.contains(x) && b.contains(x)) ++hits;
        }
        const double oracle = hits / static_cast<double>(grid);
        REQUIRE_THAT(both.measure(), WithinAbs(oracle, 1e-5));
        CHECK(both.measure() <= std::min(a.measure(), b.measure()) + 1e-12);
    }
}

TEST_CASE("cylinder measures are exact dyadics", "[systems]") {
    CylinderConstraint single;
    single.require(0, 1);
    CHECK(cylinder_measure(single) == Dyadic{1, 2});

    CylinderConstraint pair;
    pair.require(3, 1);
    pair.require(5, 0);
    CHECK(cylinder_measure(pair) == Dyadic{1, 4});

    CylinderConstraint clash;
    clash.require(3, 1);
    clash.require(3, 0);
    CHECK(clash.inconsistent());
    CHECK(cylinder_measure(clash) == Dyadic{0, 1});

    CylinderConstraint repeated;
    repeated.require(7, 1);
    repeated.require(7, 1);  // same bit twice is one constraint, not a clash
    CHECK_FALSE(repeated.inconsistent());
    CHECK(cylinder_measure(repeated) == Dyadic{1, 2});
}

TEST_CASE("cylinder measure is multiplicative in the constraint count", "[systems]") {
    CylinderConstraint c;
    for (int k = 1; k <= 20; ++k) {
        c.require(k * 3 - 40, k % 2);
        const Dyadic m = cylinder_measure(c);
        REQUIRE(m.num == 1);
        REQUIRE(m.den == std::int64_t{1} << k);
    }
}

TEST_CASE("torus iteration wraps into the unit interval", "[systems]") {
    CHECK_THAT(torus_iterate(0.3, 2, Angle::rational(1, 4)), WithinAbs(0.8, 1e-15));
    CHECK_THAT(torus_iterate(0.9, 1, Angle::rational(3, 10)), WithinAbs(0.2, 1e-12));

    const TorusRotationPair sys{Angle::irrational(IrrationalTag::sqrt2m1),
                                Angle::irrational(IrrationalTag::goldenm1)};
    for (double x : {0.0, 0.25, 0.9}) {
        const double tb = torus_iterate(torus_iterate(x, 1, sys.alpha), 1, sys.beta);
        const double bt = torus_iterate(torus_iterate(x, 1, sys.beta), 1, sys.alpha);
        REQUIRE_THAT(tb, WithinAbs(bt, 1e-12));
    }
}

TEST_CASE("finite cyclic averages are exact", "[systems]") {
    const FiniteCyclicPair sys(4, 1, 3);
    const std::vector<Complex> table{{0, 0}, {1, 0}, {0, 0}, {1, 0}};
    const std::vector<std::uint64_t> period{0, 1, 2, 3};
    CHECK(finite_orbit_average(sys, table, period, 0) == Complex{0.5, 0.0});

    const FiniteCyclicPair trivial(1, 0, 0);
    CHECK(finite_orbit_average(trivial, {{0.25, 0.0}}, {5, 9, 14}, 0) == Complex{0.25, 0.0});

    CHECK_THROWS_AS(finite_orbit_average(sys, {{1, 0}}, period, 0), std::invalid_argument);
    CHECK_THROWS_AS(finite_orbit_average(sys, table, {}, 0), std::invalid_argument);
}

TEST_CASE("finite cyclic oracle equals direct summation on integer tables", "[systems]") {
    for (std::uint64_t inst = 0; inst < 100; ++inst) {
        const std::uint64_t m = 1 + static_cast<std::uint64_t>(uniform01(600, inst) * 63);
        const FiniteCyclicPair sys(m, inst % m, (inst * 7 + 3) % m);
        std::vector<Complex> table(m);
        for (std::uint64_t j = 0; j < m; ++j)
            table[j] = {std::floor(uniform01(601, inst * 97 + j) * 9) - 4.0,
                        std::floor(uniform01(602, inst * 97 + j) * 9) - 4.0};
        std::vector<std::uint64_t> iter;
        for (std::uint64_t n = 0; n < 50; ++n) iter.push_back(n * (inst % 5 + 1));

        Complex direct = 0;
        for (std::uint64_t n : iter) direct += table[(inst % m + n * sys.s) % m];
        direct /= static_cast<double>(iter.size());
        // integer-valued partial sums are exact, so the two paths must agree bit for bit
        REQUIRE(finite_orbit_average(sys, table, iter, inst % m) == direct);
    }
}
