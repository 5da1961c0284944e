#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "angle.hpp"
#include "summation.hpp"
#include "trigpoly.hpp"

namespace ergolab {

/// Two commuting rotations of the circle: T x = x + alpha, S x = x + beta,
/// both preserving Lebesgue measure. The concrete stand-in for an abstract
/// pair of commuting measure-preserving transformations.
struct TorusRotationPair {
    Angle alpha;
    Angle beta;
};

inline double wrap_unit(double x) {
    double y = std::fmod(x, 1.0);
    if (y < 0.0) y += 1.0;
    if (y >= 1.0) y = 0.0;
    return y;
}

/// Point of the orbit x + n * angle, reduced mod 1 to keep the phase passed
/// into trigonometric evaluation small.
inline double torus_iterate(double x, std::uint64_t n, const Angle& angle) {
    return wrap_unit(x + static_cast<double>(n) * angle.value());
}

/// Residue rotations on Z/m: T x = x + s, S x = x + t, uniform measure.
/// Everything about this system is exact integer arithmetic, which is what
/// makes it the brute-force oracle for the torus averages.
struct FiniteCyclicPair {
    std::uint64_t m = 1;
    std::uint64_t s = 0;
    std::uint64_t t = 0;

    FiniteCyclicPair(std::uint64_t modulus, std::uint64_t shift_s, std::uint64_t shift_t)
        : m(modulus), s(shift_s % (modulus ? modulus : 1)), t(shift_t % (modulus ? modulus : 1)) {
        if (modulus == 0) throw std::invalid_argument("FiniteCyclicPair: modulus must be positive");
    }

    std::uint64_t iterate_s(std::uint64_t x, std::uint64_t n) const {
        return (x + (n % m) * s) % m;
    }
    std::uint64_t iterate_t(std::uint64_t x, std::uint64_t n) const {
        return (x + (n % m) * t) % m;
    }
};

/// Average of a value table over the orbit x0, x0+s, ... sampled at the given
/// iterate counts. Exact up to double rounding of the final division; with
/// integer-valued tables the sums themselves are exact.
inline std::complex<double> finite_orbit_average(const FiniteCyclicPair& sys,
                                                 const std::vector<std::complex<double>>& table,
                                                 const std::vector<std::uint64_t>& iterates,
                                                 std::uint64_t x0) {
    if (table.size() != sys.m)
        throw std::invalid_argument("finite_orbit_average: table size must equal modulus");
    if (iterates.empty())
        throw std::invalid_argument("finite_orbit_average: empty iterate sequence");
    KahanSum<std::complex<double>> acc;
    for (std::uint64_t n : iterates) acc.add(table[sys.iterate_s(x0 % sys.m, n)]);
    return acc.value() / static_cast<double>(iterates.size());
}

}  // namespace ergolab
