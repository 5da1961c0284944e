#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>

namespace ergolab {

/// Exact dyadic rational num / den with den a power of two. The cylinder
/// algebra only ever produces such values, so there is no reason to round.
struct Dyadic {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double as_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

/// Conjunction of finitely many coordinate constraints x_i = b on the
/// two-sided binary sequence space. Inserting a conflicting bit for an
/// already-constrained coordinate marks the whole constraint inconsistent
/// (the empty event).
class CylinderConstraint {
  public:
    void require(std::int64_t coordinate, int bit) {
        if (bit != 0 && bit != 1)
            throw std::invalid_argument("CylinderConstraint: bit must be 0 or 1");
        auto [it, inserted] = bits_.emplace(coordinate, bit);
        if (!inserted && it->second != bit) inconsistent_ = true;
    }

    bool inconsistent() const { return inconsistent_; }
    std::size_t constrained_count() const { return bits_.size(); }
    const std::map<std::int64_t, int>& assignments() const { return bits_; }

  private:
    std::map<std::int64_t, int> bits_;
    bool inconsistent_ = false;
};

/// Fair-coin product measure of a cylinder event: 0 when inconsistent,
/// otherwise exactly 2^-(number of constrained coordinates).
inline Dyadic cylinder_measure(const CylinderConstraint& c) {
    if (c.inconsistent()) return {0, 1};
    if (c.constrained_count() > 62)
        throw std::invalid_argument("cylinder_measure: too many coordinates for exact arithmetic");
    return {1, std::int64_t{1} << c.constrained_count()};
}

}  // namespace ergolab
