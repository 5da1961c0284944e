#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ergolab {

/// Named irrational rotation numbers. Irrationality is a property of the tag,
/// not of the stored double: resonance questions (is k*angle an integer?) are
/// decided structurally, because no floating-point test can distinguish an
/// irrational from a nearby rational.
enum class IrrationalTag { sqrt2m1, goldenm1, em2, pim3 };

inline const char* tag_name(IrrationalTag t) {
    switch (t) {
        case IrrationalTag::sqrt2m1: return "sqrt2m1";
        case IrrationalTag::goldenm1: return "goldenm1";
        case IrrationalTag::em2: return "em2";
        case IrrationalTag::pim3: return "pim3";
    }
    return "?";
}

inline double tag_value(IrrationalTag t) {
    switch (t) {
        case IrrationalTag::sqrt2m1: return 0.41421356237309515;   // sqrt(2)-1
        case IrrationalTag::goldenm1: return 0.61803398874989485;  // (sqrt(5)-1)/2
        case IrrationalTag::em2: return 0.71828182845904524;       // e-2
        case IrrationalTag::pim3: return 0.14159265358979312;      // pi-3
    }
    return 0.0;
}

/// A rotation angle on the circle [0,1): either an exact reduced rational
/// p/q or one of the named irrationals above.
class Angle {
  public:
    static Angle rational(std::int64_t p, std::int64_t q) {
        if (q <= 0) throw std::invalid_argument("Angle: denominator must be positive");
        p %= q;
        if (p < 0) p += q;
        const std::int64_t g = std::gcd(p, q);
        Angle a;
        a.p_ = p / (g ? g : 1);
        a.q_ = q / (g ? g : 1);
        return a;
    }

    static Angle irrational(IrrationalTag tag) {
        Angle a;
        a.q_ = 0;
        a.tag_ = tag;
        return a;
    }

    static Angle zero() { return rational(0, 1); }

    /// Accepts "p/q", a bare integer (taken mod 1, i.e. angle 0), or a tag name.
    static Angle parse(const std::string& text) {
        for (IrrationalTag t : {IrrationalTag::sqrt2m1, IrrationalTag::goldenm1,
                                IrrationalTag::em2, IrrationalTag::pim3})
            if (text == tag_name(t)) return irrational(t);
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return rational(std::stoll(text), 1);
            return rational(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("Angle: cannot parse literal '" + text + "'");
        }
    }

    bool is_rational() const { return q_ != 0; }
    std::int64_t num() const { return p_; }
    std::int64_t den() const { return q_; }

    double value() const {
        return is_rational() ? static_cast<double>(p_) / static_cast<double>(q_)
                             : tag_value(tag_);
    }

    /// True iff k * angle is an integer. For irrationals this holds only at
    /// k = 0; for reduced p/q exactly when q divides k.
    bool resonant(std::int64_t k) const {
        if (!is_rational()) return k == 0;
        return k % q_ == 0;
    }

    std::string literal() const {
        if (!is_rational()) return tag_name(tag_);
        return std::to_string(p_) + "/" + std::to_string(q_);
    }

  private:
    Angle() = default;
    std::int64_t p_ = 0;
    std::int64_t q_ = 1;  // 0 marks the irrational case
    IrrationalTag tag_ = IrrationalTag::sqrt2m1;
};

}  // namespace ergolab
