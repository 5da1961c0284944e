#pragma once

#include <complex>

namespace ergolab {

/// Kahan compensated accumulator. Long averages here run over up to ~10^7
/// terms of mixed sign; plain summation would lose 2-3 digits, which matters
/// when downstream assertions sit at 1e-12.
template <typename T>
class KahanSum {
  public:
    void add(T value) noexcept {
        const T y = value - comp_;
        const T t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    T value() const noexcept { return sum_; }
    void reset() noexcept { sum_ = T{}; comp_ = T{}; }

  private:
    T sum_{};
    T comp_{};
};

/// Complex specialization keeps separate compensation per component; the
/// naive complex Kahan update is defeated by component cancellation.
template <>
class KahanSum<std::complex<double>> {
  public:
    void add(std::complex<double> value) noexcept {
        re_.add(value.real());
        im_.add(value.imag());
    }
    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }
    void reset() noexcept { re_.reset(); im_.reset(); }

  private:
    KahanSum<double> re_;
    KahanSum<double> im_;
};

}  // namespace ergolab
