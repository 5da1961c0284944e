#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <cstring>
#include <map>
#include <memory>
#include <stdexcept>

namespace ergolab {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p *= 2;
    return p;
}

/// One real-to-complex transform of fixed size. Plans with FFTW_ESTIMATE on
/// purpose: ESTIMATE picks the plan deterministically, while MEASURE times
/// candidate plans and can choose differently between runs, which would make
/// repeated experiments differ in the last bits. The input buffer starts
/// zeroed; callers that write only a prefix must restore the zeros they
/// clobbered before the next use (cheaper than wiping the whole buffer when
/// the polynomial degree is far below the grid size).
class RealFft {
  public:
    explicit RealFft(std::size_t size)
        : size_(size),
          in_(static_cast<double*>(fftw_malloc(sizeof(double) * size))),
          out_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (size / 2 + 1)))) {
        if (size_ < 2) throw std::invalid_argument("RealFft: size must be at least 2");
        if (!in_ || !out_) throw std::bad_alloc();
        std::memset(in_, 0, sizeof(double) * size_);
        plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), in_, out_, FFTW_ESTIMATE);
        if (!plan_) throw std::runtime_error("RealFft: planner failed");
    }

    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    ~RealFft() {
        if (plan_) fftw_destroy_plan(plan_);
        if (in_) fftw_free(in_);
        if (out_) fftw_free(out_);
    }

    std::size_t size() const { return size_; }
    std::size_t bins() const { return size_ / 2 + 1; }

    double* input() { return in_; }

    void execute() { fftw_execute(plan_); }

    std::complex<double> output(std::size_t k) const {
        return {out_[k][0], out_[k][1]};
    }

  private:
    std::size_t size_;
    double* in_;
    fftw_complex* out_;
    fftw_plan plan_ = nullptr;
};

/// Plan cache keyed by transform size. Planning costs far more than
/// executing, and the sup-norm scans reuse a handful of sizes thousands of
/// times, so transforms are created once and handed out by reference.
class FftBank {
  public:
    RealFft& get(std::size_t size) {
        auto it = plans_.find(size);
        if (it == plans_.end())
            it = plans_.emplace(size, std::make_unique<RealFft>(size)).first;
        return *it->second;
    }

  private:
    std::map<std::size_t, std::unique_ptr<RealFft>> plans_;
};

}  // namespace ergolab
