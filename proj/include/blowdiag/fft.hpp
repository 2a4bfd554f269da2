#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "blowdiag/grid.hpp"

namespace blowdiag::fft {

namespace detail {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (dim, n, sign, threads) under a lock.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const Grid& grid, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(grid.dim(), grid.n(), sign, threads_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t count = grid.size();
    auto* in = fftw_alloc_complex(count);
    auto* out = fftw_alloc_complex(count);
    int dims[3] = {grid.n(), grid.n(), grid.n()};
    if (threads_ > 1) fftw_plan_with_nthreads(threads_);
    fftw_plan plan = fftw_plan_dft(grid.dim(), dims, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (threads_ > 1) fftw_plan_with_nthreads(1);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw std::runtime_error("fft: FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  void set_threads(int threads) {
    std::lock_guard lock(mutex_);
    if (threads < 1) throw std::invalid_argument("fft: thread count must be >= 1");
    if (threads > 1 && !threads_initialized_) {
      if (fftw_init_threads() == 0) throw std::runtime_error("fft: fftw_init_threads failed");
      threads_initialized_ = true;
    }
    threads_ = threads;
  }

  int threads() const { return threads_; }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
  int threads_ = 1;
  bool threads_initialized_ = false;
};

}  // namespace detail

/// Number of threads used by transforms planned from now on.
inline void set_threads(int threads) { detail::PlanCache::instance().set_threads(threads); }
inline int threads() { return detail::PlanCache::instance().threads(); }

/// Unnormalized forward DFT, out[ξ] = Σ_x in[x] e^{-iξ·x}. in and out must not alias.
inline void forward(const std::complex<double>* in, std::complex<double>* out, const Grid& grid) {
  fftw_plan plan = detail::PlanCache::instance().get(grid, FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

/// Unnormalized inverse DFT, out[x] = Σ_ξ in[ξ] e^{+iξ·x}. in and out must not alias.
inline void backward(const std::complex<double>* in, std::complex<double>* out, const Grid& grid) {
  fftw_plan plan = detail::PlanCache::instance().get(grid, FFTW_BACKWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace blowdiag::fft
