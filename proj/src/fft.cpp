#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gkdv::fft {
namespace {

enum class Kind { r2c, c2r, c2c_forward };

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(Kind kind, std::size_t n) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    // The planner may scribble over its arrays, so give it scratch ones.
    const int size = static_cast<int>(n);
    auto* real = fftw_alloc_real(n);
    auto* cplx_a = fftw_alloc_complex(n);
    auto* cplx_b = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    switch (kind) {
      case Kind::r2c: plan = fftw_plan_dft_r2c_1d(size, real, cplx_a, flags); break;
      case Kind::c2r: plan = fftw_plan_dft_c2r_1d(size, cplx_a, real, flags); break;
      case Kind::c2c_forward:
        plan = fftw_plan_dft_1d(size, cplx_a, cplx_b, FFTW_FORWARD, flags);
        break;
    }
    fftw_free(real);
    fftw_free(cplx_a);
    fftw_free(cplx_b);
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<Kind, std::size_t>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void real_to_complex(std::span<const double> in, std::span<std::complex<double>> out) {
  if (out.size() != in.size() / 2 + 1) throw std::invalid_argument("r2c: size mismatch");
  fftw_plan plan = cache().get(Kind::r2c, in.size());
  // Out-of-place r2c does not modify its input.
  fftw_execute_dft_r2c(plan, const_cast<double*>(in.data()), as_fftw(out.data()));
}

void complex_to_real(std::span<const std::complex<double>> in, std::span<double> out) {
  if (in.size() != out.size() / 2 + 1) throw std::invalid_argument("c2r: size mismatch");
  fftw_plan plan = cache().get(Kind::c2r, out.size());
  thread_local std::vector<std::complex<double>> scratch;
  scratch.assign(in.begin(), in.end());
  fftw_execute_dft_c2r(plan, as_fftw(scratch.data()), out.data());
}

void complex_forward(std::span<const std::complex<double>> in,
                     std::span<std::complex<double>> out) {
  if (in.size() != out.size()) throw std::invalid_argument("c2c: size mismatch");
  fftw_plan plan = cache().get(Kind::c2c_forward, in.size());
  fftw_execute_dft(plan, as_fftw(const_cast<std::complex<double>*>(in.data())),
                   as_fftw(out.data()));
}

}  // namespace gkdv::fft
