#include "mhd2d/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mhd2d {
namespace {

// One cached plan pair per grid size. FFTW_ESTIMATE keeps planning deterministic;
// execution goes through plan-owned aligned buffers so caller arrays never need
// FFTW alignment.
class Engine {
 public:
  explicit Engine(int n) : n_(n) {
    const size_t count = static_cast<size_t>(n) * n;
    in_ = fftw_alloc_complex(count);
    out_ = fftw_alloc_complex(count);
    fwd_ = fftw_plan_dft_2d(n, n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(n, n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
  }
  ~Engine() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(in_);
    fftw_free(out_);
  }
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  Eigen::ArrayXXcd execute(const Eigen::ArrayXXcd& src, bool forward) {
    const size_t bytes = sizeof(fftw_complex) * static_cast<size_t>(n_) * n_;
    std::lock_guard<std::mutex> lock(mu_);
    std::memcpy(in_, src.data(), bytes);
    fftw_execute(forward ? fwd_ : bwd_);
    Eigen::ArrayXXcd dst(n_, n_);
    std::memcpy(dst.data(), out_, bytes);
    if (forward) dst /= static_cast<double>(n_) * n_;
    return dst;
  }

 private:
  int n_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan fwd_;
  fftw_plan bwd_;
  std::mutex mu_;
};

Engine& engine_for(int n) {
  static std::mutex registry_mu;
  static std::map<int, Engine*> registry;
  std::lock_guard<std::mutex> lock(registry_mu);
  auto it = registry.find(n);
  if (it == registry.end()) it = registry.emplace(n, new Engine(n)).first;
  return *it->second;
}

}  // namespace

Eigen::ArrayXXcd fft_forward(const Eigen::ArrayXXcd& values) {
  if (values.rows() != values.cols() || values.rows() < 2)
    throw std::invalid_argument("fft_forward: square n x n input required");
  return engine_for(static_cast<int>(values.rows())).execute(values, true);
}

Eigen::ArrayXXcd fft_backward(const Eigen::ArrayXXcd& coeffs) {
  if (coeffs.rows() != coeffs.cols() || coeffs.rows() < 2)
    throw std::invalid_argument("fft_backward: square n x n input required");
  return engine_for(static_cast<int>(coeffs.rows())).execute(coeffs, false);
}

}  // namespace mhd2d
