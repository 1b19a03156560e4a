#include "airylab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace airylab {

namespace {
// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Dft::Dft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Dft: zero length");
  std::lock_guard lock(planner_mutex());
  buffer_ = reinterpret_cast<cd*>(fftw_alloc_complex(n));
  auto* buf = reinterpret_cast<fftw_complex*>(buffer_);
  forward_plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Dft::~Dft() {
  if (buffer_ == nullptr) return;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_free(buffer_);
}

Dft::Dft(Dft&& other) noexcept
    : n_(other.n_),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)) {}

Dft& Dft::operator=(Dft&& other) noexcept {
  if (this != &other) {
    std::swap(n_, other.n_);
    std::swap(buffer_, other.buffer_);
    std::swap(forward_plan_, other.forward_plan_);
    std::swap(backward_plan_, other.backward_plan_);
  }
  return *this;
}

void Dft::execute(void* plan, std::span<cd> data) const {
  if (data.size() != n_) throw std::invalid_argument("Dft: length mismatch");
  std::copy(data.begin(), data.end(), buffer_);
  fftw_execute(static_cast<fftw_plan>(plan));
  std::copy(buffer_, buffer_ + n_, data.begin());
}

void Dft::forward(std::span<cd> data) const { execute(forward_plan_, data); }
void Dft::backward(std::span<cd> data) const { execute(backward_plan_, data); }

const Dft& dft_of_size(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Dft>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Dft>(n)).first;
  return *it->second;
}

}  // namespace airylab
