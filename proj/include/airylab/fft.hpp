#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace airylab {

using cd = std::complex<double>;

// In-place complex DFT of a fixed length, backed by FFTW.
//   forward:  X_k = sum_j x_j exp(-2 pi i jk/n)
//   backward: x_j = sum_k X_k exp(+2 pi i jk/n)   (unnormalized)
// Plans are created with FFTW_ESTIMATE so results are reproducible run to run.
class Dft {
 public:
  explicit Dft(std::size_t n);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;
  Dft(Dft&& other) noexcept;
  Dft& operator=(Dft&& other) noexcept;

  std::size_t size() const { return n_; }
  void forward(std::span<cd> data) const;
  void backward(std::span<cd> data) const;

 private:
  void execute(void* plan, std::span<cd> data) const;

  std::size_t n_ = 0;
  cd* buffer_ = nullptr;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

// Thread-local cache of transforms keyed by length.
const Dft& dft_of_size(std::size_t n);

}  // namespace airylab
