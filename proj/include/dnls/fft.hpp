#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace dnls::fft {

// Unnormalized DFTs backed by FFTW. Plans are cached per size and shared
// across threads; execution uses the new-array interface and is reentrant.
//   forward:  X_k = sum_j x_j e^{-2 pi i jk/n}
//   backward: x_j = sum_k X_k e^{+2 pi i jk/n}
void forward(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out);
void backward(std::span<const std::complex<double>> in,
              std::span<std::complex<double>> out);

// Row-major rows x cols array, 2D transform over both axes.
void forward_2d(std::size_t rows, std::size_t cols,
                std::span<const std::complex<double>> in,
                std::span<std::complex<double>> out);
void backward_2d(std::size_t rows, std::size_t cols,
                 std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

}  // namespace dnls::fft
