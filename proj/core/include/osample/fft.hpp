#pragma once

#include <complex>
#include <vector>

namespace osample::fft {

using cvec = std::vector<std::complex<double>>;

/// Unnormalized transform X_m = sum_n x_n exp(-2 pi i n m / N), any N >= 1.
[[nodiscard]] cvec forward(const cvec& x);

/// Unnormalized inverse X_m = sum_n x_n exp(+2 pi i n m / N).
[[nodiscard]] cvec backward(const cvec& x);

/// Cyclic convolution (a * b)_l = sum_k a_{(l-k) mod N} b_k, same length inputs.
[[nodiscard]] cvec cyclic_convolve(const cvec& a, const cvec& b);

}  // namespace osample::fft
