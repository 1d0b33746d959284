#include "gext/simd/kernels.hpp"

namespace gext::simd {
namespace scalar_impl {

// Written on the real/imaginary parts so that the vector backends, which use
// the same operation order, agree bit for bit on caxpy, cscal and iamax.
void caxpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (xr * ar - xi * ai), y[i].imag() + (xi * ar + xr * ai)};
  }
}

void cscal(std::size_t n, cplx a, cplx* x) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = {xr * ar - xi * ai, xi * ar + xr * ai};
  }
}

cplx cdotc(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

std::size_t iamax(std::size_t n, const cplx* x) {
  std::size_t best = 0;
  double m = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    if (v > m) {
      m = v;
      best = i;
    }
  }
  return best;
}

}  // namespace scalar_impl

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar", scalar_impl::caxpy, scalar_impl::cscal, scalar_impl::cdotc, scalar_impl::iamax};
  return k;
}

}  // namespace gext::simd
