#include <arm_neon.h>

#include "gext/simd/kernels.hpp"

namespace gext::simd {
namespace neon_impl {

// one complex number per register: [r, i]
inline float64x2_t cmul(float64x2_t x, double ar, double ai) {
  const float64x2_t t1 = vmulq_n_f64(x, ar);
  const float64x2_t t2 = vmulq_n_f64(vextq_f64(x, x, 1), ai);  // [xi ai, xr ai]
  const float64x2_t sign = {-1.0, 1.0};
  return vaddq_f64(t1, vmulq_f64(t2, sign));
}

void caxpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(yp + 2 * i, vaddq_f64(vld1q_f64(yp + 2 * i), cmul(vld1q_f64(xp + 2 * i), a.real(), a.imag())));
}

void cscal(std::size_t n, cplx a, cplx* x) {
  double* xp = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < n; ++i) vst1q_f64(xp + 2 * i, cmul(vld1q_f64(xp + 2 * i), a.real(), a.imag()));
}

cplx cdotc(std::size_t n, const cplx* x, const cplx* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  float64x2_t re = vdupq_n_f64(0), im = vdupq_n_f64(0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xp + 2 * i), yv = vld1q_f64(yp + 2 * i);
    re = vaddq_f64(re, vmulq_f64(xv, yv));
    im = vaddq_f64(im, vmulq_f64(xv, vextq_f64(yv, yv, 1)));
  }
  return {vgetq_lane_f64(re, 0) + vgetq_lane_f64(re, 1), vgetq_lane_f64(im, 0) - vgetq_lane_f64(im, 1)};
}

std::size_t iamax(std::size_t n, const cplx* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  std::size_t best = 0;
  double m = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(xp + 2 * i);
    const float64x2_t sq = vmulq_f64(v, v);
    const double s = vgetq_lane_f64(sq, 0) + vgetq_lane_f64(sq, 1);
    if (s > m) {
      m = s;
      best = i;
    }
  }
  return best;
}

}  // namespace neon_impl

const Kernels* neon_kernels() {
  static const Kernels k{"neon", neon_impl::caxpy, neon_impl::cscal, neon_impl::cdotc, neon_impl::iamax};
  return &k;
}

}  // namespace gext::simd
