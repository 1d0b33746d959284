#include <immintrin.h>

#include "gext/simd/kernels.hpp"

namespace gext::simd {
namespace avx2_impl {

// two complex numbers per register: [r0, i0, r1, i1]
inline __m256d cmul(__m256d x, __m256d ar, __m256d ai) {
  const __m256d t1 = _mm256_mul_pd(x, ar);
  const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(x, 0b0101), ai);
  return _mm256_addsub_pd(t1, t2);
}

void caxpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = cmul(_mm256_loadu_pd(xp + 2 * i), ar, ai);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), v));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (xr * a.real() - xi * a.imag()), y[i].imag() + (xi * a.real() + xr * a.imag())};
  }
}

void cscal(std::size_t n, cplx a, cplx* x) {
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  double* xp = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) _mm256_storeu_pd(xp + 2 * i, cmul(_mm256_loadu_pd(xp + 2 * i), ar, ai));
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = {xr * a.real() - xi * a.imag(), xi * a.real() + xr * a.imag()};
  }
}

cplx cdotc(std::size_t n, const cplx* x, const cplx* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i), yv = _mm256_loadu_pd(yp + 2 * i);
    re = _mm256_add_pd(re, _mm256_mul_pd(xv, yv));  // xr yr, xi yi
    // xr yi, xi yr
    im = _mm256_add_pd(im, _mm256_mul_pd(xv, _mm256_permute_pd(yv, 0b0101)));
  }
  alignas(32) double r[4], m[4];
  _mm256_store_pd(r, re);
  _mm256_store_pd(m, im);
  double sr = r[0] + r[1] + r[2] + r[3];
  double si = (m[0] - m[1]) + (m[2] - m[3]);
  for (; i < n; ++i) {
    sr += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    si += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {sr, si};
}

std::size_t iamax(std::size_t n, const cplx* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  std::size_t best = 0;
  double m = -1;
  std::size_t i = 0;
  alignas(32) double s[4];
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(xp + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    _mm256_store_pd(s, _mm256_hadd_pd(sq, sq));  // [|x0|^2, |x0|^2, |x1|^2, |x1|^2]
    if (s[0] > m) {
      m = s[0];
      best = i;
    }
    if (s[2] > m) {
      m = s[2];
      best = i + 1;
    }
  }
  for (; i < n; ++i) {
    const double v = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    if (v > m) {
      m = v;
      best = i;
    }
  }
  return best;
}

}  // namespace avx2_impl

const Kernels* avx2_kernels() {
  static const Kernels k{"avx2", avx2_impl::caxpy, avx2_impl::cscal, avx2_impl::cdotc, avx2_impl::iamax};
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &k : nullptr;
}

}  // namespace gext::simd
