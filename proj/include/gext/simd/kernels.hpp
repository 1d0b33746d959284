#pragma once

// Complex double kernels behind the elimination routines. The backend is
// picked once at first use: AVX2 (x86-64) or NEON (aarch64) when the CPU has
// it, otherwise scalar. GEXT_SIMD=scalar|avx2|neon overrides the choice.

#include <complex>
#include <cstddef>

namespace gext::simd {

using cplx = std::complex<double>;

struct Kernels {
  const char* name;
  void (*caxpy)(std::size_t n, cplx a, const cplx* x, cplx* y);  // y += a x
  void (*cscal)(std::size_t n, cplx a, cplx* x);                 // x *= a
  cplx (*cdotc)(std::size_t n, const cplx* x, const cplx* y);    // sum conj(x) y
  std::size_t (*iamax)(std::size_t n, const cplx* x);            // first index of max |x|^2; n > 0
};

const Kernels& scalar_kernels();
/// Null when the backend is not compiled in or the CPU lacks it.
const Kernels* avx2_kernels();
const Kernels* neon_kernels();

/// The dispatched backend.
const Kernels& active();

inline void caxpy(std::size_t n, cplx a, const cplx* x, cplx* y) { active().caxpy(n, a, x, y); }
inline void cscal(std::size_t n, cplx a, cplx* x) { active().cscal(n, a, x); }
inline cplx cdotc(std::size_t n, const cplx* x, const cplx* y) { return active().cdotc(n, x, y); }
inline std::size_t iamax(std::size_t n, const cplx* x) { return active().iamax(n, x); }

}  // namespace gext::simd
