#include <cstdlib>
#include <string_view>

#include "gext/report.hpp"
#include "gext/simd/kernels.hpp"

namespace gext::simd {

#if !defined(GEXT_HAVE_AVX2)
const Kernels* avx2_kernels() { return nullptr; }
#endif
#if !defined(GEXT_HAVE_NEON)
const Kernels* neon_kernels() { return nullptr; }
#endif

namespace {

const Kernels& choose() {
  const char* env = std::getenv("GEXT_SIMD");
  const std::string_view want = env ? env : "";
  if (want == "scalar") return scalar_kernels();
  if (want == "avx2" || want == "neon") {
    const Kernels* k = want == "avx2" ? avx2_kernels() : neon_kernels();
    if (!k) throw Error("GEXT_SIMD=" + std::string(want) + " is not available on this machine");
    return *k;
  }
  if (!want.empty()) throw Error("GEXT_SIMD must be scalar, avx2 or neon");
  if (const Kernels* k = avx2_kernels()) return *k;
  if (const Kernels* k = neon_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const Kernels& active() {
  static const Kernels& k = choose();
  return k;
}

}  // namespace gext::simd
