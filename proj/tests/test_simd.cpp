#include "doctest.h"

#include <random>
#include <vector>

#include "gext/linalg.hpp"
#include "gext/simd/kernels.hpp"

using namespace gext;
using simd::cplx;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

std::vector<const simd::Kernels*> backends() {
  std::vector<const simd::Kernels*> out;
  if (auto* k = simd::avx2_kernels()) out.push_back(k);
  if (auto* k = simd::neon_kernels()) out.push_back(k);
  return out;
}

}  // namespace

TEST_CASE("dispatched backend is one of the compiled ones") {
  const std::string name = simd::active().name;
  CHECK((name == "scalar" || name == "avx2" || name == "neon"));
  MESSAGE("active kernels: " << name);
}

TEST_CASE("vector kernels match the scalar reference") {
  const auto& ref = simd::scalar_kernels();
  std::mt19937_64 rng(1);
  for (const simd::Kernels* k : backends()) {
    CAPTURE(k->name);
    for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 16u, 33u, 100u}) {
      CAPTURE(n);
      const auto x = random_vector(n, rng);
      const auto y0 = random_vector(n, rng);
      const cplx a = random_vector(1, rng)[0];

      auto y1 = y0, y2 = y0;
      ref.caxpy(n, a, x.data(), y1.data());
      k->caxpy(n, a, x.data(), y2.data());
      CHECK(y1 == y2);  // same operation order, bit for bit

      auto s1 = x, s2 = x;
      ref.cscal(n, a, s1.data());
      k->cscal(n, a, s2.data());
      CHECK(s1 == s2);

      const cplx d1 = ref.cdotc(n, x.data(), y0.data());
      const cplx d2 = k->cdotc(n, x.data(), y0.data());
      CHECK(std::abs(d1 - d2) <= 1e-12 * (1 + std::abs(d1)) * static_cast<double>(n));

      CHECK(ref.iamax(n, x.data()) == k->iamax(n, x.data()));
    }
    // ties resolve to the first index
    std::vector<cplx> t = {{1, 0}, {0, 3}, {3, 0}, {0, -3}, {2, 2}};
    CHECK(ref.iamax(t.size(), t.data()) == 1);
    CHECK(k->iamax(t.size(), t.data()) == 1);
  }
}

TEST_CASE("scalar kernels against direct complex arithmetic") {
  const auto& ref = simd::scalar_kernels();
  std::mt19937_64 rng(2);
  const auto x = random_vector(9, rng), y = random_vector(9, rng);
  const cplx a{0.5, -2};
  auto z = y;
  ref.caxpy(9, a, x.data(), z.data());
  cplx dot = 0;
  for (int i = 0; i < 9; ++i) {
    CHECK(std::abs(z[i] - (y[i] + a * x[i])) < 1e-12);
    dot += std::conj(x[i]) * y[i];
  }
  CHECK(std::abs(ref.cdotc(9, x.data(), y.data()) - dot) < 1e-10);
}

TEST_CASE("elimination rank and nullspace") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> small(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 3 + trial % 7, n = 2 + trial % 5, r = 1 + trial % std::min(m, n);
    // rank r product of integer Gaussian-integer factors
    Eigen::MatrixXcd left(m, r), right(r, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < r; ++j) left(i, j) = {double(small(rng)), double(small(rng))};
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < n; ++j) right(i, j) = {double(small(rng)), double(small(rng))};
    const RowMatrix a = left * right;
    const Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
    const Echelon e = row_reduce(a, 1e-9);
    CHECK(e.rank() == lu.rank());
    const Eigen::MatrixXcd k = nullspace(a, 1e-9);
    CHECK(k.cols() == n - lu.rank());
    if (k.cols() > 0) {
      CHECK((a * k).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(Eigen::FullPivLU<Eigen::MatrixXcd>(k).rank() == k.cols());
    }
  }
  CHECK(nullspace(RowMatrix::Zero(2, 3), 1e-9).cols() == 3);
}
