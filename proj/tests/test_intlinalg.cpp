#include "doctest.h"

#include <random>

#include "gext/abelian.hpp"
#include "gext/intlinalg.hpp"

using namespace gext;

namespace {

BigMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  BigMatrix a = zero_matrix(m, n);
  for (auto& row : a)
    for (auto& x : row) x = d(rng);
  return a;
}

bool is_identity(const BigMatrix& a) { return a == identity_big(a.size()); }

}  // namespace

TEST_CASE("smith form transforms on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
    const BigMatrix a = random_matrix(rng, m, n, trial % 2 ? 3 : 20);
    const SmithForm f = smith(a);
    const BigMatrix s = mul(mul(f.u, a), f.v);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(s[i][j] == (i == j ? f.diagonal[i] : BigInt(0)));
    CHECK(is_identity(mul(f.u, f.u_inv)));
    CHECK(is_identity(mul(f.v, f.v_inv)));
    for (int i = 0; i + 1 < f.rank; ++i) CHECK(f.diagonal[i + 1] % f.diagonal[i] == 0);
    for (std::size_t i = f.rank; i < f.diagonal.size(); ++i) CHECK(f.diagonal[i] == 0);
  }
}

TEST_CASE("smith form of a relation matrix gives invariant factors") {
  // Z2 + Z4 + Z2 presented by diag(2,4,2)
  BigMatrix rel = zero_matrix(3, 3);
  rel[0][0] = 2;
  rel[1][1] = 4;
  rel[2][2] = 2;
  CHECK(smith(rel).diagonal == std::vector<BigInt>{2, 2, 4});

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<long long> factors;
    const int k = 1 + rng() % 4;
    for (int i = 0; i < k; ++i) factors.push_back(1 + rng() % 12);
    BigMatrix d = zero_matrix(k, k);
    for (int i = 0; i < k; ++i) d[i][i] = factors[i];
    std::vector<long long> expect;
    for (const auto& x : smith(d).diagonal)
      if (x != 1) expect.push_back(static_cast<long long>(x));
    CHECK(AbelianGroup(factors).invariant_factors() == expect);
  }
}

TEST_CASE("solve_integer") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
    const BigMatrix a = random_matrix(rng, m, n, 6);
    std::vector<BigInt> x(n);
    for (auto& v : x) v = static_cast<int>(rng() % 11) - 5;
    const auto b = mul(a, x);
    const auto sol = solve_integer(a, b);
    REQUIRE(sol.has_value());
    CHECK(mul(a, *sol) == b);
  }
  BigMatrix two = zero_matrix(1, 1);
  two[0][0] = 2;
  CHECK_FALSE(solve_integer(two, {BigInt(3)}).has_value());
  CHECK(solve_integer(two, {BigInt(4)}).value() == std::vector<BigInt>{2});
}

TEST_CASE("kernel mod m agrees with enumeration") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t rows = 1 + rng() % 3, n = 1 + rng() % 3;
    const BigMatrix r = random_matrix(rng, rows, n, 5);
    std::vector<BigInt> mods;
    for (std::size_t i = 0; i < rows; ++i) mods.push_back(2 + rng() % 5);
    const ModKernel k = kernel_mod(r, mods, n);
    CHECK(is_identity(mul(k.q, k.q_inv)));
    const BigMatrix b = k.basis();
    // basis columns lie in the kernel
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < rows; ++i) {
        BigInt s = 0;
        for (std::size_t c = 0; c < n; ++c) s += r[i][c] * b[c][j];
        CHECK(s % mods[i] == 0);
      }
    // index of the lattice = number of kernel points in the box [0, E)^n divided by E^n
    BigInt e = 1;
    for (const auto& m : mods) e = boost::multiprecision::lcm(e, m);
    const long long E = static_cast<long long>(e);
    long long count = 0, total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= E;
    for (long long idx = 0; idx < total; ++idx) {
      long long t = idx;
      std::vector<long long> x(n);
      for (auto& v : x) {
        v = t % E;
        t /= E;
      }
      bool in = true;
      for (std::size_t i = 0; i < rows && in; ++i) {
        BigInt s = 0;
        for (std::size_t c = 0; c < n; ++c) s += r[i][c] * x[c];
        in = s % mods[i] == 0;
      }
      count += in;
    }
    BigInt det = 1;
    for (const auto& s : k.scale) det *= s;
    CHECK(BigInt(total) == det * count);
  }
}
