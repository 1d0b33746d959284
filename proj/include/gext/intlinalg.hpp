#pragma once

// Exact integer linear algebra on arbitrary-precision integers: Smith normal
// form with transforms, integer solving, and kernels modulo an integer.

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gext {

using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix zero_matrix(std::size_t rows, std::size_t cols);
BigMatrix identity_big(std::size_t n);
BigMatrix mul(const BigMatrix& a, const BigMatrix& b);
std::vector<BigInt> mul(const BigMatrix& a, const std::vector<BigInt>& x);

struct SmithOptions {
  bool left = true;     // track U and U^-1
  bool right = true;    // track V and V^-1
  bool chain = true;    // enforce d_1 | d_2 | ...
  BigInt modulus = 0;   // when nonzero, rows are only meaningful mod this value
};

/// U * A * V = S with S diagonal. With a modulus the equation holds mod the
/// modulus and the divisibility chain is not enforced unless requested.
struct SmithForm {
  BigMatrix u, u_inv, v, v_inv;
  std::vector<BigInt> diagonal;  // length min(rows, cols), non-negative
  int rank = 0;
};

SmithForm smith(BigMatrix a, const SmithOptions& opts = {});

/// Some integer x with A x = b, or nullopt when none exists.
std::optional<std::vector<BigInt>> solve_integer(const BigMatrix& a, const std::vector<BigInt>& b);

/// Basis (as columns, a square matrix) of { x in Z^n : R x = 0 mod m }.
/// Rows of R may carry their own moduli: row i is read mod row_moduli[i].
/// The basis is q * diag(scale); q is unimodular with inverse q_inv.
struct ModKernel {
  BigMatrix q, q_inv;
  std::vector<BigInt> scale;

  BigMatrix basis() const;
};
ModKernel kernel_mod(const BigMatrix& r, const std::vector<BigInt>& row_moduli, std::size_t n);

}  // namespace gext
