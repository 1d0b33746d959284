#pragma once

// Dense complex elimination with partial pivoting (row operations run on the
// SIMD kernels).

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace gext {

using cplx = std::complex<double>;
using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Echelon {
  RowMatrix reduced;        // reduced row echelon form
  std::vector<int> pivots;  // pivot column of each leading row
  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Entries of magnitude <= tol * max|a| are treated as zero when choosing pivots.
Echelon row_reduce(RowMatrix a, double tol);

/// Columns span {x : a x = 0}.
Eigen::MatrixXcd nullspace(const RowMatrix& a, double tol);

}  // namespace gext
