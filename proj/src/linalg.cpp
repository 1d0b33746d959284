#include "gext/linalg.hpp"

#include "gext/simd/kernels.hpp"

namespace gext {

Echelon row_reduce(RowMatrix a, double tol) {
  Echelon out;
  const Eigen::Index m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) {
    out.reduced = std::move(a);
    return out;
  }
  const double scale = std::abs(a.data()[simd::iamax(static_cast<std::size_t>(m * n), a.data())]);
  const double thr = tol * scale;
  std::vector<cplx> column(m);
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < n && r < m; ++j) {
    for (Eigen::Index i = r; i < m; ++i) column[i - r] = a(i, j);
    const Eigen::Index p = r + static_cast<Eigen::Index>(simd::iamax(static_cast<std::size_t>(m - r), column.data()));
    if (scale == 0 || std::abs(a(p, j)) <= thr) {
      for (Eigen::Index i = r; i < m; ++i) a(i, j) = 0;
      continue;
    }
    if (p != r) a.row(p).swap(a.row(r));
    cplx* pr = a.data() + r * n;
    const std::size_t len = static_cast<std::size_t>(n - j);
    simd::cscal(len, cplx(1) / pr[j], pr + j);
    pr[j] = 1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == r) continue;
      cplx* row = a.data() + i * n;
      const cplx f = row[j];
      if (f == cplx(0)) continue;
      simd::caxpy(len, -f, pr + j, row + j);
      row[j] = 0;
    }
    out.pivots.push_back(static_cast<int>(j));
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

Eigen::MatrixXcd nullspace(const RowMatrix& a, double tol) {
  const Echelon e = row_reduce(a, tol);
  const Eigen::Index n = a.cols();
  std::vector<char> is_pivot(n, 0);
  for (int p : e.pivots) is_pivot[p] = 1;
  Eigen::MatrixXcd basis(n, n - e.rank());
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis.col(k).setZero();
    basis(f, k) = 1;
    for (int r = 0; r < e.rank(); ++r) basis(e.pivots[r], k) = -e.reduced(r, f);
    ++k;
  }
  return basis;
}

}  // namespace gext
