#include "gext/intlinalg.hpp"

#include <utility>

#include "gext/report.hpp"

namespace gext {

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// floor division for the Euclidean steps
BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt centered(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  if (r * 2 > m) r -= m;
  return r;
}

class Smith {
 public:
  Smith(BigMatrix a, const SmithOptions& o) : a_(std::move(a)), o_(o) {
    m_ = a_.size();
    n_ = m_ ? a_[0].size() : 0;
    if (o_.left) u_ = identity_big(m_), ui_ = identity_big(m_);
    if (o_.right) v_ = identity_big(n_), vi_ = identity_big(n_);
    if (o_.modulus != 0)
      for (std::size_t i = 0; i < m_; ++i) reduce_row(i);
  }

  SmithForm run() {
    const std::size_t k = std::min(m_, n_);
    std::size_t t = 0;
    for (; t < k; ++t) {
      if (!pivot(t)) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m_; ++i) {
          if (a_[i][t] == 0) continue;
          add_row(i, t, -floor_div(a_[i][t], a_[t][t]));
          if (a_[i][t] != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < n_; ++j) {
          if (a_[t][j] == 0) continue;
          add_col(j, t, -floor_div(a_[t][j], a_[t][t]));
          if (a_[t][j] != 0) dirty = true;
        }
        if (!dirty && o_.chain) {
          // the pivot must divide the rest of the block
          for (std::size_t i = t + 1; i < m_ && !dirty; ++i)
            for (std::size_t j = t + 1; j < n_; ++j)
              if (a_[i][j] % a_[t][t] != 0) {
                add_row(t, i, 1);
                dirty = true;
                break;
              }
        }
        if (!dirty) break;
        pivot(t);
      }
      if (a_[t][t] < 0) negate_row(t);
    }
    SmithForm f;
    f.rank = static_cast<int>(t);
    for (std::size_t i = 0; i < k; ++i) f.diagonal.push_back(abs_big(a_[i][i]));
    f.u = std::move(u_);
    f.u_inv = std::move(ui_);
    f.v = std::move(v_);
    f.v_inv = std::move(vi_);
    return f;
  }

 private:
  // moves a smallest nonzero entry of the trailing block to (t,t)
  bool pivot(std::size_t t) {
    std::size_t bi = m_, bj = n_;
    BigInt best = 0;
    for (std::size_t i = t; i < m_; ++i)
      for (std::size_t j = t; j < n_; ++j) {
        if (a_[i][j] == 0) continue;
        const BigInt v = abs_big(a_[i][j]);
        if (bi == m_ || v < best) {
          best = v;
          bi = i;
          bj = j;
          if (best == 1) goto found;
        }
      }
    if (bi == m_) return false;
  found:
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void reduce_row(std::size_t i) {
    for (auto& x : a_[i]) x = centered(x, o_.modulus);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    if (o_.left) {
      std::swap(u_[i], u_[j]);
      for (auto& row : ui_) std::swap(row[i], row[j]);
    }
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a_) std::swap(row[i], row[j]);
    if (o_.right) {
      for (auto& row : v_) std::swap(row[i], row[j]);
      std::swap(vi_[i], vi_[j]);
    }
  }
  // row i += k * row j
  void add_row(std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t c = 0; c < n_; ++c) a_[i][c] += k * a_[j][c];
    if (o_.modulus != 0) reduce_row(i);
    if (o_.left) {
      for (std::size_t c = 0; c < m_; ++c) u_[i][c] += k * u_[j][c];
      for (auto& row : ui_) row[j] -= k * row[i];
    }
  }
  // col i += k * col j
  void add_col(std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t r = 0; r < m_; ++r) {
      a_[r][i] += k * a_[r][j];
      if (o_.modulus != 0) a_[r][i] = centered(a_[r][i], o_.modulus);
    }
    if (o_.right) {
      for (auto& row : v_) row[i] += k * row[j];
      for (std::size_t c = 0; c < n_; ++c) vi_[j][c] -= k * vi_[i][c];
    }
  }
  void negate_row(std::size_t i) {
    for (auto& x : a_[i]) x = -x;
    if (o_.left) {
      for (auto& x : u_[i]) x = -x;
      for (auto& row : ui_) row[i] = -row[i];
    }
  }

  BigMatrix a_, u_, ui_, v_, vi_;
  SmithOptions o_;
  std::size_t m_ = 0, n_ = 0;
};

}  // namespace

BigMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return BigMatrix(rows, std::vector<BigInt>(cols, 0));
}

BigMatrix identity_big(std::size_t n) {
  BigMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

BigMatrix mul(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner ? b[0].size() : 0;
  BigMatrix c = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

std::vector<BigInt> mul(const BigMatrix& a, const std::vector<BigInt>& x) {
  std::vector<BigInt> y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

SmithForm smith(BigMatrix a, const SmithOptions& opts) { return Smith(std::move(a), opts).run(); }

std::optional<std::vector<BigInt>> solve_integer(const BigMatrix& a, const std::vector<BigInt>& b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  if (b.size() != m) throw Error("solve_integer: shape mismatch");
  SmithOptions o;
  o.chain = false;
  const SmithForm f = smith(a, o);
  const std::vector<BigInt> c = mul(f.u, b);
  std::vector<BigInt> z(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const BigInt d = i < f.diagonal.size() ? f.diagonal[i] : BigInt(0);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % d != 0) return std::nullopt;
    z[i] = c[i] / d;
  }
  return mul(f.v, z);
}

BigMatrix ModKernel::basis() const {
  BigMatrix b = q;
  for (auto& row : b)
    for (std::size_t j = 0; j < row.size(); ++j) row[j] *= scale[j];
  return b;
}

ModKernel kernel_mod(const BigMatrix& r, const std::vector<BigInt>& row_moduli, std::size_t n) {
  BigInt e = 1;
  for (const auto& m : row_moduli) {
    if (m <= 0) throw Error("kernel_mod: moduli must be positive");
    e = boost::multiprecision::lcm(e, m);
  }
  BigMatrix scaled = r;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (auto& x : scaled[i]) x *= e / row_moduli[i];
  SmithOptions o;
  o.left = false;
  o.chain = false;
  o.modulus = e;
  SmithForm f = smith(std::move(scaled), o);
  ModKernel k;
  k.q = std::move(f.v);
  k.q_inv = std::move(f.v_inv);
  if (r.empty()) {
    k.q = identity_big(n);
    k.q_inv = identity_big(n);
  }
  k.scale.assign(n, 1);
  for (std::size_t i = 0; i < f.diagonal.size(); ++i)
    k.scale[i] = e / boost::multiprecision::gcd(f.diagonal[i], e);
  return k;
}

}  // namespace gext
