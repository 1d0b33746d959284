#include "gext/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "gext/cohomology.hpp"

namespace gext {

namespace {

constexpr int kNone = FiniteGroupoid::kNone;

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// monomial times basis element on the right
Monomial times(const ConvolutionAlgebra& a, const Monomial& m, int j) {
  if (m.index < 0) return {};
  const Monomial& p = a.product(m.index, j);
  if (p.index < 0) return {};
  return {p.index, mod_floor(m.exponent + p.exponent, a.modulus())};
}

Monomial times(const ConvolutionAlgebra& a, int i, const Monomial& m) {
  if (m.index < 0) return {};
  const Monomial& p = a.product(i, m.index);
  if (p.index < 0) return {};
  return {p.index, mod_floor(m.exponent + p.exponent, a.modulus())};
}

// row block (i, k) of x e_i - e_i x, or of e_i x - x e_i; columns = coordinates of x
RowMatrix commutation_rows(const ConvolutionAlgebra& a, const std::vector<int>& with) {
  const int d = a.dimension();
  std::map<std::pair<int, int>, int> row_of;
  std::vector<std::tuple<int, int, cplx>> entries;  // row, col, value
  const auto put = [&](int i, const Monomial& m, int j, double sign) {
    if (m.index < 0) return;
    auto it = row_of.emplace(std::pair{i, m.index}, static_cast<int>(row_of.size())).first;
    entries.emplace_back(it->second, j, sign * a.coefficient(m.exponent));
  };
  for (int i : with)
    for (int j = 0; j < d; ++j) {
      put(i, a.product(j, i), j, 1.0);
      put(i, a.product(i, j), j, -1.0);
    }
  RowMatrix m = RowMatrix::Zero(static_cast<Eigen::Index>(row_of.size()), d);
  for (const auto& [r, c, v] : entries) m(r, c) += v;
  return m;
}

std::vector<int> all_indices(int d) {
  std::vector<int> v(d);
  for (int i = 0; i < d; ++i) v[i] = i;
  return v;
}

long long twist_modulus(const Extension& t) {
  const auto& k = t.kernel();
  if (!t.action.is_trivial() || !k.is_constant())
    throw Error("twisted algebra: the kernel must be a constant bundle with trivial action");
  if (k.num_units() == 0 || k.fiber(0).rank() == 0) return 1;
  if (k.fiber(0).rank() != 1) throw Error("twisted algebra: the kernel must be cyclic");
  return k.fiber(0).factors()[0];
}

}  // namespace

// ---------------------------------------------------------------------------

ConvolutionAlgebra::ConvolutionAlgebra(std::vector<std::string> labels, long long modulus,
                                       std::vector<Monomial> product, std::vector<Monomial> star,
                                       std::vector<int> unit)
    : labels_(std::move(labels)), modulus_(modulus), product_(std::move(product)), star_(std::move(star)),
      unit_(std::move(unit)) {
  const std::size_t d = labels_.size();
  if (modulus_ < 1) throw Error("algebra: modulus must be positive");
  if (product_.size() != d * d || star_.size() != d) throw Error("algebra: table sizes do not match the basis");
  for (auto* table : {&product_, &star_})
    for (auto& m : *table) {
      if (m.index >= static_cast<int>(d) || m.index < -1) throw Error("algebra: basis index out of range");
      m.exponent = m.index < 0 ? 0 : mod_floor(m.exponent, modulus_);
    }
  for (int u : unit_)
    if (u < 0 || u >= static_cast<int>(d)) throw Error("algebra: unit index out of range");
}

cplx ConvolutionAlgebra::coefficient(long long exponent) const {
  const long long e = mod_floor(exponent, modulus_);
  if (e == 0) return 1;
  if (2 * e == modulus_) return -1;
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(modulus_));
}

Eigen::VectorXcd ConvolutionAlgebra::unit_vector() const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dimension());
  for (int u : unit_) v(u) += 1;
  return v;
}

Eigen::VectorXcd ConvolutionAlgebra::multiply(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
  const int d = dimension();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (x(i) == cplx(0)) continue;
    for (int j = 0; j < d; ++j) {
      const Monomial& m = product(i, j);
      if (m.index < 0 || y(j) == cplx(0)) continue;
      out(m.index) += x(i) * y(j) * coefficient(m.exponent);
    }
  }
  return out;
}

Eigen::VectorXcd ConvolutionAlgebra::adjoint(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dimension());
  for (int i = 0; i < dimension(); ++i) out(star_[i].index) += std::conj(x(i)) * coefficient(star_[i].exponent);
  return out;
}

Eigen::MatrixXcd ConvolutionAlgebra::left_matrix(const Eigen::VectorXcd& x) const {
  const int d = dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (x(i) == cplx(0)) continue;
    for (int j = 0; j < d; ++j) {
      const Monomial& p = product(i, j);
      if (p.index >= 0) m(p.index, j) += x(i) * coefficient(p.exponent);
    }
  }
  return m;
}

ConvolutionAlgebra ConvolutionAlgebra::permuted(const std::vector<int>& perm) const {
  const int d = dimension();
  if (static_cast<int>(perm.size()) != d) throw Error("algebra: permutation size");
  std::vector<int> pos(d, -1);
  for (int i = 0; i < d; ++i) {
    if (perm[i] < 0 || perm[i] >= d || pos[perm[i]] != -1) throw Error("algebra: not a permutation");
    pos[perm[i]] = i;
  }
  const auto re = [&](Monomial m) {
    if (m.index >= 0) m.index = pos[m.index];
    return m;
  };
  std::vector<std::string> labels;
  std::vector<Monomial> prod(static_cast<std::size_t>(d) * d), star;
  for (int i = 0; i < d; ++i) {
    labels.push_back(labels_[perm[i]]);
    star.push_back(re(star_[perm[i]]));
    for (int j = 0; j < d; ++j) prod[static_cast<std::size_t>(i) * d + j] = re(product(perm[i], perm[j]));
  }
  std::vector<int> unit;
  for (int u : unit_) unit.push_back(pos[u]);
  std::sort(unit.begin(), unit.end());
  return ConvolutionAlgebra(std::move(labels), modulus_, std::move(prod), std::move(star), std::move(unit));
}

Report validate_algebra(const ConvolutionAlgebra& a) {
  Report r;
  const int d = a.dimension();
  const auto& lab = a.labels();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (times(a, a.product(i, j), k) != times(a, i, a.product(j, k)))
          r.add("associativity", "(" + lab[i] + "," + lab[j] + "," + lab[k] + ")");
  for (int i = 0; i < d; ++i) {
    const Monomial s = a.star(i);
    if (s.index < 0) {
      r.add("involution", lab[i]);
      continue;
    }
    const Monomial ss = a.star(s.index);
    if (ss.index != i || mod_floor(ss.exponent - s.exponent, a.modulus()) != 0) r.add("involution", lab[i]);
  }
  if (!r.ok()) return r;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Monomial p = a.product(i, j);
      Monomial lhs;
      if (p.index >= 0) lhs = {a.star(p.index).index, mod_floor(a.star(p.index).exponent - p.exponent, a.modulus())};
      const Monomial sj = a.star(j), si = a.star(i);
      Monomial rhs = a.product(sj.index, si.index);
      if (rhs.index >= 0) rhs.exponent = mod_floor(rhs.exponent + sj.exponent + si.exponent, a.modulus());
      if (lhs != rhs) r.add("anti-multiplicative", pair_id(lab[i], lab[j]));
    }
  for (int i = 0; i < d; ++i)
    for (bool left : {true, false}) {
      int hits = 0;
      bool exact = true;
      for (int u : a.unit()) {
        const Monomial m = left ? a.product(u, i) : a.product(i, u);
        if (m.index < 0) continue;
        ++hits;
        exact = exact && m.index == i && m.exponent == 0;
      }
      if (hits != 1 || !exact) r.add("unit", lab[i]);
    }
  return r;
}

ConvolutionAlgebra groupoid_algebra(const FiniteGroupoid& g) {
  const int d = g.num_arrows();
  std::vector<Monomial> prod(static_cast<std::size_t>(d) * d), star;
  for (int a = 0; a < d; ++a) {
    star.push_back({g.inv(a), 0});
    for (int b = 0; b < d; ++b)
      if (g.composable(a, b)) prod[static_cast<std::size_t>(a) * d + b] = {g.comp(a, b), 0};
  }
  std::vector<int> unit;
  for (int u = 0; u < g.num_units(); ++u) unit.push_back(g.unit_arrow(u));
  std::sort(unit.begin(), unit.end());
  return ConvolutionAlgebra(g.arrow_ids(), 1, std::move(prod), std::move(star), std::move(unit));
}

ConvolutionAlgebra twisted_algebra(const Extension& t, long long k) {
  const long long n = twist_modulus(t);
  const auto& g = *t.base();
  const auto& s = *t.total;
  const Section tau = canonical_section(t);
  const auto back = iota_inverse(t);
  // z with x = iota(z) for x in the kernel
  const auto z_of = [&](int x) {
    if (back[x].first == kNone) throw Error("twisted algebra: lifts do not differ by a kernel element");
    return back[x].second;
  };
  const int d = g.num_arrows();
  std::vector<Monomial> prod(static_cast<std::size_t>(d) * d), star;
  for (int a = 0; a < d; ++a) {
    const int ginv = g.inv(a);
    const long long z = z_of(s.comp(s.inv(tau[ginv]), s.inv(tau[a])));
    star.push_back({ginv, -k * z});
    for (int b : g.arrows_into(g.src(a))) {
      const int ab = g.comp(a, b);
      const long long w = z_of(s.comp(s.comp(tau[a], tau[b]), s.inv(tau[ab])));
      prod[static_cast<std::size_t>(a) * d + b] = {ab, -k * w};
    }
  }
  std::vector<int> unit;
  for (int u = 0; u < g.num_units(); ++u) unit.push_back(g.unit_arrow(u));
  std::sort(unit.begin(), unit.end());
  return ConvolutionAlgebra(g.arrow_ids(), n, std::move(prod), std::move(star), std::move(unit));
}

ConvolutionAlgebra matrix_algebra(int n) {
  if (n < 1) throw Error("matrix algebra: size must be positive");
  const int d = n * n;
  std::vector<std::string> labels;
  std::vector<Monomial> prod(static_cast<std::size_t>(d) * d), star;
  std::vector<int> unit;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      star.push_back({j * n + i, 0});
      if (i == j) unit.push_back(i * n + j);
      for (int l = 0; l < n; ++l) prod[static_cast<std::size_t>(i * n + j) * d + j * n + l] = {i * n + l, 0};
    }
  return ConvolutionAlgebra(std::move(labels), 1, std::move(prod), std::move(star), std::move(unit));
}

// ---------------------------------------------------------------------------

Fingerprint merge(const Fingerprint& a, const Fingerprint& b) {
  Fingerprint out{a.dimension + b.dimension, a.blocks};
  out.blocks.insert(out.blocks.end(), b.blocks.begin(), b.blocks.end());
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

std::string format(const Fingerprint& f) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < f.blocks.size(); ++i) os << (i ? "," : "") << f.blocks[i];
  os << "]";
  return os.str();
}

Eigen::MatrixXcd center(const ConvolutionAlgebra& a, double tolerance) {
  return nullspace(commutation_rows(a, all_indices(a.dimension())), tolerance);
}

CentralDecomposition central_decomposition(const ConvolutionAlgebra& a, const NumericOptions& opts) {
  const int d = a.dimension();
  CentralDecomposition out;
  out.fingerprint.dimension = d;
  if (d == 0) return out;
  const Eigen::MatrixXcd z = center(a, opts.tolerance);
  const int c = static_cast<int>(z.cols());
  const Eigen::VectorXcd one = a.unit_vector();
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    out.attempts = attempt + 1;
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(attempt));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXcd r(c);
    for (int i = 0; i < c; ++i) {
      const double re = u(rng), im = u(rng);
      r(i) = {re, im};
    }
    const Eigen::VectorXcd x = z * r;
    const Eigen::VectorXcd h = x + a.adjoint(x);
    Eigen::MatrixXcd l = a.left_matrix(h);
    const double norm = std::max(1.0, max_abs(l));
    if (max_abs(l - l.adjoint()) > 1e3 * opts.tolerance * norm)
      throw Error("fingerprint: the regular representation is not a *-representation for this basis");
    l = (l + l.adjoint()) / 2.0;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(l);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    // clusters of (numerically) equal eigenvalues; gaps between the tolerance
    // and 1e3 times it are ambiguous
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    bool ambiguous = false;
    int begin = 0;
    for (int i = 1; i <= d; ++i) {
      if (i < d) {
        const double gap = ev(i) - ev(i - 1);
        if (gap <= opts.tolerance * scale) continue;
        if (gap <= 1e3 * opts.tolerance * scale) ambiguous = true;
      }
      clusters.push_back({begin, i});
      begin = i;
    }
    if (ambiguous || static_cast<int>(clusters.size()) != c) continue;
    std::vector<std::pair<int, Eigen::VectorXcd>> parts;
    bool square = true;
    for (const auto& [b, e] : clusters) {
      const int m = e - b;
      const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
      if (s * s != m) square = false;
      const auto v = es.eigenvectors().middleCols(b, m);
      parts.push_back({s, v * (v.adjoint() * one)});
    }
    if (!square) continue;
    std::stable_sort(parts.begin(), parts.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    int total = 0;
    for (auto& [s, p] : parts) {
      out.fingerprint.blocks.push_back(s);
      out.projections.push_back(std::move(p));
      total += s * s;
    }
    if (total != d) throw Error("fingerprint: block sizes do not add up to the dimension");
    return out;
  }
  throw Error("fingerprint: eigenvalue clusters stayed ambiguous after " + std::to_string(opts.max_retries) +
              " retries");
}

Fingerprint fingerprint(const ConvolutionAlgebra& a, const NumericOptions& opts) {
  return central_decomposition(a, opts).fingerprint;
}

Report validate_central_projections(const ConvolutionAlgebra& a, const std::vector<Eigen::VectorXcd>& family,
                                    double tolerance) {
  Report r;
  const int d = a.dimension();
  const double tol = 1e3 * tolerance;
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(d);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& p = family[i];
    sum += p;
    if (max_abs(a.adjoint(p) - p) > tol) r.add("self-adjoint", std::to_string(i));
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Eigen::VectorXcd q = a.multiply(p, family[j]);
      const double err = i == j ? max_abs(q - p) : max_abs(q);
      if (err > tol) r.add(i == j ? "idempotent" : "orthogonal", pair_id(std::to_string(i), std::to_string(j)));
    }
    for (int b = 0; b < d; ++b) {
      const Eigen::VectorXcd e = Eigen::VectorXcd::Unit(d, b);
      if (max_abs(a.multiply(p, e) - a.multiply(e, p)) > tol)
        r.add("central", pair_id(std::to_string(i), a.labels()[b]));
    }
  }
  if (max_abs(sum - a.unit_vector()) > tol) r.add("complete", "projections do not sum to the unit");
  return r;
}

// ---------------------------------------------------------------------------

std::vector<CharacterSummand> decompose_over_characters(const Extension& e) {
  if (!e.kernel().is_constant() || !e.action.is_trivial())
    throw Error("decompose_over_characters: the kernel must be constant with trivial action");
  std::vector<CharacterSummand> out;
  const auto& base = e.base();
  const AbelianGroup a0 = e.kernel().num_units() ? e.kernel().fiber(0) : AbelianGroup();
  const long long n = a0.exponent();
  const GroupoidAction target = GroupoidAction::trivial(base, root_of_unity_bundle(*base, n));
  for (long long i = 0; i < a0.order(); ++i) {
    const Element chi = a0.element(i);
    Extension tw = pushout(character_hom(e.action, chi, n), target, e).extension;
    ConvolutionAlgebra alg = twisted_algebra(tw, 1);
    out.push_back({chi, std::move(tw), std::move(alg)});
  }
  return out;
}

std::vector<PowerSummand> power_twist_decomposition(const Extension& twist) {
  const long long n = twist_modulus(twist);
  std::vector<PowerSummand> out;
  for (long long k = 0; k < n; ++k) out.push_back({k, twisted_algebra(twist, k)});
  return out;
}

std::vector<ConvolutionAlgebra> decompose_over_base(const FiniteGroupoid& g, const InvariantPartition& p) {
  std::vector<ConvolutionAlgebra> out;
  for (const Reduction& r : invariant_partition_fibers(g, p)) out.push_back(groupoid_algebra(*r.groupoid));
  return out;
}

std::vector<ConvolutionAlgebra> decompose_over_base(const Extension& twist, long long k,
                                                    const InvariantPartition& p) {
  const auto& g = *twist.base();
  const Report rep = validate_partition(g, p);
  if (!rep.ok()) throw Error("non-invariant labelling at arrow " + rep.violations().front().witness);
  std::map<int, std::vector<int>> classes;
  for (int u = 0; u < g.num_units(); ++u) classes[p.label[u]].push_back(u);
  std::vector<ConvolutionAlgebra> out;
  for (const auto& [label, units] : classes) out.push_back(twisted_algebra(restrict_extension(twist, units), k));
  return out;
}

ConvolutionAlgebra restrict_summand(const FiniteGroupoid& g, const std::vector<int>& units) {
  if (!is_invariant(g, units)) throw Error("restrict_summand: the set of units is not invariant");
  return groupoid_algebra(*restrict_indexed(g, units).groupoid);
}

ConvolutionAlgebra restrict_summand(const Extension& twist, long long k, const std::vector<int>& units) {
  return twisted_algebra(restrict_extension(twist, units), k);
}

PushoutTheoremResult verify_pushout_theorem(const Extension& e, const NumericOptions& opts) {
  PushoutTheoremResult out;
  const TGroupoid t = t_groupoid(e);
  const int left = e.total->num_arrows(), right = t.extension.base()->num_arrows();
  if (left != right) {
    out.report.add("dimension", std::to_string(left) + " != " + std::to_string(right));
    return out;
  }
  out.total = fingerprint(groupoid_algebra(*e.total), opts);
  out.twisted = fingerprint(twisted_algebra(t.extension, 1), opts);
  if (!(out.total == out.twisted)) out.report.add("fingerprint", format(out.total) + " != " + format(out.twisted));
  return out;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXcd commutant(const ConvolutionAlgebra& a, const std::vector<int>& sub, double tolerance) {
  return nullspace(commutation_rows(a, sub), tolerance);
}

MasaResult masa_check(const ConvolutionAlgebra& a, const std::vector<int>& sub_in, const FiniteGroupoid* weyl,
                      double tolerance) {
  std::vector<int> sub = sub_in;
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  const int d = a.dimension();
  std::vector<char> in(d, 0);
  for (int i : sub) {
    if (i < 0 || i >= d) throw Error("masa_check: basis index out of range");
    in[i] = 1;
  }
  for (int i : sub) {
    if (!in[a.star(i).index]) throw Error("masa_check: span is not *-closed at " + a.labels()[i]);
    for (int j : sub) {
      const Monomial p = a.product(i, j);
      if (p.index >= 0 && !in[p.index])
        throw Error("masa_check: span is not closed under products at " + pair_id(a.labels()[i], a.labels()[j]));
      if (p != a.product(j, i))
        throw Error("masa_check: span is not commutative at " + pair_id(a.labels()[i], a.labels()[j]));
    }
  }
  MasaResult out;
  out.sub_dimension = static_cast<int>(sub.size());
  const Eigen::MatrixXcd c = commutant(a, sub, tolerance);
  out.commutant_dimension = static_cast<int>(c.cols());
  // the span itself sits in the commutant
  RowMatrix joint(d, c.cols() + static_cast<Eigen::Index>(sub.size()));
  joint.leftCols(c.cols()) = c;
  for (std::size_t i = 0; i < sub.size(); ++i)
    joint.col(c.cols() + static_cast<Eigen::Index>(i)) = Eigen::VectorXcd::Unit(d, sub[i]);
  if (row_reduce(joint, tolerance).rank() != out.commutant_dimension)
    out.report.add("contained", "span is not inside its commutant");
  if (out.commutant_dimension != out.sub_dimension)
    out.report.add("maximal", "commutant has dimension " + std::to_string(out.commutant_dimension) + ", span " +
                                  std::to_string(out.sub_dimension));
  if (weyl) out.report.merge(principal_check(*weyl), "effective");
  return out;
}

Report principal_check(const FiniteGroupoid& g) {
  Report r;
  for (int u = 0; u < g.num_units(); ++u) {
    int loops = 0;
    for (int a : g.arrows_into(u))
      if (g.src(a) == u) ++loops;
    if (loops != 1) r.add("isotropy", g.unit_id(u));
  }
  return r;
}

Extension heisenberg_extension(int n) {
  if (n < 1) throw Error("heisenberg: n must be positive");
  const AbelianGroup h({n, n});
  const GroupoidAction act = GroupoidAction::trivial(share(abelian_group({n, n})),
                                                     GroupBundle::constant(abelian_group({n, n}), AbelianGroup({n})));
  Cocycle2 phi = Cocycle2::zero(act);
  for (int x = 0; x < n * n; ++x)
    for (int y = 0; y < n * n; ++y) phi.at(x, y) = {mod_floor(h.element(x)[0] * h.element(y)[1], n)};
  return extension_from_cocycle(phi);
}

HeisenbergMasa heisenberg_masa(int n) {
  HeisenbergMasa out;
  out.twist = heisenberg_extension(n);
  out.algebra = twisted_algebra(out.twist, 1);
  for (int a = 0; a < n; ++a) out.sub.push_back(a * n);
  // characters chi of Z_n x {0}; (0,d) acts through zeta^{-da}: chi . d = chi - d
  auto zn = share(cyclic_group(n));
  RightSpace x;
  for (int c = 0; c < n; ++c) {
    x.points.push_back("chi" + std::to_string(c));
    x.anchor.push_back(0);
  }
  x.act.resize(static_cast<std::size_t>(n) * n);
  for (int c = 0; c < n; ++c)
    for (int dd = 0; dd < n; ++dd) x.act[c * n + dd] = static_cast<int>(mod_floor(c - dd, n));
  out.weyl = *transformation_groupoid(zn, x).groupoid;
  return out;
}

}  // namespace gext
