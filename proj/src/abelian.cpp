#include "gext/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gext {

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

long long mod_floor(long long a, long long m) {
  if (m == 0) return a;
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

// ---------------------------------------------------------------------------

AbelianGroup::AbelianGroup(std::vector<long long> factors) : factors_(std::move(factors)) {
  for (long long d : factors_)
    if (d < 0) throw Error("cyclic factor orders must be non-negative");
}

bool AbelianGroup::is_finite() const noexcept {
  return std::none_of(factors_.begin(), factors_.end(), [](long long d) { return d == 0; });
}

long long AbelianGroup::order() const {
  if (!is_finite()) throw Error("order of an infinite group");
  long long n = 1;
  for (long long d : factors_) n *= d;
  return n;
}

long long AbelianGroup::exponent() const {
  if (!is_finite()) throw Error("exponent of an infinite group");
  long long e = 1;
  for (long long d : factors_) e = lcm_ll(e, d);
  return e;
}

Element AbelianGroup::reduce(Element a) const {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod_floor(a[i], factors_[i]);
  return a;
}

bool AbelianGroup::contains(const Element& a) const {
  if (a.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (factors_[i] != 0 && (a[i] < 0 || a[i] >= factors_[i])) return false;
  return true;
}

Element AbelianGroup::add(const Element& a, const Element& b) const {
  Element c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_floor(a[i] + b[i], factors_[i]);
  return c;
}

Element AbelianGroup::sub(const Element& a, const Element& b) const {
  Element c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_floor(a[i] - b[i], factors_[i]);
  return c;
}

Element AbelianGroup::neg(const Element& a) const { return scale(a, -1); }

Element AbelianGroup::scale(const Element& a, long long k) const {
  Element c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_floor(a[i] * k, factors_[i]);
  return c;
}

bool AbelianGroup::is_zero(const Element& a) const {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (mod_floor(a[i], factors_[i]) != 0) return false;
  return true;
}

long long AbelianGroup::index_of(const Element& a) const {
  long long x = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) x = x * factors_[i] + mod_floor(a[i], factors_[i]);
  return x;
}

Element AbelianGroup::element(long long index) const {
  Element a(factors_.size());
  for (int i = rank() - 1; i >= 0; --i) {
    a[i] = index % factors_[i];
    index /= factors_[i];
  }
  return a;
}

std::vector<long long> AbelianGroup::invariant_factors() const {
  // collect prime-power parts, then stack the largest powers of each prime
  std::map<long long, std::vector<long long>> powers;
  int free_rank = 0;
  for (long long d : factors_) {
    if (d == 0) {
      ++free_rank;
      continue;
    }
    long long n = d;
    for (long long p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      long long q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      powers[p].push_back(q);
    }
    if (n > 1) powers[n].push_back(n);
  }
  std::size_t length = 0;
  for (auto& [p, qs] : powers) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    length = std::max(length, qs.size());
  }
  std::vector<long long> out(length, 1);
  for (const auto& [p, qs] : powers)
    for (std::size_t i = 0; i < qs.size(); ++i) out[length - 1 - i] *= qs[i];
  out.insert(out.end(), free_rank, 0);
  return out;
}

std::string AbelianGroup::format(const Element& a) const {
  if (a.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ':';
    s += std::to_string(a[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------

Element apply_matrix(const ExponentMatrix& m, const Element& a, const AbelianGroup& target) {
  Element out(target.rank(), 0);
  for (int i = 0; i < target.rank(); ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += m[i][j] * a[j];
    out[i] = mod_floor(s, target.factors()[i]);
  }
  return out;
}

ExponentMatrix identity_matrix(int n) {
  ExponentMatrix m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ExponentMatrix multiply(const ExponentMatrix& a, const ExponentMatrix& b, int inner) {
  const std::size_t rows = a.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  ExponentMatrix c(rows, std::vector<long long>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (int k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

bool well_defined(const ExponentMatrix& m, const AbelianGroup& source, const AbelianGroup& target) {
  if (static_cast<int>(m.size()) != target.rank()) return false;
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != source.rank()) return false;
  for (int i = 0; i < target.rank(); ++i)
    for (int j = 0; j < source.rank(); ++j) {
      const long long dj = source.factors()[j];
      const long long di = target.factors()[i];
      if (dj == 0) continue;
      if (di == 0) {
        if (m[i][j] != 0) return false;
      } else if (mod_floor(m[i][j] * dj, di) != 0) {
        return false;
      }
    }
  return true;
}

bool same_hom(const ExponentMatrix& a, const ExponentMatrix& b, const AbelianGroup& source,
              const AbelianGroup& target) {
  for (int j = 0; j < source.rank(); ++j) {
    Element e(source.rank(), 0);
    e[j] = 1;
    if (apply_matrix(a, e, target) != apply_matrix(b, e, target)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

GroupBundle::GroupBundle(std::vector<std::string> units, std::vector<AbelianGroup> fibers)
    : units_(std::move(units)), fibers_(std::move(fibers)) {
  if (units_.size() != fibers_.size()) throw Error("bundle: one fibre per unit required");
}

GroupBundle GroupBundle::constant(const FiniteGroupoid& g, const AbelianGroup& a) {
  return GroupBundle(g.unit_ids(), std::vector<AbelianGroup>(g.num_units(), a));
}

bool GroupBundle::is_finite() const {
  return std::all_of(fibers_.begin(), fibers_.end(), [](const auto& f) { return f.is_finite(); });
}

bool GroupBundle::is_constant() const {
  return std::all_of(fibers_.begin(), fibers_.end(),
                     [&](const auto& f) { return f == fibers_.front(); });
}

long long GroupBundle::exponent() const {
  long long e = 1;
  for (const auto& f : fibers_) e = lcm_ll(e, f.exponent());
  return e;
}

long long GroupBundle::total_order() const {
  long long n = 0;
  for (const auto& f : fibers_) n += f.order();
  return n;
}

// ---------------------------------------------------------------------------

GroupoidAction::GroupoidAction(GroupoidPtr g, GroupBundle bundle,
                               std::vector<ExponentMatrix> matrices)
    : g_(std::move(g)), bundle_(std::move(bundle)), matrices_(std::move(matrices)) {
  if (bundle_.unit_ids() != g_->unit_ids()) throw Error("action: bundle is not over the groupoid's units");
  if (static_cast<int>(matrices_.size()) != g_->num_arrows())
    throw Error("action: one matrix per arrow required");
  for (int a = 0; a < g_->num_arrows(); ++a) {
    const auto& m = matrices_[a];
    const auto& t = bundle_.fiber(g_->tgt(a));
    const auto& s = bundle_.fiber(g_->src(a));
    bool ok = static_cast<int>(m.size()) == t.rank();
    for (const auto& row : m) ok = ok && static_cast<int>(row.size()) == s.rank();
    if (!ok) throw Error("action: matrix shape mismatch at arrow " + g_->arrow_id(a));
  }
  if (!bundle_.is_finite()) return;
  cache_.resize(g_->num_arrows());
  for (int a = 0; a < g_->num_arrows(); ++a) {
    const auto& s = bundle_.fiber(g_->src(a));
    const auto& t = bundle_.fiber(g_->tgt(a));
    auto& row = cache_[a];
    row.resize(s.order());
    for (long long i = 0; i < s.order(); ++i)
      row[i] = t.index_of(apply_matrix(matrices_[a], s.element(i), t));
  }
}

GroupoidAction GroupoidAction::trivial(GroupoidPtr g, GroupBundle bundle) {
  std::vector<ExponentMatrix> ms;
  for (int a = 0; a < g->num_arrows(); ++a) {
    const auto& s = bundle.fiber(g->src(a));
    if (!(s == bundle.fiber(g->tgt(a))))
      throw Error("trivial action needs equal fibres along arrow " + g->arrow_id(a));
    ms.push_back(identity_matrix(s.rank()));
  }
  return GroupoidAction(std::move(g), std::move(bundle), std::move(ms));
}

Element GroupoidAction::apply(int arrow, const Element& a) const {
  return apply_matrix(matrices_[arrow], a, bundle_.fiber(g_->tgt(arrow)));
}

long long GroupoidAction::apply_index(int arrow, long long index) const {
  return cache_[arrow][index];
}

bool GroupoidAction::is_trivial() const {
  for (int a = 0; a < g_->num_arrows(); ++a) {
    const auto& s = bundle_.fiber(g_->src(a));
    const auto& t = bundle_.fiber(g_->tgt(a));
    if (!(s == t) || !same_hom(matrices_[a], identity_matrix(s.rank()), s, t)) return false;
  }
  return true;
}

bool GroupoidAction::same_as(const GroupoidAction& o) const {
  if (!(g_ == o.g_ || *g_ == *o.g_) || !(bundle_ == o.bundle_)) return false;
  for (int a = 0; a < g_->num_arrows(); ++a)
    if (!same_hom(matrices_[a], o.matrices_[a], bundle_.fiber(g_->src(a)),
                  bundle_.fiber(g_->tgt(a))))
      return false;
  return true;
}

Report validate_action(const GroupoidAction& act) {
  Report r;
  const auto& g = *act.groupoid();
  const auto& bundle = act.bundle();
  for (int a = 0; a < g.num_arrows(); ++a)
    if (!well_defined(act.matrix(a), bundle.fiber(g.src(a)), bundle.fiber(g.tgt(a))))
      r.add("well-defined", g.arrow_id(a));
  if (!r.ok()) return r;
  for (int u = 0; u < g.num_units(); ++u) {
    const auto& f = bundle.fiber(u);
    if (!same_hom(act.matrix(g.unit_arrow(u)), identity_matrix(f.rank()), f, f))
      r.add("unit", g.unit_id(u));
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    const auto& s = bundle.fiber(g.src(a));
    const auto& t = bundle.fiber(g.tgt(a));
    for (int b : g.arrows_into(g.src(a))) {
      const auto& sb = bundle.fiber(g.src(b));
      const auto prod = multiply(act.matrix(a), act.matrix(b), s.rank());
      if (!same_hom(prod, act.matrix(g.comp(a, b)), sb, t))
        r.add("functoriality", pair_id(g.arrow_id(a), g.arrow_id(b)));
    }
    // bijectivity: act(a) act(a^-1) = id on A(tgt a) and act(a^-1) act(a) = id on A(src a)
    const int ai = g.inv(a);
    if (!same_hom(multiply(act.matrix(a), act.matrix(ai), s.rank()), identity_matrix(t.rank()), t, t) ||
        !same_hom(multiply(act.matrix(ai), act.matrix(a), t.rank()), identity_matrix(s.rank()), s, s))
      r.add("automorphism", g.arrow_id(a));
  }
  return r;
}

// ---------------------------------------------------------------------------

Report validate_bundle_hom(const BundleHom& f, const GroupoidAction& sa, const GroupoidAction& ta) {
  Report r;
  if (!(f.source == sa.bundle()) || !(f.target == ta.bundle()) ||
      static_cast<int>(f.matrices.size()) != f.source.num_units()) {
    r.add("shape", "hom does not match the acted-on bundles");
    return r;
  }
  for (int u = 0; u < f.source.num_units(); ++u)
    if (!well_defined(f.matrices[u], f.source.fiber(u), f.target.fiber(u)))
      r.add("well-defined", f.source.unit_ids()[u]);
  if (!r.ok()) return r;
  const auto& g = *sa.groupoid();
  for (int a = 0; a < g.num_arrows(); ++a) {
    const int s = g.src(a), t = g.tgt(a);
    const auto& from = f.source.fiber(s);
    const auto lhs = multiply(f.matrices[t], sa.matrix(a), f.source.fiber(t).rank());
    const auto rhs = multiply(ta.matrix(a), f.matrices[s], f.target.fiber(s).rank());
    if (!same_hom(lhs, rhs, from, f.target.fiber(t))) r.add("equivariance", g.arrow_id(a));
  }
  return r;
}

BundleHom identity_bundle_hom(const GroupBundle& a) {
  BundleHom f{a, a, {}};
  for (const auto& fib : a.fibers()) f.matrices.push_back(identity_matrix(fib.rank()));
  return f;
}

BundleHom zero_bundle_hom(const GroupBundle& a, const GroupBundle& b) {
  BundleHom f{a, b, {}};
  for (int u = 0; u < a.num_units(); ++u)
    f.matrices.emplace_back(b.fiber(u).rank(), std::vector<long long>(a.fiber(u).rank(), 0));
  return f;
}

BundleHom compose(const BundleHom& second, const BundleHom& first) {
  if (!(first.target == second.source)) throw Error("bundle hom composition: shape mismatch");
  BundleHom f{first.source, second.target, {}};
  for (int u = 0; u < first.source.num_units(); ++u)
    f.matrices.push_back(multiply(second.matrices[u], first.matrices[u], first.target.fiber(u).rank()));
  return f;
}

BundleHom multiplication_hom(const GroupBundle& a, long long n) {
  BundleHom f = identity_bundle_hom(a);
  for (auto& m : f.matrices)
    for (auto& row : m)
      for (auto& x : row) x *= n;
  return f;
}

GroupBundle fibered_product_bundle(const GroupBundle& a1, const GroupBundle& a2) {
  if (a1.unit_ids() != a2.unit_ids()) throw Error("fibred product of bundles: base mismatch");
  std::vector<AbelianGroup> fibers;
  for (int u = 0; u < a1.num_units(); ++u) {
    auto fs = a1.fiber(u).factors();
    const auto& f2 = a2.fiber(u).factors();
    fs.insert(fs.end(), f2.begin(), f2.end());
    fibers.emplace_back(std::move(fs));
  }
  return GroupBundle(a1.unit_ids(), std::move(fibers));
}

GroupoidAction fibered_product_action(const GroupoidAction& a1, const GroupoidAction& a2) {
  if (!(a1.groupoid() == a2.groupoid() || *a1.groupoid() == *a2.groupoid()))
    throw Error("fibred product of actions: groupoid mismatch");
  const auto& g = *a1.groupoid();
  std::vector<ExponentMatrix> ms;
  for (int a = 0; a < g.num_arrows(); ++a) {
    const auto& m1 = a1.matrix(a);
    const auto& m2 = a2.matrix(a);
    const int r1 = static_cast<int>(m1.size()), r2 = static_cast<int>(m2.size());
    const int c1 = a1.bundle().fiber(g.src(a)).rank(), c2 = a2.bundle().fiber(g.src(a)).rank();
    ExponentMatrix m(r1 + r2, std::vector<long long>(c1 + c2, 0));
    for (int i = 0; i < r1; ++i)
      for (int j = 0; j < c1; ++j) m[i][j] = m1[i][j];
    for (int i = 0; i < r2; ++i)
      for (int j = 0; j < c2; ++j) m[r1 + i][c1 + j] = m2[i][j];
    ms.push_back(std::move(m));
  }
  return GroupoidAction(a1.groupoid(), fibered_product_bundle(a1.bundle(), a2.bundle()),
                        std::move(ms));
}

BundleHom nabla(const GroupBundle& a) {
  BundleHom f{fibered_product_bundle(a, a), a, {}};
  for (const auto& fib : a.fibers()) {
    const int k = fib.rank();
    ExponentMatrix m(k, std::vector<long long>(2 * k, 0));
    for (int i = 0; i < k; ++i) m[i][i] = m[i][k + i] = 1;
    f.matrices.push_back(std::move(m));
  }
  return f;
}

// ---------------------------------------------------------------------------

RootOfUnity RootOfUnity::operator+(const RootOfUnity& o) const {
  if (modulus != o.modulus) throw Error("root of unity modulus mismatch");
  return {mod_floor(exponent + o.exponent, modulus), modulus};
}

RootOfUnity pairing(const CharacterBundle& dual, int u, const Element& chi, const Element& a) {
  const auto& fib = dual.characters(u);
  if (!fib.contains(chi) || !fib.contains(a)) throw Error("pairing: fibre mismatch");
  const long long n = dual.modulus;
  long long e = 0;
  for (int i = 0; i < fib.rank(); ++i) {
    const long long d = fib.factors()[i];
    e = mod_floor(e + (n / d) * mod_floor(chi[i] * a[i], d), n);
  }
  return {e, n};
}

Element dual_act(const GroupoidAction& act, const CharacterBundle& dual, int arrow,
                 const Element& chi) {
  const auto& g = *act.groupoid();
  const int s = g.src(arrow), t = g.tgt(arrow);
  const auto& from = act.bundle().fiber(s);
  Element out(from.rank());
  for (int j = 0; j < from.rank(); ++j) {
    Element e(from.rank(), 0);
    e[j] = 1;
    const long long v = pairing(dual, t, chi, act.apply(arrow, e)).exponent;
    const long long step = dual.modulus / from.factors()[j];
    out[j] = v / step;
  }
  return from.reduce(out);
}

DualBundle dual_bundle(const GroupoidAction& act, long long modulus) {
  const auto& bundle = act.bundle();
  if (!bundle.is_finite()) throw Error("dual bundle of an infinite bundle");
  const long long e = bundle.exponent();
  if (modulus == 0) modulus = e;
  if (modulus % e != 0) throw Error("dual bundle: modulus must be a multiple of the exponent");
  DualBundle d;
  d.characters = CharacterBundle{bundle, modulus};
  const auto& g = *act.groupoid();
  for (int u = 0; u < g.num_units(); ++u) {
    d.unit_offset.push_back(static_cast<int>(d.point_unit.size()));
    const auto& fib = bundle.fiber(u);
    for (long long i = 0; i < fib.order(); ++i) {
      const Element chi = fib.element(i);
      d.point_unit.push_back(u);
      d.point_character.push_back(chi);
      d.space.points.push_back("[" + g.unit_id(u) + "|" + fib.format(chi) + "]");
      d.space.anchor.push_back(u);
    }
  }
  const int na = g.num_arrows();
  d.space.act.assign(static_cast<std::size_t>(d.num_points()) * na, FiniteGroupoid::kNone);
  for (int p = 0; p < d.num_points(); ++p)
    for (int a : g.arrows_into(d.point_unit[p]))
      d.space.act[static_cast<std::size_t>(p) * na + a] =
          d.point(g.src(a), dual_act(act, d.characters, a, d.point_character[p]));
  return d;
}

GroupBundle root_of_unity_bundle(const FiniteGroupoid& g, long long modulus) {
  return GroupBundle::constant(g, AbelianGroup({modulus}));
}

BundleHom character_hom(const GroupoidAction& act, const Element& chi, long long modulus) {
  const auto& bundle = act.bundle();
  if (!bundle.is_constant() || !bundle.is_finite())
    throw Error("character hom needs a constant finite bundle");
  if (!act.is_trivial()) throw Error("character hom needs the trivial action");
  if (modulus == 0) modulus = bundle.exponent();
  const auto& fib = bundle.fiber(0);
  if (bundle.num_units() == 0) return BundleHom{bundle, bundle, {}};
  if (!fib.contains(chi)) throw Error("character hom: character not in the dual fibre");
  if (modulus % fib.exponent() != 0) throw Error("character hom: modulus not a multiple of the exponent");
  ExponentMatrix row(1, std::vector<long long>(fib.rank()));
  for (int i = 0; i < fib.rank(); ++i) row[0][i] = (modulus / fib.factors()[i]) * chi[i];
  return BundleHom{bundle, root_of_unity_bundle(*act.groupoid(), modulus),
                   std::vector<ExponentMatrix>(bundle.num_units(), row)};
}

}  // namespace gext
