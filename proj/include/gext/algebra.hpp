#pragma once

// Convolution *-algebras of finite groupoids and of mu_N-twists, their
// Wedderburn block fingerprints and the decompositions built on them.
//
// Every algebra here is monomial: the product of two basis elements is a root
// of unity times a basis element, or zero. Coefficients stay exact (exponents
// mod N) until the numeric step.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gext/extension.hpp"
#include "gext/groupoid.hpp"
#include "gext/linalg.hpp"
#include "gext/report.hpp"

namespace gext {

struct Monomial {
  int index = -1;          // basis element, or -1 for zero
  long long exponent = 0;  // coefficient exp(2 pi i exponent / modulus)

  bool operator==(const Monomial&) const = default;
};

class ConvolutionAlgebra {
 public:
  ConvolutionAlgebra() = default;
  /// `product` is row-major d x d; `unit` lists the basis elements summing to 1.
  ConvolutionAlgebra(std::vector<std::string> labels, long long modulus, std::vector<Monomial> product,
                     std::vector<Monomial> star, std::vector<int> unit);

  int dimension() const noexcept { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  long long modulus() const noexcept { return modulus_; }
  const Monomial& product(int i, int j) const { return product_[static_cast<std::size_t>(i) * labels_.size() + j]; }
  const Monomial& star(int i) const { return star_[i]; }
  const std::vector<int>& unit() const noexcept { return unit_; }

  cplx coefficient(long long exponent) const;
  Eigen::VectorXcd unit_vector() const;
  /// x y for coordinate vectors.
  Eigen::VectorXcd multiply(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;
  Eigen::VectorXcd adjoint(const Eigen::VectorXcd& x) const;
  /// Matrix of left multiplication by x.
  Eigen::MatrixXcd left_matrix(const Eigen::VectorXcd& x) const;

  /// Relabels the basis: element i of the result is element perm[i] of this.
  ConvolutionAlgebra permuted(const std::vector<int>& perm) const;

 private:
  std::vector<std::string> labels_;
  long long modulus_ = 1;
  std::vector<Monomial> product_;
  std::vector<Monomial> star_;
  std::vector<int> unit_;
};

/// Associativity, *-axioms and the unit, in exact exponent arithmetic.
Report validate_algebra(const ConvolutionAlgebra& a);

/// (f*h)(g) = sum_{g1 g2 = g} f(g1) h(g2), f*(g) = conj f(g^-1).
ConvolutionAlgebra groupoid_algebra(const FiniteGroupoid& g);

/// Functions on the total groupoid of a mu_N-twist with f(z s) = z^k f(s),
/// one basis element per base arrow (supported on its fibre). Throws unless
/// the kernel is a constant cyclic bundle with trivial action.
ConvolutionAlgebra twisted_algebra(const Extension& twist, long long k);

/// Matrix units of M_n.
ConvolutionAlgebra matrix_algebra(int n);

struct NumericOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;  // mt19937_64
  int max_retries = 5;
};

struct Fingerprint {
  int dimension = 0;
  std::vector<int> blocks;  // ascending

  bool operator==(const Fingerprint&) const = default;
};

/// Sum of two fingerprints as multisets.
Fingerprint merge(const Fingerprint& a, const Fingerprint& b);
std::string format(const Fingerprint& f);

struct CentralDecomposition {
  Fingerprint fingerprint;
  std::vector<Eigen::VectorXcd> projections;  // minimal central idempotents, same order as blocks
  int attempts = 0;
};

/// Center basis (columns), from the commutation equations.
Eigen::MatrixXcd center(const ConvolutionAlgebra& a, double tolerance = 1e-9);

CentralDecomposition central_decomposition(const ConvolutionAlgebra& a, const NumericOptions& opts = {});
Fingerprint fingerprint(const ConvolutionAlgebra& a, const NumericOptions& opts = {});

/// Orthogonality, idempotence, centrality and completeness of a family.
Report validate_central_projections(const ConvolutionAlgebra& a, const std::vector<Eigen::VectorXcd>& family,
                                    double tolerance = 1e-9);

struct CharacterSummand {
  Element character;
  Extension twist;  // pushout along f_chi
  ConvolutionAlgebra algebra;
};

/// One summand per character of the constant kernel; throws for a
/// non-constant bundle or a nontrivial action.
std::vector<CharacterSummand> decompose_over_characters(const Extension& e);

struct PowerSummand {
  long long k = 0;
  ConvolutionAlgebra algebra;
};
std::vector<PowerSummand> power_twist_decomposition(const Extension& twist);

/// Per-fibre algebras of an invariant partition (throws if not invariant).
std::vector<ConvolutionAlgebra> decompose_over_base(const FiniteGroupoid& g, const InvariantPartition& p);
std::vector<ConvolutionAlgebra> decompose_over_base(const Extension& twist, long long k,
                                                    const InvariantPartition& p);

/// The summand over an invariant set of units.
ConvolutionAlgebra restrict_summand(const FiniteGroupoid& g, const std::vector<int>& units);
ConvolutionAlgebra restrict_summand(const Extension& twist, long long k, const std::vector<int>& units);

/// Fingerprints of C(Sigma) and C(Ahat x| G; Sigma^), with dimension check.
struct PushoutTheoremResult {
  Report report;
  Fingerprint total;
  Fingerprint twisted;
};
PushoutTheoremResult verify_pushout_theorem(const Extension& e, const NumericOptions& opts = {});

/// Commutant of span{e_i : i in sub}.
Eigen::MatrixXcd commutant(const ConvolutionAlgebra& a, const std::vector<int>& sub, double tolerance = 1e-9);

struct MasaResult {
  Report report;
  int sub_dimension = 0;
  int commutant_dimension = 0;
};
/// Throws if the span is not a commutative *-subalgebra. `weyl`, when given,
/// is checked for trivial isotropy at every unit.
MasaResult masa_check(const ConvolutionAlgebra& a, const std::vector<int>& sub, const FiniteGroupoid* weyl = nullptr,
                      double tolerance = 1e-9);

/// Units with nontrivial isotropy.
Report principal_check(const FiniteGroupoid& g);

/// Z_n x Z_n twisted by phi((a,b),(c,d)) = ad in mu_n (so u_g u_h = zeta^{ad-bc} u_h u_g),
/// the span of u_(a,0), and the translation action of Z_n on the dual of Z_n.
struct HeisenbergMasa {
  Extension twist;
  ConvolutionAlgebra algebra;
  std::vector<int> sub;
  FiniteGroupoid weyl;
};
HeisenbergMasa heisenberg_masa(int n);

/// The Heisenberg group mod n as an extension of Z_n x Z_n by Z_n.
Extension heisenberg_extension(int n);

}  // namespace gext
