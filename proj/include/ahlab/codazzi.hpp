// Commutative algebras with an invariant metric whose multiplication tensor
// is completely symmetric, built from homogeneous cubic polynomials: trace
// forms, Einstein/special/conformal-associativity predicates, unitalization,
// one-dimensional extension, the Nahm construction on a Lie algebra, the
// isoparametric family, and Hessian-determinant identities.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ahlab/symtensor.hpp"

namespace ahlab {

using Vec = std::vector<Scalar>;

// Lie algebra given by structure constants c_ij^k on a fixed basis; the
// Jacobi identity is verified at construction.
struct LieAlgebraData {
  int n = 0;
  // c[i][j][k] = coefficient of e_k in [e_i, e_j]; antisymmetric in i, j.
  std::vector<std::vector<std::vector<Scalar>>> c;

  LieAlgebraData(int n_, const std::vector<std::tuple<int, int, int, Scalar>>& entries);

  Vec bracket(const Vec& x, const Vec& y) const;
  // Killing form B(e_i, e_j) = c_ip^q c_jq^p.
  std::vector<std::vector<Scalar>> killing_form() const;
};

struct CodazziAlgebra {
  int n = 0;
  Metric h;
  SymTensor mu;  // mu_ijk, rank 3, completely symmetric, all indices lowered

  CodazziAlgebra() = default;
  CodazziAlgebra(Metric h_, SymTensor mu_);

  // (x o y)^k = x^i y^j mu_ij^k with the last index raised by h.
  Vec multiply(const Vec& x, const Vec& y) const;
  Vec basis_product(int i, int j) const;

  // The cubic P(x) = (1/6) mu_ijk x^i x^j x^k; from_cubic inverts this.
  Polynomial cubic() const;

  // tau_ij = tr L(e_i)L(e_j) = mu_ip^q mu_jq^p.
  std::vector<std::vector<Scalar>> trace_form() const;

  // kappa with tau = kappa h, when it exists; equals |mu|^2_h / n.
  std::optional<Scalar> einstein_constant() const;

  // tr L(x) = 0 for all x; equivalent to the cubic being h-harmonic (both
  // conditions are computed and must agree).
  bool is_special() const;

  // [x, y, z] = (x o y) o z - x o (y o z).
  Vec associator(const Vec& x, const Vec& y, const Vec& z) const;

  // Left side h([x, z, y], v) = h(x o z, y o v) - h(y o z, x o v) and right
  // side (kappa/(n-1)) (h(x,v)h(y,z) - h(y,v)h(x,z)) of the criterion for
  // conformal associativity. Requires the algebra to be Einstein.
  std::pair<Scalar, Scalar> conf_assoc_probe(const Vec& x, const Vec& y, const Vec& z,
                                             const Vec& v) const;

  // True iff the h-trace-free part of the associator tensor vanishes, i.e.
  // the probe identity holds for all basis quadruples. Requires Einstein.
  bool is_conformally_associative() const;

  // All basis associators vanish.
  bool is_associative() const;

  Scalar inner(const Vec& x, const Vec& y) const;  // h(x, y)
};

// mu_ijk = third derivatives of P (P must be homogeneous cubic).
CodazziAlgebra from_cubic(const Polynomial& p, const Metric& h);

// Builds the algebra from an explicit multiplication, verifying that the
// lowered product tensor is completely symmetric (h-invariance).
CodazziAlgebra algebra_from_multiplication(
    const Metric& h, const std::function<Vec(int, int)>& basis_product);

// Adjoins a unit e: (x, a)(y, b) = (x o y + a y + b x, h(x,y) + a b) with
// metric h + (last coordinate)^2. The unit is the last basis vector.
CodazziAlgebra unitalize(const CodazziAlgebra& a);

// One-dimensional extension of a special Einstein algebra with rational
// Einstein constant kn > 0 to a special Einstein algebra of dimension n+1
// with constant kn1 > n; the added direction is the last coordinate. With
// kn = n(n-1), kn1 = n(n+1) this reproduces the recursive chain of cubics.
CodazziAlgebra extend(const CodazziAlgebra& a, const Rat& kn, const Rat& kn1);

// Nahm algebra on g + g + g with blockwise bracket products and metric
// -(1/2) blockdiag(B_g, B_g, B_g); requires B_g nondegenerate.
CodazziAlgebra nahm(const LieAlgebraData& g);

// kappa such that |Hess P|^2_h = kappa E holds exactly, where
// E(x) = h_ij x^i x^j; nullopt when no such constant exists.  Harmonicity
// of P is a separate condition (see laplacian / CodazziAlgebra::is_special):
// the determinant-type cubics satisfy this identity without being harmonic.
std::optional<Scalar> check_einstein_polynomials(const Polynomial& p, const Metric& h);

struct HessianDetResult {
  Polynomial det;             // det Hess P
  std::optional<Scalar> kappa;  // factor with det Hess P = kappa P, if any
};
HessianDetResult hessian_det_check(const Polynomial& p);

// The isoparametric cubic on R^(3m+2) built from the composition algebra of
// dimension m in {1, 2, 4, 8}; coordinates are (z1, z2, z3, y, x) with each
// z-block of size m (real part first).
Polynomial isoparametric_cubic(int m);

// Delta P = 0 and |DP|^2 = 9 E^2 with the Euclidean metric, exactly.
bool isoparametric_check(const Polynomial& p);

// --- Catalog cubics -------------------------------------------------------

// r (x1^3 - 3 x1 x2^2) on R^2; kappa = 72 r^2.
Polynomial cubic_plane_harmonic(const Rat& r);
// x3^3 - (3/2)x3(x1^2+x2^2) + (1/sqrt 2)(x1^3 - 3 x1 x2^2); kappa = 54.
Polynomial cubic_r3_standard();
// -(1/6)x3^3 + (1/2)x3(x1^2-x2^2+x4^2) - x1 x2 x4 on R^4; kappa = 4.
Polynomial cubic_r4_complex();
// (1/2) det of the 3x3 matrix of coordinates on R^9; kappa = 1.
Polynomial cubic_det3();
// det of the symmetric 3x3 matrix with sqrt(2)-scaled off-diagonals, R^6;
// kappa = 3.
Polynomial cubic_symdet3();
// Pfaffian of a 6x6 antisymmetric matrix in its 15 upper entries; kappa = 6.
Polynomial cubic_pfaffian6();
// The chain Q_n with kappa_n = n(n-1), starting from 6 Q_2 = x1^3 - 3 x1 x2^2.
Polynomial cubic_chain(int n);
// c x1 x2 x3; kappa = 2 c^2.
Polynomial cubic_triple(const Scalar& c);
// lambda x1 x2 x3 + mu x2 (x1^2 - x3^2); kappa = 8 mu^2 + 2 lambda^2.
Polynomial cubic_two_parameter(const Scalar& lambda, const Scalar& mu);
// (a/6)(x1^3+x2^3+x3^3) + b x1 x2 x3 (the syzygetic pencil).
Polynomial cubic_syzygetic(const Scalar& a, const Scalar& b);

}  // namespace ahlab
