// Left-invariant structures on semisimple Lie algebras: the metric given by
// the negative of the Killing form, the curvature of an invariant connection
// determined by a completely symmetric trace-free cubic term, the Einstein
// criterion, the one-parameter family on the three-sphere group, and the
// structures attached to nilpotent elements through verified sl2-triples.
// Everything is computed in a fixed basis of the algebra; left-invariance
// makes all quantities algebraic in the structure constants.
#pragma once

#include <optional>
#include <string>

#include "ahlab/codazzi.hpp"
#include "ahlab/curvature.hpp"

namespace ahlab {

// h_ij = -c_ip^q c_jq^p.  Throws std::domain_error when the form is
// degenerate (the algebra is not semisimple).
Metric killing_metric(const LieAlgebraData& lie);

// An invariant structure: connection coefficients (1/2) c_ij^k + Gamma_ij^k
// in the chosen basis, where Gamma_ijk is completely symmetric and
// completely h-trace-free, so the cubic torsion is L = 2 Gamma.  Both
// constructors verify that c_ijk := c_ij^p h_pk is completely antisymmetric
// and that Gamma is trace-free; the two-argument form uses the negative
// Killing form for h.
struct InvariantAH {
  LieAlgebraData lie;
  Metric h;
  SymTensor gamma;  // Gamma_ijk, rank 3, all indices lowered

  InvariantAH(LieAlgebraData lie_, SymTensor gamma_);
  InvariantAH(LieAlgebraData lie_, Metric h_, SymTensor gamma_);
};

struct InvariantReport {
  int n = 0;
  Rank4 R4;           // curvature of the connection, last index lowered
  Decomposition dec;  // block decomposition of R4 (two-form part zero)
  Matrix ric;         // R_ij = R_pij^p (symmetric here)
  Scalar scalar;      // h^{ij} R_ij = n/4 - |Gamma|^2
  Matrix gammaL;      // Gamma_ip^q Gamma_jq^p
  std::optional<Scalar> mu;  // |det h|^{-1/n} when exactly representable
  double mu_value = 0.0;
  bool conservative = false;        // L^{jkl} E4_ijkl = 0
  std::optional<Scalar> einstein;   // scalar / n when Einstein
};

// Computes R_ijk^l = A_ip^l A_jk^p - A_jp^l A_ik^p - c_ij^p A_pk^l for
// A = (1/2) c + Gamma and decomposes it; the symmetric-trace block Eij
// vanishes for every valid input, and E4 agrees with the closed form
// E_ijkl = Gamma_k[i^p c_j]lp + Gamma_l[i^p c_j]kp - c_pij Gamma_kl^p
// (asserted internally).
InvariantReport invariant_curvature(const InvariantAH& s);

// kappa = scalar / n when Gamma_ip^q Gamma_jq^p is proportional to h_ij
// (which is equivalent to Einstein for these structures); nullopt otherwise.
std::optional<Scalar> einstein_criterion(const InvariantAH& s);

// Symmetrized derivative D_(i Gamma_jkl) for the bi-invariant connection
// with coefficients (1/2) c_ij^k; Gamma is a conformal Killing tensor of the
// bi-invariant metric exactly when this vanishes.
SymTensor conformal_killing_defect(const InvariantAH& s);

// Gamma_ijk = t X_(i Y_j Z_k) on the sqrt(2)-normalized so(3) basis
// ([x, y] = z / sqrt(2) cyclic, for which h is the identity).  Einstein for
// every t, with scalar curvature 3/4 - t^2/6.
InvariantAH s3_family(const Scalar& t);

// Structure attached to a nilpotent element e through an sl2-triple
// (e, f, ht): Gamma_ijk = X_i X_j X_k for the lowered null covector
// X_i = h_ip e^p.  The triple relations [e, f] = ht, [ht, e] = 2e,
// [ht, f] = -2f and the nullity B(e, e) = 0 are verified; Einstein with
// 4 R_ij = h_ij.
struct NilpotentStructure {
  InvariantAH s;
  Vec e, f, ht;
  Scalar bef;  // B(e, f), nonzero for a genuine triple
};
NilpotentStructure nilpotent_structure(const LieAlgebraData& lie, const Vec& e,
                                       const Vec& f, const Vec& ht);

// ht^i f^j f^k f^l E4_ijkl from the report of ns.s; equals -4 B(e, f)^3,
// which is nonzero for every genuine sl2-triple.
Scalar nilpotent_contraction(const NilpotentStructure& ns, const InvariantReport& rep);

// Built-in algebras: "so3" / "su2-scaled" (the sqrt(2)-normalized brackets,
// negative Killing form = identity), "sl2r" (the indefinite analogue,
// h = diag(-1, -1, 1)), "sl2-standard" (basis e, f, ht with [e, f] = ht,
// [ht, e] = 2e, [ht, f] = -2f).  Throws std::invalid_argument otherwise.
LieAlgebraData builtin_lie(const std::string& name);

}  // namespace ahlab
