// Curvature of flat-background AH structures nabla = D - (1/2) L_ij^k with a
// constant metric h and constant (or polynomial) trace-free cubic torsion L:
// the full algebraic decomposition of the curvature tensor into its
// metric-type (T/A), symplectic-type (U/E) and two-form (F/G) blocks, the
// Einstein / projective-flatness / conservation verdicts, a polynomial-field
// version, and a pointwise float jet interface for non-polynomial data.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ahlab/fields.hpp"

namespace ahlab {

using Matrix = std::vector<std::vector<Scalar>>;

Matrix zero_matrix(int n);
bool matrix_is_zero(const Matrix& m);

// Sparse rank-4 covariant tensor (no symmetry assumed by the container).
struct Rank4 {
  int n = 0;
  std::map<std::array<int, 4>, Scalar> comps;

  Rank4() = default;
  explicit Rank4(int n_) : n(n_) {}

  const Scalar& get(int i, int j, int k, int l) const;
  void add(int i, int j, int k, int l, const Scalar& v);
  bool is_zero() const { return comps.empty(); }

  Rank4 operator-() const;
  Rank4& operator+=(const Rank4& o);
  Rank4& operator-=(const Rank4& o);
  friend Rank4 operator+(Rank4 a, const Rank4& b) { return a += b; }
  friend Rank4 operator-(Rank4 a, const Rank4& b) { return a -= b; }
  friend Rank4 operator*(const Scalar& c, const Rank4& t);
  bool operator==(const Rank4& o) const { return n == o.n && comps == o.comps; }
};

// Membership in the space of pair curvature tensors: antisymmetric in the
// leading pair, with vanishing skew part over the first three slots.
bool is_pair_curvature(const Rank4& B);

// The three projections onto the irreducible summands of the pair-curvature
// space: project1 = metric-curvature symmetries + first-Bianchi, project2 =
// symplectic-curvature symmetries, project3 = the residual two-form type
// block.  They annihilate each other and sum to the identity on the space.
Rank4 project1(const Rank4& B);
Rank4 project2(const Rank4& B);
Rank4 project3(const Rank4& B);

// Ricci trace B_ij = B_pij^p and the scalar h^{ij} B_ij.
Matrix ricci_trace(const Rank4& B, const Metric& h);
Scalar scalar_of(const Matrix& ric, const Metric& h);

// Image of a two-form: r(F)_ijkl = F_ij h_kl - F_k[i h_j]l + F_l[i h_j]k.
Rank4 two_form_curvature(const Matrix& F, const Metric& h);

// Full contraction a^{ijkl} b_{ijkl} with all indices raised by h.
Scalar full_contract(const Rank4& a, const Rank4& b, const Metric& h);

// Completely trace-free (Weyl-type) part of a tensor with metric-curvature
// symmetries.  Identically zero in dimension <= 3.
Rank4 weyl_part(const Rank4& B, const Metric& h);

// Quadratic torsion tensors: L4_ijkl = 2 L_{k[i}^p L_{j]lp} (the
// non-associativity tensor) and its Ricci trace L_ij = L_ip^q L_jq^p.
Rank4 nonassociativity_tensor(const SymTensor& L, const Metric& h);
Matrix torsion_trace(const SymTensor& L, const Metric& h);

// Constant-coefficient structure on flat R^n: nabla = D - (1/2) L_ij^k for
// the (flat) Levi-Civita connection D of the constant metric h; L is the
// lowered cubic torsion, completely symmetric and h-trace-free (verified).
// An optional constant one-form gamma is carried for the Gauduchon checks.
struct FlatAHStructure {
  int n = 0;
  Metric h;
  SymTensor L;
  std::optional<std::vector<Scalar>> gamma;

  FlatAHStructure(Metric h_, SymTensor L_);
};

struct Verdicts {
  std::optional<Scalar> einstein;  // kappa = scalar / n when Einstein
  bool self_conjugate = false;     // conjugate connection has equal curvature
  bool proj_flat_obstructed = false;  // A4, E4, or F nonzero
  bool conservative = false;          // F = 0 and L^{abc} E4_iabc = 0
};

struct Decomposition {
  Rank4 T4, U4, F4, G4;  // R4 = T4 + U4 + F4 + G4
  Rank4 A4, E4;          // trace-free parts of T4 and U4
  Matrix Tij, Uij, Aij, Eij;
  Scalar scalar;  // scalar trace of T4 (= that of R4)
};

// Decomposes a pair-curvature tensor; the two-form F is recovered from the
// third projection when not supplied (it cannot be recovered for n = 2,
// where that block vanishes identically; zero is assumed).
Decomposition decompose_curvature(const Rank4& R4, const Metric& h,
                                  const std::optional<Matrix>& F = std::nullopt);

struct CurvatureReport {
  int n = 0;
  Rank4 R4;   // curvature of nabla, last index lowered with h
  Rank4 L4;   // non-associativity tensor
  Rank4 C4;   // trace-free part of L4
  Decomposition dec;
  Matrix ric;     // R_ij = R_pij^p
  Scalar scalar;  // h^{ij} R_ij
  Verdicts verdicts;
};

// Computes the curvature of nabla directly from its connection coefficients
// and decomposes it; nothing is assumed about which blocks vanish.
CurvatureReport curvature_flat(const FlatAHStructure& s);

// kappa = scalar / n when the trace-free symmetric Ricci vanishes, Eij = 0,
// and the conservation verdict holds; nullopt otherwise.
std::optional<Scalar> einstein_verdict(const CurvatureReport& rep, const FlatAHStructure& s);

// Polynomial-coefficient version for a rank-3 trace-free symmetric field L
// on flat R^n: divergence, the symmetric-trace block Eij = (1/2n) div L,
// the rank-4 block E4 = trace adjustment of -D_[i L_j]kl, the Ricci
// R_(ij) = -(1/4) L_ij - n Eij, and the scalar -(1/4)|L|^2.
struct FieldCurvatureReport {
  int n = 0;
  PolyTensorField div;  // (div L)_ij = D^p L_ijp
  PolyTensorField Eij;
  std::vector<Polynomial> E4;  // dense, index ((i*n + j)*n + k)*n + l
  std::vector<std::vector<Polynomial>> ric;
  std::vector<std::vector<Polynomial>> torsion;  // L_ij = L_ip^q L_jq^p
  Polynomial scalar;
};
FieldCurvatureReport field_curvature_flat(const PolyTensorField& L, const Metric& h);

// Checks for constant data (h, gamma, L) on a flat background:
// gamma_p L_ij^p = 0, the divergence and Killing equations (identically
// satisfied by constant data, reported for completeness), and constancy of
// the scalar quantity R - (1/4)|L|^2 - (n+2)|gamma|^2.
struct GauduchonReport {
  bool divergence_free = false;
  bool gamma_orthogonal = false;
  bool gamma_killing = false;
  bool scalar_constant = false;
  Matrix gammaL;  // gamma_p L_ij^p
};
GauduchonReport gauduchon_verify(const Metric& h, const std::vector<Scalar>& gamma,
                                 const SymTensor& L);

// ---- Pointwise jet interface (float mode) ---------------------------------

// Two-jet of the metric and one-jets of gamma and L at a single point.
// Derivative layout: dh[a][i][j] = d_a h_ij, d2h[a][b][i][j] = d_a d_b h_ij,
// dgamma[a][i] = d_a gamma_i, dL[a][i][j][k] = d_a L_ijk.
struct JetData {
  int n = 0;
  std::vector<std::vector<double>> h;
  std::vector<std::vector<std::vector<double>>> dh;
  std::vector<std::vector<std::vector<std::vector<double>>>> d2h;
  std::vector<double> gamma;
  std::vector<std::vector<double>> dgamma;
  std::vector<std::vector<std::vector<double>>> L;
  std::vector<std::vector<std::vector<std::vector<double>>>> dL;
};

struct JetCurvatureReport {
  int n = 0;
  double scalar = 0;         // h^{ij} R_ij of nabla at the point
  double L_norm2 = 0;        // |L|^2_h at the point
  double metric_scalar = 0;  // scalar curvature of h from its two-jet
  std::vector<std::vector<double>> ric;  // Ricci of nabla
  // Residual of metric_scalar = scalar + (1/4)|L|^2 + 2(n-1) d*gamma
  //                             + (n-1)(n-2)|gamma|^2.
  double consistency = 0;
};

// Evaluates the curvature of nabla = D - (1/2) L_ij^k - 2 gamma_(i delta_j)^k
// + h_ij gamma^k at the point from the supplied jet.
JetCurvatureReport curvature_from_jet(const JetData& jet);

// Builds a jet by central differences (step s) from closed-form callables
// for h and gamma; the torsion is derived from the distinguished-metric
// relation L_ijk = 2 Gamma_ijk - 2 gamma_(i h_j)k, itself by differences.
using MetricFn = std::function<std::vector<std::vector<double>>(const std::vector<double>&)>;
using CovectorFn = std::function<std::vector<double>(const std::vector<double>&)>;
JetData numeric_jet(int n, const MetricFn& metric, const CovectorFn& gamma,
                    const std::vector<double>& point, double step);

}  // namespace ahlab
