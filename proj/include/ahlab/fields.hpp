// Symmetric tensor fields on flat R^n with polynomial components, the
// first-order operators L, K, T, div they support, and the exact decomposition
// D w = L(w) + T(w) + i_h(div w) with its norm splitting.
//
// Three component containers appear:
//   PolyTensorField  - fully symmetric rank-k field.
//   Slot1Field       - rank-(1+k): distinguished first slot, symmetric rest
//                      (covariant derivatives, T(w), i_h(rho)).
//   PairField        - rank-(2+(k-1)): antisymmetric leading pair, symmetric
//                      rest (K(w)); stored on i < j representatives.
#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "ahlab/symtensor.hpp"

namespace ahlab {

struct PolyTensorField {
  int n = 0;
  int rank = 0;
  std::map<Index, Polynomial> comps;  // sorted index -> nonzero polynomial

  PolyTensorField() = default;
  PolyTensorField(int n_, int rank_) : n(n_), rank(rank_) {}
  static PolyTensorField constant(const SymTensor& w);

  const Polynomial& get(Index idx) const;
  void add(Index idx, const Polynomial& p);
  bool is_zero() const { return comps.empty(); }

  PolyTensorField operator-() const;
  PolyTensorField& operator+=(const PolyTensorField& o);
  PolyTensorField& operator-=(const PolyTensorField& o);
  friend PolyTensorField operator+(PolyTensorField a, const PolyTensorField& b) { return a += b; }
  friend PolyTensorField operator-(PolyTensorField a, const PolyTensorField& b) { return a -= b; }
  friend PolyTensorField operator*(const Scalar& c, const PolyTensorField& f);
  bool operator==(const PolyTensorField& o) const;

  SymTensor evaluate(const std::vector<Scalar>& x) const;
};

struct Slot1Field {
  int n = 0;
  int sym_rank = 0;  // rank of the symmetric block; total rank is 1 + sym_rank
  std::map<std::pair<int, Index>, Polynomial> comps;

  Slot1Field() = default;
  Slot1Field(int n_, int sym_rank_) : n(n_), sym_rank(sym_rank_) {}

  const Polynomial& get(int i, Index rest) const;
  void add(int i, Index rest, const Polynomial& p);
  bool is_zero() const { return comps.empty(); }

  Slot1Field& operator+=(const Slot1Field& o);
  Slot1Field& operator-=(const Slot1Field& o);
  friend Slot1Field operator+(Slot1Field a, const Slot1Field& b) { return a += b; }
  friend Slot1Field operator-(Slot1Field a, const Slot1Field& b) { return a -= b; }
  bool operator==(const Slot1Field& o) const;
};

struct PairField {
  int n = 0;
  int sym_rank = 0;  // total rank is 2 + sym_rank
  std::map<std::tuple<int, int, Index>, Polynomial> comps;  // i < j

  PairField() = default;
  PairField(int n_, int sym_rank_) : n(n_), sym_rank(sym_rank_) {}

  // Antisymmetric lookup: get(j, i, rest) = -get(i, j, rest).
  Polynomial get(int i, int j, Index rest) const;
  void add(int i, int j, Index rest, const Polynomial& p);
  bool is_zero() const { return comps.empty(); }
};

// Fiberwise symmetrized product (same formula as for constant tensors).
PolyTensorField field_product(const PolyTensorField& a, const PolyTensorField& b);

// Coordinate covariant derivative (flat metric): (Dw)_{i,S} = d_i w_S.
Slot1Field covariant_derivative(const PolyTensorField& w);

// Full symmetrization of a Slot1Field.
PolyTensorField symmetrize(const Slot1Field& e);

// View a symmetric field as a Slot1Field of one higher leading slot.
Slot1Field as_slot1(const PolyTensorField& w);

PolyTensorField divergence(const PolyTensorField& w, const Metric& h);
PolyTensorField field_trace(const PolyTensorField& w, const Metric& h);
PolyTensorField field_trace_free(const PolyTensorField& w, const Metric& h);
PolyTensorField field_laplacian(const PolyTensorField& w, const Metric& h);

// L(w): trace-free part of the symmetrized derivative (input must be
// trace-free; checked).
PolyTensorField op_L(const PolyTensorField& w, const Metric& h);

// K(w): trace-free part of D_[i w_j]...; both printed forms are implemented,
// they must agree (op_K uses the summed form, op_K_alt the pair form).
PairField op_K(const PolyTensorField& w, const Metric& h);
PairField op_K_alt(const PolyTensorField& w, const Metric& h);

// T(w)_{i,S} = (2k/(k+1)) K(w)_{i(S)}.
Slot1Field op_T(const PolyTensorField& w, const Metric& h);

// i_h(rho) for rho of rank k-1, target rank 1+k; the traces of the result
// reproduce rho and the symmetric block is trace-free.
Slot1Field insert_trace(const PolyTensorField& rho, int k, const Metric& h);

// K*(K(w))_S = D^p K(w)_{p(S)}.
PolyTensorField KstarK(const PolyTensorField& w, const Metric& h);

// Exact polynomial norms (full contraction with h on every slot).
Polynomial norm2_field(const PolyTensorField& w, const Metric& h);
Polynomial norm2_slot1(const Slot1Field& e, const Metric& h);
Polynomial norm2_pair(const PairField& f, const Metric& h);

struct DecompositionReport {
  bool identity_holds = false;  // Dw = L(w) + T(w) + i_h(div w)
  bool norms_split = false;     // |Dw|^2 = |L|^2 + (2k/(k+1))|K|^2 + c|div|^2
  Slot1Field residual;
};
DecompositionReport verify_decomposition(const PolyTensorField& w, const Metric& h);

struct WeitzenbockReport {
  bool identity_holds = false;  // Delta w = div L(w) + c1 L(div w) + (2k/(k+1)) K*K(w)
  PolyTensorField residual;
};
WeitzenbockReport verify_flat_weitzenbock(const PolyTensorField& w, const Metric& h);

// Refined Kato inequalities, float mode.
enum class KatoKernel { k_div, l_div, l_k };  // ker K + ker div, ker L + ker div, ker L + ker K
double kato_constant(KatoKernel kind, int n, int k);

struct KatoCheck {
  std::vector<double> slack;  // c*|Dw|^2 - |d|w||^2 at each point, >= -1e-12 expected
  bool ok = false;
};
KatoCheck kato_spot_check(const PolyTensorField& w, KatoKernel kind,
                          const std::vector<std::vector<double>>& points, const Metric& h);

// Random harmonic homogeneous polynomial (for tests and Kato fields).
Polynomial random_harmonic(int n, int degree, const Metric& h, unsigned seed);

}  // namespace ahlab
