// Exact algebra of fully symmetric covariant tensors on R^n and the
// correspondence with homogeneous polynomials.
//
// A rank-k symmetric tensor omega corresponds to the polynomial
//   P_omega(x) = omega_{i1...ik} x^{i1} ... x^{ik},
// and conversely omega = (1/k!) D^(k) P.  Several operations (symmetrized
// product, traces, contractions) are implemented through this correspondence,
// which keeps the combinatorial weights correct by construction.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ahlab/scalar.hpp"

namespace ahlab {

// Sorted multi-index (0-based entries, ascending).
using Index = std::vector<int>;

Index sorted(Index idx);

// k! / (m_1! m_2! ...): number of distinct arrangements of the multi-index.
Int arrangement_count(const Index& idx);

// Iterate all sorted multi-indices of the given rank with entries in [0, n).
// f is called with each index; rank 0 yields the single empty index.
void for_each_sorted_index(int n, int rank, const std::function<void(const Index&)>& f);

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}
  static Polynomial constant(int n, const Scalar& c);
  static Polynomial variable(int n, int i);  // x_i

  int dim() const { return n_; }
  bool is_zero() const { return monos_.empty(); }
  // Degree of the highest monomial; -1 for the zero polynomial.
  int degree() const;
  // Homogeneous of the given degree (zero polynomial counts as homogeneous).
  bool is_homogeneous(int k) const;
  std::optional<int> homogeneous_degree() const;

  const Scalar& coeff(const std::vector<int>& exponents) const;
  void add_monomial(const std::vector<int>& exponents, const Scalar& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Scalar& c, const Polynomial& p);
  bool operator==(const Polynomial& o) const { return n_ == o.n_ && monos_ == o.monos_; }

  Polynomial derivative(int i) const;  // d/dx_i
  Scalar evaluate(const std::vector<Scalar>& x) const;
  double evaluate(const std::vector<double>& x) const;

  const std::map<std::vector<int>, Scalar>& monomials() const { return monos_; }
  std::string to_string() const;

 private:
  int n_ = 0;
  std::map<std::vector<int>, Scalar> monos_;  // exponent vector -> nonzero coeff
};

class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(int n, int rank) : n_(n), rank_(rank) {}

  int dim() const { return n_; }
  int rank() const { return rank_; }
  bool is_zero() const { return comps_.empty(); }

  const Scalar& get(Index idx) const;  // any order; sorted internally
  void set(Index idx, const Scalar& v);
  void add(Index idx, const Scalar& v);

  SymTensor operator-() const;
  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(const Scalar& c, const SymTensor& t);
  bool operator==(const SymTensor& o) const;

  const std::map<Index, Scalar>& comps() const { return comps_; }

 private:
  int n_ = 0;
  int rank_ = 0;
  std::map<Index, Scalar> comps_;  // sorted index -> nonzero component
};

struct Metric {
  int n = 0;
  std::vector<std::vector<Scalar>> g;     // h_ij
  std::vector<std::vector<Scalar>> ginv;  // h^ij
  Scalar det;
  int pos = 0, neg = 0;  // signature

  static Metric from_matrix(std::vector<std::vector<Scalar>> m);
  static Metric euclidean(int n);
  SymTensor tensor() const;      // h as a rank-2 SymTensor
  Polynomial quadratic() const;  // E(x) = h_ij x^i x^j
  bool is_euclidean() const;
};

// Tensor <-> polynomial correspondence.
SymTensor tensor_from_poly(const Polynomial& p);  // throws if not homogeneous
Polynomial poly_from_tensor(const SymTensor& w);

// Symmetrized tensor product: P_{a (.) b} = P_a * P_b.
SymTensor sym_product(const SymTensor& a, const SymTensor& b);

// h-Laplacian h^{pq} d_p d_q.
Polynomial laplacian(const Polynomial& p, const Metric& h);

// tr(w)_{i1...i_{k-2}} = w_{i1...i_{k-2} p}{}^p.
SymTensor trace(const SymTensor& w, const Metric& h);

// Completely trace-free part, via the harmonic-part expansion of P_w.
SymTensor trace_free(const SymTensor& w, const Metric& h);
Polynomial harmonic_part(const Polynomial& p, const Metric& h);

// Substitute the linear change of variables x_i = sum_j A[i][j] y_j into p;
// the result is a polynomial in the y variables (same count as columns of A).
Polynomial substitute_linear(const Polynomial& p, const std::vector<std::vector<Scalar>>& A);

// j-fold symmetrized contraction con^j; con^0 = symmetrized product,
// con^k(a, a) = |a|^2 for rank-k a.
SymTensor con_contraction(const SymTensor& a, const SymTensor& b, int j, const Metric& h);

// <a, b>_h for equal-rank tensors; |a|^2_h = inner(a, a).
Scalar inner(const SymTensor& a, const SymTensor& b, const Metric& h);
Scalar norm2(const SymTensor& a, const Metric& h);

// Cartan product tf(a (.) b) of trace-free tensors (checked).
SymTensor cartan_product(const SymTensor& a, const SymTensor& b, const Metric& h);

// Raise / lower every slot with h^{ij} / h_{ij}.  The result is again stored
// as a SymTensor (component container); callers track variance.
SymTensor raise_all(const SymTensor& w, const Metric& h);
SymTensor lower_all(const SymTensor& w, const Metric& h);

}  // namespace ahlab
