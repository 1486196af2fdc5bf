#include "ahlab/codazzi.hpp"

#include <algorithm>
#include <stdexcept>

namespace ahlab {

namespace {

Polynomial var(int n, int i) { return Polynomial::variable(n, i); }

Scalar constant_term(const Polynomial& p) {
  return p.coeff(std::vector<int>(p.dim(), 0));
}

// Quadratic form E(x) = h_ij x^i x^j as a polynomial in n variables.
Polynomial metric_quadratic(const Metric& h) {
  Polynomial e(h.n);
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j < h.n; ++j)
      if (!h.g[i][j].is_zero()) e += h.g[i][j] * (var(h.n, i) * var(h.n, j));
  return e;
}

// Lift a polynomial in n variables to one in m >= n variables (same leading
// variables).
Polynomial lift(const Polynomial& p, int m) {
  Polynomial r(m);
  for (const auto& [e, c] : p.monomials()) {
    std::vector<int> e2 = e;
    e2.resize(m, 0);
    r.add_monomial(e2, c);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// LieAlgebraData

LieAlgebraData::LieAlgebraData(int n_,
                               const std::vector<std::tuple<int, int, int, Scalar>>& entries)
    : n(n_),
      c(n_, std::vector<std::vector<Scalar>>(n_, std::vector<Scalar>(n_, Scalar(0)))) {
  for (const auto& [i, j, k, val] : entries) {
    if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n)
      throw std::invalid_argument("LieAlgebraData: index out of range");
    if (i == j && !val.is_zero())
      throw std::invalid_argument("LieAlgebraData: [e_i, e_i] must vanish");
    c[i][j][k] += val;
    c[j][i][k] -= val;
  }
  // Jacobi: [[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j] = 0.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar s;
          for (int p = 0; p < n; ++p)
            s += c[i][j][p] * c[p][k][l] + c[j][k][p] * c[p][i][l] + c[k][i][p] * c[p][j][l];
          if (!s.is_zero()) throw std::invalid_argument("LieAlgebraData: Jacobi identity fails");
        }
}

Vec LieAlgebraData::bracket(const Vec& x, const Vec& y) const {
  Vec r(n, Scalar(0));
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      for (int k = 0; k < n; ++k) r[k] += x[i] * y[j] * c[i][j][k];
    }
  }
  return r;
}

std::vector<std::vector<Scalar>> LieAlgebraData::killing_form() const {
  std::vector<std::vector<Scalar>> b(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) b[i][j] += c[i][p][q] * c[j][q][p];
  return b;
}

// ---------------------------------------------------------------------------
// CodazziAlgebra

CodazziAlgebra::CodazziAlgebra(Metric h_, SymTensor mu_) : n(h_.n), h(std::move(h_)), mu(std::move(mu_)) {
  if (mu.rank() != 3 || mu.dim() != n)
    throw std::invalid_argument("CodazziAlgebra: mu must be rank 3 over the metric's space");
}

Vec CodazziAlgebra::multiply(const Vec& x, const Vec& y) const {
  Vec low(n, Scalar(0));
  for (const auto& [idx, v] : mu.comps()) {
    Index perm = idx;
    std::sort(perm.begin(), perm.end());
    do {
      low[perm[2]] += x[perm[0]] * y[perm[1]] * v;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  Vec r(n, Scalar(0));
  for (int k = 0; k < n; ++k)
    for (int p = 0; p < n; ++p)
      if (!h.ginv[p][k].is_zero()) r[k] += h.ginv[p][k] * low[p];
  return r;
}

Vec CodazziAlgebra::basis_product(int i, int j) const {
  Vec x(n, Scalar(0)), y(n, Scalar(0));
  x[i] = Scalar(1);
  y[j] = Scalar(1);
  return multiply(x, y);
}

Polynomial CodazziAlgebra::cubic() const {
  Polynomial p(n);
  for (const auto& [idx, v] : mu.comps()) {
    std::vector<int> e(n, 0);
    for (int i : idx) ++e[i];
    p.add_monomial(e, Scalar(Rat(arrangement_count(idx), 6)) * v);
  }
  return p;
}

std::vector<std::vector<Scalar>> CodazziAlgebra::trace_form() const {
  // L(e_a)_p^q = mu_ap^q.
  std::vector<std::vector<std::vector<Scalar>>> L(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(0))));
  for (int a = 0; a < n; ++a)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        Scalar s;
        for (int r = 0; r < n; ++r) {
          const Scalar& m = mu.get({a, p, r});
          if (!m.is_zero()) s += m * h.ginv[r][q];
        }
        L[a][p][q] = s;
      }
  std::vector<std::vector<Scalar>> tau(n, std::vector<Scalar>(n, Scalar(0)));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Scalar s;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) s += L[a][p][q] * L[b][q][p];
      tau[a][b] = s;
      tau[b][a] = s;
    }
  return tau;
}

std::optional<Scalar> CodazziAlgebra::einstein_constant() const {
  auto tau = trace_form();
  Scalar kappa;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) kappa += h.ginv[i][j] * tau[i][j];
  kappa = kappa / Scalar(long(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (tau[i][j] != kappa * h.g[i][j]) return std::nullopt;
  return kappa;
}

bool CodazziAlgebra::is_special() const {
  bool trace_zero = true;
  for (int i = 0; i < n && trace_zero; ++i) {
    Scalar s;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const Scalar& m = mu.get({i, p, q});
        if (!m.is_zero()) s += m * h.ginv[p][q];
      }
    if (!s.is_zero()) trace_zero = false;
  }
  bool harmonic = laplacian(cubic(), h).is_zero();
  if (trace_zero != harmonic)
    throw std::logic_error("CodazziAlgebra: trace and harmonicity checks disagree");
  return trace_zero;
}

Vec CodazziAlgebra::associator(const Vec& x, const Vec& y, const Vec& z) const {
  Vec a = multiply(multiply(x, y), z);
  Vec b = multiply(x, multiply(y, z));
  for (int i = 0; i < n; ++i) a[i] -= b[i];
  return a;
}

bool CodazziAlgebra::is_associative() const {
  Vec ei(n, Scalar(0)), ej(n, Scalar(0)), ek(n, Scalar(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ei.assign(n, Scalar(0));
        ej.assign(n, Scalar(0));
        ek.assign(n, Scalar(0));
        ei[i] = ej[j] = ek[k] = Scalar(1);
        for (const Scalar& s : associator(ei, ej, ek))
          if (!s.is_zero()) return false;
      }
  return true;
}

Scalar CodazziAlgebra::inner(const Vec& x, const Vec& y) const {
  Scalar s;
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j)
      if (!h.g[i][j].is_zero()) s += x[i] * h.g[i][j] * y[j];
  }
  return s;
}

std::pair<Scalar, Scalar> CodazziAlgebra::conf_assoc_probe(const Vec& x, const Vec& y,
                                                           const Vec& z, const Vec& v) const {
  auto kappa = einstein_constant();
  if (!kappa) throw std::invalid_argument("conf_assoc_probe: algebra is not Einstein");
  Scalar lhs = inner(multiply(x, z), multiply(y, v)) - inner(multiply(y, z), multiply(x, v));
  Scalar rhs = (*kappa / Scalar(long(n - 1))) * (inner(x, v) * inner(y, z) - inner(y, v) * inner(x, z));
  return {lhs, rhs};
}

bool CodazziAlgebra::is_conformally_associative() const {
  auto kappa = einstein_constant();
  if (!kappa) throw std::invalid_argument("is_conformally_associative: algebra is not Einstein");
  // Raised basis products R[i][k]^b and lowered mu entries give
  // h(e_i o e_k, e_j o e_l) = sum_b R[i][k][b] mu_{jlb}.
  std::vector<std::vector<Vec>> raised(n, std::vector<Vec>(n));
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      raised[i][k] = basis_product(i, k);
      if (k != i) raised[k][i] = raised[i][k];
    }
  Scalar coef = *kappa / Scalar(long(n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar lhs;
          for (int b = 0; b < n; ++b) {
            if (!raised[i][k][b].is_zero()) lhs += raised[i][k][b] * mu.get({j, l, b});
            if (!raised[j][k][b].is_zero()) lhs -= raised[j][k][b] * mu.get({i, l, b});
          }
          Scalar rhs = coef * (h.g[i][l] * h.g[j][k] - h.g[j][l] * h.g[i][k]);
          if (lhs != rhs) return false;
        }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

CodazziAlgebra from_cubic(const Polynomial& p, const Metric& h) {
  if (!p.is_zero()) {
    auto deg = p.homogeneous_degree();
    if (!deg || *deg != 3) throw std::invalid_argument("from_cubic: polynomial must be homogeneous cubic");
  }
  if (p.dim() != h.n) throw std::invalid_argument("from_cubic: dimension mismatch");
  int n = h.n;
  SymTensor mu(n, 3);
  for_each_sorted_index(n, 3, [&](const Index& idx) {
    Polynomial d = p;
    for (int i : idx) d = d.derivative(i);
    Scalar v = constant_term(d);
    if (!v.is_zero()) mu.set(idx, v);
  });
  return CodazziAlgebra(h, mu);
}

CodazziAlgebra algebra_from_multiplication(const Metric& h,
                                           const std::function<Vec(int, int)>& basis_product) {
  int n = h.n;
  SymTensor mu(n, 3);
  std::map<Index, Scalar> seen;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec prod = basis_product(i, j);
      for (int k = 0; k < n; ++k) {
        Scalar v;
        for (int a = 0; a < n; ++a)
          if (!prod[a].is_zero()) v += prod[a] * h.g[a][k];
        Index idx = sorted({i, j, k});
        auto it = seen.find(idx);
        if (it == seen.end()) {
          seen.emplace(idx, v);
          if (!v.is_zero()) mu.set(idx, v);
        } else if (it->second != v) {
          throw std::invalid_argument(
              "algebra_from_multiplication: lowered product tensor is not symmetric");
        }
      }
    }
  return CodazziAlgebra(h, mu);
}

CodazziAlgebra unitalize(const CodazziAlgebra& a) {
  int n = a.n, m = n + 1;
  std::vector<std::vector<Scalar>> g(m, std::vector<Scalar>(m, Scalar(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = a.h.g[i][j];
  g[n][n] = Scalar(1);
  Metric hh = Metric::from_matrix(g);
  Polynomial e = lift(metric_quadratic(a.h), m);
  Polynomial xe = var(m, n);
  Polynomial p = lift(a.cubic(), m) + Scalar(Rat(1, 2)) * (xe * e) +
                 Scalar(Rat(1, 6)) * (xe * xe * xe);
  return from_cubic(p, hh);
}

CodazziAlgebra extend(const CodazziAlgebra& a, const Rat& kn, const Rat& kn1) {
  int n = a.n, m = n + 1;
  if (!(kn > 0)) throw std::invalid_argument("extend: kappa_n must be positive");
  if (!(kn1 > Rat(n))) throw std::invalid_argument("extend: kappa_{n+1} must exceed n");
  if (!a.is_special()) throw std::invalid_argument("extend: algebra must be special");
  auto kappa = a.einstein_constant();
  if (!kappa || *kappa != Scalar(kn))
    throw std::invalid_argument("extend: algebra must be Einstein with the given constant");
  Scalar alpha = Scalar::sqrt_rational(kn1 / (Rat(m) * Rat(n)));
  Scalar beta = Scalar::sqrt_rational(Rat(n + 2) * Rat(n - 1) / kn);
  std::vector<std::vector<Scalar>> g(m, std::vector<Scalar>(m, Scalar(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = a.h.g[i][j];
  g[n][n] = Scalar(1);
  Metric hh = Metric::from_matrix(g);
  Polynomial e = lift(metric_quadratic(a.h), m);
  Polynomial xe = var(m, n);
  Polynomial p = alpha * (beta * lift(a.cubic(), m) - Scalar(Rat(1, 2)) * (xe * e) +
                          Scalar(Rat(n, 6)) * (xe * xe * xe));
  return from_cubic(p, hh);
}

CodazziAlgebra nahm(const LieAlgebraData& g) {
  int d = g.n, n = 3 * d;
  auto b = g.killing_form();
  std::vector<std::vector<Scalar>> gh(n, std::vector<Scalar>(n, Scalar(0)));
  for (int blk = 0; blk < 3; ++blk)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        gh[blk * d + i][blk * d + j] = Scalar(Rat(-1, 2)) * b[i][j];
  Metric h = Metric::from_matrix(gh);  // throws if B_g degenerate

  auto prod = [&](int I, int J) -> Vec {
    int p = I / d, a = I % d, q = J / d, bidx = J % d;
    Vec r(n, Scalar(0));
    if (p == q) return r;
    int blk = 3 - p - q;
    bool cyclic = (q == (p + 1) % 3);
    for (int k = 0; k < d; ++k) {
      Scalar v = cyclic ? g.c[a][bidx][k] : g.c[bidx][a][k];
      if (!v.is_zero()) r[blk * d + k] = Scalar(Rat(1, 2)) * v;
    }
    return r;
  };
  return algebra_from_multiplication(h, prod);
}

// ---------------------------------------------------------------------------
// Polynomial-side checks

std::optional<Scalar> check_einstein_polynomials(const Polynomial& p, const Metric& h) {
  if (!p.is_zero()) {
    auto deg = p.homogeneous_degree();
    if (!deg || *deg != 3)
      throw std::invalid_argument("check_einstein_polynomials: polynomial must be homogeneous cubic");
  }
  int n = h.n;
  std::vector<std::vector<Polynomial>> hess(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      hess[i][j] = p.derivative(i).derivative(j);
      if (j != i) hess[j][i] = hess[i][j];
    }
  // K = ginv * hess * ginv, then |Hess|^2 = sum hess_ij K_ij.
  std::vector<std::vector<Polynomial>> tmp(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        if (!h.ginv[i][a].is_zero()) tmp[i][j] += h.ginv[i][a] * hess[a][j];
  Polynomial norm(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Polynomial k(n);
      for (int b = 0; b < n; ++b)
        if (!h.ginv[j][b].is_zero()) k += h.ginv[j][b] * tmp[i][b];
      if (!k.is_zero()) norm += hess[i][j] * k;
    }
  CodazziAlgebra a = from_cubic(p, h);
  Scalar kappa = norm2(a.mu, h) / Scalar(long(n));
  if (norm == kappa * metric_quadratic(h)) return kappa;
  return std::nullopt;
}

HessianDetResult hessian_det_check(const Polynomial& p) {
  int n = p.dim();
  std::vector<std::vector<Polynomial>> hess(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      hess[i][j] = p.derivative(i).derivative(j);
      if (j != i) hess[j][i] = hess[i][j];
    }
  Polynomial det(n);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    Polynomial term = Polynomial::constant(n, Scalar(inv % 2 == 0 ? 1 : -1));
    for (int i = 0; i < n; ++i) term = term * hess[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));

  HessianDetResult out{det, std::nullopt};
  if (!p.is_zero()) {
    const auto& [e0, c0] = *p.monomials().begin();
    Scalar k = det.coeff(e0) / c0;
    if (det == k * p) out.kappa = k;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isoparametric family

namespace {

// Signed basis-multiplication table of the composition algebra of dimension
// m in {1, 2, 4, 8}, built by Cayley-Dickson doubling: e_i e_j = sign * e_k.
struct CompTable {
  std::vector<std::vector<std::pair<int, int>>> t;  // (sign, index)
  explicit CompTable(int m) {
    t = {{{1, 0}}};
    int cur = 1;
    while (cur < m) {
      int two = 2 * cur;
      std::vector<std::vector<std::pair<int, int>>> nt(
          two, std::vector<std::pair<int, int>>(two));
      auto conj_sign = [&](int j) { return j == 0 ? 1 : -1; };
      for (int i = 0; i < cur; ++i)
        for (int j = 0; j < cur; ++j) {
          // (a,0)(c,0) = (ac, 0)
          nt[i][j] = t[i][j];
          // (a,0)(0,d) = (0, da)
          auto [s1, k1] = t[j][i];
          nt[i][cur + j] = {s1, cur + k1};
          // (0,b)(c,0) = (0, b conj(c))
          auto [s2, k2] = t[i][j];
          nt[cur + i][j] = {s2 * conj_sign(j), cur + k2};
          // (0,b)(0,d) = (-conj(d) b, 0)
          auto [s3, k3] = t[j][i];
          nt[cur + i][cur + j] = {-s3 * conj_sign(j), k3};
        }
      t = std::move(nt);
      cur = two;
    }
  }

  // Product of two elements with polynomial components.
  std::vector<Polynomial> mul(const std::vector<Polynomial>& u,
                              const std::vector<Polynomial>& v) const {
    int m = static_cast<int>(t.size());
    int n = u[0].dim();
    std::vector<Polynomial> r(m, Polynomial(n));
    for (int i = 0; i < m; ++i) {
      if (u[i].is_zero()) continue;
      for (int j = 0; j < m; ++j) {
        if (v[j].is_zero()) continue;
        auto [s, k] = t[i][j];
        Polynomial prod = u[i] * v[j];
        if (s > 0)
          r[k] += prod;
        else
          r[k] -= prod;
      }
    }
    return r;
  }
};

}  // namespace

Polynomial isoparametric_cubic(int m) {
  if (m != 1 && m != 2 && m != 4 && m != 8)
    throw std::invalid_argument("isoparametric_cubic: m must be 1, 2, 4, or 8");
  int n = 3 * m + 2;
  CompTable table(m);
  auto block = [&](int b) {
    std::vector<Polynomial> z(m, Polynomial(n));
    for (int i = 0; i < m; ++i) z[i] = var(n, b * m + i);
    return z;
  };
  auto norm2_of = [&](const std::vector<Polynomial>& z) {
    Polynomial s(n);
    for (const auto& zi : z) s += zi * zi;
    return s;
  };
  std::vector<Polynomial> z1 = block(0), z2 = block(1), z3 = block(2);
  Polynomial y = var(n, 3 * m), x = var(n, 3 * m + 1);
  Scalar sqrt3 = Scalar::root(Rat(1), Int(3));
  Polynomial p = x * x * x - Scalar(3) * (x * (y * y));
  p += Scalar(Rat(3, 2)) * (x * (norm2_of(z1) + norm2_of(z2) - Scalar(2) * norm2_of(z3)));
  p += (Scalar(Rat(3, 2)) * sqrt3) * (y * (norm2_of(z1) - norm2_of(z2)));
  // (z1 z2) z3 + its conjugate = twice the real part of (z1 z2) z3.
  p += (Scalar(3) * sqrt3) * table.mul(table.mul(z1, z2), z3)[0];
  return p;
}

bool isoparametric_check(const Polynomial& p) {
  int n = p.dim();
  Metric h = Metric::euclidean(n);
  if (!laplacian(p, h).is_zero()) return false;
  Polynomial grad2(n);
  for (int i = 0; i < n; ++i) {
    Polynomial d = p.derivative(i);
    grad2 += d * d;
  }
  Polynomial e = metric_quadratic(h);
  return grad2 == Scalar(9) * (e * e);
}

// ---------------------------------------------------------------------------
// Catalog cubics

Polynomial cubic_plane_harmonic(const Rat& r) {
  Polynomial x1 = var(2, 0), x2 = var(2, 1);
  return Scalar(r) * (x1 * x1 * x1 - Scalar(3) * (x1 * (x2 * x2)));
}

Polynomial cubic_r3_standard() {
  Polynomial x1 = var(3, 0), x2 = var(3, 1), x3 = var(3, 2);
  return x3 * x3 * x3 - Scalar(Rat(3, 2)) * (x3 * (x1 * x1 + x2 * x2)) +
         Scalar::sqrt_rational(Rat(1, 2)) * (x1 * x1 * x1 - Scalar(3) * (x1 * (x2 * x2)));
}

Polynomial cubic_r4_complex() {
  Polynomial x1 = var(4, 0), x2 = var(4, 1), x3 = var(4, 2), x4 = var(4, 3);
  return Scalar(Rat(-1, 6)) * (x3 * x3 * x3) +
         Scalar(Rat(1, 2)) * (x3 * (x1 * x1 - x2 * x2 + x4 * x4)) - x1 * x2 * x4;
}

Polynomial cubic_det3() {
  const int n = 9;
  auto x = [&](int r, int c) { return var(n, 3 * r + c); };
  Polynomial det(n);
  int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  for (int t = 0; t < 6; ++t) {
    Polynomial term = x(0, perms[t][0]) * x(1, perms[t][1]) * x(2, perms[t][2]);
    if (t < 3)
      det += term;
    else
      det -= term;
  }
  return Scalar(Rat(1, 2)) * det;
}

Polynomial cubic_symdet3() {
  const int n = 6;
  // Coordinates: x11, x12, x13, x22, x23, x33.
  Polynomial x11 = var(n, 0), x12 = var(n, 1), x13 = var(n, 2);
  Polynomial x22 = var(n, 3), x23 = var(n, 4), x33 = var(n, 5);
  return x11 * x22 * x33 -
         Scalar(Rat(1, 2)) * (x11 * (x23 * x23) + x22 * (x13 * x13) + x33 * (x12 * x12)) +
         Scalar::sqrt_rational(Rat(1, 2)) * (x12 * x23 * x13);
}

namespace {

// Pfaffian of the 6x6 antisymmetric matrix whose strict upper entries are the
// coordinate variables, by recursive expansion along the first remaining row.
Polynomial pfaffian_recursive(const std::vector<int>& rows, int n,
                              const std::function<Polynomial(int, int)>& entry) {
  if (rows.empty()) return Polynomial::constant(n, Scalar(1));
  Polynomial r(n);
  int a = rows[0];
  for (size_t j = 1; j < rows.size(); ++j) {
    std::vector<int> rest;
    for (size_t t = 1; t < rows.size(); ++t)
      if (t != j) rest.push_back(rows[t]);
    Polynomial term = entry(a, rows[j]) * pfaffian_recursive(rest, n, entry);
    if (j % 2 == 1)
      r += term;
    else
      r -= term;
  }
  return r;
}

}  // namespace

Polynomial cubic_pfaffian6() {
  const int n = 15;
  std::vector<std::vector<int>> pos(6, std::vector<int>(6, -1));
  int idx = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) pos[a][b] = idx++;
  auto entry = [&](int a, int b) { return var(n, pos[a][b]); };
  return pfaffian_recursive({0, 1, 2, 3, 4, 5}, n, entry);
}

Polynomial cubic_chain(int n) {
  if (n < 2) throw std::invalid_argument("cubic_chain: n must be at least 2");
  Polynomial q = Scalar(Rat(1, 6)) * cubic_plane_harmonic(Rat(1));
  for (int d = 2; d < n; ++d) {
    int m = d + 1;
    Polynomial lifted = lift(q, m);
    Polynomial e(m);
    for (int i = 0; i < d; ++i) e += var(m, i) * var(m, i);
    Polynomial xe = var(m, d);
    q = Scalar(Rat(d, 6)) * (xe * xe * xe) - Scalar(Rat(1, 2)) * (xe * e) +
        Scalar::sqrt_rational(Rat(d + 2, d)) * lifted;
  }
  return q;
}

Polynomial cubic_triple(const Scalar& c) {
  return c * (var(3, 0) * var(3, 1) * var(3, 2));
}

Polynomial cubic_two_parameter(const Scalar& lambda, const Scalar& mu) {
  Polynomial x1 = var(3, 0), x2 = var(3, 1), x3 = var(3, 2);
  return lambda * (x1 * x2 * x3) + mu * (x2 * (x1 * x1 - x3 * x3));
}

Polynomial cubic_syzygetic(const Scalar& a, const Scalar& b) {
  Polynomial x1 = var(3, 0), x2 = var(3, 1), x3 = var(3, 2);
  return (a / Scalar(6)) * (x1 * x1 * x1 + x2 * x2 * x2 + x3 * x3 * x3) + b * (x1 * x2 * x3);
}

}  // namespace ahlab
