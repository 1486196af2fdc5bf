#include "ahlab/symtensor.hpp"

#include <algorithm>
#include <sstream>

namespace ahlab {

namespace {

const Scalar kZero{};

Rat factorial(int k) {
  Rat r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

std::vector<int> exponents_of(const Index& idx, int n) {
  std::vector<int> e(n, 0);
  for (int i : idx) ++e[i];
  return e;
}

Index index_of(const std::vector<int>& exponents) {
  Index idx;
  for (int i = 0; i < static_cast<int>(exponents.size()); ++i)
    for (int r = 0; r < exponents[i]; ++r) idx.push_back(i);
  return idx;
}

// Sum over all distinct orderings (r_1..r_j) of the multi-index J of the
// product ginv[s_1][r_1]...ginv[s_j][r_j], with s a fixed ordering of S.
Scalar pairing_weight(const Index& s, Index j_sorted, const Metric& h) {
  Scalar total;
  do {
    Scalar prod(1);
    for (size_t a = 0; a < s.size(); ++a) prod *= h.ginv[s[a]][j_sorted[a]];
    total += prod;
  } while (std::next_permutation(j_sorted.begin(), j_sorted.end()));
  return total;
}

}  // namespace

Index sorted(Index idx) {
  std::sort(idx.begin(), idx.end());
  return idx;
}

Int arrangement_count(const Index& idx) {
  Rat r = factorial(static_cast<int>(idx.size()));
  size_t i = 0;
  while (i < idx.size()) {
    size_t j = i;
    while (j < idx.size() && idx[j] == idx[i]) ++j;
    r /= factorial(static_cast<int>(j - i));
    i = j;
  }
  return boost::multiprecision::numerator(r);
}

void for_each_sorted_index(int n, int rank, const std::function<void(const Index&)>& f) {
  Index idx(rank, 0);
  std::function<void(int, int)> rec = [&](int pos, int min) {
    if (pos == rank) {
      f(idx);
      return;
    }
    for (int i = min; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i);
    }
  };
  rec(0, 0);
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(int n, const Scalar& c) {
  Polynomial p(n);
  p.add_monomial(std::vector<int>(n, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n, int i) {
  Polynomial p(n);
  std::vector<int> e(n, 0);
  e[i] = 1;
  p.add_monomial(e, Scalar(1));
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : monos_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

bool Polynomial::is_homogeneous(int k) const {
  for (const auto& [e, c] : monos_) {
    int s = 0;
    for (int v : e) s += v;
    if (s != k) return false;
  }
  return true;
}

std::optional<int> Polynomial::homogeneous_degree() const {
  if (monos_.empty()) return 0;
  int d = degree();
  if (!is_homogeneous(d)) return std::nullopt;
  return d;
}

const Scalar& Polynomial::coeff(const std::vector<int>& exponents) const {
  auto it = monos_.find(exponents);
  return it == monos_.end() ? kZero : it->second;
}

void Polynomial::add_monomial(const std::vector<int>& exponents, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = monos_.find(exponents);
  if (it == monos_.end()) {
    monos_.emplace(exponents, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) monos_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(n_);
  for (const auto& [e, c] : monos_) r.monos_.emplace(e, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.monos_) add_monomial(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.monos_) add_monomial(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(a.n_);
  for (const auto& [ea, ca] : a.monos_) {
    for (const auto& [eb, cb] : b.monos_) {
      std::vector<int> e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_monomial(e, ca * cb);
    }
  }
  return r;
}

Polynomial operator*(const Scalar& c, const Polynomial& p) {
  Polynomial r(p.dim());
  if (c.is_zero()) return r;
  for (const auto& [e, pc] : p.monomials()) r.add_monomial(e, c * pc);
  return r;
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial r(n_);
  for (const auto& [e, c] : monos_) {
    if (e[i] == 0) continue;
    std::vector<int> d(e);
    --d[i];
    r.add_monomial(d, Scalar(e[i]) * c);
  }
  return r;
}

Scalar Polynomial::evaluate(const std::vector<Scalar>& x) const {
  Scalar total;
  for (const auto& [e, c] : monos_) {
    Scalar term = c;
    for (int i = 0; i < n_; ++i)
      for (int r = 0; r < e[i]; ++r) term *= x[i];
    total += term;
  }
  return total;
}

double Polynomial::evaluate(const std::vector<double>& x) const {
  double total = 0;
  for (const auto& [e, c] : monos_) {
    double term = c.to_double();
    for (int i = 0; i < n_; ++i)
      for (int r = 0; r < e[i]; ++r) term *= x[i];
    total += term;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (monos_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : monos_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")";
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      out << "*x" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// SymTensor

const Scalar& SymTensor::get(Index idx) const {
  auto it = comps_.find(sorted(std::move(idx)));
  return it == comps_.end() ? kZero : it->second;
}

void SymTensor::set(Index idx, const Scalar& v) {
  Index s = sorted(std::move(idx));
  if (v.is_zero()) {
    comps_.erase(s);
  } else {
    comps_[s] = v;
  }
}

void SymTensor::add(Index idx, const Scalar& v) {
  if (v.is_zero()) return;
  Index s = sorted(std::move(idx));
  auto it = comps_.find(s);
  if (it == comps_.end()) {
    comps_.emplace(std::move(s), v);
  } else {
    it->second += v;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

SymTensor SymTensor::operator-() const {
  SymTensor r(n_, rank_);
  for (const auto& [i, c] : comps_) r.comps_.emplace(i, -c);
  return r;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  if (n_ != o.n_ || rank_ != o.rank_) throw std::invalid_argument("SymTensor: shape mismatch in +=");
  for (const auto& [i, c] : o.comps_) add(i, c);
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) {
  if (n_ != o.n_ || rank_ != o.rank_) throw std::invalid_argument("SymTensor: shape mismatch in -=");
  for (const auto& [i, c] : o.comps_) add(i, -c);
  return *this;
}

SymTensor operator*(const Scalar& c, const SymTensor& t) {
  SymTensor r(t.n_, t.rank_);
  if (c.is_zero()) return r;
  for (const auto& [i, v] : t.comps_) r.comps_.emplace(i, c * v);
  return r;
}

bool SymTensor::operator==(const SymTensor& o) const {
  return n_ == o.n_ && rank_ == o.rank_ && comps_ == o.comps_;
}

// ---------------------------------------------------------------------------
// Metric

Metric Metric::from_matrix(std::vector<std::vector<Scalar>> m) {
  Metric h;
  h.n = static_cast<int>(m.size());
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j < h.n; ++j)
      if (!(m[i][j] == m[j][i])) throw std::invalid_argument("Metric: matrix not symmetric");
  h.g = m;

  // Gauss-Jordan inverse and determinant over the exact scalar field.
  int n = h.n;
  std::vector<std::vector<Scalar>> a = m, inv(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i) inv[i][i] = Scalar(1);
  Scalar det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::invalid_argument("Metric: degenerate matrix");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(inv[pivot], inv[col]);
      det = -det;
    }
    det *= a[col][col];
    Scalar p = a[col][col].inverse();
    for (int j = 0; j < n; ++j) {
      a[col][j] *= p;
      inv[col][j] *= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar f = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  h.ginv = std::move(inv);
  h.det = det;

  // Signature by symmetric (congruence) diagonalization.
  std::vector<std::vector<Scalar>> s = m;
  for (int step = 0; step < n; ++step) {
    if (s[step][step].is_zero()) {
      int j = -1;
      for (int r = step; r < n && j < 0; ++r)
        if (!s[step][r].is_zero() && r != step) j = r;
      if (j < 0) {
        // Row is zero on/after the diagonal in the remaining block; find any
        // nonzero off-diagonal entry pairing step with a later row.
        for (int r = step + 1; r < n && j < 0; ++r)
          if (!s[r][step].is_zero()) j = r;
      }
      if (j < 0) continue;  // cannot happen for nondegenerate input
      for (int c = 0; c < n; ++c) s[step][c] += s[j][c];
      for (int r = 0; r < n; ++r) s[r][step] += s[r][j];
    }
    Scalar d = s[step][step];
    for (int r = step + 1; r < n; ++r) {
      if (s[r][step].is_zero()) continue;
      Scalar f = s[r][step] / d;
      for (int c = 0; c < n; ++c) s[r][c] -= f * s[step][c];
      for (int c = 0; c < n; ++c) s[c][r] -= f * s[c][step];
    }
    if (d.sign() == Sign::positive) {
      ++h.pos;
    } else {
      ++h.neg;
    }
  }
  return h;
}

Metric Metric::euclidean(int n) {
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return from_matrix(std::move(m));
}

SymTensor Metric::tensor() const {
  SymTensor t(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) t.set({i, j}, g[i][j]);
  return t;
}

Polynomial Metric::quadratic() const { return poly_from_tensor(tensor()); }

bool Metric::is_euclidean() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(g[i][j] == (i == j ? Scalar(1) : Scalar()))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Correspondence and algebra

SymTensor tensor_from_poly(const Polynomial& p) {
  auto deg = p.homogeneous_degree();
  if (!deg) throw std::invalid_argument("tensor_from_poly: polynomial not homogeneous");
  SymTensor w(p.dim(), *deg);
  for (const auto& [e, c] : p.monomials()) {
    Index idx = index_of(e);
    w.set(idx, c / Scalar(Rat(arrangement_count(idx))));
  }
  return w;
}

Polynomial poly_from_tensor(const SymTensor& w) {
  Polynomial p(w.dim());
  for (const auto& [idx, c] : w.comps())
    p.add_monomial(exponents_of(idx, w.dim()), Scalar(Rat(arrangement_count(idx))) * c);
  return p;
}


namespace {

// tensor_from_poly cannot infer the rank of a zero result; restore it.
SymTensor with_shape(SymTensor t, int n, int rank) {
  if (t.is_zero()) return SymTensor(n, rank);
  return t;
}

}  // namespace

SymTensor sym_product(const SymTensor& a, const SymTensor& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sym_product: dimension mismatch");
  return with_shape(tensor_from_poly(poly_from_tensor(a) * poly_from_tensor(b)),
                    a.dim(), a.rank() + b.rank());
}

Polynomial laplacian(const Polynomial& p, const Metric& h) {
  Polynomial r(p.dim());
  std::vector<Polynomial> d1(h.n);
  for (int i = 0; i < h.n; ++i) d1[i] = p.derivative(i);
  for (int i = 0; i < h.n; ++i) {
    if (d1[i].is_zero()) continue;
    for (int j = 0; j < h.n; ++j) {
      if (h.ginv[i][j].is_zero()) continue;
      r += h.ginv[i][j] * d1[i].derivative(j);
    }
  }
  return r;
}

SymTensor trace(const SymTensor& w, const Metric& h) {
  int k = w.rank();
  if (k < 2) throw std::invalid_argument("trace: rank must be at least 2");
  Polynomial lp = laplacian(poly_from_tensor(w), h);
  return with_shape(Scalar(Rat(1, k * (k - 1))) * tensor_from_poly(lp), w.dim(), k - 2);
}

Polynomial harmonic_part(const Polynomial& p, const Metric& h) {
  auto deg = p.homogeneous_degree();
  if (!deg) throw std::invalid_argument("harmonic_part: polynomial not homogeneous");
  int k = *deg;
  Polynomial result = p;
  Polynomial lap = p;
  Polynomial hpow = Polynomial::constant(p.dim(), Scalar(1));
  const Polynomial hq = h.quadratic();
  Rat denom = 1;
  for (int i = 1; 2 * i <= k; ++i) {
    lap = laplacian(lap, h);
    if (lap.is_zero()) break;
    hpow = hpow * hq;
    denom *= Rat(2 * i) * Rat(h.n + 2 * (k - i - 1));
    // The i-th correction enters with sign (-1)^i; only the alternating sum
    // annihilates the whole ideal generated by the quadratic E (check on
    // P = E^2, n = 2: 1 - 4/3 + 1/3 = 0).
    if (i % 2 == 1) {
      result -= Scalar(Rat(1) / denom) * (hpow * lap);
    } else {
      result += Scalar(Rat(1) / denom) * (hpow * lap);
    }
  }
  return result;
}

SymTensor trace_free(const SymTensor& w, const Metric& h) {
  if (w.rank() < 2) return w;
  return with_shape(tensor_from_poly(harmonic_part(poly_from_tensor(w), h)), w.dim(), w.rank());
}

Polynomial substitute_linear(const Polynomial& p, const std::vector<std::vector<Scalar>>& A) {
  int n = p.dim();
  if (static_cast<int>(A.size()) != n)
    throw std::invalid_argument("substitute_linear: matrix rows must match variable count");
  int m = A.empty() ? 0 : static_cast<int>(A[0].size());
  std::vector<Polynomial> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i) {
    Polynomial li(m);
    for (int j = 0; j < m; ++j) {
      if (!A[i][j].is_zero()) li += A[i][j] * Polynomial::variable(m, j);
    }
    images.push_back(li);
  }
  Polynomial result(m);
  for (const auto& [e, c] : p.monomials()) {
    Polynomial term = Polynomial::constant(m, c);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < e[i]; ++r) term = term * images[i];
    result += term;
  }
  return result;
}

SymTensor con_contraction(const SymTensor& a, const SymTensor& b, int j, const Metric& h) {
  int k = a.rank(), l = b.rank();
  if (a.dim() != b.dim()) throw std::invalid_argument("con_contraction: dimension mismatch");
  if (j < 0 || j > std::min(k, l)) throw std::invalid_argument("con_contraction: order out of range");
  if (j == 0) return sym_product(a, b);

  // (k-j)! (l-j)! <D^(j)P_a, D^(j)P_b> = k! l! P_{con^j(a,b)}.
  std::map<Index, Polynomial> da, db;
  Polynomial pa = poly_from_tensor(a), pb = poly_from_tensor(b);
  for_each_sorted_index(a.dim(), j, [&](const Index& s) {
    Polynomial q = pa, r = pb;
    for (int i : s) q = q.derivative(i);
    for (int i : s) r = r.derivative(i);
    if (!q.is_zero()) da.emplace(s, std::move(q));
    if (!r.is_zero()) db.emplace(s, std::move(r));
  });
  Polynomial pairing(a.dim());
  for (const auto& [s, q] : da) {
    for (const auto& [t, r] : db) {
      Scalar w = pairing_weight(s, t, h);
      if (w.is_zero()) continue;
      pairing += (Scalar(Rat(arrangement_count(s))) * w) * (q * r);
    }
  }
  Scalar scale(factorial(k - j) * factorial(l - j) / (factorial(k) * factorial(l)));
  return with_shape(tensor_from_poly(scale * pairing), a.dim(), k + l - 2 * j);
}

Scalar inner(const SymTensor& a, const SymTensor& b, const Metric& h) {
  if (a.rank() != b.rank()) throw std::invalid_argument("inner: rank mismatch");
  if (a.rank() == 0) return a.get({}) * b.get({});
  return con_contraction(a, b, a.rank(), h).get({});
}

Scalar norm2(const SymTensor& a, const Metric& h) { return inner(a, a, h); }

SymTensor cartan_product(const SymTensor& a, const SymTensor& b, const Metric& h) {
  if ((a.rank() >= 2 && !trace(a, h).is_zero()) || (b.rank() >= 2 && !trace(b, h).is_zero()))
    throw std::invalid_argument("cartan_product: inputs must be trace-free");
  return trace_free(sym_product(a, b), h);
}

namespace {

SymTensor transform_all(const SymTensor& w, const std::vector<std::vector<Scalar>>& m) {
  SymTensor out(w.dim(), w.rank());
  for_each_sorted_index(w.dim(), w.rank(), [&](const Index& i) {
    Scalar total;
    for (const auto& [jdx, v] : w.comps()) {
      Scalar wgt = Scalar();
      Index perm = jdx;
      do {
        Scalar prod(1);
        for (size_t a = 0; a < perm.size(); ++a) prod *= m[i[a]][perm[a]];
        wgt += prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
      total += wgt * v;
    }
    out.set(i, total);
  });
  return out;
}

}  // namespace

SymTensor raise_all(const SymTensor& w, const Metric& h) { return transform_all(w, h.ginv); }
SymTensor lower_all(const SymTensor& w, const Metric& h) { return transform_all(w, h.g); }

}  // namespace ahlab
