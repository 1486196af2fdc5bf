#include "ahlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ahlab {

namespace {

const Polynomial kZeroPoly;

Rat binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rat r = 1;
  for (int i = 0; i < k; ++i) r = r * Rat(n - i) / Rat(i + 1);
  return r;
}

// Multiplicity map of a sorted index.
std::map<int, int> mults(const Index& s) {
  std::map<int, int> m;
  for (int v : s) ++m[v];
  return m;
}

Index remove_one(Index s, int v) {
  auto it = std::find(s.begin(), s.end(), v);
  s.erase(it);
  return s;
}

Index insert_sorted(Index s, int v) {
  s.insert(std::upper_bound(s.begin(), s.end(), v), v);
  return s;
}

// Enumerate sub-multisets of size k of the sorted index s; calls f(T, S\T, ways)
// where ways = prod_j C(m_j(S), m_j(T)).
void for_each_split(const Index& s, int k,
                    const std::function<void(const Index&, const Index&, const Rat&)>& f) {
  std::vector<std::pair<int, int>> m;
  for (auto& [v, c] : mults(s)) m.emplace_back(v, c);
  Index t, u;
  std::function<void(size_t, int, Rat)> rec = [&](size_t pos, int remaining, Rat ways) {
    if (pos == m.size()) {
      if (remaining == 0) f(t, u, ways);
      return;
    }
    auto [v, c] = m[pos];
    for (int take = 0; take <= std::min(c, remaining); ++take) {
      size_t t0 = t.size(), u0 = u.size();
      for (int i = 0; i < take; ++i) t.push_back(v);
      for (int i = 0; i < c - take; ++i) u.push_back(v);
      rec(pos + 1, remaining - take, ways * binom(c, take));
      t.resize(t0);
      u.resize(u0);
    }
  };
  rec(0, k, 1);
}

// Pairing weight of two sorted indices of equal size: the full contraction
// coefficient sum over arrangements (see symtensor.cpp).
Scalar pairing_weight(const Index& s, Index j_sorted, const Metric& h) {
  Scalar total;
  do {
    Scalar prod(1);
    for (size_t a = 0; a < s.size(); ++a) prod *= h.ginv[s[a]][j_sorted[a]];
    total += prod;
  } while (std::next_permutation(j_sorted.begin(), j_sorted.end()));
  return Scalar(Rat(arrangement_count(s))) * total;
}

}  // namespace

// ---------------------------------------------------------------------------
// Containers

PolyTensorField PolyTensorField::constant(const SymTensor& w) {
  PolyTensorField f(w.dim(), w.rank());
  for (const auto& [idx, c] : w.comps()) f.comps.emplace(idx, c * Polynomial::constant(w.dim(), Scalar(1)));
  return f;
}

const Polynomial& PolyTensorField::get(Index idx) const {
  auto it = comps.find(sorted(std::move(idx)));
  return it == comps.end() ? kZeroPoly : it->second;
}

void PolyTensorField::add(Index idx, const Polynomial& p) {
  if (p.is_zero()) return;
  Index s = sorted(std::move(idx));
  auto it = comps.find(s);
  if (it == comps.end()) {
    comps.emplace(std::move(s), p);
  } else {
    it->second += p;
    if (it->second.is_zero()) comps.erase(it);
  }
}

PolyTensorField PolyTensorField::operator-() const {
  PolyTensorField r(n, rank);
  for (const auto& [i, p] : comps) r.comps.emplace(i, -p);
  return r;
}

PolyTensorField& PolyTensorField::operator+=(const PolyTensorField& o) {
  if (n != o.n || rank != o.rank) throw std::invalid_argument("PolyTensorField: shape mismatch");
  for (const auto& [i, p] : o.comps) add(i, p);
  return *this;
}

PolyTensorField& PolyTensorField::operator-=(const PolyTensorField& o) {
  if (n != o.n || rank != o.rank) throw std::invalid_argument("PolyTensorField: shape mismatch");
  for (const auto& [i, p] : o.comps) add(i, -p);
  return *this;
}

PolyTensorField operator*(const Scalar& c, const PolyTensorField& f) {
  PolyTensorField r(f.n, f.rank);
  if (c.is_zero()) return r;
  for (const auto& [i, p] : f.comps) r.comps.emplace(i, c * p);
  return r;
}

bool PolyTensorField::operator==(const PolyTensorField& o) const {
  return n == o.n && rank == o.rank && comps == o.comps;
}

SymTensor PolyTensorField::evaluate(const std::vector<Scalar>& x) const {
  SymTensor t(n, rank);
  for (const auto& [i, p] : comps) t.set(i, p.evaluate(x));
  return t;
}

const Polynomial& Slot1Field::get(int i, Index rest) const {
  auto it = comps.find({i, sorted(std::move(rest))});
  return it == comps.end() ? kZeroPoly : it->second;
}

void Slot1Field::add(int i, Index rest, const Polynomial& p) {
  if (p.is_zero()) return;
  auto key = std::make_pair(i, sorted(std::move(rest)));
  auto it = comps.find(key);
  if (it == comps.end()) {
    comps.emplace(std::move(key), p);
  } else {
    it->second += p;
    if (it->second.is_zero()) comps.erase(it);
  }
}

Slot1Field& Slot1Field::operator+=(const Slot1Field& o) {
  for (const auto& [k, p] : o.comps) add(k.first, k.second, p);
  return *this;
}

Slot1Field& Slot1Field::operator-=(const Slot1Field& o) {
  for (const auto& [k, p] : o.comps) add(k.first, k.second, -p);
  return *this;
}

bool Slot1Field::operator==(const Slot1Field& o) const {
  return n == o.n && sym_rank == o.sym_rank && comps == o.comps;
}

Polynomial PairField::get(int i, int j, Index rest) const {
  if (i == j) return Polynomial(n);
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = comps.find({i, j, sorted(std::move(rest))});
  if (it == comps.end()) return Polynomial(n);
  return flip ? -it->second : it->second;
}

void PairField::add(int i, int j, Index rest, const Polynomial& p) {
  if (p.is_zero() || i == j) return;
  Polynomial q = p;
  if (i > j) {
    std::swap(i, j);
    q = -q;
  }
  auto key = std::make_tuple(i, j, sorted(std::move(rest)));
  auto it = comps.find(key);
  if (it == comps.end()) {
    comps.emplace(std::move(key), q);
  } else {
    it->second += q;
    if (it->second.is_zero()) comps.erase(it);
  }
}

// ---------------------------------------------------------------------------
// Basic operations

PolyTensorField field_product(const PolyTensorField& a, const PolyTensorField& b) {
  if (a.n != b.n) throw std::invalid_argument("field_product: dimension mismatch");
  PolyTensorField r(a.n, a.rank + b.rank);
  Rat total = binom(a.rank + b.rank, a.rank);
  std::map<Index, Polynomial> out;
  for_each_sorted_index(a.n, a.rank + b.rank, [&](const Index& s) {
    Polynomial acc(a.n);
    for_each_split(s, a.rank, [&](const Index& t, const Index& u, const Rat& ways) {
      const Polynomial& pa = a.get(t);
      if (pa.is_zero()) return;
      const Polynomial& pb = b.get(u);
      if (pb.is_zero()) return;
      acc += Scalar(ways / total) * (pa * pb);
    });
    if (!acc.is_zero()) r.comps.emplace(s, std::move(acc));
  });
  return r;
}

Slot1Field covariant_derivative(const PolyTensorField& w) {
  Slot1Field e(w.n, w.rank);
  for (const auto& [idx, p] : w.comps)
    for (int i = 0; i < w.n; ++i) e.add(i, idx, p.derivative(i));
  return e;
}

PolyTensorField symmetrize(const Slot1Field& e) {
  // sym(e)_S = sum over distinct values v of S of (m_v / (k+1)) e(v, S\v);
  // pushing each stored component (i, rest) into S = sorted(rest + i) with
  // weight m_i(S)/(k+1) produces exactly that sum.
  int k1 = e.sym_rank + 1;
  PolyTensorField r(e.n, k1);
  for (const auto& [key, p] : e.comps) {
    Index full = insert_sorted(key.second, key.first);
    int m = static_cast<int>(std::count(full.begin(), full.end(), key.first));
    r.add(full, Scalar(Rat(m, k1)) * p);
  }
  return r;
}

Slot1Field as_slot1(const PolyTensorField& w) {
  Slot1Field e(w.n, w.rank - 1);
  for (const auto& [idx, p] : w.comps) {
    Index distinct = idx;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v : distinct) e.add(v, remove_one(idx, v), p);
  }
  return e;
}

PolyTensorField divergence(const PolyTensorField& w, const Metric& h) {
  PolyTensorField r(w.n, w.rank - 1);
  for_each_sorted_index(w.n, w.rank - 1, [&](const Index& s) {
    Polynomial acc(w.n);
    for (int p = 0; p < w.n; ++p) {
      for (int q = 0; q < w.n; ++q) {
        if (h.ginv[p][q].is_zero()) continue;
        const Polynomial& c = w.get(insert_sorted(s, q));
        if (c.is_zero()) continue;
        acc += h.ginv[p][q] * c.derivative(p);
      }
    }
    if (!acc.is_zero()) r.comps.emplace(s, std::move(acc));
  });
  return r;
}

PolyTensorField field_trace(const PolyTensorField& w, const Metric& h) {
  PolyTensorField r(w.n, w.rank - 2);
  for_each_sorted_index(w.n, w.rank - 2, [&](const Index& s) {
    Polynomial acc(w.n);
    for (int p = 0; p < w.n; ++p)
      for (int q = 0; q < w.n; ++q) {
        if (h.ginv[p][q].is_zero()) continue;
        const Polynomial& c = w.get(insert_sorted(insert_sorted(s, p), q));
        if (!c.is_zero()) acc += h.ginv[p][q] * c;
      }
    if (!acc.is_zero()) r.comps.emplace(s, std::move(acc));
  });
  return r;
}

PolyTensorField field_trace_free(const PolyTensorField& w, const Metric& h) {
  int k = w.rank;
  if (k < 2) return w;
  PolyTensorField hfield = PolyTensorField::constant(h.tensor());
  PolyTensorField result = w;
  PolyTensorField tr = w;
  PolyTensorField hpow(w.n, 0);
  hpow.comps.emplace(Index{}, Polynomial::constant(w.n, Scalar(1)));
  Rat denom = 1, numer = 1;
  for (int i = 1; 2 * i <= k; ++i) {
    tr = field_trace(tr, h);
    if (tr.is_zero()) break;
    hpow = field_product(hpow, hfield);
    numer *= Rat(k - 2 * i + 2) * Rat(k - 2 * i + 1);
    denom *= Rat(2 * i) * Rat(h.n + 2 * (k - i - 1));
    Scalar c(numer / denom);
    if (i % 2 == 1) c = -c;
    result += c * field_product(hpow, tr);
  }
  return result;
}

PolyTensorField field_laplacian(const PolyTensorField& w, const Metric& h) {
  PolyTensorField r(w.n, w.rank);
  for (const auto& [idx, p] : w.comps) {
    Polynomial acc(w.n);
    for (int a = 0; a < w.n; ++a) {
      Polynomial da = p.derivative(a);
      if (da.is_zero()) continue;
      for (int b = 0; b < w.n; ++b) {
        if (h.ginv[a][b].is_zero()) continue;
        acc += h.ginv[a][b] * da.derivative(b);
      }
    }
    r.add(idx, acc);
  }
  return r;
}

// ---------------------------------------------------------------------------
// First-order operators

namespace {

void require_trace_free(const PolyTensorField& w, const Metric& h, const char* who) {
  if (w.rank >= 2 && !field_trace(w, h).is_zero())
    throw std::invalid_argument(std::string(who) + ": input must be trace-free");
}

// Weight of the divergence term in the decomposition and Weitzenbock formulas.
// The generic expression k(n+2(k-2)) / ((n-3+k)(n+2(k-1))) is 0/0 at (n,k) =
// (2,1); a factor (n-2) cancels at k = 1, leaving 1/n.
Rat div_weight(int n, int k) {
  if (k == 1) return Rat(1, n);
  return Rat(k) * Rat(n + 2 * (k - 2)) / (Rat(n - 3 + k) * Rat(n + 2 * (k - 1)));
}

}  // namespace

PolyTensorField op_L(const PolyTensorField& w, const Metric& h) {
  require_trace_free(w, h, "op_L");
  int k = w.rank;
  PolyTensorField r = symmetrize(covariant_derivative(w));
  if (k >= 1) {
    PolyTensorField hfield = PolyTensorField::constant(h.tensor());
    r -= Scalar(Rat(k, h.n + 2 * (k - 1))) * field_product(hfield, divergence(w, h));
  }
  return r;
}

PairField op_K(const PolyTensorField& w, const Metric& h) {
  require_trace_free(w, h, "op_K");
  int k = w.rank, n = w.n;
  PairField r(n, k - 1);
  PolyTensorField dv = divergence(w, h);
  for_each_sorted_index(n, k - 1, [&](const Index& s) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Polynomial val = Scalar(Rat(1, 2)) * (w.get(insert_sorted(s, j)).derivative(i) -
                                              w.get(insert_sorted(s, i)).derivative(j));
        if (k >= 2) {
          // - 1/(n-3+k) sum_s h_{i_s [i} div(w)_{j] S\s p}
          Polynomial corr(n);
          Index distinct = s;
          distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
          for (int v : distinct) {
            int m = static_cast<int>(std::count(s.begin(), s.end(), v));
            Index rest = remove_one(s, v);
            Polynomial dj = dv.get(insert_sorted(rest, j));
            Polynomial di = dv.get(insert_sorted(rest, i));
            corr += Scalar(Rat(m)) * (h.g[v][i] * dj - h.g[v][j] * di);
          }
          val -= Scalar(Rat(1, 2 * (n - 3 + k))) * corr;
        }
        r.add(i, j, s, val);
      }
    }
  });
  return r;
}

PairField op_K_alt(const PolyTensorField& w, const Metric& h) {
  require_trace_free(w, h, "op_K_alt");
  int k = w.rank, n = w.n;
  PairField r(n, k - 1);
  PolyTensorField dv = divergence(w, h);
  for_each_sorted_index(n, k - 1, [&](const Index& s) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Polynomial val = Scalar(Rat(1, 2)) * (w.get(insert_sorted(s, j)).derivative(i) -
                                              w.get(insert_sorted(s, i)).derivative(j));
        if (k >= 2) {
          // - (k-1)/(2(n-3+k)) ( h_{i(S1} div_{S2...)j} - h_{j(S1} div_{S2...)i} )
          Polynomial a(n), b(n);
          Index distinct = s;
          distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
          for (int v : distinct) {
            int m = static_cast<int>(std::count(s.begin(), s.end(), v));
            Index rest = remove_one(s, v);
            Rat wgt(m, k - 1);
            a += Scalar(wgt) * (h.g[i][v] * dv.get(insert_sorted(rest, j)));
            b += Scalar(wgt) * (h.g[j][v] * dv.get(insert_sorted(rest, i)));
          }
          val -= Scalar(Rat(k - 1, 2 * (n - 3 + k))) * (a - b);
        }
        r.add(i, j, s, val);
      }
    }
  });
  return r;
}

namespace {

// K(w)_{i(S)}: symmetrization of the trailing k slots of K at (i, S), |S| = k.
Polynomial K_sym_tail(const PairField& kf, int i, const Index& s) {
  int k = static_cast<int>(s.size());
  Polynomial acc(kf.n);
  Index distinct = s;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (int v : distinct) {
    int m = static_cast<int>(std::count(s.begin(), s.end(), v));
    acc += Scalar(Rat(m, k)) * kf.get(i, v, remove_one(s, v));
  }
  return acc;
}

}  // namespace

Slot1Field op_T(const PolyTensorField& w, const Metric& h) {
  int k = w.rank;
  PairField kf = op_K(w, h);
  Slot1Field r(w.n, k);
  for_each_sorted_index(w.n, k, [&](const Index& s) {
    for (int i = 0; i < w.n; ++i) {
      Polynomial p = Scalar(Rat(2 * k, k + 1)) * K_sym_tail(kf, i, s);
      r.add(i, s, p);
    }
  });
  return r;
}

Slot1Field insert_trace(const PolyTensorField& rho, int k, const Metric& h) {
  int n = rho.n;
  if (rho.rank != k - 1) throw std::invalid_argument("insert_trace: rank mismatch");
  Scalar c1(div_weight(n, k));
  Scalar c2 = (k == 1) ? Scalar(0)
                       : Scalar(Rat(k) * Rat(1 - k) / (Rat(n - 3 + k) * Rat(n + 2 * (k - 1))));
  Slot1Field r(n, k);
  for_each_sorted_index(n, k, [&](const Index& s) {
    for (int i = 0; i < n; ++i) {
      Polynomial acc(n);
      // c1 * h_{i(S1} rho_{S2...Sk)}
      Index distinct = s;
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (int v : distinct) {
        int m = static_cast<int>(std::count(s.begin(), s.end(), v));
        const Polynomial& p = rho.get(remove_one(s, v));
        if (!p.is_zero() && !h.g[i][v].is_zero()) acc += (c1 * Scalar(Rat(m, k)) * h.g[i][v]) * p;
      }
      // c2 * h_{(S1 S2} rho_{S3...Sk) i}
      if (k >= 2) {
        Rat pairs = binom(k, 2);
        for (size_t a = 0; a < distinct.size(); ++a) {
          for (size_t b = a; b < distinct.size(); ++b) {
            int u = distinct[a], v = distinct[b];
            int mu = static_cast<int>(std::count(s.begin(), s.end(), u));
            int mv = static_cast<int>(std::count(s.begin(), s.end(), v));
            Rat ways = (u == v) ? binom(mu, 2) : Rat(mu) * Rat(mv);
            if (ways == 0 || h.g[u][v].is_zero()) continue;
            Index rest = remove_one(remove_one(s, u), v);
            const Polynomial& p = rho.get(insert_sorted(rest, i));
            if (!p.is_zero()) acc += (c2 * Scalar(ways / pairs) * h.g[u][v]) * p;
          }
        }
      }
      r.add(i, s, acc);
    }
  });
  return r;
}

PolyTensorField KstarK(const PolyTensorField& w, const Metric& h) {
  int k = w.rank;
  PairField kf = op_K(w, h);
  PolyTensorField r(w.n, k);
  for_each_sorted_index(w.n, k, [&](const Index& s) {
    Polynomial acc(w.n);
    for (int p = 0; p < w.n; ++p)
      for (int q = 0; q < w.n; ++q) {
        if (h.ginv[p][q].is_zero()) continue;
        Polynomial ks = K_sym_tail(kf, q, s);
        if (!ks.is_zero()) acc += h.ginv[p][q] * ks.derivative(p);
      }
    if (!acc.is_zero()) r.comps.emplace(s, std::move(acc));
  });
  return r;
}

// ---------------------------------------------------------------------------
// Norms

Polynomial norm2_field(const PolyTensorField& w, const Metric& h) {
  Polynomial acc(w.n);
  for (const auto& [i, p] : w.comps) {
    for (const auto& [j, q] : w.comps) {
      Scalar wt = pairing_weight(i, j, h);
      if (!wt.is_zero()) acc += wt * (p * q);
    }
  }
  return acc;
}

Polynomial norm2_slot1(const Slot1Field& e, const Metric& h) {
  Polynomial acc(e.n);
  for (const auto& [ka, p] : e.comps) {
    for (const auto& [kb, q] : e.comps) {
      const Scalar& g1 = h.ginv[ka.first][kb.first];
      if (g1.is_zero()) continue;
      Scalar wt = pairing_weight(ka.second, kb.second, h);
      if (!wt.is_zero()) acc += (g1 * wt) * (p * q);
    }
  }
  return acc;
}

Polynomial norm2_pair(const PairField& f, const Metric& h) {
  // Full contraction over ordered antisymmetric pairs: twice the sum over the
  // stored i < j representatives of the pair-raised contraction.
  Polynomial acc(f.n);
  for (const auto& [ka, p] : f.comps) {
    auto [i, j, s] = ka;
    for (const auto& [kb, q] : f.comps) {
      auto [a, b, t] = kb;
      Scalar g2 = h.ginv[i][a] * h.ginv[j][b] - h.ginv[i][b] * h.ginv[j][a];
      if (g2.is_zero()) continue;
      Scalar wt = pairing_weight(s, t, h);
      if (!wt.is_zero()) acc += (g2 * wt) * (p * q);
    }
  }
  return Scalar(2) * acc;
}

// ---------------------------------------------------------------------------
// Identity reports

DecompositionReport verify_decomposition(const PolyTensorField& w, const Metric& h) {
  require_trace_free(w, h, "verify_decomposition");
  int k = w.rank, n = w.n;
  DecompositionReport rep;
  Slot1Field lhs = covariant_derivative(w);
  Slot1Field rhs = as_slot1(op_L(w, h));
  rhs += op_T(w, h);
  if (k >= 1) rhs += insert_trace(divergence(w, h), k, h);
  Slot1Field res = lhs;
  res -= rhs;
  rep.residual = res;
  rep.identity_holds = res.is_zero();

  Polynomial total = norm2_slot1(lhs, h);
  Polynomial split = norm2_field(op_L(w, h), h);
  split += Scalar(Rat(2 * k, k + 1)) * norm2_pair(op_K(w, h), h);
  split += Scalar(div_weight(n, k)) * norm2_field(divergence(w, h), h);
  rep.norms_split = (total == split);
  return rep;
}

WeitzenbockReport verify_flat_weitzenbock(const PolyTensorField& w, const Metric& h) {
  require_trace_free(w, h, "verify_flat_weitzenbock");
  int k = w.rank, n = w.n;
  WeitzenbockReport rep;
  PolyTensorField rhs = divergence(op_L(w, h), h);
  rhs += Scalar(div_weight(n, k)) * op_L(divergence(w, h), h);
  rhs += Scalar(Rat(2 * k, k + 1)) * KstarK(w, h);
  PolyTensorField res = field_laplacian(w, h) - rhs;
  rep.residual = res;
  rep.identity_holds = res.is_zero();
  return rep;
}

// ---------------------------------------------------------------------------
// Kato spot checks (float mode)

double kato_constant(KatoKernel kind, int n, int k) {
  switch (kind) {
    case KatoKernel::k_div:
      return double(n - 2 + k) / double(n + 2 * (k - 1));
    case KatoKernel::l_div:
      return double(k) / double(k + 1);
    case KatoKernel::l_k:
      return double(k) / double(n + 2 * (k - 1));
  }
  return 1.0;
}

namespace {

using DenseMap = std::map<Index, double>;

DenseMap eval_field(const PolyTensorField& w, const std::vector<double>& x) {
  DenseMap m;
  for (const auto& [i, p] : w.comps) m[i] = p.evaluate(x);
  return m;
}

double dense_get(const DenseMap& m, Index idx) {
  auto it = m.find(sorted(std::move(idx)));
  return it == m.end() ? 0.0 : it->second;
}

// Full contraction of two symmetric rank-k dense maps with metric h (double).
double inner_dense(const DenseMap& a, const DenseMap& b, int n, int k, const Metric& h) {
  std::vector<std::vector<double>> gi(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gi[i][j] = h.ginv[i][j].to_double();
  double total = 0;
  std::vector<int> idx(k, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k) {
      double av = dense_get(a, idx);
      if (av == 0.0) return;
      // contract b with k raised slots against idx
      std::vector<int> jdx(k, 0);
      std::function<void(int, double)> rec2 = [&](int p2, double wgt) {
        if (wgt == 0.0) return;
        if (p2 == k) {
          total += av * wgt * dense_get(b, jdx);
          return;
        }
        for (int r = 0; r < n; ++r) {
          jdx[p2] = r;
          rec2(p2 + 1, wgt * gi[idx[p2]][r]);
        }
      };
      rec2(0, 1.0);
      return;
    }
    for (int r = 0; r < n; ++r) {
      idx[pos] = r;
      rec(pos + 1);
    }
  };
  rec(0);
  return total;
}

}  // namespace

KatoCheck kato_spot_check(const PolyTensorField& w, KatoKernel kind,
                          const std::vector<std::vector<double>>& points, const Metric& h) {
  // Exact kernel membership first: the inequality constant is only valid in
  // the corresponding kernel.
  switch (kind) {
    case KatoKernel::k_div:
      if (!op_K(w, h).is_zero() || !divergence(w, h).is_zero())
        throw std::invalid_argument("kato_spot_check: field not in ker K + ker div");
      break;
    case KatoKernel::l_div:
      if (!op_L(w, h).is_zero() || !divergence(w, h).is_zero())
        throw std::invalid_argument("kato_spot_check: field not in ker L + ker div");
      break;
    case KatoKernel::l_k:
      if (!op_L(w, h).is_zero() || !op_K(w, h).is_zero())
        throw std::invalid_argument("kato_spot_check: field not in ker L + ker K");
      break;
  }
  int n = w.n, k = w.rank;
  double c = kato_constant(kind, n, k);
  KatoCheck out;
  out.ok = true;
  std::vector<std::vector<double>> gi(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gi[i][j] = h.ginv[i][j].to_double();
  for (const auto& x : points) {
    DenseMap wv = eval_field(w, x);
    double norm2 = inner_dense(wv, wv, n, k, h);
    if (norm2 <= 1e-14) throw std::invalid_argument("kato_spot_check: zero-norm point");
    // grad_i |w| = <D_i w, w> / |w|; |Dw|^2 = sum ginv^{ij} <D_i w, D_j w>.
    std::vector<DenseMap> dw(n);
    for (int i = 0; i < n; ++i) {
      PolyTensorField di(n, k);
      for (const auto& [idx, p] : w.comps) di.add(idx, p.derivative(i));
      dw[i] = eval_field(di, x);
    }
    std::vector<double> grad_pair(n);
    for (int i = 0; i < n; ++i) grad_pair[i] = inner_dense(dw[i], wv, n, k, h);
    double grad_norm2 = 0, dnorm2 = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        grad_norm2 += gi[i][j] * grad_pair[i] * grad_pair[j];
        dnorm2 += gi[i][j] * inner_dense(dw[i], dw[j], n, k, h);
      }
    double lhs = grad_norm2 / norm2;  // |d|w||^2
    double slack = c * dnorm2 - lhs;
    out.slack.push_back(slack);
    if (slack < -1e-12) out.ok = false;
  }
  return out;
}

Polynomial random_harmonic(int n, int degree, const Metric& h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> coeff(-5, 5);
  Polynomial p(n);
  for_each_sorted_index(n, degree, [&](const Index& idx) {
    std::vector<int> e(n, 0);
    for (int v : idx) ++e[v];
    p.add_monomial(e, Scalar(coeff(rng)));
  });
  return harmonic_part(p, h);
}

}  // namespace ahlab
