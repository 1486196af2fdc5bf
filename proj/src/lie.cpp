#include "ahlab/lie.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ahlab {

namespace {

using Cube = std::vector<std::vector<std::vector<Scalar>>>;

Cube cube(int n) {
  return Cube(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(0))));
}

// Gamma_ijk as a dense cube.
Cube dense_gamma(const SymTensor& g, int n) {
  Cube d = cube(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) d[i][j][k] = g.get({i, j, k});
  return d;
}

// Raise the last index: t_ij^k = t_ijp h^pk.
Cube raise_last(const Cube& t, const Metric& h) {
  int n = h.n;
  Cube r = cube(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Scalar s;
        for (int p = 0; p < n; ++p) s += t[i][j][p] * h.ginv[p][k];
        r[i][j][k] = s;
      }
  return r;
}

// Lower the last index: c_ijk = c_ij^p h_pk.
Cube lower_last(const Cube& t, const Metric& h) {
  int n = h.n;
  Cube r = cube(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Scalar s;
        for (int p = 0; p < n; ++p) s += t[i][j][p] * h.g[p][k];
        r[i][j][k] = s;
      }
  return r;
}

void verify_invariants(const LieAlgebraData& lie, const Metric& h, const SymTensor& gamma) {
  int n = lie.n;
  if (h.n != n) throw std::invalid_argument("InvariantAH: metric dimension mismatch");
  if (gamma.dim() != n || gamma.rank() != 3)
    throw std::invalid_argument("InvariantAH: Gamma must be rank 3 over the algebra");
  // c_ijk completely antisymmetric; given antisymmetry in the first pair it
  // suffices to check antisymmetry in the last pair.
  Cube cl = lower_last(lie.c, h);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!(cl[i][j][k] + cl[i][k][j]).is_zero())
          throw std::invalid_argument("InvariantAH: h is not bi-invariant (c_ijk not antisymmetric)");
  if (!trace(gamma, h).is_zero())
    throw std::invalid_argument("InvariantAH: Gamma must be completely h-trace-free");
}

// Integer n-th root when exact.
std::optional<Int> exact_nth_root(const Int& v, int n) {
  if (v < 0) return std::nullopt;
  Int c = Int(std::llround(std::pow(v.convert_to<double>(), 1.0 / n)));
  for (Int x = (c > 2 ? c - 2 : Int(0)); x <= c + 2; ++x) {
    Int p = 1;
    for (int i = 0; i < n; ++i) p *= x;
    if (p == v) return x;
  }
  return std::nullopt;
}

}  // namespace

Metric killing_metric(const LieAlgebraData& lie) {
  auto b = lie.killing_form();
  for (auto& row : b)
    for (auto& v : row) v = -v;
  Metric h;
  try {
    h = Metric::from_matrix(std::move(b));
  } catch (const std::exception&) {
    throw std::domain_error("killing_metric: Killing form is degenerate (algebra not semisimple)");
  }
  return h;
}

InvariantAH::InvariantAH(LieAlgebraData lie_, SymTensor gamma_)
    : lie(std::move(lie_)), h(killing_metric(lie)), gamma(std::move(gamma_)) {
  verify_invariants(lie, h, gamma);
}

InvariantAH::InvariantAH(LieAlgebraData lie_, Metric h_, SymTensor gamma_)
    : lie(std::move(lie_)), h(std::move(h_)), gamma(std::move(gamma_)) {
  verify_invariants(lie, h, gamma);
}

InvariantReport invariant_curvature(const InvariantAH& s) {
  const int n = s.lie.n;
  const Metric& h = s.h;
  Cube g = dense_gamma(s.gamma, n);
  Cube gup = raise_last(g, h);
  Cube cl = lower_last(s.lie.c, h);
  const Cube& c = s.lie.c;

  // Connection coefficients A_ij^k = (1/2) c_ij^k + Gamma_ij^k.
  Scalar half(Rat(1, 2));
  Cube a = cube(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) a[i][j][k] = half * c[i][j][k] + gup[i][j][k];

  InvariantReport rep;
  rep.n = n;
  rep.R4 = Rank4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar up;
          for (int p = 0; p < n; ++p)
            up += a[i][p][l] * a[j][k][p] - a[j][p][l] * a[i][k][p] - c[i][j][p] * a[p][k][l];
          if (up.is_zero()) continue;
          for (int m = 0; m < n; ++m) {
            Scalar v = up * h.g[l][m];
            if (!v.is_zero()) rep.R4.add(i, j, k, m, v);
          }
        }

  rep.ric = ricci_trace(rep.R4, h);
  rep.scalar = scalar_of(rep.ric, h);
  if (rep.scalar != Scalar(Rat(n, 4)) - norm2(s.gamma, h))
    throw std::logic_error("invariant_curvature: scalar curvature identity failed");

  rep.gammaL = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar v;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) v += gup[i][p][q] * gup[j][q][p];
      rep.gammaL[i][j] = v;
    }

  rep.dec = decompose_curvature(rep.R4, h, zero_matrix(n));

  // Closed form of the trace-free symplectic block:
  // E_ijkl = Gamma_k[i^p c_j]lp + Gamma_l[i^p c_j]kp - c_pij Gamma_kl^p.
  Rank4 e4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar v;
          for (int p = 0; p < n; ++p) {
            v += half * (gup[k][i][p] * cl[j][l][p] - gup[k][j][p] * cl[i][l][p] +
                         gup[l][i][p] * cl[j][k][p] - gup[l][j][p] * cl[i][k][p]);
            v -= cl[p][i][j] * gup[k][l][p];
          }
          if (!v.is_zero()) e4.add(i, j, k, l, v);
        }
  if (!(rep.dec.E4 == e4))
    throw std::logic_error("invariant_curvature: closed form for E4 failed");

  // Conservation: L^{jkl} E_ijkl = 0 with L = 2 Gamma.
  rep.conservative = true;
  SymTensor lup = raise_all(s.gamma, h);
  for (int i = 0; i < n && rep.conservative; ++i) {
    Scalar v;
    for (const auto& [idx, ev] : e4.comps) {
      if (idx[0] != i) continue;
      v += 2 * lup.get({idx[1], idx[2], idx[3]}) * ev;
    }
    if (!v.is_zero()) rep.conservative = false;
  }

  // Unimodularizing factor |det h|^{-1/n}.
  Scalar adet = h.det.sign() == Sign::negative ? -h.det : h.det;
  rep.mu_value = std::pow(adet.to_double(), -1.0 / n);
  if (adet.is_rational()) {
    Rat r = adet.rational_part();
    auto pr = exact_nth_root(numerator(r), n);
    auto qr = exact_nth_root(denominator(r), n);
    if (pr && qr) rep.mu = Scalar(Rat(*qr, *pr));
  }

  // Einstein criterion: the quadratic trace of Gamma is pure h-trace.
  Scalar tr;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tr += h.ginv[i][j] * rep.gammaL[i][j];
  Scalar lam = tr / Scalar(n);
  bool einstein = true;
  for (int i = 0; i < n && einstein; ++i)
    for (int j = 0; j < n && einstein; ++j)
      if (rep.gammaL[i][j] != lam * h.g[i][j]) einstein = false;
  if (einstein) rep.einstein = rep.scalar / Scalar(n);
  return rep;
}

std::optional<Scalar> einstein_criterion(const InvariantAH& s) {
  return invariant_curvature(s).einstein;
}

SymTensor conformal_killing_defect(const InvariantAH& s) {
  const int n = s.lie.n;
  Cube g = dense_gamma(s.gamma, n);
  const Cube& c = s.lie.c;
  Scalar half(Rat(1, 2));
  // (D Gamma)_ijkl for the connection with coefficients (1/2) c_ij^k.
  auto dg = [&](int i, int j, int k, int l) {
    Scalar v;
    for (int p = 0; p < n; ++p)
      v -= half * (c[i][j][p] * g[p][k][l] + c[i][k][p] * g[j][p][l] + c[i][l][p] * g[j][k][p]);
    return v;
  };
  SymTensor out(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (int l = k; l < n; ++l) {
          std::array<int, 4> idx = {i, j, k, l};
          std::array<int, 4> pos = {0, 1, 2, 3};
          Scalar sum;
          do {
            sum += dg(idx[pos[0]], idx[pos[1]], idx[pos[2]], idx[pos[3]]);
          } while (std::next_permutation(pos.begin(), pos.end()));
          if (!sum.is_zero()) out.set({i, j, k, l}, sum / Scalar(24));
        }
  return out;
}

InvariantAH s3_family(const Scalar& t) {
  LieAlgebraData lie = builtin_lie("so3");
  SymTensor gamma(3, 3);
  // t X_(i Y_j Z_k) with X, Y, Z the dual basis covectors: the single
  // independent component is Gamma_{012} = t/6.
  gamma.set({0, 1, 2}, t * Scalar(Rat(1, 6)));
  return InvariantAH(std::move(lie), std::move(gamma));
}

NilpotentStructure nilpotent_structure(const LieAlgebraData& lie, const Vec& e, const Vec& f,
                                       const Vec& ht) {
  const int n = lie.n;
  if ((int)e.size() != n || (int)f.size() != n || (int)ht.size() != n)
    throw std::invalid_argument("nilpotent_structure: element dimension mismatch");
  auto equal = [&](const Vec& a, const Vec& b) {
    for (int i = 0; i < n; ++i)
      if (a[i] != b[i]) return false;
    return true;
  };
  auto scale = [&](const Scalar& c, const Vec& v) {
    Vec r(n);
    for (int i = 0; i < n; ++i) r[i] = c * v[i];
    return r;
  };
  if (!equal(lie.bracket(e, f), ht) || !equal(lie.bracket(ht, e), scale(Scalar(2), e)) ||
      !equal(lie.bracket(ht, f), scale(Scalar(-2), f)))
    throw std::invalid_argument("nilpotent_structure: sl2-triple relations fail");

  auto b = lie.killing_form();
  auto bform = [&](const Vec& x, const Vec& y) {
    Scalar v;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v += x[i] * y[j] * b[i][j];
    return v;
  };
  if (!bform(e, e).is_zero())
    throw std::invalid_argument("nilpotent_structure: e is not null for the Killing form");

  Metric h = killing_metric(lie);
  Vec x(n, Scalar(0));  // X_i = h_ip e^p
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < n; ++p) x[i] += h.g[i][p] * e[p];
  SymTensor gamma(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Scalar v = x[i] * x[j] * x[k];
        if (!v.is_zero()) gamma.set({i, j, k}, v);
      }
  NilpotentStructure ns{InvariantAH(lie, std::move(h), std::move(gamma)), e, f, ht, bform(e, f)};
  return ns;
}

Scalar nilpotent_contraction(const NilpotentStructure& ns, const InvariantReport& rep) {
  Scalar v;
  for (const auto& [idx, ev] : rep.dec.E4.comps)
    v += ns.ht[idx[0]] * ns.f[idx[1]] * ns.f[idx[2]] * ns.f[idx[3]] * ev;
  return v;
}

LieAlgebraData builtin_lie(const std::string& name) {
  Scalar s = Scalar::root(Rat(1, 2), 2);  // 1/sqrt(2)
  if (name == "so3" || name == "su2-scaled")
    return LieAlgebraData(3, {{0, 1, 2, s}, {1, 2, 0, s}, {2, 0, 1, s}});
  if (name == "sl2r")
    return LieAlgebraData(3, {{0, 1, 2, s}, {1, 2, 0, -s}, {2, 0, 1, -s}});
  if (name == "sl2-standard")
    return LieAlgebraData(3, {{0, 1, 2, Scalar(1)}, {2, 0, 0, Scalar(2)}, {2, 1, 1, Scalar(-2)}});
  throw std::invalid_argument("builtin_lie: unknown algebra '" + name + "'");
}

}  // namespace ahlab
