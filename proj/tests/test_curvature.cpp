#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ahlab/codazzi.hpp"
#include "ahlab/curvature.hpp"

using namespace ahlab;

namespace {

// Random element of the pair-curvature space: antisymmetrize a random rank-4
// tensor in its leading pair, then remove the skew part over the first three
// slots.
Rank4 random_pair_curvature(int n, std::mt19937& rng) {
  std::uniform_int_distribution<long> val(-3, 3);
  std::uniform_int_distribution<int> idx(0, n - 1);
  Rank4 x(n);
  for (int t = 0; t < 4 * n * n; ++t)
    x.add(idx(rng), idx(rng), idx(rng), idx(rng), Scalar(val(rng)));
  Rank4 b(n);
  for (const auto& [k, v] : x.comps) {
    b.add(k[0], k[1], k[2], k[3], v);
    b.add(k[1], k[0], k[2], k[3], -v);
  }
  // Subtract the full skew part over the first three slots.
  constexpr int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  constexpr int sign[6] = {1, -1, -1, 1, 1, -1};
  Rank4 skew(n);
  for (const auto& [k, v] : b.comps) {
    int abc[3] = {k[0], k[1], k[2]};
    for (int p = 0; p < 6; ++p)
      skew.add(abc[perm[p][0]], abc[perm[p][1]], abc[perm[p][2]], k[3],
               Scalar(Rat(sign[p], 6)) * v);
  }
  b -= skew;
  return b;
}

Matrix random_two_form(int n, std::mt19937& rng) {
  std::uniform_int_distribution<long> val(-3, 3);
  Matrix f = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      f[i][j] = Scalar(val(rng));
      f[j][i] = -f[i][j];
    }
  return f;
}

Metric skew_metric(int n) {
  Matrix m = zero_matrix(n);
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(n + 2);
  m[0][1] = m[1][0] = Scalar(1);
  return Metric::from_matrix(m);
}

FlatAHStructure structure_from(const Polynomial& cubic, const Metric& h) {
  CodazziAlgebra a = from_cubic(cubic, h);
  return FlatAHStructure(h, a.mu);
}

bool matrices_equal(const Matrix& a, const Matrix& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (!(a[i][j] - b[i][j]).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("projections split the pair-curvature space") {
  std::mt19937 rng(7);
  for (int n : {2, 3, 4}) {
    Metric h = (n == 3) ? skew_metric(3) : Metric::euclidean(n);
    for (int trial = 0; trial < 8; ++trial) {
      Rank4 b = random_pair_curvature(n, rng);
      REQUIRE(is_pair_curvature(b));
      Rank4 p1 = project1(b), p2 = project2(b), p3 = project3(b);
      CHECK((p1 + p2 + p3 - b).is_zero());
      CHECK(project2(p1).is_zero());
      CHECK(project3(p1).is_zero());
      CHECK(project1(p2).is_zero());
      CHECK(project3(p2).is_zero());
      CHECK(project1(p3).is_zero());
      CHECK(project2(p3).is_zero());
      CHECK((project1(p1) - p1).is_zero());
      CHECK((project2(p2) - p2).is_zero());
      CHECK((project3(p3) - p3).is_zero());
      // Pairwise orthogonality with respect to the metric.
      CHECK(full_contract(p1, p2, h).is_zero());
      CHECK(full_contract(p1, p3, h).is_zero());
      CHECK(full_contract(p2, p3, h).is_zero());
    }
  }
}

TEST_CASE("two-form curvature tensors and their traces") {
  std::mt19937 rng(11);
  for (int n : {3, 4, 5}) {
    Metric h = Metric::euclidean(n);
    Matrix F = random_two_form(n, rng);
    Rank4 rF = two_form_curvature(F, h);
    REQUIRE(is_pair_curvature(rF));
    CHECK(project2(rF).is_zero());
    Rank4 F4 = project1(rF), G4 = project3(rF);
    CHECK((F4 + G4 - rF).is_zero());
    // 4 F4_pij^p = -(n+2) F_ij and 4 G4_pij^p = (2-n) F_ij.
    Matrix f_tr = ricci_trace(F4, h), g_tr = ricci_trace(G4, h);
    Matrix f_expect = zero_matrix(n), g_expect = zero_matrix(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        f_expect[i][j] = Scalar(Rat(-(n + 2), 4)) * F[i][j];
        g_expect[i][j] = Scalar(Rat(2 - n, 4)) * F[i][j];
      }
    CHECK(matrices_equal(f_tr, f_expect));
    CHECK(matrices_equal(g_tr, g_expect));
  }
}

TEST_CASE("constant-sectional-curvature decomposition") {
  std::mt19937 rng(13);
  for (int n : {3, 4}) {
    Metric h = (n == 3) ? skew_metric(3) : Metric::euclidean(n);
    Scalar kappa(3);
    Rank4 r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            r.add(i, j, k, l, kappa * (h.g[l][i] * h.g[j][k] - h.g[l][j] * h.g[i][k]));
    Decomposition d = decompose_curvature(r, h);
    CHECK(d.A4.is_zero());
    CHECK(d.E4.is_zero());
    CHECK(d.U4.is_zero());
    Matrix ric = ricci_trace(r, h);
    Matrix expect = zero_matrix(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) expect[i][j] = Scalar(n - 1) * kappa * h.g[i][j];
    CHECK(matrices_equal(ric, expect));
  }
}

TEST_CASE("flat structures from Einstein special cubics") {
  SUBCASE("four-dimensional complex cubic") {
    Metric h = Metric::euclidean(4);
    FlatAHStructure s = structure_from(cubic_r4_complex(), h);
    CurvatureReport rep = curvature_flat(s);
    // kappa_alg = 4, so |L|^2 = n kappa = 16 and the scalar is -4.
    CHECK(rep.scalar == Scalar(-4));
    CHECK(rep.verdicts.einstein.has_value());
    CHECK(*rep.verdicts.einstein == Scalar(-1));
    CHECK(rep.dec.U4.is_zero());
    CHECK(rep.dec.E4.is_zero());
    CHECK(matrix_is_zero(rep.dec.Eij));
    CHECK_FALSE(rep.dec.A4.is_zero());
    CHECK(rep.verdicts.proj_flat_obstructed);
    CHECK(rep.verdicts.self_conjugate);
    CHECK(rep.verdicts.conservative);
    // T4 = -(1/4) L4 and R4 = T4; the trace-free parts match: -4 A4 = C4.
    CHECK((rep.dec.T4 + Scalar(Rat(1, 4)) * rep.L4).is_zero());
    CHECK((rep.R4 - rep.dec.T4).is_zero());
    CHECK((Scalar(-4) * rep.dec.A4 - rep.C4).is_zero());
    // ric = -(1/4) L_ij entrywise.
    Matrix lij = torsion_trace(s.L, h);
    Matrix expect = zero_matrix(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) expect[i][j] = Scalar(Rat(-1, 4)) * lij[i][j];
    CHECK(matrices_equal(rep.ric, expect));
  }

  SUBCASE("chain cubic is unobstructed") {
    Metric h = Metric::euclidean(3);
    FlatAHStructure s = structure_from(cubic_chain(3), h);
    CurvatureReport rep = curvature_flat(s);
    CHECK(rep.dec.A4.is_zero());
    CHECK(rep.dec.E4.is_zero());
    CHECK(rep.C4.is_zero());
    CHECK_FALSE(rep.verdicts.proj_flat_obstructed);
    CHECK(rep.verdicts.einstein.has_value());
    CHECK(*rep.verdicts.einstein == Scalar(Rat(-3, 2)));  // -kappa_alg / 4 = -6/4
    CHECK(rep.scalar == Scalar(Rat(-9, 2)));              // -(1/4) n kappa_alg
  }

  SUBCASE("zero torsion") {
    Metric h = Metric::euclidean(3);
    FlatAHStructure s(h, SymTensor(3, 3));
    CurvatureReport rep = curvature_flat(s);
    CHECK(rep.R4.is_zero());
    CHECK(rep.scalar == Scalar(0));
    CHECK(*rep.verdicts.einstein == Scalar(0));
    CHECK_FALSE(rep.verdicts.proj_flat_obstructed);
  }

  SUBCASE("non-Einstein torsion is rejected by the verdict") {
    // x1^3 - 3 x1 x2^2 viewed on R^3: harmonic, hence trace-free, but its
    // trace form is diag(72, 72, 0).
    Metric h = Metric::euclidean(3);
    Polynomial p = Polynomial::variable(3, 0) * Polynomial::variable(3, 0) *
                       Polynomial::variable(3, 0) -
                   Scalar(3) * (Polynomial::variable(3, 0) * Polynomial::variable(3, 1) *
                                Polynomial::variable(3, 1));
    FlatAHStructure s = structure_from(p, h);
    CurvatureReport rep = curvature_flat(s);
    CHECK_FALSE(rep.verdicts.einstein.has_value());
    CHECK(matrix_is_zero(rep.dec.Eij));  // still divergence-free as constants
  }

  SUBCASE("isoparametric cubic m = 1") {
    Metric h = Metric::euclidean(5);
    FlatAHStructure s = structure_from(isoparametric_cubic(1), h);
    CurvatureReport rep = curvature_flat(s);
    CHECK(*rep.verdicts.einstein == Scalar(Rat(-126, 4)));
    CHECK_FALSE(rep.dec.A4.is_zero());
    CHECK(rep.dec.E4.is_zero());
    CHECK(rep.verdicts.proj_flat_obstructed);
  }

  SUBCASE("isoparametric cubic m = 2") {
    Metric h = Metric::euclidean(8);
    FlatAHStructure s = structure_from(isoparametric_cubic(2), h);
    CurvatureReport rep = curvature_flat(s);
    CHECK(*rep.verdicts.einstein == Scalar(-45));
    CHECK_FALSE(rep.dec.A4.is_zero());
  }

  SUBCASE("Nahm algebra of so(3)") {
    LieAlgebraData so3(3, {{0, 1, 2, Scalar(1)}, {1, 2, 0, Scalar(1)}, {2, 0, 1, Scalar(1)}});
    CodazziAlgebra a = nahm(so3);
    FlatAHStructure s(a.h, a.mu);
    CurvatureReport rep = curvature_flat(s);
    CHECK(*rep.verdicts.einstein == Scalar(Rat(-1, 4)));
    CHECK_FALSE(rep.dec.A4.is_zero());
    CHECK(rep.dec.E4.is_zero());
  }
}

TEST_CASE("polynomial torsion fields") {
  const int n = 3;
  Metric h = Metric::euclidean(n);

  auto build = [&](const Polynomial& f, const Polynomial& g) {
    PolyTensorField L(n, 3);
    L.add({0, 0, 1}, Scalar(2) * f);
    L.add({1, 2, 2}, Scalar(-2) * f);
    L.add({0, 1, 2}, g);
    return L;
  };
  Polynomial x1 = Polynomial::variable(n, 0), x3 = Polynomial::variable(n, 2);

  SUBCASE("general scalar identity") {
    Polynomial f = x1 + Scalar(2) * x3, g = x3;
    FieldCurvatureReport rep = field_curvature_flat(build(f, g), h);
    Polynomial expect = Scalar(Rat(-1, 4)) * (Scalar(24) * (f * f) + Scalar(6) * (g * g));
    CHECK(rep.scalar == expect);
  }

  SUBCASE("divergence-free member is naive Einstein with nonconstant scalar") {
    Polynomial f = x1 + x3, g = Scalar(2) * (x1 - x3);
    FieldCurvatureReport rep = field_curvature_flat(build(f, g), h);
    CHECK(rep.div.is_zero());
    CHECK(rep.Eij.is_zero());
    // scalar = -12 (x1^2 + x3^2), nonconstant.
    CHECK(rep.scalar == Scalar(-12) * (x1 * x1 + x3 * x3));
    CHECK(rep.scalar.degree() == 2);
    // Trace-free Ricci vanishes identically: ric_ij = (scalar / n) h_ij.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Polynomial expect =
            (i == j) ? Scalar(Rat(1, n)) * rep.scalar : Polynomial(n);
        CHECK(rep.ric[i][j] == expect);
      }
  }

  SUBCASE("constant field reduces to the constant-coefficient report") {
    CodazziAlgebra a = from_cubic(cubic_chain(3), h);
    PolyTensorField L = PolyTensorField::constant(a.mu);
    FieldCurvatureReport frep = field_curvature_flat(L, h);
    CurvatureReport rep = curvature_flat(FlatAHStructure(h, a.mu));
    CHECK(frep.div.is_zero());
    CHECK(frep.scalar == Polynomial::constant(n, rep.scalar));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(frep.ric[i][j] == Polynomial::constant(n, rep.ric[i][j]));
    for (const auto& p : frep.E4) CHECK(p.is_zero());
  }
}

TEST_CASE("Gauduchon equations on constant data") {
  Metric h = Metric::euclidean(3);
  CodazziAlgebra a = from_cubic(cubic_chain(3), h);

  std::vector<Scalar> zero_gamma(3, Scalar(0));
  GauduchonReport ok = gauduchon_verify(h, zero_gamma, a.mu);
  CHECK(ok.divergence_free);
  CHECK(ok.gamma_orthogonal);
  CHECK(ok.gamma_killing);
  CHECK(ok.scalar_constant);

  std::vector<Scalar> gamma(3, Scalar(0));
  gamma[0] = Scalar(1);
  GauduchonReport bad = gauduchon_verify(h, gamma, a.mu);
  CHECK_FALSE(bad.gamma_orthogonal);
  CHECK_FALSE(matrix_is_zero(bad.gammaL));
}

TEST_CASE("pointwise jets") {
  SUBCASE("constant jet matches the exact report") {
    const int n = 3;
    Metric h = Metric::euclidean(n);
    CodazziAlgebra a = from_cubic(cubic_chain(3), h);
    CurvatureReport exact = curvature_flat(FlatAHStructure(h, a.mu));

    JetData jet;
    jet.n = n;
    jet.h.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) jet.h[i][i] = 1.0;
    jet.dh.assign(n, jet.h);
    for (auto& m : jet.dh)
      for (auto& row : m) row.assign(n, 0.0);
    jet.d2h.assign(n, jet.dh);
    jet.L.assign(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) jet.L[i][j][k] = a.mu.get({i, j, k}).to_double();
    jet.dL.assign(n, jet.L);
    for (auto& c : jet.dL)
      for (auto& m : c)
        for (auto& row : m) row.assign(n, 0.0);

    JetCurvatureReport rep = curvature_from_jet(jet);
    CHECK(std::fabs(rep.scalar - exact.scalar.to_double()) < 1e-12);
    CHECK(std::fabs(rep.metric_scalar) < 1e-12);
    CHECK(rep.consistency < 1e-12);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::fabs(rep.ric[i][j] - exact.ric[i][j].to_double()) < 1e-12);
  }

  SUBCASE("orthant structure by central differences") {
    for (int n : {3, 4}) {
      auto metric = [n](const std::vector<double>& x) {
        std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
        double c = n + 1.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            h[i][j] = -1.0 / (c * c * x[i] * x[j]);
            if (i == j) h[i][j] += 1.0 / (c * x[i] * x[i]);
          }
        return h;
      };
      auto gamma = [n](const std::vector<double>& x) {
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = -1.0 / ((n + 1.0) * x[i]);
        return g;
      };
      std::vector<double> point(n, 1.0);
      JetData jet = numeric_jet(n, metric, gamma, point, 1e-4);
      JetCurvatureReport rep = curvature_from_jet(jet);
      CHECK(std::fabs(rep.L_norm2 - 4.0 * n * (n - 1)) < 1e-6);
      CHECK(std::fabs(rep.scalar - n * (1.0 - n)) < 1e-6);
      CHECK(std::fabs(rep.metric_scalar) < 1e-6);
      CHECK(rep.consistency < 1e-6);
      // Ricci of nabla is (1 - n) h at the point.
      auto h0 = metric(point);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(std::fabs(rep.ric[i][j] - (1.0 - n) * h0[i][j]) < 1e-6);
    }
  }
}
