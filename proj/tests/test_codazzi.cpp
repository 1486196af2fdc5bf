#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ahlab/codazzi.hpp"

using namespace ahlab;

namespace {

Vec basis(int n, int i) {
  Vec v(n, Scalar(0));
  v[i] = Scalar(1);
  return v;
}

LieAlgebraData so3() {
  return LieAlgebraData(3, {{0, 1, 2, Scalar(1)}, {1, 2, 0, Scalar(1)}, {2, 0, 1, Scalar(1)}});
}

LieAlgebraData sl2r() {
  // [h, e] = 2e, [h, f] = -2f, [e, f] = h with basis order (e, f, h).
  return LieAlgebraData(3, {{2, 0, 0, Scalar(2)}, {2, 1, 1, Scalar(-2)}, {0, 1, 2, Scalar(1)}});
}

Vec random_vec(int n, std::mt19937& rng) {
  std::uniform_int_distribution<long> d(-4, 4);
  Vec v(n);
  for (auto& s : v) s = Scalar(d(rng));
  return v;
}

}  // namespace

TEST_CASE("multiplication table of the mixed-sign quartic-space cubic") {
  CodazziAlgebra a = from_cubic(cubic_r4_complex(), Metric::euclidean(4));
  auto p = [&](int i, int j) { return a.basis_product(i, j); };
  CHECK(p(0, 0) == basis(4, 2));
  CHECK(p(0, 1) == Vec{Scalar(0), Scalar(0), Scalar(0), Scalar(-1)});
  CHECK(p(0, 2) == basis(4, 0));
  CHECK(p(0, 3) == Vec{Scalar(0), Scalar(-1), Scalar(0), Scalar(0)});
  CHECK(p(1, 1) == Vec{Scalar(0), Scalar(0), Scalar(-1), Scalar(0)});
  CHECK(p(1, 2) == Vec{Scalar(0), Scalar(-1), Scalar(0), Scalar(0)});
  CHECK(p(1, 3) == Vec{Scalar(-1), Scalar(0), Scalar(0), Scalar(0)});
  CHECK(p(2, 2) == Vec{Scalar(0), Scalar(0), Scalar(-1), Scalar(0)});
  CHECK(p(2, 3) == basis(4, 3));
  CHECK(p(3, 3) == basis(4, 2));
}

TEST_CASE("triple-product algebra and cubic round trips") {
  Scalar c(5);
  CodazziAlgebra a = from_cubic(cubic_triple(c), Metric::euclidean(3));
  CHECK(a.basis_product(0, 0) == Vec{Scalar(0), Scalar(0), Scalar(0)});
  CHECK(a.basis_product(0, 1) == Vec{Scalar(0), Scalar(0), c});
  CHECK(a.basis_product(1, 2) == Vec{c, Scalar(0), Scalar(0)});
  CHECK(a.basis_product(2, 0) == Vec{Scalar(0), c, Scalar(0)});

  CHECK(a.cubic() == cubic_triple(c));
  CodazziAlgebra b = from_cubic(a.cubic(), a.h);
  CHECK(b.mu == a.mu);
  CHECK_THROWS_AS(from_cubic(cubic_triple(c) * cubic_triple(c), Metric::euclidean(3)),
                  std::invalid_argument);
}

TEST_CASE("trace forms") {
  SUBCASE("trivial algebra") {
    CodazziAlgebra a = from_cubic(Polynomial(3), Metric::euclidean(3));
    for (auto& row : a.trace_form())
      for (auto& s : row) CHECK(s.is_zero());
  }
  SUBCASE("standard three-dimensional cubic gives 54 delta") {
    CodazziAlgebra a = from_cubic(cubic_r3_standard(), Metric::euclidean(3));
    auto tau = a.trace_form();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(tau[i][j] == (i == j ? Scalar(54) : Scalar(0)));
    CHECK(*a.einstein_constant() == Scalar(54));
  }
  SUBCASE("Nahm of so(3) has Euclidean trace form") {
    CodazziAlgebra a = nahm(so3());
    auto tau = a.trace_form();
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) CHECK(tau[i][j] == (i == j ? Scalar(1) : Scalar(0)));
    CHECK(a.cubic() == cubic_det3());
    CHECK(a.is_special());
  }
}

TEST_CASE("special and Einstein predicates") {
  Metric d3 = Metric::euclidean(3);
  CHECK(from_cubic(cubic_triple(Scalar(1)), d3).is_special());
  CHECK(nahm(sl2r()).is_special());
  Polynomial x0 = Polynomial::variable(3, 0);
  CHECK_FALSE(from_cubic(x0 * x0 * x0, d3).is_special());

  CHECK(*from_cubic(cubic_two_parameter(Scalar(1), Scalar(1)), d3).einstein_constant() ==
        Scalar(10));
  CHECK(*from_cubic(cubic_r4_complex(), Metric::euclidean(4)).einstein_constant() == Scalar(4));

  // Diagonal associative algebra with distinct weights: not Einstein.
  Polynomial diag(3);
  diag += Scalar(Rat(1, 6)) * (x0 * x0 * x0);
  Polynomial x1 = Polynomial::variable(3, 1), x2 = Polynomial::variable(3, 2);
  diag += Scalar(Rat(2, 6)) * (x1 * x1 * x1);
  diag += Scalar(Rat(3, 6)) * (x2 * x2 * x2);
  CodazziAlgebra da = from_cubic(diag, d3);
  CHECK_FALSE(da.einstein_constant().has_value());
  CHECK(da.is_associative());
}

TEST_CASE("associators") {
  std::mt19937 rng(5);
  CodazziAlgebra a = from_cubic(cubic_det3(), Metric::euclidean(9));
  for (int t = 0; t < 5; ++t) {
    Vec x = random_vec(9, rng), y = random_vec(9, rng);
    for (const Scalar& s : a.associator(x, y, x)) CHECK(s.is_zero());
  }

  // In the triple-product algebra, x = e2 + e3 is not power associative.
  Scalar c(3);
  CodazziAlgebra t3 = from_cubic(cubic_triple(c), Metric::euclidean(3));
  Vec x{Scalar(0), Scalar(1), Scalar(1)};
  Vec xx = t3.multiply(x, x);
  Vec left = t3.multiply(t3.multiply(xx, x), x);
  CHECK(left == Vec{c * c * c * Scalar(4), Scalar(0), Scalar(0)});
  CHECK(t3.multiply(xx, xx) == Vec{Scalar(0), Scalar(0), Scalar(0)});
}

TEST_CASE("conformal associativity probes") {
  SUBCASE("quartic-space cubic: probe (e1,e2,e3,e4) gives -2 vs 0") {
    CodazziAlgebra a = from_cubic(cubic_r4_complex(), Metric::euclidean(4));
    auto [lhs, rhs] = a.conf_assoc_probe(basis(4, 0), basis(4, 1), basis(4, 2), basis(4, 3));
    CHECK(lhs == Scalar(-2));
    CHECK(rhs.is_zero());
    CHECK_FALSE(a.is_conformally_associative());
  }
  SUBCASE("Nahm of so(3): probe gives 1/4 vs 0") {
    CodazziAlgebra a = nahm(so3());
    auto [lhs, rhs] = a.conf_assoc_probe(basis(9, 0), basis(9, 1), basis(9, 3), basis(9, 4));
    CHECK(lhs == Scalar(Rat(1, 4)));
    CHECK(rhs.is_zero());
  }
  SUBCASE("three-dimensional algebras are conformally associative") {
    CHECK(from_cubic(cubic_r3_standard(), Metric::euclidean(3)).is_conformally_associative());
    CHECK(from_cubic(cubic_two_parameter(Scalar(2), Scalar(-1)), Metric::euclidean(3))
              .is_conformally_associative());
  }
}

TEST_CASE("unitalization") {
  SUBCASE("triple-product algebra at c = 1") {
    CodazziAlgebra a = from_cubic(cubic_triple(Scalar(1)), Metric::euclidean(3));
    CHECK(*a.einstein_constant() == Scalar(2));
    CodazziAlgebra u = unitalize(a);
    CHECK(*u.einstein_constant() == Scalar(4));
    CHECK(u.is_associative());
    CHECK_FALSE(u.is_special());
    // (0,1) is a unit.
    for (int i = 0; i < 4; ++i) CHECK(u.basis_product(3, i) == basis(4, i));
    CHECK(u.inner(basis(4, 3), basis(4, 3)) == Scalar(1));

    // In the idempotent coordinates the cubic is (1/3) sum y_i^3.
    int sigma[4][4] = {{1, -1, -1, 1}, {-1, 1, -1, 1}, {-1, -1, 1, 1}, {1, 1, 1, 1}};
    std::vector<std::vector<Scalar>> A(4, std::vector<Scalar>(4));
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) A[j][i] = Scalar(Rat(sigma[i][j], 2));
    Polynomial in_y = substitute_linear(u.cubic(), A);
    Polynomial expected(4);
    for (int i = 0; i < 4; ++i) {
      Polynomial yi = Polynomial::variable(4, i);
      expected += Scalar(Rat(1, 3)) * (yi * yi * yi);
    }
    CHECK(in_y == expected);
  }
  SUBCASE("non conformally associative input gives non-associative unitalization") {
    // Scale the quartic-space cubic so its Einstein constant is n - 1 = 3.
    Polynomial p = Scalar::sqrt_rational(Rat(3, 4)) * cubic_r4_complex();
    CodazziAlgebra a = from_cubic(p, Metric::euclidean(4));
    CHECK(*a.einstein_constant() == Scalar(3));
    CodazziAlgebra u = unitalize(a);
    CHECK(*u.einstein_constant() == Scalar(5));
    CHECK_FALSE(u.is_associative());
  }
}

TEST_CASE("extension realizes the recursive chain") {
  CodazziAlgebra q2 = from_cubic(cubic_chain(2), Metric::euclidean(2));
  CHECK(*q2.einstein_constant() == Scalar(2));
  CodazziAlgebra q3 = extend(q2, Rat(2), Rat(6));
  CHECK(q3.mu == from_cubic(cubic_chain(3), Metric::euclidean(3)).mu);
  CHECK(Scalar(3) * cubic_chain(3) == cubic_r3_standard());

  CodazziAlgebra cur = q3;
  for (int n = 3; n < 8; ++n) {
    cur = extend(cur, Rat(n) * Rat(n - 1), Rat(n) * Rat(n + 1));
    CHECK(cur.n == n + 1);
    CHECK(*cur.einstein_constant() == Scalar(Rat(n) * Rat(n + 1)));
    CHECK(cur.is_special());
    CHECK(cur.is_conformally_associative());
    CHECK(cur.mu == from_cubic(cubic_chain(n + 1), Metric::euclidean(n + 1)).mu);
  }

  CHECK_THROWS_AS(extend(from_cubic(Polynomial(2), Metric::euclidean(2)), Rat(2), Rat(6)),
                  std::invalid_argument);
}

TEST_CASE("polynomial Einstein identities") {
  CHECK(*check_einstein_polynomials(cubic_plane_harmonic(Rat(2)), Metric::euclidean(2)) ==
        Scalar(288));
  CHECK(*check_einstein_polynomials(cubic_r3_standard(), Metric::euclidean(3)) == Scalar(54));
  CHECK(*check_einstein_polynomials(cubic_r4_complex(), Metric::euclidean(4)) == Scalar(4));
  CHECK(*check_einstein_polynomials(cubic_det3(), Metric::euclidean(9)) == Scalar(1));
  CHECK(*check_einstein_polynomials(cubic_symdet3(), Metric::euclidean(6)) == Scalar(3));
  CHECK(*check_einstein_polynomials(cubic_pfaffian6(), Metric::euclidean(15)) == Scalar(6));
  CHECK(*check_einstein_polynomials(cubic_two_parameter(Scalar(2), Scalar(3)), Metric::euclidean(3)) ==
        Scalar(80));
  Polynomial x0 = Polynomial::variable(3, 0);
  CHECK_FALSE(check_einstein_polynomials(x0 * x0 * x0, Metric::euclidean(3)).has_value());
}

TEST_CASE("Hessian determinant identities") {
  SUBCASE("syzygetic pencil covariance at (a,b) = (1,2)") {
    auto res = hessian_det_check(cubic_syzygetic(Scalar(1), Scalar(2)));
    CHECK(res.det == cubic_syzygetic(Scalar(-24), Scalar(17)));
  }
  SUBCASE("product of coordinates") {
    auto res = hessian_det_check(cubic_triple(Scalar(3)));
    REQUIRE(res.kappa.has_value());
    CHECK(*res.kappa == Scalar(18));  // 2 b^2 with b = 3
  }
  SUBCASE("linear form times an irreducible degenerate quadratic") {
    Polynomial x1 = Polynomial::variable(3, 0), x2 = Polynomial::variable(3, 1),
               x3 = Polynomial::variable(3, 2);
    Scalar c(2);
    auto res = hessian_det_check(c * (x3 * (x1 * x1 + x2 * x2)));
    REQUIRE(res.kappa.has_value());
    CHECK(*res.kappa == Scalar(-32));  // -8 c^2 with c = 2
  }
  SUBCASE("no proportionality") {
    Polynomial x1 = Polynomial::variable(3, 0), x2 = Polynomial::variable(3, 1),
               x3 = Polynomial::variable(3, 2);
    auto res = hessian_det_check(x1 * (x1 * x1 + x2 * x2 + x3 * x3));
    CHECK_FALSE(res.kappa.has_value());
  }
}

TEST_CASE("isoparametric cubics") {
  SUBCASE("m = 1 explicit form, constant, and associator") {
    Polynomial p = isoparametric_cubic(1);
    Polynomial x1 = Polynomial::variable(5, 0), x2 = Polynomial::variable(5, 1),
               x3 = Polynomial::variable(5, 2), x4 = Polynomial::variable(5, 3),
               x5 = Polynomial::variable(5, 4);
    Scalar s3 = Scalar::root(Rat(1), Int(3));
    Polynomial expected = x5 * x5 * x5 +
                          Scalar(Rat(3, 2)) * (x5 * (x1 * x1 + x2 * x2 - Scalar(2) * (x3 * x3) -
                                                     Scalar(2) * (x4 * x4))) +
                          (Scalar(Rat(3, 2)) * s3) * (x4 * (x1 * x1 - x2 * x2)) +
                          (Scalar(3) * s3) * (x1 * x2 * x3);
    CHECK(p == expected);
    CHECK(isoparametric_check(p));
    CHECK(*check_einstein_polynomials(p, Metric::euclidean(5)) == Scalar(126));

    CodazziAlgebra a = from_cubic(p, Metric::euclidean(5));
    Vec assoc = a.associator(basis(5, 0), basis(5, 1), basis(5, 2));
    Vec expected_assoc(5, Scalar(0));
    expected_assoc[4] = Scalar(-27) * s3;
    expected_assoc[3] = Scalar(-27);
    CHECK(assoc == expected_assoc);
    CHECK(a.inner(assoc, basis(5, 4)) == Scalar(-27) * s3);
  }
  SUBCASE("all four composition algebras pass the gradient identity") {
    for (int m : {1, 2, 4, 8}) {
      Polynomial p = isoparametric_cubic(m);
      CHECK(isoparametric_check(p));
    }
    CHECK(*check_einstein_polynomials(isoparametric_cubic(2), Metric::euclidean(8)) ==
          Scalar(180));
  }
}

TEST_CASE("Nahm of a noncompact algebra") {
  CodazziAlgebra a = nahm(sl2r());
  CHECK(a.h.pos > 0);
  CHECK(a.h.neg > 0);
  CHECK(a.h.pos + a.h.neg == 9);
  CHECK(a.is_special());
}

TEST_CASE("construction guards") {
  // Non-symmetric multiplication is rejected.
  Metric d2 = Metric::euclidean(2);
  auto bad = [](int i, int j) {
    Vec r(2, Scalar(0));
    if (i == 0 && j == 0) r[1] = Scalar(1);
    return r;
  };
  CHECK_THROWS_AS(algebra_from_multiplication(d2, bad), std::invalid_argument);

  // Jacobi failure is rejected.
  CHECK_THROWS_AS(LieAlgebraData(3, {{0, 1, 2, Scalar(1)},
                                     {1, 2, 0, Scalar(1)},
                                     {2, 0, 0, Scalar(1)}}),
                  std::invalid_argument);
}
