#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ahlab/symtensor.hpp"

using namespace ahlab;

namespace {

Rat binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rat r = 1;
  for (int i = 0; i < k; ++i) r = r * Rat(n - i) / Rat(i + 1);
  return r;
}

Polynomial parse_poly(int n, const std::vector<std::pair<std::vector<int>, const char*>>& monos) {
  Polynomial p(n);
  for (const auto& [e, c] : monos) p.add_monomial(e, Scalar::parse(c));
  return p;
}

SymTensor random_tensor(std::mt19937& rng, int n, int k) {
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  SymTensor t(n, k);
  for_each_sorted_index(n, k, [&](const Index& idx) { t.set(idx, Scalar(Rat(num(rng), den(rng)))); });
  return t;
}

Metric random_metric(std::mt19937& rng, int n) {
  // Diagonally dominant symmetric matrix: nondegenerate.
  std::uniform_int_distribution<long> off(-2, 2);
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m[i][j] = m[j][i] = Scalar(off(rng));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(4 * n);
  return Metric::from_matrix(std::move(m));
}

}  // namespace

TEST_CASE("tensor/polynomial correspondence") {
  // x1*x2*x3 -> value 1/6 on (1,2,3) (0-based (0,1,2)).
  Polynomial p = parse_poly(3, {{{1, 1, 1}, "1"}});
  SymTensor w = tensor_from_poly(p);
  CHECK(w.get({0, 1, 2}) == Scalar(Rat(1, 6)));
  CHECK(poly_from_tensor(w) == p);

  Metric d4 = Metric::euclidean(4);
  CHECK(tensor_from_poly(d4.quadratic()) == d4.tensor());

  std::mt19937 rng(1);
  for (int t = 0; t < 10; ++t) {
    SymTensor r = random_tensor(rng, 4, 3);
    CHECK(tensor_from_poly(poly_from_tensor(r)) == r);
  }
  CHECK_THROWS_AS(tensor_from_poly(parse_poly(2, {{{1, 0}, "1"}, {{2, 0}, "1"}})), std::invalid_argument);
}

TEST_CASE("symmetrized product") {
  Metric d2 = Metric::euclidean(2);
  // x (.) x for a covector x = dx1.
  SymTensor x(2, 1);
  x.set({0}, Scalar(1));
  SymTensor xx = sym_product(x, x);
  CHECK(xx.get({0, 0}) == Scalar(1));
  CHECK(xx.get({0, 1}).is_zero());

  // h (.) h in n=2: component (1,1,2,2) = 1/3.
  SymTensor hh = sym_product(d2.tensor(), d2.tensor());
  CHECK(hh.get({0, 0, 1, 1}) == Scalar(Rat(1, 3)));

  // Oracle: P^{a(.)b} = P^a P^b.
  std::mt19937 rng(2);
  SymTensor a = random_tensor(rng, 3, 2), b = random_tensor(rng, 3, 3);
  CHECK(poly_from_tensor(sym_product(a, b)) == poly_from_tensor(a) * poly_from_tensor(b));

  // Associativity and commutativity.
  SymTensor c = random_tensor(rng, 3, 1);
  CHECK(sym_product(sym_product(a, b), c) == sym_product(a, sym_product(b, c)));
  CHECK(sym_product(a, b) == sym_product(b, a));
}

TEST_CASE("trace") {
  Metric d3 = Metric::euclidean(3);
  CHECK(trace(d3.tensor(), d3).get({}) == Scalar(3));

  // trace of tensor_from_poly(x^3 - 3 x y^2) = 0 (harmonic polynomial).
  Polynomial p = parse_poly(2, {{{3, 0}, "1"}, {{1, 2}, "-3"}});
  CHECK(trace(tensor_from_poly(p), Metric::euclidean(2)).is_zero());

  // Commutation of trace with multiplication by h (random rank-3 alpha):
  // C(k+2,2) tr(h (.) a) = C(k,2) h (.) tr(a) + (n+2k) a.
  std::mt19937 rng(3);
  for (int t = 0; t < 5; ++t) {
    int n = 3, k = 3;
    Metric h = random_metric(rng, n);
    SymTensor a = random_tensor(rng, n, k);
    SymTensor lhs = Scalar(binom(k + 2, 2)) * trace(sym_product(h.tensor(), a), h);
    SymTensor rhs = Scalar(binom(k, 2)) * sym_product(h.tensor(), trace(a, h)) + Scalar(n + 2 * k) * a;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("trace-free projection") {
  Metric d2 = Metric::euclidean(2);
  CHECK(trace_free(d2.tensor(), d2).is_zero());

  std::mt19937 rng(4);
  Metric h3 = random_metric(rng, 3);
  SymTensor a = random_tensor(rng, 3, 2);
  CHECK(trace_free(sym_product(h3.tensor(), a), h3).is_zero());

  // tf of x^3 in n=2 corresponds to the harmonic part (1/4)(x^3 - 3 x y^2).
  Polynomial x3 = parse_poly(2, {{{3, 0}, "1"}});
  Polynomial expect = parse_poly(2, {{{3, 0}, "1/4"}, {{1, 2}, "-3/4"}});
  CHECK(harmonic_part(x3, d2) == expect);
  CHECK(laplacian(harmonic_part(x3, d2), d2).is_zero());
  CHECK(poly_from_tensor(trace_free(tensor_from_poly(x3), d2)) == expect);

  // Idempotence and trace-freeness across ranks and dimensions.
  for (int n = 2; n <= 5; ++n) {
    Metric h = random_metric(rng, n);
    for (int k = 2; k <= (n <= 3 ? 5 : 4); ++k) {
      SymTensor w = random_tensor(rng, n, k);
      SymTensor tf = trace_free(w, h);
      CHECK(trace(tf, h).is_zero());
      CHECK(trace_free(tf, h) == tf);
      // w - tf(w) is in the ideal generated by h: its trace-free part is 0.
      CHECK(trace_free(w - tf, h).is_zero());
    }
  }
}

TEST_CASE("contractions") {
  std::mt19937 rng(5);
  Metric h = random_metric(rng, 3);
  SymTensor a = random_tensor(rng, 3, 2), b = random_tensor(rng, 3, 2);

  CHECK(con_contraction(a, b, 0, h) == sym_product(a, b));

  // con^k(w, w) = |w|^2.
  SymTensor w = random_tensor(rng, 3, 3);
  Scalar n2 = con_contraction(w, w, 3, h).get({});
  CHECK(n2 == norm2(w, h));
  CHECK(n2.sign() == Sign::positive);  // h is positive definite here

  // For trace-free a, b: 2^j C(k+l-2j, k-j) con^j(a,b) = C(k+l,k) tr^j(a (.) b).
  SymTensor ta = trace_free(a, h), tb = trace_free(b, h);
  int k = 2, l = 2;
  for (int j = 1; j <= 2; ++j) {
    SymTensor lhs = Scalar(Rat(Int(1) << j) * binom(k + l - 2 * j, k - j)) * con_contraction(ta, tb, j, h);
    SymTensor rhs = sym_product(ta, tb);
    for (int i = 0; i < j; ++i) rhs = trace(rhs, h);
    CHECK(lhs == Scalar(binom(k + l, k)) * rhs);
  }

  // Laplacian power identity for trace-free tensors:
  // (k-i)! (l-i)! Delta^i P^{a(.)b} = 2^i k! l! P^{con^i(a,b)}.
  auto fact = [](int m) {
    Rat r = 1;
    for (int i = 2; i <= m; ++i) r *= i;
    return r;
  };
  std::vector<std::pair<SymTensor, SymTensor>> pairs = {{ta, tb}};
  for (auto& [u, v] : pairs) {
    Polynomial p = poly_from_tensor(sym_product(u, v));
    for (int i = 1; i <= 2; ++i) {
      p = laplacian(poly_from_tensor(sym_product(u, v)), h);
      Polynomial lap = poly_from_tensor(sym_product(u, v));
      for (int r = 0; r < i; ++r) lap = laplacian(lap, h);
      Polynomial lhs = Scalar(fact(k - i) * fact(l - i)) * lap;
      Polynomial rhs = Scalar(Rat(Int(1) << i) * fact(k) * fact(l)) * poly_from_tensor(con_contraction(u, v, i, h));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("cartan product") {
  std::mt19937 rng(6);
  Metric h = Metric::euclidean(3);

  // Explicit rank-raising formula for a covector against trace-free omega:
  // (X (*) w)_{i1...ik+1} = X_(i1 w_i2...ik+1) - k/(n+2(k-1)) h_(i1i2 w_i3...)p X^p.
  SymTensor X = random_tensor(rng, 3, 1);
  SymTensor w = trace_free(random_tensor(rng, 3, 3), h);
  int n = 3, kk = 3;
  SymTensor lhs = cartan_product(X, w, h);
  SymTensor xw = sym_product(X, w);
  SymTensor xdotw = con_contraction(X, w, 1, h);  // w_{...p} X^p, symmetrized (rank 2)
  SymTensor rhs = xw - Scalar(Rat(kk, n + 2 * (kk - 1))) * sym_product(h.tensor(), xdotw);
  CHECK(lhs == rhs);

  // Commutativity, and agreement with brute-force tf((.)) on rank-1 inputs in n=2.
  Metric d2 = Metric::euclidean(2);
  SymTensor u = random_tensor(rng, 2, 1), v = random_tensor(rng, 2, 1);
  CHECK(cartan_product(u, v, d2) == cartan_product(v, u, d2));
  CHECK(cartan_product(u, v, d2) == trace_free(sym_product(u, v), d2));

  // tf(tf(a) (.) tf(b)) = tf(a (.) b).
  SymTensor a = random_tensor(rng, 3, 2), b = random_tensor(rng, 3, 2);
  CHECK(trace_free(sym_product(trace_free(a, h), trace_free(b, h)), h) ==
        trace_free(sym_product(a, b), h));

  CHECK_THROWS_AS(cartan_product(h.tensor(), w, h), std::invalid_argument);
}

TEST_CASE("sl2 operator relations") {
  // E(a) = -((k+1)/2) h (.) a, F(a) = (k/2) tr a, H(a) = (n/2 + k) a.
  std::mt19937 rng(7);
  for (int t = 0; t < 5; ++t) {
    int n = 3;
    Metric h = random_metric(rng, n);
    int k = 2 + (t % 2);
    SymTensor a = random_tensor(rng, n, k);
    auto E = [&](const SymTensor& u) {
      return Scalar(Rat(-(u.rank() + 1), 2)) * sym_product(h.tensor(), u);
    };
    auto F = [&](const SymTensor& u) { return Scalar(Rat(u.rank(), 2)) * trace(u, h); };
    auto H = [&](const SymTensor& u) { return Scalar(Rat(n, 2) + u.rank()) * u; };
    CHECK(E(F(a)) - F(E(a)) == H(a));
    CHECK(H(E(a)) - E(H(a)) == Scalar(2) * E(a));
    CHECK(H(F(a)) - F(H(a)) == Scalar(-2) * F(a));
  }
}

TEST_CASE("raise and lower") {
  std::mt19937 rng(8);
  Metric h = random_metric(rng, 3);
  SymTensor w = random_tensor(rng, 3, 3);
  CHECK(lower_all(raise_all(w, h), h) == w);

  // |w|^2 via raised contraction equals con^k(w, w).
  SymTensor up = raise_all(w, h);
  Scalar direct;
  for_each_sorted_index(3, 3, [&](const Index& idx) {
    direct += Scalar(Rat(arrangement_count(idx))) * w.get(idx) * up.get(idx);
  });
  CHECK(direct == norm2(w, h));

  // Lowering with a non-diagonal metric (Killing form of sl(2,R) in the basis
  // e, f, h~: B = [[0,4,0],[4,0,0],[0,0,8]]) matches the hand contraction.
  Metric killing = Metric::from_matrix({{Scalar(0), Scalar(4), Scalar(0)},
                                        {Scalar(4), Scalar(0), Scalar(0)},
                                        {Scalar(0), Scalar(0), Scalar(8)}});
  SymTensor v(3, 1);
  v.set({0}, Scalar(2));  // 2e
  v.set({2}, Scalar(1));  // + h~
  SymTensor low = lower_all(v, killing);
  CHECK(low.get({0}).is_zero());       // B(2e+h~, e) = 0
  CHECK(low.get({1}) == Scalar(8));    // B(2e+h~, f) = 2*4
  CHECK(low.get({2}) == Scalar(8));    // B(2e+h~, h~) = 8
}

TEST_CASE("metric bookkeeping") {
  Metric killing = Metric::from_matrix({{Scalar(0), Scalar(4), Scalar(0)},
                                        {Scalar(4), Scalar(0), Scalar(0)},
                                        {Scalar(0), Scalar(0), Scalar(8)}});
  CHECK(killing.pos == 2);
  CHECK(killing.neg == 1);
  CHECK(killing.det == Scalar(-128));
  // inverse * g = identity.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Scalar s;
      for (int p = 0; p < 3; ++p) s += killing.ginv[i][p] * killing.g[p][j];
      CHECK(s == (i == j ? Scalar(1) : Scalar()));
    }
  CHECK_THROWS_AS(Metric::from_matrix({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}}),
                  std::invalid_argument);
}
