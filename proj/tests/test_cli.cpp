#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ahlab/catalog.hpp"

using namespace ahlab;

namespace {

Vec basis(int n, int i) {
  Vec v(n, Scalar(0));
  v[i] = Scalar(1);
  return v;
}

}  // namespace

TEST_CASE("scalar JSON forms: integers and exact literals") {
  CHECK(scalar_from_json(Json(7)) == Scalar(7));
  CHECK(scalar_from_json(Json(-3)) == Scalar(-3));
  CHECK(scalar_from_json(Json("3/2*sqrt(3)")) == Scalar::root(Rat(3, 2), 3));
  CHECK(scalar_from_json(Json("-1/2+sqrt(2)")) ==
        Scalar(Rat(-1, 2)) + Scalar::root(Rat(1), 2));
  CHECK_THROWS_AS(scalar_from_json(Json("sqrt(")), std::runtime_error);
  CHECK_THROWS_AS(scalar_from_json(Json(1.5)), std::runtime_error);  // floats are not exact
}

TEST_CASE("polynomial JSON round trip") {
  Json j = {{"n", 3},
            {"monomials",
             {{{"exponents", {2, 0, 1}}, {"coeff", "3"}},
              {{"exponents", {0, 2, 1}}, {"coeff", "-3"}}}}};
  Polynomial p = polynomial_from_json(j);
  CHECK(p.dim() == 3);
  CHECK(p.is_homogeneous(3));
  Polynomial x1 = Polynomial::variable(3, 0), x2 = Polynomial::variable(3, 1),
             x3 = Polynomial::variable(3, 2);
  CHECK(p == Scalar(3) * (x3 * (x1 * x1 - x2 * x2)));
  CHECK_THROWS_AS(polynomial_from_json(Json{{"n", 3}, {"monomials", {{{"exponents", {1, 1}},
                                                                      {"coeff", "1"}}}}}),
                  std::runtime_error);
}

TEST_CASE("metric, tensor, Lie and vector JSON use 1-based indices") {
  Metric h = metric_from_json(Json::parse(R"([["1","0"],["0","-1"]])"));
  CHECK(h.g[1][1] == Scalar(-1));

  SymTensor t = symtensor_from_json(
      Json::parse(R"({"n": 2, "rank": 3, "entries": [{"index": [1, 1, 2], "value": "5"}]})"));
  CHECK(t.get({0, 0, 1}) == Scalar(5));
  CHECK_THROWS_AS(symtensor_from_json(Json::parse(
                      R"({"n": 2, "rank": 3, "entries": [{"index": [0, 1, 2], "value": "1"}]})")),
                  std::runtime_error);

  LieAlgebraData so3 = lie_from_json(Json::parse(
      R"({"n": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "value": "1"},
                               {"i": 2, "j": 3, "k": 1, "value": "1"},
                               {"i": 3, "j": 1, "k": 2, "value": "1"}]})"));
  Vec z = so3.bracket(basis(3, 0), basis(3, 1));
  CHECK(z[2] == Scalar(1));

  Vec v = vec_from_json(Json::parse(R"(["1", "-2", "0"])"), 3);
  CHECK(v[1] == Scalar(-2));
  CHECK_THROWS_AS(vec_from_json(Json::parse(R"(["1"])"), 3), std::runtime_error);
}

TEST_CASE("algebra JSON accepts a cubic or a structure tensor") {
  Json j = {{"cubic",
             {{"n", 2},
              {"monomials",
               {{{"exponents", {3, 0}}, {"coeff", "1/6"}},
                {{"exponents", {1, 2}}, {"coeff", "-1/2"}}}}}}};
  CodazziAlgebra a = algebra_from_json(j);
  CHECK(a.n == 2);
  REQUIRE(a.einstein_constant().has_value());
  CHECK(*a.einstein_constant() == Scalar(2));  // the two-variable harmonic cubic (1/6)(x1^3 - 3 x1 x2^2)
}

TEST_CASE("jet JSON: the closed-form octant sample matches its pinned values") {
  Json j = Json::parse(R"({"orthant": {"n": 3, "step": 1e-4}})");
  JetCurvatureReport rep = curvature_from_jet(jet_from_json(j));
  CHECK(rep.L_norm2 == doctest::Approx(24.0).epsilon(1e-6));
  CHECK(rep.scalar == doctest::Approx(-6.0).epsilon(1e-6));
  CHECK(std::abs(rep.consistency) < 1e-6);
}

TEST_CASE("certificates: status logic and byte-stable exact rendering") {
  CheckContext ctx;
  Certificate cert{"demo", false, 0.0};
  cert.checks.push_back(ctx.scalar_check("match", Scalar(2), Scalar(2)));
  CHECK(cert.passed());
  cert.checks.push_back(ctx.scalar_check("mismatch", Scalar(2), Scalar(3)));
  CHECK(!cert.passed());
  std::string once = cert.to_json().dump();
  std::string twice = cert.to_json().dump();
  CHECK(once == twice);
  CHECK(once.find("elapsed") == std::string::npos);
  CHECK(cert.to_json()["checks"][1]["status"] == "fail");

  // Float mode turns exact comparisons into tolerance comparisons.
  CheckContext fctx{true, 1e-9};
  CHECK(fctx.scalar_check("near", Scalar::root(Rat(1), 2), Scalar::root(Rat(1), 2)).ok);
  CHECK(fctx.float_check("tol", 1.0, 1.0 + 1e-10, 1e-9).ok);
  CHECK(!fctx.float_check("tol", 1.0, 1.1, 1e-9).ok);
}

TEST_CASE("catalog: tag filter, determinism and float-mode agreement") {
  CatalogOptions opts;
  opts.only_tag = "cartan";
  opts.threads = 2;
  std::vector<Certificate> certs = run_catalog(opts);
  REQUIRE(certs.size() == 4);
  CHECK(certs[0].subject == "cartan/m1");
  CHECK(certs[3].subject == "cartan/m8");
  for (const auto& c : certs) CHECK(c.passed());

  // Same subset serially: identical bytes.
  opts.threads = 1;
  std::vector<Certificate> again = run_catalog(opts);
  REQUIRE(again.size() == certs.size());
  for (size_t i = 0; i < certs.size(); ++i)
    CHECK(certs[i].to_json().dump() == again[i].to_json().dump());

  // Float mode reaches the same verdicts.
  opts.float_mode = true;
  opts.tol = 1e-9;
  for (const auto& c : run_catalog(opts)) CHECK(c.passed());
}

TEST_CASE("certificate builders reproduce the documented command examples") {
  CheckContext ctx;

  Certificate poly2 = certify_polynomial(cubic_r3_standard(), Metric::euclidean(3), "poly2", ctx);
  CHECK(poly2.passed());
  bool saw_kappa = false;
  for (const auto& c : poly2.checks)
    if (c.name == "kappa") {
      saw_kappa = true;
      CHECK(c.lhs == "54");
    }
  CHECK(saw_kappa);

  CodazziAlgebra poly3 = from_cubic(cubic_r4_complex(), Metric::euclidean(4));
  Certificate alg = certify_algebra(poly3, {"conf-assoc"}, "poly3", ctx);
  CHECK(!alg.passed());
  bool saw_probe = false;
  for (const auto& c : alg.checks)
    if (c.name.rfind("associator-probe", 0) == 0) {
      saw_probe = true;
      CHECK(c.name == "associator-probe (1,2,3,4)");
      CHECK(c.lhs == "-2");
      CHECK(c.rhs == "0");
    }
  CHECK(saw_probe);

  Certificate s3 = certify_invariant(s3_family(Scalar(1)), "so3 s3 t=1", ctx);
  CHECK(s3.passed());
  for (const auto& c : s3.checks)
    if (c.name == "scalar-curvature-identity") CHECK(c.lhs == "7/12");
}

TEST_CASE("malformed input files raise errors that name the file") {
  std::string path = "/tmp/ahlab_cli_bad input.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_WITH_AS(load_json_file("/tmp/ahlab_no_such_file.json"),
                       doctest::Contains("cannot open"), std::runtime_error);
  CHECK_THROWS_AS(load_json_file(path), std::runtime_error);
  std::remove(path.c_str());
}
