#include "ahlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ahlab {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error(where + ": " + what);
}

int index1(const Json& j, const std::string& where, int n) {
  if (!j.is_number_integer()) fail(where, "index must be an integer");
  int v = j.get<int>();
  if (v < 1 || v > n) fail(where, "index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
  return v - 1;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(path, e.what());
  }
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(Rat(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      fail("scalar", e.what());
    }
  }
  fail("scalar", "expected an integer or an exact-literal string");
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("monomials"))
    fail("polynomial", "expected {\"n\", \"monomials\"}");
  int n = j.at("n").get<int>();
  if (n <= 0) fail("polynomial", "n must be positive");
  Polynomial p(n);
  for (const auto& m : j.at("monomials")) {
    const auto& ex = m.at("exponents");
    if ((int)ex.size() != n) fail("polynomial", "exponent vector length must equal n");
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) {
      e[i] = ex[i].get<int>();
      if (e[i] < 0) fail("polynomial", "negative exponent");
    }
    p.add_monomial(e, scalar_from_json(m.at("coeff")));
  }
  return p;
}

Metric metric_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("metric", "expected a nonempty array of rows");
  int n = (int)j.size();
  std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i) {
    if ((int)j[i].size() != n) fail("metric", "row length mismatch");
    for (int k = 0; k < n; ++k) g[i][k] = scalar_from_json(j[i][k]);
  }
  return Metric::from_matrix(std::move(g));
}

SymTensor symtensor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rank") || !j.contains("entries"))
    fail("tensor", "expected {\"n\", \"rank\", \"entries\"}");
  int n = j.at("n").get<int>();
  int rank = j.at("rank").get<int>();
  if (n <= 0 || rank < 0) fail("tensor", "invalid dimensions");
  SymTensor t(n, rank);
  for (const auto& e : j.at("entries")) {
    const auto& ix = e.at("index");
    if ((int)ix.size() != rank) fail("tensor", "index length must equal rank");
    Index idx(rank);
    for (int i = 0; i < rank; ++i) idx[i] = index1(ix[i], "tensor", n);
    t.add(idx, scalar_from_json(e.at("value")));
  }
  return t;
}

CodazziAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object()) fail("algebra", "expected an object");
  bool has_cubic = j.contains("cubic"), has_mu = j.contains("mu");
  if (has_cubic == has_mu) fail("algebra", "exactly one of \"cubic\" or \"mu\" is required");
  if (has_cubic) {
    Polynomial p = polynomial_from_json(j.at("cubic"));
    Metric h = j.contains("metric") ? metric_from_json(j.at("metric"))
                                    : Metric::euclidean(p.dim());
    return from_cubic(p, h);
  }
  SymTensor mu = symtensor_from_json(j.at("mu"));
  if (mu.rank() != 3) fail("algebra", "mu must have rank 3");
  Metric h = j.contains("metric") ? metric_from_json(j.at("metric")) : Metric::euclidean(mu.dim());
  return CodazziAlgebra(std::move(h), std::move(mu));
}

LieAlgebraData lie_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("brackets"))
    fail("lie", "expected {\"n\", \"brackets\"}");
  int n = j.at("n").get<int>();
  if (n <= 0) fail("lie", "n must be positive");
  std::vector<std::tuple<int, int, int, Scalar>> entries;
  for (const auto& b : j.at("brackets"))
    entries.emplace_back(index1(b.at("i"), "lie", n), index1(b.at("j"), "lie", n),
                         index1(b.at("k"), "lie", n), scalar_from_json(b.at("value")));
  return LieAlgebraData(n, entries);
}

Vec vec_from_json(const Json& j, int n) {
  if (!j.is_array() || (int)j.size() != n) fail("vector", "expected an array of length " + std::to_string(n));
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = scalar_from_json(j[i]);
  return v;
}

namespace {

template <typename T>
void read_nested(const Json& j, T& out, const std::string& where);

template <>
void read_nested(const Json& j, double& out, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  out = j.get<double>();
}

template <typename T>
void read_nested(const Json& j, std::vector<T>& out, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  out.resize(j.size());
  for (size_t i = 0; i < j.size(); ++i) read_nested(j[i], out[i], where);
}

}  // namespace

JetData jet_from_json(const Json& j) {
  if (j.contains("orthant")) {
    const Json& o = j.at("orthant");
    int n = o.at("n").get<int>();
    if (n < 2) fail("jet", "orthant dimension must be at least 2");
    std::vector<double> point(n, 1.0);
    if (o.contains("point")) read_nested(o.at("point"), point, "jet.orthant.point");
    if ((int)point.size() != n) fail("jet", "point length must equal n");
    for (double x : point)
      if (x <= 0) fail("jet", "orthant points must have positive coordinates");
    double step = o.value("step", 1e-4);
    auto metric = [n](const std::vector<double>& x) {
      std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
      double c = n + 1.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          h[i][k] = -1.0 / (c * c * x[i] * x[k]);
          if (i == k) h[i][k] += 1.0 / (c * x[i] * x[i]);
        }
      return h;
    };
    auto gamma = [n](const std::vector<double>& x) {
      std::vector<double> g(n);
      for (int i = 0; i < n; ++i) g[i] = -1.0 / ((n + 1.0) * x[i]);
      return g;
    };
    return numeric_jet(n, metric, gamma, point, step);
  }
  JetData jet;
  jet.n = j.at("n").get<int>();
  read_nested(j.at("h"), jet.h, "jet.h");
  read_nested(j.at("dh"), jet.dh, "jet.dh");
  read_nested(j.at("d2h"), jet.d2h, "jet.d2h");
  read_nested(j.at("L"), jet.L, "jet.L");
  read_nested(j.at("dL"), jet.dL, "jet.dL");
  if (j.contains("gamma")) read_nested(j.at("gamma"), jet.gamma, "jet.gamma");
  if (j.contains("dgamma")) read_nested(j.at("dgamma"), jet.dgamma, "jet.dgamma");
  return jet;
}

// ---- Certificates ----------------------------------------------------------

bool Certificate::passed() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

Json Certificate::to_json() const {
  Json out;
  out["subject"] = subject;
  out["mode"] = float_mode ? "float" : "exact";
  // elapsed is reported in --pretty output only; keeping it out of the JSON
  // makes reports byte-stable run to run.
  if (float_mode) out["tol"] = tol;
  out["status"] = passed() ? "pass" : "fail";
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json jc;
    jc["name"] = c.name;
    jc["status"] = c.ok ? "pass" : "fail";
    jc["lhs"] = c.lhs;
    jc["rhs"] = c.rhs;
    arr.push_back(std::move(jc));
  }
  out["checks"] = std::move(arr);
  return out;
}

std::string Certificate::pretty() const {
  std::ostringstream os;
  os << subject << " [" << (float_mode ? "float" : "exact") << "] "
     << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : checks)
    os << "  " << (c.ok ? "pass" : "FAIL") << "  " << c.name << ": " << c.lhs << " vs " << c.rhs
       << "\n";
  return os.str();
}

CheckResult CheckContext::scalar_check(const std::string& name, const Scalar& lhs,
                                       const Scalar& rhs) const {
  CheckResult r;
  r.name = name;
  if (float_mode) {
    double a = lhs.to_double(), b = rhs.to_double();
    r.lhs = fmt_double(a);
    r.rhs = fmt_double(b);
    r.ok = std::fabs(a - b) <= tol;
  } else {
    r.lhs = lhs.to_string();
    r.rhs = rhs.to_string();
    r.ok = lhs == rhs;
  }
  return r;
}

CheckResult CheckContext::bool_check(const std::string& name, bool got, bool want) const {
  return {name, got ? "true" : "false", want ? "true" : "false", got == want};
}

CheckResult CheckContext::float_check(const std::string& name, double lhs, double rhs,
                                      double tolerance) const {
  return {name, fmt_double(lhs), fmt_double(rhs), std::fabs(lhs - rhs) <= tolerance};
}

}  // namespace ahlab
