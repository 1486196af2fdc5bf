// JSON input schemas (1-based indices throughout) for polynomials, metrics,
// symmetric tensors, commutative algebras, Lie algebra data and numeric jets,
// plus the certificate type emitted by the command-line tool.  Certificates
// rendered in exact mode are deterministic byte-for-byte.
#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "ahlab/codazzi.hpp"
#include "ahlab/curvature.hpp"

namespace ahlab {

using Json = nlohmann::json;

// Parses a file; throws std::runtime_error naming the file and position on
// malformed JSON.
Json load_json_file(const std::string& path);

// A scalar is a JSON integer or a string in the exact-literal grammar,
// e.g. "3/2*sqrt(3)" or "-1/2+sqrt(2)".
Scalar scalar_from_json(const Json& j);

// {"n": 3, "monomials": [{"exponents": [3, 0, 0], "coeff": "1"}, ...]}
Polynomial polynomial_from_json(const Json& j);

// Array of n rows of n scalars.
Metric metric_from_json(const Json& j);

// {"n": 3, "rank": 3, "entries": [{"index": [1, 1, 2], "value": "1"}, ...]}
SymTensor symtensor_from_json(const Json& j);

// Either {"metric": ..., "cubic": <polynomial>} or
// {"metric": ..., "mu": <symtensor>}; "metric" may be omitted for the
// Euclidean metric of the matching dimension.
CodazziAlgebra algebra_from_json(const Json& j);

// {"n": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "value": "1/2*sqrt(2)"}]}
LieAlgebraData lie_from_json(const Json& j);

// Array of n scalars.
Vec vec_from_json(const Json& j, int n);

// Numeric jet: either the closed-form sample
//   {"orthant": {"n": 3, "point": [1, 1, 1], "step": 1e-4}}
// or explicit float arrays {"n", "h", "dh", "d2h", "L", "dL"} with the
// layouts of JetData.
JetData jet_from_json(const Json& j);

// ---- Certificates ----------------------------------------------------------

struct CheckResult {
  std::string name;
  std::string lhs, rhs;  // rendered values
  bool ok = false;
};

struct Certificate {
  std::string subject;
  bool float_mode = false;
  double tol = 0.0;
  double elapsed = 0.0;  // seconds; serialized only in float mode
  std::vector<CheckResult> checks;

  bool passed() const;
  Json to_json() const;
  // One line per check plus a verdict, for --pretty output.
  std::string pretty() const;
};

// Helpers used when assembling certificates.  Exact scalar comparisons
// become tolerance comparisons of double values in float mode.
struct CheckContext {
  bool float_mode = false;
  double tol = 1e-9;

  CheckResult scalar_check(const std::string& name, const Scalar& lhs, const Scalar& rhs) const;
  CheckResult bool_check(const std::string& name, bool got, bool want = true) const;
  // Always tolerance-based, independent of mode.
  CheckResult float_check(const std::string& name, double lhs, double rhs, double tolerance) const;
};

}  // namespace ahlab
