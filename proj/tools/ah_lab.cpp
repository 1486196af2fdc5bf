// Command-line driver: runs the built-in certificate catalog or verifies
// user-supplied polynomials, algebras, left-invariant structures and jets.
#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "ahlab/catalog.hpp"

using namespace ahlab;

namespace {

int emit(const std::vector<Certificate>& certs, bool pretty) {
  bool all_ok = true;
  if (pretty) {
    for (const auto& c : certs) {
      std::cout << c.pretty();
      all_ok = all_ok && c.passed();
    }
  } else {
    Json out = Json::array();
    for (const auto& c : certs) {
      out.push_back(c.to_json());
      all_ok = all_ok && c.passed();
    }
    std::cout << out.dump(2) << "\n";
  }
  return all_ok ? 0 : 1;
}

int emit(const Certificate& cert, bool pretty) {
  return emit(std::vector<Certificate>{cert}, pretty);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificate tool for cubic algebras, invariant structures and jets"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable output instead of JSON");
  app.fallthrough();

  std::string mode = "exact";
  double tol = 1e-9;

  // catalog
  auto* cat = app.add_subcommand("catalog", "Run the built-in example catalog");
  std::string only_tag;
  cat->add_option("--only", only_tag, "Run only entries carrying this tag");
  cat->add_option("--mode", mode, "exact (default) or float")
      ->check(CLI::IsMember({"exact", "float"}));
  cat->add_option("--tol", tol, "Float-mode tolerance");
  bool list_only = false;
  cat->add_flag("--list", list_only, "List entry ids and tags without running");

  // verify-polynomial
  auto* vp = app.add_subcommand("verify-polynomial",
                                "Check the Hessian-norm proportionality of a cubic");
  std::string vp_file;
  vp->add_option("file", vp_file, "JSON input")->required();

  // algebra
  auto* alg = app.add_subcommand("algebra", "Check properties of a commutative algebra");
  std::string alg_file;
  std::vector<std::string> alg_checks;
  alg->add_option("file", alg_file, "JSON input")->required();
  alg->add_option("--check", alg_checks,
                  "Any of: einstein, special, conf-assoc, assoc (default: all)");

  // lie
  auto* lie = app.add_subcommand("lie", "Curvature of a left-invariant structure");
  std::string lie_arg;
  lie->add_option("name", lie_arg, "Built-in name (so3, su2-scaled, sl2r, sl2-standard) or file")
      ->required();
  bool use_s3 = false;
  std::string t_str = "0";
  std::string nilp_file;
  lie->add_flag("--s3", use_s3, "Use the one-parameter round-sphere torsion family");
  lie->add_option("--t", t_str, "Family parameter (exact scalar literal)");
  lie->add_option("--nilpotent", nilp_file,
                  "JSON file with an sl2-triple {\"e\", \"f\", \"ht\"}");

  // jet
  auto* jet = app.add_subcommand("jet", "Finite-difference curvature of a metric/torsion jet");
  std::string jet_file;
  jet->add_option("file", jet_file, "JSON input")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cat->parsed()) {
      if (list_only) {
        for (const auto& e : catalog_entries()) {
          std::cout << e.id;
          for (const auto& t : e.tags) std::cout << " #" << t;
          std::cout << "\n";
        }
        return 0;
      }
      CatalogOptions opts;
      opts.only_tag = only_tag;
      opts.float_mode = (mode == "float");
      opts.tol = tol;
      if (!only_tag.empty()) {
        bool known = false;
        for (const auto& e : catalog_entries())
          for (const auto& t : e.tags) known = known || t == only_tag;
        if (!known) {
          std::cerr << "unknown tag: " << only_tag << "\n";
          return 2;
        }
      }
      return emit(run_catalog(opts), pretty);
    }
    CheckContext ctx;  // exact mode for the file-driven subcommands
    if (vp->parsed()) {
      Json j = load_json_file(vp_file);
      Polynomial p = polynomial_from_json(j.contains("polynomial") ? j["polynomial"] : j);
      Metric h = j.contains("metric") ? metric_from_json(j["metric"]) : Metric::euclidean(p.dim());
      return emit(certify_polynomial(p, h, vp_file, ctx), pretty);
    }
    if (alg->parsed()) {
      CodazziAlgebra a = algebra_from_json(load_json_file(alg_file));
      return emit(certify_algebra(a, alg_checks, alg_file, ctx), pretty);
    }
    if (lie->parsed()) {
      LieAlgebraData data = [&]() {
        try {
          return builtin_lie(lie_arg);
        } catch (const std::invalid_argument&) {
          return lie_from_json(load_json_file(lie_arg));
        }
      }();
      if (!nilp_file.empty()) {
        Json j = load_json_file(nilp_file);
        NilpotentStructure ns =
            nilpotent_structure(data, vec_from_json(j.at("e"), data.n),
                                vec_from_json(j.at("f"), data.n), vec_from_json(j.at("ht"), data.n));
        return emit(certify_invariant(ns.s, lie_arg + "+nilpotent", ctx), pretty);
      }
      if (use_s3) {
        if (lie_arg != "so3" && lie_arg != "su2-scaled") {
          std::cerr << "error: --s3 applies to the so3/su2-scaled built-in only\n";
          return 2;
        }
        InvariantAH s = s3_family(Scalar::parse(t_str));
        return emit(certify_invariant(s, lie_arg + " s3 t=" + t_str, ctx), pretty);
      }
      SymTensor zero(data.n, 3);
      return emit(certify_invariant(InvariantAH(data, zero), lie_arg, ctx), pretty);
    }
    if (jet->parsed()) {
      JetData data = jet_from_json(load_json_file(jet_file));
      return emit(certify_jet(data, jet_file, CheckContext{true, 1e-6}), pretty);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
