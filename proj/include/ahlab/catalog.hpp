// Built-in catalog of worked examples: every named cubic, algebra,
// left-invariant structure, polynomial torsion field, jet sample and Kato
// spot check, each producing a certificate.  Entries carry tags for
// filtering and can run in parallel; output order is by subject id.
#pragma once

#include <string>
#include <vector>

#include "ahlab/json_io.hpp"
#include "ahlab/lie.hpp"

namespace ahlab {

struct CatalogOptions {
  std::string only_tag;    // run only entries carrying this tag; empty = all
  bool float_mode = false;
  double tol = 1e-9;
  int threads = 0;  // 0: AH_LAB_THREADS or hardware concurrency
};

struct CatalogEntry {
  std::string id;
  std::vector<std::string> tags;
};

// The entry list (sorted by id), for --only validation and listings.
std::vector<CatalogEntry> catalog_entries();

// Runs the catalog and returns certificates sorted by subject id.
std::vector<Certificate> run_catalog(const CatalogOptions& opts);

// Certificate builders shared with the file-driven CLI subcommands.
Certificate certify_polynomial(const Polynomial& p, const Metric& h, const std::string& subject,
                               const CheckContext& ctx);
Certificate certify_algebra(const CodazziAlgebra& a, const std::vector<std::string>& which,
                            const std::string& subject, const CheckContext& ctx);
Certificate certify_invariant(const InvariantAH& s, const std::string& subject,
                              const CheckContext& ctx);
Certificate certify_jet(const JetData& jet, const std::string& subject, const CheckContext& ctx);

}  // namespace ahlab
