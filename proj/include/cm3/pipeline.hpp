#pragma once

#include <string>

#include "json.hpp"

namespace cm3 {

// Everything the driver needs besides the bundle path.  vanish_exp = 0
// means "half the working precision".  The characteristic action applied
// to the Mumford eta map is gamma itself by default; use_gamma_star
// switches to the dual action gamma*.  For the Gamma_{1,2} elements the
// table produces the two agree on characteristic classes mod 2, and the
// driver asserts that on all 35 table entries before processing.
struct PipelineConfig {
    long bits = 200;
    int b0 = 4;
    int bmax = 64;
    long vanish_exp = 0;
    int maxdeg = 12;
    bool verify = false;
    bool dump_theta = false;
    bool use_gamma_star = false;
    std::string gamma_table_path;  // empty: built-in orbit table
};

// Machine-readable run report.  `doc` carries the full JSON document
// (schema described in docs/report_schema.md, versioned via the
// schema_version field); module_errors counts candidates whose
// processing raised an error.  Reports from identical bundle + config
// are byte-identical except for the elapsed_seconds field.
struct RunReport {
    nlohmann::ordered_json doc;
    int module_errors = 0;

    std::string str() const { return doc.dump(2) + "\n"; }
};

// Orchestrates the full flow over one bundle: CM-type classes times
// polarization candidates, each through period matrix, theta table,
// classification, and - when hyperelliptic - the Rosenhain invariants,
// recognized minimal polynomials, Thomae consistency defect, and the
// optional finite-field verification.  Every candidate appears in the
// report; a module error in one candidate is recorded with provenance
// and processing continues with the rest.  Throws only for errors that
// prevent the run as a whole (unreadable bundle, bad configuration).
RunReport run_pipeline(const std::string& bundle_path,
                       const PipelineConfig& config);

}  // namespace cm3
