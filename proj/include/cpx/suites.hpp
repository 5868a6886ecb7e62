#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace cpx {

/// Knobs shared by all verification suites. Tolerances default to the
/// project acceptance values and are pinned in code, not calibrated.
struct SuiteConfig {
    int n = 2;
    int ell = 2;
    std::uint64_t seed = 42;
    int samples = 50;
    int geodesics = 100;
    int fields = 20;
    int quad_N = 512;
    int trials = 200;

    double tol_curvature = 1e-8;
    double tol_energy = 1e-9;
    double tol_segment = 1e-9;
    double tol_complex = 1e-7;
    double tol_coeff_match = 1e-10;
    double tol_lemma = 1e-10;
    double tol_flat = 1e-9;
    double tol_holonomy = 1e-7;
    double tol_curv_u = 1e-8;
    double tol_curv_w = 1e-8;
    double tol_split_comm = 1e-8;
    double tol_row1 = 1e-8;
    double tol_row2_x = 1e-7;
    double tol_criterion = 1e-9;
    double witness_threshold = 0.4;  // frozen: the projected insertion of g
                                     // has sup-norm 1/2 at any frame

    void validate() const;  // throws std::invalid_argument on bad values
};

struct SuiteReport {
    std::string suite;
    std::string anchor;  // stable id of the identity being checked
    bool pass = false;
    double max_residual = 0.0;
    std::uint64_t seed = 0;
    nlohmann::ordered_json details;  // deterministic extras
    double runtime_seconds = 0.0;    // excluded from the determinism contract

    nlohmann::ordered_json to_json(bool with_timing) const;
};

std::vector<std::string> suite_names();

/// Run one named suite (or "all"); throws std::invalid_argument for an
/// unknown name.
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace cpx
