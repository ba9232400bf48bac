#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nnrec/construct.hpp"
#include "nnrec/linalg.hpp"

namespace nnrec {

/// One recovery/robustness/stability campaign. Exactly one of
/// `construction` / `matrix_path` selects the measurement matrix; complex
/// matrices are realified before decoding and certification.
struct ExperimentConfig {
    std::optional<ConstructionSpec> construction;
    std::string matrix_path;

    int S = 0;
    std::vector<std::string> decoders;  // subset of nnlr_inf, nnlr_l1, nnbp, l0
    int trials = 1;
    double lo = 0.1;
    double hi = 1.0;
    std::vector<double> noise;  // sup-norm levels of e
    double tail = 0.0;          // off-support plateau for stability runs
    std::uint64_t seed = 0;
    std::string out;

    void validate() const;
};

/// Parse the JSON config document; unknown keys are rejected.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Random size-S support, entries uniform in [lo, hi]. Deterministic per seed.
Vector gen_sparse_signal(int N, int S, std::uint64_t seed, double lo, double hi);

/// Random direction scaled so that ||e||_rnorm == eps exactly.
Vector gen_noise(int M, double eps, std::uint64_t seed, Norm rnorm);

struct TrialRecord {
    int trial = 0;
    std::vector<int> support;
    double eps = 0.0;
    std::string decoder;
    double err_inf = 0.0;
    double residual = 0.0;
    double tau = 0.0;
    double kappa = 0.0;
    double bound = 0.0;
    bool recovered = false;
    bool violation = false;  // bound failure on a certified matrix
    std::string status;
    double ms = 0.0;
};

struct SuiteResult {
    std::vector<TrialRecord> records;
    double tau_inf = 0.0;
    double tau_l1 = 0.0;  // only when nnlr_l1 requested
    double kappa = 0.0;
    bool verdict = false;
    int violations = 0;
};

/// Certify once, then sweep supports x trials x noise levels x decoders.
/// Per-trial seeds derive from (seed, trial index), so records are
/// schedule-independent.
SuiteResult run_recovery_suite(const ExperimentConfig& cfg, bool parallel = true);

/// Fixed-schema CSV. Timing is opt-in: the ms column is left empty by
/// default so that equal configs give byte-identical bodies.
std::string csv_body(const SuiteResult& result, bool timing = false);
void write_csv(const std::string& path, const SuiteResult& result, bool timing = false);

}  // namespace nnrec
