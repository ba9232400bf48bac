#pragma once

#include <optional>
#include <string>

#include "nnrec/linalg.hpp"
#include "nnrec/lp.hpp"

namespace nnrec {

struct DecodeResult {
    Vector estimate;            // real, entrywise >= 0 (up to feas_tol, clamped)
    double residual_norm = 0.0; // ||A x# - y|| in the decoder's norm
    std::string decoder;
    LpStatus status = LpStatus::iteration_limit;
    int iterations = 0;
};

/// Non-negative least residual: x# minimizing ||A z - y|| over z >= 0,
/// cast as an LP with one slack (sup norm) or M slacks (l1 norm).
DecodeResult nnlr(const Matrix& A, const Vector& y, Norm rnorm);

/// Complex data handled by realification; the effective residual norm on
/// C^M is v -> max(||Re v||_inf, ||Im v||_inf).
DecodeResult nnlr_complex(const Matrix& A, const Vector& y);

/// min sum(z) subject to A z = y, z >= 0. Returns status infeasible when y
/// has no non-negative preimage.
DecodeResult nn_basis_pursuit(const Matrix& A, const Vector& y);

struct L0Options {
    bool nonneg = true;
    bool parallel = true;
    long long max_supports = 100000;
};

/// Brute force over all size-S supports; per support the residual LP with
/// off-support entries pinned to zero. Ties resolve to the
/// lexicographically smallest support.
DecodeResult l0_bruteforce(const Matrix& A, const Vector& y, int S, Norm rnorm,
                           const L0Options& opts = {});

/// v with A^T v = all-ones, when it exists.
std::optional<Vector> ones_certificate(const Matrix& A);

}  // namespace nnrec
