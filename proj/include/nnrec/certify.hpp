#pragma once

#include <cstdint>
#include <vector>

#include "nnrec/linalg.hpp"

namespace nnrec {

struct Witness {
    Support T;
    int n = -1;
    int sign = +1;  // +1: entry pinned to 1, -1: pinned to -1 (n in T)
};

struct AlphaEntry {
    Support T;
    int n = 0;
    int sign = +1;
    double value = 0.0;
};

struct CertifyReport {
    int S = 0;
    Norm rnorm = Norm::linf;
    double tau = 0.0;
    double kappa = 0.0;  // exact for linf; sampled lower bound for l1
    Witness witness;
    bool verdict = false;  // tau > rel_tol * kappa_inf
    long long lp_count = 0;
    std::vector<AlphaEntry> alpha_table;  // filled on request
};

struct TauOptions {
    bool parallel = true;
    bool alpha_table = false;
    double rel_tol = 1e-7;
    long long max_problems = 1000000;
};

/// Exact robustness constant for the non-negative S-sparse recovery sets
/// (C = Sigma_S cap R+^N, F = R+^N, L = sup norm): the minimum of
/// C(N,S)(N+S) per-(support, coordinate, sign) LPs, with the attaining
/// witness. OpenMP-parallel over the independent LPs; the reduction is a
/// deterministic minimum in enumeration order.
CertifyReport tau_exact(const Matrix& A, int S, Norm rnorm, const TauOptions& opts = {});

/// Plain serial loop over the same LPs, kept as the reference for the
/// parallel kernel.
CertifyReport tau_exact_serial(const Matrix& A, int S, Norm rnorm, bool alpha_table = false);

/// Closed-form normalization constant for L = R = sup norm: per row and
/// polarity, the favorable-sign mass plus the S largest unfavorable
/// entries; vertex optimality over v in {-1,0,1}^N with <= S negatives.
double kappa_exact_inf(const Matrix& A, int S);

/// Monte-Carlo lower bound on kappa for other residual norms.
double kappa_sample(const Matrix& A, int S, int trials, std::uint64_t seed, Norm rnorm);

/// Signed-kernel verdict via tau of the (realified) matrix: true iff
/// tau > rel_tol * kappa.
CertifyReport signed_kernel_check(const Matrix& A, int S, Norm rnorm = Norm::linf,
                                  double rel_tol = 1e-7, const TauOptions& opts = {});

/// Monte-Carlo upper bound on tau: minimum of ||Av|| over sampled
/// directions with at most S negative entries, sup-normalized.
/// Deterministic per seed; `forced` directions are evaluated as well.
double tau_sample(const Matrix& A, int S, int trials, std::uint64_t seed, Norm rnorm,
                  const std::vector<Vector>* forced = nullptr);

struct BoundResult {
    double value = 0.0;
    bool vacuous = false;  // N <= 4S: no information, value = +inf
};

/// Dimension-only upper bound on tau/kappa: 2 (2/3)^(1/q)
/// (exp((S/cM) ln(N/4S)) - 1)^(-1) with c = 2 real, c = 4 complex.
BoundResult complexity_bound(int S, int M, int N, double q, Field field);

struct SearchResult {
    Matrix best;                // kappa-normalized
    std::vector<double> trace;  // non-decreasing tau values, start included
    int accepts = 0;
    int iters = 0;
};

/// Random hill climb for max tau subject to kappa = 1: Gaussian start,
/// entrywise Gaussian proposals with step halving after 20 consecutive
/// rejections, accept iff tau increases.
SearchResult matrix_search(int M, int N, int S, int iters, std::uint64_t seed, Norm rnorm);

}  // namespace nnrec
