#include "nnrec/decode.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace nnrec {

namespace {

constexpr double kFeasTol = 1e-9;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

Norm check_rnorm(Norm rnorm) {
    require(rnorm == Norm::linf || rnorm == Norm::l1, "residual norm must be linf or l1");
    return rnorm;
}

Vector clamp_nonneg(const std::vector<double>& z, int n) {
    Vector x = Vector::zeros(Field::real, n);
    for (int i = 0; i < n; ++i) {
        if (z[i] < -kFeasTol)
            throw std::runtime_error("decoder returned an estimate below -feas_tol");
        x[i] = std::max(z[i], 0.0);
    }
    return x;
}

double residual(const Matrix& A, const Vector& x, const Vector& y, Norm rnorm) {
    Vector r = matvec(A, x);
    for (int m = 0; m < r.len; ++m) r[m] -= y[m];
    return vec_norm(r, rnorm);
}

// min ||A z - y||_rnorm over z >= 0, optionally restricted to a support.
// Pass support = nullptr for the full problem. When `nonneg` is false the
// on-support entries are free.
LpSolution residual_lp(const Matrix& A, const Vector& y, Norm rnorm,
                       const Support* support, bool nonneg) {
    const int N = A.cols, M = A.rows;
    const int nslack = rnorm == Norm::linf ? 1 : M;
    LpProblem p(N + nslack);
    for (int m = 0; m < M; ++m) {
        int t = rnorm == Norm::linf ? N : N + m;
        std::vector<double> up(p.num_vars, 0.0), dn(p.num_vars, 0.0);
        for (int n = 0; n < N; ++n) {
            up[n] = A(m, n);
            dn[n] = -A(m, n);
        }
        up[t] = -1.0;
        dn[t] = -1.0;
        p.add_le(std::move(up), y[m]);
        p.add_le(std::move(dn), -y[m]);
    }
    for (int n = 0; n < N; ++n) {
        if (support && !support->contains(n))
            p.set_bounds(n, 0.0, 0.0);
        else
            p.set_bounds(n, nonneg ? 0.0 : -lp_inf, lp_inf);
    }
    for (int k = 0; k < nslack; ++k) {
        p.set_bounds(N + k, 0.0, lp_inf);
        p.objective[N + k] = 1.0;
    }
    return solve(p);
}

DecodeResult from_lp(const Matrix& A, const Vector& y, Norm rnorm,
                     const LpSolution& sol, std::string tag) {
    DecodeResult out;
    out.decoder = std::move(tag);
    out.status = sol.status;
    out.iterations = sol.iterations;
    if (sol.status != LpStatus::optimal) {
        out.estimate = Vector::zeros(Field::real, A.cols);
        return out;
    }
    out.estimate = clamp_nonneg({sol.point.begin(), sol.point.begin() + A.cols}, A.cols);
    out.residual_norm = residual(A, out.estimate, y, rnorm);
    return out;
}

}  // namespace

DecodeResult nnlr(const Matrix& A, const Vector& y, Norm rnorm) {
    require(A.field == Field::real && y.field == Field::real, "nnlr: real inputs expected");
    require(A.rows == y.len, "nnlr: dimension mismatch");
    check_rnorm(rnorm);
    LpSolution sol = residual_lp(A, y, rnorm, nullptr, true);
    if (sol.status == LpStatus::infeasible || sol.status == LpStatus::unbounded)
        throw std::runtime_error("nnlr: internal fault, residual LP must be solvable");
    return from_lp(A, y, rnorm, sol, rnorm == Norm::linf ? "nnlr_inf" : "nnlr_l1");
}

DecodeResult nnlr_complex(const Matrix& A, const Vector& y) {
    require(A.field == Field::cplx && y.field == Field::cplx, "nnlr_complex: complex inputs");
    require(A.rows == y.len, "nnlr_complex: dimension mismatch");
    Matrix B = realify(A);
    Vector yr = Vector::zeros(Field::real, 2 * A.rows);
    for (int m = 0; m < A.rows; ++m) {
        yr[m] = y.at(m).real();
        yr[A.rows + m] = y.at(m).imag();
    }
    DecodeResult out = nnlr(B, yr, Norm::linf);
    out.decoder = "nnlr_complex";
    return out;
}

DecodeResult nn_basis_pursuit(const Matrix& A, const Vector& y) {
    require(A.field == Field::real && y.field == Field::real, "nn_basis_pursuit: real inputs");
    require(A.rows == y.len, "nn_basis_pursuit: dimension mismatch");
    const int N = A.cols;
    LpProblem p(N);
    for (int m = 0; m < A.rows; ++m) {
        std::vector<double> row(N);
        for (int n = 0; n < N; ++n) row[n] = A(m, n);
        p.add_eq(std::move(row), y[m]);
    }
    for (int n = 0; n < N; ++n) {
        p.set_bounds(n, 0.0, lp_inf);
        p.objective[n] = 1.0;  // ||z||_1 on z >= 0
    }
    LpSolution sol = solve(p);
    return from_lp(A, y, Norm::linf, sol, "nnbp");
}

DecodeResult l0_bruteforce(const Matrix& A, const Vector& y, int S, Norm rnorm,
                           const L0Options& opts) {
    require(A.field == Field::real && y.field == Field::real, "l0_bruteforce: real inputs");
    require(A.rows == y.len, "l0_bruteforce: dimension mismatch");
    require(S >= 0 && S <= A.cols, "l0_bruteforce: S in [0, N]");
    check_rnorm(rnorm);
    const int N = A.cols;

    if (S == 0) {
        DecodeResult out;
        out.decoder = "l0";
        out.status = LpStatus::optimal;
        out.estimate = Vector::zeros(Field::real, N);
        out.residual_norm = vec_norm(y, rnorm);
        return out;
    }

    long long count = 1;
    for (int i = 1; i <= S; ++i) count = count * (N - S + i) / i;
    require(count <= opts.max_supports, "l0_bruteforce: C(N,S) above the size guard");

    // Lexicographic support list; index order is the tie-break order.
    std::vector<std::vector<int>> supports;
    supports.reserve(static_cast<size_t>(count));
    std::vector<int> cur(S);
    for (int i = 0; i < S; ++i) cur[i] = i;
    while (true) {
        supports.push_back(cur);
        int k = S - 1;
        while (k >= 0 && cur[k] == N - S + k) --k;
        if (k < 0) break;
        ++cur[k];
        for (int j = k + 1; j < S; ++j) cur[j] = cur[j - 1] + 1;
    }

    const int T = static_cast<int>(supports.size());
    std::vector<LpSolution> sols(T);
    std::exception_ptr fault = nullptr;
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (int i = 0; i < T; ++i) {
        try {
            Support sup(supports[i]);
            sols[i] = residual_lp(A, y, rnorm, &sup, opts.nonneg);
        } catch (...) {
#pragma omp critical
            if (!fault) fault = std::current_exception();
        }
    }
    if (fault) std::rethrow_exception(fault);

    int best = -1;
    int iters = 0;
    for (int i = 0; i < T; ++i) {
        if (sols[i].status != LpStatus::optimal)
            throw std::runtime_error("l0_bruteforce: residual LP failed on a support");
        iters += sols[i].iterations;
        if (best < 0 || sols[i].objective < sols[best].objective) best = i;
        // exact tie keeps the earlier (lexicographically smaller) support
    }

    DecodeResult out;
    out.decoder = "l0";
    out.status = LpStatus::optimal;
    out.iterations = iters;
    std::vector<double> z(sols[best].point.begin(), sols[best].point.begin() + N);
    if (!opts.nonneg) {
        out.estimate = Vector::from(z);
    } else {
        out.estimate = clamp_nonneg(z, N);
    }
    out.residual_norm = residual(A, out.estimate, y, rnorm);
    return out;
}

std::optional<Vector> ones_certificate(const Matrix& A) {
    require(A.field == Field::real, "ones_certificate: real matrix expected");
    const int M = A.rows, N = A.cols;
    LpProblem p(M);  // v free, A^T v = 1
    for (int n = 0; n < N; ++n) {
        std::vector<double> row(M);
        for (int m = 0; m < M; ++m) row[m] = A(m, n);
        p.add_eq(std::move(row), 1.0);
    }
    LpSolution sol = solve(p);
    if (sol.status == LpStatus::infeasible) return std::nullopt;
    if (sol.status != LpStatus::optimal)
        throw std::runtime_error("ones_certificate: LP fault");
    return Vector::from(sol.point);
}

}  // namespace nnrec
