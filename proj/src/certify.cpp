#include "nnrec/certify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "nnrec/lp.hpp"
#include "nnrec/rng.hpp"

namespace nnrec {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

struct AlphaTask {
    int support_index = 0;
    int n = 0;
    int sign = +1;
};

std::vector<std::vector<int>> all_supports(int N, int S) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(S);
    for (int i = 0; i < S; ++i) cur[i] = i;
    if (S == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(cur);
        int k = S - 1;
        while (k >= 0 && cur[k] == N - S + k) --k;
        if (k < 0) break;
        ++cur[k];
        for (int j = k + 1; j < S; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// alpha_1 / alpha_2 of the verifiability decomposition: minimize ||Av||
// over the box -1 <= v <= 1 with v_n pinned to `sign` and v_i >= 0 off the
// support. Always feasible (v = sign * e_n).
double alpha_lp(const Matrix& A, const std::vector<int>& T, int n, int sign, Norm rnorm) {
    const int N = A.cols, M = A.rows;
    const int nslack = rnorm == Norm::linf ? 1 : M;
    LpProblem p(N + nslack);
    for (int m = 0; m < M; ++m) {
        int t = rnorm == Norm::linf ? N : N + m;
        std::vector<double> up(p.num_vars, 0.0), dn(p.num_vars, 0.0);
        for (int c = 0; c < N; ++c) {
            up[c] = A(m, c);
            dn[c] = -A(m, c);
        }
        up[t] = -1.0;
        dn[t] = -1.0;
        p.add_le(std::move(up), 0.0);
        p.add_le(std::move(dn), 0.0);
    }
    for (int c = 0; c < N; ++c) {
        bool in_T = std::binary_search(T.begin(), T.end(), c);
        p.set_bounds(c, in_T ? -1.0 : 0.0, 1.0);
    }
    p.set_bounds(n, static_cast<double>(sign), static_cast<double>(sign));
    for (int k = 0; k < nslack; ++k) {
        p.set_bounds(N + k, 0.0, lp_inf);
        p.objective[N + k] = 1.0;
    }
    LpSolution sol = solve(p);
    if (sol.status != LpStatus::optimal) {
        std::string ts;
        for (int c : T) ts += (ts.empty() ? "" : ",") + std::to_string(c);
        throw std::runtime_error("tau_exact: alpha LP not optimal at T={" + ts +
                                 "}, n=" + std::to_string(n) +
                                 ", sign=" + (sign > 0 ? "+" : "-"));
    }
    double v = 0.0;
    for (int k = 0; k < nslack; ++k) v += sol.point[N + k];
    return v;
}

long long guarded_task_count(int N, int S, long long max_problems) {
    long long supports = 1;
    for (int i = 1; i <= S; ++i) supports = supports * (N - S + i) / i;
    long long tasks = supports * (N + S);
    require(tasks <= max_problems, "tau_exact: C(N,S)(N+S) above the size guard");
    return tasks;
}

CertifyReport reduce_tasks(int S, Norm rnorm, const std::vector<std::vector<int>>& supports,
                           const std::vector<AlphaTask>& tasks,
                           const std::vector<double>& values, bool keep_table) {
    CertifyReport rep;
    rep.S = S;
    rep.rnorm = rnorm;
    rep.lp_count = static_cast<long long>(tasks.size());
    int best = 0;
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[best]) best = static_cast<int>(i);
    rep.tau = values.empty() ? 0.0 : values[best];
    if (!tasks.empty()) {
        rep.witness.T = Support(supports[tasks[best].support_index]);
        rep.witness.n = tasks[best].n;
        rep.witness.sign = tasks[best].sign;
    }
    if (keep_table) {
        rep.alpha_table.reserve(tasks.size());
        for (size_t i = 0; i < tasks.size(); ++i)
            rep.alpha_table.push_back({Support(supports[tasks[i].support_index]), tasks[i].n,
                                       tasks[i].sign, values[i]});
    }
    return rep;
}

std::vector<AlphaTask> build_tasks(int N, const std::vector<std::vector<int>>& supports) {
    std::vector<AlphaTask> tasks;
    for (int ti = 0; ti < static_cast<int>(supports.size()); ++ti) {
        for (int n = 0; n < N; ++n) tasks.push_back({ti, n, +1});
        for (int n : supports[ti]) tasks.push_back({ti, n, -1});
    }
    return tasks;
}

// kappa is exact for the sup norm; for l1 it is a sampled lower bound,
// which still dominates the exact tau. The verdict always compares
// against the exact sup-norm constant.
CertifyReport finish_report(const Matrix& A, int S, CertifyReport rep, double rel_tol) {
    double kappa_inf = kappa_exact_inf(A, S);
    rep.kappa = rep.rnorm == Norm::l1 ? kappa_sample(A, S, 2048, 1, Norm::l1) : kappa_inf;
    rep.verdict = rep.tau > rel_tol * kappa_inf;
    return rep;
}

}  // namespace

CertifyReport tau_exact(const Matrix& A, int S, Norm rnorm, const TauOptions& opts) {
    require(A.field == Field::real, "tau_exact: real matrix expected (realify first)");
    require(S >= 0 && S <= A.cols, "tau_exact: S in [0, N]");
    guarded_task_count(A.cols, S, opts.max_problems);

    auto supports = all_supports(A.cols, S);
    auto tasks = build_tasks(A.cols, supports);
    std::vector<double> values(tasks.size());

    // exceptions may not escape the parallel region; capture and rethrow
    const int T = static_cast<int>(tasks.size());
    std::exception_ptr fault = nullptr;
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (int i = 0; i < T; ++i) {
        try {
            values[i] = alpha_lp(A, supports[tasks[i].support_index], tasks[i].n,
                                 tasks[i].sign, rnorm);
        } catch (...) {
#pragma omp critical
            if (!fault) fault = std::current_exception();
            values[i] = 0.0;
        }
    }
    if (fault) std::rethrow_exception(fault);

    return finish_report(A, S, reduce_tasks(S, rnorm, supports, tasks, values, opts.alpha_table),
                         opts.rel_tol);
}

CertifyReport tau_exact_serial(const Matrix& A, int S, Norm rnorm, bool alpha_table) {
    require(A.field == Field::real, "tau_exact: real matrix expected (realify first)");
    require(S >= 0 && S <= A.cols, "tau_exact: S in [0, N]");
    guarded_task_count(A.cols, S, 1000000);

    auto supports = all_supports(A.cols, S);
    auto tasks = build_tasks(A.cols, supports);
    std::vector<double> values(tasks.size());
    for (size_t i = 0; i < tasks.size(); ++i)
        values[i] = alpha_lp(A, supports[tasks[i].support_index], tasks[i].n,
                             tasks[i].sign, rnorm);

    return finish_report(A, S, reduce_tasks(S, rnorm, supports, tasks, values, alpha_table),
                         1e-7);
}

double kappa_exact_inf(const Matrix& A, int S) {
    require(A.field == Field::real, "kappa_exact_inf: real matrix expected");
    require(S >= 0 && S <= A.cols, "kappa_exact_inf: S in [0, N]");
    double best = 0.0;
    std::vector<double> unfavorable;
    for (int m = 0; m < A.rows; ++m) {
        for (int polarity : {+1, -1}) {
            double favorable = 0.0;
            unfavorable.clear();
            for (int n = 0; n < A.cols; ++n) {
                double a = polarity * A(m, n);
                if (a > 0.0)
                    favorable += a;
                else if (a < 0.0)
                    unfavorable.push_back(-a);
            }
            std::sort(unfavorable.begin(), unfavorable.end(), std::greater<double>());
            double total = favorable;
            for (int k = 0; k < S && k < static_cast<int>(unfavorable.size()); ++k)
                total += unfavorable[k];
            best = std::max(best, total);
        }
    }
    return best;
}

namespace {

// One random direction with at most S negative entries, sup norm 1.
Vector sample_direction(Rng& rng, int N, int S) {
    std::vector<int> T = rng.sample_support(N, S);
    Vector v = Vector::zeros(Field::real, N);
    double peak = 0.0;
    for (int n = 0; n < N; ++n) {
        double g = rng.gaussian();
        bool in_T = std::binary_search(T.begin(), T.end(), n);
        v[n] = in_T ? g : std::fabs(g);
        peak = std::max(peak, std::fabs(v[n]));
    }
    if (peak == 0.0) {
        v[0] = 1.0;
        peak = 1.0;
    }
    for (int n = 0; n < N; ++n) v[n] /= peak;
    return v;
}

}  // namespace

double kappa_sample(const Matrix& A, int S, int trials, std::uint64_t seed, Norm rnorm) {
    require(A.field == Field::real, "kappa_sample: real matrix expected");
    require(trials >= 1, "kappa_sample: trials >= 1");
    Rng rng(seed);
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        Vector v = sample_direction(rng, A.cols, S);
        best = std::max(best, vec_norm(matvec(A, v), rnorm));
    }
    return best;
}

double tau_sample(const Matrix& A, int S, int trials, std::uint64_t seed, Norm rnorm,
                  const std::vector<Vector>* forced) {
    require(A.field == Field::real, "tau_sample: real matrix expected");
    require(trials >= 1, "tau_sample: trials >= 1");
    Rng rng(seed);
    double best = lp_inf;
    auto consider = [&](const Vector& v) {
        double scale = vec_norm(v, Norm::linf);
        if (scale <= 0.0) return;
        best = std::min(best, vec_norm(matvec(A, v), rnorm) / scale);
    };
    if (forced)
        for (const Vector& v : *forced) consider(v);
    for (int t = 0; t < trials; ++t) consider(sample_direction(rng, A.cols, S));
    return best;
}

CertifyReport signed_kernel_check(const Matrix& A, int S, Norm rnorm, double rel_tol,
                                  const TauOptions& opts) {
    Matrix R = A.field == Field::cplx ? realify(A) : A;
    TauOptions local = opts;
    local.rel_tol = rel_tol;
    return tau_exact(R, S, rnorm, local);
}

BoundResult complexity_bound(int S, int M, int N, double q, Field field) {
    require(S >= 1 && M >= 1 && N >= 1, "complexity_bound: S, M, N >= 1");
    require(q >= 1.0, "complexity_bound: q >= 1");
    if (N <= 4 * S) return {lp_inf, true};
    double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    double c = field == Field::real ? 2.0 : 4.0;
    double expo = static_cast<double>(S) / (c * M) * std::log(static_cast<double>(N) / (4.0 * S));
    double value = 2.0 * std::pow(2.0 / 3.0, inv_q) / (std::exp(expo) - 1.0);
    return {value, false};
}

SearchResult matrix_search(int M, int N, int S, int iters, std::uint64_t seed, Norm rnorm) {
    require(M >= 1 && N >= 1 && iters >= 0, "matrix_search: bad parameters");
    Rng rng(seed);

    auto gaussian_matrix = [&]() {
        Matrix A = Matrix::zeros(Field::real, M, N);
        for (double& x : A.data) x = rng.gaussian();
        return A;
    };
    auto normalize = [&](Matrix& A) -> bool {
        double k = kappa_exact_inf(A, S);
        if (k < 1e-12) return false;
        for (double& x : A.data) x /= k;
        return true;
    };

    Matrix A = gaussian_matrix();
    while (!normalize(A)) A = gaussian_matrix();

    SearchResult res;
    res.iters = iters;
    double tau_best = tau_exact(A, S, rnorm).tau;
    res.trace.push_back(tau_best);

    double step = 0.25;
    int rejections = 0;
    for (int it = 0; it < iters; ++it) {
        Matrix cand = A;
        for (double& x : cand.data) x += step * rng.gaussian();
        if (!normalize(cand)) {
            ++rejections;
        } else {
            double t = tau_exact(cand, S, rnorm).tau;
            if (t > tau_best) {
                A = cand;
                tau_best = t;
                res.trace.push_back(t);
                ++res.accepts;
                rejections = 0;
                continue;
            }
            ++rejections;
        }
        if (rejections >= 20) {
            step *= 0.5;
            rejections = 0;
        }
    }
    res.best = A;
    return res;
}

}  // namespace nnrec
