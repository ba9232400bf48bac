#include "nnrec/lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace nnrec {

namespace {

// Pivots below kPivotTol are unusable: dividing by them amplifies
// roundoff past the feasibility tolerance within a few iterations.
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kDropTol = 1e-12;  // snap cancellation residue to exact zero
constexpr int kDegenerateTrip = 30;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// How an original variable maps onto non-negative tableau columns.
struct VarMap {
    enum Kind { fixed, shifted_lo, shifted_hi, split } kind = fixed;
    double offset = 0.0;  // fixed value / lower / upper
    int col = -1;
};

// Dense simplex tableau over non-negative columns. Artificial variables
// are implicit: basis[i] == -1 means row i is still carried by its
// artificial, which has no column and can never re-enter. obj holds the
// objective value of the phase currently being minimized.
struct Tableau {
    int ncols = 0;
    std::vector<std::vector<double>> row;  // row[i][0..ncols-1], rhs at [ncols]
    std::vector<int> basis;
    std::vector<double> cost;  // reduced costs
    double obj = 0.0;
    int iters = 0;
    bool bland = false;
    int stall = 0;

    int rows() const { return static_cast<int>(row.size()); }

    int leave_key(int i) const { return basis[i] >= 0 ? basis[i] : ncols + i; }

    void pivot(int r, int s) {
        double inv = 1.0 / row[r][s];
        for (double& x : row[r]) {
            x *= inv;
            if (std::fabs(x) <= kDropTol) x = 0.0;
        }
        row[r][s] = 1.0;
        for (int i = 0; i < rows(); ++i) {
            if (i == r) continue;
            double f = row[i][s];
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols; ++j) {
                row[i][j] -= f * row[r][j];
                if (std::fabs(row[i][j]) <= kDropTol) row[i][j] = 0.0;
            }
            row[i][s] = 0.0;
        }
        double cf = cost[s];
        if (cf != 0.0) {
            for (int j = 0; j < ncols; ++j) {
                cost[j] -= cf * row[r][j];
                if (std::fabs(cost[j]) <= kDropTol) cost[j] = 0.0;
            }
            cost[s] = 0.0;
            obj += cf * row[r][ncols];
        }
        basis[r] = s;
        ++iters;
    }

    LpStatus run(int max_iters) {
        std::vector<int> order;
        while (true) {
            order.clear();
            for (int j = 0; j < ncols; ++j)
                if (cost[j] < -kCostTol) order.push_back(j);
            if (order.empty()) return LpStatus::optimal;
            if (!bland)
                std::stable_sort(order.begin(), order.end(),
                                 [&](int a, int b) { return cost[a] < cost[b]; });

            // Take the first candidate with a usable pivot. A column that is
            // exactly non-positive certifies an improving feasible ray; one
            // whose positive entries all sit below the pivot floor is
            // numerically unusable and gets skipped.
            bool pivoted = false;
            for (int s : order) {
                // Ratio test. Ties resolve to the largest pivot entry for
                // stability, except in Bland mode where the smallest basic
                // index keeps the termination guarantee.
                int r = -1;
                double best_ratio = 0.0;
                for (int i = 0; i < rows(); ++i) {
                    if (row[i][s] <= kPivotTol) continue;
                    double ratio = row[i][ncols] / row[i][s];
                    if (r < 0) {
                        r = i;
                        best_ratio = ratio;
                        continue;
                    }
                    double tol = 1e-12 * (1.0 + std::fabs(best_ratio));
                    if (ratio < best_ratio - tol) {
                        r = i;
                        best_ratio = ratio;
                    } else if (ratio <= best_ratio + tol) {
                        bool take = bland ? leave_key(i) < leave_key(r)
                                          : row[i][s] > row[r][s];
                        if (take) {
                            r = i;
                            best_ratio = std::min(best_ratio, ratio);
                        }
                    }
                }
                if (r < 0) {
                    bool tiny_positive = false;
                    for (int i = 0; i < rows(); ++i)
                        if (row[i][s] > 0.0) {
                            tiny_positive = true;
                            break;
                        }
                    if (!tiny_positive) return LpStatus::unbounded;
                    continue;
                }
                if (iters >= max_iters) return LpStatus::iteration_limit;

                double before = obj;
                pivot(r, s);
                if (obj >= before - 1e-13 * (1.0 + std::fabs(before))) {
                    if (++stall >= kDegenerateTrip) bland = true;
                } else {
                    stall = 0;
                }
                pivoted = true;
                break;
            }
            // every improving column was numerically degenerate
            if (!pivoted) return LpStatus::iteration_limit;
        }
    }
};

}  // namespace

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
        case LpStatus::iteration_limit: return "iteration_limit";
    }
    return "?";
}

LpProblem::LpProblem(int d)
    : num_vars(d),
      objective(d, 0.0),
      lower(d, -lp_inf),
      upper(d, lp_inf) {}

void LpProblem::add_eq(std::vector<double> coeff, double rhs) {
    eq_rows.push_back({std::move(coeff), rhs});
}

void LpProblem::add_le(std::vector<double> coeff, double rhs) {
    le_rows.push_back({std::move(coeff), rhs});
}

void LpProblem::set_bounds(int var, double lo, double hi) {
    lower[var] = lo;
    upper[var] = hi;
}

void LpProblem::validate() const {
    require(num_vars >= 1, "LpProblem: needs at least one variable");
    require(static_cast<int>(objective.size()) == num_vars, "LpProblem: objective length");
    for (const auto* rows : {&eq_rows, &le_rows})
        for (const auto& r : *rows) {
            require(static_cast<int>(r.coeff.size()) == num_vars, "LpProblem: row length");
            require(std::isfinite(r.rhs), "LpProblem: rhs must be finite");
            for (double c : r.coeff) require(std::isfinite(c), "LpProblem: coefficient must be finite");
        }
    for (int j = 0; j < num_vars; ++j)
        require(lower[j] <= upper[j], "LpProblem: lower > upper");
}

LpSolution solve(const LpProblem& p, const LpOptions& opts) {
    p.validate();
    const int d = p.num_vars;

    std::vector<VarMap> vmap(d);
    int ncols = 0;
    std::vector<std::pair<int, double>> ub_rows;  // (column, upper - lower)
    for (int j = 0; j < d; ++j) {
        double lo = p.lower[j], hi = p.upper[j];
        if (lo == hi) {
            vmap[j] = {VarMap::fixed, lo, -1};
        } else if (std::isfinite(lo)) {
            vmap[j] = {VarMap::shifted_lo, lo, ncols++};
            if (std::isfinite(hi)) ub_rows.push_back({vmap[j].col, hi - lo});
        } else if (std::isfinite(hi)) {
            vmap[j] = {VarMap::shifted_hi, hi, ncols++};
        } else {
            vmap[j] = {VarMap::split, 0.0, ncols};
            ncols += 2;
        }
    }
    const int nstruct = ncols;

    // Standard form: each eq/le/upper-bound row over non-negative columns,
    // one slack per inequality.
    struct StdRow {
        std::vector<double> a;
        double b = 0.0;
        bool is_eq = false;
    };
    std::vector<StdRow> srows;
    auto substitute = [&](const LpRow& r, bool is_eq) {
        StdRow out;
        out.a.assign(nstruct, 0.0);
        out.b = r.rhs;
        out.is_eq = is_eq;
        for (int j = 0; j < d; ++j) {
            double c = r.coeff[j];
            if (c == 0.0) continue;
            switch (vmap[j].kind) {
                case VarMap::fixed: out.b -= c * vmap[j].offset; break;
                case VarMap::shifted_lo:
                    out.a[vmap[j].col] += c;
                    out.b -= c * vmap[j].offset;
                    break;
                case VarMap::shifted_hi:
                    out.a[vmap[j].col] -= c;
                    out.b -= c * vmap[j].offset;
                    break;
                case VarMap::split:
                    out.a[vmap[j].col] += c;
                    out.a[vmap[j].col + 1] -= c;
                    break;
            }
        }
        srows.push_back(std::move(out));
    };
    for (const auto& r : p.eq_rows) substitute(r, true);
    for (const auto& r : p.le_rows) substitute(r, false);
    for (const auto& [col, cap] : ub_rows) {
        StdRow out;
        out.a.assign(nstruct, 0.0);
        out.a[col] = 1.0;
        out.b = cap;
        srows.push_back(std::move(out));
    }

    const int R = static_cast<int>(srows.size());
    int nslack = 0;
    for (const auto& r : srows)
        if (!r.is_eq) ++nslack;

    Tableau t;
    t.ncols = nstruct + nslack;
    t.row.assign(R, std::vector<double>(t.ncols + 1, 0.0));
    t.basis.assign(R, -1);
    t.cost.assign(t.ncols, 0.0);

    int slack_at = nstruct;
    std::vector<int> art_rows;
    for (int i = 0; i < R; ++i) {
        double sign = srows[i].b < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < nstruct; ++j) t.row[i][j] = sign * srows[i].a[j];
        t.row[i][t.ncols] = sign * srows[i].b;
        if (!srows[i].is_eq) {
            t.row[i][slack_at] = sign;
            if (sign > 0.0)
                t.basis[i] = slack_at;  // slack starts basic
            else
                art_rows.push_back(i);
            ++slack_at;
        } else {
            art_rows.push_back(i);
        }
    }

    const int max_iters = opts.max_iters > 0 ? opts.max_iters : 50 * (d + R + 1);

    // Phase 1: minimize the sum of artificial values. Bland's rule
    // throughout: termination guaranteed, and the tiny feasibility
    // problems here do not profit from steepest descent.
    if (!art_rows.empty()) {
        for (int i : art_rows) {
            for (int j = 0; j < t.ncols; ++j) t.cost[j] -= t.row[i][j];
            t.obj += t.row[i][t.ncols];
        }
        t.bland = true;
        LpStatus st = t.run(max_iters);
        if (st != LpStatus::optimal) return {LpStatus::iteration_limit, {}, 0.0, t.iters};
        // basic artificials sit at their row's rhs, non-basic ones at zero
        double art_level = 0.0;
        for (int i = 0; i < t.rows(); ++i)
            if (t.basis[i] < 0) art_level += t.row[i][t.ncols];
        if (art_level > opts.feas_tol) return {LpStatus::infeasible, {}, 0.0, t.iters};

        // Artificials still basic sit at level ~0: pivot them out, or drop
        // the row when it has become redundant.
        for (int i = t.rows() - 1; i >= 0; --i) {
            if (t.basis[i] >= 0) continue;
            int s = -1;
            for (int j = 0; j < t.ncols; ++j)
                if (std::fabs(t.row[i][j]) > kPivotTol) {
                    s = j;
                    break;
                }
            if (s >= 0) {
                t.pivot(i, s);
            } else {
                t.row.erase(t.row.begin() + i);
                t.basis.erase(t.basis.begin() + i);
            }
        }
    }

    // Phase 2: reduced costs of the real objective under the current basis.
    std::vector<double> ccol(t.ncols, 0.0);
    for (int j = 0; j < d; ++j) {
        double c = p.objective[j];
        if (c == 0.0) continue;
        switch (vmap[j].kind) {
            case VarMap::fixed: break;
            case VarMap::shifted_lo: ccol[vmap[j].col] += c; break;
            case VarMap::shifted_hi: ccol[vmap[j].col] -= c; break;
            case VarMap::split:
                ccol[vmap[j].col] += c;
                ccol[vmap[j].col + 1] -= c;
                break;
        }
    }
    t.cost = ccol;
    t.obj = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
        int b = t.basis[i];
        if (b < 0 || ccol[b] == 0.0) continue;
        double cb = ccol[b];
        for (int j = 0; j < t.ncols; ++j) t.cost[j] -= cb * t.row[i][j];
        t.obj += cb * t.row[i][t.ncols];
    }
    t.stall = 0;
    t.bland = false;
    LpStatus st = t.run(max_iters);
    if (st != LpStatus::optimal) return {st, {}, 0.0, t.iters};

    std::vector<double> u(t.ncols, 0.0);
    for (int i = 0; i < t.rows(); ++i)
        if (t.basis[i] >= 0) u[t.basis[i]] = t.row[i][t.ncols];

    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.iterations = t.iters;
    sol.point.assign(d, 0.0);
    for (int j = 0; j < d; ++j) {
        switch (vmap[j].kind) {
            case VarMap::fixed: sol.point[j] = vmap[j].offset; break;
            case VarMap::shifted_lo: sol.point[j] = vmap[j].offset + u[vmap[j].col]; break;
            case VarMap::shifted_hi: sol.point[j] = vmap[j].offset - u[vmap[j].col]; break;
            case VarMap::split: sol.point[j] = u[vmap[j].col] - u[vmap[j].col + 1]; break;
        }
    }
    double obj = 0.0;
    for (int j = 0; j < d; ++j) obj += p.objective[j] * sol.point[j];
    sol.objective = obj;
    return sol;
}

LpSolution vertex_oracle(const LpProblem& p) {
    p.validate();
    const int d = p.num_vars;
    int finite_bounds = 0;
    for (int j = 0; j < d; ++j) {
        if (std::isfinite(p.lower[j])) ++finite_bounds;
        if (std::isfinite(p.upper[j])) ++finite_bounds;
    }
    int total = static_cast<int>(p.eq_rows.size() + p.le_rows.size()) + finite_bounds;
    require(d <= 6 && total <= 14, "vertex_oracle: size guard (d <= 6, rows + finite bounds <= 14)");

    struct Cons {
        std::vector<double> a;
        double b;
        bool is_eq;
        bool synthetic;
    };

    // Enumerate basic points inside a synthetic box; if the optimum leans
    // on the box, re-run with a larger box to separate "unbounded" from
    // "optimal at a large vertex".
    auto run_with_box = [&](double big, double& best_obj, std::vector<double>& best_x,
                            bool& box_active) -> bool {
        std::vector<Cons> pool;
        for (const auto& r : p.eq_rows) pool.push_back({r.coeff, r.rhs, true, false});
        for (const auto& r : p.le_rows) pool.push_back({r.coeff, r.rhs, false, false});
        for (int j = 0; j < d; ++j) {
            std::vector<double> a(d, 0.0);
            a[j] = -1.0;
            if (std::isfinite(p.lower[j]))
                pool.push_back({a, -p.lower[j], false, false});
            else
                pool.push_back({a, big, false, true});
            a[j] = 1.0;
            if (std::isfinite(p.upper[j]))
                pool.push_back({a, p.upper[j], false, false});
            else
                pool.push_back({a, big, false, true});
        }
        const int P = static_cast<int>(pool.size());

        bool found = false;
        best_obj = 0.0;
        box_active = false;

        std::vector<int> pick(d);
        std::vector<std::vector<double>> M(d, std::vector<double>(d + 1));
        auto try_subset = [&]() {
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) M[i][j] = pool[pick[i]].a[j];
                M[i][d] = pool[pick[i]].b;
            }
            for (int c = 0; c < d; ++c) {
                int piv = c;
                for (int r = c + 1; r < d; ++r)
                    if (std::fabs(M[r][c]) > std::fabs(M[piv][c])) piv = r;
                if (std::fabs(M[piv][c]) < 1e-11) return;
                std::swap(M[c], M[piv]);
                for (int r = 0; r < d; ++r) {
                    if (r == c) continue;
                    double f = M[r][c] / M[c][c];
                    if (f == 0.0) continue;
                    for (int k = c; k <= d; ++k) M[r][k] -= f * M[c][k];
                }
            }
            std::vector<double> x(d);
            for (int c = 0; c < d; ++c) x[c] = M[c][d] / M[c][c];
            for (const auto& cons : pool) {
                double lhs = 0.0;
                for (int j = 0; j < d; ++j) lhs += cons.a[j] * x[j];
                double slack = lhs - cons.b;
                double tol = 1e-7 * (1.0 + std::fabs(cons.b));
                if (cons.is_eq ? std::fabs(slack) > tol : slack > tol) return;
            }
            double obj = 0.0;
            for (int j = 0; j < d; ++j) obj += p.objective[j] * x[j];
            if (!found || obj < best_obj - 1e-12 * (1.0 + std::fabs(best_obj))) {
                found = true;
                best_obj = obj;
                best_x = x;
                box_active = false;
                for (int i = 0; i < d; ++i)
                    if (pool[pick[i]].synthetic) box_active = true;
            }
        };

        std::vector<int> stack;
        stack.reserve(d);
        std::function<void(int)> rec = [&](int from) {
            if (static_cast<int>(stack.size()) == d) {
                for (int i = 0; i < d; ++i) pick[i] = stack[i];
                try_subset();
                return;
            }
            int need = d - static_cast<int>(stack.size());
            for (int i = from; i + need <= P; ++i) {
                stack.push_back(i);
                rec(i + 1);
                stack.pop_back();
            }
        };
        rec(0);
        return found;
    };

    double obj1 = 0.0;
    std::vector<double> x1;
    bool box1 = false;
    if (!run_with_box(1e6, obj1, x1, box1)) return {LpStatus::infeasible, {}, 0.0, 0};
    if (box1) {
        double obj2 = 0.0;
        std::vector<double> x2;
        bool box2 = false;
        run_with_box(4e6, obj2, x2, box2);
        if (obj2 < obj1 - 1e-6 * (1.0 + std::fabs(obj1)))
            return {LpStatus::unbounded, {}, 0.0, 0};
    }
    return {LpStatus::optimal, x1, obj1, 0};
}

}  // namespace nnrec
