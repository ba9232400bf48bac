#pragma once

#include <limits>
#include <string>
#include <vector>

namespace nnrec {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

std::string to_string(LpStatus s);

constexpr double lp_inf = std::numeric_limits<double>::infinity();

struct LpRow {
    std::vector<double> coeff;
    double rhs = 0.0;
};

/// min objective . w  subject to  eq_rows (coeff . w = rhs),
/// le_rows (coeff . w <= rhs) and per-variable bounds.
struct LpProblem {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<LpRow> eq_rows;
    std::vector<LpRow> le_rows;
    std::vector<double> lower;  // -inf allowed
    std::vector<double> upper;  // +inf allowed

    explicit LpProblem(int d = 0);

    void add_eq(std::vector<double> coeff, double rhs);
    void add_le(std::vector<double> coeff, double rhs);
    void set_bounds(int var, double lo, double hi);

    void validate() const;
};

struct LpSolution {
    LpStatus status = LpStatus::iteration_limit;
    std::vector<double> point;  // present iff optimal
    double objective = 0.0;
    int iterations = 0;
};

struct LpOptions {
    double feas_tol = 1e-9;
    int max_iters = 0;  // 0 -> 50 * (vars + rows)
};

/// Two-phase primal simplex on a dense tableau. Bounded variables are
/// shifted (and split when free) into the non-negative standard form;
/// Bland's rule takes over once a degeneracy counter trips, so the
/// iteration always terminates. Fully deterministic.
LpSolution solve(const LpProblem& p, const LpOptions& opts = {});

/// Exact reference by enumeration of all basic points formed by num_vars
/// active constraints. Guarded to num_vars <= 6 and rows + finite bounds
/// <= 14. Same status semantics as solve.
LpSolution vertex_oracle(const LpProblem& p);

}  // namespace nnrec
