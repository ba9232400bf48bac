#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "nnrec/linalg.hpp"
#include "nnrec/lp.hpp"
#include "nnrec/rng.hpp"

namespace nnrec::testing {

inline Matrix make_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    int m = static_cast<int>(rows.size());
    int n = static_cast<int>(rows.begin()->size());
    Matrix A = Matrix::zeros(Field::real, m, n);
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (double x : row) A(r, c++) = x;
        ++r;
    }
    return A;
}

inline Matrix make_cmatrix(std::initializer_list<std::initializer_list<std::complex<double>>> rows) {
    int m = static_cast<int>(rows.size());
    int n = static_cast<int>(rows.begin()->size());
    Matrix A = Matrix::zeros(Field::cplx, m, n);
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (auto z : row) A.set(r, c++, z);
        ++r;
    }
    return A;
}

inline Vector make_vector(std::initializer_list<double> entries) {
    return Vector::from(std::vector<double>(entries));
}

inline Matrix random_matrix(Rng& rng, int m, int n, double scale = 1.0) {
    Matrix A = Matrix::zeros(Field::real, m, n);
    for (double& x : A.data) x = scale * rng.gaussian();
    return A;
}

inline Matrix random_cmatrix(Rng& rng, int m, int n, double scale = 1.0) {
    Matrix A = Matrix::zeros(Field::cplx, m, n);
    for (double& x : A.data) x = scale * rng.gaussian();
    return A;
}

inline Vector random_vector(Rng& rng, int n, double scale = 1.0) {
    Vector v = Vector::zeros(Field::real, n);
    for (double& x : v.data) x = scale * rng.gaussian();
    return v;
}

// Seeded random LP with integer-ish coefficients in [-3, 3], d <= 5,
// <= 8 rows, sized to stay inside the vertex_oracle guard.
inline LpProblem random_lp(Rng& rng) {
    int d = 1 + rng.uniform_int(5);
    LpProblem p(d);
    for (int j = 0; j < d; ++j) {
        p.objective[j] = rng.uniform_int(7) - 3;
        p.set_bounds(j, 0.0, lp_inf);
    }
    int rows = 1 + rng.uniform_int(std::min(8, 14 - d));
    for (int r = 0; r < rows; ++r) {
        std::vector<double> a(d);
        for (int j = 0; j < d; ++j) a[j] = rng.uniform_int(7) - 3;
        double b = rng.uniform_int(7) - 3;
        if (r == 0 && rng.uniform_int(4) == 0)
            p.add_eq(a, b);
        else
            p.add_le(a, b);
    }
    return p;
}

inline bool lp_feasible(const LpProblem& p, const std::vector<double>& w, double tol) {
    for (const auto& r : p.eq_rows) {
        double lhs = 0.0;
        for (int j = 0; j < p.num_vars; ++j) lhs += r.coeff[j] * w[j];
        if (std::fabs(lhs - r.rhs) > tol) return false;
    }
    for (const auto& r : p.le_rows) {
        double lhs = 0.0;
        for (int j = 0; j < p.num_vars; ++j) lhs += r.coeff[j] * w[j];
        if (lhs - r.rhs > tol) return false;
    }
    for (int j = 0; j < p.num_vars; ++j)
        if (w[j] < p.lower[j] - tol || w[j] > p.upper[j] + tol) return false;
    return true;
}

}  // namespace nnrec::testing
