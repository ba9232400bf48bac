#include "nnrec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nnrec {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// %.17g round-trips IEEE754 doubles exactly.
void print_entry(std::ostream& os, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
}

}  // namespace

Matrix Matrix::zeros(Field f, int rows, int cols) {
    require(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
    Matrix A;
    A.field = f;
    A.rows = rows;
    A.cols = cols;
    A.data.assign(static_cast<size_t>(rows) * cols * A.span(), 0.0);
    return A;
}

double& Matrix::operator()(int r, int c) {
    require(field == Field::real, "scalar accessor is for real matrices");
    return data[static_cast<size_t>(r) * cols + c];
}

double Matrix::operator()(int r, int c) const {
    require(field == Field::real, "scalar accessor is for real matrices");
    return data[static_cast<size_t>(r) * cols + c];
}

std::complex<double> Matrix::at(int r, int c) const {
    size_t base = (static_cast<size_t>(r) * cols + c) * span();
    if (field == Field::real) return {data[base], 0.0};
    return {data[base], data[base + 1]};
}

void Matrix::set(int r, int c, std::complex<double> z) {
    size_t base = (static_cast<size_t>(r) * cols + c) * span();
    if (field == Field::real) {
        require(z.imag() == 0.0, "cannot store complex value in real matrix");
        data[base] = z.real();
    } else {
        data[base] = z.real();
        data[base + 1] = z.imag();
    }
}

bool Matrix::finite() const { return all_finite(data); }

Vector Vector::zeros(Field f, int len) {
    require(len >= 1, "vector length must be >= 1");
    Vector v;
    v.field = f;
    v.len = len;
    v.data.assign(static_cast<size_t>(len) * v.span(), 0.0);
    return v;
}

Vector Vector::from(std::vector<double> entries) {
    require(!entries.empty(), "vector length must be >= 1");
    Vector v;
    v.field = Field::real;
    v.len = static_cast<int>(entries.size());
    v.data = std::move(entries);
    return v;
}

double& Vector::operator[](int i) {
    require(field == Field::real, "scalar accessor is for real vectors");
    return data[static_cast<size_t>(i)];
}

double Vector::operator[](int i) const {
    require(field == Field::real, "scalar accessor is for real vectors");
    return data[static_cast<size_t>(i)];
}

std::complex<double> Vector::at(int i) const {
    size_t base = static_cast<size_t>(i) * span();
    if (field == Field::real) return {data[base], 0.0};
    return {data[base], data[base + 1]};
}

void Vector::set(int i, std::complex<double> z) {
    size_t base = static_cast<size_t>(i) * span();
    if (field == Field::real) {
        require(z.imag() == 0.0, "cannot store complex value in real vector");
        data[base] = z.real();
    } else {
        data[base] = z.real();
        data[base + 1] = z.imag();
    }
}

bool Vector::finite() const { return all_finite(data); }

Support::Support(std::vector<int> indices) : idx(std::move(indices)) {
    std::sort(idx.begin(), idx.end());
    for (size_t i = 0; i + 1 < idx.size(); ++i)
        require(idx[i] != idx[i + 1], "support indices must be duplicate-free");
    require(idx.empty() || idx.front() >= 0, "support index out of range");
}

bool Support::contains(int n) const {
    return std::binary_search(idx.begin(), idx.end(), n);
}

Vector matvec(const Matrix& A, const Vector& v) {
    require(A.cols == v.len, "matvec: dimension mismatch");
    require(!(A.field == Field::real && v.field == Field::cplx),
            "matvec: cannot multiply real matrix with complex vector");
    if (A.field == Field::real) {
        Vector out = Vector::zeros(Field::real, A.rows);
        for (int r = 0; r < A.rows; ++r) {
            double acc = 0.0;
            const double* row = &A.data[static_cast<size_t>(r) * A.cols];
            for (int c = 0; c < A.cols; ++c) acc += row[c] * v.data[c];
            out.data[r] = acc;
        }
        return out;
    }
    Vector out = Vector::zeros(Field::cplx, A.rows);
    for (int r = 0; r < A.rows; ++r) {
        std::complex<double> acc{0.0, 0.0};
        for (int c = 0; c < A.cols; ++c) acc += A.at(r, c) * v.at(c);
        out.set(r, acc);
    }
    return out;
}

double vec_norm(const Vector& v, Norm p) {
    double acc = 0.0;
    for (int i = 0; i < v.len; ++i) {
        double m = std::abs(v.at(i));
        switch (p) {
            case Norm::l1: acc += m; break;
            case Norm::l2: acc += m * m; break;
            case Norm::linf: acc = std::max(acc, m); break;
        }
    }
    return p == Norm::l2 ? std::sqrt(acc) : acc;
}

double opnorm_inf(const Matrix& A) {
    require(A.field == Field::real, "opnorm_inf expects a real matrix (realify first)");
    double best = 0.0;
    for (int r = 0; r < A.rows; ++r) {
        double s = 0.0;
        for (int c = 0; c < A.cols; ++c) s += std::fabs(A(r, c));
        best = std::max(best, s);
    }
    return best;
}

Matrix realify(const Matrix& A) {
    require(A.field == Field::cplx, "realify expects a complex matrix");
    Matrix B = Matrix::zeros(Field::real, 2 * A.rows, A.cols);
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) {
            auto z = A.at(r, c);
            B(r, c) = z.real();
            B(A.rows + r, c) = z.imag();
        }
    return B;
}

double best_s_term_distance_inf(const Vector& x, int S) {
    require(x.field == Field::real, "best_s_term_distance_inf expects a real vector");
    require(S >= 0 && S <= x.len, "S must lie in [0, N]");
    std::vector<double> sorted = x.data;
    for (double e : sorted) require(e >= 0.0, "entries must be non-negative");
    if (S == x.len) return 0.0;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    return sorted[static_cast<size_t>(S)];
}

Matrix transpose(const Matrix& A) {
    Matrix B = Matrix::zeros(A.field, A.cols, A.rows);
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) B.set(c, r, A.at(r, c));
    return B;
}

Vector get_column(const Matrix& A, int c) {
    Vector v = Vector::zeros(A.field, A.rows);
    for (int r = 0; r < A.rows; ++r) v.set(r, A.at(r, c));
    return v;
}

void write_matrix(std::ostream& os, const Matrix& A) {
    os << (A.field == Field::real ? "real " : "complex ") << A.rows << ' ' << A.cols << '\n';
    int per_row = A.cols * A.span();
    for (int r = 0; r < A.rows; ++r) {
        for (int k = 0; k < per_row; ++k) {
            if (k) os << ' ';
            print_entry(os, A.data[static_cast<size_t>(r) * per_row + k]);
        }
        os << '\n';
    }
}

void write_matrix(const std::string& path, const Matrix& A) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_matrix(os, A);
}

Matrix read_matrix(std::istream& is) {
    std::string tag;
    int rows = 0, cols = 0;
    if (!(is >> tag >> rows >> cols)) throw std::runtime_error("matrix header: parse error");
    Field f;
    if (tag == "real")
        f = Field::real;
    else if (tag == "complex")
        f = Field::cplx;
    else
        throw std::runtime_error("matrix header: unknown field '" + tag + "'");
    Matrix A = Matrix::zeros(f, rows, cols);
    for (double& x : A.data)
        if (!(is >> x)) throw std::runtime_error("matrix body: parse error");
    if (!A.finite()) throw std::runtime_error("matrix body: non-finite entry");
    return A;
}

Matrix read_matrix(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_matrix(is);
}

void write_vector(std::ostream& os, const Vector& v) {
    os << (v.field == Field::real ? "real " : "complex ") << v.len << '\n';
    int count = v.len * v.span();
    for (int k = 0; k < count; ++k) {
        if (k) os << ' ';
        print_entry(os, v.data[static_cast<size_t>(k)]);
    }
    os << '\n';
}

void write_vector(const std::string& path, const Vector& v) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_vector(os, v);
}

Vector read_vector(std::istream& is) {
    std::string tag;
    int len = 0;
    if (!(is >> tag >> len)) throw std::runtime_error("vector header: parse error");
    Field f;
    if (tag == "real")
        f = Field::real;
    else if (tag == "complex")
        f = Field::cplx;
    else
        throw std::runtime_error("vector header: unknown field '" + tag + "'");
    Vector v = Vector::zeros(f, len);
    for (double& x : v.data)
        if (!(is >> x)) throw std::runtime_error("vector body: parse error");
    if (!v.finite()) throw std::runtime_error("vector body: non-finite entry");
    return v;
}

Vector read_vector(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_vector(is);
}

}  // namespace nnrec
