#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace nnrec {

enum class Field { real, cplx };
enum class Norm { l1, l2, linf };

/// Dense row-major matrix over R or C. Complex entries are stored as
/// interleaved (re, im) pairs, so data.size() == rows*cols*(1 or 2).
struct Matrix {
    Field field = Field::real;
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    static Matrix zeros(Field f, int rows, int cols);

    int span() const { return field == Field::cplx ? 2 : 1; }

    double& operator()(int r, int c);
    double operator()(int r, int c) const;

    std::complex<double> at(int r, int c) const;
    void set(int r, int c, std::complex<double> z);

    bool finite() const;
};

struct Vector {
    Field field = Field::real;
    int len = 0;
    std::vector<double> data;

    static Vector zeros(Field f, int len);
    static Vector from(std::vector<double> entries);  // real

    int span() const { return field == Field::cplx ? 2 : 1; }

    double& operator[](int i);
    double operator[](int i) const;

    std::complex<double> at(int i) const;
    void set(int i, std::complex<double> z);

    bool finite() const;
};

/// Sorted, duplicate-free subset of {0, ..., N-1}.
struct Support {
    std::vector<int> idx;

    Support() = default;
    explicit Support(std::vector<int> indices);  // sorts, rejects duplicates

    int size() const { return static_cast<int>(idx.size()); }
    bool contains(int n) const;
};

Vector matvec(const Matrix& A, const Vector& v);
double vec_norm(const Vector& v, Norm p);

/// sup-to-sup operator norm of a real matrix: max absolute row sum.
double opnorm_inf(const Matrix& A);

/// Stack Re(A) over Im(A) into a real 2M x N matrix. For real vectors v,
/// realify(A) v = 0 iff A v = 0, so the real kernel is preserved.
Matrix realify(const Matrix& A);

/// Exact sup-distance from a non-negative x to the S-sparse non-negative
/// vectors: the (S+1)-th largest entry, or 0 when S >= ||x||_0.
double best_s_term_distance_inf(const Vector& x, int S);

Matrix transpose(const Matrix& A);
Vector get_column(const Matrix& A, int c);

// Text format. Matrices: "real M N" or "complex M N" on the first line,
// then M rows of N (real) or 2N (complex, re im pairs) decimals. Vectors:
// "real N" / "complex N", then one line of entries. Writers emit 17
// significant digits so round-trips are bit exact.
void write_matrix(std::ostream& os, const Matrix& A);
void write_matrix(const std::string& path, const Matrix& A);
Matrix read_matrix(std::istream& is);
Matrix read_matrix(const std::string& path);
void write_vector(std::ostream& os, const Vector& v);
void write_vector(const std::string& path, const Vector& v);
Vector read_vector(std::istream& is);
Vector read_vector(const std::string& path);

}  // namespace nnrec
