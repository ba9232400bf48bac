#pragma once

#include <string>
#include <vector>

#include "nnrec/linalg.hpp"

namespace nnrec {

enum class Kind {
    vandermonde_real,
    trigonometric,
    vandermonde_complex,
    hermitian_product,
    hermitian_product_normalized,
    outer_product,
};

Kind kind_from_string(const std::string& s);
std::string to_string(Kind k);

/// Parameters of one certified construction. nodes/thetas may be left
/// empty to get the default choices.
struct ConstructionSpec {
    Kind kind = Kind::vandermonde_real;
    int M = 0;  // base row count (2S+1 for trigonometric)
    int N = 0;
    int S = 0;  // trigonometric only
    int K = 0;  // outer_product only
    std::vector<double> nodes;
    std::vector<double> thetas;
};

Matrix build(const ConstructionSpec& spec);

/// Certified signed-kernel order of the family.
int guaranteed_order(const ConstructionSpec& spec);

Matrix vandermonde_real(const std::vector<double>& nodes, int N);
Matrix trigonometric(int S, int N, std::vector<double> thetas = {});
Matrix vandermonde_complex(int M, int N, std::vector<double> nodes = {},
                           std::vector<double> thetas = {});
Matrix hermitian_product(int M, int N, bool normalized,
                         std::vector<double> nodes = {},
                         std::vector<double> thetas = {});
Matrix outer_product(int M, int N, int K, std::vector<double> nodes = {},
                     std::vector<double> thetas = {});

Matrix append_ones_row(const Matrix& A);

long long nth_prime(int m);  // m >= 1, trial division

/// 1/m nodes, the bounded-entry default for vandermonde_real.
std::vector<double> reciprocal_nodes(int M);

long long binom(int n, int k);

}  // namespace nnrec
