#include "nnrec/construct.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace nnrec {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSep = 1e-12;  // minimum pairwise separation for distinctness

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_denominator(long long den, const char* what) {
    // The pad N' makes every window denominator >= 1; anything else is a bug.
    if (den < 1) throw std::logic_error(std::string(what) + ": window denominator < 1");
}

void check_window(const std::vector<double>& thetas, double window, const char* what) {
    double prev = 0.0;
    for (double t : thetas) {
        require(t > 0.0 && t < window, std::string(what) + ": theta outside (0, window)");
        require(t > prev, std::string(what) + ": thetas must be strictly increasing");
        prev = t;
    }
}

void check_distinct(const std::vector<std::complex<double>>& pts, const char* what) {
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            require(std::abs(pts[i] - pts[j]) >= kSep,
                    std::string(what) + ": node separation below 1e-12");
}

// theta_m = sqrt(pi_m / pi_{M+1}) * scale, strictly increasing and < scale.
std::vector<double> prime_ratio_thetas(int M, double scale) {
    std::vector<double> t(M);
    double pM1 = static_cast<double>(nth_prime(M + 1));
    for (int m = 1; m <= M; ++m)
        t[m - 1] = std::sqrt(static_cast<double>(nth_prime(m)) / pM1) * scale;
    return t;
}

Matrix complex_power_matrix(const std::vector<double>& a, const std::vector<double>& t,
                            int N, int Npad) {
    int M = static_cast<int>(a.size());
    Matrix A = Matrix::zeros(Field::cplx, M, N);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) {
            double e = static_cast<double>(n + Npad);
            A.set(m, n, std::polar(std::pow(a[m], e), t[m] * e));
        }
    return A;
}

}  // namespace

Kind kind_from_string(const std::string& s) {
    if (s == "vandermonde_real") return Kind::vandermonde_real;
    if (s == "trigonometric") return Kind::trigonometric;
    if (s == "vandermonde_complex") return Kind::vandermonde_complex;
    if (s == "hermitian_product") return Kind::hermitian_product;
    if (s == "hermitian_product_normalized") return Kind::hermitian_product_normalized;
    if (s == "outer_product") return Kind::outer_product;
    throw std::invalid_argument("unknown construction kind: " + s);
}

std::string to_string(Kind k) {
    switch (k) {
        case Kind::vandermonde_real: return "vandermonde_real";
        case Kind::trigonometric: return "trigonometric";
        case Kind::vandermonde_complex: return "vandermonde_complex";
        case Kind::hermitian_product: return "hermitian_product";
        case Kind::hermitian_product_normalized: return "hermitian_product_normalized";
        case Kind::outer_product: return "outer_product";
    }
    return "?";
}

long long nth_prime(int m) {
    require(m >= 1, "nth_prime: m >= 1");
    long long count = 0;
    for (long long cand = 2;; ++cand) {
        bool prime = true;
        for (long long d = 2; d * d <= cand; ++d)
            if (cand % d == 0) {
                prime = false;
                break;
            }
        if (prime && ++count == m) return cand;
    }
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<double> reciprocal_nodes(int M) {
    std::vector<double> a(M);
    for (int m = 1; m <= M; ++m) a[m - 1] = 1.0 / m;
    return a;
}

Matrix vandermonde_real(const std::vector<double>& nodes, int N) {
    int M = static_cast<int>(nodes.size());
    require(M >= 1 && N >= 1, "vandermonde_real: M, N >= 1");
    for (double a : nodes) require(a > 0.0, "vandermonde_real: nodes must be positive");
    for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j)
            require(std::fabs(nodes[i] - nodes[j]) >= kSep,
                    "vandermonde_real: node separation below 1e-12");
    Matrix A = Matrix::zeros(Field::real, M, N);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) A(m, n) = std::pow(nodes[m], static_cast<double>(n));
    return A;
}

Matrix trigonometric(int S, int N, std::vector<double> thetas) {
    require(S >= 1 && N >= 1, "trigonometric: S, N >= 1");
    int Npad = std::max(2 * S + 1 - N, 0);
    long long den = static_cast<long long>(N) + Npad - 2 * S;
    check_denominator(den, "trigonometric");
    double window = kPi / static_cast<double>(den);
    if (thetas.empty()) {
        thetas.resize(S);
        for (int s = 1; s <= S; ++s)
            thetas[s - 1] = static_cast<double>(s) / (S + 1) * window;
    }
    require(static_cast<int>(thetas.size()) == S, "trigonometric: need S thetas");
    check_window(thetas, window, "trigonometric");

    // Row layout [cos_0, sin_1, cos_1, ..., sin_S, cos_S] with t_0 = 0; the
    // first row is all ones.
    Matrix A = Matrix::zeros(Field::real, 2 * S + 1, N);
    for (int n = 0; n < N; ++n) {
        double arg0 = static_cast<double>(n + Npad);
        A(0, n) = 1.0;
        for (int s = 1; s <= S; ++s) {
            A(2 * s - 1, n) = std::sin(thetas[s - 1] * arg0);
            A(2 * s, n) = std::cos(thetas[s - 1] * arg0);
        }
    }
    return A;
}

Matrix vandermonde_complex(int M, int N, std::vector<double> nodes,
                           std::vector<double> thetas) {
    require(M >= 1 && N >= 1, "vandermonde_complex: M, N >= 1");
    int Npad = std::max(2 * M - N, 0);
    long long den = static_cast<long long>(N) + Npad + 1 - 2 * M;
    check_denominator(den, "vandermonde_complex");
    double window = kPi / static_cast<double>(den);
    if (nodes.empty()) nodes.assign(M, 1.0);
    if (thetas.empty()) {
        thetas.resize(M);
        for (int m = 1; m <= M; ++m)
            thetas[m - 1] = static_cast<double>(m) / (M + 1) * window;
    }
    require(static_cast<int>(nodes.size()) == M && static_cast<int>(thetas.size()) == M,
            "vandermonde_complex: need M nodes and M thetas");
    for (double a : nodes) require(a > 0.0, "vandermonde_complex: nodes must be positive");
    for (double t : thetas)
        require(t > 0.0 && t < window, "vandermonde_complex: theta outside (0, window)");
    std::vector<std::complex<double>> pts(M);
    for (int m = 0; m < M; ++m) pts[m] = std::polar(nodes[m], thetas[m]);
    check_distinct(pts, "vandermonde_complex");
    return complex_power_matrix(nodes, thetas, N, Npad);
}

Matrix hermitian_product(int M, int N, bool normalized, std::vector<double> nodes,
                         std::vector<double> thetas) {
    require(M >= 1 && N >= 1, "hermitian_product: M, N >= 1");
    int Npad;
    long long den;
    if (!normalized) {
        Npad = std::max(M * M - N, 0);
        den = static_cast<long long>(N) + Npad + 1 - M * M;
    } else {
        Npad = std::max(M * M - M + 1 - N, 0);
        den = static_cast<long long>(N) + Npad - M * M + M;
    }
    check_denominator(den, "hermitian_product");
    double window = kPi / static_cast<double>(den);

    if (!normalized) {
        if (nodes.empty()) {
            nodes.resize(M);
            for (int m = 1; m <= M; ++m) nodes[m - 1] = 1.0 / std::sqrt(static_cast<double>(m));
        }
        if (thetas.empty()) thetas = prime_ratio_thetas(M, window);
    } else {
        require(nodes.empty(), "hermitian_product: normalized variant fixes nodes at 1");
        nodes.assign(M, 1.0);
        if (thetas.empty()) thetas = prime_ratio_thetas(M, kPi / static_cast<double>(den + 1));
    }
    require(static_cast<int>(nodes.size()) == M && static_cast<int>(thetas.size()) == M,
            "hermitian_product: need M nodes and M thetas");
    for (double a : nodes) require(a > 0.0, "hermitian_product: nodes must be positive");
    check_window(thetas, window, "hermitian_product");

    if (!normalized) {
        // products a_{m1} a_{m2} e^{i(t_{m1}-t_{m2})}, m1 <= m2, must separate
        std::vector<std::complex<double>> pts;
        for (int m1 = 0; m1 < M; ++m1)
            for (int m2 = m1; m2 < M; ++m2)
                pts.push_back(std::polar(nodes[m1] * nodes[m2], thetas[m1] - thetas[m2]));
        check_distinct(pts, "hermitian_product");
    } else {
        std::vector<std::complex<double>> pts;
        for (int m1 = 0; m1 < M; ++m1)
            for (int m2 = m1 + 1; m2 < M; ++m2)
                pts.push_back({thetas[m1] - thetas[m2], 0.0});
        check_distinct(pts, "hermitian_product (normalized)");
    }

    Matrix base = complex_power_matrix(nodes, thetas, N, Npad);
    Matrix A = Matrix::zeros(Field::cplx, M * M, N);
    for (int m1 = 0; m1 < M; ++m1)
        for (int m2 = 0; m2 < M; ++m2) {
            int r = m1 * M + m2;  // lexicographic row ordering
            for (int n = 0; n < N; ++n)
                A.set(r, n, base.at(m1, n) * std::conj(base.at(m2, n)));
        }
    return A;
}

Matrix outer_product(int M, int N, int K, std::vector<double> nodes,
                     std::vector<double> thetas) {
    require(M >= 1 && N >= 1 && K >= 1, "outer_product: M, N, K >= 1");
    long long cr = binom(M - 1 + K, K);
    require(cr <= 1 << 20, "outer_product: tensor order too large");
    int Npad = static_cast<int>(std::max<long long>(2 * cr - N, 0));
    long long den = static_cast<long long>(N) + Npad + 1 - 2 * cr;
    check_denominator(den, "outer_product");
    double window = kPi / static_cast<double>(den) / K;
    if (nodes.empty()) nodes.assign(M, 1.0);
    if (thetas.empty()) thetas = prime_ratio_thetas(M, window);
    require(static_cast<int>(nodes.size()) == M && static_cast<int>(thetas.size()) == M,
            "outer_product: need M nodes and M thetas");
    for (double a : nodes) require(a > 0.0, "outer_product: nodes must be positive");
    for (double t : thetas)
        require(t > 0.0 && t < window, "outer_product: theta outside (0, window)");

    // distinctness over non-decreasing index tuples
    {
        std::vector<std::complex<double>> pts;
        std::vector<int> tup(K, 0);
        while (true) {
            double mod = 1.0, arg = 0.0;
            for (int k = 0; k < K; ++k) {
                mod *= nodes[tup[k]];
                arg += thetas[tup[k]];
            }
            pts.push_back(std::polar(mod, arg));
            int k = K - 1;
            while (k >= 0 && tup[k] == M - 1) --k;
            if (k < 0) break;
            int v = tup[k] + 1;
            for (int j = k; j < K; ++j) tup[j] = v;
        }
        check_distinct(pts, "outer_product");
    }

    Matrix base = complex_power_matrix(nodes, thetas, N, Npad);
    long long rows = 1;
    for (int k = 0; k < K; ++k) rows *= M;
    Matrix A = Matrix::zeros(Field::cplx, static_cast<int>(rows), N);
    std::vector<int> tup(K, 0);
    for (long long r = 0; r < rows; ++r) {
        for (int n = 0; n < N; ++n) {
            std::complex<double> prod{1.0, 0.0};
            for (int k = 0; k < K; ++k) prod *= base.at(tup[k], n);
            A.set(static_cast<int>(r), n, prod);
        }
        for (int k = K - 1; k >= 0; --k) {
            if (++tup[k] < M) break;
            tup[k] = 0;
        }
    }
    return A;
}

Matrix append_ones_row(const Matrix& A) {
    require(A.field == Field::real, "append_ones_row expects a real matrix");
    Matrix B = Matrix::zeros(Field::real, A.rows + 1, A.cols);
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) B(r, c) = A(r, c);
    for (int c = 0; c < A.cols; ++c) B(A.rows, c) = 1.0;
    return B;
}

Matrix build(const ConstructionSpec& spec) {
    switch (spec.kind) {
        case Kind::vandermonde_real:
            return vandermonde_real(spec.nodes.empty() ? reciprocal_nodes(spec.M) : spec.nodes,
                                    spec.N);
        case Kind::trigonometric: return trigonometric(spec.S, spec.N, spec.thetas);
        case Kind::vandermonde_complex:
            return vandermonde_complex(spec.M, spec.N, spec.nodes, spec.thetas);
        case Kind::hermitian_product:
            return hermitian_product(spec.M, spec.N, false, spec.nodes, spec.thetas);
        case Kind::hermitian_product_normalized:
            return hermitian_product(spec.M, spec.N, true, spec.nodes, spec.thetas);
        case Kind::outer_product:
            return outer_product(spec.M, spec.N, spec.K, spec.nodes, spec.thetas);
    }
    throw std::invalid_argument("build: unknown kind");
}

int guaranteed_order(const ConstructionSpec& spec) {
    switch (spec.kind) {
        case Kind::vandermonde_real: {
            int M = spec.nodes.empty() ? spec.M : static_cast<int>(spec.nodes.size());
            require(M >= 1, "guaranteed_order: M >= 1");
            return (M + 1) / 2 - 1;  // ceil(M/2) - 1
        }
        case Kind::trigonometric:
            require(spec.S >= 1, "guaranteed_order: S >= 1");
            return spec.S;
        case Kind::vandermonde_complex:
            require(spec.M >= 1, "guaranteed_order: M >= 1");
            return spec.M - 1;
        case Kind::hermitian_product: {
            int mm = spec.M * spec.M;
            return (mm + 1) / 2 - 1;  // ceil(M^2/2) - 1
        }
        case Kind::hermitian_product_normalized:
            return (spec.M * spec.M - spec.M) / 2;
        case Kind::outer_product:
            return static_cast<int>(binom(spec.M - 1 + spec.K, spec.K)) - 1;
    }
    throw std::invalid_argument("guaranteed_order: unknown kind");
}

}  // namespace nnrec
