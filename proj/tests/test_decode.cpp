#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nnrec/certify.hpp"
#include "nnrec/construct.hpp"
#include "nnrec/decode.hpp"
#include "test_helpers.hpp"

using namespace nnrec;
using namespace nnrec::testing;

namespace {

Matrix counterexample() { return make_matrix({{1, 0, 1}, {0, 1, 1}}); }

double err_inf(const Vector& a, const Vector& b) {
    double e = 0.0;
    for (int i = 0; i < a.len; ++i) e = std::max(e, std::fabs(a[i] - b[i]));
    return e;
}

}  // namespace

TEST_CASE("nnlr on the identity") {
    Matrix I2 = make_matrix({{1, 0}, {0, 1}});
    DecodeResult r = nnlr(I2, make_vector({1, 2}), Norm::linf);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.residual_norm == doctest::Approx(0.0));
    CHECK(r.estimate[0] == doctest::Approx(1.0));
    CHECK(r.estimate[1] == doctest::Approx(2.0));

    // y = (-1, 2): the sup-norm optimum is 1, attained on the face
    // {0} x [1, 3]; the solver returns some vertex of it.
    DecodeResult q = nnlr(I2, make_vector({-1, 2}), Norm::linf);
    REQUIRE(q.status == LpStatus::optimal);
    CHECK(q.residual_norm == doctest::Approx(1.0));
    CHECK(q.estimate[0] == doctest::Approx(0.0));
    CHECK(q.estimate[1] >= 1.0 - 1e-9);
    CHECK(q.estimate[1] <= 3.0 + 1e-9);

    // the l1 residual decoder has the unique minimizer (0, 2) here
    DecodeResult l = nnlr(I2, make_vector({-1, 2}), Norm::l1);
    REQUIRE(l.status == LpStatus::optimal);
    CHECK(l.residual_norm == doctest::Approx(1.0));
    CHECK(l.estimate[0] == doctest::Approx(0.0));
    CHECK(l.estimate[1] == doctest::Approx(2.0));
}

TEST_CASE("nnlr on the counterexample matrix returns a zero-residual minimizer") {
    Matrix A = counterexample();
    Vector x = make_vector({0, 0, 1});
    DecodeResult r = nnlr(A, matvec(A, x), Norm::linf);
    REQUIRE(r.status == LpStatus::optimal);
    // residual-optimal, but the minimizer set {(t,t,1-t)} is not a point
    CHECK(r.residual_norm <= 1e-9);
}

TEST_CASE("nnlr rejects bad input") {
    CHECK_THROWS(nnlr(counterexample(), make_vector({1, 1, 1}), Norm::linf));
    CHECK_THROWS(nnlr(counterexample(), make_vector({1, 1}), Norm::l2));
}

TEST_CASE("nnlr_complex") {
    // zero data decodes to zero
    Matrix A = vandermonde_complex(2, 6);
    Vector y0 = Vector::zeros(Field::cplx, 2);
    DecodeResult r0 = nnlr_complex(A, y0);
    REQUIRE(r0.status == LpStatus::optimal);
    for (int n = 0; n < 6; ++n) CHECK(std::fabs(r0.estimate[n]) <= 1e-9);

    // complex Vandermonde with defaults has order M-1 = 1: e1 recovers
    Vector x = Vector::zeros(Field::real, 6);
    x[0] = 1.0;
    Vector y = matvec(A, x);
    DecodeResult r = nnlr_complex(A, y);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(err_inf(r.estimate, x) <= 1e-6);

    // a real-valued complex matrix reduces to nnlr on the real part
    Matrix C = Matrix::zeros(Field::cplx, 2, 2);
    C.set(0, 0, {1, 0});
    C.set(1, 1, {1, 0});
    Vector yc = Vector::zeros(Field::cplx, 2);
    yc.set(0, {1, 0});
    yc.set(1, {2, 0});
    DecodeResult rc = nnlr_complex(C, yc);
    Matrix R = make_matrix({{1, 0}, {0, 1}});
    DecodeResult rr = nnlr(R, make_vector({1, 2}), Norm::linf);
    REQUIRE(rc.status == LpStatus::optimal);
    CHECK(err_inf(rc.estimate, rr.estimate) <= 1e-9);
}

TEST_CASE("nn_basis_pursuit") {
    Matrix I2 = make_matrix({{1, 0}, {0, 1}});
    DecodeResult r = nn_basis_pursuit(I2, make_vector({1, 2}));
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.estimate[0] == doctest::Approx(1.0));
    CHECK(r.estimate[1] == doctest::Approx(2.0));

    // e3 has l1 mass 1 against 2 for the competing preimage (1,1,0)
    Matrix A = counterexample();
    DecodeResult b = nn_basis_pursuit(A, make_vector({1, 1}));
    REQUIRE(b.status == LpStatus::optimal);
    CHECK(b.estimate[0] == doctest::Approx(0.0));
    CHECK(b.estimate[1] == doctest::Approx(0.0));
    CHECK(b.estimate[2] == doctest::Approx(1.0));

    CHECK(nn_basis_pursuit(I2, make_vector({-1, 0})).status == LpStatus::infeasible);
}

TEST_CASE("l0_bruteforce") {
    Matrix I3 = make_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    // enumeration: support {0} residual 0.1, supports {1}, {2} residual 0.9
    DecodeResult r = l0_bruteforce(I3, make_vector({0.9, 0.1, 0.0}), 1, Norm::linf);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.residual_norm == doctest::Approx(0.1));
    CHECK(r.estimate[1] == 0.0);
    CHECK(r.estimate[2] == 0.0);
    CHECK(std::fabs(r.estimate[0] - 0.9) <= 0.1 + 1e-9);  // optimal face [0.8, 1.0]

    // S=0 decodes to the zero vector
    DecodeResult z = l0_bruteforce(I3, make_vector({0.5, -0.25, 0.0}), 0, Norm::linf);
    CHECK(z.residual_norm == doctest::Approx(0.5));
    for (int i = 0; i < 3; ++i) CHECK(z.estimate[i] == 0.0);

    // exact data with a generic matrix: unique zero-residual support
    Rng rng(31);
    Matrix A = random_matrix(rng, 4, 6);
    for (int t = 0; t < 10; ++t) {
        Vector x = Vector::zeros(Field::real, 6);
        x[rng.uniform_int(6)] = rng.uniform(0.5, 2.0);
        DecodeResult d = l0_bruteforce(A, matvec(A, x), 1, Norm::linf);
        CHECK(err_inf(d.estimate, x) <= 1e-6);
    }

    // tie on the identity resolves to the lexicographically smallest support
    Matrix I2 = make_matrix({{1, 0}, {0, 1}});
    DecodeResult tie = l0_bruteforce(I2, make_vector({1, 1}), 1, Norm::linf);
    CHECK(tie.residual_norm == doctest::Approx(1.0));
    CHECK(tie.estimate[1] == 0.0);

    // size guard
    Matrix wide = Matrix::zeros(Field::real, 1, 60);
    for (int n = 0; n < 60; ++n) wide(0, n) = 1.0 + n;
    CHECK_THROWS(l0_bruteforce(wide, make_vector({1}), 30, Norm::linf));
}

TEST_CASE("l0_bruteforce parallel equals serial") {
    Rng rng(57);
    Matrix A = random_matrix(rng, 3, 9);
    Vector y = random_vector(rng, 3);
    L0Options ser{true, false, 100000};
    L0Options par{true, true, 100000};
    DecodeResult a = l0_bruteforce(A, y, 2, Norm::linf, ser);
    DecodeResult b = l0_bruteforce(A, y, 2, Norm::linf, par);
    CHECK(a.residual_norm == b.residual_norm);
    CHECK(a.estimate.data == b.estimate.data);
}

TEST_CASE("l0_bruteforce free-sign mode") {
    Matrix I2 = make_matrix({{1, 0}, {0, 1}});
    L0Options free_sign{false, false, 100000};
    DecodeResult d = l0_bruteforce(I2, make_vector({-2.0, 0.5}), 1, Norm::linf, free_sign);
    // support {0} wins with residual 0.5 (the dropped coordinate), and the
    // optimal face for x_0 is [-2.5, -1.5]; the solver returns a vertex
    CHECK(d.estimate[0] <= -1.5 + 1e-9);
    CHECK(d.estimate[0] >= -2.5 - 1e-9);
    CHECK(d.residual_norm == doctest::Approx(0.5));
}

TEST_CASE("ones_certificate") {
    CHECK(!ones_certificate(counterexample()).has_value());

    Matrix I2 = make_matrix({{1, 0}, {0, 1}});
    auto v = ones_certificate(I2);
    REQUIRE(v.has_value());
    CHECK((*v)[0] == doctest::Approx(1.0));
    CHECK((*v)[1] == doctest::Approx(1.0));

    // first row of ones makes e1 a certificate
    Matrix V = vandermonde_real(reciprocal_nodes(3), 6);
    auto w = ones_certificate(V);
    REQUIRE(w.has_value());
    Vector atw = matvec(transpose(V), *w);
    for (int n = 0; n < 6; ++n) CHECK(atw[n] == doctest::Approx(1.0));
}

TEST_CASE("minimizer optimality against random feasible points") {
    Rng rng(101);
    for (int t = 0; t < 5; ++t) {
        Matrix A = random_matrix(rng, 3, 5);
        Vector y = random_vector(rng, 3);
        for (Norm rnorm : {Norm::linf, Norm::l1}) {
            DecodeResult d = nnlr(A, y, rnorm);
            REQUIRE(d.status == LpStatus::optimal);
            for (int k = 0; k < 200; ++k) {
                Vector z = Vector::zeros(Field::real, 5);
                for (int i = 0; i < 5; ++i) z[i] = rng.uniform(0.0, 3.0);
                Vector r = matvec(A, z);
                for (int m = 0; m < 3; ++m) r[m] -= y[m];
                CHECK(d.residual_norm <= vec_norm(r, rnorm) + 1e-9);
            }
        }
    }
}

TEST_CASE("exact recovery on a certified matrix, both residual norms") {
    Matrix A = vandermonde_real(reciprocal_nodes(3), 6);  // order 1
    REQUIRE(signed_kernel_check(A, 1).verdict);
    Rng rng(11);
    for (int n = 0; n < 6; ++n) {
        for (int t = 0; t < 3; ++t) {
            Vector x = Vector::zeros(Field::real, 6);
            x[n] = rng.uniform(0.1, 10.0);
            Vector y = matvec(A, x);
            CHECK(err_inf(nnlr(A, y, Norm::linf).estimate, x) <= 1e-5);
            CHECK(err_inf(nnlr(A, y, Norm::l1).estimate, x) <= 1e-5);
        }
    }
    // supports smaller than the order are covered too
    Vector zero = Vector::zeros(Field::real, 6);
    CHECK(err_inf(nnlr(A, matvec(A, zero), Norm::linf).estimate, zero) <= 1e-5);
}

TEST_CASE("robustness bound with the exact tau") {
    Matrix A = vandermonde_real(reciprocal_nodes(3), 6);
    CertifyReport rep = tau_exact(A, 1, Norm::linf);
    REQUIRE(rep.tau > 0.0);
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        Vector x = Vector::zeros(Field::real, 6);
        x[rng.uniform_int(6)] = rng.uniform(0.1, 10.0);
        Vector y = matvec(A, x);
        double eps = 1e-3;
        Vector e = random_vector(rng, 3);
        double scale = eps / vec_norm(e, Norm::linf);
        for (int m = 0; m < 3; ++m) y[m] += e[m] * scale;
        DecodeResult d = nnlr(A, y, Norm::linf);
        REQUIRE(d.status == LpStatus::optimal);
        CHECK(err_inf(d.estimate, x) <= 2.0 / rep.tau * eps + 1e-6);
    }
}

TEST_CASE("stability bound for non-sparse signals") {
    Matrix A = vandermonde_real(reciprocal_nodes(3), 6);
    CertifyReport rep = tau_exact(A, 1, Norm::linf);
    double kappa = kappa_exact_inf(A, 1);
    Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        Vector x = Vector::zeros(Field::real, 6);
        for (int n = 0; n < 6; ++n) x[n] = 1e-2;  // tail
        x[rng.uniform_int(6)] = rng.uniform(0.1, 10.0);
        Vector y = matvec(A, x);
        double eps = 1e-3;
        Vector e = random_vector(rng, 3);
        double scale = eps / vec_norm(e, Norm::linf);
        for (int m = 0; m < 3; ++m) y[m] += e[m] * scale;
        DecodeResult d = nnlr(A, y, Norm::linf);
        REQUIRE(d.status == LpStatus::optimal);
        double bst = best_s_term_distance_inf(x, 1);
        double bound = (1.0 + kappa / rep.tau) * bst + 2.0 / rep.tau * eps + 1e-6;
        CHECK(err_inf(d.estimate, x) <= bound);
    }
}

TEST_CASE("with a ones certificate, nnlr and nnbp agree instance-wise") {
    Matrix A = vandermonde_real(reciprocal_nodes(5), 8);  // order 2, row of ones
    REQUIRE(ones_certificate(A).has_value());
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        Vector x = Vector::zeros(Field::real, 8);
        auto sup = rng.sample_support(8, 2);
        for (int n : sup) x[n] = rng.uniform(0.1, 10.0);
        Vector y = matvec(A, x);
        bool nnlr_ok = err_inf(nnlr(A, y, Norm::linf).estimate, x) <= 1e-5;
        bool nnbp_ok = err_inf(nn_basis_pursuit(A, y).estimate, x) <= 1e-5;
        CHECK(nnlr_ok == nnbp_ok);
        CHECK(nnlr_ok);
    }
}
