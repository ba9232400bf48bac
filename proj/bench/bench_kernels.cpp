// Serial reference vs OpenMP-parallel kernels on the LP fan-out hot spots:
// tau certification, l0 support enumeration and the experiment worker pool.

#include <benchmark/benchmark.h>

#include "nnrec/certify.hpp"
#include "nnrec/construct.hpp"
#include "nnrec/decode.hpp"
#include "nnrec/experiments.hpp"
#include "nnrec/rng.hpp"

using namespace nnrec;

namespace {

Matrix bench_matrix(int m, int n) {
    Rng rng(12345);
    Matrix A = Matrix::zeros(Field::real, m, n);
    for (double& x : A.data) x = rng.gaussian();
    return A;
}

void bm_tau_exact_serial(benchmark::State& state) {
    Matrix A = bench_matrix(4, 10);
    for (auto _ : state) {
        CertifyReport rep = tau_exact_serial(A, 2, Norm::linf);
        benchmark::DoNotOptimize(rep.tau);
    }
}

void bm_tau_exact_parallel(benchmark::State& state) {
    Matrix A = bench_matrix(4, 10);
    TauOptions opts;  // parallel = true
    for (auto _ : state) {
        CertifyReport rep = tau_exact(A, 2, Norm::linf, opts);
        benchmark::DoNotOptimize(rep.tau);
    }
}

void bm_l0_serial(benchmark::State& state) {
    Matrix A = bench_matrix(4, 12);
    Rng rng(6);
    Vector y = Vector::zeros(Field::real, 4);
    for (double& v : y.data) v = rng.gaussian();
    L0Options opts{true, false, 100000};
    for (auto _ : state) {
        DecodeResult d = l0_bruteforce(A, y, 3, Norm::linf, opts);
        benchmark::DoNotOptimize(d.residual_norm);
    }
}

void bm_l0_parallel(benchmark::State& state) {
    Matrix A = bench_matrix(4, 12);
    Rng rng(6);
    Vector y = Vector::zeros(Field::real, 4);
    for (double& v : y.data) v = rng.gaussian();
    L0Options opts{true, true, 100000};
    for (auto _ : state) {
        DecodeResult d = l0_bruteforce(A, y, 3, Norm::linf, opts);
        benchmark::DoNotOptimize(d.residual_norm);
    }
}

ExperimentConfig suite_cfg() {
    ExperimentConfig cfg;
    ConstructionSpec spec;
    spec.kind = Kind::vandermonde_real;
    spec.M = 5;
    spec.N = 8;
    cfg.construction = spec;
    cfg.S = 2;
    cfg.decoders = {"nnlr_inf"};
    cfg.trials = 3;
    cfg.lo = 0.1;
    cfg.hi = 10.0;
    cfg.noise = {0.0, 1e-3};
    cfg.seed = 31337;
    return cfg;
}

void bm_suite_serial(benchmark::State& state) {
    ExperimentConfig cfg = suite_cfg();
    for (auto _ : state) {
        SuiteResult res = run_recovery_suite(cfg, false);
        benchmark::DoNotOptimize(res.records.size());
    }
}

void bm_suite_parallel(benchmark::State& state) {
    ExperimentConfig cfg = suite_cfg();
    for (auto _ : state) {
        SuiteResult res = run_recovery_suite(cfg, true);
        benchmark::DoNotOptimize(res.records.size());
    }
}

BENCHMARK(bm_tau_exact_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_tau_exact_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_l0_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_l0_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_suite_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_suite_parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
