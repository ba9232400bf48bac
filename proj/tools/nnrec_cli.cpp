#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nnrec/certify.hpp"
#include "nnrec/construct.hpp"
#include "nnrec/decode.hpp"
#include "nnrec/experiments.hpp"
#include "nnrec/linalg.hpp"

namespace {

using nnrec::Field;
using nnrec::Matrix;
using nnrec::Norm;
using nnrec::Vector;
using nlohmann::json;

std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

Norm parse_rnorm(const std::string& s) {
    if (s == "inf") return Norm::linf;
    if (s == "l1") return Norm::l1;
    throw CLI::ValidationError("--rnorm must be inf or l1");
}

json witness_json(const nnrec::Witness& w) {
    return {{"T", w.T.idx}, {"n", w.n}, {"sign", w.sign > 0 ? "+" : "-"}};
}

int cmd_construct(const std::string& kind, int M, int N, int S, int K,
                  const std::string& nodes_csv, const std::string& thetas_csv,
                  const std::string& out, bool order_only) {
    nnrec::ConstructionSpec spec;
    spec.kind = nnrec::kind_from_string(kind);
    spec.M = M;
    spec.N = N;
    spec.S = S;
    spec.K = K;
    if (!nodes_csv.empty()) spec.nodes = parse_csv_doubles(nodes_csv);
    if (!thetas_csv.empty()) spec.thetas = parse_csv_doubles(thetas_csv);
    if (order_only) {
        std::cout << nnrec::guaranteed_order(spec) << "\n";
        return 0;
    }
    Matrix A = nnrec::build(spec);
    if (out.empty()) {
        nnrec::write_matrix(std::cout, A);
    } else {
        nnrec::write_matrix(out, A);
        std::cout << "{\"rows\": " << A.rows << ", \"cols\": " << A.cols
                  << ", \"guaranteed_order\": " << nnrec::guaranteed_order(spec) << "}\n";
    }
    return 0;
}

int cmd_decode(const std::string& matrix_path, const std::string& y_path,
               const std::string& decoder, const std::string& rnorm_s, int S,
               const std::string& out) {
    Matrix A = nnrec::read_matrix(matrix_path);
    Vector y = nnrec::read_vector(y_path);
    Norm rnorm = parse_rnorm(rnorm_s);

    nnrec::DecodeResult res;
    try {
        Matrix B = A.field == Field::cplx ? nnrec::realify(A) : A;
        Vector yr = y;
        if (y.field == Field::cplx) {
            // stack real over imaginary parts to match the realified matrix
            if (y.len != A.rows) throw std::invalid_argument("decode: y length mismatch");
            yr = Vector::zeros(Field::real, 2 * A.rows);
            for (int m = 0; m < A.rows; ++m) {
                yr[m] = y.at(m).real();
                yr[A.rows + m] = y.at(m).imag();
            }
        }
        if (decoder == "nnlr") {
            res = A.field == Field::cplx ? nnrec::nnlr(B, yr, Norm::linf)
                                         : nnrec::nnlr(B, yr, rnorm);
        } else if (decoder == "nnbp") {
            res = nnrec::nn_basis_pursuit(B, yr);
        } else if (decoder == "l0") {
            if (S < 0) throw std::invalid_argument("decode: --S required for l0");
            res = nnrec::l0_bruteforce(B, yr, S, rnorm);
        } else {
            throw std::invalid_argument("decode: unknown decoder " + decoder);
        }
    } catch (const std::exception& e) {
        std::cout << "{\"residual\": null, \"status\": \"fault\", \"iterations\": 0}\n";
        std::cerr << "decode fault: " << e.what() << "\n";
        return 3;
    }

    json diag = {{"residual", res.residual_norm},
                 {"status", nnrec::to_string(res.status)},
                 {"iterations", res.iterations}};
    std::cout << diag.dump() << "\n";
    if (res.status == nnrec::LpStatus::optimal) {
        if (!out.empty()) nnrec::write_vector(out, res.estimate);
        return 0;
    }
    if (res.status == nnrec::LpStatus::infeasible) return 2;
    return 3;
}

int cmd_certify(const std::string& matrix_path, int S, const std::string& rnorm_s,
                bool alphas, const std::string& report_path) {
    Matrix A = nnrec::read_matrix(matrix_path);
    Norm rnorm = parse_rnorm(rnorm_s);
    nnrec::TauOptions opts;
    opts.alpha_table = alphas;
    nnrec::CertifyReport rep = nnrec::signed_kernel_check(A, S, rnorm, 1e-7, opts);

    json j = {{"S", rep.S},
              {"rnorm", rnorm_s},
              {"tau", rep.tau},
              {"kappa", rep.kappa},
              {"verdict", rep.verdict},
              {"witness", witness_json(rep.witness)},
              {"lp_count", rep.lp_count}};
    if (rep.tau > 0.0)
        j["D_robust"] = 2.0 / rep.tau;
    else
        j["D_robust"] = nullptr;
    if (alphas) {
        json table = json::array();
        for (const auto& a : rep.alpha_table)
            table.push_back({{"T", a.T.idx},
                             {"n", a.n},
                             {"sign", a.sign > 0 ? "+" : "-"},
                             {"value", a.value}});
        j["alphas"] = table;
    }
    std::string text = j.dump(2) + "\n";
    if (report_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(report_path);
        if (!os) throw std::runtime_error("cannot open for writing: " + report_path);
        os << text;
        std::cout << "{\"tau\": " << rep.tau << ", \"verdict\": " << (rep.verdict ? "true" : "false")
                  << "}\n";
    }
    return 0;
}

int cmd_bound(int S, int M, int N, const std::string& q_s, const std::string& field_s) {
    double q = q_s == "inf" ? std::numeric_limits<double>::infinity() : std::stod(q_s);
    Field f = field_s == "complex" ? Field::cplx : Field::real;
    nnrec::BoundResult b = nnrec::complexity_bound(S, M, N, q, f);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", b.value);
    std::cout << buf << "\n";
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out, bool timing) {
    nnrec::ExperimentConfig cfg = nnrec::load_config(config_path);
    if (!out.empty()) cfg.out = out;
    if (cfg.out.empty()) throw std::runtime_error("experiment: no output path (config or --out)");
    nnrec::SuiteResult res = nnrec::run_recovery_suite(cfg);
    nnrec::write_csv(cfg.out, res, timing);
    json j = {{"rows", res.records.size()},
              {"tau", res.tau_inf},
              {"kappa", res.kappa},
              {"verdict", res.verdict},
              {"violations", res.violations},
              {"out", cfg.out}};
    std::cout << j.dump() << "\n";
    return res.violations == 0 ? 0 : 1;
}

int cmd_search(int M, int N, int S, int iters, std::uint64_t seed, const std::string& rnorm_s,
               const std::string& out, const std::string& trace_path) {
    nnrec::SearchResult res = nnrec::matrix_search(M, N, S, iters, seed, parse_rnorm(rnorm_s));
    if (!out.empty()) nnrec::write_matrix(out, res.best);
    if (!trace_path.empty()) {
        std::ofstream os(trace_path);
        if (!os) throw std::runtime_error("cannot open for writing: " + trace_path);
        for (double t : res.trace) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", t);
            os << buf << "\n";
        }
    }
    json j = {{"tau_init", res.trace.front()},
              {"tau_final", res.trace.back()},
              {"accepts", res.accepts},
              {"iters", res.iters}};
    std::cout << j.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-negative sparse recovery toolkit"};
    app.set_version_flag("--version", "nnrec 0.1.0");
    app.require_subcommand(1);

    // construct
    auto* c = app.add_subcommand("construct", "build a certified measurement matrix");
    std::string c_kind, c_nodes, c_thetas, c_out;
    int c_M = 0, c_N = 0, c_S = 0, c_K = 0;
    bool c_order = false;
    c->add_option("--kind", c_kind, "construction family")->required();
    c->add_option("--M", c_M, "base row count");
    c->add_option("--N", c_N, "columns");
    c->add_option("--S", c_S, "target order (trigonometric)");
    c->add_option("--K", c_K, "tensor order (outer_product)");
    c->add_option("--nodes", c_nodes, "comma-separated nodes a_m");
    c->add_option("--thetas", c_thetas, "comma-separated angles");
    c->add_option("--out", c_out, "output matrix path (stdout if omitted)");
    c->add_flag("--order", c_order, "print the guaranteed order and exit");

    // decode
    auto* d = app.add_subcommand("decode", "recover a non-negative vector from measurements");
    std::string d_matrix, d_y, d_decoder, d_rnorm = "inf", d_out;
    int d_S = -1;
    d->add_option("--matrix", d_matrix)->required();
    d->add_option("--y", d_y)->required();
    d->add_option("--decoder", d_decoder, "nnlr | nnbp | l0")->required();
    d->add_option("--rnorm", d_rnorm, "inf | l1");
    d->add_option("--S", d_S, "sparsity (l0 decoder)");
    d->add_option("--out", d_out, "estimate output path");

    // certify
    auto* ce = app.add_subcommand("certify", "compute tau/kappa and the signed-kernel verdict");
    std::string ce_matrix, ce_rnorm = "inf", ce_report;
    int ce_S = 0;
    bool ce_alphas = false;
    ce->add_option("--matrix", ce_matrix)->required();
    ce->add_option("--S", ce_S)->required();
    ce->add_option("--rnorm", ce_rnorm, "inf | l1");
    ce->add_flag("--alphas", ce_alphas, "emit the full alpha table");
    ce->add_option("--report", ce_report, "JSON report path (stdout if omitted)");

    // bound
    auto* b = app.add_subcommand("bound", "dimension-only upper bound on tau/kappa");
    int b_S = 0, b_M = 0, b_N = 0;
    std::string b_q = "inf", b_field = "real";
    b->add_option("--S", b_S)->required();
    b->add_option("--M", b_M)->required();
    b->add_option("--N", b_N)->required();
    b->add_option("--q", b_q, "norm exponent or inf");
    b->add_option("--field", b_field, "real | complex");

    // experiment
    auto* e = app.add_subcommand("experiment", "run a recovery campaign from a JSON config");
    std::string e_config, e_out;
    bool e_timing = false;
    e->add_option("--config", e_config)->required();
    e->add_option("--out", e_out, "CSV path (overrides config)");
    e->add_flag("--timing", e_timing, "fill the ms column (breaks byte reproducibility)");

    // search
    auto* s = app.add_subcommand("search", "random hill climb for max tau at kappa = 1");
    int s_M = 0, s_N = 0, s_S = 0, s_iters = 100;
    std::uint64_t s_seed = 0;
    std::string s_rnorm = "inf", s_out, s_trace;
    s->add_option("--M", s_M)->required();
    s->add_option("--N", s_N)->required();
    s->add_option("--S", s_S)->required();
    s->add_option("--iters", s_iters);
    s->add_option("--seed", s_seed);
    s->add_option("--rnorm", s_rnorm);
    s->add_option("--out", s_out, "best matrix path");
    s->add_option("--trace", s_trace, "tau trace path, one value per line");

    for (CLI::App* sub : {c, d, ce, b, e, s})
        sub->set_version_flag("--version", "nnrec 0.1.0");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c) return cmd_construct(c_kind, c_M, c_N, c_S, c_K, c_nodes, c_thetas, c_out, c_order);
        if (*d) return cmd_decode(d_matrix, d_y, d_decoder, d_rnorm, d_S, d_out);
        if (*ce) return cmd_certify(ce_matrix, ce_S, ce_rnorm, ce_alphas, ce_report);
        if (*b) return cmd_bound(b_S, b_M, b_N, b_q, b_field);
        if (*e) return cmd_experiment(e_config, e_out, e_timing);
        if (*s) return cmd_search(s_M, s_N, s_S, s_iters, s_seed, s_rnorm, s_out, s_trace);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
