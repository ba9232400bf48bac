#include "nnrec/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nnrec/certify.hpp"
#include "nnrec/decode.hpp"
#include "nnrec/rng.hpp"

namespace nnrec {

namespace {

using nlohmann::json;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

const std::vector<std::string> kDecoderTags = {"nnlr_inf", "nnlr_l1", "nnbp", "l0"};

void reject_unknown_keys(const json& j, const std::vector<std::string>& known,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : known)
            if (it.key() == k) {
                ok = true;
                break;
            }
        require(ok, "config: unknown key '" + it.key() + "' in " + where);
    }
}

ConstructionSpec parse_construction(const json& j) {
    reject_unknown_keys(j, {"kind", "M", "N", "S", "K", "nodes", "thetas"}, "construction");
    ConstructionSpec spec;
    require(j.contains("kind"), "config: construction.kind missing");
    spec.kind = kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("M")) spec.M = j.at("M").get<int>();
    if (j.contains("N")) spec.N = j.at("N").get<int>();
    if (j.contains("S")) spec.S = j.at("S").get<int>();
    if (j.contains("K")) spec.K = j.at("K").get<int>();
    if (j.contains("nodes")) spec.nodes = j.at("nodes").get<std::vector<double>>();
    if (j.contains("thetas")) spec.thetas = j.at("thetas").get<std::vector<double>>();
    return spec;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// RFC-4180: quote when a field contains comma, quote or newline.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct DecoderPlan {
    std::string tag;
    Norm rnorm = Norm::linf;
    bool bound_applies = false;  // the 2/tau robustness bound is a theorem here
};

}  // namespace

void ExperimentConfig::validate() const {
    require(construction.has_value() != !matrix_path.empty(),
            "config: exactly one of construction / matrix required");
    require(S >= 0, "config: S >= 0");
    require(trials >= 1, "config: trials >= 1");
    require(lo > 0.0 && lo <= hi, "config: magnitude needs 0 < lo <= hi");
    require(!noise.empty(), "config: noise level list must not be empty");
    for (double e : noise) require(e >= 0.0, "config: noise levels must be >= 0");
    require(tail >= 0.0, "config: tail >= 0");
    require(!decoders.empty(), "config: decoder set must not be empty");
    for (const auto& d : decoders) {
        bool known = false;
        for (const auto& tag : kDecoderTags) known = known || d == tag;
        require(known, "config: unknown decoder '" + d + "'");
    }
    for (size_t i = 0; i < decoders.size(); ++i)
        for (size_t j = i + 1; j < decoders.size(); ++j)
            require(decoders[i] != decoders[j], "config: duplicate decoder");
    if (tail > 0.0)
        for (const auto& d : decoders)
            require(d != "nnlr_l1",
                    "config: stability runs (tail > 0) need the exact sup-norm constants; "
                    "drop nnlr_l1");
}

ExperimentConfig parse_config_text(const std::string& text) {
    json j = json::parse(text);
    reject_unknown_keys(j,
                        {"construction", "matrix", "S", "decoders", "trials", "magnitude",
                         "noise", "tail", "seed", "out"},
                        "top level");
    ExperimentConfig cfg;
    if (j.contains("construction")) cfg.construction = parse_construction(j.at("construction"));
    if (j.contains("matrix")) cfg.matrix_path = j.at("matrix").get<std::string>();
    require(j.contains("S"), "config: S missing");
    cfg.S = j.at("S").get<int>();
    require(j.contains("decoders"), "config: decoders missing");
    cfg.decoders = j.at("decoders").get<std::vector<std::string>>();
    require(j.contains("trials"), "config: trials missing");
    cfg.trials = j.at("trials").get<int>();
    require(j.contains("magnitude"), "config: magnitude missing");
    {
        const json& m = j.at("magnitude");
        reject_unknown_keys(m, {"lo", "hi"}, "magnitude");
        cfg.lo = m.at("lo").get<double>();
        cfg.hi = m.at("hi").get<double>();
    }
    require(j.contains("noise"), "config: noise missing");
    cfg.noise = j.at("noise").get<std::vector<double>>();
    if (j.contains("tail")) cfg.tail = j.at("tail").get<double>();
    require(j.contains("seed"), "config: seed missing");
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

Vector gen_sparse_signal(int N, int S, std::uint64_t seed, double lo, double hi) {
    require(N >= 1 && S >= 0 && S <= N, "gen_sparse_signal: S in [0, N]");
    require(lo > 0.0 && lo <= hi, "gen_sparse_signal: 0 < lo <= hi");
    Rng rng(seed);
    Vector x = Vector::zeros(Field::real, N);
    for (int n : rng.sample_support(N, S)) x[n] = rng.uniform(lo, hi);
    return x;
}

Vector gen_noise(int M, double eps, std::uint64_t seed, Norm rnorm) {
    require(M >= 1, "gen_noise: M >= 1");
    require(eps >= 0.0, "gen_noise: eps >= 0");
    Vector e = Vector::zeros(Field::real, M);
    if (eps == 0.0) return e;
    Rng rng(seed);
    double norm = 0.0;
    while (norm == 0.0) {
        for (int m = 0; m < M; ++m) e[m] = rng.gaussian();
        norm = vec_norm(e, rnorm);
    }
    for (int m = 0; m < M; ++m) e[m] *= eps / norm;
    return e;
}

SuiteResult run_recovery_suite(const ExperimentConfig& cfg, bool parallel) {
    cfg.validate();

    Matrix A = cfg.construction ? build(*cfg.construction) : read_matrix(cfg.matrix_path);
    Matrix B = A.field == Field::cplx ? realify(A) : A;
    const int N = B.cols, M = B.rows;
    require(cfg.S <= N, "config: S exceeds the column count");

    std::vector<DecoderPlan> plans;
    for (const auto& tag : cfg.decoders) {
        DecoderPlan p;
        p.tag = tag;
        p.rnorm = tag == "nnlr_l1" ? Norm::l1 : Norm::linf;
        p.bound_applies = tag == "nnlr_inf" || tag == "nnlr_l1" || tag == "l0";
        plans.push_back(p);
    }

    SuiteResult res;
    CertifyReport cert = tau_exact(B, cfg.S, Norm::linf);
    res.tau_inf = cert.tau;
    res.kappa = kappa_exact_inf(B, cfg.S);
    res.verdict = cert.verdict;
    res.tau_l1 = 0.0;
    for (const auto& p : plans)
        if (p.rnorm == Norm::l1) res.tau_l1 = tau_exact(B, cfg.S, Norm::l1).tau;

    // Support sweep: exhaustive up to 200 supports, a seeded sample beyond.
    std::vector<std::vector<int>> supports;
    long long count = 1;
    for (int i = 1; i <= cfg.S; ++i) count = count * (N - cfg.S + i) / i;
    if (count <= 200) {
        std::vector<int> cur(cfg.S);
        for (int i = 0; i < cfg.S; ++i) cur[i] = i;
        if (cfg.S == 0) {
            supports.push_back({});
        } else {
            while (true) {
                supports.push_back(cur);
                int k = cfg.S - 1;
                while (k >= 0 && cur[k] == N - cfg.S + k) --k;
                if (k < 0) break;
                ++cur[k];
                for (int j = k + 1; j < cfg.S; ++j) cur[j] = cur[j - 1] + 1;
            }
        }
    } else {
        Rng rng(derive_seed(cfg.seed, 0));
        std::set<std::vector<int>> seen;
        while (static_cast<int>(seen.size()) < 200) seen.insert(rng.sample_support(N, cfg.S));
        supports.assign(seen.begin(), seen.end());
    }

    const int n_sup = static_cast<int>(supports.size());
    const int n_eps = static_cast<int>(cfg.noise.size());
    const int n_dec = static_cast<int>(plans.size());
    const long long total = static_cast<long long>(n_sup) * cfg.trials * n_eps;
    res.records.assign(static_cast<size_t>(total) * n_dec, TrialRecord{});

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long g = 0; g < total; ++g) {
        const int si = static_cast<int>(g / (cfg.trials * n_eps));
        const int rem = static_cast<int>(g % (cfg.trials * n_eps));
        const int ei = rem % n_eps;
        const double eps = cfg.noise[ei];
        const std::vector<int>& sup = supports[si];

        // Signal on this support: spike magnitudes uniform in [lo, hi],
        // off-support entries at the tail plateau.
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(g) * 2 + 1));
        Vector x = Vector::zeros(Field::real, N);
        if (cfg.tail > 0.0)
            for (int n = 0; n < N; ++n) x[n] = cfg.tail;
        for (int n : sup) x[n] = rng.uniform(cfg.lo, cfg.hi);

        Vector e = gen_noise(M, eps, derive_seed(cfg.seed, static_cast<std::uint64_t>(g) * 2 + 2),
                             Norm::linf);
        Vector y = matvec(B, x);
        for (int m = 0; m < M; ++m) y[m] += e[m];

        const double bsterm = best_s_term_distance_inf(x, cfg.S);
        const bool exact_case = eps == 0.0 && cfg.tail == 0.0;

        // faults stay inside the worker: recorded per row, run continues
        for (int di = 0; di < n_dec; ++di) {
            const DecoderPlan& plan = plans[di];
            TrialRecord rec;
            rec.trial = static_cast<int>(g);
            rec.support = sup;
            rec.eps = eps;
            rec.decoder = plan.tag;
            rec.tau = plan.rnorm == Norm::l1 ? res.tau_l1 : res.tau_inf;
            rec.kappa = res.kappa;

            auto t0 = std::chrono::steady_clock::now();
            DecodeResult d;
            bool fault = false;
            try {
                if (plan.tag == "nnlr_inf")
                    d = nnlr(B, y, Norm::linf);
                else if (plan.tag == "nnlr_l1")
                    d = nnlr(B, y, Norm::l1);
                else if (plan.tag == "nnbp")
                    d = nn_basis_pursuit(B, y);
                else
                    d = l0_bruteforce(B, y, cfg.S, Norm::linf, {true, false, 100000});
            } catch (const std::exception&) {
                fault = true;
            }
            rec.ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
            rec.status = fault ? "fault" : to_string(d.status);

            if (!fault && d.status == LpStatus::optimal) {
                double err = 0.0;
                for (int n = 0; n < N; ++n) err = std::max(err, std::fabs(d.estimate[n] - x[n]));
                rec.err_inf = err;
                rec.residual = d.residual_norm;
                double noise_r = vec_norm(e, plan.rnorm);
                rec.bound = rec.tau > 0.0
                                ? (1.0 + rec.kappa / rec.tau) * bsterm + 2.0 / rec.tau * noise_r
                                : lp_inf;
                if (exact_case) {
                    double xmax = vec_norm(x, Norm::linf);
                    rec.recovered = err <= 1e-5 * (1.0 + xmax);
                } else if (plan.bound_applies) {
                    rec.recovered = err <= rec.bound + 1e-6;
                } else {
                    rec.recovered = false;
                }
                rec.violation = plan.bound_applies && res.verdict && !rec.recovered;
            }
            res.records[static_cast<size_t>(g) * n_dec + di] = std::move(rec);
        }
    }

    for (const auto& r : res.records)
        if (r.violation) ++res.violations;
    return res;
}

std::string csv_body(const SuiteResult& result, bool timing) {
    std::ostringstream os;
    os << "trial,support,eps,decoder,err_inf,residual,tau,kappa,bound,recovered,status,ms\n";
    for (const auto& r : result.records) {
        std::string sup;
        for (size_t i = 0; i < r.support.size(); ++i) {
            if (i) sup += ';';
            sup += std::to_string(r.support[i]);
        }
        os << r.trial << ',' << csv_field(sup) << ',' << format_double(r.eps) << ','
           << csv_field(r.decoder) << ',' << format_double(r.err_inf) << ','
           << format_double(r.residual) << ',' << format_double(r.tau) << ','
           << format_double(r.kappa) << ',' << format_double(r.bound) << ','
           << (r.recovered ? 1 : 0) << ',' << csv_field(r.status) << ','
           << (timing ? format_double(r.ms) : std::string()) << '\n';
    }
    return os.str();
}

void write_csv(const std::string& path, const SuiteResult& result, bool timing) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated_at=" << stamp << '\n';
    os << csv_body(result, timing);
}

}  // namespace nnrec
