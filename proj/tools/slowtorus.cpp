#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "slowtorus/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace slowtorus;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitConfig = 3;
constexpr int kExitOverflow = 4;

void apply_thread_env() {
#ifdef _OPENMP
    if (const char* t = std::getenv("SLOWTORUS_THREADS")) {
        int n = std::atoi(t);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int status_exit(Status s) {
    switch (s) {
        case Status::Pass: return kExitPass;
        case Status::Fail: return kExitFail;
        default: return kExitIndeterminate;
    }
}

struct CommonOpts {
    long precision = 1024;
    long dense_to = 10000;
    int log_samples = 64;
    int grid = 32;
    int interior = 8;
    unsigned long seed = 20260823;
    std::string c_spec = "auto";
    std::string out_dir = "out";

    VerifyConfig verify_config() const {
        VerifyConfig cfg;
        cfg.prec = precision;
        cfg.dense_to = dense_to;
        cfg.log_samples = log_samples;
        cfg.grid = grid;
        cfg.interior_samples = interior;
        cfg.seed = seed;
        cfg.c = c_spec == "auto" ? Rat(1, 400) : parse_rat(c_spec);
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--precision", o.precision, "working precision in bits")
        ->check(CLI::Range(64L, 1L << 24));
    cmd->add_option("--dense-to", o.dense_to, "dense schedule head 1..dense_to");
    cmd->add_option("--log-samples", o.log_samples, "log-spaced samples up to the horizon");
    cmd->add_option("--grid", o.grid, "x-grid size for W_max lower bounds");
    cmd->add_option("--interior-samples", o.interior, "seeded interior beta samples");
    cmd->add_option("--seed", o.seed, "seed for interior beta samples");
    cmd->add_option("--c", o.c_spec, "scaling constant c (rational, or 'auto' = 1/400)");
    cmd->add_option("--out-dir,-o", o.out_dir, "output directory");
}

void emit_certificate(const Certificate& cert, const std::string& path) {
    write_atomic(path, certificate_to_json(cert).dump(2) + "\n");
}

void print_summary(const Certificate& cert) {
    for (const auto& c : cert.checks)
        std::cout << c.name << ": " << status_str(c.status) << " (margin.lo=" << c.margin.lo_str(8)
                  << ", witness: " << c.witness << ")\n";
    std::cout << "overall: " << status_str(cert.overall) << "\n";
}

int verify_and_emit(const ConstructionState& st, const AlphaCertificate& ac,
                    const CommonOpts& o, bool with_growth, long n_max) {
    VerifyConfig cfg = o.verify_config();
    fs::create_directories(o.out_dir);

    nlohmann::json sj = state_to_json(st, ac);
    std::string state_str = sj.dump(2) + "\n";
    write_atomic(o.out_dir + "/state.json", state_str);

    Certificate cert = verify_all(st, ac, cfg);
    cert.digest = digest_hex(state_str);
    emit_certificate(cert, o.out_dir + "/certificate.json");

    if (with_growth) {
        long dense = std::min(o.dense_to, n_max);
        std::vector<Int> sched = make_schedule(st, dense, o.log_samples, true);
        auto rows = growth_table(st, cfg.c, ac.alpha, sched, cfg.prec, cfg.grid);
        write_atomic(o.out_dir + "/growth.csv", growth_csv(rows));
    }

    print_summary(cert);
    std::cout << "outputs written to " << o.out_dir << "/\n";
    return status_exit(cert.overall);
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();
    CLI::App app{"slowtorus: constructive slow-growth torus diffeomorphism with certified checks"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "construct a state, verify it, emit growth data");
    std::string phi_spec = "log2:2,1";
    int depth = 2;
    std::string mode = "paper";
    int lambda = 100;
    long n_max = 10000;
    long bit_budget = 1L << 22;
    long eager_m_bits = 1L << 20;
    CommonOpts ro;
    run->add_option("--phi", phi_spec, "growth function: power:a,b,beta | log:a,b | log2:a,b");
    run->add_option("--depth", depth, "construction depth P")->check(CLI::PositiveNumber);
    run->add_option("--mode", mode, "constants profile")->check(CLI::IsMember({"paper", "desk"}));
    run->add_option("--lambda", lambda, "frequency ratio divisor (q_{p+1} = lambda q_p N_p)");
    run->add_option("--n-max", n_max, "largest dense-schedule N");
    run->add_option("--bit-budget", bit_budget, "hard cap on materialized integer bit sizes");
    run->add_option("--eager-m-bits", eager_m_bits, "materialize M_p eagerly below this size");
    add_common(run, ro);

    // verify
    auto* ver = app.add_subcommand("verify", "re-check an existing state file");
    std::string state_path;
    CommonOpts vo;
    ver->add_option("--state", state_path, "state JSON from a prior run")->required();
    add_common(ver, vo);

    // plotdata
    auto* plot = app.add_subcommand("plotdata", "emit Gamma/phi ratio bounds from a growth CSV");
    std::string csv_path, plot_out = "plot.csv";
    plot->add_option("--csv", csv_path, "growth CSV from a prior run")->required();
    plot->add_option("--out", plot_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) {
            if (ro.dense_to > n_max) ro.dense_to = n_max;
            ConstantsProfile profile;
            profile.lambda = lambda;
            profile.mode =
                mode == "desk" ? ConstantsProfile::Mode::Desk : ConstantsProfile::Mode::Paper;
            Settings settings;
            settings.bit_budget = Int(bit_budget);
            settings.eager_m_bits = Int(eager_m_bits);
            GrowthFunction phi = GrowthFunction::parse(phi_spec);
            auto [st, ac] = build(phi, depth, profile, settings);
            return verify_and_emit(st, ac, ro, /*with_growth=*/true, n_max);
        }
        if (ver->parsed()) {
            auto j = nlohmann::json::parse(slurp(state_path));
            auto [st, ac] = state_from_json(j);
            return verify_and_emit(st, ac, vo, /*with_growth=*/false, 0);
        }
        if (plot->parsed()) {
            write_atomic(plot_out, plot_data_from_csv(slurp(csv_path)));
            std::cout << "plot data written to " << plot_out << "\n";
            return kExitPass;
        }
    } catch (const budget_error& e) {
        std::cerr << "OVERFLOW at " << e.where << ": " << e.what() << "\n";
        return kExitOverflow;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
