// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Heavy fixtures (the depth-2 paper reference run, the depth-5 desk run) are
// built once and shared across criteria.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slowtorus/io.hpp"

using namespace slowtorus;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int num, bool ok, const std::string& desc, const std::string& detail = "") {
    std::cout << "criterion " << num << ": " << (ok ? "PASS" : "FAIL") << " - " << desc;
    if (!ok && !detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Run {
    ConstructionState st;
    AlphaCertificate ac;
};

Settings default_settings() {
    Settings s;
    s.prec = PrecCtx{192, mpfr_prec_t(1) << 18};
    return s;
}

Run build_reference() {
    Settings s = default_settings();
    auto [st, ac] = build(GrowthFunction::parse("log2:2,1"), 2, ConstantsProfile{}, s);
    return Run{std::move(st), std::move(ac)};
}

Run build_desk() {
    Settings s = default_settings();
    ConstantsProfile desk;
    desk.mode = ConstantsProfile::Mode::Desk;
    auto [st, ac] = build(GrowthFunction::parse("power:2,1,1/2"), 5, desk, s);
    return Run{std::move(st), std::move(ac)};
}

// Endpoints of A_n plus `count` seeded interior samples.
std::vector<std::pair<Rat, std::string>> betas_in(const ConstructionState& st, int n, int count,
                                                  unsigned long seed) {
    const Rat& lo = st.A[n].first;
    const Rat& hi = st.A[n].second;
    std::vector<std::pair<Rat, std::string>> out{{lo, "A_n.lo"}, {hi, "A_n.hi"}};
    std::mt19937_64 rng(seed + static_cast<unsigned long>(n));
    const long den = 1L << 53;
    for (int i = 0; i < count; ++i) {
        long u = static_cast<long>(rng() >> 11);
        if (u < 1) u = 1;
        if (u > den - 1) u = den - 1;
        Rat t(u, den);
        t.canonicalize();
        Rat b = lo + (hi - lo) * t;
        b.canonicalize();
        out.emplace_back(b, "interior#" + std::to_string(i));
    }
    return out;
}

const CheckResult* find_check(const std::vector<CheckResult>& cs, const std::string& name) {
    for (const auto& c : cs)
        if (c.name == name) return &c;
    return nullptr;
}

bool all_pass(const std::vector<CheckResult>& cs, std::string& why) {
    for (const auto& c : cs)
        if (c.status != Status::Pass) {
            why += c.name + "=" + status_str(c.status) + "(" + c.witness + ") ";
            return false;
        }
    return true;
}

// --- criterion 1 -----------------------------------------------------------

bool criterion1(std::string& why) {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20260823);
    std::uniform_int_distribution<long> qd(1, 10000);
    std::uniform_int_distribution<long> Nd(1, 400);
    std::uniform_int_distribution<long> bd(0, 99990);
    for (int i = 0; i < 200; ++i) {
        Int q(qd(rng));
        long N = Nd(rng);
        Rat beta(bd(rng), 99991);
        beta.canonicalize();
        CIval direct = delta_direct(q, N, beta, 128);
        ExpSum closed = delta_closed(theta_of(q, beta), Int(N), 128);
        if (!direct.re.intersects(closed.value.re) || !direct.im.intersects(closed.value.im)) {
            why = "case " + std::to_string(i) + ": enclosures disjoint";
            return false;
        }
        if (closed.value.re.width_d() >= 1e-12 || closed.value.im.width_d() >= 1e-12 ||
            direct.re.width_d() >= 1e-12 || direct.im.width_d() >= 1e-12) {
            why = "case " + std::to_string(i) + ": width above 1e-12";
            return false;
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 10.0) {
        why = "runtime " + std::to_string(dt) + "s >= 10s";
        return false;
    }
    return true;
}

// --- criterion 7 -----------------------------------------------------------

double sigma_oracle(double w) {
    double t = 2 + w * w;
    double lmax = (t + std::sqrt(t * t - 4)) / 2;
    return std::sqrt(lmax);
}

bool criterion7(const Run& ref, std::string& why) {
    Rat c = choose_c(ref.st);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> Nd(1, 500);
    std::uniform_int_distribution<long> xd(0, 9972);
    for (int i = 0; i < 100; ++i) {
        long N = Nd(rng);
        Rat x(xd(rng), 9973);
        x.canonicalize();
        UnipotentJacobian J = orbit_cocycle(ref.st, c, ref.ac.alpha, x, N, 256);
        Ival cw = mul_rat(W_sum(ref.st, ref.ac.alpha, x, Int(N), 256), c);
        if (!J.w.intersects(cw)) {
            why = "cocycle/Weyl mismatch at case " + std::to_string(i);
            return false;
        }
    }
    std::uniform_real_distribution<double> wd(-8.0, 8.0);
    for (int i = 0; i < 50; ++i) {
        Rat wr(static_cast<long>(wd(rng) * (1L << 40)), 1L << 40);
        wr.canonicalize();
        Ival s = sigma(Ival::from_rat(wr, 192));
        if (std::abs(s.mid_d() - sigma_oracle(wr.get_d())) >= 1e-12) {
            why = "sigma oracle mismatch at sample " + std::to_string(i);
            return false;
        }
    }
    return true;
}

// --- criterion 8 -----------------------------------------------------------

struct Mutation {
    std::string label;
    std::string expect;  // check that must fail
    void (*apply)(Run&);
};

const Mutation kMutations[] = {
    {"r_1 doubled", "ind-14",
     [](Run& r) {
         r.st.r[1] *= 2;
         r.st.r_exp[1] -= 1;
     }},
    {"q_2 off by one (breaks (3))", "cond-3", [](Run& r) { r.st.q[2] += 1; }},
    {"N_1 lowered to 64", "struct-q", [](Run& r) { r.st.N[1] = 64; }},
    {"N_1 raised to 66", "struct-q", [](Run& r) { r.st.N[1] = 66; }},
    {"k_1 set to 2", "struct-k", [](Run& r) { r.st.k[1] = 2; }},
    {"A_1 upper endpoint widened", "struct-A",
     [](Run& r) { r.st.A[1].second += Rat(1, 6500); }},
    {"M_1 bumped past the minimal threshold", "struct-M", [](Run& r) { r.st.M[1] += 2; }},
    {"alpha shifted off the residue tower", "alpha-sum",
     [](Run& r) { r.ac.alpha = Rat(6502, 6500); }},
    {"threshold y_2 collapsed", "ind-13", [](Run& r) { r.st.m_threshold[2] = Rat(1, 100); }},
    {"tail bound inflated", "alpha-resonance", [](Run& r) { r.ac.tail_bound = Rat(1); }},
};

bool criterion8(const Run& ref, std::string& why) {
    VerifyConfig cfg;
    cfg.prec = 512;
    cfg.prec_max = mpfr_prec_t(1) << 18;
    cfg.dense_to = 50;
    cfg.log_samples = 4;
    cfg.grid = 8;
    cfg.interior_samples = 0;

    // c = 0 removes the shear entirely; the lower growth bound at the
    // checkpoints must then fail (phi(N_2)/40000 > 1 = sigma(0)).
    {
        VerifyConfig c0 = cfg;
        c0.c = Rat(0);
        auto res = verify_final(ref.st, ref.ac, c0);
        const CheckResult* low = find_check(res, "theorem-lower");
        if (!low || low->status != Status::Fail) {
            why = "c=0 control: theorem-lower did not FAIL";
            return false;
        }
    }

    for (const Mutation& m : kMutations) {
        Run mutated = ref;
        m.apply(mutated);
        Certificate cert = verify_all(mutated.st, mutated.ac, cfg);
        const CheckResult* c = find_check(cert.checks, m.expect);
        if (cert.overall != Status::Fail || !c || c->status != Status::Fail) {
            why = "mutation '" + m.label + "': expected " + m.expect + " to FAIL, overall=" +
                  status_str(cert.overall);
            return false;
        }
    }
    return true;
}

// --- criterion 9 -----------------------------------------------------------

bool criterion9(std::string& why) {
#ifdef SLOWTORUS_CLI_PATH
    std::string cmd = std::string(SLOWTORUS_CLI_PATH) +
                      " run --phi log2:2,1 --depth 4 --mode paper --out-dir acceptance_out 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        why = "popen failed";
        return false;
    }
    std::string output;
    char buf[512];
    while (size_t n = fread(buf, 1, sizeof buf, p)) output.append(buf, n);
    int rc = pclose(p);
    int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    if (code != 4) {
        why = "exit code " + std::to_string(code) + " != 4; output: " + output.substr(0, 200);
        return false;
    }
    if (output.find("OVERFLOW") == std::string::npos || output.find("r_3") == std::string::npos) {
        why = "diagnostic missing OVERFLOW/r_3: " + output.substr(0, 200);
        return false;
    }
    return true;
#else
    // Library-level fallback: the builder itself must throw at r_3.
    try {
        build(GrowthFunction::parse("log2:2,1"), 4, ConstantsProfile{}, default_settings());
        why = "no overflow raised";
        return false;
    } catch (const budget_error& e) {
        if (e.where == "r_3") return true;
        why = "overflow at " + e.where + ", expected r_3";
        return false;
    }
#endif
}

}  // namespace

int main() {
    std::cout << "building depth-2 paper reference run..." << std::endl;
    Run ref = build_reference();

    VerifyConfig full;  // 1024-bit start, dense 1..10^4, 64 log samples
    std::vector<Int> full_sched = make_schedule(ref.st, full.dense_to, full.log_samples, true);

    // 1. Oracle equivalence for the exponential sums.
    {
        std::string why;
        bool ok = criterion1(why);
        report(1, ok, "delta_closed vs delta_direct: 200 cases intersect, widths < 1e-12, < 10 s",
               why);
    }

    // 2. Claim suite on the reference run.
    {
        std::string why;
        bool ok = true;
        for (int n = 1; n <= ref.st.depth && ok; ++n) {
            auto betas = betas_in(ref.st, n, 8, full.seed);
            auto res = verify_claim(ref.st, n, betas, full_sched, full);
            ok = all_pass(res, why);
        }
        report(2, ok, "claim (8)/(9)/(10) PASS at A_n endpoints + 8 interior betas, none "
                      "INDETERMINATE at 1024 bits",
               why);
    }

    // 3. Construction reference values and their serialization.
    {
        std::string why;
        bool ok = ref.st.r[1] == Rat(1, 8) && ref.st.N[1] == 65 && ref.st.q[2] == 6500 &&
                  ref.ac.alpha == Rat(6501, 6500);
        nlohmann::json j = state_to_json(ref.st, ref.ac);
        ok = ok && j["r"][0] == "2^-3" && j["N"][0] == "65" && j["q"][1] == "6500" &&
             j["alpha"] == "6501/6500";
        if (!ok) why = "state: r_1=" + rat_str(ref.st.r[1]) + " N_1=" + ref.st.N[1].get_str() +
                       " q_2=" + ref.st.q[2].get_str() + " alpha=" + rat_str(ref.ac.alpha);
        report(3, ok, "reference run reproduces r_1=1/8, N_1=65, q_2=6500, alpha=6501/6500 "
                      "and the state JSON matches",
               why);
    }

    // 4. Induction suite on the reference and the desk run.
    {
        std::string why;
        auto t0 = Clock::now();
        bool ok = all_pass(verify_induction(ref.st, ref.ac, full), why);

        Run desk = build_desk();
        VerifyConfig dcfg;
        dcfg.prec = 512;
        dcfg.prec_max = mpfr_prec_t(1) << 18;
        dcfg.dense_to = 1000;
        dcfg.log_samples = 16;
        dcfg.grid = 16;
        dcfg.interior_samples = 2;
        ok = ok && all_pass(verify_induction(desk.st, desk.ac, dcfg), why);

        auto digits = [](const Int& v) { return mpz_sizeinbase(v.get_mpz_t(), 10); };
        size_t n2 = digits(desk.st.N[2]), n3 = digits(desk.st.N[3]);
        if (!(n2 >= 22 && n2 <= 24 && n3 >= 64 && n3 <= 68)) {
            ok = false;
            why += "desk magnitudes off: N_2 has " + std::to_string(n2) + " digits, N_3 has " +
                   std::to_string(n3);
        }
        if (!desk.st.M_set[2] || digits(desk.st.M[2]) < 30 || digits(desk.st.M[2]) > 32) {
            ok = false;
            why += " M_2 magnitude off";
        }
        double dt = seconds_since(t0);
        if (dt >= 300.0) {
            ok = false;
            why += " runtime " + std::to_string(dt) + "s >= 300s";
        }
        report(4, ok, "induction (11)-(19) PASS on reference and desk depth-5 runs; desk "
                      "magnitudes ~1e23/1e31/1e66; < 5 min",
               why);
    }

    // 5 & 6. Final and theorem-level bounds from one verify_final pass.
    {
        std::string why5, why6;
        auto res = verify_final(ref.st, ref.ac, full);
        const CheckResult* f6 = find_check(res, "final-6");
        const CheckResult* f7 = find_check(res, "final-7");
        bool ok5 = f6 && f6->status == Status::Pass && f7 && f7->status == Status::Pass;
        if (!ok5)
            why5 = std::string("final-6=") + (f6 ? status_str(f6->status) : std::string("missing")) +
                   " final-7=" + (f7 ? status_str(f7->status) : "missing");
        report(5, ok5, "S(N_j)/phi(N_j) >= 1/100 at checkpoints and T <= 200 phi over dense "
                       "1..1e4 plus 64 log samples",
               why5);

        const CheckResult* up = find_check(res, "theorem-upper");
        const CheckResult* low = find_check(res, "theorem-lower");
        bool ok6 = up && up->status == Status::Pass && low && low->status == Status::Pass;
        if (!ok6)
            why6 = std::string("theorem-upper=") + (up ? status_str(up->status) : std::string("missing")) +
                   " theorem-lower=" + (low ? status_str(low->status) : "missing");
        report(6, ok6, "with c=1/400: Gamma_N <= phi(N) on the schedule, Gamma_{N_j} >= "
                       "phi(N_j)/40000 at checkpoints",
               why6);
    }

    // 7. Cocycle and singular-value oracles.
    {
        std::string why;
        bool ok = criterion7(ref, why);
        report(7, ok, "orbit_cocycle matches c*W_sum on 100 random (x,N); sigma matches the "
                      "SVD oracle to 1e-12 on 50 samples",
               why);
    }

    // 8. Negative controls.
    {
        std::string why;
        bool ok = criterion8(ref, why);
        report(8, ok, "c=0 fails theorem-lower; all 10 state mutations fail a named check", why);
    }

    // 9. Paper-mode depth limit.
    {
        std::string why;
        bool ok = criterion9(why);
        report(9, ok, "depth-4 paper run exits with the OVERFLOW diagnostic at r_3", why);
    }

    std::cout << (g_failures == 0 ? "acceptance: all criteria PASS"
                                  : "acceptance: " + std::to_string(g_failures) + " FAILED")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
