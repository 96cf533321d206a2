#pragma once

#include <string>
#include <vector>

#include "slowtorus/dynamics.hpp"

namespace slowtorus {

enum class Status { Pass, Fail, Indeterminate };

std::string status_str(Status s);

// One named inequality check. PASS means the inequality holds at the worst
// interval endpoints; the margin is the certified slack (LHS vs RHS), with
// the sample realizing the smallest lower endpoint recorded as witness.
struct CheckResult {
    std::string name;
    Status status = Status::Indeterminate;
    Ival margin;
    std::string witness;

    CheckResult(std::string n, Status s, Ival m, std::string w)
        : name(std::move(n)), status(s), margin(std::move(m)), witness(std::move(w)) {}
};

struct Certificate {
    std::string digest;   // filled in by the caller that serialized the state
    std::string profile;  // mode/phi/depth summary
    std::string horizon;  // N_P, abbreviated when enormous
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    Status overall = Status::Indeterminate;
};

struct VerifyConfig {
    mpfr_prec_t prec = 1024;                    // starting working precision
    mpfr_prec_t prec_max = mpfr_prec_t(1) << 20;  // cap for refinement
    Rat c = Rat(1, 400);
    long dense_to = 10000;   // dense N-schedule head
    int log_samples = 64;    // log-spaced bignum samples up to the horizon
    int grid = 32;           // x-grid for W_max / symmetry checks
    int interior_samples = 8;  // seeded interior beta samples per interval
    unsigned long seed = 20260823;
};

// The Claim at level n: inequality (8) for N up to q_{n+1}/(100 q_n),
// (9) over the schedule, (10) pointwise; beta_samples must lie in A_n.
std::vector<CheckResult> verify_claim(const ConstructionState& st, int n,
                                      const std::vector<std::pair<Rat, std::string>>& betas,
                                      const std::vector<Int>& schedule,
                                      const VerifyConfig& cfg);

// Induction inequalities (11)-(19) at every step, at alpha and the A_P
// endpoints plus seeded interior samples.
std::vector<CheckResult> verify_induction(const ConstructionState& st,
                                          const AlphaCertificate& ac, const VerifyConfig& cfg);

// Concluding bounds: final-6/final-7 plus the theorem-level Gamma bounds.
std::vector<CheckResult> verify_final(const ConstructionState& st, const AlphaCertificate& ac,
                                      const VerifyConfig& cfg);

// Structural checks, alpha membership, (3), (4), then claim + induction +
// final; results sorted by name, aggregate PASS iff nothing failed.
Certificate verify_all(const ConstructionState& st, const AlphaCertificate& ac,
                       const VerifyConfig& cfg);

}  // namespace slowtorus
