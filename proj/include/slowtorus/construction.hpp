#pragma once

#include <utility>
#include <vector>

#include "slowtorus/phi.hpp"

namespace slowtorus {

struct ConstantsProfile {
    enum class Mode { Paper, Desk };
    int lambda = 100;       // frequency ratio divisor
    Mode mode = Mode::Paper;  // Desk disables the coefficient decay cap
};

struct Settings {
    PrecCtx prec;
    Int bit_budget = Int(1) << 22;    // hard cap on materialized integer sizes
    Int eager_m_bits = Int(1) << 20;  // M_p materialized eagerly below this
};

// The induction record. Index conventions: q[1..p+1], r[1..p], N[0..p],
// M[0..p] (the final entry may be deferred), k[1..p], A[0..p].
struct ConstructionState {
    GrowthFunction phi = GrowthFunction::parse("log2:2,1");
    ConstantsProfile profile;
    int depth = 0;

    std::vector<Int> q{Int(0), Int(1)};
    std::vector<Rat> r{Rat(0)};
    std::vector<long> r_exp{0};  // r[p] = 2^{-r_exp[p]}
    std::vector<Int> N{Int(1)};
    std::vector<Int> M{Int(1)};
    std::vector<bool> M_set{true};
    std::vector<Rat> m_threshold{Rat(0)};  // y_p = 100*B_p
    std::vector<Int> k{Int(0)};
    std::vector<std::pair<Rat, Rat>> A{{Rat(0), Rat(1)}};
    Rat B;  // sum of r_n * q_{n+1}/q_n up to current depth

    const Int& horizon() const { return N[depth]; }
};

struct AlphaCertificate {
    Rat alpha;                  // depth-P truncation of the rotation number
    std::vector<Rat> residues;  // residues[n] = q_n*alpha - k_n, n = 1..P
    Rat tail_bound;             // bound on the discarded infinite tail
};

// k_n = sum_{s<=n} q_n/q_s; throws if the divisibility condition fails.
Int k_index(const std::vector<Int>& q, int n);

// The beta-interval at level n: both endpoints exact.
std::pair<Rat, Rat> interval_A(const Int& q_n, const Int& q_next, const Int& k_n);

// Largest dyadic 2^{-e} compatible with the step-p constraints; returns e.
// Checks the decay-condition feasibility against the bit budget before
// touching anything large, so a paper-mode overflow is reported at r_p.
long choose_r_exp(const ConstructionState& st, const Settings& s);

// Materialize a deferred M_p (no-op when already present).
void materialize_M(ConstructionState& st, int p, const Settings& s);

// One induction step: appends r_p, N_p, q_{p+1}, A_p, and M_p.
void extend(ConstructionState& st, const Settings& s);

AlphaCertificate alpha_certificate(const ConstructionState& st);

std::pair<ConstructionState, AlphaCertificate> build(const GrowthFunction& phi, int depth,
                                                     const ConstantsProfile& profile,
                                                     const Settings& s);

}  // namespace slowtorus
