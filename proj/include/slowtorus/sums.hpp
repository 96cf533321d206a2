#pragma once

#include <optional>
#include <vector>

#include "slowtorus/construction.hpp"
#include "slowtorus/interval.hpp"

namespace slowtorus {

// Certified value of the geometric sum Delta(N) = sum_{n<N} e^{2 pi i q n beta}
// at resonance fraction theta = {q*beta}.
struct ExpSum {
    CIval value;
    Ival magnitude;
    Rat theta;
    Int N;
};

// Exact resonance fraction {q*beta}.
inline Rat theta_of(const Int& q, const Rat& beta) { return frac(Rat(q) * beta); }

// Literal N-term sum; oracle path, N capped at 10^6.
CIval delta_direct(const Int& q, long N, const Rat& beta, mpfr_prec_t prec);

// Dirichlet-kernel form |Delta| = |sin(pi N theta)/sin(pi theta)| with phase
// e^{i pi (N-1) theta}; all argument reductions are exact in Rat, so N may
// have thousands of digits. theta = 0 is the resonant branch, Delta = N.
ExpSum delta_closed(const Rat& theta, const Int& N, mpfr_prec_t prec);

// S, T, W sums over the constructed levels 1..cap (cap < 0 means full depth).
Ival S_sum(const ConstructionState& st, const Rat& beta, const Int& N, mpfr_prec_t prec,
           int cap = -1);
Ival T_sum(const ConstructionState& st, const Rat& beta, const Int& N, mpfr_prec_t prec,
           int cap = -1);
Ival W_sum(const ConstructionState& st, const Rat& beta, const Rat& x, const Int& N,
           mpfr_prec_t prec, int cap = -1);

// Precomputed cos/sin of 2 pi q_k j/grid; shared read-only across threads.
struct TrigCache {
    int grid = 0;
    mpfr_prec_t prec = 0;
    // pairs (cos, sin), indexed [level-1][j]
    std::vector<std::vector<std::pair<Ival, Ival>>> cs;
};

TrigCache make_trig_cache(const ConstructionState& st, int grid, mpfr_prec_t prec);

// Certified enclosure [L, U] of max_x |W(N, x, beta)|. U is the triangle
// bound sum r_k |Delta_k|; L comes from grid evaluation plus the candidate x
// aligning the phase of the dominant level.
Ival W_max(const ConstructionState& st, const Rat& beta, const Int& N, mpfr_prec_t prec,
           int grid, const TrigCache* cache = nullptr);

// Per-level sums for one (beta, N); building block shared by the routines
// above.
std::vector<ExpSum> level_deltas(const ConstructionState& st, const Rat& beta, const Int& N,
                                 mpfr_prec_t prec, int cap = -1);

}  // namespace slowtorus
