#pragma once

#include <vector>

#include "slowtorus/sums.hpp"

namespace slowtorus {

// Point on the torus [0,1) x [0,1). The x-coordinate stays exact under the
// map; the y-coordinate becomes an interval after one step because F(x) is
// transcendental.
struct TorusPoint {
    Rat x;
    Rat y;
};

struct TorusPointIval {
    Rat x;
    Ival y;
};

// The matrix [[1,0],[w,1]]; determinant 1 by shape.
struct UnipotentJacobian {
    Ival w;
};

struct GrowthRecord {
    Int N;
    Ival phi_N;
    Ival S;
    Ival T;
    Ival Wmax;
    Ival gamma;
    GrowthRecord(Int n, Ival p, Ival s, Ival t, Ival wm, Ival g)
        : N(std::move(n)), phi_N(std::move(p)), S(std::move(s)), T(std::move(t)),
          Wmax(std::move(wm)), gamma(std::move(g)) {}
};

// F(x) = sum_k r_k/(2 pi q_k) sin(2 pi q_k x), truncated at the constructed
// depth (the truncation is exact: the constructed F has depth terms).
Ival F_eval(const ConstructionState& st, const Rat& x, mpfr_prec_t prec);
// F'(x) = sum_k r_k cos(2 pi q_k x).
Ival Fprime_eval(const ConstructionState& st, const Rat& x, mpfr_prec_t prec);

// f(x,y) = ({x+alpha}, {y + c F(x)}) and its inverse.
TorusPointIval apply_f(const ConstructionState& st, const Rat& c, const Rat& alpha,
                       const TorusPoint& p, mpfr_prec_t prec);
TorusPointIval apply_f(const ConstructionState& st, const Rat& c, const Rat& alpha,
                       const TorusPointIval& p, mpfr_prec_t prec);
TorusPointIval apply_f_inv(const ConstructionState& st, const Rat& c, const Rat& alpha,
                           const TorusPointIval& p, mpfr_prec_t prec);

// Product of the N step-Jacobians [[1,0],[c F'(x+n alpha),1]]; additive in
// the lower-left entry, so w = c * sum_n F'(x + n alpha). Oracle path, N
// capped at 10^4.
UnipotentJacobian orbit_cocycle(const ConstructionState& st, const Rat& c, const Rat& alpha,
                                const Rat& x, long N, mpfr_prec_t prec);

// Largest singular value of [[1,0],[w,1]]: sigma(w) = (|w| + sqrt(w^2+4))/2.
Ival sigma(const Ival& w);

// Growth-sequence row at N: phi(N), S, T, W_max and Gamma_N = sigma(c*W_max).
GrowthRecord gamma_record(const ConstructionState& st, const Rat& c, const Rat& alpha,
                          const Int& N, mpfr_prec_t prec, int grid,
                          const TrigCache* cache = nullptr);

// Default scaling constant; sigma(c*T) <= phi needs c*200*phi + 1 <= phi,
// which holds with c = 1/400 whenever phi >= 2.
Rat choose_c(const ConstructionState& st);

// The forward/backward reduction behind Gamma_N = sigma(c*W_max): checks at
// every grid point that the backward Birkhoff sum -sum_{n=1..N} F'(x-n*alpha)
// agrees with the closed form -W(N, x-N*alpha).
bool gamma_symmetry_check(const ConstructionState& st, const Rat& alpha, const Int& N,
                          mpfr_prec_t prec, int grid);

// Evaluation schedule: 1..dense_to dense, log-spaced samples up to the
// horizon, and (optionally) the checkpoints N_1..N_P; sorted, deduplicated.
std::vector<Int> make_schedule(const ConstructionState& st, long dense_to, int log_samples,
                               bool include_checkpoints);

// Growth table over a schedule. The parallel version and the serial
// reference produce bitwise-identical rows.
std::vector<GrowthRecord> growth_table(const ConstructionState& st, const Rat& c,
                                       const Rat& alpha, const std::vector<Int>& schedule,
                                       mpfr_prec_t prec, int grid);
std::vector<GrowthRecord> growth_table_serial(const ConstructionState& st, const Rat& c,
                                              const Rat& alpha, const std::vector<Int>& schedule,
                                              mpfr_prec_t prec, int grid);

}  // namespace slowtorus
