#include "slowtorus/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace slowtorus {

Ival F_eval(const ConstructionState& st, const Rat& x, mpfr_prec_t prec) {
    Ival two_pi = mul_2si(pi_ival(prec), 1);
    Ival acc(prec);
    for (int k = 1; k <= st.depth; ++k) {
        Rat ang = mod2(Rat(2) * Rat(st.q[k]) * x);
        Ival term = div(mul_rat(sin_pi(ang, prec), st.r[k] / Rat(st.q[k])), two_pi);
        acc = add(acc, term);
    }
    return acc;
}

Ival Fprime_eval(const ConstructionState& st, const Rat& x, mpfr_prec_t prec) {
    Ival acc(prec);
    for (int k = 1; k <= st.depth; ++k) {
        Rat ang = mod2(Rat(2) * Rat(st.q[k]) * x);
        acc = add(acc, mul_rat(cos_pi(ang, prec), st.r[k]));
    }
    return acc;
}

namespace {

// Reduce an interval mod 1 by subtracting the floor of the lower endpoint;
// if the interval straddles an integer, fall back to the full circle [0,1].
Ival wrap_unit(const Ival& y) {
    mpfr_prec_t p = y.prec();
    Ival fl(p);
    mpfr_floor(fl.lo(), y.lo());
    mpfr_floor(fl.hi(), y.hi());
    if (mpfr_cmp(fl.lo(), fl.hi()) != 0) {
        Ival circle(p);
        mpfr_set_zero(circle.lo(), 1);
        mpfr_set_ui(circle.hi(), 1, MPFR_RNDU);
        return circle;
    }
    Ival out(p);
    mpfr_sub(out.lo(), y.lo(), fl.lo(), MPFR_RNDD);
    mpfr_sub(out.hi(), y.hi(), fl.hi(), MPFR_RNDU);
    return out;
}

}  // namespace

TorusPointIval apply_f(const ConstructionState& st, const Rat& c, const Rat& alpha,
                       const TorusPoint& p, mpfr_prec_t prec) {
    return apply_f(st, c, alpha, TorusPointIval{p.x, Ival::from_rat(p.y, prec)}, prec);
}

TorusPointIval apply_f(const ConstructionState& st, const Rat& c, const Rat& alpha,
                       const TorusPointIval& p, mpfr_prec_t prec) {
    Rat nx = frac(p.x + alpha);
    Ival ny = wrap_unit(add(p.y, mul_rat(F_eval(st, p.x, prec), c)));
    return TorusPointIval{nx, std::move(ny)};
}

TorusPointIval apply_f_inv(const ConstructionState& st, const Rat& c, const Rat& alpha,
                           const TorusPointIval& p, mpfr_prec_t prec) {
    Rat nx = frac(p.x - alpha);
    Ival ny = wrap_unit(sub(p.y, mul_rat(F_eval(st, nx, prec), c)));
    return TorusPointIval{nx, std::move(ny)};
}

UnipotentJacobian orbit_cocycle(const ConstructionState& st, const Rat& c, const Rat& alpha,
                                const Rat& x, long N, mpfr_prec_t prec) {
    if (N < 0 || N > 10000) throw budget_error("orbit_cocycle", "N capped at 10^4");
    Ival acc(prec);
    Rat xn = x;
    for (long n = 0; n < N; ++n) {
        acc = add(acc, Fprime_eval(st, xn, prec));
        xn = frac(xn + alpha);
    }
    return UnipotentJacobian{mul_rat(acc, c)};
}

Ival sigma(const Ival& w) {
    Ival a = abs_i(w);
    return mul_2si(add(a, sqrt_i(add_rat(sqr(a), Rat(4)))), -1);
}

GrowthRecord gamma_record(const ConstructionState& st, const Rat& c, const Rat& alpha,
                          const Int& N, mpfr_prec_t prec, int grid, const TrigCache* cache) {
    Ival wm = W_max(st, alpha, N, prec, grid, cache);
    return GrowthRecord(N, st.phi.eval(N, prec), S_sum(st, alpha, N, prec),
                        T_sum(st, alpha, N, prec), wm, sigma(mul_rat(wm, c)));
}

Rat choose_c(const ConstructionState&) { return Rat(1, 400); }

bool gamma_symmetry_check(const ConstructionState& st, const Rat& alpha, const Int& N,
                          mpfr_prec_t prec, int grid) {
    // The backward Jacobian entry at x is -W(N, x - N alpha); its Birkhoff
    // form is -sum_{n=1..N} F'(x - n alpha). Both evaluations must agree at
    // every grid point, which (with sigma even in w) reduces Gamma_N to the
    // forward maximum alone.
    if (N > 10000) throw budget_error("gamma_symmetry_check", "N capped at 10^4");
    long n = mpz_get_si(N.get_mpz_t());
    Rat shift = frac(Rat(N) * alpha);
    for (int j = 0; j < grid; ++j) {
        Rat x(j, grid);
        x.canonicalize();
        Ival direct(prec);
        Rat xn = x;
        for (long i = 1; i <= n; ++i) {
            xn = frac(xn - alpha);
            direct = add(direct, Fprime_eval(st, xn, prec));
        }
        if (!direct.intersects(W_sum(st, alpha, frac(x - shift), N, prec))) return false;
    }
    return true;
}

std::vector<Int> make_schedule(const ConstructionState& st, long dense_to, int log_samples,
                               bool include_checkpoints) {
    std::vector<Int> sched;
    const Int& H = st.horizon();
    Int cap = std::min(Int(dense_to), H);
    for (Int n = 1; n <= cap; n += 1) sched.push_back(n);

    if (log_samples > 0 && H > cap) {
        // Geometric interpolation in log2; sample positions need no
        // certification, double accuracy is plenty.
        double lo = std::log2(std::max(2.0, mpz_get_d(cap.get_mpz_t())));
        long hbits = static_cast<long>(bit_length(H));
        double hi = hbits < 1000 ? std::log2(mpz_get_d(H.get_mpz_t()))
                                 : static_cast<double>(hbits);
        for (int i = 1; i <= log_samples; ++i) {
            double e = lo + (hi - lo) * i / log_samples;
            long ip = static_cast<long>(e);
            double fp = e - ip;
            Int v = Int(static_cast<unsigned long>(std::ldexp(std::exp2(fp), 30)));
            if (ip >= 30)
                v <<= (ip - 30);
            else
                v >>= (30 - ip);
            if (v < 1) v = 1;
            if (v > H) v = H;
            sched.push_back(v);
        }
    }
    if (include_checkpoints)
        for (int j = 1; j <= st.depth; ++j) sched.push_back(st.N[j]);

    std::sort(sched.begin(), sched.end());
    sched.erase(std::unique(sched.begin(), sched.end()), sched.end());
    return sched;
}

std::vector<GrowthRecord> growth_table_serial(const ConstructionState& st, const Rat& c,
                                              const Rat& alpha, const std::vector<Int>& schedule,
                                              mpfr_prec_t prec, int grid) {
    TrigCache cache = make_trig_cache(st, grid, prec);
    std::vector<GrowthRecord> rows;
    rows.reserve(schedule.size());
    for (const Int& N : schedule) rows.push_back(gamma_record(st, c, alpha, N, prec, grid, &cache));
    return rows;
}

std::vector<GrowthRecord> growth_table(const ConstructionState& st, const Rat& c,
                                       const Rat& alpha, const std::vector<Int>& schedule,
                                       mpfr_prec_t prec, int grid) {
    TrigCache cache = make_trig_cache(st, grid, prec);
    long n = static_cast<long>(schedule.size());
    std::vector<std::optional<GrowthRecord>> slots(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < n; ++i)
        slots[i].emplace(gamma_record(st, c, alpha, schedule[i], prec, grid, &cache));
    std::vector<GrowthRecord> rows;
    rows.reserve(n);
    for (auto& s : slots) rows.push_back(std::move(*s));
    return rows;
}

}  // namespace slowtorus
