#include "slowtorus/sums.hpp"

#include <stdexcept>

namespace slowtorus {

CIval delta_direct(const Int& q, long N, const Rat& beta, mpfr_prec_t prec) {
    if (N < 1) throw std::invalid_argument("delta_direct: N >= 1 required");
    if (N > 1000000) throw std::invalid_argument("delta_direct: oracle path capped at 10^6 terms");
    Rat step = mod2(Rat(2) * Rat(q) * beta);
    Rat t(0);
    Ival re(prec), im(prec);
    for (long n = 0; n < N; ++n) {
        re = add(re, cos_pi(t, prec));
        im = add(im, sin_pi(t, prec));
        t = mod2(t + step);
    }
    return CIval(std::move(re), std::move(im));
}

ExpSum delta_closed(const Rat& theta, const Int& N, mpfr_prec_t prec) {
    if (N < 1) throw std::invalid_argument("delta_closed: N >= 1 required");
    if (sgn(theta) < 0 || theta >= 1) throw std::invalid_argument("delta_closed: theta in [0,1)");
    if (sgn(theta) == 0 || N == 1) {
        // Exact branches: the resonant sum is N, and a single term is 1.
        Ival n = Ival::from_int(N, prec);
        return ExpSum{CIval(n, Ival(prec)), n, theta, N};
    }
    Rat nt = mod2(theta * Rat(N));
    Rat mt = mod2(theta * Rat(N - 1));
    Ival ratio = div(sin_pi(nt, prec), sin_pi(theta, prec));
    CIval val(mul(cos_pi(mt, prec), ratio), mul(sin_pi(mt, prec), ratio));
    return ExpSum{std::move(val), abs_i(ratio), theta, N};
}

std::vector<ExpSum> level_deltas(const ConstructionState& st, const Rat& beta, const Int& N,
                                 mpfr_prec_t prec, int cap) {
    int P = cap < 0 ? st.depth : cap;
    std::vector<ExpSum> out;
    out.reserve(P);
    for (int k = 1; k <= P; ++k) out.push_back(delta_closed(theta_of(st.q[k], beta), N, prec));
    return out;
}

Ival S_sum(const ConstructionState& st, const Rat& beta, const Int& N, mpfr_prec_t prec,
           int cap) {
    int P = cap < 0 ? st.depth : cap;
    Ival acc(prec);
    for (int k = 1; k <= P; ++k) {
        ExpSum d = delta_closed(theta_of(st.q[k], beta), N, prec);
        acc = add(acc, mul_rat(d.value.re, st.r[k]));
    }
    return acc;
}

Ival T_sum(const ConstructionState& st, const Rat& beta, const Int& N, mpfr_prec_t prec,
           int cap) {
    int P = cap < 0 ? st.depth : cap;
    Ival acc(prec);
    for (int k = 1; k <= P; ++k) {
        ExpSum d = delta_closed(theta_of(st.q[k], beta), N, prec);
        acc = add(acc, mul_rat(d.magnitude, st.r[k]));
    }
    return acc;
}

namespace {

// Re[e^{2 pi i q_k x} Delta_k] accumulated over levels, trig supplied.
Ival w_from_deltas(const ConstructionState& st, const std::vector<ExpSum>& deltas,
                   const std::vector<std::pair<Ival, Ival>>& trig, mpfr_prec_t prec) {
    Ival acc(prec);
    for (size_t i = 0; i < deltas.size(); ++i) {
        Ival term = sub(mul(trig[i].first, deltas[i].value.re),
                        mul(trig[i].second, deltas[i].value.im));
        acc = add(acc, mul_rat(term, st.r[i + 1]));
    }
    return acc;
}

std::vector<std::pair<Ival, Ival>> trig_at(const ConstructionState& st, const Rat& x,
                                           mpfr_prec_t prec, int P) {
    std::vector<std::pair<Ival, Ival>> t;
    t.reserve(P);
    for (int k = 1; k <= P; ++k) {
        Rat ang = mod2(Rat(2) * Rat(st.q[k]) * x);
        t.emplace_back(cos_pi(ang, prec), sin_pi(ang, prec));
    }
    return t;
}

// Certified lower bound on |v|.
void abs_lower(const Ival& v, Ival& best) {
    Ival a = abs_i(v);
    if (mpfr_cmp(a.lo(), best.lo()) > 0) mpfr_set(best.lo(), a.lo(), MPFR_RNDD);
}

}  // namespace

Ival W_sum(const ConstructionState& st, const Rat& beta, const Rat& x, const Int& N,
           mpfr_prec_t prec, int cap) {
    int P = cap < 0 ? st.depth : cap;
    auto deltas = level_deltas(st, beta, N, prec, P);
    return w_from_deltas(st, deltas, trig_at(st, x, prec, P), prec);
}

TrigCache make_trig_cache(const ConstructionState& st, int grid, mpfr_prec_t prec) {
    TrigCache c;
    c.grid = grid;
    c.prec = prec;
    c.cs.resize(st.depth);
    for (int k = 1; k <= st.depth; ++k) {
        c.cs[k - 1].reserve(grid);
        for (int j = 0; j < grid; ++j) {
            Rat ang = mod2(Rat(2 * j, grid) * Rat(st.q[k]));
            c.cs[k - 1].emplace_back(cos_pi(ang, prec), sin_pi(ang, prec));
        }
    }
    return c;
}

Ival W_max(const ConstructionState& st, const Rat& beta, const Int& N, mpfr_prec_t prec,
           int grid, const TrigCache* cache) {
    if (grid < 4) throw std::invalid_argument("W_max: grid >= 4 required");
    int P = st.depth;
    auto deltas = level_deltas(st, beta, N, prec, P);

    // Upper bound: |W(x)| <= sum r_k |Delta_k| pointwise.
    Ival upper(prec);
    for (int k = 1; k <= P; ++k) upper = add(upper, mul_rat(deltas[k - 1].magnitude, st.r[k]));

    Ival best(prec);  // lower bound accumulator, starts at 0

    // Grid candidates.
    bool cached = cache && cache->grid == grid && cache->prec >= prec &&
                  static_cast<int>(cache->cs.size()) == P;
    for (int j = 0; j < grid; ++j) {
        if (cached) {
            std::vector<std::pair<Ival, Ival>> trig;
            trig.reserve(P);
            for (int k = 0; k < P; ++k) trig.push_back(cache->cs[k][j]);
            abs_lower(w_from_deltas(st, deltas, trig, prec), best);
        } else {
            Rat x(j, grid);
            x.canonicalize();
            abs_lower(W_sum(st, beta, x, N, prec), best);
        }
    }

    // Phase-aligned candidate for the dominant level, plus the cancellation
    // bound r_1 |Delta_1| - sum_{k>=2} r_k |Delta_k|.
    if (sgn(deltas[0].theta) != 0) {
        Rat ang = mod2(deltas[0].theta * Rat(N - 1));
        int s;
        Ival ratio_probe = div(sin_pi(mod2(deltas[0].theta * Rat(N)), prec),
                               sin_pi(deltas[0].theta, prec));
        if (mpfr_sgn(ratio_probe.lo()) > 0)
            s = 0;
        else if (mpfr_sgn(ratio_probe.hi()) < 0)
            s = 1;
        else
            s = -1;
        if (s >= 0) {
            Rat xs = frac((Rat(-1) * ang - Rat(s)) / (Rat(2) * Rat(st.q[1])));
            abs_lower(W_sum(st, beta, xs, N, prec), best);
        }
    }
    Ival align = mul_rat(deltas[0].magnitude, st.r[1]);
    for (int k = 2; k <= P; ++k) align = sub(align, mul_rat(deltas[k - 1].magnitude, st.r[k]));
    if (mpfr_cmp(align.lo(), best.lo()) > 0) mpfr_set(best.lo(), align.lo(), MPFR_RNDD);

    Ival out(prec);
    mpfr_set(out.lo(), best.lo(), MPFR_RNDD);
    mpfr_set(out.hi(), upper.hi(), MPFR_RNDU);
    if (mpfr_cmp(out.lo(), out.hi()) > 0) mpfr_set(out.lo(), out.hi(), MPFR_RNDD);
    return out;
}

}  // namespace slowtorus
