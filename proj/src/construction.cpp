#include "slowtorus/construction.hpp"

#include <stdexcept>

namespace slowtorus {

Int k_index(const std::vector<Int>& q, int n) {
    if (n < 1 || n >= static_cast<int>(q.size()))
        throw std::invalid_argument("k_index: n out of range");
    Int sum = 0;
    for (int s = 1; s <= n; ++s) {
        if (q[n] % q[s] != 0) throw std::invalid_argument("k_index: divisibility violated");
        sum += q[n] / q[s];
    }
    return sum;
}

std::pair<Rat, Rat> interval_A(const Int& q_n, const Int& q_next, const Int& k_n) {
    Rat den = Rat(q_n) * Rat(q_next);
    Rat lo = Rat(k_n * q_next + q_n) / den;
    Rat hi = Rat(k_n * q_next + 2 * q_n) / den;
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

long choose_r_exp(const ConstructionState& st, const Settings& s) {
    int p = st.depth + 1;

    // Decay condition first: it needs only q_p, and in paper mode it is the
    // constraint that becomes unmaterializable at depth 3.
    long e_c = 0;
    if (st.profile.mode == ConstantsProfile::Mode::Paper) {
        const Int& qp = st.q[p];
        // e must exceed q_p*log2(e) ~ 1.44*q_p; reject before computing E
        // when even the crude bound blows the budget.
        if (qp > s.bit_budget || bit_length(qp) > (size_t(1) << 24))
            throw budget_error("r_" + std::to_string(p),
                               "decay condition r_" + std::to_string(p) + " < exp(-q_" +
                                   std::to_string(p) + ") needs a denominator exponent of ~1.44*q_" +
                                   std::to_string(p) + " (" + std::to_string(bit_length(qp)) +
                                   "-bit q), over the bit budget " + s.bit_budget.get_str());
        Int E = floor_q_log2e(qp);
        if (E + 1 > s.bit_budget)
            throw budget_error("r_" + std::to_string(p),
                               "decay condition r_" + std::to_string(p) +
                                   " < exp(-q_p) needs denominator exponent " + Int(E + 1).get_str() +
                                   " > bit budget " + s.bit_budget.get_str());
        e_c = mpz_get_si(Int(E + 1).get_mpz_t());
    }

    if (!st.M_set[st.depth]) throw std::logic_error("choose_r: M_{p-1} not materialized");
    Int K = std::max(st.M[st.depth], st.N[st.depth]);
    // (a): r*2K <= 2^{-p-1}, uniform in beta since |Delta_p(N,beta)| <= N.
    long e_a = p + 2 + static_cast<long>(ceil_log2(K));
    // (b): r <= min_{N<=K} phi(N)/N = phi(K)/K is implied: r*K <= 2^{-p-2}
    // < 2 <= phi(K). Re-verified by the verifier.
    return std::max(e_a, e_c);
}

void materialize_M(ConstructionState& st, int p, const Settings& s) {
    if (p < 0 || p > st.depth) throw std::invalid_argument("materialize_M: bad index");
    if (st.M_set[p]) return;
    st.M[p] = st.phi.inverse_threshold(st.m_threshold[p], s.prec, s.bit_budget);
    st.M_set[p] = true;
}

void extend(ConstructionState& st, const Settings& s) {
    int p = st.depth + 1;

    long e = choose_r_exp(st, s);
    materialize_M(st, st.depth, s);  // deferred only when enormous; may overflow

    Rat r_p = pow2(-e);
    Int floor = std::max(st.M[st.depth], st.N[st.depth]);
    Int N_p = st.phi.first_crossing(r_p, floor, s.prec, s.bit_budget);
    Int q_next = Int(st.profile.lambda) * st.q[p] * N_p;

    st.r.push_back(r_p);
    st.r_exp.push_back(e);
    st.N.push_back(N_p);
    st.q.push_back(q_next);
    st.k.push_back(k_index(st.q, p));
    st.A.push_back(interval_A(st.q[p], q_next, st.k[p]));
    st.depth = p;

    // Uniform tail bound B_p = sum r_n q_{n+1}/q_n dominates sup_N T^p.
    st.B += r_p * Rat(q_next) / Rat(st.q[p]);
    Rat y_p = Rat(100) * st.B;
    st.m_threshold.push_back(y_p);
    Int est = st.phi.inverse_bits_estimate(y_p);
    if (est <= s.eager_m_bits) {
        st.M.push_back(st.phi.inverse_threshold(y_p, s.prec, s.bit_budget));
        st.M_set.push_back(true);
    } else {
        st.M.push_back(Int(0));
        st.M_set.push_back(false);
    }
}

AlphaCertificate alpha_certificate(const ConstructionState& st) {
    AlphaCertificate cert;
    cert.alpha = 0;
    for (int i = 1; i <= st.depth; ++i) cert.alpha += Rat(1) / Rat(st.q[i]);
    cert.residues.assign(st.depth + 1, Rat(0));
    for (int n = 1; n <= st.depth; ++n) {
        Rat res = Rat(st.q[n]) * cert.alpha - Rat(st.k[n]);
        res.canonicalize();
        cert.residues[n] = res;
    }
    cert.tail_bound = Rat(2) / Rat(st.q[st.depth + 1]);
    return cert;
}

std::pair<ConstructionState, AlphaCertificate> build(const GrowthFunction& phi, int depth,
                                                     const ConstantsProfile& profile,
                                                     const Settings& s) {
    if (depth < 1) throw std::invalid_argument("build: depth >= 1 required");
    if (profile.mode == ConstantsProfile::Mode::Paper && profile.lambda < 100)
        throw std::invalid_argument("build: lambda >= 100 required in paper mode");
    if (profile.lambda < 2) throw std::invalid_argument("build: lambda >= 2 required");
    ConstructionState st;
    st.phi = phi;
    st.profile = profile;
    for (int p = 1; p <= depth; ++p) extend(st, s);
    return {st, alpha_certificate(st)};
}

}  // namespace slowtorus
