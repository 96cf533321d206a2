#include "slowtorus/phi.hpp"

#include <sstream>
#include <stdexcept>

namespace slowtorus {

namespace {
// Upper limit on operand bits for the exact integer-power comparison paths.
constexpr unsigned long kExactBitLimit = 1ul << 24;
}  // namespace

GrowthFunction GrowthFunction::make(Family f, Rat a, Rat b, Rat beta) {
    if (sgn(b) <= 0) throw std::invalid_argument("growth function: b must be positive");
    if (f == Family::Power && !(beta > 0 && beta < 1))
        throw std::invalid_argument("growth function: need 0 < beta < 1");
    GrowthFunction g;
    g.family_ = f;
    g.a_ = std::move(a);
    g.b_ = std::move(b);
    g.beta_ = std::move(beta);
    // Normalization phi(1) >= 2 is enforced, not silently shifted.
    bool ok;
    if (f == Family::Log) {
        PrecCtx ctx;
        Tern t = decide([&](mpfr_prec_t p) { return ge_rat(g.eval(Rat(1), p), Rat(2)); }, ctx);
        ok = t == Tern::True;
    } else {
        ok = g.a_ + g.b_ >= 2;  // phi(1) = a + b for power and log2
    }
    if (!ok) throw std::invalid_argument("growth function: phi(1) >= 2 required");
    return g;
}

GrowthFunction GrowthFunction::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad phi spec: " + spec);
    std::string fam = spec.substr(0, colon);
    std::vector<Rat> args;
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(parse_rat(tok));
    if (fam == "power") {
        if (args.size() != 3) throw std::invalid_argument("power needs a,b,beta");
        return make(Family::Power, args[0], args[1], args[2]);
    }
    if (fam == "log") {
        if (args.size() != 2) throw std::invalid_argument("log needs a,b");
        return make(Family::Log, args[0], args[1]);
    }
    if (fam == "log2") {
        if (args.size() != 2) throw std::invalid_argument("log2 needs a,b");
        return make(Family::Log2, args[0], args[1]);
    }
    throw std::invalid_argument("unknown phi family: " + fam);
}

std::string GrowthFunction::spec_str() const {
    switch (family_) {
        case Family::Power:
            return "power:" + rat_str(a_) + "," + rat_str(b_) + "," + rat_str(beta_);
        case Family::Log:
            return "log:" + rat_str(a_) + "," + rat_str(b_);
        case Family::Log2:
            return "log2:" + rat_str(a_) + "," + rat_str(b_);
    }
    return {};
}

Ival GrowthFunction::eval(const Rat& x, mpfr_prec_t prec) const {
    if (x < 1) throw std::domain_error("phi: x >= 1 required");
    switch (family_) {
        case Family::Power:
            return add_rat(mul_rat(pow_rat(x, beta_, prec), b_), a_);
        case Family::Log:
            return add_rat(mul_rat(ln_rat(x + 1, prec), b_), a_);
        case Family::Log2:
            return add_rat(mul_rat(log2_rat(x + 1, prec), b_), a_);
    }
    throw std::logic_error("unreachable");
}

std::optional<Rat> GrowthFunction::eval_exact(const Int& x) const {
    if (x < 1) return std::nullopt;
    switch (family_) {
        case Family::Power: {
            unsigned long bn = mpz_get_ui(beta_.get_num_mpz_t());
            unsigned long bd = mpz_get_ui(beta_.get_den_mpz_t());
            if (!mpz_fits_ulong_p(beta_.get_num_mpz_t()) || !mpz_fits_ulong_p(beta_.get_den_mpz_t()))
                return std::nullopt;
            if (bn * bit_length(x) > kExactBitLimit) return std::nullopt;
            Int xs;
            mpz_pow_ui(xs.get_mpz_t(), x.get_mpz_t(), bn);
            Int root;
            if (mpz_root(root.get_mpz_t(), xs.get_mpz_t(), bd) == 0) return std::nullopt;
            return a_ + b_ * Rat(root);
        }
        case Family::Log2: {
            Int v = x + 1;
            // exact iff 1+x is a power of two
            if (mpz_popcount(v.get_mpz_t()) != 1) return std::nullopt;
            return a_ + b_ * Rat(Int(bit_length(v) - 1));
        }
        case Family::Log:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<int> GrowthFunction::exact_phi_cmp(const Int& x, const Rat& y) const {
    Rat c = (y - a_) / b_;  // phi(x) - y has the sign of g(x) - c, g increasing
    switch (family_) {
        case Family::Power: {
            if (sgn(c) <= 0) return 1;  // x^beta >= 1 > 0 >= c
            if (!mpz_fits_ulong_p(beta_.get_num_mpz_t()) || !mpz_fits_ulong_p(beta_.get_den_mpz_t()))
                return std::nullopt;
            unsigned long bn = mpz_get_ui(beta_.get_num_mpz_t());
            unsigned long bd = mpz_get_ui(beta_.get_den_mpz_t());
            size_t cb = mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
            if (bd * cb > kExactBitLimit || bn * bit_length(x) > kExactBitLimit)
                return std::nullopt;
            // x^bn vs c^bd, cross-multiplied
            Int xs, cn, cd;
            mpz_pow_ui(xs.get_mpz_t(), x.get_mpz_t(), bn);
            mpz_pow_ui(cn.get_mpz_t(), c.get_num_mpz_t(), bd);
            mpz_pow_ui(cd.get_mpz_t(), c.get_den_mpz_t(), bd);
            return cmp(xs * cd, cn);
        }
        case Family::Log2: {
            if (sgn(c) <= 0) return 1;  // log2(1+x) >= 1 > 0 >= c
            if (!mpz_fits_ulong_p(c.get_num_mpz_t()) || !mpz_fits_ulong_p(c.get_den_mpz_t()))
                return std::nullopt;
            unsigned long u = mpz_get_ui(c.get_num_mpz_t());
            unsigned long v = mpz_get_ui(c.get_den_mpz_t());
            if (v > 4096 || u > kExactBitLimit || v * bit_length(x) > kExactBitLimit)
                return std::nullopt;
            // (1+x)^v vs 2^u
            Int lhs;
            mpz_pow_ui(lhs.get_mpz_t(), Int(x + 1).get_mpz_t(), v);
            Int rhs = Int(1) << u;
            return cmp(lhs, rhs);
        }
        case Family::Log:
            return std::nullopt;  // ln(1+x) is irrational for x >= 1
    }
    return std::nullopt;
}

Tern GrowthFunction::decide_phi_ge(const Int& x, const Rat& y, const PrecCtx& ctx) const {
    if (auto s = exact_phi_cmp(x, y)) return *s >= 0 ? Tern::True : Tern::False;
    return decide([&](mpfr_prec_t p) { return ge_rat(eval(x, p), y); }, ctx);
}

Tern GrowthFunction::decide_rx_ge_phi(const Rat& r, const Int& x, const PrecCtx& ctx) const {
    Rat rx = r * x;
    if (auto s = exact_phi_cmp(x, rx)) return *s <= 0 ? Tern::True : Tern::False;
    return decide([&](mpfr_prec_t p) { return le_rat(eval(x, p), rx); }, ctx);
}

namespace {

Tern require_known(Tern t, const char* what) {
    if (t == Tern::Unknown) throw indeterminate_error(std::string("cannot separate: ") + what);
    return t;
}

}  // namespace

// Approximate root of r*x = phi(x) by Newton iteration, starting from the
// h >= 0 side (h = r*x - phi is convex there, so the iteration descends
// monotonically). Plain mpfr, round-to-nearest: the result is only a guess
// and is re-certified by the caller.
Int GrowthFunction::newton_guess(const Rat& r, const Int& hi, mpfr_prec_t gp) const {
    mpfr_t x, rr, aa, bb, fx, dfx, t, u;
    mpfr_inits2(gp, x, rr, aa, bb, fx, dfx, t, u, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_z(x, hi.get_mpz_t(), MPFR_RNDN);
    mpfr_set_q(rr, r.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(aa, a_.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(bb, b_.get_mpq_t(), MPFR_RNDN);
    for (int it = 0; it < 300; ++it) {
        // fx = r*x - phi(x), dfx = r - phi'(x)
        switch (family_) {
            case Family::Power: {
                mpfr_t e;
                mpfr_init2(e, gp);
                mpfr_set_q(e, beta_.get_mpq_t(), MPFR_RNDN);
                mpfr_pow(t, x, e, MPFR_RNDN);  // x^beta
                mpfr_mul(u, t, e, MPFR_RNDN);
                mpfr_div(u, u, x, MPFR_RNDN);  // beta*x^{beta-1}
                mpfr_clear(e);
                break;
            }
            case Family::Log2:
                mpfr_add_ui(u, x, 1, MPFR_RNDN);
                mpfr_log2(t, u, MPFR_RNDN);  // log2(1+x)
                mpfr_const_log2(dfx, MPFR_RNDN);
                mpfr_mul(u, u, dfx, MPFR_RNDN);
                mpfr_ui_div(u, 1, u, MPFR_RNDN);  // 1/((1+x) ln 2)
                break;
            case Family::Log:
                mpfr_add_ui(u, x, 1, MPFR_RNDN);
                mpfr_log(t, u, MPFR_RNDN);  // ln(1+x)
                mpfr_ui_div(u, 1, u, MPFR_RNDN);  // 1/(1+x)
                break;
        }
        mpfr_fma(fx, bb, t, aa, MPFR_RNDN);  // phi(x)
        mpfr_fms(fx, rr, x, fx, MPFR_RNDN);  // r*x - phi(x)
        mpfr_mul(dfx, bb, u, MPFR_RNDN);     // phi'(x)
        mpfr_sub(dfx, rr, dfx, MPFR_RNDN);
        if (mpfr_sgn(dfx) <= 0 || !mpfr_number_p(fx)) break;
        mpfr_div(t, fx, dfx, MPFR_RNDN);
        mpfr_sub(x, x, t, MPFR_RNDN);
        mpfr_abs(t, t, MPFR_RNDN);
        if (mpfr_cmp_d(t, 0.25) < 0) break;
    }
    Int g;
    if (mpfr_number_p(x) && mpfr_sgn(x) > 0)
        mpfr_get_z(g.get_mpz_t(), x, MPFR_RNDD);
    else
        g = hi;
    mpfr_clears(x, rr, aa, bb, fx, dfx, t, u, static_cast<mpfr_ptr>(nullptr));
    return g;
}

Int GrowthFunction::first_crossing(const Rat& r, const Int& floor, const PrecCtx& ctx,
                                   const Int& bit_budget) const {
    if (sgn(r) <= 0 || r > 1) throw std::invalid_argument("first_crossing: need 0 < r <= 1");
    if (require_known(decide_rx_ge_phi(r, floor, ctx), "first_crossing precondition") == Tern::True)
        throw std::invalid_argument("first_crossing: r*floor < phi(floor) required");

    auto crossed = [&](const Int& n) {
        return require_known(decide_rx_ge_phi(r, n, ctx), "first_crossing comparison") == Tern::True;
    };

    Int lo = floor;
    Int hi = floor + 1;
    while (!crossed(hi)) {
        lo = hi;
        hi *= 2;
        if (Int(bit_length(hi)) > bit_budget)
            throw budget_error("N_p", "first_crossing: candidate exceeds bit budget (" +
                                          std::to_string(bit_length(hi)) + " bits)");
    }

    // Newton guess at full precision collapses the bracket to a few
    // candidates; certified comparisons then pin the exact crossing. The
    // bisection loop only runs when the guess is off.
    if (hi - lo > 1) {
        mpfr_prec_t gp =
            static_cast<mpfr_prec_t>(std::min<size_t>(bit_length(hi) + 64, size_t(1) << 24));
        Int g = newton_guess(r, hi, gp);
        for (Int cand : {Int(g - 1), g, Int(g + 1), Int(g + 2)}) {
            if (cand <= lo || cand >= hi) continue;
            if (crossed(cand))
                hi = cand;
            else
                lo = cand;
        }
    }
    while (hi - lo > 1) {
        Int mid = lo + (hi - lo) / 2;
        if (crossed(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

Int GrowthFunction::inverse_bits_estimate(const Rat& y) const {
    Rat c = (y - a_) / b_;
    if (sgn(c) <= 0) return 8;
    switch (family_) {
        case Family::Power: {
            long lg = static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2)) -
                      static_cast<long>(mpz_sizeinbase(c.get_den_mpz_t(), 2)) + 2;
            if (lg < 1) lg = 1;
            Rat inv_beta = 1 / beta_;
            return floor_rat(Rat(lg) * inv_beta) + 16;
        }
        case Family::Log2:
            return floor_rat(c) + 16;
        case Family::Log:
            return floor_rat(c * Rat(3, 2)) + 16;
    }
    return 64;
}

Int GrowthFunction::inverse_threshold(const Rat& y, const PrecCtx& ctx,
                                      const Int& bit_budget) const {
    if (require_known(decide_phi_ge(Int(1), y, ctx), "inverse_threshold precondition") == Tern::True)
        throw std::invalid_argument("inverse_threshold: y > phi(1) required");
    Int est = inverse_bits_estimate(y);
    if (est > bit_budget)
        throw budget_error("M_p", "inverse_threshold: result needs ~" + est.get_str() +
                                      " bits, budget is " + bit_budget.get_str());

    auto above = [&](const Int& m) {
        return require_known(decide_phi_ge(m, y, ctx), "inverse_threshold comparison") == Tern::True;
    };

    // Approximate real inverse to absolute error well below 1, then probe a
    // small window around it.
    mpfr_prec_t gp = static_cast<mpfr_prec_t>(std::min(mpz_get_ui(est.get_mpz_t()) + 64,
                                                       (unsigned long)1 << 24));
    Rat c = (y - a_) / b_;
    mpfr_t t;
    mpfr_init2(t, gp);
    mpfr_set_q(t, c.get_mpq_t(), MPFR_RNDN);
    switch (family_) {
        case Family::Power: {
            mpfr_t e;
            mpfr_init2(e, gp);
            mpfr_set_q(e, Rat(1 / beta_).get_mpq_t(), MPFR_RNDN);
            mpfr_pow(t, t, e, MPFR_RNDN);
            mpfr_clear(e);
            break;
        }
        case Family::Log2:
            mpfr_exp2(t, t, MPFR_RNDN);
            mpfr_sub_ui(t, t, 1, MPFR_RNDN);
            break;
        case Family::Log:
            mpfr_exp(t, t, MPFR_RNDN);
            mpfr_sub_ui(t, t, 1, MPFR_RNDN);
            break;
    }
    Int x0;
    mpfr_get_z(x0.get_mpz_t(), t, MPFR_RNDU);
    mpfr_clear(t);
    if (x0 < 2) x0 = 2;

    // window probe: find adjacent pair (below, above)
    for (Int m = x0 - 2; m <= x0 + 3; ++m) {
        if (m < 1) continue;
        if (above(m)) {
            if (m == 1 || !above(m - 1)) return m;
            break;
        }
    }

    // fallback: exponential bracket + bisection
    Int lo = 1, hi = 2;
    while (!above(hi)) {
        lo = hi;
        hi *= 2;
        if (Int(bit_length(hi)) > bit_budget)
            throw budget_error("M_p", "inverse_threshold: bracket exceeds bit budget");
    }
    while (hi - lo > 1) {
        Int mid = lo + (hi - lo) / 2;
        if (above(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace slowtorus
