#include "slowtorus/interval.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace slowtorus {

Ival Ival::from_rat(const Rat& q, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Ival Ival::from_int(const Int& z, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    return r;
}

Ival Ival::from_long(long v, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Ival Ival::hull(const Ival& a, const Ival& b) {
    Ival r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

double Ival::width_d() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

std::string Ival::lo_str(int digits) const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*R*e", digits, MPFR_RNDD, lo_);
    return buf;
}

std::string Ival::hi_str(int digits) const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*R*e", digits, MPFR_RNDU, hi_);
    return buf;
}

static mpfr_prec_t pmax(const Ival& a, const Ival& b) {
    return std::max(a.prec(), b.prec());
}

Ival add(const Ival& a, const Ival& b) {
    Ival r(pmax(a, b));
    mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

Ival sub(const Ival& a, const Ival& b) {
    Ival r(pmax(a, b));
    mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
}

Ival mul(const Ival& a, const Ival& b) {
    mpfr_prec_t p = pmax(a, b);
    Ival r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    const mpfr_srcptr as[2] = {a.lo(), a.hi()};
    const mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    bool first = true;
    for (auto x : as)
        for (auto y : bs) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo()) < 0) mpfr_set(r.lo(), t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi()) > 0) mpfr_set(r.hi(), t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Ival div(const Ival& a, const Ival& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by interval containing zero");
    mpfr_prec_t p = pmax(a, b);
    Ival r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    const mpfr_srcptr as[2] = {a.lo(), a.hi()};
    const mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    bool first = true;
    for (auto x : as)
        for (auto y : bs) {
            mpfr_div(t, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo()) < 0) mpfr_set(r.lo(), t, MPFR_RNDD);
            mpfr_div(t, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi()) > 0) mpfr_set(r.hi(), t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Ival neg(const Ival& a) {
    Ival r(a.prec());
    mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    return r;
}

Ival abs_i(const Ival& a) {
    Ival r(a.prec());
    if (mpfr_sgn(a.lo()) >= 0) return a;
    if (mpfr_sgn(a.hi()) <= 0) return neg(a);
    mpfr_set_zero(r.lo(), 1);
    mpfr_t t;
    mpfr_init2(t, a.prec());
    mpfr_neg(t, a.lo(), MPFR_RNDU);
    if (mpfr_cmp(t, a.hi()) > 0)
        mpfr_set(r.hi(), t, MPFR_RNDU);
    else
        mpfr_set(r.hi(), a.hi(), MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Ival sqr(const Ival& a) {
    Ival m = abs_i(a);
    Ival r(a.prec());
    mpfr_sqr(r.lo(), m.lo(), MPFR_RNDD);
    mpfr_sqr(r.hi(), m.hi(), MPFR_RNDU);
    return r;
}

Ival sqrt_i(const Ival& a) {
    Ival r(a.prec());
    if (mpfr_sgn(a.lo()) < 0) {
        if (mpfr_sgn(a.hi()) < 0) throw std::domain_error("sqrt of negative interval");
        mpfr_set_zero(r.lo(), 1);
    } else {
        mpfr_sqrt(r.lo(), a.lo(), MPFR_RNDD);
    }
    mpfr_sqrt(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

Ival mul_rat(const Ival& a, const Rat& q) {
    Ival r(a.prec());
    if (sgn(q) >= 0) {
        mpfr_mul_q(r.lo(), a.lo(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(r.hi(), a.hi(), q.get_mpq_t(), MPFR_RNDU);
    } else {
        mpfr_mul_q(r.lo(), a.hi(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(r.hi(), a.lo(), q.get_mpq_t(), MPFR_RNDU);
    }
    return r;
}

Ival add_rat(const Ival& a, const Rat& q) {
    Ival r(a.prec());
    mpfr_add_q(r.lo(), a.lo(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_add_q(r.hi(), a.hi(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Ival mul_2si(const Ival& a, long e) {
    Ival r(a.prec());
    mpfr_mul_2si(r.lo(), a.lo(), e, MPFR_RNDD);
    mpfr_mul_2si(r.hi(), a.hi(), e, MPFR_RNDU);
    return r;
}

Ival max_i(const Ival& a, const Ival& b) {
    Ival r(pmax(a, b));
    mpfr_max(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

Tern ge(const Ival& a, const Ival& b) {
    if (mpfr_cmp(a.lo(), b.hi()) >= 0) return Tern::True;
    if (mpfr_cmp(a.hi(), b.lo()) < 0) return Tern::False;
    return Tern::Unknown;
}

Tern gt(const Ival& a, const Ival& b) {
    if (mpfr_cmp(a.lo(), b.hi()) > 0) return Tern::True;
    if (mpfr_cmp(a.hi(), b.lo()) <= 0) return Tern::False;
    return Tern::Unknown;
}

Tern ge_rat(const Ival& a, const Rat& q) {
    if (mpfr_cmp_q(a.lo(), q.get_mpq_t()) >= 0) return Tern::True;
    if (mpfr_cmp_q(a.hi(), q.get_mpq_t()) < 0) return Tern::False;
    return Tern::Unknown;
}

Tern gt_rat(const Ival& a, const Rat& q) {
    if (mpfr_cmp_q(a.lo(), q.get_mpq_t()) > 0) return Tern::True;
    if (mpfr_cmp_q(a.hi(), q.get_mpq_t()) <= 0) return Tern::False;
    return Tern::Unknown;
}

Tern le_rat(const Ival& a, const Rat& q) {
    if (mpfr_cmp_q(a.hi(), q.get_mpq_t()) <= 0) return Tern::True;
    if (mpfr_cmp_q(a.lo(), q.get_mpq_t()) > 0) return Tern::False;
    return Tern::Unknown;
}

Tern lt_rat(const Ival& a, const Rat& q) {
    if (mpfr_cmp_q(a.hi(), q.get_mpq_t()) < 0) return Tern::True;
    if (mpfr_cmp_q(a.lo(), q.get_mpq_t()) >= 0) return Tern::False;
    return Tern::Unknown;
}

Ival pi_ival(mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_const_pi(r.lo(), MPFR_RNDD);
    mpfr_const_pi(r.hi(), MPFR_RNDU);
    return r;
}

// sin(pi*t) on t in [0,1/2], where sin is monotone increasing. The upper
// endpoint is clamped to 1 when the rounded argument may cross pi/2.
static Ival sin_pi_monotone(const Rat& t, mpfr_prec_t prec) {
    mpfr_prec_t w = prec + 16;
    Ival r(prec);
    mpfr_t pi_dn, pi_up, x, half_pi_dn;
    mpfr_init2(pi_dn, w);
    mpfr_init2(pi_up, w);
    mpfr_init2(x, w);
    mpfr_init2(half_pi_dn, w);
    mpfr_const_pi(pi_dn, MPFR_RNDD);
    mpfr_const_pi(pi_up, MPFR_RNDU);
    mpfr_div_2ui(half_pi_dn, pi_dn, 1, MPFR_RNDD);

    mpfr_mul_q(x, pi_dn, t.get_mpq_t(), MPFR_RNDD);
    mpfr_sin(r.lo(), x, MPFR_RNDD);
    if (mpfr_sgn(r.lo()) < 0) mpfr_set_zero(r.lo(), 1);

    mpfr_mul_q(x, pi_up, t.get_mpq_t(), MPFR_RNDU);
    if (mpfr_cmp(x, half_pi_dn) >= 0)
        mpfr_set_ui(r.hi(), 1, MPFR_RNDU);
    else
        mpfr_sin(r.hi(), x, MPFR_RNDU);

    mpfr_clear(pi_dn);
    mpfr_clear(pi_up);
    mpfr_clear(x);
    mpfr_clear(half_pi_dn);
    return r;
}

Ival sin_pi(const Rat& theta, mpfr_prec_t prec) {
    Rat t = mod2(theta);  // exact reduction, bignum-safe
    int sign = 1;
    if (t >= 1) {
        t -= 1;
        sign = -1;
    }
    // t in [0,1); fold onto [0,1/2]
    if (t > Rat(1, 2)) t = 1 - t;
    if (t == 0) return Ival(prec);
    if (t == Rat(1, 2)) {
        Ival one = Ival::from_long(sign, prec);
        return one;
    }
    Ival s = sin_pi_monotone(t, prec);
    return sign > 0 ? s : neg(s);
}

Ival cos_pi(const Rat& theta, mpfr_prec_t prec) {
    return sin_pi(theta + Rat(1, 2), prec);
}

Ival exp_rat(const Rat& x, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_t t;
    mpfr_init2(t, prec + 16);
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDD);
    mpfr_exp(r.lo(), t, MPFR_RNDD);
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Ival log2_rat(const Rat& v, mpfr_prec_t prec) {
    if (sgn(v) <= 0) throw std::domain_error("log2 of non-positive value");
    Ival r(prec);
    mpfr_t t;
    mpfr_init2(t, prec + 16);
    mpfr_set_q(t, v.get_mpq_t(), MPFR_RNDD);
    mpfr_log2(r.lo(), t, MPFR_RNDD);
    mpfr_set_q(t, v.get_mpq_t(), MPFR_RNDU);
    mpfr_log2(r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Ival ln_rat(const Rat& v, mpfr_prec_t prec) {
    if (sgn(v) <= 0) throw std::domain_error("ln of non-positive value");
    Ival r(prec);
    mpfr_t t;
    mpfr_init2(t, prec + 16);
    mpfr_set_q(t, v.get_mpq_t(), MPFR_RNDD);
    mpfr_log(r.lo(), t, MPFR_RNDD);
    mpfr_set_q(t, v.get_mpq_t(), MPFR_RNDU);
    mpfr_log(r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Ival pow_rat(const Rat& v, const Rat& beta, mpfr_prec_t prec) {
    if (sgn(v) <= 0 || sgn(beta) <= 0) throw std::domain_error("pow_rat: need v>0, beta>0");
    // v^beta = exp(beta*ln v); increasing in v, so directed chains suffice.
    mpfr_prec_t w = prec + 32;
    Ival r(prec);
    mpfr_t t;
    mpfr_init2(t, w);
    mpfr_set_q(t, v.get_mpq_t(), MPFR_RNDD);
    mpfr_log(t, t, MPFR_RNDD);
    mpfr_mul_q(t, t, beta.get_mpq_t(), MPFR_RNDD);
    mpfr_exp(r.lo(), t, MPFR_RNDD);
    mpfr_set_q(t, v.get_mpq_t(), MPFR_RNDU);
    mpfr_log(t, t, MPFR_RNDU);
    mpfr_mul_q(t, t, beta.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Int floor_q_log2e(const Int& q) {
    if (q <= 0) throw std::invalid_argument("floor_q_log2e: q must be positive");
    mpfr_prec_t p = mpfr_prec_t(bit_length(q)) + 64;
    for (;;) {
        mpfr_t ln2, lo, hi;
        mpfr_init2(ln2, p);
        mpfr_init2(lo, p);
        mpfr_init2(hi, p);
        // q*log2(e) = q/ln 2
        mpfr_const_log2(ln2, MPFR_RNDU);
        mpfr_set_z(lo, q.get_mpz_t(), MPFR_RNDD);
        mpfr_div(lo, lo, ln2, MPFR_RNDD);
        mpfr_const_log2(ln2, MPFR_RNDD);
        mpfr_set_z(hi, q.get_mpz_t(), MPFR_RNDU);
        mpfr_div(hi, hi, ln2, MPFR_RNDU);
        Int flo, fhi;
        mpfr_get_z(flo.get_mpz_t(), lo, MPFR_RNDD);
        mpfr_get_z(fhi.get_mpz_t(), hi, MPFR_RNDD);
        mpfr_clear(ln2);
        mpfr_clear(lo);
        mpfr_clear(hi);
        if (flo == fhi) return flo;
        p *= 2;
    }
}

Ival mag(const CIval& z) {
    return sqrt_i(add(sqr(z.re), sqr(z.im)));
}

Rat rat_from_mpfr(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Rat(0);
    if (!mpfr_number_p(x)) throw std::domain_error("rat_from_mpfr: not a finite number");
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    Rat r(m);
    if (e >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(-e));
    r.canonicalize();
    return r;
}

}  // namespace slowtorus
