#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>

#include "slowtorus/rat.hpp"

namespace slowtorus {

// Three-valued comparison outcome. Unknown means the intervals overlap and
// the caller should retry at higher precision (or report INDETERMINATE).
enum class Tern { True, False, Unknown };

struct PrecCtx {
    mpfr_prec_t working = 192;
    mpfr_prec_t max = mpfr_prec_t(1) << 20;
};

// Closed interval [lo, hi] with dyadic (MPFR) endpoints. Every operation
// rounds outward, so intervals always enclose the exact real result.
class Ival {
  public:
    explicit Ival(mpfr_prec_t prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Ival(const Ival& o) {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Ival(Ival&& o) noexcept {
        mpfr_init2(lo_, 2);
        mpfr_init2(hi_, 2);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Ival& operator=(Ival o) noexcept {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Ival() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Ival from_rat(const Rat& q, mpfr_prec_t prec);
    static Ival from_int(const Int& z, mpfr_prec_t prec);
    static Ival from_long(long v, mpfr_prec_t prec);
    // Hull of two intervals.
    static Ival hull(const Ival& a, const Ival& b);

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    mpfr_ptr lo() { return lo_; }
    mpfr_ptr hi() { return hi_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_d() const { return (lo_d() + hi_d()) / 2; }
    double width_d() const;

    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    bool contains(const Rat& q) const {
        return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
    }
    bool contains(const Ival& o) const {
        return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
    }
    bool intersects(const Ival& o) const {
        return mpfr_cmp(lo_, o.hi_) <= 0 && mpfr_cmp(o.lo_, hi_) <= 0;
    }

    std::string lo_str(int digits = 21) const;
    std::string hi_str(int digits = 21) const;

  private:
    mpfr_t lo_, hi_;
};

Ival add(const Ival& a, const Ival& b);
Ival sub(const Ival& a, const Ival& b);
Ival mul(const Ival& a, const Ival& b);
// b must not contain zero.
Ival div(const Ival& a, const Ival& b);
Ival neg(const Ival& a);
Ival abs_i(const Ival& a);
Ival sqr(const Ival& a);
// a must be >= 0 (lower endpoint clamped to 0 if slightly negative).
Ival sqrt_i(const Ival& a);
Ival mul_rat(const Ival& a, const Rat& q);
Ival add_rat(const Ival& a, const Rat& q);
// Exact scaling by 2^e.
Ival mul_2si(const Ival& a, long e);
Ival max_i(const Ival& a, const Ival& b);

// Comparisons between certified enclosures. True/False are certified at the
// interval endpoints; Unknown means overlap.
Tern ge(const Ival& a, const Ival& b);
Tern gt(const Ival& a, const Ival& b);
inline Tern le(const Ival& a, const Ival& b) { return ge(b, a); }
inline Tern lt(const Ival& a, const Ival& b) { return gt(b, a); }
// Interval vs exact rational: these are exact (no rounding in the compare).
Tern ge_rat(const Ival& a, const Rat& q);
Tern gt_rat(const Ival& a, const Rat& q);
Tern le_rat(const Ival& a, const Rat& q);
Tern lt_rat(const Ival& a, const Rat& q);

// pi enclosure.
Ival pi_ival(mpfr_prec_t prec);
// Enclosure of sin(pi*theta) for exact rational theta; argument reduced
// mod 2 exactly, so theta may have numerators with thousands of digits.
// Relative accuracy is preserved for tiny theta.
Ival sin_pi(const Rat& theta, mpfr_prec_t prec);
Ival cos_pi(const Rat& theta, mpfr_prec_t prec);
// Enclosure of e^x for rational x.
Ival exp_rat(const Rat& x, mpfr_prec_t prec);
// Enclosure of log2(v), ln(v) for rational v > 0.
Ival log2_rat(const Rat& v, mpfr_prec_t prec);
Ival ln_rat(const Rat& v, mpfr_prec_t prec);
// Enclosure of v^beta for rational v > 0, beta > 0.
Ival pow_rat(const Rat& v, const Rat& beta, mpfr_prec_t prec);

// floor(q * log2(e)) for a positive integer q, certified by refinement.
Int floor_q_log2e(const Int& q);
// E such that 2^{-E-1} < e^{-q} < 2^{-E}; the canonical dyadic bound for
// the coefficient decay condition.
inline Int exp_neg_dyadic_exponent(const Int& q) { return floor_q_log2e(q); }

// Rectangle enclosure of a complex value.
struct CIval {
    Ival re, im;
    CIval(Ival r, Ival i) : re(std::move(r)), im(std::move(i)) {}
    explicit CIval(mpfr_prec_t prec) : re(prec), im(prec) {}
};

Ival mag(const CIval& z);

// Retry f at doubled precision until it returns a definite answer or the
// cap is hit.
template <class F>
Tern decide(const F& f, const PrecCtx& ctx) {
    mpfr_prec_t p = ctx.working;
    for (;;) {
        Tern t = f(p);
        if (t != Tern::Unknown) return t;
        if (p >= ctx.max) return Tern::Unknown;
        p = std::min(p * 2, ctx.max);
    }
}

// Exact rational from a dyadic endpoint.
Rat rat_from_mpfr(mpfr_srcptr x);

}  // namespace slowtorus
