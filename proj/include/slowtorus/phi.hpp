#pragma once

#include <optional>
#include <string>

#include "slowtorus/interval.hpp"
#include "slowtorus/rat.hpp"

namespace slowtorus {

// Target growth function phi. Restricted to concave increasing families so
// that the first-crossing search stays certifiable on ranges whose endpoints
// have tens of thousands of digits.
class GrowthFunction {
  public:
    enum class Family { Power, Log, Log2 };

    static GrowthFunction make(Family f, Rat a, Rat b, Rat beta = Rat(0));
    // "power:a,b,beta" | "log:a,b" | "log2:a,b", parameters as rationals.
    static GrowthFunction parse(const std::string& spec);

    Family family() const { return family_; }
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    const Rat& beta() const { return beta_; }
    std::string spec_str() const;

    // Certified enclosure of phi(x), x >= 1.
    Ival eval(const Rat& x, mpfr_prec_t prec) const;
    Ival eval(const Int& x, mpfr_prec_t prec) const { return eval(Rat(x), prec); }

    // Exact rational value of phi(x) when one exists (power at perfect
    // powers, log2 at 2^t - 1).
    std::optional<Rat> eval_exact(const Int& x) const;

    // Sign of phi(x) - y decided exactly in integer arithmetic, when the
    // operand sizes make that feasible.
    std::optional<int> exact_phi_cmp(const Int& x, const Rat& y) const;

    // phi(x) >= y, resolved exactly where possible, otherwise by interval
    // evaluation with precision doubling.
    Tern decide_phi_ge(const Int& x, const Rat& y, const PrecCtx& ctx) const;
    // r*x >= phi(x)
    Tern decide_rx_ge_phi(const Rat& r, const Int& x, const PrecCtx& ctx) const;

    // Smallest N > floor with r*N >= phi(N). Requires r <= 1 and
    // r*floor < phi(floor); minimality over (floor, N) follows from the
    // convexity of r*N - phi(N).
    Int first_crossing(const Rat& r, const Int& floor, const PrecCtx& ctx,
                       const Int& bit_budget) const;

    // Smallest M with phi(M) >= y. Requires y > phi(1).
    Int inverse_threshold(const Rat& y, const PrecCtx& ctx, const Int& bit_budget) const;

    // Rough upper bound on the bit length of inverse_threshold(y); used to
    // detect budget violations before materializing anything.
    Int inverse_bits_estimate(const Rat& y) const;

  private:
    GrowthFunction() = default;
    // Newton approximation to the root of r*x = phi(x); uncertified guess.
    Int newton_guess(const Rat& r, const Int& hi, mpfr_prec_t gp) const;
    Family family_ = Family::Log2;
    Rat a_, b_, beta_;
};

}  // namespace slowtorus
