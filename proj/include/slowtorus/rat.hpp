#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace slowtorus {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when materializing a value would exceed the configured bit budget.
struct budget_error : std::runtime_error {
    std::string where;
    budget_error(std::string where_, const std::string& msg)
        : std::runtime_error(msg), where(std::move(where_)) {}
};

// Thrown when an interval comparison cannot be separated at maximum precision.
struct indeterminate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// Fractional part, in [0,1). Exact.
inline Rat frac(const Rat& x) { return x - Rat(floor_rat(x)); }

// x mod 2, in [0,2). Exact; used for trig argument reduction.
inline Rat mod2(const Rat& x) {
    Rat h = x / 2;
    return (h - Rat(floor_rat(h))) * 2;
}

inline Rat pow2(long e) {
    Rat r(1);
    if (e >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(-e));
    return r;
}

inline size_t bit_length(const Int& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }

// Smallest t with 2^t >= x, x >= 1.
inline unsigned long ceil_log2(const Int& x) {
    if (x <= 0) throw std::invalid_argument("ceil_log2: x must be positive");
    size_t b = bit_length(x);
    Int p = Int(1) << (b - 1);
    return p == x ? static_cast<unsigned long>(b - 1) : static_cast<unsigned long>(b);
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

}  // namespace slowtorus
