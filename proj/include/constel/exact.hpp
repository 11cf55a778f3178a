#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace constel {

// Exact arithmetic substrate. All counting in this library is done in
// arbitrary-precision integers; rationals appear only in intermediate
// sums that must cancel, and every such cancellation is checked.
using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Int pow_int(long base, unsigned long exp) {
    return pow_int(Int(base), exp);
}

// Fails loudly when a sum that must be an integer is not; such a value
// signals an arithmetic bug, never a valid answer.
inline Int require_integral(const Rat& q, const std::string& what) {
    Rat canon = q;
    canon.canonicalize();
    if (canon.get_den() != 1)
        throw std::logic_error(what + ": expected an integer, got " + canon.get_str());
    return canon.get_num();
}

// Exact division with a divisibility check.
inline Int exact_div(const Int& num, const Int& den, const std::string& what) {
    if (den == 0) throw std::logic_error(what + ": division by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0)
        throw std::logic_error(what + ": " + num.get_str() + " not divisible by " + den.get_str());
    return q;
}

inline bool fits_int64(const Int& v) {
    static const Int lo = Int(std::numeric_limits<std::int64_t>::min());
    static const Int hi = Int(std::numeric_limits<std::int64_t>::max());
    return v >= lo && v <= hi;
}

inline std::int64_t to_int64(const Int& v) {
    if (!fits_int64(v)) throw std::overflow_error("value does not fit in 64 bits: " + v.get_str());
    return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
}

inline std::string rat_to_string(const Rat& q) {
    Rat canon = q;
    canon.canonicalize();
    return canon.get_str();
}

}  // namespace constel
