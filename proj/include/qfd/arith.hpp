#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qfd {

using Int = mpz_class;
using Rational = mpq_class;

// Raised when input is well-formed but the requested computation is refused
// (unsupported form class, exhausted search budget).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised on malformed text input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(const Int& num, const Int& den = 1)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Always "a/b", lowest terms, positive denominator.
inline std::string to_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Int& z) { return z.get_str(); }

// Accepts "a", "a/b", "-a/b".
Rational parse_rational(std::string_view text);

inline Int ipow(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int ipow(long base, unsigned long e)
{
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), e);
    if (base < 0 && (e & 1))
        r = -r;
    return r;
}

// p^e for e possibly negative.
inline Rational rpow(long p, long e)
{
    if (e >= 0)
        return Rational(ipow(p, static_cast<unsigned long>(e)));
    return make_rational(1, ipow(p, static_cast<unsigned long>(-e)));
}

inline bool fits_int64(const Int& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

inline std::int64_t to_int64(const Int& z)
{
    if (!fits_int64(z))
        throw std::overflow_error("integer does not fit in 64 bits");
    return z.get_si();
}

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace qfd
