#pragma once

#include "qfd/arith.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qfd {

// A completion of Q: a prime, or the real place (prime 0).
class Place {
public:
    constexpr Place() = default;
    static constexpr Place real() { return Place{}; }
    static Place prime(long p);

    constexpr bool is_real() const { return p_ == 0; }
    constexpr long p() const { return p_; }
    friend constexpr bool operator==(Place a, Place b) { return a.p_ == b.p_; }

private:
    constexpr explicit Place(long p, int) : p_(p) {}
    long p_ = 0;
};

struct PValuation {
    long v;
    Int unit;
};

PValuation valuation(const Int& n, long p);
long vp(const Int& n, long p);
// Valuation of a nonzero rational (may be negative).
long vp(const Rational& q, long p);

bool is_prime(const Int& n);
bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n); // least prime > n

// Distinct prime divisors in increasing order; |n| must fit in 64 bits.
std::vector<long> prime_divisors(const Int& n);
std::vector<std::pair<long, int>> factorize(std::uint64_t n);

int legendre_symbol(const Int& a, long p);
long least_nonresidue(long p);

int hilbert_symbol(const Rational& a, const Rational& b, Place place);
int hilbert_symbol(const Int& a, const Int& b, Place place);

// Square classes of Q_p (or R) with a fixed representative order.
struct SquareClassSystem {
    Place place;
    std::vector<long> reps;
    int nu;

    explicit SquareClassSystem(Place pl);
    std::size_t size() const { return reps.size(); }
    // v_p of representative i (0 or 1).
    int rep_valuation(std::size_t i) const;
};

struct SquareClass {
    int index;
    long v; // v_p(x); 0 at the real place
    friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

SquareClass square_class_of(const Rational& x, Place place);
SquareClass square_class_of(const Int& x, long p);

bool is_local_square(const Rational& x, Place place);
bool is_perfect_square(const Int& n);

} // namespace qfd
