#pragma once

#include "qfd/arith.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace qfd {

struct GreedyProductPlan {
    Rational alpha, beta;
    std::size_t start_index;  // K: factors start at the (K+1)-th odd prime
    std::vector<long> primes; // consecutive odd primes used
    Rational product;         // prod (1 - 1/(2p+2))
};

// Odd primes below this bound form the search budget.
constexpr long kGreedyPrimeBudget = 1'000'000;

// Consecutive factors 1 - 1/(2p+2) from the first index where every later
// factor exceeds alpha/beta, stopping as soon as the product drops below beta.
// Throws DomainError when the prime budget runs out first.
GreedyProductPlan greedy_interval_product(const Rational& alpha, const Rational& beta);

// ADC-attainable local densities at p.
std::set<Rational> attainable_local_density_set(long p);

// Hypothesis check only; no lattice is built. S and T are prime sets, T within S.
bool globalization_feasible(int n, int r, int s, const std::vector<long>& S, const std::vector<long>& T);

struct V2Construction {
    long p;
    Rational density;
};

// Least prime p = -1 mod 2^(k+2) and the density (5/6)(p+1)/(2p).
V2Construction v2_density_construction(int k);

} // namespace qfd
