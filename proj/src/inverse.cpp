#include "qfd/inverse.hpp"

#include "qfd/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfd {

namespace {

const std::vector<long>& odd_primes_in_budget()
{
    static const std::vector<long> primes = [] {
        std::vector<bool> composite(kGreedyPrimeBudget, false);
        std::vector<long> out;
        for (long i = 3; i < kGreedyPrimeBudget; i += 2) {
            if (composite[static_cast<std::size_t>(i)])
                continue;
            out.push_back(i);
            for (long j = i * i; j < kGreedyPrimeBudget; j += 2 * i)
                composite[static_cast<std::size_t>(j)] = true;
        }
        return out;
    }();
    return primes;
}

Rational factor(long p) { return Rational(2 * p + 1, 2 * p + 2); }

} // namespace

GreedyProductPlan greedy_interval_product(const Rational& alpha, const Rational& beta)
{
    if (alpha < 0 || beta > 1 || !(alpha < beta))
        throw std::invalid_argument("need 0 <= alpha < beta <= 1");
    const auto& primes = odd_primes_in_budget();
    const Rational ratio = alpha / beta;

    // a_n decreases, so the first index with 1 - a_n > alpha/beta works for all later n.
    std::size_t K = 0;
    while (K < primes.size() && !(factor(primes[K]) > ratio))
        ++K;
    if (K == primes.size())
        throw DomainError("prime budget exhausted before 1 - a_n exceeds alpha/beta");

    // Locate L with floating point, then settle it exactly.
    long double approx = 1;
    std::size_t L = 0;
    const long double beta_d = beta.get_d();
    while (K + L < primes.size() && approx >= beta_d * (1 + 1e-12L)) {
        approx *= 1.0L - 1.0L / (2.0L * primes[K + L] + 2);
        ++L;
    }
    if (L == 0)
        L = 1;
    auto exact = [&](std::size_t len) {
        Int num = 1, den = 1;
        for (std::size_t i = 0; i < len; ++i) {
            num *= 2 * primes[K + i] + 1;
            den *= 2 * primes[K + i] + 2;
        }
        return make_rational(num, den);
    };
    Rational prod = exact(L);
    while (!(prod < beta)) {
        if (K + L >= primes.size())
            throw DomainError("prime budget exhausted: consecutive products stay above beta = " + to_string(beta));
        prod *= factor(primes[K + L]);
        ++L;
    }
    while (L > 1) {
        Rational shorter = prod / factor(primes[K + L - 1]);
        if (!(shorter < beta))
            break;
        prod = shorter;
        --L;
    }
    // The proof's bound: prod >= beta (1 - a_last) > alpha.
    if (prod < beta * factor(primes[K + L - 1]) || !(prod > alpha))
        throw std::logic_error("greedy product left the interval");

    GreedyProductPlan plan{alpha, beta, K, {}, prod};
    plan.primes.assign(primes.begin() + static_cast<long>(K), primes.begin() + static_cast<long>(K + L));
    return plan;
}

std::set<Rational> attainable_local_density_set(long p)
{
    Place::prime(p);
    if (p == 2)
        return {Rational(1, 2), Rational(5, 6), Rational(11, 12), Rational(1)};
    return {Rational(1, 2), make_rational(p + 2, 2 * p + 2), make_rational(2 * p + 1, 2 * p + 2), Rational(1)};
}

bool globalization_feasible(int n, int r, int s, const std::vector<long>& S, const std::vector<long>& T)
{
    if (n < 3)
        throw std::invalid_argument("globalization needs n >= 3");
    if (r < 0 || s < 0 || r + s != n)
        throw std::invalid_argument("signature must satisfy r + s = n");
    for (long t : T)
        if (std::find(S.begin(), S.end(), t) == S.end())
            throw std::invalid_argument("T must be a subset of S");
    if (n >= 4)
        return true;
    const bool odd = T.size() % 2 == 1;
    return (r * s == 0) == odd;
}

V2Construction v2_density_construction(int k)
{
    if (k < 0 || k > 60)
        throw std::invalid_argument("k must lie in 0..60");
    const std::uint64_t step = 1ULL << (k + 2);
    for (std::uint64_t p = step - 1;; p += step)
        if (is_prime(p)) {
            const auto pl = static_cast<long>(p);
            return {pl, Rational(5, 6) * make_rational(pl + 1, 2 * pl)};
        }
}

} // namespace qfd
