#include "oracles.hpp"

#include "qfd/inverse.hpp"
#include "qfd/local.hpp"

#include <doctest.h>

#include <random>

using namespace qfd;
using oracle::frac;

namespace {

Rational factor(long p) { return 1 - frac(1, 2 * p + 2); }

void check_plan(const GreedyProductPlan& plan)
{
    REQUIRE_FALSE(plan.primes.empty());
    Rational prod = 1;
    for (long p : plan.primes)
        prod *= factor(p);
    CHECK(prod == plan.product);
    CHECK(plan.product > plan.alpha);
    CHECK(plan.product < plan.beta);
    // Consecutive odd primes from the start index.
    for (std::size_t i = 1; i < plan.primes.size(); ++i)
        CHECK(plan.primes[i] == static_cast<long>(next_prime(static_cast<std::uint64_t>(plan.primes[i - 1]))));
    // Every factor used exceeds alpha / beta; the step before the last stayed at or above beta.
    for (long p : plan.primes)
        CHECK(factor(p) > plan.alpha / plan.beta);
    CHECK(plan.product / factor(plan.primes.back()) >= plan.beta);
    // The start index is the least one that works.
    long odd_index = 0;
    for (long q = 3; q < plan.primes.front(); q = static_cast<long>(next_prime(static_cast<std::uint64_t>(q))))
        ++odd_index;
    CHECK(plan.start_index == static_cast<std::size_t>(odd_index));
    if (plan.primes.front() > 3) {
        long prev = 3;
        while (next_prime(static_cast<std::uint64_t>(prev)) < static_cast<std::uint64_t>(plan.primes.front()))
            prev = static_cast<long>(next_prime(static_cast<std::uint64_t>(prev)));
        CHECK_FALSE(factor(prev) > plan.alpha / plan.beta);
    }
}

} // namespace

TEST_CASE("greedy interval products: examples")
{
    auto whole = greedy_interval_product(0, 1);
    CHECK(whole.primes == std::vector<long>{3});
    CHECK(whole.product == frac(7, 8));
    check_plan(whole);

    auto upper = greedy_interval_product(frac(1, 2), 1);
    check_plan(upper);

    auto narrow = greedy_interval_product(frac(70, 100), frac(71, 100));
    check_plan(narrow);

    CHECK_THROWS_AS(greedy_interval_product(frac(1, 2), frac(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(greedy_interval_product(frac(-1, 2), frac(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(greedy_interval_product(frac(1, 2), frac(3, 2)), std::invalid_argument);
}

TEST_CASE("greedy interval products beyond the prime budget are refused")
{
    // Starting at 17, the product over odd primes below the budget stays
    // above 31/100.
    CHECK_THROWS_AS(greedy_interval_product(frac(3, 10), frac(31, 100)), DomainError);
    CHECK_THROWS_AS(greedy_interval_product(frac(1, 100), frac(2, 100)), DomainError);
}

TEST_CASE("greedy interval products on random intervals in reach")
{
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> lo(0, 990);
    int done = 0;
    while (done < 100) {
        const int a = lo(rng);
        std::uniform_int_distribution<int> hi(a + 10, 1000);
        const int b = hi(rng);
        if (b < 450)
            continue; // below the budget's reach for narrow intervals
        ++done;
        INFO(a << "/1000 .. " << b << "/1000");
        check_plan(greedy_interval_product(frac(a, 1000), frac(b, 1000)));
    }
}

TEST_CASE("attainable local densities")
{
    CHECK(attainable_local_density_set(2) == std::set<Rational>{frac(1, 2), frac(5, 6), frac(11, 12), 1});
    CHECK(attainable_local_density_set(3) == std::set<Rational>{frac(1, 2), frac(5, 8), frac(7, 8), 1});
    CHECK(attainable_local_density_set(5) == std::set<Rational>{frac(1, 2), frac(7, 12), frac(11, 12), 1});
    CHECK_THROWS(attainable_local_density_set(4));

    // Each value is the local density of some ADC form of rank 2 or 3.
    for (long p : {2L, 3L, 5L}) {
        std::set<Rational> seen;
        const std::int64_t P = p, r = p == 2 ? 3 : least_nonresidue(p);
        std::vector<std::int64_t> pool = {1, -1, r, -r, P, -P, r * P, -r * P};
        for (auto a : pool)
            for (auto b : pool) {
                auto binary = diagonal_form(std::vector<std::int64_t>{a, b});
                if (is_adc_local(binary, p))
                    seen.insert(local_density(binary, p));
                for (auto c : pool) {
                    auto ternary = diagonal_form(std::vector<std::int64_t>{a, b, c});
                    if (is_adc_local(ternary, p))
                        seen.insert(local_density(ternary, p));
                }
            }
        for (const auto& d : attainable_local_density_set(p)) {
            INFO("p=" << p << " value " << to_string(d));
            CHECK(seen.count(d));
        }
    }
}

TEST_CASE("globalization hypotheses")
{
    CHECK(globalization_feasible(3, 3, 0, {2}, {2}));
    CHECK_FALSE(globalization_feasible(3, 2, 1, {5}, {5}));
    CHECK(globalization_feasible(3, 2, 1, {3, 5}, {3, 5}));
    CHECK_FALSE(globalization_feasible(3, 3, 0, {2, 3}, {}));
    CHECK(globalization_feasible(4, 4, 0, {2, 3}, {3}));
    CHECK(globalization_feasible(5, 2, 3, {7}, {}));
    CHECK_THROWS(globalization_feasible(2, 2, 0, {2}, {2}));
    CHECK_THROWS(globalization_feasible(3, 2, 0, {2}, {2}));
    CHECK_THROWS(globalization_feasible(3, 3, 0, {2}, {3}));
}

TEST_CASE("2-adic valuation constructions")
{
    auto c0 = v2_density_construction(0);
    CHECK(c0.p == 3);
    CHECK(c0.density == frac(5, 9));
    CHECK(vp(c0.density, 2) == 0);
    auto c3 = v2_density_construction(3);
    CHECK(c3.p == 31);
    CHECK(c3.density == frac(40, 93));
    CHECK(vp(c3.density, 2) == 3);
    for (int k = 0; k <= 8; ++k) {
        auto c = v2_density_construction(k);
        const long mod = 1L << (k + 2);
        CHECK(c.p % mod == mod - 1);
        for (long q = mod - 1; q < c.p; q += mod)
            CHECK_FALSE(is_prime(static_cast<std::uint64_t>(q)));
        CHECK(c.density == frac(5, 6) * frac(c.p + 1, 2 * c.p));
        CHECK(vp(c.density, 2) >= k);
    }
    CHECK_THROWS(v2_density_construction(-1));
}
