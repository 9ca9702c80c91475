#include "oracles.hpp"

#include "qfd/global.hpp"

#include <doctest.h>

#include <random>

using namespace qfd;
using oracle::frac;

namespace {

QuadraticForm random_form(int n, int bound, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> c(-bound, bound);
    for (;;) {
        std::vector<std::int64_t> coeffs;
        for (int i = 0; i < n * (n + 1) / 2; ++i)
            coeffs.push_back(c(rng));
        try {
            return make_form(n, coeffs);
        } catch (const std::invalid_argument&) {
        }
    }
}

// Primitive (a x + b y)(c x + d y) with nonzero determinant and |Delta| <= bound.
QuadraticForm random_isotropic_binary(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<int> c(-12, 12);
    for (;;) {
        long a = c(rng), b = c(rng), cc = c(rng), d = c(rng);
        const long det = a * d - b * cc;
        if (det == 0 || det * det > bound)
            continue;
        auto f = make_form(2, {a * cc, a * d + b * cc, b * d});
        if (is_primitive(f))
            return f;
    }
}

bool three_squares_excluded(long m)
{
    while (m % 4 == 0)
        m /= 4;
    return m % 8 == 7;
}

} // namespace

TEST_CASE("support primes")
{
    CHECK(support_primes(parse_form("x^2+y^2+z^2")) == std::vector<long>{2});
    CHECK(support_primes(parse_form("x^2-y^2")) == std::vector<long>{2});
    CHECK(support_primes(parse_form("2023*x^2+2023*y^2+2023*z^2+2023*w^2")) == std::vector<long>{2, 7, 17});
    CHECK_THROWS_AS(support_primes(parse_form("x^2+y^2")), DomainError);
    CHECK_THROWS_AS(support_primes(parse_form("3*x^2")), DomainError);

    // Off the support the form is universal.
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = random_form(3 + trial % 2, 9, rng);
        auto S = support_primes(f);
        for (long p : {3L, 5L, 7L, 11L, 13L})
            if (std::find(S.begin(), S.end(), p) == S.end())
                CHECK(local_density(f, p) == 1);
    }
}

TEST_CASE("density: examples")
{
    auto three = density(parse_form("x^2+y^2+z^2"));
    CHECK(three.density == frac(5, 6));
    CHECK(three.case_tag == DensityCase::Product);
    CHECK(three.factors == std::map<long, Rational>{{2, frac(5, 6)}});

    CHECK(density(parse_form("x^2+y^2+z^2+w^2")).density == 1);
    CHECK(density(parse_form("x^2+y^2+z^2+w^2")).factors.empty());
    auto big = density(parse_form("2023*x^2+2023*y^2+2023*z^2+2023*w^2"));
    CHECK(big.density == frac(1, 2023));
    CHECK(big.factors == std::map<long, Rational>{{7, frac(1, 7)}, {17, frac(1, 289)}});
    CHECK(density(parse_form("x^2-y^2")).density == frac(3, 4));
    CHECK(density(parse_form("x*y")).density == 1);

    auto fermat = density(parse_form("x^2+y^2"));
    CHECK(fermat.density == 0);
    CHECK(fermat.case_tag == DensityCase::AnisotropicBinaryZero);
    for (long c : {1L, -1L, 2L, 7L, -12L}) {
        auto u = density(diagonal_form(std::vector<std::int64_t>{c}));
        CHECK(u.density == 0);
        CHECK(u.case_tag == DensityCase::UnaryZero);
    }
    CHECK(density(parse_form("x^2+y^2+7*z^2+7*w^2")).density == 1);
    CHECK(density(parse_form("3*x^2+4*y^2+9*z^2")).density > 0);
}

TEST_CASE("isotropic binaries: closed form")
{
    CHECK(density_isotropic_binary_closed_form(parse_form("x^2-y^2")) == frac(3, 4));
    const Rational x2m9y2 = frac(3, 4) * ((3 + frac(1, 3) + frac(2, 9)) / 8);
    CHECK(density_isotropic_binary_closed_form(parse_form("x^2-9*y^2")) == x2m9y2);
    CHECK(density(parse_form("x^2-9*y^2")).density == x2m9y2);
    CHECK(density_isotropic_binary_closed_form(parse_form("x*y")) == 1);
    CHECK(density_isotropic_binary_closed_form(parse_form("x^2+x*y")) == 1);
    CHECK_THROWS_AS(density_isotropic_binary_closed_form(parse_form("x^2+y^2")), std::invalid_argument);
    CHECK_THROWS_AS(density_isotropic_binary_closed_form(parse_form("2*x^2-2*y^2")), std::invalid_argument);

    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_isotropic_binary(rng, 10'000);
        INFO(f.to_string());
        CHECK(density_isotropic_binary_closed_form(f) == density(f).density);
    }
}

TEST_CASE("local representation")
{
    auto f = parse_form("x^2+y^2+z^2");
    CHECK_FALSE(locally_represented(f, Int(7)));
    CHECK_FALSE(locally_represented(f, Int(-1)));
    CHECK(locally_represented(parse_form("x^2+y^2+7*z^2+7*w^2"), Int(3)));
    for (long m = 1; m <= 2000; ++m)
        CHECK(locally_represented(f, Int(m)) == !three_squares_excluded(m));
    CHECK_THROWS_AS(locally_represented(f, Int(0)), std::invalid_argument);

    // Unary: m = c x^2 locally iff m / c is a rational square.
    auto u = diagonal_form(std::vector<std::int64_t>{3});
    CHECK(locally_represented(u, Int(12)));
    CHECK_FALSE(locally_represented(u, Int(6)));
    CHECK_FALSE(locally_represented(u, Int(-3)));

    // Anisotropic binary: sums of two squares.
    auto g = parse_form("x^2+y^2");
    for (long m = 1; m <= 500; ++m) {
        bool two_squares = false;
        for (long a = 0; a * a <= m && !two_squares; ++a)
            for (long b = 0; a * a + b * b <= m; ++b)
                if (a * a + b * b == m)
                    two_squares = true;
        // Binary positive forms of class number one are regular.
        CHECK(locally_represented(g, Int(m)) == two_squares);
    }
}

TEST_CASE("every represented value is locally represented")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        auto f = random_form(2 + trial % 3, 6, rng);
        for (auto m : oracle::box_values(f, 300, f.arity() == 4 ? 4 : 6)) {
            INFO(f.to_string() << " m=" << m);
            CHECK(locally_represented(f, Int(m)));
        }
    }
}

TEST_CASE("residue sieve")
{
    auto f = parse_form("x^2+y^2+z^2");
    ResidueSieve s(f, 4);
    CHECK(s.modulus() == 64);
    CHECK(s.class_count() == 50);
    CHECK(s.density() == frac(25, 32));
    CHECK(s.density() == delta_loc_truncated(f, 4));
    REQUIRE(s.materialized());
    for (std::uint64_t a = 0; a < 64; ++a) {
        const bool low_valuation = a != 0 && oracle::val(static_cast<std::int64_t>(a), 2, 6) < 4;
        const bool expected = low_valuation && a % 8 != 7 && a % 32 != 28;
        CHECK(s.contains(Int(static_cast<unsigned long>(a))) == expected);
        CHECK(std::binary_search(s.classes().begin(), s.classes().end(), a) == expected);
    }
    CHECK(s.contains(Int(-1)) == s.contains(Int(63)));

    ResidueSieve empty(f, 0);
    CHECK(empty.class_count() == 0);
    CHECK(empty.density() == 0);

    ResidueSieve four(parse_form("x^2+y^2+z^2+w^2"), 3);
    CHECK(four.modulus() == 32);
    CHECK(four.class_count() == 28); // every residue with v_2 < 3

    SUBCASE("random forms")
    {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            auto g = random_form(3 + trial % 2, 5, rng);
            const long K = 1 + trial % 2;
            Int M_est = 1;
            for (long p : support_primes(g))
                M_est *= ipow(p, static_cast<unsigned long>(K + 2));
            if (M_est > 10'000'000) {
                --trial;
                continue;
            }
            ResidueSieve sv(g, K);
            CHECK(sv.density() == delta_loc_truncated(g, K));
            Int M = 1;
            for (long p : sv.primes())
                M *= ipow(p, static_cast<unsigned long>(K + 2));
            CHECK(sv.modulus() == M);
            if (sv.materialized())
                CHECK(Int(static_cast<unsigned long>(sv.classes().size())) == sv.class_count());
            for (long a = 1; a <= 400; ++a) {
                bool low = true;
                for (long p : sv.primes())
                    low = low && vp(Int(a), p) < K;
                if (low)
                    CHECK(sv.contains(Int(a)) == locally_represented(g, Int(a)));
            }
        }
    }
}

TEST_CASE("truncation is monotone and bounded")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_form(3 + trial % 2, 10, rng);
        const Rational d = density(f).density;
        auto S = support_primes(f);
        Rational prev = 0;
        for (long K = 0; K <= 8; ++K) {
            Rational t = delta_loc_truncated(f, K);
            CHECK(t >= prev);
            CHECK(t <= d);
            Rational tail = 0, prod = 1;
            for (long p : S) {
                tail += rpow(p, -K);
                prod *= 1 - rpow(p, -K);
            }
            CHECK(d - t <= tail + (1 - prod));
            prev = t;
        }
    }
}

TEST_CASE("density denominators")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = random_form(3 + trial % 3, 10, rng);
        Int bound = 1;
        for (long p : support_primes(f)) {
            const long nu = p == 2 ? 8 : 4;
            bound *= nu * ipow(p, static_cast<unsigned long>(scan_ceiling(f, p))) * (p + 1);
        }
        const Rational d = density(f).density;
        INFO(f.to_string());
        CHECK(bound % d.get_den() == 0);
    }
}

TEST_CASE("scaling by squares")
{
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_form(3 + trial % 2, 6, rng);
        for (long c : {2L, 3L, 5L}) {
            auto g = scaled(f, c * c);
            CHECK(density(g).density == density(f).density / (c * c));
        }
    }
}

TEST_CASE("theorem checks: examples")
{
    auto three = theorem_checks(parse_form("x^2+y^2+z^2"));
    CHECK(three.all_hold());
    auto v2 = std::find_if(three.checks.begin(), three.checks.end(),
                           [](const TheoremCheck& c) { return c.name == "negative-2-adic-valuation"; });
    REQUIRE(v2 != three.checks.end());
    CHECK(v2->applicable);
    CHECK(v2->holds);
    CHECK(vp(three.density, 2) == -1);

    auto four = theorem_checks(parse_form("x^2+y^2+z^2+w^2"));
    CHECK(four.all_hold());
    CHECK(four.density == 1);
    for (long p : {2L, 3L, 5L})
        CHECK(is_locally_universal(parse_form("x^2+y^2+z^2+w^2"), p));

    for (std::int64_t p : {2, 3, 5, 7}) {
        auto f = diagonal_form(std::vector<std::int64_t>{1, p * p, p * p, p * p});
        const Rational d = density(f).density;
        CHECK(d <= 1 - frac(1, p) + frac(1, p * p));
        CHECK(d < 1);
        CHECK(theorem_checks(f).all_hold());
    }
}

TEST_CASE("theorem checks hold on random forms")
{
    std::mt19937_64 rng(41);
    for (int n = 3; n <= 5; ++n)
        for (int trial = 0; trial < 30; ++trial) {
            auto f = random_form(n, 8, rng);
            auto rep = theorem_checks(f);
            INFO(f.to_string());
            for (const auto& c : rep.checks) {
                INFO(c.name << ": " << c.detail);
                CHECK((!c.applicable || c.holds));
            }
        }
}

TEST_CASE("anisotropic places")
{
    CHECK(anisotropic_places(parse_form("x^2+y^2+z^2")) == std::vector<long>{0, 2});
    CHECK(anisotropic_places(parse_form("x^2+y^2-z^2")).empty());
    CHECK(anisotropic_places(parse_form("x^2+y^2-3*z^2")) == std::vector<long>{2, 3});
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial)
        CHECK(anisotropic_places(random_form(3, 12, rng)).size() % 2 == 0);
}
