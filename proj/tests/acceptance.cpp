// Acceptance run: one PASS/FAIL line per criterion. Optional arguments
// restrict the run to the listed criterion numbers.

#include "qfd/enumerate.hpp"
#include "qfd/global.hpp"
#include "qfd/inverse.hpp"
#include "qfd/local.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace qfd;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void fail(const std::string& why)
    {
        if (pass)
            note << why;
        pass = false;
    }
};

Rational frac(long a, long b) { return make_rational(a, b); }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

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

void exact_densities(Outcome& out)
{
    struct Case {
        const char* form;
        Rational expected;
    };
    const Case cases[] = {
        {"x^2+y^2+z^2", frac(5, 6)},
        {"x^2+y^2+z^2+w^2", 1},
        {"2023*x^2+2023*y^2+2023*z^2+2023*w^2", frac(1, 2023)},
        {"x^2-y^2", frac(3, 4)},
        {"x*y", 1},
        {"x^2+y^2", 0},
        {"x^2", 0},
        {"-6*x^2", 0},
        {"2023*x^2", 0},
    };
    double worst = 0;
    for (const auto& c : cases) {
        auto t0 = Clock::now();
        Rational d = density(parse_form(c.form)).density;
        const double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        if (d != c.expected)
            out.fail(std::string(c.form) + " gave " + to_string(d));
        if (dt >= 1.0)
            out.fail(std::string(c.form) + " took over 1 s");
    }
    out.note << (out.pass ? "" : "; ") << "9 forms, slowest " << worst << " s";
}

void nondyadic_tables(Outcome& out)
{
    auto t0 = Clock::now();
    int compared = 0, mismatches = 0;
    for (long p : {3L, 5L}) {
        const long r = least_nonresidue(p);
        for (const auto& e : nondyadic_case_catalog(p, 2)) {
            if (e.b > 2 || e.c > 5 || e.d > 2)
                continue;
            for (int eps : {0, 1})
                for (int k = 0; k <= 3; ++k) {
                    const std::int64_t scale = to_int64(Int((eps ? r : 1) * ipow(p, static_cast<unsigned long>(k))));
                    auto g = scaled(e.form, scale);
                    ++compared;
                    if (representation_table(g, p) != rescaled_table(e.table, eps, k)) {
                        ++mismatches;
                        out.fail("case " + e.name + " mismatch for " + g.to_string());
                    }
                }
        }
    }
    const double dt = seconds_since(t0);
    if (dt >= 120)
        out.fail("over 2 min");
    out.note << (out.pass ? "" : "; ") << compared << " scaled instances, " << mismatches << " mismatches, " << dt << " s";
}

void dyadic_binaries(Outcome& out)
{
    for (int a = 0; a <= 6; ++a) {
        QuadraticForm f = a == 0 ? parse_form("x*y") : make_form(2, {1, 0, -to_int64(ipow(2, static_cast<unsigned long>(2 * a - 2)))});
        Rational expected = a == 0 ? Rational(1)
                            : a == 1 ? frac(3, 4)
                                     : (2 + rpow(2, 4 - 2 * a) + rpow(2, 5 - 2 * a) + rpow(2, 2 - 2 * a)) / 12;
        Rational got = local_density(f, 2);
        if (got != expected)
            out.fail("a=" + std::to_string(a) + ": " + to_string(got) + " vs " + to_string(expected));
    }
    auto t = representation_table(parse_form("x^2-4*y^2"), 2);
    if (t.v != std::vector<long>{0, 2, 0, 2, 5, 5, 5, 5})
        out.fail("a=2 table " + to_string(t));
    out.note << (out.pass ? "" : "; ") << "a = 0..6 and the a=2 table";
}

void closed_form(Outcome& out)
{
    std::mt19937_64 rng(1008);
    int equal = 0;
    for (int i = 0; i < 100; ++i) {
        auto f = random_isotropic_binary(rng, 10'000);
        if (density_isotropic_binary_closed_form(f) == density(f).density)
            ++equal;
        else
            out.fail(f.to_string());
    }
    out.note << (out.pass ? "" : "; ") << equal << "/100 equal";
}

void local_measure(Outcome& out)
{
    std::mt19937_64 rng(5005);
    const long K = 3;
    int agree = 0, total = 0;
    for (int i = 0; i < 50; ++i) {
        const int n = 1 + static_cast<int>(rng() % 4);
        auto f = random_form(n, 20, rng);
        for (long p : {2L, 3L, 5L}) {
            ++total;
            const long m_top = K + 2 + vp(Int(4 * f.det_doubled()), p) + 2;
            const Rational expected = truncated_local_density(representation_table(f, p), K);
            bool ok = false;
            try {
                Rational prev = local_density_bruteforce(f, p, K, K + 2);
                for (long m = K + 2; m <= m_top; ++m) {
                    Rational next = local_density_bruteforce(f, p, K, m + 1);
                    if (next == prev) {
                        ok = prev == expected;
                        break;
                    }
                    prev = next;
                }
            } catch (const DomainError& e) {
                out.fail(f.to_string() + " at " + std::to_string(p) + ": " + e.what());
                continue;
            }
            if (ok)
                ++agree;
            else
                out.fail(f.to_string() + " at " + std::to_string(p));
        }
    }
    out.note << (out.pass ? "" : "; ") << agree << "/" << total << " (form, p) pairs stabilize at the table value";
}

void exception_sets(Outcome& out)
{
    auto t0 = Clock::now();
    auto quaternary = exceptional_set(parse_form("x^2+y^2+7*z^2+7*w^2"), 100'000);
    const double dt1 = seconds_since(t0);
    std::vector<std::int64_t> expected;
    for (std::int64_t k = 1; 3 * k <= 100'000; k *= 7) {
        expected.push_back(3 * k);
        if (6 * k <= 100'000)
            expected.push_back(6 * k);
    }
    std::sort(expected.begin(), expected.end());
    if (quaternary.members != expected)
        out.fail("x^2+y^2+7z^2+7w^2 set differs");
    if (quaternary.members.size() < 4 || std::vector<std::int64_t>(quaternary.members.begin(), quaternary.members.begin() + 4) != std::vector<std::int64_t>{3, 6, 21, 42})
        out.fail("x^2+y^2+7z^2+7w^2 first four");

    t0 = Clock::now();
    auto second = exceptional_set(parse_form("3*x^2+4*y^2+9*z^2"), 10'000);
    const double dt2 = seconds_since(t0);
    std::vector<std::int64_t> squares;
    for (std::int64_t k = 1; k * k <= 10'000; ++k) {
        bool all_one_mod_three = true;
        for (auto [q, e] : factorize(static_cast<std::uint64_t>(k)))
            all_one_mod_three = all_one_mod_three && q % 3 == 1;
        if (all_one_mod_three)
            squares.push_back(k * k);
    }
    if (second.members != squares)
        out.fail("3x^2+4y^2+9z^2 set differs");
    for (std::int64_t m : {1, 49, 169})
        if (!std::binary_search(second.members.begin(), second.members.end(), m))
            out.fail("missing " + std::to_string(m));
    if (dt1 >= 60 || dt2 >= 60)
        out.fail("over 1 min");
    out.note << (out.pass ? "" : "; ") << quaternary.members.size() << " and " << second.members.size() << " exceptions, " << dt1 << " s / "
             << dt2 << " s";
}

void binary_nonregularity(Outcome& out)
{
    auto f = parse_form("x^2+5*x*y");
    int count = 0;
    for (long l = 2; l <= 10'000; ++l) {
        if (l % 5 != 4 || !is_prime(static_cast<std::uint64_t>(l)))
            continue;
        ++count;
        if (!locally_represented(f, Int(l)) || represents_isotropic_binary(f, Int(l)))
            out.fail("prime " + std::to_string(l));
    }
    out.note << (out.pass ? "" : "; ") << count << " primes checked";
}

void empirical_convergence(Outcome& out)
{
    for (const char* text : {"x^2+y^2+z^2", "x^2-y^2", "x^2+y^2+7*z^2+7*w^2"}) {
        auto f = parse_form(text);
        auto s = represented_set(f, 1'000'000);
        const Rational gap = abs(Rational(empirical_density(s) - density(f).density));
        if (gap > frac(5, 1000))
            out.fail(std::string(text) + " gap " + std::to_string(gap.get_d()));
        out.note << (out.pass ? "" : "; ") << text << " [" << to_string(s.method()) << "] gap " << gap.get_d() << "  ";
    }
}

void near_regularity(Outcome& out)
{
    for (const char* text : {"x^2+y^2+7*z^2+7*w^2", "3*x^2+4*y^2+9*z^2"})
        for (std::uint64_t X : {1'000UL, 10'000UL, 100'000UL}) {
            const auto e = exceptional_set(parse_form(text), X).members.size();
            const double bound = 4 * std::sqrt(static_cast<double>(X));
            if (static_cast<double>(e) > bound)
                out.fail(std::string(text) + " at " + std::to_string(X));
            out.note << e << "<=" << static_cast<long>(bound) << " ";
        }
}

void theorem_suite(Outcome& out)
{
    std::mt19937_64 rng(1010);
    int forms = 0;
    for (int n = 3; n <= 5; ++n)
        for (int i = 0; i < 50; ++i) {
            auto f = random_form(n, 10, rng);
            ++forms;
            auto rep = theorem_checks(f);
            for (const auto& c : rep.checks)
                if (c.name != "negative-2-adic-valuation" && c.applicable && !c.holds)
                    out.fail(f.to_string() + ": " + c.name);
            // Parity, independently of the report.
            if (n == 3 && anisotropic_places(f).size() % 2 != 0)
                out.fail(f.to_string() + ": odd anisotropic place count");
        }
    out.note << (out.pass ? "" : "; ") << forms << " forms";
}

void inverse_constructions(Outcome& out)
{
    std::mt19937_64 rng(1111);
    std::uniform_int_distribution<int> lo(0, 9900);
    int inside = 0;
    std::string first_refusal;
    for (int i = 0; i < 100; ++i) {
        const int a = lo(rng);
        std::uniform_int_distribution<int> hi(a + 100, 10'000);
        const Rational alpha = frac(a, 10'000), beta = frac(hi(rng), 10'000);
        try {
            auto plan = greedy_interval_product(alpha, beta);
            if (plan.product > alpha && plan.product < beta)
                ++inside;
            else
                out.fail("product outside (" + to_string(alpha) + ", " + to_string(beta) + ")");
        } catch (const DomainError&) {
            if (first_refusal.empty())
                first_refusal = "(" + to_string(alpha) + ", " + to_string(beta) + ")";
        }
    }
    if (inside != 100)
        out.fail("greedy refused " + std::to_string(100 - inside) + " intervals, first " + first_refusal);
    auto c = v2_density_construction(3);
    if (c.p != 31 || c.density != frac(40, 93) || vp(c.density, 2) != 3)
        out.fail("v2 construction k=3");
    const std::set<Rational> d2 = {frac(1, 2), frac(5, 6), frac(11, 12), 1};
    const std::set<Rational> d3 = {frac(1, 2), frac(5, 8), frac(7, 8), 1};
    const std::set<Rational> d5 = {frac(1, 2), frac(7, 12), frac(11, 12), 1};
    if (attainable_local_density_set(2) != d2 || attainable_local_density_set(3) != d3 || attainable_local_density_set(5) != d5)
        out.fail("attainable sets");
    out.note << (out.pass ? "" : "; ") << inside << "/100 intervals hit";
}

void hilbert_reciprocity(Outcome& out)
{
    int pairs = 0;
    for (long a = -50; a <= 50; ++a)
        for (long b = -50; b <= 50; ++b) {
            if (a == 0 || b == 0)
                continue;
            ++pairs;
            int prod = hilbert_symbol(Int(a), Int(b), Place::real());
            std::set<long> places = {2};
            for (long p : prime_divisors(Int(a * b)))
                places.insert(p);
            for (long p : places)
                prod *= hilbert_symbol(Int(a), Int(b), Place::prime(p));
            if (prod != 1)
                out.fail("(" + std::to_string(a) + ", " + std::to_string(b) + ")");
        }
    out.note << (out.pass ? "" : "; ") << pairs << " pairs";
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria = {
        {1, exact_densities},     {2, nondyadic_tables},        {3, dyadic_binaries},     {4, closed_form},
        {5, local_measure},       {6, exception_sets},          {7, binary_nonregularity}, {8, empirical_convergence},
        {9, near_regularity},     {10, theorem_suite},          {11, inverse_constructions}, {12, hilbert_reciprocity},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::stoi(argv[i]));

    int failed = 0;
    for (const auto& [id, run] : criteria) {
        if (!only.empty() && !only.count(id))
            continue;
        Outcome out;
        auto t0 = Clock::now();
        try {
            run(out);
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << out.note.str() << "  ("
                  << seconds_since(t0) << " s)" << std::endl;
        failed += out.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
