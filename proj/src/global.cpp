#include "qfd/global.hpp"

#include <algorithm>
#include <stdexcept>

namespace qfd {

std::string to_string(DensityCase c)
{
    switch (c) {
    case DensityCase::UnaryZero:
        return "unary-zero";
    case DensityCase::AnisotropicBinaryZero:
        return "anisotropic-binary-zero";
    case DensityCase::Product:
        return "product";
    }
    return "unknown";
}

namespace {

bool has_finite_support(const QuadraticForm& f)
{
    if (f.arity() == 1)
        return false;
    if (f.arity() == 2)
        return is_isotropic_over_Q(f);
    return true;
}

} // namespace

std::vector<long> support_primes(const QuadraticForm& f)
{
    if (!has_finite_support(f))
        throw DomainError("no finite support: " + f.to_string() + " is unary or an anisotropic binary");
    std::vector<long> s = {2};
    for (long p : prime_divisors(f.det_doubled()))
        if (p != 2)
            s.push_back(p);
    return s;
}

GlobalDensityReport density(const QuadraticForm& f)
{
    if (f.arity() == 1)
        return {Rational(0), {}, DensityCase::UnaryZero};
    if (f.arity() == 2 && !is_isotropic_over_Q(f))
        return {Rational(0), {}, DensityCase::AnisotropicBinaryZero};
    GlobalDensityReport report{Rational(1), {}, DensityCase::Product};
    for (long p : support_primes(f)) {
        Rational d = local_density(f, p);
        report.density *= d;
        if (d != 1)
            report.factors.emplace(p, d);
    }
    return report;
}

Rational density_isotropic_binary_closed_form(const QuadraticForm& f)
{
    if (f.arity() != 2)
        throw std::invalid_argument("closed form needs a binary form");
    if (!is_primitive(f))
        throw std::invalid_argument("closed form needs a primitive form");
    const Int delta = binary_delta(f);
    if (!is_perfect_square(delta))
        throw std::invalid_argument("closed form needs an isotropic binary (square discriminant)");

    Rational result = 1;
    // Dyadic exponent: half the 2-adic valuation of the discriminant.
    const long a2 = vp(delta, 2) / 2;
    if (a2 == 1)
        result *= Rational(3, 4);
    else if (a2 >= 2)
        result *= (Rational(2) + rpow(2, 4 - 2 * a2) + rpow(2, 5 - 2 * a2) + rpow(2, 2 - 2 * a2)) / 12;
    for (long p : prime_divisors(delta)) {
        if (p == 2)
            continue;
        const long a = vp(delta, p);
        result *= (Rational(p) + rpow(p, 1 - a) + 2 * rpow(p, -a)) / Rational(2 * p + 2);
    }
    return result;
}

bool locally_represented(const QuadraticForm& f, const Int& m)
{
    if (m == 0)
        throw std::invalid_argument("zero is excluded from representation sets");
    if (is_positive_definite(f) && m < 0)
        return false;
    if (is_negative_definite(f) && m > 0)
        return false;
    if (f.arity() == 1) {
        // m = c x^2 over every completion iff m/c is a rational square.
        Rational q = make_rational(m, Int(static_cast<long>(f.coeff(0, 0))));
        return q > 0 && is_perfect_square(q.get_num()) && is_perfect_square(q.get_den());
    }
    std::vector<long> primes;
    if (has_finite_support(f)) {
        primes = support_primes(f);
    } else {
        // Off 2*Delta*m the binary is unimodular and m is a unit.
        primes = prime_divisors(Int(2 * binary_delta(f) * m));
    }
    for (long p : primes)
        if (!zp_represents(f, p, m))
            return false;
    return true;
}

Rational delta_loc_truncated(const QuadraticForm& f, long K)
{
    if (K < 0)
        throw std::invalid_argument("cutoff must be nonnegative");
    Rational r = 1;
    for (long p : support_primes(f))
        r *= truncated_local_density(representation_table(f, p), K);
    return r;
}

ResidueSieve::ResidueSieve(const QuadraticForm& f, long K) : K_(K), modulus_(1), primes_(support_primes(f))
{
    if (K < 0)
        throw std::invalid_argument("cutoff must be nonnegative");
    for (long p : primes_) {
        Int mod = ipow(p, static_cast<unsigned long>(K + 2));
        if (mod > Int(1UL << 26))
            throw DomainError("per-prime modulus " + mod.get_str() + " too large for the sieve");
        LocalForm lf(f, p);
        PrimePart part{p, mod.get_ui(), std::vector<bool>(mod.get_ui(), false), 0};
        for (std::uint64_t a = 1; a < part.modulus; ++a) {
            auto [v, u] = valuation(Int(static_cast<unsigned long>(a)), p);
            if (v < K && lf.represents(v, u)) {
                part.hit[a] = true;
                ++part.count;
            }
        }
        modulus_ *= mod;
        parts_.push_back(std::move(part));
    }
    if (materialized() && class_count() > 0) {
        const std::uint64_t M = modulus_.get_ui();
        for (std::uint64_t a = 0; a < M; ++a) {
            bool in = true;
            for (const auto& part : parts_)
                if (!part.hit[a % part.modulus]) {
                    in = false;
                    break;
                }
            if (in)
                classes_.push_back(a);
        }
    }
}

Int ResidueSieve::class_count() const
{
    Int c = 1;
    for (const auto& part : parts_)
        c *= static_cast<unsigned long>(part.count);
    return c;
}

Rational ResidueSieve::density() const { return make_rational(class_count(), modulus_); }

bool ResidueSieve::contains(const Int& a) const
{
    for (const auto& part : parts_) {
        Int r = a % Int(static_cast<unsigned long>(part.modulus));
        if (r < 0)
            r += static_cast<unsigned long>(part.modulus);
        if (!part.hit[r.get_ui()])
            return false;
    }
    return true;
}

bool TheoremReport::all_hold() const
{
    return std::all_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return !c.applicable || c.holds; });
}

std::vector<long> anisotropic_places(const QuadraticForm& f)
{
    std::vector<long> out;
    if (!is_isotropic_local(f, Place::real()))
        out.push_back(0);
    for (long p : bad_primes(f))
        if (!is_isotropic_local(f, Place::prime(p)))
            out.push_back(p);
    return out;
}

TheoremReport theorem_checks(const QuadraticForm& f)
{
    const int n = f.arity();
    GlobalDensityReport rep = density(f);
    TheoremReport out{rep.density, {}};
    const Rational& d = rep.density;

    out.checks.push_back({"positive-density", n >= 3, d > 0, "delta = " + to_string(d)});

    const bool q_isotropic = is_isotropic_over_Q(f);
    out.checks.push_back({"anisotropic-ternary-below-one", n == 3 && !q_isotropic, d < 1, "delta = " + to_string(d)});

    if (n >= 4 || (n == 3 && q_isotropic)) {
        bool universal = true, adc = true;
        for (long p : support_primes(f)) {
            RepresentationTable t = representation_table(f, p);
            universal = universal && local_density(t) == 1;
            adc = adc && is_adc_local(t);
        }
        const bool one = d == 1;
        out.checks.push_back({"universal-adc-density-one", true, universal == adc && adc == one,
                              std::string("universal=") + (universal ? "yes" : "no") + " adc=" + (adc ? "yes" : "no") +
                                  " delta=1:" + (one ? "yes" : "no")});
    } else {
        out.checks.push_back({"universal-adc-density-one", false, true, "needs n >= 4 or an isotropic ternary"});
    }

    bool v2_applicable = n == 3 && is_positive_definite(f);
    if (v2_applicable) {
        v2_applicable = is_adc_local(f, 2);
        for (long p : support_primes(f))
            if (v2_applicable && p % 4 == 3 && is_isotropic_local(f, Place::prime(p)))
                v2_applicable = is_adc_local(f, p);
    }
    const bool v2_negative = d != 0 && vp(d, 2) < 0;
    out.checks.push_back({"negative-2-adic-valuation", v2_applicable, v2_negative,
                          d == 0 ? "delta = 0" : "v2(delta) = " + std::to_string(vp(d, 2))});

    out.checks.push_back({"rational-density", true, true, to_string(d)});

    if (n == 3) {
        auto places = anisotropic_places(f);
        out.checks.push_back({"anisotropic-place-parity", true, places.size() % 2 == 0,
                              std::to_string(places.size()) + " anisotropic places"});
    }
    return out;
}

} // namespace qfd
