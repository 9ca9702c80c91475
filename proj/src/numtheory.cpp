#include "qfd/numtheory.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace qfd {

Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size())
            return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
        throw ParseError("malformed rational: '" + std::string(text) + "'");
    Int n(strip_plus(num)), d(strip_plus(den));
    if (d == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(n, d);
}

Place Place::prime(long p)
{
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("place must be a prime, got " + std::to_string(p));
    return Place(p, 0);
}

PValuation valuation(const Int& n, long p)
{
    if (n == 0)
        throw std::invalid_argument("valuation of zero");
    if (p < 2)
        throw std::invalid_argument("valuation needs a prime");
    PValuation r{0, n};
    Int q, rem;
    const Int P(p);
    while (true) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.unit.get_mpz_t(), P.get_mpz_t());
        if (rem != 0)
            break;
        r.unit = q;
        ++r.v;
    }
    return r;
}

long vp(const Int& n, long p) { return valuation(n, p).v; }

long vp(const Rational& q, long p)
{
    if (q == 0)
        throw std::invalid_argument("valuation of zero");
    return vp(q.get_num(), p) - vp(q.get_den(), p);
}

bool is_prime(const Int& n)
{
    if (n < 2)
        return false;
    // GMP >= 6.2 runs Baillie-PSW first, which is exact below 2^64.
    return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

bool is_prime(std::uint64_t n) { return is_prime(Int(static_cast<unsigned long>(n))); }

std::uint64_t next_prime(std::uint64_t n)
{
    Int r;
    Int a(static_cast<unsigned long>(n));
    mpz_nextprime(r.get_mpz_t(), a.get_mpz_t());
    return r.get_ui();
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

// Brent's variant of Pollard rho; n odd composite.
u64 rho(u64 n)
{
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        const u64 m = 128;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_into(u64 n, std::vector<u64>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        if (n % p == 0) {
            out.push_back(p);
            factor_into(n / p, out);
            return;
        }
    }
    u64 d = rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::vector<std::pair<long, int>> factorize(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("cannot factor zero");
    std::vector<u64> ps;
    factor_into(n, ps);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<long, int>> out;
    for (u64 p : ps) {
        if (!out.empty() && out.back().first == static_cast<long>(p))
            ++out.back().second;
        else
            out.emplace_back(static_cast<long>(p), 1);
    }
    return out;
}

std::vector<long> prime_divisors(const Int& n)
{
    Int a = abs(n);
    if (a == 0)
        throw std::invalid_argument("prime divisors of zero");
    if (!mpz_fits_ulong_p(a.get_mpz_t()))
        throw DomainError("integer too large to factor: " + a.get_str());
    std::vector<long> out;
    for (auto [p, e] : factorize(a.get_ui()))
        out.push_back(p);
    return out;
}

int legendre_symbol(const Int& a, long p)
{
    if (p == 2)
        throw std::invalid_argument("dyadic Legendre undefined");
    if (p < 3)
        throw std::invalid_argument("Legendre symbol needs an odd prime");
    Int P(p);
    Int r = a % P;
    if (r < 0)
        r += P;
    return mpz_legendre(r.get_mpz_t(), P.get_mpz_t());
}

long least_nonresidue(long p)
{
    if (p == 2)
        throw std::invalid_argument("no nonresidue class at p = 2");
    for (long r = 2; r < p; ++r)
        if (legendre_symbol(Int(r), p) == -1)
            return r;
    throw std::logic_error("no nonresidue found");
}

namespace {

// Residue of an odd integer mod 8 in {1,3,5,7}.
int mod8(const Int& u)
{
    Int r = u % 8;
    if (r < 0)
        r += 8;
    return static_cast<int>(r.get_si());
}

} // namespace

int hilbert_symbol(const Int& a, const Int& b, Place place)
{
    if (a == 0 || b == 0)
        throw std::invalid_argument("Hilbert symbol of zero");
    if (place.is_real())
        return (a < 0 && b < 0) ? -1 : 1;
    const long p = place.p();
    auto [alpha, u] = valuation(a, p);
    auto [beta, w] = valuation(b, p);
    if (p != 2) {
        int sign = ((alpha * beta) % 2 == 1 && (p % 4 == 3)) ? -1 : 1;
        int lu = legendre_symbol(u, p), lw = legendre_symbol(w, p);
        if (beta % 2 == 1)
            sign *= lu;
        if (alpha % 2 == 1)
            sign *= lw;
        return sign;
    }
    int uu = mod8(u), ww = mod8(w);
    int eps_u = ((uu - 1) / 2) & 1, eps_w = ((ww - 1) / 2) & 1;
    int om_u = ((uu * uu - 1) / 8) & 1, om_w = ((ww * ww - 1) / 8) & 1;
    int e = eps_u * eps_w + static_cast<int>(alpha & 1) * om_w + static_cast<int>(beta & 1) * om_u;
    return (e & 1) ? -1 : 1;
}

int hilbert_symbol(const Rational& a, const Rational& b, Place place)
{
    // a = n/d lies in the square class of n*d.
    return hilbert_symbol(Int(a.get_num() * a.get_den()), Int(b.get_num() * b.get_den()), place);
}

SquareClassSystem::SquareClassSystem(Place pl) : place(pl)
{
    if (pl.is_real()) {
        reps = {1, -1};
        nu = 2;
    } else if (pl.p() == 2) {
        reps = {1, 3, 5, 7, 2, 6, 10, 14};
        nu = 4;
    } else {
        long r = least_nonresidue(pl.p());
        reps = {1, r, pl.p(), r * pl.p()};
        nu = 2;
    }
}

int SquareClassSystem::rep_valuation(std::size_t i) const
{
    if (place.is_real())
        return 0;
    if (place.p() == 2)
        return i >= 4 ? 1 : 0;
    return i >= 2 ? 1 : 0;
}

SquareClass square_class_of(const Int& x, long p)
{
    if (x == 0)
        throw std::invalid_argument("square class of zero");
    auto [v, u] = valuation(x, p);
    int odd = static_cast<int>(v & 1);
    if (p == 2) {
        int idx = (mod8(u) - 1) / 2; // 1,3,5,7 -> 0..3
        return {odd * 4 + idx, v};
    }
    int nonres = legendre_symbol(u, p) == 1 ? 0 : 1;
    return {odd * 2 + nonres, v};
}

SquareClass square_class_of(const Rational& x, Place place)
{
    if (x == 0)
        throw std::invalid_argument("square class of zero");
    if (place.is_real())
        return {x > 0 ? 0 : 1, 0};
    const long p = place.p();
    // n/d = n*d / d^2; the class of n*d, valuation of n/d.
    SquareClass c = square_class_of(Int(x.get_num() * x.get_den()), p);
    c.v = vp(x, p);
    return c;
}

bool is_local_square(const Rational& x, Place place)
{
    if (x == 0)
        return true;
    return square_class_of(x, place).index == 0;
}

bool is_perfect_square(const Int& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

} // namespace qfd
