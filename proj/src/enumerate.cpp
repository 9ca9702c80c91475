#include "qfd/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace qfd {

std::string to_string(EnumerationMethod m)
{
    switch (m) {
    case EnumerationMethod::LatticeWalk:
        return "lattice-walk";
    case EnumerationMethod::Divisor:
        return "divisor";
    case EnumerationMethod::LocalProxy:
        return "local-proxy";
    }
    return "unknown";
}

unsigned worker_count()
{
    if (const char* env = std::getenv("QFD_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            return static_cast<unsigned>(std::min(v, 256L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// RepresentedSet

RepresentedSet::RepresentedSet(std::uint64_t X, bool two_sided, int sign, EnumerationMethod method)
    : X_(X), two_sided_(two_sided), sign_(sign), method_(method), nbits_(two_sided ? 2 * X + 1 : X + 1),
      bits_((nbits_ + 63) / 64, 0)
{
    if (X == 0)
        throw std::invalid_argument("limit must be positive");
    if (!two_sided && sign != 1 && sign != -1)
        throw std::invalid_argument("one-sided sets need a sign");
}

std::uint64_t RepresentedSet::index_of(std::int64_t m) const
{
    const auto X = static_cast<std::int64_t>(X_);
    if (m == 0 || m > X || m < -X)
        return nbits_;
    if (two_sided_)
        return static_cast<std::uint64_t>(m + X);
    if ((m > 0) != (sign_ > 0))
        return nbits_;
    return static_cast<std::uint64_t>(m > 0 ? m : -m);
}

bool RepresentedSet::contains(std::int64_t m) const
{
    std::uint64_t i = index_of(m);
    return i < nbits_ && ((bits_[i >> 6] >> (i & 63)) & 1);
}

void RepresentedSet::insert(std::int64_t m)
{
    std::uint64_t i = index_of(m);
    if (i >= nbits_)
        throw std::out_of_range("value outside the represented range");
    bits_[i >> 6] |= 1ULL << (i & 63);
}

std::uint64_t RepresentedSet::count() const
{
    std::uint64_t c = 0;
    for (auto w : bits_)
        c += static_cast<std::uint64_t>(std::popcount(w));
    // Zero is never a member; its bit must stay clear.
    return c;
}

std::vector<std::int64_t> RepresentedSet::members() const
{
    std::vector<std::int64_t> out;
    const auto X = static_cast<std::int64_t>(X_);
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        std::uint64_t w = bits_[k];
        while (w) {
            auto j = static_cast<std::int64_t>((k << 6) + static_cast<std::uint64_t>(std::countr_zero(w)));
            w &= w - 1;
            out.push_back(two_sided_ ? j - X : sign_ * j);
        }
    }
    if (!two_sided_ && sign_ < 0)
        std::reverse(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Fincke-Pohst

namespace {

using Visitor = std::function<void(const std::vector<std::int64_t>&)>;

struct Ellipsoid {
    std::size_t d;
    std::vector<std::vector<long double>> q; // q[i][i] weights, q[i][j] (j > i) couplings
    std::vector<long double> c;
};

Ellipsoid decompose(const std::vector<std::vector<long double>>& Q, const std::vector<long double>& center)
{
    const std::size_t d = Q.size();
    Ellipsoid e{d, Q, center};
    auto& q = e.q;
    for (std::size_t i = 0; i < d; ++i) {
        if (!(q[i][i] > 0))
            throw std::invalid_argument("ellipsoid matrix is not positive definite");
        for (std::size_t j = i + 1; j < d; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < d; ++k)
            for (std::size_t l = k; l < d; ++l)
                q[k][l] -= q[k][i] * q[i][l];
    }
    return e;
}

void walk(const Ellipsoid& e, std::size_t level, long double remaining, std::vector<std::int64_t>& z,
          const Visitor& visit)
{
    const std::size_t i = level;
    long double t = 0;
    for (std::size_t j = i + 1; j < e.d; ++j)
        t += e.q[i][j] * (static_cast<long double>(z[j]) - e.c[j]);
    const long double mid = e.c[i] - t;
    const long double radius = std::sqrt(std::max<long double>(remaining, 0) / e.q[i][i]);
    const long double slack = 1e-9L * (1 + std::fabs(mid) + radius);
    const auto lo = static_cast<std::int64_t>(std::ceil(mid - radius - slack));
    const auto hi = static_cast<std::int64_t>(std::floor(mid + radius + slack));
    for (std::int64_t x = lo; x <= hi; ++x) {
        z[i] = x;
        const long double y = static_cast<long double>(x) - mid;
        const long double rest = remaining - e.q[i][i] * y * y;
        if (i == 0)
            visit(z);
        else
            walk(e, i - 1, rest, z, visit);
    }
}

} // namespace

void for_each_ellipsoid_point(const std::vector<std::vector<long double>>& Q, const std::vector<long double>& center,
                              long double bound, const Visitor& visit)
{
    if (Q.empty()) {
        visit({});
        return;
    }
    if (bound < 0)
        return;
    Ellipsoid e = decompose(Q, center);
    std::vector<std::int64_t> z(e.d, 0);
    // Relative slack so boundary points survive rounding.
    walk(e, e.d - 1, bound * (1 + 1e-12L) + 1e-9L, z, visit);
}

// ---------------------------------------------------------------------------
// Definite forms: values g(y) + lambda.y + shift over an inner block y.

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 checked(i128 v)
{
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        throw DomainError("integer overflow during enumeration");
    return static_cast<i64>(v);
}

i64 floor_div(i64 a, i64 b)
{
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

// Bits shifted left by `offset` (may be negative) OR-ed into dst.
void or_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, i64 offset)
{
    const auto src_bits = static_cast<i64>(src.size()) * 64;
    auto fetch = [&](i64 pos) -> std::uint64_t {
        // 64 source bits starting at pos; bits outside the source are zero.
        if (pos <= -64 || pos >= src_bits)
            return 0;
        if (pos < 0)
            return src[0] << (-pos);
        auto w = static_cast<std::size_t>(pos >> 6);
        int b = static_cast<int>(pos & 63);
        std::uint64_t lo = src[w] >> b;
        if (b && w + 1 < src.size())
            lo |= src[w + 1] << (64 - b);
        return lo;
    };
    const i64 first = std::max<i64>(0, floor_div(offset, 64));
    const i64 last = std::min<i64>(static_cast<i64>(dst.size()) - 1, floor_div(offset + src_bits, 64));
    for (i64 d = first; d <= last; ++d)
        dst[static_cast<std::size_t>(d)] |= fetch(d * 64 - offset);
}

struct InnerLattice {
    int k;             // 1 or 2
    i64 G[2][2] = {};  // doubled Gram of the inner block
    i64 det;           // det G
    // k = 2 reduction data: w = (wx, d) = G (s, t), u = (e, 0) = G (ux, uy).
    i64 d = 0, e = 0, wx = 0, s = 0, t = 0, ux = 0, uy = 0;

    explicit InnerLattice(const std::vector<std::vector<i64>>& D, int k_) : k(k_)
    {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                G[i][j] = D[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (k == 1) {
            det = G[0][0];
            return;
        }
        det = G[0][0] * G[1][1] - G[0][1] * G[1][0];
        Int g, ss, tt;
        mpz_gcdext(g.get_mpz_t(), ss.get_mpz_t(), tt.get_mpz_t(), Int(static_cast<long>(G[1][0])).get_mpz_t(),
                   Int(static_cast<long>(G[1][1])).get_mpz_t());
        d = g.get_si();
        s = ss.get_si();
        t = tt.get_si();
        wx = s * G[0][0] + t * G[0][1];
        ux = G[1][1] / d;
        uy = -G[1][0] / d;
        e = det / d;
    }

    // lambda = lambda0 + G m with lambda0 canonical.
    void reduce(const i64* lambda, i64* lambda0, i64* m) const
    {
        if (k == 1) {
            m[0] = floor_div(lambda[0], G[0][0]);
            lambda0[0] = lambda[0] - m[0] * G[0][0];
            return;
        }
        const i64 q = floor_div(lambda[1], d);
        i64 l0 = lambda[0] - q * wx;
        const i64 l1 = lambda[1] - q * d;
        const i64 r = floor_div(l0, e);
        l0 -= r * e;
        lambda0[0] = l0;
        lambda0[1] = l1;
        m[0] = q * s + r * ux;
        m[1] = q * t + r * uy;
    }

    i64 value(const i64* y) const
    {
        if (k == 1)
            return checked(static_cast<i128>(G[0][0] / 2) * y[0] * y[0]);
        return checked(static_cast<i128>(G[0][0] / 2) * y[0] * y[0] + static_cast<i128>(G[0][1]) * y[0] * y[1] +
                       static_cast<i128>(G[1][1] / 2) * y[1] * y[1]);
    }

    // floor of min over real y of g(y) + lambda0.y = -lambda0^T G^{-1} lambda0 / 2.
    i64 floor_min(const i64* l) const
    {
        if (k == 1)
            return -ceil_div(checked(static_cast<i128>(l[0]) * l[0]), 2 * G[0][0]);
        i128 num = static_cast<i128>(G[1][1]) * l[0] * l[0] - 2 * static_cast<i128>(G[0][1]) * l[0] * l[1] +
                   static_cast<i128>(G[0][0]) * l[1] * l[1];
        return -ceil_div(checked(num), 2 * det);
    }
};

struct ClassImage {
    i64 base; // bit i stands for base + i
    std::vector<std::uint64_t> bits;
};

ClassImage class_image(const InnerLattice& L, const i64* l0, std::uint64_t X)
{
    ClassImage img{L.floor_min(l0), std::vector<std::uint64_t>((X + 2 + 63) / 64, 0)};
    const auto width = static_cast<i64>(X + 2);
    std::vector<std::vector<long double>> Q(static_cast<std::size_t>(L.k), std::vector<long double>(static_cast<std::size_t>(L.k)));
    for (int i = 0; i < L.k; ++i)
        for (int j = 0; j < L.k; ++j)
            Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<long double>(L.G[i][j]) / 2;
    std::vector<long double> c(static_cast<std::size_t>(L.k));
    if (L.k == 1) {
        c[0] = -static_cast<long double>(l0[0]) / static_cast<long double>(L.G[0][0]);
    } else {
        const long double dt = static_cast<long double>(L.det);
        c[0] = -(static_cast<long double>(L.G[1][1]) * l0[0] - static_cast<long double>(L.G[0][1]) * l0[1]) / dt;
        c[1] = -(-static_cast<long double>(L.G[1][0]) * l0[0] + static_cast<long double>(L.G[0][0]) * l0[1]) / dt;
    }
    for_each_ellipsoid_point(Q, c, static_cast<long double>(X) + 2, [&](const std::vector<i64>& y) {
        i64 v = L.value(y.data()) + l0[0] * y[0] + (L.k == 2 ? l0[1] * y[1] : 0);
        i64 idx = v - img.base;
        if (idx >= 0 && idx < width)
            img.bits[static_cast<std::size_t>(idx >> 6)] |= 1ULL << (idx & 63);
    });
    return img;
}

std::vector<std::vector<i64>> doubled_gram_i64(const QuadraticForm& f)
{
    auto D = f.doubled_gram();
    std::vector<std::vector<i64>> out(static_cast<std::size_t>(f.arity()), std::vector<i64>(static_cast<std::size_t>(f.arity())));
    for (int i = 0; i < f.arity(); ++i)
        for (int j = 0; j < f.arity(); ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_int64(D(i, j));
    return out;
}

} // namespace

RepresentedSet represented_set_definite(const QuadraticForm& f, std::uint64_t X)
{
    int sign;
    if (is_positive_definite(f))
        sign = 1;
    else if (is_negative_definite(f))
        sign = -1;
    else
        throw DomainError("lattice walk needs a definite form");
    if (X > (1ULL << 40))
        throw DomainError("limit too large for a bit array");
    const QuadraticForm g = sign > 0 ? f : scaled(f, -1);
    RepresentedSet out(X, false, sign, EnumerationMethod::LatticeWalk);

    const int n = g.arity();
    const int k = std::min(n, 2);
    const auto outer = static_cast<std::size_t>(n - k);
    const auto D = doubled_gram_i64(g);
    const InnerLattice L(D, k);

    // Schur complement of the inner block: min over real y of f(y, z).
    std::vector<std::vector<long double>> S(outer, std::vector<long double>(outer));
    {
        long double inv[2][2];
        if (k == 1) {
            inv[0][0] = 1.0L / static_cast<long double>(D[0][0]);
        } else {
            const long double dt = static_cast<long double>(L.det);
            inv[0][0] = static_cast<long double>(D[1][1]) / dt;
            inv[1][1] = static_cast<long double>(D[0][0]) / dt;
            inv[0][1] = inv[1][0] = -static_cast<long double>(D[0][1]) / dt;
        }
        for (std::size_t a = 0; a < outer; ++a)
            for (std::size_t b = 0; b < outer; ++b) {
                long double corr = 0;
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        corr += static_cast<long double>(D[static_cast<std::size_t>(i)][k + a]) * inv[i][j] *
                                static_cast<long double>(D[static_cast<std::size_t>(j)][k + b]);
                S[a][b] = (static_cast<long double>(D[k + a][k + b]) - corr) / 2;
            }
    }

    // Jobs: (class of lambda, shift), deduplicated.
    std::map<std::pair<i64, i64>, std::size_t> class_ids;
    std::vector<std::pair<i64, i64>> class_keys;
    std::vector<std::pair<std::size_t, i64>> jobs;
    for_each_ellipsoid_point(S, std::vector<long double>(outer, 0), static_cast<long double>(X), [&](const std::vector<i64>& z) {
        i64 lambda[2] = {0, 0}, l0[2] = {0, 0}, m[2] = {0, 0};
        for (int i = 0; i < k; ++i) {
            i128 acc = 0;
            for (std::size_t a = 0; a < outer; ++a)
                acc += static_cast<i128>(D[static_cast<std::size_t>(i)][k + a]) * z[a];
            lambda[i] = checked(acc);
        }
        i128 h = 0;
        for (std::size_t a = 0; a < outer; ++a) {
            h += static_cast<i128>(D[k + a][k + a] / 2) * z[a] * z[a];
            for (std::size_t b = a + 1; b < outer; ++b)
                h += static_cast<i128>(D[k + a][k + b]) * z[a] * z[b];
        }
        L.reduce(lambda, l0, m);
        i128 shift = static_cast<i128>(L.value(m)) + h;
        for (int i = 0; i < k; ++i)
            shift -= static_cast<i128>(lambda[i]) * m[i];
        auto key = std::make_pair(l0[0], l0[1]);
        auto [it, fresh] = class_ids.emplace(key, class_keys.size());
        if (fresh)
            class_keys.push_back(key);
        jobs.emplace_back(it->second, checked(shift));
    });
    std::sort(jobs.begin(), jobs.end());
    jobs.erase(std::unique(jobs.begin(), jobs.end()), jobs.end());

    std::vector<ClassImage> images;
    images.reserve(class_keys.size());
    for (const auto& key : class_keys) {
        i64 l0[2] = {key.first, key.second};
        images.push_back(class_image(L, l0, X));
    }

    const unsigned T = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
    auto run = [&](std::size_t begin, std::size_t end, std::vector<std::uint64_t>& dst) {
        for (std::size_t j = begin; j < end; ++j) {
            const auto& img = images[jobs[j].first];
            or_shifted(dst, img.bits, img.base + jobs[j].second);
        }
    };
    auto& dst = out.words();
    if (T <= 1) {
        run(0, jobs.size(), dst);
    } else {
        std::vector<std::vector<std::uint64_t>> partial(T, std::vector<std::uint64_t>(dst.size(), 0));
        {
            std::vector<std::jthread> pool;
            const std::size_t chunk = (jobs.size() + T - 1) / T;
            for (unsigned w = 0; w < T; ++w) {
                std::size_t b = std::min(jobs.size(), w * chunk), e = std::min(jobs.size(), b + chunk);
                pool.emplace_back([&, b, e, w] { run(b, e, partial[w]); });
            }
        }
        for (const auto& p : partial)
            for (std::size_t i = 0; i < dst.size(); ++i)
                dst[i] |= p[i];
    }
    // Drop zero and anything past X.
    dst[0] &= ~1ULL;
    const std::uint64_t nb = out.bit_count();
    if (nb % 64)
        dst.back() &= (1ULL << (nb % 64)) - 1;
    return out;
}

RepresentedSet represented_set_positive(const QuadraticForm& f, std::uint64_t X)
{
    if (!is_positive_definite(f))
        throw DomainError("form is not positive definite");
    return represented_set_definite(f, X);
}

std::optional<std::vector<std::int64_t>> find_representation(const QuadraticForm& f, std::int64_t m)
{
    int sign = is_positive_definite(f) ? 1 : is_negative_definite(f) ? -1 : 0;
    if (sign == 0)
        throw DomainError("vector search needs a definite form");
    if (m == 0 || (m > 0) != (sign > 0))
        return std::nullopt;
    const int n = f.arity();
    auto A = f.gram();
    std::vector<std::vector<long double>> Q(static_cast<std::size_t>(n), std::vector<long double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sign * static_cast<long double>(A(i, j).get_d());
    std::optional<std::vector<std::int64_t>> hit;
    // The walk cannot stop early; bail out of later visits cheaply instead.
    for_each_ellipsoid_point(Q, std::vector<long double>(static_cast<std::size_t>(n), 0), static_cast<long double>(sign * m),
                             [&](const std::vector<std::int64_t>& v) {
                                 if (!hit && f.evaluate(std::span<const std::int64_t>(v)) == m)
                                     hit = v;
                             });
    return hit;
}

// ---------------------------------------------------------------------------
// Isotropic binaries

namespace {

struct BinaryReduction {
    Int content;
    ReducedIsotropicBinary red;
};

BinaryReduction reduce_binary(const QuadraticForm& f)
{
    if (f.arity() != 2 || !is_perfect_square(binary_delta(f)))
        throw std::invalid_argument("divisor criterion needs an isotropic binary");
    auto [c, prim] = primitive_part(f);
    return {c, gauss_reduce_isotropic_binary(prim)};
}

std::vector<Int> positive_divisors(const Int& n)
{
    if (!mpz_fits_ulong_p(n.get_mpz_t()))
        throw DomainError("integer too large to factor: " + n.get_str());
    std::vector<Int> divs = {Int(1)};
    for (auto [p, e] : factorize(n.get_ui())) {
        const std::size_t sz = divs.size();
        Int pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j)
                divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

} // namespace

std::optional<std::pair<Int, Int>> isotropic_binary_witness(const QuadraticForm& f, const Int& m)
{
    if (m == 0)
        throw std::invalid_argument("zero is excluded from representation sets");
    const auto [c, red] = reduce_binary(f);
    if (m % c != 0)
        return std::nullopt;
    const Int mm = m / c;
    auto original = [&](const Int& X, const Int& Y) {
        const auto& M = red.witness;
        return std::make_pair(Int(M(0, 0) * X + M(0, 1) * Y), Int(M(1, 0) * X + M(1, 1) * Y));
    };
    if (red.hyperbolic)
        return original(Int(1), mm);
    for (const Int& d : positive_divisors(abs(mm)))
        for (const Int& x : {d, Int(-d)}) {
            // m = x (A x + B y)
            Int rest = mm / x - red.A * x;
            if (rest % red.B == 0)
                return original(x, Int(rest / red.B));
        }
    return std::nullopt;
}

bool represents_isotropic_binary(const QuadraticForm& f, const Int& m) { return isotropic_binary_witness(f, m).has_value(); }

RepresentedSet represented_set_isotropic_binary(const QuadraticForm& f, std::uint64_t X)
{
    const auto [c, red] = reduce_binary(f);
    RepresentedSet out(X, true, 0, EnumerationMethod::Divisor);
    if (!fits_int64(c) || c > Int(static_cast<unsigned long>(X)))
        return out;
    const i64 cc = c.get_si();
    const auto Xp = static_cast<i64>(X) / cc;
    if (red.hyperbolic) {
        for (i64 v = 1; v <= Xp; ++v) {
            out.insert(v * cc);
            out.insert(-v * cc);
        }
        return out;
    }
    const i64 A = to_int64(red.A), B = to_int64(red.B);
    for (i64 x = -Xp; x <= Xp; ++x) {
        if (x == 0)
            continue;
        const i64 ax = std::llabs(x);
        const i64 wmax = Xp / ax;
        // w = A x + B y ranges over the class of A x mod B in [-wmax, wmax].
        const i64 r = ((A * x) % B + B) % B;
        for (i64 w = -wmax + ((r - (-wmax)) % B + B) % B; w <= wmax; w += B)
            if (w != 0)
                out.insert(x * w * cc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Local membership

LocalMembership::LocalMembership(const QuadraticForm& f)
    : f_(f), sign_(is_positive_definite(f) ? 1 : is_negative_definite(f) ? -1 : 0), unary_(f.arity() == 1),
      finite_support_(f.arity() >= 3 || (f.arity() == 2 && is_isotropic_over_Q(f)))
{
    if (unary_)
        return;
    std::vector<long> primes = finite_support_ ? support_primes(f) : prime_divisors(Int(2 * binary_delta(f)));
    for (long p : primes)
        locals_.emplace_back(f, p);
}

bool LocalMembership::operator()(std::int64_t m) const
{
    if (m == 0)
        return false;
    if ((sign_ > 0 && m < 0) || (sign_ < 0 && m > 0))
        return false;
    if (unary_)
        return locally_represented(f_, Int(static_cast<long>(m)));
    const Int mz(static_cast<long>(m));
    for (const auto& lf : locals_)
        if (!lf.represents(mz))
            return false;
    if (!finite_support_) {
        // Remaining primes of m where the binary is unimodular.
        for (long p : prime_divisors(mz)) {
            bool seen = std::any_of(locals_.begin(), locals_.end(), [p](const LocalForm& lf) { return lf.p() == p; });
            if (!seen && !zp_represents(f_, p, mz))
                return false;
        }
    }
    return true;
}

RepresentedSet locally_represented_set(const QuadraticForm& f, std::uint64_t X)
{
    const int sign = is_positive_definite(f) ? 1 : is_negative_definite(f) ? -1 : 0;
    RepresentedSet out(X, sign == 0, sign, EnumerationMethod::LocalProxy);
    LocalMembership local(f);
    const auto Xs = static_cast<i64>(X);
    for (i64 m = -Xs; m <= Xs; ++m)
        if (m != 0 && local(m))
            out.insert(m);
    return out;
}

RepresentedSet represented_set(const QuadraticForm& f, std::uint64_t X)
{
    if (!is_indefinite(f))
        return represented_set_definite(f, X);
    if (f.arity() == 2) {
        if (is_perfect_square(binary_delta(f)))
            return represented_set_isotropic_binary(f, X);
        throw DomainError("anisotropic indefinite binary: exact enumeration unsupported");
    }
    if (f.arity() == 3)
        throw DomainError("exceptions lie in finitely many square classes; exact enumeration unsupported");
    // Indefinite forms in four or more variables are regular.
    return locally_represented_set(f, X);
}

ExceptionSet exceptional_set(const QuadraticForm& f, std::uint64_t X)
{
    if (is_indefinite(f) && f.arity() >= 4)
        return {X, {}};
    RepresentedSet rep = represented_set(f, X);
    LocalMembership local(f);
    ExceptionSet out{X, {}};
    const auto Xs = static_cast<i64>(X);
    for (i64 m = -Xs; m <= Xs; ++m)
        if (m != 0 && !rep.contains(m) && local(m))
            out.members.push_back(m);
    return out;
}

Rational empirical_density(const RepresentedSet& s)
{
    const Int count(static_cast<unsigned long>(s.count()));
    const Int X(static_cast<unsigned long>(s.limit()));
    return make_rational(count, s.two_sided() ? Int(2 * X) : X);
}

Rational empirical_density(const QuadraticForm& f, std::uint64_t X) { return empirical_density(represented_set(f, X)); }

// ---------------------------------------------------------------------------
// Bitmap files

void write_bitmap(std::ostream& out, const RepresentedSet& s)
{
    const std::uint64_t X = s.limit();
    out.write("QFD1", 4);
    for (int i = 0; i < 8; ++i)
        out.put(static_cast<char>((X >> (8 * i)) & 0xff));
    std::vector<unsigned char> bytes((2 * X + 1 + 7) / 8, 0);
    for (std::int64_t m : s.members()) {
        const auto j = static_cast<std::uint64_t>(m + static_cast<std::int64_t>(X));
        bytes[j >> 3] = static_cast<unsigned char>(bytes[j >> 3] | (1u << (j & 7)));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("failed to write bitmap");
}

Bitmap read_bitmap(std::istream& in)
{
    char magic[4];
    if (!in.read(magic, 4) || std::string(magic, 4) != "QFD1")
        throw ParseError("not a QFD1 bitmap");
    std::uint64_t X = 0;
    for (int i = 0; i < 8; ++i) {
        int c = in.get();
        if (c == EOF)
            throw ParseError("truncated bitmap header");
        X |= static_cast<std::uint64_t>(c & 0xff) << (8 * i);
    }
    if (X > (1ULL << 40))
        throw ParseError("bitmap limit out of range");
    std::vector<unsigned char> bytes((2 * X + 1 + 7) / 8);
    if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())))
        throw ParseError("truncated bitmap body");
    Bitmap bm{X, {}};
    for (std::uint64_t j = 0; j < 2 * X + 1; ++j)
        if ((bytes[j >> 3] >> (j & 7)) & 1)
            bm.members.push_back(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(X));
    return bm;
}

} // namespace qfd
