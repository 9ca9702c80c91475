#include "qfd/local.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qfd {

namespace {

// Valuation of a Z_(p)-rational entry; zero entries are skipped by callers.
long val(const Rational& q, long p) { return vp(q, p); }

// Unit data of a nonzero rational at p: residue mod 8 for p = 2, else 1 or r.
int unit_code(const Rational& q, long p, long r)
{
    SquareClass c = square_class_of(q, Place::prime(p));
    if (p == 2)
        return 2 * (c.index % 4) + 1;
    return (c.index % 2 == 0) ? 1 : static_cast<int>(r);
}

// Jordan splitting over Z_p of the Gram matrix; pivots of minimal valuation,
// ties broken by smallest index.
std::vector<JordanBlock> jordan_split(const QuadraticForm& f, long p, long r)
{
    const int n = f.arity();
    Matrix<Rational> a = f.gram();
    std::vector<int> active(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        active[static_cast<std::size_t>(i)] = i;
    std::vector<JordanBlock> blocks;

    auto eliminate = [&](const std::vector<int>& piv) {
        // Clear the coupling between the pivot rows and all other active rows.
        if (piv.size() == 1) {
            int i = piv[0];
            for (int k : active) {
                if (k == i || a(k, i) == 0)
                    continue;
                Rational m = a(k, i) / a(i, i);
                for (int t : active)
                    a(k, t) -= m * a(i, t);
                for (int t : active)
                    a(t, k) -= m * a(t, i);
            }
        } else {
            int i = piv[0], j = piv[1];
            Rational d = a(i, i) * a(j, j) - a(i, j) * a(i, j);
            for (int k : active) {
                if (k == i || k == j)
                    continue;
                Rational al = (a(j, j) * a(i, k) - a(i, j) * a(j, k)) / d;
                Rational be = (a(i, i) * a(j, k) - a(i, j) * a(i, k)) / d;
                if (al == 0 && be == 0)
                    continue;
                for (int t : active)
                    a(k, t) -= al * a(i, t) + be * a(j, t);
                for (int t : active)
                    a(t, k) -= al * a(t, i) + be * a(t, j);
            }
        }
        std::erase_if(active, [&](int x) { return std::find(piv.begin(), piv.end(), x) != piv.end(); });
    };

    while (!active.empty()) {
        long best = 0;
        bool any = false;
        for (int i : active)
            for (int j : active)
                if (i <= j && a(i, j) != 0) {
                    long v = val(a(i, j), p);
                    if (!any || v < best) {
                        best = v;
                        any = true;
                    }
                }
        if (!any)
            throw std::logic_error("degenerate form in Jordan splitting");
        int diag = -1;
        for (int i : active)
            if (a(i, i) != 0 && val(a(i, i), p) == best) {
                diag = i;
                break;
            }
        if (diag < 0) {
            int pi = -1, pj = -1;
            for (int i : active) {
                for (int j : active)
                    if (i < j && a(i, j) != 0 && val(a(i, j), p) == best) {
                        pi = i;
                        pj = j;
                        break;
                    }
                if (pi >= 0)
                    break;
            }
            if (p != 2) {
                // x_i <- x_i + x_j puts the minimal valuation on the diagonal.
                for (int t : active)
                    a(pi, t) += a(pj, t);
                for (int t : active)
                    a(t, pi) += a(t, pj);
                diag = pi;
            } else {
                int scale = static_cast<int>(best + 1);
                bool aniso = a(pi, pi) != 0 && a(pj, pj) != 0 && val(a(pi, pi), p) == scale && val(a(pj, pj), p) == scale;
                blocks.push_back({scale, 2, 0, aniso});
                eliminate({pi, pj});
                continue;
            }
        }
        blocks.push_back({static_cast<int>(val(a(diag, diag), p)), 1, unit_code(a(diag, diag), p, r), false});
        eliminate({diag});
    }
    std::sort(blocks.begin(), blocks.end(), [](const JordanBlock& x, const JordanBlock& y) {
        if (x.scale != y.scale)
            return x.scale < y.scale;
        if (x.dim != y.dim)
            return x.dim < y.dim;
        return x.unit < y.unit;
    });
    return blocks;
}

// Residues mod 8 reachable by good-type vectors (p = 2): either a unimodular
// plane coordinate is odd (Hensel from mod 2), or all such are even and a
// scale-0 diagonal coordinate is odd (Hensel from mod 8).
std::uint8_t dyadic_good_mask(const std::vector<JordanBlock>& blocks)
{
    struct Var {
        std::size_t block;
        int slot;
    };
    std::vector<Var> vars;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (blocks[b].scale <= 2)
            for (int s = 0; s < blocks[b].dim; ++s)
                vars.push_back({b, s});
    if (vars.size() > 12)
        throw DomainError("too many low-scale dyadic components");
    const std::size_t nv = vars.size();
    std::vector<int> x(nv, 0);
    std::uint8_t mask = 0;
    const std::uint64_t total = 1ULL << (2 * nv);
    for (std::uint64_t code = 0; code < total; ++code) {
        for (std::size_t i = 0; i < nv; ++i)
            x[i] = static_cast<int>((code >> (2 * i)) & 3);
        int value = 0;
        bool plane_odd = false, unit_odd = false;
        for (std::size_t i = 0; i < nv;) {
            const JordanBlock& blk = blocks[vars[i].block];
            int bv;
            if (blk.dim == 1) {
                bv = blk.unit * x[i] * x[i];
                if (blk.scale == 0 && (x[i] & 1))
                    unit_odd = true;
                i += 1;
            } else {
                int u = x[i], w = x[i + 1];
                bv = blk.anisotropic ? u * u + u * w + w * w : u * w;
                if (blk.scale == 0 && ((u | w) & 1))
                    plane_odd = true;
                i += 2;
            }
            value += bv << blk.scale;
        }
        value &= 7;
        if (plane_odd)
            mask |= (value & 1) ? 0xAA : 0x55;
        else if (unit_odd)
            mask |= static_cast<std::uint8_t>(1u << value);
    }
    return mask;
}

} // namespace

LocalForm::LocalForm(const QuadraticForm& f, long p) : p_(p), n_(f.arity()), r_(p == 2 ? 0 : least_nonresidue(p))
{
    Place::prime(p);
    blocks_ = jordan_split(f, p, r_);
    if (p == 2) {
        // Once every scale is 0 or 1 the peel map is an involution.
        int top = 0;
        for (const auto& b : blocks_)
            top = std::max(top, b.scale);
        std::vector<JordanBlock> bl = blocks_;
        for (int s = 0; s <= top + 1; ++s) {
            dyadic_masks_.push_back(dyadic_good_mask(bl));
            for (auto& b : bl)
                b.scale = b.scale == 0 ? 1 : b.scale - 1;
        }
    }
}

bool LocalForm::represents(const Int& t) const
{
    auto [v, u] = valuation(t, p_);
    return represents(v, u);
}

// Either some good-type vector hits t (and lifts by Hensel), or every
// coordinate of the scale-0 part is divisible by p; in that case t/p is
// represented by the form with scale-0 parts raised and the rest lowered.
bool LocalForm::represents(long v, const Int& unit) const
{
    int ucode;
    if (p_ == 2) {
        Int m = unit % 8;
        if (m < 0)
            m += 8;
        ucode = static_cast<int>(m.get_si());
        if ((ucode & 1) == 0)
            throw std::invalid_argument("unit part must be odd");
    } else {
        int l = legendre_symbol(unit, p_);
        if (l == 0)
            throw std::invalid_argument("unit part divisible by p");
        ucode = l;
    }
    if (p_ == 2) {
        const long period_start = static_cast<long>(dyadic_masks_.size()) - 2;
        for (long s = 0; s <= v; ++s) {
            long idx = s <= period_start ? s : period_start + (s - period_start) % 2;
            long w = v - s;
            int target = w >= 3 ? 0 : ((ucode << w) & 7);
            if ((dyadic_masks_[static_cast<std::size_t>(idx)] >> target) & 1)
                return true;
        }
        return false;
    }
    const int minus_one = legendre_symbol(Int(-1), p_);
    std::vector<JordanBlock> bl = blocks_;
    for (;;) {
        std::array<int, 3> units{};
        std::size_t m0 = 0;
        for (const auto& b : bl)
            if (b.scale == 0 && m0 < units.size())
                units[m0++] = b.unit == 1 ? 1 : -1;
        bool good;
        switch (m0) {
        case 0:
            good = false;
            break;
        case 1:
            good = v == 0 && ucode == units[0];
            break;
        case 2:
            good = v == 0 || minus_one * units[0] * units[1] == 1;
            break;
        default:
            good = true;
        }
        if (good)
            return true;
        if (v == 0)
            return false;
        --v;
        for (auto& b : bl)
            b.scale = b.scale == 0 ? 1 : b.scale - 1;
    }
}

bool zp_represents(const QuadraticForm& f, long p, const Int& t)
{
    if (t == 0)
        throw std::invalid_argument("zero is excluded from representation sets");
    return LocalForm(f, p).represents(t);
}

std::string to_string(const RepresentationTable& t)
{
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < t.v.size(); ++i) {
        if (i)
            out << ",";
        if (t.v[i] == kInfinity)
            out << "inf";
        else
            out << t.v[i];
    }
    out << ")";
    return out.str();
}

bool qp_represents_class(const QuadraticForm& f, long p, int s)
{
    const Place place = Place::prime(p);
    SquareClassSystem sys(place);
    if (s < 0 || static_cast<std::size_t>(s) >= sys.size())
        throw std::invalid_argument("square class index out of range");
    auto d = diagonalize_over_Q(f);
    const int n = f.arity();
    if (n == 1)
        return square_class_of(d[0], place).index == s;
    if (n == 2) {
        std::vector<Rational> t = {d[0], d[1], Rational(-sys.reps[static_cast<std::size_t>(s)])};
        return is_isotropic_local(std::span<const Rational>(t), place);
    }
    if (n == 3) {
        if (is_isotropic_local(std::span<const Rational>(d), place))
            return true;
        return square_class_of(-discriminant(f), place).index != s;
    }
    return true;
}

long scan_ceiling(const QuadraticForm& f, long p)
{
    return vp(Int(Int(4) * f.det_doubled()), p) + 2L * f.arity() + 4;
}

RepresentationTable representation_table(const QuadraticForm& f, long p)
{
    LocalForm lf(f, p);
    SquareClassSystem sys(Place::prime(p));
    RepresentationTable table{p, sys.reps, std::vector<long>(sys.size(), kInfinity)};
    const long ceiling = scan_ceiling(f, p);
    for (std::size_t s = 0; s < sys.size(); ++s) {
        if (!qp_represents_class(f, p, static_cast<int>(s)))
            continue;
        auto [v0, unit] = valuation(Int(sys.reps[s]), p);
        long i = 0;
        for (; i <= ceiling; ++i)
            if (lf.represents(v0 + 2 * i, unit)) {
                table.v[s] = v0 + 2 * i;
                break;
            }
        if (i > ceiling)
            throw std::logic_error("scan ceiling exceeded for class " + std::to_string(sys.reps[s]) + " at p = " +
                                   std::to_string(p) + " for " + f.to_string());
    }
    return table;
}

Rational local_density(const RepresentationTable& table)
{
    const long p = table.p;
    const int nu = p == 2 ? 4 : 2;
    Rational sum = 0;
    for (long v : table.v)
        if (v != kInfinity)
            sum += rpow(p, 1 - v) / Rational(nu * (p + 1));
    return sum;
}

Rational local_density(const QuadraticForm& f, long p) { return local_density(representation_table(f, p)); }

Rational truncated_local_density(const RepresentationTable& table, long K)
{
    const long p = table.p;
    const int nu = p == 2 ? 4 : 2;
    Rational sum = 0;
    for (long vs : table.v) {
        if (vs == kInfinity)
            continue;
        for (long v = vs; v < K; v += 2)
            sum += Rational(p - 1) / (Rational(nu) * rpow(p, v + 1));
    }
    return sum;
}

namespace {

// Residue of a p-integral rational modulo M = p^m.
std::uint64_t residue(const Rational& q, std::uint64_t M)
{
    Int Mz(static_cast<unsigned long>(M));
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), Mz.get_mpz_t()) == 0)
        throw std::logic_error("denominator not a unit");
    Int r = (q.get_num() * inv) % Mz;
    if (r < 0)
        r += Mz;
    return r.get_ui();
}

struct Bits {
    explicit Bits(std::uint64_t n) : size(n), w((n + 63) / 64, 0) {}
    void set(std::uint64_t i) { w[i >> 6] |= 1ULL << (i & 63); }
    bool test(std::uint64_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    std::uint64_t count() const
    {
        std::uint64_t c = 0;
        for (auto x : w)
            c += static_cast<std::uint64_t>(std::popcount(x));
        return c;
    }
    std::uint64_t size;
    std::vector<std::uint64_t> w;
};

// 64 bits of src starting at index i, wrapping modulo src.size.
std::uint64_t window(const Bits& src, std::uint64_t i)
{
    const std::uint64_t N = src.size;
    if (N < 64 || i + 64 > N) {
        std::uint64_t out = 0;
        for (int k = 0; k < 64; ++k) {
            std::uint64_t j = (i + static_cast<std::uint64_t>(k)) % N;
            out |= static_cast<std::uint64_t>(src.test(j)) << k;
        }
        return out;
    }
    const std::uint64_t q = i >> 6, r = i & 63;
    if (r == 0)
        return src.w[q];
    return (src.w[q] >> r) | (src.w[q + 1] << (64 - r));
}

// dst[j] |= src[j - s mod N], word at a time.
void or_rotated(Bits& dst, const Bits& src, std::uint64_t s)
{
    const std::uint64_t N = src.size;
    for (std::size_t k = 0; k < dst.w.size(); ++k) {
        std::uint64_t j = static_cast<std::uint64_t>(k) << 6;
        dst.w[k] |= window(src, (j + N - s % N) % N);
    }
    if (N & 63)
        dst.w.back() &= (1ULL << (N & 63)) - 1;
}

// Orbits of Z/p^m under multiplication by unit squares: x = p^v w is
// labelled by v and the class of w (Legendre symbol, or w mod min(8, 2^(m-v))).
struct Orbits {
    Orbits(long p, long m, std::uint64_t M) : id(M)
    {
        const std::uint64_t P = static_cast<std::uint64_t>(p);
        std::vector<std::uint8_t> qr;
        if (p != 2) {
            qr.assign(P, 0);
            for (std::uint64_t x = 1; x < P; ++x)
                qr[x * x % P] = 1;
        }
        id[0] = 0;
        for (std::uint64_t x = 1; x < M; ++x) {
            std::uint64_t w = x;
            long v = 0;
            while (w % P == 0) {
                w /= P;
                ++v;
            }
            int cls;
            if (p == 2) {
                const long room = m - v;
                cls = static_cast<int>(w % (room >= 3 ? 8 : (1u << room))) >> 1;
            } else {
                cls = qr[w % P] ? 0 : 1;
            }
            id[x] = static_cast<std::uint8_t>(1 + v * 4 + cls);
        }
        count = 1 + static_cast<std::size_t>(m) * 4;
    }

    // Smallest set of whole orbits containing t.
    Bits closure(const Bits& t) const
    {
        std::vector<char> present(count, 0);
        for (std::size_t k = 0; k < t.w.size(); ++k)
            for (std::uint64_t word = t.w[k]; word; word &= word - 1)
                present[id[(k << 6) + static_cast<std::uint64_t>(std::countr_zero(word))]] = 1;
        Bits out(t.size);
        for (std::uint64_t x = 0; x < t.size; ++x)
            if (present[id[x]])
                out.set(x);
        return out;
    }

    // One element per orbit met by t.
    std::vector<std::uint64_t> representatives(const Bits& t) const
    {
        std::vector<char> seen(count, 0);
        std::vector<std::uint64_t> reps;
        for (std::size_t k = 0; k < t.w.size(); ++k)
            for (std::uint64_t word = t.w[k]; word; word &= word - 1) {
                std::uint64_t x = (k << 6) + static_cast<std::uint64_t>(std::countr_zero(word));
                if (!seen[id[x]]) {
                    seen[id[x]] = 1;
                    reps.push_back(x);
                }
            }
        return reps;
    }

    std::vector<std::uint8_t> id;
    std::size_t count;
};

// a + b for sets closed under unit squares: the closure of the union of
// shifts of b by one representative per orbit of a.
Bits sumset(const Bits& a, const Bits& b, const Orbits& orbits)
{
    Bits out(a.size);
    for (std::uint64_t x : orbits.representatives(a))
        or_rotated(out, b, x);
    return orbits.closure(out);
}

} // namespace

// Independent of the Jordan machinery above: complete squares on the
// coefficient polynomial over Z_(p), reduce the split pieces mod p^m and
// take the sumset of their exhaustively enumerated images.
Rational local_density_bruteforce(const QuadraticForm& f, long p, long K, long m)
{
    if (m < K + 2)
        throw std::invalid_argument("modulus exponent must be at least K + 2");
    Int Mz = ipow(p, static_cast<unsigned long>(m));
    if (Mz > Int(1UL << 26))
        throw DomainError("modulus p^m too large for exhaustive image");
    const std::uint64_t M = Mz.get_ui();
    const int n = f.arity();

    // c(i,i): coefficient of x_i^2, c(i,j), i<j: coefficient of x_i x_j.
    Matrix<Rational> c(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            c(i, j) = Rational(static_cast<long>(f.coeff(i, j)));
    auto C = [&](int i, int j) -> Rational& { return i <= j ? c(i, j) : c(j, i); };

    struct Piece {
        std::vector<Rational> q; // {a} or {a, b, cc}
    };
    std::vector<Piece> pieces;
    std::vector<int> live;
    for (int i = 0; i < n; ++i)
        live.push_back(i);
    auto v_of = [&](const Rational& x) { return x == 0 ? LONG_MAX : vp(x, p); };

    while (!live.empty()) {
        long off = LONG_MAX;
        int oi = -1, oj = -1;
        for (std::size_t a = 0; a < live.size(); ++a)
            for (std::size_t b = a + 1; b < live.size(); ++b) {
                long v = v_of(C(live[a], live[b]));
                if (v < off) {
                    off = v;
                    oi = live[a];
                    oj = live[b];
                }
            }
        int piv = -1;
        for (int i : live) {
            long v = v_of(C(i, i));
            bool ok = p == 2 ? v < off : v <= off;
            if (v != LONG_MAX && ok && (piv < 0 || v < v_of(C(piv, piv))))
                piv = i;
        }
        if (piv < 0 && p != 2) {
            // Diagonal too deep: substitute x_oi -> x_oi + x_oj.
            for (int t : live) {
                if (t == oi)
                    continue;
                if (t != oj)
                    C(oi, t) += C(oj, t);
            }
            Rational old_ii = C(oi, oi);
            C(oi, oi) = old_ii + C(oi, oj) + C(oj, oj);
            C(oi, oj) += 2 * C(oj, oj);
            piv = oi;
        }
        if (piv >= 0) {
            const Rational a = C(piv, piv);
            pieces.push_back({{a}});
            std::vector<int> rest;
            for (int t : live)
                if (t != piv)
                    rest.push_back(t);
            // f = a y^2 + f' - L^2/(4a), L = sum_j c_{piv,j} x_j.
            for (std::size_t s = 0; s < rest.size(); ++s)
                for (std::size_t t = s; t < rest.size(); ++t) {
                    int i = rest[s], j = rest[t];
                    if (i == j)
                        C(i, i) -= C(piv, i) * C(piv, i) / (4 * a);
                    else
                        C(i, j) -= C(piv, i) * C(piv, j) / (2 * a);
                }
            live = rest;
            continue;
        }
        // Dyadic plane on (oi, oj).
        const Rational a = C(oi, oi), b = C(oi, oj), cc = C(oj, oj);
        pieces.push_back({{a, b, cc}});
        // M = [[2a, b], [b, 2cc]]; subtract (1/2) L^T M^{-1} L.
        const Rational D = 4 * a * cc - b * b;
        std::vector<int> rest;
        for (int t : live)
            if (t != oi && t != oj)
                rest.push_back(t);
        auto bil = [&](int k, int l) -> Rational {
            Rational li = C(oi, k), lj = C(oj, k), mi = C(oi, l), mj = C(oj, l);
            // l_k^T M^{-1} l_l with M^{-1} = [[2cc, -b], [-b, 2a]] / D.
            return (li * (2 * cc * mi - b * mj) + lj * (-b * mi + 2 * a * mj)) / D;
        };
        for (std::size_t s = 0; s < rest.size(); ++s)
            for (std::size_t t = s; t < rest.size(); ++t) {
                int i = rest[s], j = rest[t];
                if (i == j)
                    C(i, i) -= bil(i, i) / 2;
                else
                    C(i, j) -= bil(i, j);
            }
        live = rest;
    }

    // Each piece's image is closed under unit squares, so it is the closure
    // of the values at vectors with a unit coordinate scaled to 1, together
    // with p^2 times the image.
    const Orbits orbits(p, m, M);
    const std::uint64_t P = static_cast<std::uint64_t>(p);
    auto mulmod = [M](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % M);
    };
    Bits acc(M);
    acc.set(0);
    for (const auto& pc : pieces) {
        Bits img(M);
        img.set(0);
        if (pc.q.size() == 1) {
            const std::uint64_t a = residue(pc.q[0], M);
            for (std::uint64_t s = 1; s < M; s *= P * P)
                img.set(mulmod(a, s));
        } else {
            const std::uint64_t a = residue(pc.q[0], M), b = residue(pc.q[1], M), cc = residue(pc.q[2], M);
            for (std::uint64_t s = 1; s < M; s *= P * P) {
                // s * f(1, y) and s * f(x, 1) only depend on y, x mod M / s.
                const std::uint64_t R = M / s;
                for (std::uint64_t t = 0; t < R; ++t) {
                    img.set(mulmod(s, (a + mulmod(b, t) + mulmod(cc, mulmod(t, t))) % M));
                    img.set(mulmod(s, (mulmod(a, mulmod(t, t)) + mulmod(b, t) + cc) % M));
                }
            }
        }
        acc = sumset(acc, orbits.closure(img), orbits);
    }
    Int pK = ipow(p, static_cast<unsigned long>(K));
    const std::uint64_t PK = pK.get_ui();
    std::uint64_t hits = 0;
    for (std::uint64_t a = 0; a < M; ++a)
        if (acc.test(a) && a % PK != 0)
            ++hits;
    return make_rational(Int(static_cast<unsigned long>(hits)), Mz);
}

bool is_locally_universal(const QuadraticForm& f, long p) { return local_density(f, p) == 1; }

bool is_adc_local(const RepresentationTable& table)
{
    SquareClassSystem sys(Place::prime(table.p));
    for (std::size_t s = 0; s < table.v.size(); ++s)
        if (table.finite(s) && table.v[s] != sys.rep_valuation(s))
            return false;
    return true;
}

bool is_adc_local(const QuadraticForm& f, long p) { return is_adc_local(representation_table(f, p)); }

// ---------------------------------------------------------------------------
// Nondyadic case tables.

namespace {

// Jordan invariants over Z_p, p odd: scale -> (dimension, determinant is a nonsquare).
using OddInvariant = std::map<int, std::pair<int, int>>;

struct Coef {
    int sign;   // +1 / -1
    int r;      // 0: unit 1, 1: unit r
    int expo;
};

OddInvariant invariant_of(const std::vector<Coef>& coefs, long p)
{
    const bool minus_one_nonsquare = p % 4 == 3;
    OddInvariant inv;
    for (const auto& c : coefs) {
        int ns = c.r ^ ((c.sign < 0 && minus_one_nonsquare) ? 1 : 0);
        auto& e = inv[c.expo];
        e.first += 1;
        e.second ^= ns;
    }
    return inv;
}

struct CaseInstance {
    std::string name;
    std::vector<Coef> coefs;
    std::array<long, 4> table;
    int b, c, d;
};

constexpr long INF = kInfinity;

// Every listed case with parameters up to `top`.
std::vector<CaseInstance> case_instances(int top)
{
    std::vector<CaseInstance> out;
    auto e = [](long x) { return x; };
    for (int b = 0; b <= top; ++b) {
        out.push_back({"2.1", {{1, 0, 0}, {-1, 0, 2 * b}}, {0, e(2 * b), 2 * b + 1, 2 * b + 1}, b, 0, 0});
        out.push_back({"2.2", {{1, 0, 0}, {-1, 1, 2 * b}}, {0, 2 * b, INF, INF}, b, 0, 0});
        out.push_back({"2.3", {{1, 0, 0}, {1, 0, 2 * b + 1}}, {0, INF, 2 * b + 1, INF}, b, 0, 0});
        out.push_back({"2.4", {{1, 0, 0}, {1, 1, 2 * b + 1}}, {0, INF, INF, 2 * b + 1}, b, 0, 0});
        for (int vc = 2 * b; vc <= 2 * top + 1; ++vc)
            for (int rc : {0, 1})
                out.push_back({"3.1", {{1, 0, 0}, {-1, 0, 2 * b}, {1, rc, vc}}, {0, 2 * b, 2 * b + 1, 2 * b + 1}, b, vc, rc});
        for (int c = 0; c <= top; ++c) {
            if (b <= c) {
                out.push_back({"3.2.1", {{1, 0, 0}, {-1, 1, 2 * b}, {-1, 0, 2 * c}}, {0, 2 * b, 2 * c + 1, 2 * c + 1}, b, c, 0});
                out.push_back({"3.2.2", {{1, 0, 0}, {-1, 1, 2 * b}, {-1, 1, 2 * c}}, {0, 2 * b, 2 * c + 1, 2 * c + 1}, b, c, 0});
                out.push_back({"3.2.3", {{1, 0, 0}, {-1, 1, 2 * b}, {1, 0, 2 * c + 1}}, {0, 2 * b, 2 * c + 1, INF}, b, c, 0});
                out.push_back({"3.2.4", {{1, 0, 0}, {-1, 1, 2 * b}, {1, 1, 2 * c + 1}}, {0, 2 * b, INF, 2 * c + 1}, b, c, 0});
                out.push_back({"3.3.2", {{1, 0, 0}, {1, 0, 2 * b + 1}, {-1, 0, 2 * c + 1}}, {0, 2 * c + 2, 2 * b + 1, 2 * c + 1}, b, c, 0});
                out.push_back({"3.3.4", {{1, 0, 0}, {1, 0, 2 * b + 1}, {-1, 1, 2 * c + 1}}, {0, INF, 2 * b + 1, 2 * c + 1}, b, c, 0});
                out.push_back({"3.4.2", {{1, 0, 0}, {1, 1, 2 * b + 1}, {-1, 1, 2 * c + 1}}, {0, 2 * c + 2, 2 * c + 1, 2 * b + 1}, b, c, 0});
                out.push_back({"3.4.4", {{1, 0, 0}, {1, 1, 2 * b + 1}, {-1, 0, 2 * c + 1}}, {0, INF, 2 * c + 1, 2 * b + 1}, b, c, 0});
            }
            if (b < c) {
                out.push_back({"3.3.1", {{1, 0, 0}, {1, 0, 2 * b + 1}, {-1, 0, 2 * c}}, {0, 2 * c, 2 * b + 1, 2 * c + 1}, b, c, 0});
                out.push_back({"3.3.3", {{1, 0, 0}, {1, 0, 2 * b + 1}, {-1, 1, 2 * c}}, {0, 2 * c, 2 * b + 1, INF}, b, c, 0});
                out.push_back({"3.4.1", {{1, 0, 0}, {1, 1, 2 * b + 1}, {-1, 0, 2 * c}}, {0, 2 * c, 2 * c + 1, 2 * b + 1}, b, c, 0});
                out.push_back({"3.4.3", {{1, 0, 0}, {1, 1, 2 * b + 1}, {-1, 1, 2 * c}}, {0, 2 * c, INF, 2 * b + 1}, b, c, 0});
            }
            for (int d = 0; d <= top; ++d) {
                if (d <= c)
                    out.push_back({"4.1",
                                   {{1, 0, 0}, {-1, 1, 2 * b}, {1, 1, 2 * d + 1}, {-1, 0, 2 * c + 1}},
                                   {0, 2 * b, 2 * c + 1, 2 * d + 1},
                                   b,
                                   c,
                                   d});
                if (c <= d)
                    out.push_back({"4.2",
                                   {{1, 0, 0}, {-1, 1, 2 * b}, {1, 0, 2 * c + 1}, {-1, 1, 2 * d + 1}},
                                   {0, 2 * b, 2 * c + 1, 2 * d + 1},
                                   b,
                                   c,
                                   d});
            }
        }
    }
    return out;
}

std::array<long, 4> rescale(const std::array<long, 4>& t, int eps, int k)
{
    auto add = [k](long x) { return x == INF ? INF : x + k; };
    const auto [al, be, ga, de] = t;
    if (eps == 0 && k % 2 == 0)
        return {add(al), add(be), add(ga), add(de)};
    if (eps == 0)
        return {add(ga), add(de), add(al), add(be)};
    if (k % 2 == 0)
        return {add(be), add(al), add(de), add(ga)};
    return {add(de), add(ga), add(be), add(al)};
}

struct FastMatch {
    CaseMatch match;
    std::array<long, 4> table;
};

std::optional<FastMatch> match_case(const QuadraticForm& f, long p)
{
    if (p == 2)
        throw std::invalid_argument("case tables are nondyadic");
    if (f.arity() < 2 || f.arity() > 4)
        throw std::invalid_argument("case tables cover arity 2..4");
    LocalForm lf(f, p);
    const auto& blocks = lf.blocks();
    const int k0 = blocks.front().scale;
    int top_scale = 0;
    std::vector<int> low_units;
    for (const auto& b : blocks) {
        top_scale = std::max(top_scale, b.scale - k0);
        if (b.scale == k0)
            low_units.push_back(b.unit == 1 ? 0 : 1);
    }
    std::vector<int> eps_choices;
    if (low_units.size() >= 2)
        eps_choices = {0, 1};
    else
        eps_choices = {low_units[0]};

    const auto instances = case_instances(top_scale / 2 + 1);
    for (int eps : eps_choices) {
        OddInvariant target;
        for (const auto& b : blocks) {
            auto& e = target[b.scale - k0];
            e.first += 1;
            e.second ^= (b.unit == 1 ? 0 : 1) ^ eps;
        }
        for (const auto& inst : instances) {
            if (inst.coefs.size() != static_cast<std::size_t>(f.arity()))
                continue;
            if (invariant_of(inst.coefs, p) == target)
                return FastMatch{{inst.name, inst.b, inst.c, inst.d, eps, k0}, rescale(inst.table, eps, k0)};
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<CatalogEntry> nondyadic_case_catalog(long p, int top)
{
    if (p == 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("case catalog needs an odd prime");
    const long r = least_nonresidue(p);
    SquareClassSystem sys(Place::prime(p));
    std::vector<CatalogEntry> out;
    for (const auto& inst : case_instances(top)) {
        std::vector<std::int64_t> diag;
        for (const auto& c : inst.coefs)
            diag.push_back(c.sign * (c.r ? r : 1) * to_int64(ipow(p, static_cast<unsigned long>(c.expo))));
        out.push_back({inst.name, inst.b, inst.c, inst.d, diagonal_form(diag),
                       RepresentationTable{p, sys.reps, std::vector<long>(inst.table.begin(), inst.table.end())}});
    }
    return out;
}

RepresentationTable rescaled_table(const RepresentationTable& t, int eps, int k)
{
    if (t.v.size() != 4)
        throw std::invalid_argument("rescaling applies to nondyadic tables");
    auto v = rescale({t.v[0], t.v[1], t.v[2], t.v[3]}, eps, k);
    return {t.p, t.reps, std::vector<long>(v.begin(), v.end())};
}

std::optional<CaseMatch> nondyadic_case_of(const QuadraticForm& f, long p)
{
    auto m = match_case(f, p);
    if (!m)
        return std::nullopt;
    return m->match;
}

RepresentationTable nondyadic_table_fastpath(const QuadraticForm& f, long p)
{
    SquareClassSystem sys(Place::prime(p));
    RepresentationTable out{p, sys.reps, std::vector<long>(4, kInfinity)};
    if (f.arity() == 1) {
        SquareClass c = square_class_of(Int(static_cast<long>(f.coeff(0, 0))), p);
        out.v[static_cast<std::size_t>(c.index)] = c.v;
        return out;
    }
    auto m = match_case(f, p);
    if (!m)
        throw DomainError("unmatched case for " + f.to_string() + " at p = " + std::to_string(p));
    out.v.assign(m->table.begin(), m->table.end());
    return out;
}

} // namespace qfd
