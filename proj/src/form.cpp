#include "qfd/form.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qfd {

Int det(Matrix<Int> m)
{
    // Bareiss fraction-free elimination.
    const int n = m.rows();
    if (n != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0)
        return 1;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(m(k, j), m(swap, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

QuadraticForm::QuadraticForm(int n, std::vector<std::int64_t> coeffs) : n_(n), coeffs_(std::move(coeffs))
{
    if (n < 1)
        throw std::invalid_argument("arity must be at least 1");
    if (coeffs_.size() != static_cast<std::size_t>(n * (n + 1) / 2))
        throw std::invalid_argument("expected " + std::to_string(n * (n + 1) / 2) + " coefficients for arity " +
                                    std::to_string(n) + ", got " + std::to_string(coeffs_.size()));
    det_doubled_ = qfd::det(doubled_gram());
    if (det_doubled_ == 0)
        throw std::invalid_argument("degenerate form");
    det_ = make_rational(det_doubled_, ipow(2, static_cast<unsigned long>(n)));
}

std::size_t QuadraticForm::index(int i, int j) const
{
    if (i > j)
        std::swap(i, j);
    // Rows before i hold n + (n-1) + ... + (n-i+1) entries.
    return static_cast<std::size_t>(i * n_ - i * (i - 1) / 2 + (j - i));
}

std::int64_t QuadraticForm::coeff(int i, int j) const { return coeffs_[index(i, j)]; }

Rational QuadraticForm::gram(int i, int j) const
{
    if (i == j)
        return Rational(static_cast<long>(coeff(i, i)));
    return make_rational(static_cast<long>(coeff(i, j)), 2);
}

Matrix<Rational> QuadraticForm::gram() const
{
    Matrix<Rational> a(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            a(i, j) = gram(i, j);
    return a;
}

Matrix<Int> QuadraticForm::doubled_gram() const
{
    Matrix<Int> h(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            h(i, j) = Int(static_cast<long>(i == j ? 2 * coeff(i, i) : coeff(i, j)));
    return h;
}

Int QuadraticForm::evaluate(std::span<const Int> x) const
{
    if (x.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("evaluation vector has wrong length");
    Int s = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j)
            s += Int(static_cast<long>(coeff(i, j))) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    return s;
}

Int QuadraticForm::evaluate(std::span<const std::int64_t> x) const
{
    std::vector<Int> v(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = Int(static_cast<long>(x[i]));
    return evaluate(std::span<const Int>(v));
}

namespace {

std::string var_name(int i, int n)
{
    if (n <= 4)
        return std::string(1, "xyzw"[i]);
    return "x" + std::to_string(i + 1);
}

} // namespace

std::string QuadraticForm::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            std::int64_t c = coeff(i, j);
            if (c == 0)
                continue;
            std::int64_t mag = c < 0 ? -c : c;
            if (first)
                out << (c < 0 ? "-" : "");
            else
                out << (c < 0 ? " - " : " + ");
            first = false;
            if (mag != 1)
                out << mag << "*";
            if (i == j)
                out << var_name(i, n_) << "^2";
            else
                out << var_name(i, n_) << "*" << var_name(j, n_);
        }
    return first ? "0" : out.str();
}

QuadraticForm make_form(int n, std::vector<std::int64_t> coeffs) { return QuadraticForm(n, std::move(coeffs)); }

QuadraticForm diagonal_form(std::span<const std::int64_t> diag)
{
    const int n = static_cast<int>(diag.size());
    std::vector<std::int64_t> c;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            c.push_back(i == j ? diag[static_cast<std::size_t>(i)] : 0);
    return QuadraticForm(n, std::move(c));
}

namespace {

class FormParser {
public:
    explicit FormParser(std::string_view text) : s_(text) {}

    QuadraticForm parse()
    {
        skip();
        if (pos_ == s_.size())
            fail("empty form");
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            term(sign);
            first = false;
            skip();
        }
        int n = 0;
        for (auto& [key, c] : terms_)
            n = std::max(n, key.second + 1);
        if (indexed_ && aliased_)
            fail("mixing x1..xn with x,y,z,w");
        std::vector<std::int64_t> coeffs;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                auto it = terms_.find({i, j});
                Int c = it == terms_.end() ? Int(0) : it->second;
                if (!fits_int64(c))
                    fail("coefficient out of range");
                coeffs.push_back(c.get_si());
            }
        try {
            return QuadraticForm(n, std::move(coeffs));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("invalid form: ") + e.what());
        }
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    Int number()
    {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return Int(std::string(s_.substr(start, pos_ - start)));
    }

    int variable()
    {
        skip();
        char c = peek();
        if (c == 'x' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            Int idx = number();
            if (idx < 1 || idx > 64)
                fail("variable index out of range");
            indexed_ = true;
            return static_cast<int>(idx.get_si()) - 1;
        }
        const std::string alias = "xyzw";
        auto k = alias.find(c);
        if (c == '\0' || k == std::string::npos)
            fail("expected a variable");
        ++pos_;
        aliased_ = true;
        return static_cast<int>(k);
    }

    void term(int sign)
    {
        Int coef = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = number();
            skip();
            if (peek() == '*') {
                ++pos_;
                skip();
            }
        }
        int a = variable();
        skip();
        int b;
        if (peek() == '^') {
            ++pos_;
            skip();
            if (number() != 2)
                fail("only squares are allowed");
            b = a;
        } else if (peek() == '*') {
            ++pos_;
            b = variable();
        } else {
            fail("monomial must be quadratic");
        }
        if (a > b)
            std::swap(a, b);
        terms_[{a, b}] += sign * coef;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    bool indexed_ = false, aliased_ = false;
    std::map<std::pair<int, int>, Int> terms_;
};

} // namespace

QuadraticForm parse_form(std::string_view text) { return FormParser(text).parse(); }

QuadraticForm parse_coeffs(std::string_view text)
{
    std::vector<std::int64_t> c;
    std::string tok;
    std::string s(text);
    std::stringstream ss(s);
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }), tok.end());
        Rational q = parse_rational(tok);
        if (q.get_den() != 1 || !fits_int64(q.get_num()))
            throw ParseError("coefficient must be a 64-bit integer: '" + tok + "'");
        c.push_back(q.get_num().get_si());
    }
    int n = 0;
    while (static_cast<std::size_t>(n * (n + 1) / 2) < c.size())
        ++n;
    if (c.empty() || static_cast<std::size_t>(n * (n + 1) / 2) != c.size())
        throw ParseError("coefficient count " + std::to_string(c.size()) + " is not triangular");
    try {
        return QuadraticForm(n, std::move(c));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid form: ") + e.what());
    }
}

QuadraticForm scaled(const QuadraticForm& f, std::int64_t c)
{
    std::vector<std::int64_t> out;
    for (auto v : f.coeffs()) {
        Int p = Int(static_cast<long>(v)) * Int(static_cast<long>(c));
        out.push_back(to_int64(p));
    }
    return QuadraticForm(f.arity(), std::move(out));
}

QuadraticForm transformed(const QuadraticForm& f, const Matrix<Int>& T)
{
    const int n = f.arity();
    if (T.rows() != n || T.cols() != n)
        throw std::invalid_argument("transform has wrong shape");
    Matrix<Int> h = f.doubled_gram();
    auto col = [&](int j) {
        std::vector<Int> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i)] = T(i, j);
        return v;
    };
    auto bilinear = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
        Int s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s += a[static_cast<std::size_t>(i)] * h(i, j) * b[static_cast<std::size_t>(j)];
        return s;
    };
    std::vector<std::int64_t> out;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Int b = bilinear(col(i), col(j));
            if (i == j)
                b /= 2;
            out.push_back(to_int64(b));
        }
    return QuadraticForm(n, std::move(out));
}

QuadraticForm direct_sum(const QuadraticForm& f, const QuadraticForm& g)
{
    const int n = f.arity() + g.arity();
    std::vector<std::int64_t> out;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (i < f.arity() && j < f.arity())
                out.push_back(f.coeff(i, j));
            else if (i >= f.arity() && j >= f.arity())
                out.push_back(g.coeff(i - f.arity(), j - f.arity()));
            else
                out.push_back(0);
        }
    return QuadraticForm(n, std::move(out));
}

Rational discriminant(const QuadraticForm& f) { return f.det(); }

Int binary_delta(const QuadraticForm& f)
{
    if (f.arity() != 2)
        throw std::invalid_argument("Discriminant needs a binary form");
    Int a(static_cast<long>(f.coeff(0, 0))), b(static_cast<long>(f.coeff(0, 1))), c(static_cast<long>(f.coeff(1, 1)));
    return b * b - 4 * a * c;
}

Diagonalization diagonalize_with_basis(const QuadraticForm& f)
{
    const int n = f.arity();
    Matrix<Rational> a = f.gram();
    Matrix<Rational> basis = Matrix<Rational>::identity(n);
    std::vector<Rational> diag;
    // Work on the trailing block [k, n).
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n && piv < 0; ++i)
            if (a(i, i) != 0)
                piv = i;
        if (piv < 0) {
            // Pivot repair: x_i <- x_i + x_j for the first coupled pair.
            int pi = -1, pj = -1;
            for (int i = k; i < n && pi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0)
                throw std::logic_error("degenerate form reached diagonalization");
            for (int t = 0; t < n; ++t)
                a(pi, t) += a(pj, t);
            for (int t = 0; t < n; ++t)
                a(t, pi) += a(t, pj);
            for (int t = 0; t < n; ++t)
                basis(t, pi) += basis(t, pj);
            piv = pi;
        }
        if (piv != k) {
            for (int t = 0; t < n; ++t)
                std::swap(a(piv, t), a(k, t));
            for (int t = 0; t < n; ++t)
                std::swap(a(t, piv), a(t, k));
            for (int t = 0; t < n; ++t)
                std::swap(basis(t, piv), basis(t, k));
        }
        const Rational p = a(k, k);
        for (int i = k + 1; i < n; ++i) {
            Rational m = a(i, k) / p;
            if (m == 0)
                continue;
            // x_i-column minus m times pivot column.
            for (int t = 0; t < n; ++t)
                a(i, t) -= m * a(k, t);
            for (int t = 0; t < n; ++t)
                a(t, i) -= m * a(t, k);
            for (int t = 0; t < n; ++t)
                basis(t, i) -= m * basis(t, k);
        }
        diag.push_back(p);
    }
    return {std::move(diag), std::move(basis)};
}

std::vector<Rational> diagonalize_over_Q(const QuadraticForm& f) { return diagonalize_with_basis(f).diag; }

Signature signature(const QuadraticForm& f)
{
    Signature s{0, 0};
    for (const auto& d : diagonalize_over_Q(f))
        (d > 0 ? s.positive : s.negative) += 1;
    return s;
}

bool is_positive_definite(const QuadraticForm& f) { return signature(f).negative == 0; }
bool is_negative_definite(const QuadraticForm& f) { return signature(f).positive == 0; }
bool is_indefinite(const QuadraticForm& f)
{
    auto s = signature(f);
    return s.positive > 0 && s.negative > 0;
}

Int content(const QuadraticForm& f)
{
    Int g = 0;
    for (auto c : f.coeffs())
        g = gcd(g, Int(static_cast<long>(c)));
    return g;
}

bool is_primitive(const QuadraticForm& f) { return content(f) == 1; }

std::pair<Int, QuadraticForm> primitive_part(const QuadraticForm& f)
{
    Int g = content(f);
    std::vector<std::int64_t> out;
    for (auto c : f.coeffs())
        out.push_back(c / g.get_si());
    return {g, QuadraticForm(f.arity(), std::move(out))};
}

int hasse_invariant(std::span<const Rational> diag, Place place)
{
    int e = 1;
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j)
            e *= hilbert_symbol(diag[i], diag[j], place);
    return e;
}

int hasse_invariant(const QuadraticForm& f, Place place)
{
    auto d = diagonalize_over_Q(f);
    return hasse_invariant(std::span<const Rational>(d), place);
}

namespace {

Rational product(std::span<const Rational> d)
{
    Rational p = 1;
    for (const auto& x : d)
        p *= x;
    return p;
}

} // namespace

int witt_invariant(const QuadraticForm& f, Place place)
{
    auto d = diagonalize_over_Q(f);
    return hasse_invariant(std::span<const Rational>(d), place) * hilbert_symbol(Rational(-1), -product(d), place);
}

bool is_isotropic_local(std::span<const Rational> d, Place place)
{
    const std::size_t n = d.size();
    if (place.is_real()) {
        bool pos = false, neg = false;
        for (const auto& x : d)
            (x > 0 ? pos : neg) = true;
        return pos && neg;
    }
    const Rational disc = product(d);
    switch (n) {
    case 1:
        return false;
    case 2:
        return is_local_square(-disc, place);
    case 3:
        return hasse_invariant(d, place) * hilbert_symbol(Rational(-1), -disc, place) == 1;
    case 4:
        return !(is_local_square(disc, place) && hasse_invariant(d, place) != hilbert_symbol(Rational(-1), Rational(-1), place));
    default:
        return true;
    }
}

bool is_isotropic_local(const QuadraticForm& f, Place place)
{
    auto d = diagonalize_over_Q(f);
    return is_isotropic_local(std::span<const Rational>(d), place);
}

std::vector<long> bad_primes(const QuadraticForm& f)
{
    auto ps = prime_divisors(Int(2) * f.det_doubled());
    return ps;
}

bool is_isotropic_over_Q(const QuadraticForm& f)
{
    const int n = f.arity();
    if (n == 1)
        return false;
    if (n == 2)
        return is_perfect_square(binary_delta(f));
    auto d = diagonalize_over_Q(f);
    std::span<const Rational> ds(d);
    if (!is_isotropic_local(ds, Place::real()))
        return false;
    if (n >= 5)
        return true;
    for (long p : bad_primes(f))
        if (!is_isotropic_local(ds, Place::prime(p)))
            return false;
    return true;
}

ReducedIsotropicBinary gauss_reduce_isotropic_binary(const QuadraticForm& f)
{
    if (f.arity() != 2)
        throw std::invalid_argument("Gauss reduction needs a binary form");
    if (!is_primitive(f))
        throw std::invalid_argument("Gauss reduction needs a primitive form");
    const Int delta = binary_delta(f);
    if (!is_perfect_square(delta))
        throw std::invalid_argument("Gauss reduction needs an isotropic form (square discriminant)");
    const Int B = sqrt(delta);
    const Int a(static_cast<long>(f.coeff(0, 0))), b(static_cast<long>(f.coeff(0, 1))), c(static_cast<long>(f.coeff(1, 1)));

    // Isotropic directions (primitive integer vectors).
    std::vector<std::array<Int, 2>> lines;
    auto add_line = [&](Int x, Int y) {
        Int g = gcd(x, y);
        x /= g;
        y /= g;
        lines.push_back({x, y});
        lines.push_back({-x, -y});
    };
    if (a == 0) {
        add_line(1, 0);
        if (b == 0 && c == 0)
            throw std::logic_error("zero form");
        add_line(c, -b);
    } else {
        add_line(-b + B, 2 * a);
        add_line(-b - B, 2 * a);
    }

    Matrix<Int> h = f.doubled_gram();
    auto fval = [&](const Int& x, const Int& y) -> Int { return a * x * x + b * x * y + c * y * y; };
    bool found = false;
    ReducedIsotropicBinary best{0, B, B == 1, Matrix<Int>(2, 2)};
    for (const auto& v : lines) {
        // w with det[w v] = w0 v1 - w1 v0 = 1.
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), v[1].get_mpz_t(), v[0].get_mpz_t());
        if (g != 1)
            continue;
        Int w0 = s, w1 = -t;
        Int bp = w0 * (h(0, 0) * v[0] + h(0, 1) * v[1]) + w1 * (h(1, 0) * v[0] + h(1, 1) * v[1]);
        if (bp != B)
            continue;
        // Shear w -> w + k v moves A by k*B into [0, B).
        Int A = fval(w0, w1);
        Int k;
        mpz_fdiv_q(k.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
        k = -k;
        w0 += k * v[0];
        w1 += k * v[1];
        A = fval(w0, w1);
        if (!found || A < best.A) {
            found = true;
            best.A = A;
            best.witness(0, 0) = w0;
            best.witness(1, 0) = w1;
            best.witness(0, 1) = v[0];
            best.witness(1, 1) = v[1];
        }
    }
    if (!found)
        throw std::logic_error("Gauss reduction found no positively oriented isotropic line");
    return best;
}

} // namespace qfd
