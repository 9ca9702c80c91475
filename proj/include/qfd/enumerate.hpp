#pragma once

#include "qfd/global.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qfd {

enum class EnumerationMethod { LatticeWalk, Divisor, LocalProxy };
std::string to_string(EnumerationMethod m);

// Membership over [1, X] (one-sided, definite forms) or [-X, X] \ {0}.
class RepresentedSet {
public:
    RepresentedSet(std::uint64_t X, bool two_sided, int sign, EnumerationMethod method);

    std::uint64_t limit() const { return X_; }
    bool two_sided() const { return two_sided_; }
    // +1: values in [1, X]; -1: values in [-X, -1]. Unused when two-sided.
    int sign() const { return sign_; }
    EnumerationMethod method() const { return method_; }
    // Local-proxy sets are supersets of the true represented set.
    bool is_proxy() const { return method_ == EnumerationMethod::LocalProxy; }

    bool contains(std::int64_t m) const;
    void insert(std::int64_t m);
    std::uint64_t count() const;
    std::vector<std::int64_t> members() const;

    // Raw layout: bit j is the integer j (one-sided, sign applied) or j - X.
    std::vector<std::uint64_t>& words() { return bits_; }
    const std::vector<std::uint64_t>& words() const { return bits_; }
    std::uint64_t bit_count() const { return nbits_; }

private:
    std::uint64_t index_of(std::int64_t m) const;

    std::uint64_t X_;
    bool two_sided_;
    int sign_;
    EnumerationMethod method_;
    std::uint64_t nbits_;
    std::vector<std::uint64_t> bits_;
};

// Integer points z with (z - c)^T Q (z - c) <= bound for positive definite Q
// (Fincke-Pohst). Bounds are computed in long double with slack, so callers
// get a superset and must check exact values themselves.
void for_each_ellipsoid_point(const std::vector<std::vector<long double>>& Q, const std::vector<long double>& center,
                              long double bound, const std::function<void(const std::vector<std::int64_t>&)>& visit);

// D_f intersected with [1, X] (or [-X, -1] for negative definite forms).
RepresentedSet represented_set_definite(const QuadraticForm& f, std::uint64_t X);
RepresentedSet represented_set_positive(const QuadraticForm& f, std::uint64_t X);

// Integer vector with f(v) = m for a definite form, if one exists.
std::optional<std::vector<std::int64_t>> find_representation(const QuadraticForm& f, std::int64_t m);

// Divisor criterion for isotropic binaries; on success returns (x, y) in the
// original variables with f(x, y) = m.
std::optional<std::pair<Int, Int>> isotropic_binary_witness(const QuadraticForm& f, const Int& m);
bool represents_isotropic_binary(const QuadraticForm& f, const Int& m);
RepresentedSet represented_set_isotropic_binary(const QuadraticForm& f, std::uint64_t X);

// Locally represented integers in range, via cached local forms.
class LocalMembership {
public:
    explicit LocalMembership(const QuadraticForm& f);
    bool operator()(std::int64_t m) const;

private:
    QuadraticForm f_;
    int sign_; // +1 / -1 for definite forms, 0 otherwise
    bool unary_;
    bool finite_support_;
    std::vector<LocalForm> locals_;
};

RepresentedSet locally_represented_set(const QuadraticForm& f, std::uint64_t X);

// Dispatches on the form class; throws DomainError for indefinite ternaries
// and anisotropic indefinite binaries.
RepresentedSet represented_set(const QuadraticForm& f, std::uint64_t X);

struct ExceptionSet {
    std::uint64_t X;
    std::vector<std::int64_t> members;
};

ExceptionSet exceptional_set(const QuadraticForm& f, std::uint64_t X);

Rational empirical_density(const RepresentedSet& s);
Rational empirical_density(const QuadraticForm& f, std::uint64_t X);

// Bitmap file: "QFD1", X as 8-byte little-endian, then 2X+1 bits where bit
// j stands for the integer j - X (least significant bit first in each byte).
void write_bitmap(std::ostream& out, const RepresentedSet& s);

struct Bitmap {
    std::uint64_t X;
    std::vector<std::int64_t> members;
};
Bitmap read_bitmap(std::istream& in);

// Worker count from QFD_THREADS (default: hardware concurrency).
unsigned worker_count();

} // namespace qfd
