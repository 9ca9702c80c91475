#pragma once

#include "qfd/local.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qfd {

enum class DensityCase { UnaryZero, AnisotropicBinaryZero, Product };
std::string to_string(DensityCase c);

struct GlobalDensityReport {
    Rational density;
    std::map<long, Rational> factors; // primes with delta_p != 1 only
    DensityCase case_tag;
};

// {2} and the odd primes dividing det(2A). Throws DomainError when no finite
// support exists (unary, anisotropic binary).
std::vector<long> support_primes(const QuadraticForm& f);

GlobalDensityReport density(const QuadraticForm& f);

// Closed-form product for primitive isotropic binaries.
Rational density_isotropic_binary_closed_form(const QuadraticForm& f);

// Real sign check plus Z_p-representation at every prime where f can fail to
// be universal.
bool locally_represented(const QuadraticForm& f, const Int& m);

// Truncated local product over the support.
Rational delta_loc_truncated(const QuadraticForm& f, long K);

// Union of residue classes mod M = prod_{p in S} p^(K+2) that are locally
// represented with v_p < K at each p in S.
class ResidueSieve {
public:
    ResidueSieve(const QuadraticForm& f, long K);

    long cutoff() const { return K_; }
    const Int& modulus() const { return modulus_; }
    const std::vector<long>& primes() const { return primes_; }
    // Number of residue classes mod M in the sieve.
    Int class_count() const;
    Rational density() const;
    bool contains(const Int& a) const;
    // Explicit sorted class list, kept only when M <= 10^8.
    bool materialized() const { return modulus_ <= kMaterializeLimit; }
    const std::vector<std::uint64_t>& classes() const { return classes_; }

    static constexpr unsigned long kMaterializeLimit = 100'000'000;

private:
    struct PrimePart {
        long p;
        std::uint64_t modulus; // p^(K+2)
        std::vector<bool> hit; // indexed by residue
        std::uint64_t count;
    };

    long K_;
    Int modulus_;
    std::vector<long> primes_;
    std::vector<PrimePart> parts_;
    std::vector<std::uint64_t> classes_;
};

struct TheoremCheck {
    std::string name;
    bool applicable;
    bool holds;
    std::string detail;
};

struct TheoremReport {
    Rational density;
    std::vector<TheoremCheck> checks;
    bool all_hold() const;
};

TheoremReport theorem_checks(const QuadraticForm& f);

// Places (0 = real) at which a ternary is anisotropic.
std::vector<long> anisotropic_places(const QuadraticForm& f);

} // namespace qfd
