#pragma once

#include "qfd/form.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfd {

// One orthogonal component of a Jordan splitting over Z_p.
//  dim 1: unit * p^scale * t^2; `unit` is the residue mod 8 (p = 2) or
//         1 / the least nonresidue r (odd p).
//  dim 2 (p = 2 only): p^scale * (t1 t2) or p^scale * (t1^2 + t1 t2 + t2^2).
struct JordanBlock {
    int scale;
    int dim;
    int unit;        // dim 1 only
    bool anisotropic; // dim 2 only: true for t1^2 + t1 t2 + t2^2
    friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

// f over Z_p up to isometry.
class LocalForm {
public:
    LocalForm(const QuadraticForm& f, long p);

    long p() const { return p_; }
    int arity() const { return n_; }
    const std::vector<JordanBlock>& blocks() const { return blocks_; }

    // Does f represent t over Z_p? t = p^v * unit.
    bool represents(const Int& t) const;
    bool represents(long v, const Int& unit) const;

private:
    long p_;
    int n_;
    long r_; // least nonresidue (odd p)
    std::vector<JordanBlock> blocks_;
    // p = 2: residues mod 8 hit by good vectors after s peels; eventually
    // 2-periodic.
    std::vector<std::uint8_t> dyadic_masks_;
};

bool zp_represents(const QuadraticForm& f, long p, const Int& t);

constexpr long kInfinity = -1;

struct RepresentationTable {
    long p;
    std::vector<long> reps;
    // Minimal represented valuation per class; kInfinity when unrepresented.
    std::vector<long> v;

    bool finite(std::size_t s) const { return v[s] != kInfinity; }
    friend bool operator==(const RepresentationTable&, const RepresentationTable&) = default;
};

std::string to_string(const RepresentationTable& t);

bool qp_represents_class(const QuadraticForm& f, long p, int s);
// Scan ceiling on the number of p^2 steps per class.
long scan_ceiling(const QuadraticForm& f, long p);
RepresentationTable representation_table(const QuadraticForm& f, long p);

Rational local_density(const RepresentationTable& table);
Rational local_density(const QuadraticForm& f, long p);
Rational truncated_local_density(const RepresentationTable& table, long K);

// Measure of residues a mod p^m with v_p(a) < K hit by f mod p^m.
Rational local_density_bruteforce(const QuadraticForm& f, long p, long K, long m);

// Case tables for nondyadic primes, n <= 4; throws DomainError("unmatched case")
// when the form is not isometric to a scaled instance of a listed case.
RepresentationTable nondyadic_table_fastpath(const QuadraticForm& f, long p);

struct CaseMatch {
    std::string name; // e.g. "3.2.3"
    int b, c, d;
    int scale_eps, scale_k;
};
std::optional<CaseMatch> nondyadic_case_of(const QuadraticForm& f, long p);

// The listed cases as diagonal forms over Z (units 1 and the least
// nonresidue r), parameters up to `top`, with their tabulated tables.
struct CatalogEntry {
    std::string name;
    int b, c, d;
    QuadraticForm form;
    RepresentationTable table;
};
std::vector<CatalogEntry> nondyadic_case_catalog(long p, int top);

// Table of (r^eps p^k) f given the table of f.
RepresentationTable rescaled_table(const RepresentationTable& t, int eps, int k);

bool is_locally_universal(const QuadraticForm& f, long p);
bool is_adc_local(const RepresentationTable& table);
bool is_adc_local(const QuadraticForm& f, long p);

} // namespace qfd
