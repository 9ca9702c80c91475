#pragma once

#include "qfd/arith.hpp"
#include "qfd/numtheory.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qfd {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, const T& fill = T(0)) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

    static Matrix identity(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

// f = sum_{i<=j} c_ij t_i t_j with integer c_ij. Immutable once built.
class QuadraticForm {
public:
    // coeffs in row order c11, c12, ..., c1n, c22, ..., cnn.
    QuadraticForm(int n, std::vector<std::int64_t> coeffs);

    int arity() const { return n_; }
    std::span<const std::int64_t> coeffs() const { return coeffs_; }
    // Coefficient of t_i t_j (0-based, either order).
    std::int64_t coeff(int i, int j) const;

    // Gram matrix A with f(x) = x^T A x.
    Rational gram(int i, int j) const;
    Matrix<Rational> gram() const;
    // Integer matrix 2A (the Hessian of f).
    Matrix<Int> doubled_gram() const;

    const Rational& det() const { return det_; }          // det(A)
    const Int& det_doubled() const { return det_doubled_; } // det(2A)

    Int evaluate(std::span<const Int> x) const;
    Int evaluate(std::span<const std::int64_t> x) const;

    std::string to_string() const;

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b)
    {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::size_t index(int i, int j) const;

    int n_;
    std::vector<std::int64_t> coeffs_;
    Rational det_;
    Int det_doubled_;
};

QuadraticForm make_form(int n, std::vector<std::int64_t> coeffs);
// Diagonal form sum d_i t_i^2.
QuadraticForm diagonal_form(std::span<const std::int64_t> diag);
// Form-expression grammar: monomials c*xi^2 and c*xi*xj joined by + and -.
QuadraticForm parse_form(std::string_view text);
// Comma-separated c_ij list; the arity is inferred from the length.
QuadraticForm parse_coeffs(std::string_view text);

QuadraticForm scaled(const QuadraticForm& f, std::int64_t c);
// The form x -> f(T x) for an integer n x n matrix T.
QuadraticForm transformed(const QuadraticForm& f, const Matrix<Int>& T);
// Orthogonal sum f + g in disjoint variables.
QuadraticForm direct_sum(const QuadraticForm& f, const QuadraticForm& g);

Int det(Matrix<Int> m);

Rational discriminant(const QuadraticForm& f);
Int binary_delta(const QuadraticForm& f);

struct Signature {
    int positive;
    int negative;
    friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature(const QuadraticForm& f);
bool is_positive_definite(const QuadraticForm& f);
bool is_negative_definite(const QuadraticForm& f);
bool is_indefinite(const QuadraticForm& f);

struct Diagonalization {
    std::vector<Rational> diag;
    Matrix<Rational> basis; // columns; basis^T A basis = diag(diag)
};

Diagonalization diagonalize_with_basis(const QuadraticForm& f);
std::vector<Rational> diagonalize_over_Q(const QuadraticForm& f);

Int content(const QuadraticForm& f);
bool is_primitive(const QuadraticForm& f);
std::pair<Int, QuadraticForm> primitive_part(const QuadraticForm& f);

int hasse_invariant(std::span<const Rational> diag, Place place);
int hasse_invariant(const QuadraticForm& f, Place place);
int witt_invariant(const QuadraticForm& f, Place place);

bool is_isotropic_local(const QuadraticForm& f, Place place);
bool is_isotropic_local(std::span<const Rational> diag, Place place);
// Primes at which f can fail to be isotropic or unimodular: 2 and p | det(2A).
std::vector<long> bad_primes(const QuadraticForm& f);
bool is_isotropic_over_Q(const QuadraticForm& f);

struct ReducedIsotropicBinary {
    Int A;
    Int B;
    bool hyperbolic;
    // Columns of an SL2(Z) matrix M with f(M (X,Y)) = A X^2 + B X Y.
    Matrix<Int> witness;
};

ReducedIsotropicBinary gauss_reduce_isotropic_binary(const QuadraticForm& f);

} // namespace qfd
