#pragma once

#include <string>
#include <vector>

#include "wb/exact/number_theory.hpp"

namespace wb {

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
class QPolynomial {
public:
    QPolynomial() = default;
    QPolynomial(const Rational& c);  // NOLINT: constants convert implicitly
    QPolynomial(long c) : QPolynomial(Rational(c)) {}
    explicit QPolynomial(std::vector<Rational> coeffs);

    static QPolynomial q() { return monomial(1, 1); }
    static QPolynomial monomial(const Rational& c, std::size_t deg);

    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    Rational eval(const Rational& x) const;

    QPolynomial operator-() const;
    QPolynomial& operator+=(const QPolynomial& o);
    QPolynomial& operator-=(const QPolynomial& o);
    QPolynomial& operator*=(const QPolynomial& o);
    QPolynomial& operator*=(const Rational& s);
    friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
    friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
    friend QPolynomial operator*(QPolynomial a, const QPolynomial& b) { return a *= b; }
    friend QPolynomial operator*(QPolynomial a, const Rational& s) { return a *= s; }
    friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.c_ == b.c_; }

    QPolynomial pow(std::uint64_t e) const;

    /// Exact division by the indeterminate. Throws NonExactDivision if the
    /// constant term is nonzero.
    QPolynomial divide_by_q() const;

    /// All coefficients are integers (membership in Z[q]).
    bool is_integral() const;

    /// e.g. "1/2*q^2-1/2*q"; highest degree first.
    std::string to_string(const std::string& var = "q") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Integer-valued on Z. Uses the finite-difference criterion: values at
/// 0..deg must be integers.
bool is_numerical(const QPolynomial& p);

} // namespace wb
