#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wb/exact/number_theory.hpp"
#include "wb/exact/qpolynomial.hpp"

namespace wb {

using VarId = std::uint32_t;

/// Process-wide variable name table. Ids are only meaningful within one run;
/// anything user-visible is ordered by name.
VarId intern_var(const std::string& name);
const std::string& var_name(VarId id);

/// Sparse power product, sorted by variable id, no zero exponents.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(VarId v, std::uint32_t e = 1);

    std::size_t size() const { return f_.size(); }
    VarId var_at(std::size_t i) const { return static_cast<VarId>(f_[i] >> 32); }
    std::uint32_t exp_at(std::size_t i) const { return static_cast<std::uint32_t>(f_[i]); }
    std::uint32_t exponent(VarId v) const;
    std::uint64_t degree() const;
    bool is_one() const { return f_.empty(); }

    Monomial operator*(const Monomial& o) const;
    Monomial pow(std::uint32_t e) const;
    /// This monomial with variable v removed.
    Monomial without(VarId v) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.f_ < b.f_; }
    std::size_t hash() const;

    /// "x^2*y" with factors ordered by name; "" for the unit monomial.
    std::string to_string() const;

private:
    std::vector<std::uint64_t> f_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Multivariate polynomial with exact rational coefficients.
class MPoly {
public:
    using Term = std::pair<Monomial, Rational>;

    MPoly() = default;
    MPoly(const Rational& c);  // NOLINT
    MPoly(long c) : MPoly(Rational(c)) {}
    static MPoly variable(const std::string& name);
    static MPoly variable(VarId v);
    static MPoly term(const Monomial& m, const Rational& c);
    static MPoly from_qpoly(const QPolynomial& p, VarId q);
    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    static MPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
    Rational constant_term() const;
    std::uint64_t total_degree() const;
    std::uint32_t degree_in(VarId v) const;
    std::set<VarId> variables() const;
    bool is_integral() const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const Rational& s);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Rational& s) { return a *= s; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

    MPoly pow(std::uint64_t e) const;

    /// Views this as a polynomial in v with coefficients in the other variables.
    std::vector<MPoly> coefficients_in(VarId v) const;

    /// Highest total degree first; ties broken by exponents in name order.
    std::string to_string() const;

    /// Accepts sums of products of rationals and var^exp factors, e.g.
    /// "3*x^2*y-1/2*z+4". Throws ParseError.
    static MPoly parse(const std::string& s);

private:
    std::vector<Term> t_;  // sorted by monomial, nonzero coefficients
};

} // namespace wb
