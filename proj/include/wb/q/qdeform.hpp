#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wb/cyclic/cyclic.hpp"
#include "wb/exact/qpolynomial.hpp"
#include "wb/exact/unitri_matrix.hpp"

namespace wb {

/// The deformation parameter: an integer, or the indeterminate q. With the
/// indeterminate, vectors must live in a ring that has a variable named "q".
struct QContext {
    std::optional<Integer> q;

    static QContext integer(long v) { return {Integer(v)}; }
    static QContext symbolic() { return {std::nullopt}; }
    /// "q" or a decimal integer.
    static QContext parse(const std::string& s);
    bool is_symbolic() const { return !q.has_value(); }
    std::string to_string() const;

    /// c(q) as an element of r. NotInImage if the value is not in r.
    RingValue value(const QPolynomial& c, const RingPtr& r) const;
};

// ---- polynomial tables over Q[q] ----

struct QMatrixData {
    std::uint64_t n = 1;
    std::vector<std::uint64_t> divs;
    UniTriMatrix<QPolynomial> zeta, mu;  // rows/columns indexed like divs
};

/// zeta^q and its inverse on the divisor lattice D(n), cached.
const QMatrixData& zeta_mu_q(std::uint64_t n);
/// zeta^q(d1, d2) = (d1/d2) q^{d2/d1 - 1} if d1 | d2, else 0.
QPolynomial zeta_q(std::uint64_t d1, std::uint64_t d2);
/// Inverse entries; d must divide n.
QPolynomial mu_q(std::uint64_t d, std::uint64_t n);
/// sum_{d|i} mu^q(1,d) zeta^q(d,n); i must divide n.
QPolynomial tau_q(std::uint64_t i, std::uint64_t n);
/// Structure polynomial of the q-necklace product; [i,j] must divide n.
/// Asserted numerical (NumericalityViolation) and q-divisible (NonExactDivision).
const QPolynomial& p_poly(std::uint64_t n, std::uint64_t i, std::uint64_t j);

// ---- q-Witt vectors ----

/// s^q, p^q, iota^q in Q[q][a_n, b_n] (q is the variable "q"), with every
/// coefficient a numerical polynomial in q (asserted).
const std::vector<MPoly>& q_universal(const TruncationSet& t, Op op);
/// p grouped by monomials in the other variables, coefficients in Q[q].
std::map<Monomial, QPolynomial> q_coefficients(const MPoly& p);
bool has_numerical_q_coefficients(const MPoly& p);

CyclicVector q_witt_ghost(const QContext& q, const CyclicVector& a);
CyclicVector q_witt_ghost_inv(const QContext& q, const CyclicVector& g);
/// Multiplicative identity of W^q(R) on t, if the defining system is solvable in r.
std::optional<CyclicVector> q_try_one(const QContext& q, const TruncationSet& t, const RingPtr& r);

// ---- all flavors ----

CyclicVector q_apply(const QContext& q, Op op, const CyclicVector& a, const CyclicVector* b = nullptr);
CyclicVector q_add(const QContext& q, const CyclicVector& a, const CyclicVector& b);
CyclicVector q_mul(const QContext& q, const CyclicVector& a, const CyclicVector& b);
CyclicVector q_neg(const QContext& q, const CyclicVector& a);

CyclicVector q_nr_ghost(const QContext& q, const CyclicVector& x);
CyclicVector q_nr_ghost_inv(const QContext& q, const CyclicVector& g);
CyclicVector q_ap_ghost(const QContext& q, const CyclicVector& x);
CyclicVector q_ap_ghost_inv(const QContext& q, const CyclicVector& g);
CyclicVector q_ghost(const QContext& q, const CyclicVector& x);
CyclicVector q_ghost_inv(const QContext& q, const CyclicVector& g, Flavor target);

/// M^q(x,n) = sum_{d|n} mu^q(d,n) q^{d-1}/d x^d; Q-algebras and Z only.
RingValue q_exp_M(const QContext& q, const RingValue& x, std::uint64_t n);
/// S^q(x,n) = n M^q(x,n); defined over every ring.
RingValue q_exp_S(const QContext& q, const RingValue& x, std::uint64_t n);
CyclicVector q_exp_M_vector(const QContext& q, const TruncationSet& t, const RingValue& x);
CyclicVector q_exp_S_vector(const QContext& q, const TruncationSet& t, const RingValue& x);

/// T^q(a) = sum_n V_n M^q(a_n) and its inverse; Q-algebras and Z only (NotBinomial).
CyclicVector q_teichmuller(const QContext& q, const CyclicVector& a);
CyclicVector q_teichmuller_inv(const QContext& q, const CyclicVector& x);
/// theta^q is x_n -> n x_n for every q.
inline CyclicVector q_theta(const CyclicVector& x) { return cyc_theta(x); }
inline CyclicVector q_theta_inv(const CyclicVector& x) { return cyc_theta_inv(x); }

/// f_r^q onto T/r. Necklace and aperiodic flavors use the tau^q formulas,
/// Witt vectors the integral polynomials with ghost(F)_n = ghost(a)_{rn}.
CyclicVector q_frobenius(const QContext& q, std::uint64_t r, const CyclicVector& x);
/// V_r does not depend on q.
inline CyclicVector q_verschiebung(std::uint64_t r, const CyclicVector& x,
                                   const std::optional<TruncationSet>& target = std::nullopt) {
    return cyc_verschiebung(r, x, target);
}

// ---- curves and the Artin-Hasse map ----

/// gamma(t) = c_1 t + ... + c_N t^N.
struct TruncatedCurve {
    RingPtr ring;
    std::vector<RingValue> coeffs;  // coeffs[k-1] is the t^k coefficient

    std::size_t degree_bound() const { return coeffs.size(); }
    std::vector<std::string> to_strings() const;
    friend bool operator==(const TruncatedCurve& a, const TruncatedCurve& b) {
        return a.coeffs == b.coeffs && same_ring(a.ring, b.ring);
    }
};

/// F_q-sum of the curves a_n t^n, truncated at N = max(T).
TruncatedCurve artin_hasse(const QContext& q, const CyclicVector& a);
/// Inverse on T = {1..N}.
CyclicVector artin_hasse_inv(const QContext& q, const TruncatedCurve& c);
TruncatedCurve curve_add(const QContext& q, const TruncatedCurve& a, const TruncatedCurve& b);
TruncatedCurve curve_neg(const QContext& q, const TruncatedCurve& a);
/// Product transported from W^q through the Artin-Hasse map.
TruncatedCurve curve_mul(const QContext& q, const TruncatedCurve& a, const TruncatedCurve& b);

} // namespace wb
