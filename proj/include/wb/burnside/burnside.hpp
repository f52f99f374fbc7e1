#pragma once

#include <string>
#include <vector>

#include "wb/burnside/vector.hpp"
#include "wb/exact/mpoly.hpp"

namespace wb {

enum class Op { Sum, Prod, Neg };
std::string to_string(Op op);
/// sum|add, prod|mul, neg
Op parse_op(const std::string& s);

/// Witt-side polynomials in a_<label>, b_<label> with integer coefficients.
struct UniversalPolySet {
    TablesPtr group;
    Op op = Op::Sum;
    std::vector<MPoly> polys;  // class order
};

VarId universal_var(char side, const std::string& label);

/// Derived once per (group, op) by a symbolic ghost solve and cached in
/// memory, and on disk when WB_CACHE_DIR is set. Throws IntegralityViolation
/// if a coefficient is not an integer.
const UniversalPolySet& derive_universal(const TablesPtr& g, Op op);
/// Same computation, never cached.
UniversalPolySet derive_universal_uncached(const TablesPtr& g, Op op);

/// tau(alpha)_W = sum c * alpha(U)^k over the terms listed for W.
struct TeichTerm {
    std::size_t u;
    std::uint64_t k;
    Rational c;
};
const std::vector<std::vector<TeichTerm>>& teichmuller_table(const TablesPtr& g);

// ---- ring operations (dispatch on flavor; ghosts are componentwise) ----

IndexedVector apply(Op op, const IndexedVector& a, const IndexedVector* b = nullptr);
IndexedVector add(const IndexedVector& a, const IndexedVector& b);
IndexedVector mul(const IndexedVector& a, const IndexedVector& b);
IndexedVector neg(const IndexedVector& a);

IndexedVector wg_op(Op op, const IndexedVector& a, const IndexedVector* b = nullptr);
IndexedVector nr_op(Op op, const IndexedVector& x, const IndexedVector* y = nullptr);
IndexedVector ap_op(Op op, const IndexedVector& x, const IndexedVector* y = nullptr);

// ---- ghost maps ----

IndexedVector wg_ghost(const IndexedVector& a);
IndexedVector wg_ghost_inv(const IndexedVector& g);
IndexedVector nr_ghost(const IndexedVector& x);
IndexedVector nr_ghost_inv(const IndexedVector& g);
IndexedVector ap_ghost(const IndexedVector& x);
IndexedVector ap_ghost_inv(const IndexedVector& g);
/// Ghost of a Witt, Necklace or Aperiodic vector.
IndexedVector ghost(const IndexedVector& x);
IndexedVector ghost_inv(const IndexedVector& g, Flavor target);

// ---- equivalences ----

/// M_G(r, V) for all V. Needs a Q-algebra or a binomial ring (NotBinomial).
IndexedVector exp_M(const TablesPtr& g, const RingValue& r);
IndexedVector exp_S(const TablesPtr& g, const RingValue& r);

IndexedVector teichmuller(const IndexedVector& alpha);
IndexedVector teichmuller_inv(const IndexedVector& x);
IndexedVector theta(const IndexedVector& x);
IndexedVector theta_inv(const IndexedVector& x);
IndexedVector gamma(const IndexedVector& alpha);
IndexedVector gamma_inv(const IndexedVector& x);

/// x has coordinates in the rationalization of a torsion-free ring r;
/// true iff its Witt coordinates lie in r.
bool delta_membership(const IndexedVector& x, const RingPtr& r);

/// Lifted vectors are brought to their canonical lift; others are returned as is.
IndexedVector canonical(const IndexedVector& x);

/// Reduction Z -> Z/m applied to any flavor. Necklace and aperiodic vectors
/// come out Lifted (transport through the Witt side).
IndexedVector reduce(const IndexedVector& x, const RingPtr& residue);

// ---- induction and restriction (u is a class of x's parent group) ----

IndexedVector ind(const TablesPtr& parent, std::size_t u, const IndexedVector& x);
IndexedVector res(const TablesPtr& parent, std::size_t u, const IndexedVector& x);
IndexedVector witt_v(const TablesPtr& parent, std::size_t u, const IndexedVector& alpha);
IndexedVector witt_f(const TablesPtr& parent, std::size_t u, const IndexedVector& alpha);
IndexedVector ghost_nu(const TablesPtr& parent, std::size_t u, const IndexedVector& b);
IndexedVector ghost_F(const TablesPtr& parent, std::size_t u, const IndexedVector& b);

/// phi~_G o Ind o phi~_U^{-1} as an integer matrix [G class][U class].
const std::vector<std::vector<Integer>>& nu_matrix(const TablesPtr& parent, std::size_t u);

} // namespace wb
