#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wb/burnside/burnside.hpp"

namespace wb {

/// Finite divisor-closed set of positive integers containing 1.
class TruncationSet {
public:
    TruncationSet() : m_{1} {}
    static TruncationSet divisors_of(std::uint64_t n);
    /// Throws InvalidTruncation unless divisor-closed with 1.
    static TruncationSet from_members(std::vector<std::uint64_t> members);
    /// "1,2,3,6"
    static TruncationSet parse(const std::string& csv);

    const std::vector<std::uint64_t>& members() const { return m_; }
    std::size_t size() const { return m_.size(); }
    std::uint64_t operator[](std::size_t i) const { return m_[i]; }
    bool contains(std::uint64_t n) const;
    /// Position of n; throws InvalidTruncation if absent.
    std::size_t position(std::uint64_t n) const;
    /// {n : r n in T}; TruncationTooSmall if r is not in T.
    TruncationSet divided_by(std::uint64_t r) const;
    std::string to_string() const;

    friend bool operator==(const TruncationSet& a, const TruncationSet& b) { return a.m_ == b.m_; }
    friend bool operator!=(const TruncationSet& a, const TruncationSet& b) { return !(a == b); }

private:
    std::vector<std::uint64_t> m_;
};

struct CyclicVector {
    TruncationSet trunc;
    Flavor flavor = Flavor::Witt;
    RingPtr ring;
    std::vector<RingValue> comps;  // one per member, ascending

    CyclicVector() = default;
    CyclicVector(TruncationSet t, Flavor f, RingPtr r, std::vector<RingValue> c);
    static CyclicVector zero(const TruncationSet& t, Flavor f, const RingPtr& r);
    static CyclicVector one(const TruncationSet& t, Flavor f, const RingPtr& r);
    static CyclicVector parse(const TruncationSet& t, Flavor f, const RingPtr& r, const std::vector<std::string>& c);

    std::size_t size() const { return comps.size(); }
    const RingValue& at(std::uint64_t n) const { return comps[trunc.position(n)]; }
    std::vector<std::string> to_strings() const;

    friend bool operator==(const CyclicVector& a, const CyclicVector& b);
    friend bool operator!=(const CyclicVector& a, const CyclicVector& b) { return !(a == b); }
};

/// s_n, p_n, iota_n in a_n, b_n (variables "a_<n>", "b_<n>"), integral.
const std::vector<MPoly>& cyc_universal(const TruncationSet& t, Op op);
/// Witt Frobenius polynomials in a_n: ghost_n(F) = ghost_{rn}(a), n in T/r.
const std::vector<MPoly>& cyc_frobenius_universal(const TruncationSet& t, std::uint64_t r);

CyclicVector cyc_apply(Op op, const CyclicVector& a, const CyclicVector* b = nullptr);
CyclicVector cyc_add(const CyclicVector& a, const CyclicVector& b);
CyclicVector cyc_mul(const CyclicVector& a, const CyclicVector& b);
CyclicVector cyc_neg(const CyclicVector& a);

CyclicVector cyc_witt_ghost(const CyclicVector& a);
CyclicVector cyc_witt_ghost_inv(const CyclicVector& g);
CyclicVector cyc_nr_ghost(const CyclicVector& x);
CyclicVector cyc_nr_ghost_inv(const CyclicVector& g);
CyclicVector cyc_ap_ghost(const CyclicVector& x);
CyclicVector cyc_ap_ghost_inv(const CyclicVector& g);
CyclicVector cyc_ghost(const CyclicVector& x);
CyclicVector cyc_ghost_inv(const CyclicVector& g, Flavor target);

/// x_n -> n x_n and back (NotInvertibleIndex).
CyclicVector cyc_theta(const CyclicVector& x);
CyclicVector cyc_theta_inv(const CyclicVector& x);

/// M(r,n) = (1/n) sum_{d|n} mu(d) r^{n/d}; Q-algebras and binomial rings.
RingValue necklace_poly(const RingValue& r, std::uint64_t n);
/// S(r,n) = n M(r,n); integral, defined over every ring.
RingValue aperiodic_poly(const RingValue& r, std::uint64_t n);

/// Frobenius onto T/r (any flavor).
CyclicVector cyc_frobenius(std::uint64_t r, const CyclicVector& x);
/// Verschiebung into `target` (default: the input truncation); components
/// x_{n/r} with n/r outside the input truncation raise TruncationTooSmall.
CyclicVector cyc_verschiebung(std::uint64_t r, const CyclicVector& x,
                              const std::optional<TruncationSet>& target = std::nullopt);

} // namespace wb
