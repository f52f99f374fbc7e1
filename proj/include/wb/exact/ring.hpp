#pragma once

#include <memory>
#include <ostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wb/exact/mpoly.hpp"
#include "wb/exact/number_theory.hpp"

namespace wb {

class RingSpec;
using RingPtr = std::shared_ptr<const RingSpec>;

/// A coefficient ring: Z, Q, Z/m, Q[q], or a polynomial ring over Z or Q.
class RingSpec {
public:
    enum class Kind { Integers, Rationals, Residue, QPoly, MultiPoly };

    static RingPtr integers();
    static RingPtr rationals();
    static RingPtr residue(const Integer& m);
    static RingPtr qpoly();
    static RingPtr multipoly(std::vector<std::string> vars, bool over_q);
    /// Grammar: Z | Q | Z/<m> | Q[q] | ZPoly(v,...) | QPoly(v,...).
    static RingPtr parse(const std::string& s);

    Kind kind() const { return kind_; }
    const Integer& modulus() const { return modulus_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<VarId>& var_ids() const { return ids_; }

    bool is_polynomial() const { return kind_ == Kind::QPoly || kind_ == Kind::MultiPoly; }
    bool is_q_algebra() const;
    bool is_torsion_free() const { return kind_ != Kind::Residue; }
    /// Whitelisted binomial rings (only Z here).
    bool is_binomial() const { return kind_ == Kind::Integers; }
    bool has_var(VarId v) const;

    /// Z -> Q, ZPoly -> QPoly, Z/m -> Q (through its cover), Q-algebras -> self.
    RingPtr rationalization() const;
    /// Torsion-free cover used for quotient constructions: Z/m -> Z, else self.
    RingPtr cover() const;

    std::string to_string() const;
    friend bool operator==(const RingSpec& a, const RingSpec& b);

private:
    friend class RingSpecBuilder;
    Kind kind_ = Kind::Integers;
    Integer modulus_;
    bool over_q_ = false;
    std::vector<std::string> vars_;
    std::vector<VarId> ids_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

/// An element of a RingSpec in canonical form.
class RingValue {
public:
    RingValue() = default;
    /// Integral or rational scalar; reduced into Z/m, embedded as a constant
    /// in polynomial rings. Throws NotInImage if c does not belong to the ring.
    RingValue(RingPtr ring, const Rational& c);
    RingValue(RingPtr ring, long c) : RingValue(std::move(ring), Rational(c)) {}
    /// Polynomial rings only; variables must belong to the ring.
    RingValue(RingPtr ring, MPoly p);

    static RingValue zero(const RingPtr& r) { return RingValue(r, 0L); }
    static RingValue one(const RingPtr& r) { return RingValue(r, 1L); }
    static RingValue parse(const RingPtr& r, const std::string& s);

    const RingPtr& ring() const { return ring_; }
    bool is_poly() const { return std::holds_alternative<MPoly>(v_); }
    const Rational& scalar() const { return std::get<Rational>(v_); }
    const MPoly& poly() const { return std::get<MPoly>(v_); }
    /// The value as a polynomial (constants promoted).
    MPoly as_poly() const;

    bool is_zero() const;
    bool is_one() const;

    RingValue operator-() const;
    RingValue& operator+=(const RingValue& o);
    RingValue& operator-=(const RingValue& o);
    RingValue& operator*=(const RingValue& o);
    friend RingValue operator+(RingValue a, const RingValue& b) { return a += b; }
    friend RingValue operator-(RingValue a, const RingValue& b) { return a -= b; }
    friend RingValue operator*(RingValue a, const RingValue& b) { return a *= b; }
    /// Multiplication by an integer (always defined).
    RingValue scaled(const Integer& k) const;
    /// Multiplication by a rational; requires the result to lie in the ring.
    RingValue scaled(const Rational& k) const;
    RingValue pow(std::uint64_t e) const;

    /// Solves n*x = *this in the ring. Q-algebras always succeed; Z and ZPoly
    /// need divisibility; Z/m needs n to be a unit. nullopt otherwise.
    std::optional<RingValue> try_divide(const Integer& n) const;

    /// Ring change along the canonical maps: Z->Q, Z->Z/m, Z/m->Z (lift to
    /// [0,m)), ZPoly->QPoly, and partial inverses (Q->Z, QPoly->ZPoly) that
    /// return nullopt if the value is not in the target.
    std::optional<RingValue> try_cast(const RingPtr& target) const;
    RingValue cast(const RingPtr& target) const;

    std::string to_string() const;
    friend bool operator==(const RingValue& a, const RingValue& b);
    friend bool operator!=(const RingValue& a, const RingValue& b) { return !(a == b); }

private:
    void check_same(const RingValue& o) const;
    void normalize();

    RingPtr ring_;
    std::variant<Rational, MPoly> v_;
};

/// Evaluates p with variables replaced by ring values. Every variable of p
/// must be bound; coefficients must be integral unless the ring is a
/// Q-algebra (NotInImage otherwise).
inline std::ostream& operator<<(std::ostream& os, const RingValue& v) { return os << v.to_string(); }

RingValue evaluate(const MPoly& p, const RingPtr& ring, const std::vector<std::pair<VarId, RingValue>>& binding);

} // namespace wb
