#include "wb/cyclic/cyclic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "wb/error.hpp"

namespace wb {

namespace {

using Values = std::vector<RingValue>;

std::vector<std::uint64_t> parse_members(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit) || item.size() > 18)
            fail(ErrorKind::ParseError, "bad truncation member '" + item + "'");
        out.push_back(std::stoull(item));
    }
    return out;
}

} // namespace

TruncationSet TruncationSet::divisors_of(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::InvalidTruncation, "div(0)");
    TruncationSet t;
    t.m_ = divisors(n);
    return t;
}

TruncationSet TruncationSet::from_members(std::vector<std::uint64_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members.front() != 1) fail(ErrorKind::InvalidTruncation, "truncation set must contain 1");
    for (auto n : members)
        for (auto d : divisors(n))
            if (!std::binary_search(members.begin(), members.end(), d))
                fail(ErrorKind::InvalidTruncation,
                     "not divisor-closed: " + std::to_string(d) + " divides " + std::to_string(n));
    TruncationSet t;
    t.m_ = std::move(members);
    return t;
}

TruncationSet TruncationSet::parse(const std::string& csv) { return from_members(parse_members(csv)); }

bool TruncationSet::contains(std::uint64_t n) const { return std::binary_search(m_.begin(), m_.end(), n); }

std::size_t TruncationSet::position(std::uint64_t n) const {
    auto it = std::lower_bound(m_.begin(), m_.end(), n);
    if (it == m_.end() || *it != n) fail(ErrorKind::InvalidTruncation, std::to_string(n) + " is not in {" + to_string() + "}");
    return static_cast<std::size_t>(it - m_.begin());
}

TruncationSet TruncationSet::divided_by(std::uint64_t r) const {
    if (r == 0 || !contains(r)) fail(ErrorKind::TruncationTooSmall, std::to_string(r) + " is not in {" + to_string() + "}");
    TruncationSet t;
    t.m_.clear();
    for (auto n : m_)
        if (n % r == 0) t.m_.push_back(n / r);
    return t;
}

std::string TruncationSet::to_string() const {
    std::string s;
    for (auto n : m_) s += (s.empty() ? "" : ",") + std::to_string(n);
    return s;
}

// ---- vectors ----

CyclicVector::CyclicVector(TruncationSet t, Flavor f, RingPtr r, std::vector<RingValue> c)
    : trunc(std::move(t)), flavor(f), ring(std::move(r)), comps(std::move(c)) {
    if (comps.size() != trunc.size())
        fail(ErrorKind::SchemaMismatch, "expected " + std::to_string(trunc.size()) + " components, got " +
                                            std::to_string(comps.size()));
    for (const auto& v : comps)
        if (!same_ring(v.ring(), ring)) fail(ErrorKind::RingMismatch, "component over " + v.ring()->to_string());
}

CyclicVector CyclicVector::zero(const TruncationSet& t, Flavor f, const RingPtr& r) {
    return CyclicVector(t, f, r, Values(t.size(), RingValue::zero(r)));
}

CyclicVector CyclicVector::one(const TruncationSet& t, Flavor f, const RingPtr& r) {
    if (f == Flavor::Ghost) return CyclicVector(t, f, r, Values(t.size(), RingValue::one(r)));
    auto z = zero(t, f, r);
    z.comps[0] = RingValue::one(r);
    return z;
}

CyclicVector CyclicVector::parse(const TruncationSet& t, Flavor f, const RingPtr& r, const std::vector<std::string>& c) {
    Values v;
    for (const auto& s : c) v.push_back(RingValue::parse(r, s));
    return CyclicVector(t, f, r, std::move(v));
}

std::vector<std::string> CyclicVector::to_strings() const {
    std::vector<std::string> out;
    for (const auto& v : comps) out.push_back(v.to_string());
    return out;
}

bool operator==(const CyclicVector& a, const CyclicVector& b) {
    return a.trunc == b.trunc && a.flavor == b.flavor && same_ring(a.ring, b.ring) && a.comps == b.comps;
}

namespace {

void expect(const CyclicVector& x, Flavor f) {
    if (x.flavor != f) fail(ErrorKind::SchemaMismatch, "expected a " + to_string(f) + " vector, got " + to_string(x.flavor));
}

void check_operands(Op op, const CyclicVector& a, const CyclicVector* b) {
    if (op == Op::Neg) return;
    if (!b) fail(ErrorKind::InvalidArgument, to_string(op) + " needs two operands");
    if (a.trunc != b->trunc) fail(ErrorKind::SchemaMismatch, "truncation sets differ");
    if (a.flavor != b->flavor) fail(ErrorKind::SchemaMismatch, "flavors differ");
    if (!same_ring(a.ring, b->ring)) fail(ErrorKind::RingMismatch, a.ring->to_string() + " vs " + b->ring->to_string());
}

CyclicVector make_like(const CyclicVector& proto, Values c) { return CyclicVector(proto.trunc, proto.flavor, proto.ring, std::move(c)); }

Values componentwise(Op op, const Values& a, const Values* b) {
    Values out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        switch (op) {
        case Op::Sum: out.push_back(a[i] + (*b)[i]); break;
        case Op::Prod: out.push_back(a[i] * (*b)[i]); break;
        case Op::Neg: out.push_back(-a[i]); break;
        }
    }
    return out;
}

MPoly rv_pow(const MPoly& x, std::uint64_t e) { return x.pow(e); }
RingValue rv_pow(const RingValue& x, std::uint64_t e) { return x.pow(e); }
MPoly rv_scale(const MPoly& x, std::uint64_t k) { return x * Rational(Integer(k)); }
RingValue rv_scale(const RingValue& x, std::uint64_t k) { return x.scaled(Integer(k)); }

/// w_n = sum_{d|n} d a_d^{n/d}
template <class T>
std::vector<T> witt_ghost_values(const TruncationSet& t, const std::vector<T>& a) {
    std::vector<T> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto n = t[i];
        T acc = rv_scale(a[i], n);
        for (auto d : divisors(n))
            if (d < n) acc += rv_scale(rv_pow(a[t.position(d)], n / d), d);
        out.push_back(std::move(acc));
    }
    return out;
}

/// Solves w(a) = g in increasing order of n; `divide` returns nullopt on failure.
template <class T, class Div>
std::vector<T> witt_ghost_solve(const TruncationSet& t, const std::vector<T>& g, Div divide) {
    std::vector<T> a;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto n = t[i];
        T acc = g[i];
        for (auto d : divisors(n))
            if (d < n) acc -= rv_scale(rv_pow(a[t.position(d)], n / d), d);
        auto q = divide(acc, n);
        if (!q) fail(ErrorKind::NotInImage, "ghost vector has no Witt preimage at n=" + std::to_string(n));
        a.push_back(std::move(*q));
    }
    return a;
}

std::vector<MPoly> solve_universal(const TruncationSet& t, const std::vector<MPoly>& target, const std::string& what) {
    return witt_ghost_solve(t, target, [&](const MPoly& x, std::uint64_t n) -> std::optional<MPoly> {
        MPoly q = x * Rational(1, Integer(n));
        if (!q.is_integral()) fail(ErrorKind::IntegralityViolation, what + " at n=" + std::to_string(n));
        return q;
    });
}

Values solve_in(const TruncationSet& t, const Values& g) {
    return witt_ghost_solve(t, g, [](const RingValue& x, std::uint64_t n) { return x.try_divide(Integer(n)); });
}

std::vector<MPoly> variables(const TruncationSet& t, char side) {
    std::vector<MPoly> out;
    for (auto n : t.members()) out.push_back(MPoly::variable(universal_var(side, std::to_string(n))));
    return out;
}

struct Cache {
    std::mutex mu;
    std::map<std::pair<std::vector<std::uint64_t>, Op>, std::vector<MPoly>> universal;
    std::map<std::pair<std::vector<std::uint64_t>, std::uint64_t>, std::vector<MPoly>> frobenius;
};

Cache& cache() {
    static Cache c;
    return c;
}

/// Substitutes ring values for a_n (and b_n).
Values evaluate_all(const std::vector<MPoly>& polys, const TruncationSet& t, const RingPtr& r, const Values& a,
                    const Values* b) {
    std::vector<std::pair<VarId, RingValue>> binding;
    for (std::size_t i = 0; i < t.size(); ++i) {
        binding.emplace_back(universal_var('a', std::to_string(t[i])), a[i]);
        binding.emplace_back(universal_var('b', std::to_string(t[i])), b ? (*b)[i] : RingValue::zero(r));
    }
    Values out;
    for (const auto& p : polys) out.push_back(evaluate(p, r, binding));
    return out;
}

CyclicVector witt_op(Op op, const CyclicVector& a, const CyclicVector* b) {
    const auto& t = a.trunc;
    if (!a.ring->is_polynomial())
        return make_like(a, evaluate_all(cyc_universal(t, op), t, a.ring, a.comps, b ? &b->comps : nullptr));
    // ghost route, as for the Burnside-Witt ring
    auto ga = witt_ghost_values(t, a.comps);
    Values target;
    if (op == Op::Neg) {
        for (auto& x : ga) target.push_back(-x);
    } else {
        auto gb = witt_ghost_values(t, b->comps);
        target = componentwise(op, ga, &gb);
    }
    try {
        return make_like(a, solve_in(t, target));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotInImage) fail(ErrorKind::IntegralityViolation, std::string("Witt operation: ") + e.what());
        throw;
    }
}

/// sum over [i,j] = n of w(i,j) x_i y_j
template <class W>
Values lcm_convolution(const TruncationSet& t, const RingPtr& r, const Values& x, const Values& y, W weight) {
    Values out(t.size(), RingValue::zero(r));
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < t.size(); ++j) {
            const auto l = lcm_u(t[i], t[j]);
            if (!t.contains(l)) continue;
            out[t.position(l)] += (x[i] * y[j]).scaled(Integer(weight(t[i], t[j])));
        }
    }
    return out;
}

void check_divide(const std::optional<RingValue>& q, std::uint64_t n, const char* what) {
    if (!q) fail(ErrorKind::NotInImage, std::string(what) + ": no preimage at n=" + std::to_string(n));
}

} // namespace

const std::vector<MPoly>& cyc_universal(const TruncationSet& t, Op op) {
    auto& c = cache();
    std::lock_guard lock(c.mu);
    auto key = std::make_pair(t.members(), op);
    auto it = c.universal.find(key);
    if (it != c.universal.end()) return it->second;
    auto ga = witt_ghost_values(t, variables(t, 'a'));
    std::vector<MPoly> target;
    if (op == Op::Neg) {
        for (auto& x : ga) target.push_back(-x);
    } else {
        auto gb = witt_ghost_values(t, variables(t, 'b'));
        for (std::size_t i = 0; i < t.size(); ++i) target.push_back(op == Op::Sum ? ga[i] + gb[i] : ga[i] * gb[i]);
    }
    return c.universal.emplace(key, solve_universal(t, target, "universal " + to_string(op) + " polynomial")).first->second;
}

const std::vector<MPoly>& cyc_frobenius_universal(const TruncationSet& t, std::uint64_t r) {
    auto out_t = t.divided_by(r);
    auto& c = cache();
    std::lock_guard lock(c.mu);
    auto key = std::make_pair(t.members(), r);
    auto it = c.frobenius.find(key);
    if (it != c.frobenius.end()) return it->second;
    auto ga = witt_ghost_values(t, variables(t, 'a'));
    std::vector<MPoly> target;
    for (auto n : out_t.members()) target.push_back(ga[t.position(r * n)]);
    return c.frobenius.emplace(key, solve_universal(out_t, target, "Frobenius polynomial")).first->second;
}

CyclicVector cyc_apply(Op op, const CyclicVector& a, const CyclicVector* b) {
    check_operands(op, a, b);
    const auto& t = a.trunc;
    switch (a.flavor) {
    case Flavor::Witt: return witt_op(op, a, b);
    case Flavor::Necklace:
        if (op == Op::Prod)
            return make_like(a, lcm_convolution(t, a.ring, a.comps, b->comps, [](auto i, auto j) { return gcd_u(i, j); }));
        break;
    case Flavor::Aperiodic:
        if (op == Op::Prod) return make_like(a, lcm_convolution(t, a.ring, a.comps, b->comps, [](auto, auto) { return 1; }));
        break;
    case Flavor::Ghost: break;
    }
    return make_like(a, componentwise(op, a.comps, b ? &b->comps : nullptr));
}

CyclicVector cyc_add(const CyclicVector& a, const CyclicVector& b) { return cyc_apply(Op::Sum, a, &b); }
CyclicVector cyc_mul(const CyclicVector& a, const CyclicVector& b) { return cyc_apply(Op::Prod, a, &b); }
CyclicVector cyc_neg(const CyclicVector& a) { return cyc_apply(Op::Neg, a); }

CyclicVector cyc_witt_ghost(const CyclicVector& a) {
    expect(a, Flavor::Witt);
    return CyclicVector(a.trunc, Flavor::Ghost, a.ring, witt_ghost_values(a.trunc, a.comps));
}

CyclicVector cyc_witt_ghost_inv(const CyclicVector& g) {
    expect(g, Flavor::Ghost);
    return CyclicVector(g.trunc, Flavor::Witt, g.ring, solve_in(g.trunc, g.comps));
}

CyclicVector cyc_nr_ghost(const CyclicVector& x) {
    expect(x, Flavor::Necklace);
    Values out;
    for (auto n : x.trunc.members()) {
        auto acc = RingValue::zero(x.ring);
        for (auto d : divisors(n)) acc += x.at(d).scaled(Integer(d));
        out.push_back(std::move(acc));
    }
    return CyclicVector(x.trunc, Flavor::Ghost, x.ring, std::move(out));
}

CyclicVector cyc_nr_ghost_inv(const CyclicVector& g) {
    expect(g, Flavor::Ghost);
    Values out;
    for (auto n : g.trunc.members()) {
        auto acc = RingValue::zero(g.ring);
        for (auto d : divisors(n))
            if (int m = mobius(n / d)) acc += g.at(d).scaled(Integer(m));
        auto q = acc.try_divide(Integer(n));
        check_divide(q, n, "necklace ghost inverse");
        out.push_back(std::move(*q));
    }
    return CyclicVector(g.trunc, Flavor::Necklace, g.ring, std::move(out));
}

CyclicVector cyc_ap_ghost(const CyclicVector& x) {
    expect(x, Flavor::Aperiodic);
    Values out;
    for (auto n : x.trunc.members()) {
        auto acc = RingValue::zero(x.ring);
        for (auto d : divisors(n)) acc += x.at(d);
        out.push_back(std::move(acc));
    }
    return CyclicVector(x.trunc, Flavor::Ghost, x.ring, std::move(out));
}

CyclicVector cyc_ap_ghost_inv(const CyclicVector& g) {
    expect(g, Flavor::Ghost);
    Values out;
    for (auto n : g.trunc.members()) {
        auto acc = RingValue::zero(g.ring);
        for (auto d : divisors(n))
            if (int m = mobius(n / d)) acc += g.at(d).scaled(Integer(m));
        out.push_back(std::move(acc));
    }
    return CyclicVector(g.trunc, Flavor::Aperiodic, g.ring, std::move(out));
}

CyclicVector cyc_ghost(const CyclicVector& x) {
    switch (x.flavor) {
    case Flavor::Witt: return cyc_witt_ghost(x);
    case Flavor::Necklace: return cyc_nr_ghost(x);
    case Flavor::Aperiodic: return cyc_ap_ghost(x);
    case Flavor::Ghost: return x;
    }
    return x;
}

CyclicVector cyc_ghost_inv(const CyclicVector& g, Flavor target) {
    switch (target) {
    case Flavor::Witt: return cyc_witt_ghost_inv(g);
    case Flavor::Necklace: return cyc_nr_ghost_inv(g);
    case Flavor::Aperiodic: return cyc_ap_ghost_inv(g);
    case Flavor::Ghost: expect(g, Flavor::Ghost); return g;
    }
    return g;
}

CyclicVector cyc_theta(const CyclicVector& x) {
    expect(x, Flavor::Necklace);
    Values out;
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x.comps[i].scaled(Integer(x.trunc[i])));
    return CyclicVector(x.trunc, Flavor::Aperiodic, x.ring, std::move(out));
}

CyclicVector cyc_theta_inv(const CyclicVector& x) {
    expect(x, Flavor::Aperiodic);
    Values out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto q = x.comps[i].try_divide(Integer(x.trunc[i]));
        if (!q) fail(ErrorKind::NotInvertibleIndex, "cannot divide component " + std::to_string(x.trunc[i]) + " by its index");
        out.push_back(std::move(*q));
    }
    return CyclicVector(x.trunc, Flavor::Necklace, x.ring, std::move(out));
}

RingValue aperiodic_poly(const RingValue& r, std::uint64_t n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "S(r, 0)");
    auto acc = RingValue::zero(r.ring());
    for (auto d : divisors(n))
        if (int m = mobius(d)) acc += r.pow(n / d).scaled(Integer(m));
    return acc;
}

RingValue necklace_poly(const RingValue& r, std::uint64_t n) {
    const auto& ring = r.ring();
    if (!ring->is_q_algebra() && !ring->is_binomial())
        fail(ErrorKind::NotBinomial, ring->to_string() + " is neither a Q-algebra nor binomial");
    auto q = aperiodic_poly(r, n).try_divide(Integer(n));
    if (!q) fail(ErrorKind::IntegralityViolation, "M(" + r.to_string() + ", " + std::to_string(n) + ") is not integral");
    return *q;
}

CyclicVector cyc_frobenius(std::uint64_t r, const CyclicVector& x) {
    const auto& t = x.trunc;
    auto out_t = t.divided_by(r);
    Values out;
    switch (x.flavor) {
    case Flavor::Witt:
        if (!x.ring->is_polynomial()) {
            out = evaluate_all(cyc_frobenius_universal(t, r), t, x.ring, x.comps, nullptr);
        } else {
            auto g = witt_ghost_values(t, x.comps);
            Values target;
            for (auto n : out_t.members()) target.push_back(g[t.position(r * n)]);
            out = solve_in(out_t, target);
        }
        break;
    case Flavor::Ghost:
        for (auto n : out_t.members()) out.push_back(x.at(r * n));
        break;
    case Flavor::Necklace:
    case Flavor::Aperiodic:
        // orbits of the index-r subgroup on Z/d: (r,d) of them, each of index [r,d]/r
        for (auto n : out_t.members()) {
            auto acc = RingValue::zero(x.ring);
            for (auto d : divisors(r * n)) {
                if (lcm_u(r, d) != r * n) continue;
                acc += x.flavor == Flavor::Necklace ? x.at(d).scaled(Integer(gcd_u(r, d))) : x.at(d);
            }
            out.push_back(std::move(acc));
        }
        break;
    }
    return CyclicVector(out_t, x.flavor, x.ring, std::move(out));
}

CyclicVector cyc_verschiebung(std::uint64_t r, const CyclicVector& x, const std::optional<TruncationSet>& target) {
    if (r == 0) fail(ErrorKind::InvalidArgument, "V_0");
    const auto& t = target ? *target : x.trunc;
    Values out;
    for (auto n : t.members()) {
        if (n % r != 0) {
            out.push_back(RingValue::zero(x.ring));
            continue;
        }
        if (!x.trunc.contains(n / r))
            fail(ErrorKind::TruncationTooSmall, std::to_string(n / r) + " is not in {" + x.trunc.to_string() + "}");
        const auto& v = x.at(n / r);
        switch (x.flavor) {
        case Flavor::Witt:
        case Flavor::Necklace: out.push_back(v); break;
        case Flavor::Aperiodic:
        case Flavor::Ghost: out.push_back(v.scaled(Integer(r))); break;
        }
    }
    return CyclicVector(t, x.flavor, x.ring, std::move(out));
}

} // namespace wb
