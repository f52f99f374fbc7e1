#include "wb/q/qdeform.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "wb/error.hpp"

namespace wb {

namespace {

using Values = std::vector<RingValue>;

VarId q_var() {
    static const VarId v = intern_var("q");
    return v;
}

QPolynomial q_pow(std::uint64_t k) { return QPolynomial::monomial(1, k); }

Rational ratio(std::uint64_t a, std::uint64_t b) {
    Rational r{Integer(a), Integer(b)};
    r.canonicalize();
    return r;
}

void require_numerical(const QPolynomial& p, const std::string& what) {
    if (!is_numerical(p)) fail(ErrorKind::NumericalityViolation, what + " = " + p.to_string() + " is not numerical");
}

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

// ---- q-Witt ghost, generic over MPoly (symbolic q) and RingValue ----

struct PolyArith {
    MPoly qpow(std::uint64_t k) const { return MPoly::variable(q_var()).pow(k); }
    static MPoly pow(const MPoly& x, std::uint64_t e) { return x.pow(e); }
    static MPoly scale(const MPoly& x, std::uint64_t k) { return x * Rational(Integer(k)); }
    static std::optional<MPoly> divide(const MPoly& x, std::uint64_t n) {
        MPoly r = x * Rational(1, Integer(n));
        if (!has_numerical_q_coefficients(r))
            fail(ErrorKind::IntegralityViolation, "q-universal polynomial at n=" + std::to_string(n));
        return r;
    }
};

struct ValueArith {
    const QContext& q;
    RingPtr ring;
    RingValue qpow(std::uint64_t k) const { return q.value(q_pow(k), ring); }
    static RingValue pow(const RingValue& x, std::uint64_t e) { return x.pow(e); }
    static RingValue scale(const RingValue& x, std::uint64_t k) { return x.scaled(Integer(k)); }
    static std::optional<RingValue> divide(const RingValue& x, std::uint64_t n) { return x.try_divide(Integer(n)); }
};

/// Phi^q_n = sum_{d|n} d q^{n/d-1} a_d^{n/d}
template <class T, class A>
std::vector<T> q_ghost_values(const A& ar, const TruncationSet& t, const std::vector<T>& a) {
    std::vector<T> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto n = t[i];
        T acc = A::scale(a[i], n);
        for (auto d : divisors(n))
            if (d < n) acc += A::scale(A::pow(a[t.position(d)], n / d), d) * ar.qpow(n / d - 1);
        out.push_back(std::move(acc));
    }
    return out;
}

template <class T, class A>
std::vector<T> q_ghost_solve(const A& ar, const TruncationSet& t, const std::vector<T>& g) {
    std::vector<T> a;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto n = t[i];
        T acc = g[i];
        for (auto d : divisors(n))
            if (d < n) acc -= A::scale(A::pow(a[t.position(d)], n / d), d) * ar.qpow(n / d - 1);
        auto x = A::divide(acc, n);
        if (!x) fail(ErrorKind::NotInImage, "ghost vector has no q-Witt preimage at n=" + std::to_string(n));
        a.push_back(std::move(*x));
    }
    return a;
}

std::vector<MPoly> variables(const TruncationSet& t, char side) {
    std::vector<MPoly> out;
    for (auto n : t.members()) out.push_back(MPoly::variable(universal_var(side, std::to_string(n))));
    return out;
}

/// p with q replaced by c.
MPoly specialize(const MPoly& p, const Integer& c) {
    std::vector<MPoly::Term> ts;
    for (const auto& [m, coef] : p.terms()) {
        auto e = m.exponent(q_var());
        ts.emplace_back(m.without(q_var()), coef * Rational(ipow(c, e)));
    }
    return MPoly::from_terms(std::move(ts));
}

struct Tables {
    std::mutex mu;
    std::map<std::uint64_t, std::unique_ptr<QMatrixData>> matrices;
    std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, std::unique_ptr<QPolynomial>> p;
    std::map<std::pair<std::vector<std::uint64_t>, Op>, std::vector<MPoly>> universal;
    std::map<std::pair<std::vector<std::uint64_t>, std::uint64_t>, std::vector<MPoly>> frobenius;
    std::map<std::tuple<std::vector<std::uint64_t>, int, std::string>, std::vector<MPoly>> specialized;
};

Tables& tables() {
    static Tables t;
    return t;
}

const std::vector<MPoly>& q_frobenius_universal(const TruncationSet& t, std::uint64_t r) {
    auto out_t = t.divided_by(r);
    auto& c = tables();
    std::lock_guard lock(c.mu);
    auto key = std::make_pair(t.members(), r);
    auto it = c.frobenius.find(key);
    if (it != c.frobenius.end()) return it->second;
    PolyArith ar;
    auto ga = q_ghost_values(ar, t, variables(t, 'a'));
    std::vector<MPoly> target;
    for (auto n : out_t.members()) target.push_back(ga[t.position(r * n)]);
    return c.frobenius.emplace(key, q_ghost_solve(ar, out_t, target)).first->second;
}

/// Universal polynomials with q fixed; `kind` < 0 selects Frobenius r = -kind.
const std::vector<MPoly>& specialized(const TruncationSet& t, int kind, const Integer& qv) {
    const auto& src = kind >= 0 ? q_universal(t, static_cast<Op>(kind)) : q_frobenius_universal(t, static_cast<std::uint64_t>(-kind));
    auto& c = tables();
    std::lock_guard lock(c.mu);
    auto key = std::make_tuple(t.members(), kind, qv.get_str());
    auto it = c.specialized.find(key);
    if (it != c.specialized.end()) return it->second;
    std::vector<MPoly> out;
    for (const auto& p : src) out.push_back(specialize(p, qv));
    return c.specialized.emplace(key, std::move(out)).first->second;
}

Values evaluate_all(const std::vector<MPoly>& polys, const TruncationSet& in_t, const RingPtr& r, const Values& a,
                    const Values* b, const QContext& q) {
    std::vector<std::pair<VarId, RingValue>> binding;
    for (std::size_t i = 0; i < in_t.size(); ++i) {
        binding.emplace_back(universal_var('a', std::to_string(in_t[i])), a[i]);
        binding.emplace_back(universal_var('b', std::to_string(in_t[i])), b ? (*b)[i] : RingValue::zero(r));
    }
    if (q.is_symbolic()) binding.emplace_back(q_var(), q.value(q_pow(1), r));
    Values out;
    for (const auto& p : polys) out.push_back(evaluate(p, r, binding));
    return out;
}

/// Scalar rings cannot hold the indeterminate.
const Integer& fixed_q(const QContext& q, const RingPtr& r) {
    if (!q.q) fail(ErrorKind::InvalidArgument, "indeterminate q needs a ring with variable q, got " + r->to_string());
    return *q.q;
}

CyclicVector witt_op(const QContext& q, Op op, const CyclicVector& a, const CyclicVector* b) {
    const auto& t = a.trunc;
    if (!a.ring->is_polynomial()) {
        const auto& polys = specialized(t, static_cast<int>(op), fixed_q(q, a.ring));
        return make_like(a, evaluate_all(polys, t, a.ring, a.comps, b ? &b->comps : nullptr, q));
    }
    // ghost route on polynomial coefficient rings
    ValueArith ar{q, a.ring};
    auto ga = q_ghost_values(ar, t, a.comps);
    Values target;
    if (op == Op::Neg) {
        for (auto& x : ga) target.push_back(-x);
    } else {
        auto gb = q_ghost_values(ar, t, b->comps);
        target = componentwise(op, ga, &gb);
    }
    try {
        return make_like(a, q_ghost_solve(ar, t, target));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotInImage) fail(ErrorKind::IntegralityViolation, std::string("q-Witt operation: ") + e.what());
        throw;
    }
}

/// (n/d) mu^q(d,n), numerical.
QPolynomial nu_q(std::uint64_t d, std::uint64_t n) {
    auto c = mu_q(d, n) * ratio(n, d);
    require_numerical(c, "(n/d) mu^q(" + std::to_string(d) + "," + std::to_string(n) + ")");
    return c;
}

Values q_product(const QContext& q, Flavor f, const TruncationSet& t, const RingPtr& r, const Values& x, const Values& y) {
    Values out;
    for (auto n : t.members()) {
        auto acc = RingValue::zero(r);
        for (auto i : divisors(n)) {
            const auto& xi = x[t.position(i)];
            if (xi.is_zero()) continue;
            for (auto j : divisors(n)) {
                const auto l = lcm_u(i, j);
                if (n % l) continue;
                const auto& yj = y[t.position(j)];
                if (yj.is_zero()) continue;
                auto c = p_poly(n, i, j) * Rational(Integer(f == Flavor::Necklace ? gcd_u(i, j) : n / l));
                if (c.is_zero()) continue;
                acc += q.value(c, r) * xi * yj;
            }
        }
        out.push_back(std::move(acc));
    }
    return out;
}

bool teichmuller_ring(const RingPtr& r) { return r->is_q_algebra() || r->is_binomial(); }

} // namespace

// ---- QContext ----

QContext QContext::parse(const std::string& s) {
    if (s == "q") return symbolic();
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size() || s.size() > 18 || !std::all_of(s.begin() + static_cast<long>(i), s.end(), ::isdigit))
        fail(ErrorKind::ParseError, "q must be an integer or 'q', got '" + s + "'");
    return integer(std::stol(s));
}

std::string QContext::to_string() const { return q ? q->get_str() : "q"; }

RingValue QContext::value(const QPolynomial& c, const RingPtr& r) const {
    if (q) return RingValue(r, c.eval(Rational(*q)));
    if (!r->has_var(q_var())) fail(ErrorKind::InvalidArgument, "indeterminate q needs a ring with variable q, got " + r->to_string());
    return RingValue(r, MPoly::from_qpoly(c, q_var()));
}

// ---- tables ----

QPolynomial zeta_q(std::uint64_t d1, std::uint64_t d2) {
    if (d1 == 0 || d2 % d1) return QPolynomial();
    return QPolynomial::monomial(ratio(d1, d2), d2 / d1 - 1);
}

const QMatrixData& zeta_mu_q(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "D(0)");
    auto& c = tables();
    std::lock_guard lock(c.mu);
    auto& slot = c.matrices[n];
    if (!slot) {
        auto m = std::make_unique<QMatrixData>();
        m->n = n;
        m->divs = divisors(n);
        std::vector<std::string> labels;
        for (auto d : m->divs) labels.push_back(std::to_string(d));
        m->zeta = UniTriMatrix<QPolynomial>(labels);
        for (std::size_t i = 0; i < m->divs.size(); ++i)
            for (std::size_t j = i; j < m->divs.size(); ++j) m->zeta.set(i, j, zeta_q(m->divs[i], m->divs[j]));
        m->mu = m->zeta.inverse();
        slot = std::move(m);
    }
    return *slot;
}

QPolynomial mu_q(std::uint64_t d, std::uint64_t n) {
    if (d == 0 || n % d) fail(ErrorKind::InvalidArgument, "mu^q needs d | n");
    // depends only on n/d
    const auto& m = zeta_mu_q(n / d);
    return m.mu(0, m.divs.size() - 1);
}

QPolynomial tau_q(std::uint64_t i, std::uint64_t n) {
    if (i == 0 || n % i) fail(ErrorKind::InvalidArgument, "tau^q needs i | n");
    QPolynomial acc;
    for (auto d : divisors(i)) acc += mu_q(1, d) * zeta_q(d, n);
    return acc;
}

const QPolynomial& p_poly(std::uint64_t n, std::uint64_t i, std::uint64_t j) {
    if (n == 0 || i == 0 || j == 0 || n % lcm_u(i, j))
        fail(ErrorKind::InvalidArgument, "P_{n,i,j} needs [i,j] | n");
    auto& c = tables();
    {
        std::lock_guard lock(c.mu);
        auto it = c.p.find({n, i, j});
        if (it != c.p.end()) return *it->second;
    }
    const auto l = lcm_u(i, j), g = gcd_u(i, j);
    const auto base = q_pow(l / j);
    QPolynomial sum;
    for (auto d : divisors(n / l)) {
        QPolynomial s;  // S(q^{[i,j]/j}, d)
        for (auto e : divisors(d))
            if (int m = mobius(e)) s += base.pow(d / e) * Rational(m);
        sum += tau_q(n / (l * d), n / i) * s;
    }
    auto p = std::make_unique<QPolynomial>(sum.divide_by_q() * ratio(j, g));
    require_numerical(*p, "P_{" + std::to_string(n) + "," + std::to_string(i) + "," + std::to_string(j) + "}");
    std::lock_guard lock(c.mu);
    auto& slot = c.p[{n, i, j}];
    if (!slot) slot = std::move(p);
    return *slot;
}

// ---- q-Witt ----

std::map<Monomial, QPolynomial> q_coefficients(const MPoly& p) {
    std::map<Monomial, QPolynomial> out;
    for (const auto& [m, c] : p.terms()) out[m.without(q_var())] += QPolynomial::monomial(c, m.exponent(q_var()));
    return out;
}

bool has_numerical_q_coefficients(const MPoly& p) {
    for (const auto& [m, c] : q_coefficients(p))
        if (!is_numerical(c)) return false;
    return true;
}

const std::vector<MPoly>& q_universal(const TruncationSet& t, Op op) {
    auto& c = tables();
    std::lock_guard lock(c.mu);
    auto key = std::make_pair(t.members(), op);
    auto it = c.universal.find(key);
    if (it != c.universal.end()) return it->second;
    PolyArith ar;
    auto ga = q_ghost_values(ar, t, variables(t, 'a'));
    std::vector<MPoly> target;
    if (op == Op::Neg) {
        for (auto& x : ga) target.push_back(-x);
    } else {
        auto gb = q_ghost_values(ar, t, variables(t, 'b'));
        for (std::size_t i = 0; i < t.size(); ++i) target.push_back(op == Op::Sum ? ga[i] + gb[i] : ga[i] * gb[i]);
    }
    return c.universal.emplace(key, q_ghost_solve(ar, t, target)).first->second;
}

CyclicVector q_witt_ghost(const QContext& q, const CyclicVector& a) {
    expect(a, Flavor::Witt);
    return CyclicVector(a.trunc, Flavor::Ghost, a.ring, q_ghost_values(ValueArith{q, a.ring}, a.trunc, a.comps));
}

CyclicVector q_witt_ghost_inv(const QContext& q, const CyclicVector& g) {
    expect(g, Flavor::Ghost);
    return CyclicVector(g.trunc, Flavor::Witt, g.ring, q_ghost_solve(ValueArith{q, g.ring}, g.trunc, g.comps));
}

std::optional<CyclicVector> q_try_one(const QContext& q, const TruncationSet& t, const RingPtr& r) {
    try {
        return q_witt_ghost_inv(q, CyclicVector::one(t, Flavor::Ghost, r));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotInImage) return std::nullopt;
        throw;
    }
}

// ---- all flavors ----

CyclicVector q_apply(const QContext& q, Op op, const CyclicVector& a, const CyclicVector* b) {
    check_operands(op, a, b);
    if (a.flavor == Flavor::Witt) return witt_op(q, op, a, b);
    if (op == Op::Prod && a.flavor != Flavor::Ghost)
        return make_like(a, q_product(q, a.flavor, a.trunc, a.ring, a.comps, b->comps));
    return make_like(a, componentwise(op, a.comps, b ? &b->comps : nullptr));
}

CyclicVector q_add(const QContext& q, const CyclicVector& a, const CyclicVector& b) { return q_apply(q, Op::Sum, a, &b); }
CyclicVector q_mul(const QContext& q, const CyclicVector& a, const CyclicVector& b) { return q_apply(q, Op::Prod, a, &b); }
CyclicVector q_neg(const QContext& q, const CyclicVector& a) { return q_apply(q, Op::Neg, a); }

CyclicVector q_nr_ghost(const QContext& q, const CyclicVector& x) {
    expect(x, Flavor::Necklace);
    Values out;
    for (auto n : x.trunc.members()) {
        auto acc = RingValue::zero(x.ring);
        for (auto d : divisors(n)) acc += x.at(d).scaled(Integer(d)) * q.value(q_pow(n / d - 1), x.ring);
        out.push_back(std::move(acc));
    }
    return CyclicVector(x.trunc, Flavor::Ghost, x.ring, std::move(out));
}

CyclicVector q_nr_ghost_inv(const QContext& q, const CyclicVector& g) {
    expect(g, Flavor::Ghost);
    Values out;
    for (auto n : g.trunc.members()) {
        auto acc = RingValue::zero(g.ring);
        for (auto d : divisors(n)) acc += q.value(nu_q(d, n), g.ring) * g.at(d);
        auto x = acc.try_divide(Integer(n));
        if (!x) fail(ErrorKind::NotInImage, "q-necklace ghost inverse: no preimage at n=" + std::to_string(n));
        out.push_back(std::move(*x));
    }
    return CyclicVector(g.trunc, Flavor::Necklace, g.ring, std::move(out));
}

CyclicVector q_ap_ghost(const QContext& q, const CyclicVector& x) {
    expect(x, Flavor::Aperiodic);
    Values out;
    for (auto n : x.trunc.members()) {
        auto acc = RingValue::zero(x.ring);
        for (auto d : divisors(n)) acc += x.at(d) * q.value(q_pow(n / d - 1), x.ring);
        out.push_back(std::move(acc));
    }
    return CyclicVector(x.trunc, Flavor::Ghost, x.ring, std::move(out));
}

CyclicVector q_ap_ghost_inv(const QContext& q, const CyclicVector& g) {
    expect(g, Flavor::Ghost);
    Values out;
    for (auto n : g.trunc.members()) {
        auto acc = RingValue::zero(g.ring);
        for (auto d : divisors(n)) acc += q.value(nu_q(d, n), g.ring) * g.at(d);
        out.push_back(std::move(acc));
    }
    return CyclicVector(g.trunc, Flavor::Aperiodic, g.ring, std::move(out));
}

CyclicVector q_ghost(const QContext& q, const CyclicVector& x) {
    switch (x.flavor) {
    case Flavor::Witt: return q_witt_ghost(q, x);
    case Flavor::Necklace: return q_nr_ghost(q, x);
    case Flavor::Aperiodic: return q_ap_ghost(q, x);
    case Flavor::Ghost: return x;
    }
    return x;
}

CyclicVector q_ghost_inv(const QContext& q, const CyclicVector& g, Flavor target) {
    switch (target) {
    case Flavor::Witt: return q_witt_ghost_inv(q, g);
    case Flavor::Necklace: return q_nr_ghost_inv(q, g);
    case Flavor::Aperiodic: return q_ap_ghost_inv(q, g);
    case Flavor::Ghost: expect(g, Flavor::Ghost); return g;
    }
    return g;
}

RingValue q_exp_S(const QContext& q, const RingValue& x, std::uint64_t n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "S^q(x, 0)");
    auto acc = RingValue::zero(x.ring());
    for (auto d : divisors(n)) acc += q.value(nu_q(d, n) * q_pow(d - 1), x.ring()) * x.pow(d);
    return acc;
}

RingValue q_exp_M(const QContext& q, const RingValue& x, std::uint64_t n) {
    if (!teichmuller_ring(x.ring()))
        fail(ErrorKind::NotBinomial, x.ring()->to_string() + " is neither a Q-algebra nor binomial");
    auto m = q_exp_S(q, x, n).try_divide(Integer(n));
    if (!m) fail(ErrorKind::IntegralityViolation, "M^q(" + x.to_string() + ", " + std::to_string(n) + ") is not integral");
    return *m;
}

CyclicVector q_exp_M_vector(const QContext& q, const TruncationSet& t, const RingValue& x) {
    Values c;
    for (auto n : t.members()) c.push_back(q_exp_M(q, x, n));
    return CyclicVector(t, Flavor::Necklace, x.ring(), std::move(c));
}

CyclicVector q_exp_S_vector(const QContext& q, const TruncationSet& t, const RingValue& x) {
    Values c;
    for (auto n : t.members()) c.push_back(q_exp_S(q, x, n));
    return CyclicVector(t, Flavor::Aperiodic, x.ring(), std::move(c));
}

CyclicVector q_teichmuller(const QContext& q, const CyclicVector& a) {
    expect(a, Flavor::Witt);
    const auto& t = a.trunc;
    Values out;
    for (auto m : t.members()) {
        auto acc = RingValue::zero(a.ring);
        for (auto n : divisors(m)) acc += q_exp_M(q, a.at(n), m / n);
        out.push_back(std::move(acc));
    }
    return CyclicVector(t, Flavor::Necklace, a.ring, std::move(out));
}

CyclicVector q_teichmuller_inv(const QContext& q, const CyclicVector& x) {
    expect(x, Flavor::Necklace);
    if (!teichmuller_ring(x.ring))
        fail(ErrorKind::NotBinomial, x.ring->to_string() + " is neither a Q-algebra nor binomial");
    const auto& t = x.trunc;
    Values a;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto m = t[i];
        auto acc = x.comps[i];
        for (auto n : divisors(m))
            if (n < m) acc -= q_exp_M(q, a[t.position(n)], m / n);
        a.push_back(std::move(acc));  // M^q(a_m, 1) = a_m
    }
    return CyclicVector(t, Flavor::Witt, x.ring, std::move(a));
}

CyclicVector q_frobenius(const QContext& q, std::uint64_t r, const CyclicVector& x) {
    const auto& t = x.trunc;
    auto out_t = t.divided_by(r);
    Values out;
    switch (x.flavor) {
    case Flavor::Witt:
        if (!x.ring->is_polynomial()) {
            out = evaluate_all(specialized(t, -static_cast<int>(r), fixed_q(q, x.ring)), t, x.ring, x.comps, nullptr, q);
        } else {
            ValueArith ar{q, x.ring};
            auto g = q_ghost_values(ar, t, x.comps);
            Values target;
            for (auto n : out_t.members()) target.push_back(g[t.position(r * n)]);
            out = q_ghost_solve(ar, out_t, target);
        }
        break;
    case Flavor::Ghost:
        for (auto n : out_t.members()) out.push_back(x.at(r * n));
        break;
    case Flavor::Necklace:
    case Flavor::Aperiodic:
        for (auto n : out_t.members()) {
            auto acc = RingValue::zero(x.ring);
            for (auto d : divisors(r * n)) {
                auto c = tau_q(r * n / lcm_u(r, d), r * n / d) * Rational(Integer(r));
                if (x.flavor == Flavor::Aperiodic) c *= ratio(n, d);
                if (c.is_zero()) continue;
                require_numerical(c, "Frobenius coefficient");
                acc += q.value(c, x.ring) * x.at(d);
            }
            out.push_back(std::move(acc));
        }
        break;
    }
    return CyclicVector(out_t, x.flavor, x.ring, std::move(out));
}

// ---- curves ----

std::vector<std::string> TruncatedCurve::to_strings() const {
    std::vector<std::string> out;
    for (const auto& c : coeffs) out.push_back(c.to_string());
    return out;
}

namespace {

/// Truncated product of series without constant term (index k-1 <-> t^k).
Values series_mul(const Values& a, const Values& b, const RingPtr& r) {
    const std::size_t n = a.size();
    Values out(n, RingValue::zero(r));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j + 1 < n; ++j)
            if (!b[j].is_zero()) out[i + j + 1] += a[i] * b[j];
    }
    return out;
}

/// X + Y - qXY
Values fgl_add(const QContext& q, const Values& x, const Values& y, const RingPtr& r) {
    auto xy = series_mul(x, y, r);
    auto qv = q.value(q_pow(1), r);
    Values out;
    for (std::size_t k = 0; k < x.size(); ++k) out.push_back(x[k] + y[k] - qv * xy[k]);
    return out;
}

/// (X - Y) / (1 - qY)
Values fgl_sub(const QContext& q, const Values& x, const Values& y, const RingPtr& r) {
    const std::size_t n = x.size();
    auto qv = q.value(q_pow(1), r);
    Values qy;
    for (const auto& v : y) qy.push_back(qv * v);
    Values diff;
    for (std::size_t k = 0; k < n; ++k) diff.push_back(x[k] - y[k]);
    // diff * (1 + qY + (qY)^2 + ...)
    Values out = diff, term = diff;
    for (std::size_t k = 1; k < n; ++k) {
        term = series_mul(term, qy, r);
        bool nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            out[i] += term[i];
            nonzero = nonzero || !term[i].is_zero();
        }
        if (!nonzero) break;
    }
    return out;
}

void check_curves(const TruncatedCurve& a, const TruncatedCurve& b) {
    if (a.coeffs.size() != b.coeffs.size()) fail(ErrorKind::SchemaMismatch, "curve degree bounds differ");
    if (!same_ring(a.ring, b.ring)) fail(ErrorKind::RingMismatch, a.ring->to_string() + " vs " + b.ring->to_string());
}

TruncationSet full_truncation(std::size_t n) {
    std::vector<std::uint64_t> m;
    for (std::uint64_t i = 1; i <= n; ++i) m.push_back(i);
    return TruncationSet::from_members(std::move(m));
}

} // namespace

TruncatedCurve artin_hasse(const QContext& q, const CyclicVector& a) {
    expect(a, Flavor::Witt);
    const auto N = a.trunc.members().back();
    Values acc(N, RingValue::zero(a.ring));
    for (std::size_t i = 0; i < a.size(); ++i) {
        Values mono(N, RingValue::zero(a.ring));
        mono[a.trunc[i] - 1] = a.comps[i];
        acc = fgl_add(q, acc, mono, a.ring);
    }
    return {a.ring, std::move(acc)};
}

CyclicVector artin_hasse_inv(const QContext& q, const TruncatedCurve& c) {
    const auto N = c.coeffs.size();
    if (N == 0) fail(ErrorKind::InvalidArgument, "curve needs degree bound >= 1");
    Values rest = c.coeffs, a;
    for (std::size_t n = 1; n <= N; ++n) {
        a.push_back(rest[n - 1]);
        Values mono(N, RingValue::zero(c.ring));
        mono[n - 1] = rest[n - 1];
        rest = fgl_sub(q, rest, mono, c.ring);
    }
    return CyclicVector(full_truncation(N), Flavor::Witt, c.ring, std::move(a));
}

TruncatedCurve curve_add(const QContext& q, const TruncatedCurve& a, const TruncatedCurve& b) {
    check_curves(a, b);
    return {a.ring, fgl_add(q, a.coeffs, b.coeffs, a.ring)};
}

TruncatedCurve curve_neg(const QContext& q, const TruncatedCurve& a) {
    return {a.ring, fgl_sub(q, Values(a.coeffs.size(), RingValue::zero(a.ring)), a.coeffs, a.ring)};
}

TruncatedCurve curve_mul(const QContext& q, const TruncatedCurve& a, const TruncatedCurve& b) {
    check_curves(a, b);
    return artin_hasse(q, q_mul(q, artin_hasse_inv(q, a), artin_hasse_inv(q, b)));
}

} // namespace wb
