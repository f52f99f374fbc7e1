#include "wb/exact/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "wb/error.hpp"
#include "wb/exact/format.hpp"

namespace wb {

// ---- RingSpec ----

namespace {
RingPtr make(RingSpec::Kind k, Integer m, std::vector<std::string> vars, bool over_q);

std::string strip(const std::string& s) {
    std::string r;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) r += c;
    return r;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}
} // namespace

class RingSpecBuilder {
public:
    static RingPtr build(RingSpec::Kind k, Integer m, std::vector<std::string> vars, bool over_q) {
        auto r = std::make_shared<RingSpec>();
        r->kind_ = k;
        r->modulus_ = std::move(m);
        r->over_q_ = over_q;
        for (const auto& v : vars) r->ids_.push_back(intern_var(v));
        r->vars_ = std::move(vars);
        return r;
    }
};

namespace {
RingPtr make(RingSpec::Kind k, Integer m, std::vector<std::string> vars, bool over_q) {
    return RingSpecBuilder::build(k, std::move(m), std::move(vars), over_q);
}
} // namespace

RingPtr RingSpec::integers() {
    static const RingPtr r = make(Kind::Integers, 0, {}, false);
    return r;
}

RingPtr RingSpec::rationals() {
    static const RingPtr r = make(Kind::Rationals, 0, {}, true);
    return r;
}

RingPtr RingSpec::residue(const Integer& m) {
    if (m < 2) fail(ErrorKind::InvalidArgument, "residue modulus must be at least 2");
    return make(Kind::Residue, m, {}, false);
}

RingPtr RingSpec::qpoly() {
    static const RingPtr r = make(Kind::QPoly, 0, {"q"}, true);
    return r;
}

RingPtr RingSpec::multipoly(std::vector<std::string> vars, bool over_q) {
    if (vars.empty()) fail(ErrorKind::InvalidArgument, "polynomial ring needs at least one variable");
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (!is_identifier(v)) fail(ErrorKind::InvalidArgument, "bad variable name '" + v + "'");
        if (!seen.insert(v).second) fail(ErrorKind::InvalidArgument, "duplicate variable '" + v + "'");
    }
    return make(Kind::MultiPoly, 0, std::move(vars), over_q);
}

RingPtr RingSpec::parse(const std::string& text) {
    std::string s = strip(text);
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    if (s == "Q[q]") return qpoly();
    if (s.rfind("Z/", 0) == 0) {
        std::string m = s.substr(2);
        if (m.empty() || m.size() > 30 || !std::all_of(m.begin(), m.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail(ErrorKind::ParseError, "bad residue ring '" + text + "'");
        Integer mod(m);
        if (mod < 2) fail(ErrorKind::ParseError, "residue modulus must be at least 2 in '" + text + "'");
        return residue(mod);
    }
    for (const char* head : {"ZPoly(", "QPoly("}) {
        std::string h(head);
        if (s.rfind(h, 0) == 0 && s.back() == ')') {
            std::string inner = s.substr(h.size(), s.size() - h.size() - 1);
            std::vector<std::string> vars;
            std::size_t start = 0;
            for (;;) {
                auto comma = inner.find(',', start);
                vars.push_back(inner.substr(start, comma - start));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            try {
                return multipoly(vars, h[0] == 'Q');
            } catch (const Error& e) {
                fail(ErrorKind::ParseError, std::string(e.what()));
            }
        }
    }
    fail(ErrorKind::ParseError, "unknown ring '" + text + "'");
}

bool RingSpec::is_q_algebra() const {
    return kind_ == Kind::Rationals || kind_ == Kind::QPoly || (kind_ == Kind::MultiPoly && over_q_);
}

bool RingSpec::has_var(VarId v) const { return std::find(ids_.begin(), ids_.end(), v) != ids_.end(); }

RingPtr RingSpec::rationalization() const {
    switch (kind_) {
    case Kind::Integers:
    case Kind::Residue:
    case Kind::Rationals: return rationals();
    case Kind::QPoly: return qpoly();
    case Kind::MultiPoly: return make(Kind::MultiPoly, 0, vars_, true);
    }
    return rationals();
}

RingPtr RingSpec::cover() const {
    if (kind_ == Kind::Residue) return integers();
    return make(kind_, modulus_, vars_, over_q_);
}

std::string RingSpec::to_string() const {
    switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::Residue: return "Z/" + modulus_.get_str();
    case Kind::QPoly: return "Q[q]";
    case Kind::MultiPoly: {
        std::string s = over_q_ ? "QPoly(" : "ZPoly(";
        for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
        return s + ")";
    }
    }
    return "?";
}

bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_ && a.over_q_ == b.over_q_ && a.vars_ == b.vars_;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

// ---- RingValue ----

namespace {
bool unit_mod(const Integer& n, const Integer& m, Integer* inv) {
    Integer r;
    if (!mpz_invert(r.get_mpz_t(), Integer(mod_floor(n, m)).get_mpz_t(), m.get_mpz_t())) return false;
    if (inv) *inv = r;
    return true;
}

/// Rational into Z/m if its denominator is a unit.
std::optional<Rational> reduce_mod(const Rational& c, const Integer& m) {
    Integer inv = 1;
    if (c.get_den() != 1 && !unit_mod(c.get_den(), m, &inv)) return std::nullopt;
    return Rational(mod_floor(Integer(c.get_num() * inv), m));
}

bool poly_fits(const MPoly& p, const RingSpec& r) {
    for (VarId v : p.variables())
        if (!r.has_var(v)) return false;
    return r.is_q_algebra() || p.is_integral();
}

std::optional<Rational> scalar_fits(Rational c, const RingSpec& r) {
    c.canonicalize();
    switch (r.kind()) {
    case RingSpec::Kind::Integers:
        if (!is_integer(c)) return std::nullopt;
        return c;
    case RingSpec::Kind::Residue: return reduce_mod(c, r.modulus());
    default: return c;
    }
}
} // namespace

RingValue::RingValue(RingPtr ring, const Rational& c0) : ring_(std::move(ring)) {
    Rational c = c0;
    c.canonicalize();
    if (ring_->is_polynomial()) {
        MPoly p(c);
        if (!poly_fits(p, *ring_)) fail(ErrorKind::NotInImage, c.get_str() + " is not in " + ring_->to_string());
        v_ = std::move(p);
        return;
    }
    auto s = scalar_fits(c, *ring_);
    if (!s) fail(ErrorKind::NotInImage, c.get_str() + " is not in " + ring_->to_string());
    v_ = std::move(*s);
}

RingValue::RingValue(RingPtr ring, MPoly p) : ring_(std::move(ring)) {
    if (!ring_->is_polynomial()) {
        if (!p.is_constant()) fail(ErrorKind::RingMismatch, "polynomial value in scalar ring " + ring_->to_string());
        *this = RingValue(ring_, p.constant_term());
        return;
    }
    if (!poly_fits(p, *ring_)) fail(ErrorKind::NotInImage, p.to_string() + " is not in " + ring_->to_string());
    v_ = std::move(p);
}

RingValue RingValue::parse(const RingPtr& r, const std::string& s) {
    if (r->is_polynomial()) {
        MPoly p = MPoly::parse(s);
        for (VarId v : p.variables())
            if (!r->has_var(v)) fail(ErrorKind::ParseError, "variable '" + var_name(v) + "' not in ring " + r->to_string());
        if (!poly_fits(p, *r)) fail(ErrorKind::ParseError, "'" + s + "' has non-integral coefficients in " + r->to_string());
        return RingValue(r, std::move(p));
    }
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    Rational c = parse_rational(t);
    if (r->kind() == RingSpec::Kind::Integers && !is_integer(c)) fail(ErrorKind::ParseError, "'" + s + "' is not an integer");
    if (r->kind() == RingSpec::Kind::Residue && !is_integer(c)) fail(ErrorKind::ParseError, "'" + s + "' is not an integer residue");
    return RingValue(r, c);
}

MPoly RingValue::as_poly() const { return is_poly() ? poly() : MPoly(scalar()); }

bool RingValue::is_zero() const { return is_poly() ? poly().is_zero() : scalar() == 0; }

bool RingValue::is_one() const {
    if (is_poly()) return poly().is_constant() && poly().constant_term() == 1;
    return scalar() == 1 || (ring_->kind() == RingSpec::Kind::Residue && ring_->modulus() == 1);
}

void RingValue::check_same(const RingValue& o) const {
    if (!same_ring(ring_, o.ring_))
        fail(ErrorKind::RingMismatch, "values from " + ring_->to_string() + " and " + o.ring_->to_string());
}

void RingValue::normalize() {
    if (ring_->kind() == RingSpec::Kind::Residue) {
        auto& c = std::get<Rational>(v_);
        c = Rational(mod_floor(c.get_num(), ring_->modulus()));
    }
}

RingValue RingValue::operator-() const {
    RingValue r = *this;
    if (is_poly()) r.v_ = -poly();
    else {
        r.v_ = Rational(-scalar());
        r.normalize();
    }
    return r;
}

RingValue& RingValue::operator+=(const RingValue& o) {
    check_same(o);
    if (is_poly()) std::get<MPoly>(v_) += o.poly();
    else {
        std::get<Rational>(v_) += o.scalar();
        normalize();
    }
    return *this;
}

RingValue& RingValue::operator-=(const RingValue& o) {
    check_same(o);
    if (is_poly()) std::get<MPoly>(v_) -= o.poly();
    else {
        std::get<Rational>(v_) -= o.scalar();
        normalize();
    }
    return *this;
}

RingValue& RingValue::operator*=(const RingValue& o) {
    check_same(o);
    if (is_poly()) v_ = poly() * o.poly();
    else {
        std::get<Rational>(v_) *= o.scalar();
        normalize();
    }
    return *this;
}

RingValue RingValue::scaled(const Integer& k) const {
    RingValue r = *this;
    if (is_poly()) std::get<MPoly>(r.v_) *= Rational(k);
    else {
        std::get<Rational>(r.v_) *= Rational(k);
        r.normalize();
    }
    return r;
}

RingValue RingValue::scaled(const Rational& k) const {
    if (is_integer(k)) return scaled(Integer(k.get_num()));
    if (is_poly()) return RingValue(ring_, poly() * k);
    if (ring_->kind() == RingSpec::Kind::Residue) {
        auto kk = reduce_mod(k, ring_->modulus());
        if (!kk) fail(ErrorKind::NotInImage, "cannot scale by " + k.get_str() + " in " + ring_->to_string());
        return scaled(Integer(kk->get_num()));
    }
    return RingValue(ring_, Rational(scalar() * k));
}

RingValue RingValue::pow(std::uint64_t e) const {
    if (is_poly()) return RingValue(ring_, poly().pow(e));
    if (ring_->kind() == RingSpec::Kind::Residue) {
        Integer r;
        Integer b = scalar().get_num();
        mpz_powm_ui(r.get_mpz_t(), b.get_mpz_t(), e, ring_->modulus().get_mpz_t());
        return RingValue(ring_, Rational(r));
    }
    RingValue r = *this;
    r.v_ = ipow(scalar(), e);
    return r;
}

std::optional<RingValue> RingValue::try_divide(const Integer& n) const {
    if (n == 0) return std::nullopt;
    if (ring_->is_q_algebra()) return scaled(Rational(1, 1) / Rational(n));
    switch (ring_->kind()) {
    case RingSpec::Kind::Integers: {
        const Integer& a = scalar().get_num();
        if (!mpz_divisible_p(a.get_mpz_t(), n.get_mpz_t())) return std::nullopt;
        return RingValue(ring_, Rational(Integer(a / n)));
    }
    case RingSpec::Kind::Residue: {
        Integer inv;
        if (!unit_mod(n, ring_->modulus(), &inv)) return std::nullopt;
        return scaled(inv);
    }
    case RingSpec::Kind::MultiPoly: {
        for (const auto& t : poly().terms())
            if (!mpz_divisible_p(t.second.get_num_mpz_t(), n.get_mpz_t())) return std::nullopt;
        RingValue r = *this;
        std::get<MPoly>(r.v_) *= Rational(1, 1) / Rational(n);
        return r;
    }
    default: return std::nullopt;
    }
}

std::optional<RingValue> RingValue::try_cast(const RingPtr& target) const {
    if (same_ring(ring_, target)) return *this;
    if (target->is_polynomial()) {
        MPoly p = as_poly();
        if (!poly_fits(p, *target)) return std::nullopt;
        RingValue r;
        r.ring_ = target;
        r.v_ = std::move(p);
        return r;
    }
    Rational c;
    if (is_poly()) {
        if (!poly().is_constant()) return std::nullopt;
        c = poly().constant_term();
    } else {
        c = scalar();
    }
    // Z/m -> Z/k is only a ring map when k | m; Z/m -> Q, Z lifts to [0,m).
    if (ring_->kind() == RingSpec::Kind::Residue && target->kind() == RingSpec::Kind::Residue &&
        !mpz_divisible_p(ring_->modulus().get_mpz_t(), target->modulus().get_mpz_t()))
        return std::nullopt;
    auto s = scalar_fits(c, *target);
    if (!s) return std::nullopt;
    RingValue r;
    r.ring_ = target;
    r.v_ = std::move(*s);
    return r;
}

RingValue RingValue::cast(const RingPtr& target) const {
    auto r = try_cast(target);
    if (!r) fail(ErrorKind::NotInImage, to_string() + " does not lie in " + target->to_string());
    return *r;
}

std::string RingValue::to_string() const { return is_poly() ? poly().to_string() : rational_to_string(scalar()); }

bool operator==(const RingValue& a, const RingValue& b) { return same_ring(a.ring_, b.ring_) && a.v_ == b.v_; }

// ---- evaluation ----

RingValue evaluate(const MPoly& p, const RingPtr& ring, const std::vector<std::pair<VarId, RingValue>>& binding) {
    if (!ring->is_q_algebra() && !p.is_integral())
        fail(ErrorKind::NotInImage, "non-integral polynomial evaluated in " + ring->to_string());
    std::map<VarId, std::size_t> slot;
    for (std::size_t i = 0; i < binding.size(); ++i) slot[binding[i].first] = i;
    std::vector<std::vector<RingValue>> powers(binding.size());
    auto power = [&](std::size_t i, std::uint32_t e) -> const RingValue& {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(RingValue::one(ring));
        while (pw.size() <= e) pw.push_back(pw.back() * binding[i].second);
        return pw[e];
    };

    if (!ring->is_polynomial()) {
        // scalar fast path: accumulate in Q, reduce once
        bool residue = ring->kind() == RingSpec::Kind::Residue;
        Rational acc = 0, term;
        for (const auto& [m, c] : p.terms()) {
            term = c;
            for (std::size_t k = 0; k < m.size(); ++k) {
                auto it = slot.find(m.var_at(k));
                if (it == slot.end()) fail(ErrorKind::InvalidArgument, "unbound variable " + var_name(m.var_at(k)));
                term *= power(it->second, m.exp_at(k)).scalar();
            }
            acc += term;
            if (residue) acc = Rational(mod_floor(acc.get_num(), ring->modulus()));
        }
        return RingValue(ring, acc);
    }
    RingValue acc = RingValue::zero(ring);
    for (const auto& [m, c] : p.terms()) {
        MPoly t(c);
        for (std::size_t k = 0; k < m.size(); ++k) {
            auto it = slot.find(m.var_at(k));
            if (it == slot.end()) fail(ErrorKind::InvalidArgument, "unbound variable " + var_name(m.var_at(k)));
            t = t * power(it->second, m.exp_at(k)).poly();
        }
        acc += RingValue(ring, std::move(t));
    }
    return acc;
}

} // namespace wb
