#include "wb/exact/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "wb/error.hpp"
#include "wb/exact/format.hpp"

namespace wb {

namespace {
struct VarTable {
    std::mutex mu;
    std::unordered_map<std::string, VarId> ids;
    std::deque<std::string> names;  // deque: references survive growth
};
VarTable& vars() {
    static VarTable t;
    return t;
}
} // namespace

VarId intern_var(const std::string& name) {
    auto& t = vars();
    std::lock_guard lock(t.mu);
    auto it = t.ids.find(name);
    if (it != t.ids.end()) return it->second;
    VarId id = static_cast<VarId>(t.names.size());
    t.names.push_back(name);
    t.ids.emplace(name, id);
    return id;
}

const std::string& var_name(VarId id) {
    auto& t = vars();
    std::lock_guard lock(t.mu);
    return t.names.at(id);
}

// ---- Monomial ----

static std::uint64_t pack(VarId v, std::uint32_t e) { return (std::uint64_t(v) << 32) | e; }

Monomial Monomial::var(VarId v, std::uint32_t e) {
    Monomial m;
    if (e) m.f_.push_back(pack(v, e));
    return m;
}

std::uint32_t Monomial::exponent(VarId v) const {
    for (std::size_t i = 0; i < f_.size(); ++i)
        if (var_at(i) == v) return exp_at(i);
    return 0;
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < f_.size(); ++i) d += exp_at(i);
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    std::size_t i = 0, j = 0;
    while (i < f_.size() && j < o.f_.size()) {
        VarId a = var_at(i), b = o.var_at(j);
        if (a < b) r.f_.push_back(f_[i++]);
        else if (b < a) r.f_.push_back(o.f_[j++]);
        else {
            std::uint64_t e = std::uint64_t(exp_at(i)) + o.exp_at(j);
            if (e > 0xffffffffu) fail(ErrorKind::InvalidArgument, "monomial exponent overflow");
            r.f_.push_back(pack(a, static_cast<std::uint32_t>(e)));
            ++i, ++j;
        }
    }
    while (i < f_.size()) r.f_.push_back(f_[i++]);
    while (j < o.f_.size()) r.f_.push_back(o.f_[j++]);
    return r;
}

Monomial Monomial::pow(std::uint32_t e) const {
    Monomial r;
    if (e == 0) return r;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        std::uint64_t x = std::uint64_t(exp_at(i)) * e;
        if (x > 0xffffffffu) fail(ErrorKind::InvalidArgument, "monomial exponent overflow");
        r.f_.push_back(pack(var_at(i), static_cast<std::uint32_t>(x)));
    }
    return r;
}

Monomial Monomial::without(VarId v) const {
    Monomial r;
    for (std::size_t i = 0; i < f_.size(); ++i)
        if (var_at(i) != v) r.f_.push_back(f_[i]);
    return r;
}

std::size_t Monomial::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : f_) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

namespace {
std::vector<std::pair<std::string, std::uint32_t>> named(const Monomial& m) {
    std::vector<std::pair<std::string, std::uint32_t>> v;
    for (std::size_t i = 0; i < m.size(); ++i) v.emplace_back(var_name(m.var_at(i)), m.exp_at(i));
    std::sort(v.begin(), v.end());
    return v;
}
} // namespace

std::string Monomial::to_string() const {
    std::string s;
    for (const auto& [n, e] : named(*this)) {
        if (!s.empty()) s += '*';
        s += n;
        if (e != 1) s += '^' + std::to_string(e);
    }
    return s;
}

// ---- MPoly ----

MPoly::MPoly(const Rational& c) {
    if (c != 0) t_.emplace_back(Monomial(), c);
}

MPoly MPoly::variable(const std::string& name) { return variable(intern_var(name)); }

MPoly MPoly::variable(VarId v) { return term(Monomial::var(v), 1); }

MPoly MPoly::term(const Monomial& m, const Rational& c) {
    MPoly p;
    if (c != 0) p.t_.emplace_back(m, c);
    return p;
}

MPoly MPoly::from_qpoly(const QPolynomial& p, VarId q) {
    std::vector<Term> ts;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        if (p.coeffs()[k] != 0) ts.emplace_back(Monomial::var(q, static_cast<std::uint32_t>(k)), p.coeffs()[k]);
    return from_terms(std::move(ts));
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    MPoly p;
    for (auto& t : terms) {
        if (!p.t_.empty() && p.t_.back().first == t.first) p.t_.back().second += t.second;
        else {
            if (!p.t_.empty() && p.t_.back().second == 0) p.t_.pop_back();
            p.t_.push_back(std::move(t));
        }
    }
    if (!p.t_.empty() && p.t_.back().second == 0) p.t_.pop_back();
    return p;
}

Rational MPoly::constant_term() const {
    if (!t_.empty() && t_[0].first.is_one()) return t_[0].second;
    return 0;
}

std::uint64_t MPoly::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.first.degree());
    return d;
}

std::uint32_t MPoly::degree_in(VarId v) const {
    std::uint32_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.first.exponent(v));
    return d;
}

std::set<VarId> MPoly::variables() const {
    std::set<VarId> s;
    for (const auto& t : t_)
        for (std::size_t i = 0; i < t.first.size(); ++i) s.insert(t.first.var_at(i));
    return s;
}

bool MPoly::is_integral() const {
    for (const auto& t : t_)
        if (!is_integer(t.second)) return false;
    return true;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

namespace {
template <class Op>
std::vector<MPoly::Term> merge(const std::vector<MPoly::Term>& a, const std::vector<MPoly::Term>& b, Op op) {
    std::vector<MPoly::Term> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.emplace_back(b[j].first, op(Rational(0), b[j].second));
            ++j;
        } else {
            Rational c = op(a[i].second, b[j].second);
            if (c != 0) r.emplace_back(a[i].first, std::move(c));
            ++i, ++j;
        }
    }
    return r;
}
} // namespace

MPoly& MPoly::operator+=(const MPoly& o) {
    if (o.t_.empty()) return *this;
    t_ = merge(t_, o.t_, [](const Rational& x, const Rational& y) { return Rational(x + y); });
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    if (o.t_.empty()) return *this;
    t_ = merge(t_, o.t_, [](const Rational& x, const Rational& y) { return Rational(x - y); });
    return *this;
}

MPoly& MPoly::operator*=(const Rational& s) {
    if (s == 0) t_.clear();
    else
        for (auto& t : t_) t.second *= s;
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.t_.empty() || b.t_.empty()) return {};
    if (a.is_constant()) return MPoly(b) *= a.t_[0].second;
    if (b.is_constant()) return MPoly(a) *= b.t_[0].second;
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.t_.size() * b.t_.size());
    Rational tmp;
    for (const auto& [ma, ca] : a.t_) {
        for (const auto& [mb, cb] : b.t_) {
            mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            auto [it, fresh] = acc.try_emplace(ma * mb);
            if (fresh) it->second = tmp;
            else it->second += tmp;
        }
    }
    MPoly r;
    r.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) r.t_.emplace_back(m, std::move(c));
    std::sort(r.t_.begin(), r.t_.end(), [](const MPoly::Term& x, const MPoly::Term& y) { return x.first < y.first; });
    return r;
}

MPoly MPoly::pow(std::uint64_t e) const {
    if (e == 0) return MPoly(1);
    if (t_.size() == 1) {
        const auto& [m, c] = t_[0];
        Rational ce = ipow(c, e);
        if (e > 0xffffffffu) fail(ErrorKind::InvalidArgument, "exponent too large");
        return term(m.pow(static_cast<std::uint32_t>(e)), ce);
    }
    MPoly base = *this, acc(1);
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

std::vector<MPoly> MPoly::coefficients_in(VarId v) const {
    std::vector<MPoly> out(degree_in(v) + 1);
    std::vector<std::vector<Term>> buckets(out.size());
    for (const auto& [m, c] : t_) buckets[m.exponent(v)].emplace_back(m.without(v), c);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = from_terms(std::move(buckets[k]));
    return out;
}

std::string MPoly::to_string() const {
    if (t_.empty()) return "0";
    struct Row {
        std::uint64_t deg;
        std::vector<std::pair<std::string, std::uint32_t>> key;
        std::string mono;
        const Rational* c;
    };
    std::vector<Row> rows;
    rows.reserve(t_.size());
    for (const auto& [m, c] : t_) rows.push_back({m.degree(), named(m), m.to_string(), &c});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.deg != b.deg) return a.deg > b.deg;
        std::size_t n = std::min(a.key.size(), b.key.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (a.key[i].first != b.key[i].first) return a.key[i].first < b.key[i].first;
            if (a.key[i].second != b.key[i].second) return a.key[i].second > b.key[i].second;
        }
        return a.key.size() > b.key.size();
    });
    std::string out;
    for (const auto& r : rows) append_term(out, *r.c, r.mono);
    return out;
}

// ---- parsing ----

namespace {
class Parser {
public:
    explicit Parser(const std::string& s) {
        for (char ch : s)
            if (!std::isspace(static_cast<unsigned char>(ch))) src_ += ch;
    }

    MPoly parse() {
        if (src_.empty()) error("empty polynomial");
        std::vector<MPoly::Term> terms;
        bool first = true;
        while (pos_ < src_.size() || first) {
            Rational sign = 1;
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++pos_;
            } else if (!first) {
                error("expected '+' or '-'");
            }
            first = false;
            auto [m, c] = term();
            terms.emplace_back(std::move(m), c * sign);
        }
        return MPoly::from_terms(std::move(terms));
    }

private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::ParseError, what + " at position " + std::to_string(pos_) + " in '" + src_ + "'");
    }

    std::pair<Monomial, Rational> term() {
        Monomial m;
        Rational c = 1;
        for (;;) {
            char ch = peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                c *= number();
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                std::string name;
                while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name += src_[pos_++];
                std::uint32_t e = 1;
                if (peek() == '^') {
                    ++pos_;
                    std::string digits;
                    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += src_[pos_++];
                    if (digits.empty() || digits.size() > 9) error("bad exponent");
                    e = static_cast<std::uint32_t>(std::stoul(digits));
                }
                m = m * Monomial::var(intern_var(name), e);
            } else {
                error("expected a number or variable");
            }
            if (peek() != '*') break;
            ++pos_;
        }
        return {m, c};
    }

    Rational number() {
        std::string s;
        while (std::isdigit(static_cast<unsigned char>(peek()))) s += src_[pos_++];
        if (peek() == '/') {
            s += src_[pos_++];
            std::size_t before = s.size();
            while (std::isdigit(static_cast<unsigned char>(peek()))) s += src_[pos_++];
            if (s.size() == before) error("expected denominator");
        }
        return parse_rational(s);
    }

    std::string src_;
    std::size_t pos_ = 0;
};
} // namespace

MPoly MPoly::parse(const std::string& s) { return Parser(s).parse(); }

} // namespace wb
