#include "wb/exact/qpolynomial.hpp"

#include "wb/error.hpp"
#include "wb/exact/format.hpp"

namespace wb {

QPolynomial::QPolynomial(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

QPolynomial::QPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPolynomial QPolynomial::monomial(const Rational& c, std::size_t deg) {
    QPolynomial p;
    if (c == 0) return p;
    p.c_.assign(deg + 1, Rational(0));
    p.c_[deg] = c;
    return p;
}

void QPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPolynomial::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPolynomial QPolynomial::operator-() const {
    QPolynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

QPolynomial& QPolynomial::operator*=(const QPolynomial& o) {
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

QPolynomial& QPolynomial::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

QPolynomial QPolynomial::pow(std::uint64_t e) const {
    QPolynomial base = *this, acc(1);
    while (e) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

QPolynomial QPolynomial::divide_by_q() const {
    if (c_.empty()) return {};
    if (c_[0] != 0) fail(ErrorKind::NonExactDivision, "polynomial " + to_string() + " is not divisible by q");
    return QPolynomial(std::vector<Rational>(c_.begin() + 1, c_.end()));
}

bool QPolynomial::is_integral() const {
    for (const auto& c : c_)
        if (!wb::is_integer(c)) return false;
    return true;
}

std::string QPolynomial::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0) continue;
        std::string mono;
        if (k == 1) mono = var;
        else if (k > 1) mono = var + "^" + std::to_string(k);
        append_term(out, c_[k], mono);
    }
    return out;
}

bool is_numerical(const QPolynomial& p) {
    if (p.is_zero()) return true;
    for (int x = 0; x <= p.degree(); ++x)
        if (!is_integer(p.eval(Rational(x)))) return false;
    return true;
}

} // namespace wb
