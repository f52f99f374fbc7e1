#include "wb/exact/format.hpp"

#include <cctype>

#include "wb/error.hpp"

namespace wb {

std::string rational_to_string(const Rational& r) { return r.get_str(); }

namespace {
bool all_digits(const std::string& s, std::size_t from) {
    if (from >= s.size()) return false;
    for (std::size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}
} // namespace

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    std::size_t start = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? 1 : 0;
    if (!all_digits(num, start) || !all_digits(den, 0)) fail(ErrorKind::ParseError, "not a rational number: '" + s + "'");
    Integer n(num[0] == '+' ? num.substr(1) : num), d(den);
    if (d == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

void append_term(std::string& out, const Rational& coef, const std::string& mono) {
    bool neg = coef < 0;
    Rational mag = neg ? Rational(-coef) : coef;
    if (out.empty()) {
        if (neg) out += '-';
    } else {
        out += neg ? '-' : '+';
    }
    if (mono.empty()) {
        out += rational_to_string(mag);
    } else if (mag == 1) {
        out += mono;
    } else {
        out += rational_to_string(mag);
        out += '*';
        out += mono;
    }
}

} // namespace wb
