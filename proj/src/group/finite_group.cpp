#include "wb/group/finite_group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

#include "wb/error.hpp"

namespace wb {

namespace {
Perm compose(const Perm& a, const Perm& b) {  // a after b
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm identity_perm(std::size_t n) {
    Perm p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(i);
    return p;
}

void check_bound(std::size_t bound) {
    if (bound > 64) fail(ErrorKind::InvalidArgument, "order bound above 64 is not supported");
}
} // namespace

FiniteGroup FiniteGroup::from_table(std::string name, const std::vector<std::vector<std::size_t>>& t, std::size_t bound) {
    check_bound(bound);
    const std::size_t n = t.size();
    if (n == 0) fail(ErrorKind::NotAGroup, "empty table");
    if (n > bound) fail(ErrorKind::OrderBoundExceeded, "order " + std::to_string(n) + " exceeds bound " + std::to_string(bound));
    for (const auto& row : t) {
        if (row.size() != n) fail(ErrorKind::NotAGroup, "table is not square");
        for (auto x : row)
            if (x >= n) fail(ErrorKind::NotAGroup, "product outside the element set");
    }
    std::size_t e = n;
    for (std::size_t i = 0; i < n && e == n; ++i) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) ok = t[i][x] == x && t[x][i] == x;
        if (ok) e = i;
    }
    if (e == n) fail(ErrorKind::NotAGroup, "no identity element");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (t[t[a][b]][c] != t[a][t[b][c]]) fail(ErrorKind::NotAGroup, "multiplication is not associative");
    // relabel so that the identity comes first, others keep their order
    std::vector<std::size_t> order{e}, pos(n);
    for (std::size_t i = 0; i < n; ++i)
        if (i != e) order.push_back(i);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    FiniteGroup g;
    g.name_ = std::move(name);
    g.mul_.assign(n, std::vector<std::size_t>(n));
    g.inv_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g.mul_[a][b] = pos[t[order[a]][order[b]]];
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (g.mul_[a][b] == 0 && g.mul_[b][a] == 0) g.inv_[a] = b;
    for (auto x : g.inv_)
        if (x == n) fail(ErrorKind::NotAGroup, "missing inverse");
    return g;
}

FiniteGroup FiniteGroup::from_generators(std::string name, const std::vector<Perm>& gens, std::size_t bound) {
    check_bound(bound);
    std::size_t deg = gens.empty() ? 1 : gens[0].size();
    for (const auto& p : gens) {
        if (p.size() != deg) fail(ErrorKind::NotAGroup, "generators act on different point sets");
        Perm s = p;
        std::sort(s.begin(), s.end());
        if (s != identity_perm(deg)) fail(ErrorKind::NotAGroup, "generator is not a permutation");
    }
    std::vector<Perm> elems{identity_perm(deg)};
    std::map<Perm, std::size_t> seen{{elems[0], 0}};
    for (std::size_t k = 0; k < elems.size(); ++k) {
        for (const auto& s : gens) {
            Perm p = compose(elems[k], s);
            if (seen.count(p)) continue;
            if (elems.size() + 1 > bound)
                fail(ErrorKind::OrderBoundExceeded, "group '" + name + "' has order above the bound " + std::to_string(bound));
            seen.emplace(p, elems.size());
            elems.push_back(std::move(p));
        }
    }
    std::sort(elems.begin(), elems.end());
    std::map<Perm, std::size_t> idx;
    for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = i;
    FiniteGroup g;
    g.name_ = std::move(name);
    const std::size_t n = elems.size();
    g.mul_.assign(n, std::vector<std::size_t>(n));
    g.inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            g.mul_[a][b] = idx.at(compose(elems[a], elems[b]));
            if (g.mul_[a][b] == 0) g.inv_[a] = b;
        }
    g.perms_ = std::move(elems);
    return g;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
    std::size_t k = 1, x = a;
    while (x != 0) x = mul_[x][a], ++k;
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
        for (std::size_t b = a + 1; b < order(); ++b)
            if (mul_[a][b] != mul_[b][a]) return false;
    return true;
}

std::string FiniteGroup::element_name(std::size_t i) const {
    if (perms_.empty()) return "g" + std::to_string(i);
    const Perm& p = perms_[i];
    std::vector<bool> done(p.size(), false);
    std::string s;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (done[a] || p[a] == a) continue;
        s += '(';
        std::size_t x = a;
        bool first = true;
        while (!done[x]) {
            done[x] = true;
            if (!first) s += ' ';
            s += std::to_string(x + 1);
            first = false;
            x = p[x];
        }
        s += ')';
    }
    return s.empty() ? "()" : s;
}

std::vector<std::size_t> FiniteGroup::elements_of(Mask h) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; h; ++i, h >>= 1)
        if (h & 1) out.push_back(i);
    return out;
}

Mask FiniteGroup::closure(Mask gens) const {
    Mask h = gens | 1;
    for (;;) {
        Mask next = h;
        auto el = elements_of(h);
        for (auto a : el)
            for (auto b : el) next |= Mask(1) << mul_[a][b];
        if (next == h) return h;
        h = next;
    }
}

Mask FiniteGroup::conjugate(Mask h, std::size_t g) const {
    Mask r = 0;
    for (auto x : elements_of(h)) r |= Mask(1) << conj(x, g);
    return r;
}

bool FiniteGroup::is_subgroup(Mask h) const { return (h & 1) && closure(h) == h; }

FiniteGroup FiniteGroup::subgroup(Mask h, std::string name) const {
    if (!is_subgroup(h)) fail(ErrorKind::InvalidArgument, "mask is not a subgroup");
    auto el = elements_of(h);
    if (!perms_.empty()) {
        std::vector<Perm> gens;
        for (auto x : el) gens.push_back(perms_[x]);
        return from_generators(std::move(name), gens, 64);
    }
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < el.size(); ++i) pos[el[i]] = i;
    std::vector<std::vector<std::size_t>> t(el.size(), std::vector<std::size_t>(el.size()));
    for (std::size_t a = 0; a < el.size(); ++a)
        for (std::size_t b = 0; b < el.size(); ++b) t[a][b] = pos.at(mul_[el[a]][el[b]]);
    return from_table(std::move(name), t, 64);
}

// ---- builtins ----

Perm parse_cycles(const std::string& text, std::size_t degree) {
    std::vector<std::vector<std::size_t>> cycles;
    std::size_t maxpt = 0, i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    while (i < text.size()) {
        if (text[i] != '(') fail(ErrorKind::ParseError, "expected '(' in cycle notation '" + text + "'");
        ++i;
        std::vector<std::size_t> cyc;
        for (;;) {
            while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
            if (i >= text.size()) fail(ErrorKind::ParseError, "unterminated cycle in '" + text + "'");
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail(ErrorKind::ParseError, "bad point in '" + text + "'");
            std::size_t v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
                if (v > 255) fail(ErrorKind::ParseError, "point out of range in '" + text + "'");
            }
            if (v == 0) fail(ErrorKind::ParseError, "points are 1-based in '" + text + "'");
            cyc.push_back(v - 1);
            maxpt = std::max(maxpt, v);
        }
        cycles.push_back(std::move(cyc));
        skip();
    }
    if (degree == 0) degree = std::max<std::size_t>(maxpt, 1);
    if (maxpt > degree) fail(ErrorKind::ParseError, "point beyond degree in '" + text + "'");
    Perm p = identity_perm(degree);
    // product of cycles, rightmost applied first
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
        const auto& c = *it;
        std::vector<bool> used(degree, false);
        for (auto x : c) {
            if (used[x]) fail(ErrorKind::ParseError, "repeated point in a cycle of '" + text + "'");
            used[x] = true;
        }
        Perm cp = identity_perm(degree);
        for (std::size_t k = 0; k < c.size(); ++k) cp[c[k]] = static_cast<std::uint8_t>(c[(k + 1) % c.size()]);
        p = compose(cp, p);
    }
    return p;
}

namespace {
Perm cycle_perm(std::size_t n) {
    Perm p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>((i + 1) % n);
    return p;
}

FiniteGroup quaternion(std::size_t bound) {
    // elements: sign*unit, index = 4*(sign<0) + unit, unit in {1,i,j,k}
    static const int unit_mul[4][4][2] = {
        {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
        {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
        {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
        {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
    };
    auto mul = [&](std::size_t a, std::size_t b) {
        int sa = a >= 4 ? -1 : 1, sb = b >= 4 ? -1 : 1;
        const int* r = unit_mul[a % 4][b % 4];
        int s = sa * sb * r[0];
        return static_cast<std::size_t>((s < 0 ? 4 : 0) + r[1]);
    };
    std::vector<Perm> gens;
    for (std::size_t x : {1u, 2u}) {
        Perm p(8);
        for (std::size_t y = 0; y < 8; ++y) p[y] = static_cast<std::uint8_t>(mul(x, y));
        gens.push_back(p);
    }
    return FiniteGroup::from_generators("Q8", gens, bound);
}

std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}
} // namespace

FiniteGroup build_group(const std::string& raw, std::size_t bound) {
    check_bound(bound);
    auto b = raw.find_first_not_of(" \t\n");
    std::string d = b == std::string::npos ? "" : raw.substr(b, raw.find_last_not_of(" \t\n") - b + 1);
    if (d.empty()) fail(ErrorKind::UnknownGroup, "empty group descriptor");

    if (d.front() == '[') {
        if (d.back() != ']') fail(ErrorKind::ParseError, "unbalanced brackets in '" + raw + "'");
        std::string inner = d.substr(1, d.size() - 2);
        std::vector<std::string> parts = split_top_level(inner);
        std::size_t degree = 1;
        for (const auto& p : parts) degree = std::max(degree, parse_cycles(p).size());
        std::vector<Perm> gens;
        for (const auto& p : parts) gens.push_back(parse_cycles(p, degree));
        return FiniteGroup::from_generators(d, gens, bound);
    }

    static const std::regex builtin(R"(([CDS])([0-9]{1,3}))");
    std::smatch m;
    if (std::regex_match(d, m, builtin)) {
        std::size_t n = std::stoul(m[2]);
        char kind = m[1].str()[0];
        if (n == 0) fail(ErrorKind::UnknownGroup, "unknown group '" + raw + "'");
        if (kind == 'C') {
            if (n > bound) fail(ErrorKind::OrderBoundExceeded, "C" + std::to_string(n) + " exceeds the order bound");
            return FiniteGroup::from_generators(d, {cycle_perm(n)}, bound);
        }
        if (kind == 'D') {
            if (2 * n > bound) fail(ErrorKind::OrderBoundExceeded, d + " exceeds the order bound");
            if (n == 1) return FiniteGroup::from_generators(d, {cycle_perm(2)}, bound);
            if (n == 2) return FiniteGroup::from_generators(d, {parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)}, bound);
            Perm refl(n);
            for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<std::uint8_t>((n - i) % n);
            return FiniteGroup::from_generators(d, {cycle_perm(n), refl}, bound);
        }
        if (n > 4) fail(ErrorKind::UnknownGroup, "symmetric groups are builtin only up to S4");
        if (n == 1) return FiniteGroup::from_generators(d, {identity_perm(1)}, bound);
        Perm swap = identity_perm(n);
        std::swap(swap[0], swap[1]);
        return FiniteGroup::from_generators(d, {swap, cycle_perm(n)}, bound);
    }
    if (d == "Q8") return quaternion(bound);
    if (d == "A4") return FiniteGroup::from_generators("A4", {parse_cycles("(1 2 3)", 4), parse_cycles("(1 2)(3 4)", 4)}, bound);
    fail(ErrorKind::UnknownGroup, "unknown group '" + raw + "'");
}

} // namespace wb
