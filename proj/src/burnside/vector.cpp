#include "wb/burnside/vector.hpp"

#include <algorithm>
#include <cctype>

#include "wb/error.hpp"

namespace wb {

std::string to_string(Flavor f) {
    switch (f) {
    case Flavor::Witt: return "Witt";
    case Flavor::Necklace: return "Necklace";
    case Flavor::Aperiodic: return "Aperiodic";
    case Flavor::Ghost: return "Ghost";
    }
    return "?";
}

Flavor parse_flavor(const std::string& s) {
    std::string l = s;
    std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
    if (l == "w" || l == "witt") return Flavor::Witt;
    if (l == "nr" || l == "necklace") return Flavor::Necklace;
    if (l == "ap" || l == "aperiodic") return Flavor::Aperiodic;
    if (l == "gh" || l == "ghost") return Flavor::Ghost;
    fail(ErrorKind::ParseError, "unknown flavor '" + s + "'");
}

std::string to_string(Rep r) {
    switch (r) {
    case Rep::Direct: return "direct";
    case Rep::Rationalized: return "rationalized";
    case Rep::Lifted: return "lifted";
    }
    return "?";
}

Rep parse_rep(const std::string& s) {
    if (s == "direct") return Rep::Direct;
    if (s == "rationalized") return Rep::Rationalized;
    if (s == "lifted") return Rep::Lifted;
    fail(ErrorKind::ParseError, "unknown representation '" + s + "'");
}

RingPtr storage_ring(const RingPtr& r, Rep rep) {
    switch (rep) {
    case Rep::Direct: return r;
    case Rep::Rationalized:
        if (r->kind() != RingSpec::Kind::MultiPoly || r->is_q_algebra())
            fail(ErrorKind::InvalidArgument, "rationalized vectors need an integral polynomial ring");
        return r->rationalization();
    case Rep::Lifted:
        if (r->kind() != RingSpec::Kind::Residue) fail(ErrorKind::InvalidArgument, "lifted vectors need a residue ring");
        return r->cover();
    }
    return r;
}

IndexedVector::IndexedVector(TablesPtr g, Flavor f, RingPtr r, std::vector<RingValue> c, Rep rp)
    : group(std::move(g)), flavor(f), ring(std::move(r)), rep(rp), comps(std::move(c)) {
    if (comps.size() != group->size())
        fail(ErrorKind::SchemaMismatch, "expected " + std::to_string(group->size()) + " components, got " +
                                            std::to_string(comps.size()));
    if ((flavor == Flavor::Witt || flavor == Flavor::Ghost) && rep != Rep::Direct)
        fail(ErrorKind::InvalidArgument, to_string(flavor) + " vectors are always direct");
    RingPtr s = wb::storage_ring(ring, rep);
    for (const auto& v : comps)
        if (!same_ring(v.ring(), s)) fail(ErrorKind::RingMismatch, "component in " + v.ring()->to_string() + ", expected " + s->to_string());
}

IndexedVector IndexedVector::zero(TablesPtr g, Flavor f, RingPtr r) {
    std::size_t n = g->size();
    return IndexedVector(std::move(g), f, r, std::vector<RingValue>(n, RingValue::zero(r)));
}

IndexedVector IndexedVector::one(TablesPtr g, Flavor f, RingPtr r) {
    std::size_t n = g->size();
    std::vector<RingValue> c(n, RingValue::zero(r));
    if (f == Flavor::Ghost) std::fill(c.begin(), c.end(), RingValue::one(r));
    else c[0] = RingValue::one(r);
    return IndexedVector(std::move(g), f, r, std::move(c));
}

IndexedVector IndexedVector::parse(TablesPtr g, Flavor f, RingPtr r, const std::vector<std::string>& comps, Rep rep) {
    RingPtr s = wb::storage_ring(r, rep);
    std::vector<RingValue> c;
    for (const auto& t : comps) c.push_back(RingValue::parse(s, t));
    return IndexedVector(std::move(g), f, std::move(r), std::move(c), rep);
}

RingPtr IndexedVector::storage_ring() const { return wb::storage_ring(ring, rep); }

std::vector<std::string> IndexedVector::to_strings() const {
    std::vector<std::string> out;
    for (const auto& c : comps) out.push_back(c.to_string());
    return out;
}

bool operator==(const IndexedVector& a, const IndexedVector& b) {
    return a.group == b.group && a.flavor == b.flavor && same_ring(a.ring, b.ring) && a.rep == b.rep && a.comps == b.comps;
}

std::string to_string(const IndexedVector& v) {
    std::string s = to_string(v.flavor) + "[" + v.ring->to_string();
    if (v.rep != Rep::Direct) s += "," + to_string(v.rep);
    s += "](";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v.group->cls(i).label + ": " + v.comps[i].to_string();
    }
    return s + ")";
}

} // namespace wb
