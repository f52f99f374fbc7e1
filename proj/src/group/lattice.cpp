#include "wb/group/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "wb/error.hpp"

namespace wb {

namespace {

bool key_less(Mask a, Mask b) { return FiniteGroup::elements_of(a) < FiniteGroup::elements_of(b); }

std::size_t popcount(Mask m) { return static_cast<std::size_t>(__builtin_popcountll(m)); }

/// Isomorphism-type guess used only for labels.
std::string base_label(const FiniteGroup& g, Mask h) {
    const std::size_t k = popcount(h);
    auto el = FiniteGroup::elements_of(h);
    std::size_t involutions = 0, max_order = 1;
    bool abelian = true;
    for (auto a : el) {
        std::size_t o = g.element_order(a);
        max_order = std::max(max_order, o);
        if (o == 2) ++involutions;
        for (auto b : el)
            if (g.mul(a, b) != g.mul(b, a)) abelian = false;
    }
    if (max_order == k) return "C" + std::to_string(k);
    if (abelian) return k == 4 ? "V4" : "Ab" + std::to_string(k);
    if (k == 6) return "S3";
    if (k == 8) return involutions == 1 ? "Q8" : "D4";
    if (k == 12 && involutions == 3 && max_order == 3) return "A4";
    if (k == 12 && involutions == 7) return "D6";
    return "H" + std::to_string(k);
}

} // namespace

SubgroupLattice::SubgroupLattice(const FiniteGroup& g) {
    const std::size_t n = g.order();
    std::vector<Mask> cyclic;
    std::set<Mask> subs;
    for (std::size_t x = 0; x < n; ++x) {
        Mask c = g.closure(Mask(1) << x);
        if (subs.insert(c).second) cyclic.push_back(c);
    }
    // every subgroup is a join of cyclic subgroups; iterate joins to a fixpoint
    std::vector<Mask> frontier(subs.begin(), subs.end());
    while (!frontier.empty()) {
        std::vector<Mask> next;
        for (Mask h : frontier)
            for (Mask c : cyclic) {
                if ((h | c) == h) continue;
                Mask j = g.closure(h | c);
                if (subs.insert(j).second) next.push_back(j);
            }
        frontier = std::move(next);
    }

    std::set<Mask> assigned;
    for (Mask h : subs) {
        if (assigned.count(h)) continue;
        std::set<Mask> conj;
        for (std::size_t x = 0; x < n; ++x) conj.insert(g.conjugate(h, x));
        SubgroupClass c;
        c.conjugates.assign(conj.begin(), conj.end());
        std::sort(c.conjugates.begin(), c.conjugates.end(), key_less);
        c.rep = c.conjugates.front();
        c.order = popcount(h);
        c.index = n / c.order;
        c.normalizer_index = c.index / c.conjugates.size();
        for (Mask m : conj) assigned.insert(m);
        classes_.push_back(std::move(c));
    }
    std::sort(classes_.begin(), classes_.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
        if (a.index != b.index) return a.index < b.index;
        return key_less(a.rep, b.rep);
    });

    std::map<std::string, std::vector<std::size_t>> by_base;
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        std::string base = i == 0 ? "G" : classes_[i].order == 1 ? "E" : base_label(g, classes_[i].rep);
        classes_[i].label = base;
        by_base[base].push_back(i);
    }
    for (auto& [base, ids] : by_base) {
        if (ids.size() < 2) continue;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            std::string suffix;
            std::size_t x = k;
            do {
                suffix.insert(suffix.begin(), static_cast<char>('a' + x % 26));
                x /= 26;
            } while (x > 0);
            classes_[ids[k]].label = base + suffix;
        }
    }

    for (std::size_t i = 0; i < classes_.size(); ++i)
        for (Mask m : classes_[i].conjugates) class_of_[m] = i;

    const std::size_t k = classes_.size();
    sub_.assign(k, std::vector<bool>(k, false));
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v)
            for (Mask m : classes_[v].conjugates)
                if ((classes_[u].rep & m) == classes_[u].rep) {
                    sub_[u][v] = true;
                    break;
                }
}

std::vector<std::string> SubgroupLattice::labels() const {
    std::vector<std::string> out;
    for (const auto& c : classes_) out.push_back(c.label);
    return out;
}

std::size_t SubgroupLattice::class_of(Mask h) const {
    auto it = class_of_.find(h);
    if (it == class_of_.end()) fail(ErrorKind::InvalidArgument, "mask is not a subgroup");
    return it->second;
}

std::size_t SubgroupLattice::find(const std::string& label) const {
    for (std::size_t i = 0; i < classes_.size(); ++i)
        if (classes_[i].label == label) return i;
    fail(ErrorKind::InvalidArgument, "no subgroup class labelled '" + label + "'");
}

// ---- GroupTables ----

GroupTables::GroupTables(FiniteGroup g) : g_(std::move(g)), lat_(g_), abelian_(g_.is_abelian()) {
    const std::size_t k = lat_.size(), n = g_.order();
    marks_.assign(k, std::vector<Integer>(k, 0));
    for (std::size_t v = 0; v < k; ++v) {
        Mask V = lat_[v].rep;
        for (std::size_t u = 0; u < k; ++u) {
            if (!lat_.subconjugate(u, v)) continue;
            Mask U = lat_[u].rep;
            std::size_t count = 0;
            for (std::size_t x = 0; x < n; ++x)
                if ((g_.conjugate(U, x) & V) == g_.conjugate(U, x)) ++count;
            marks_[v][u] = Integer(static_cast<unsigned long>(count / lat_[v].order));
        }
    }
    zeta_ = UniTriMatrix<Rational>(lat_.labels());
    for (std::size_t v = 0; v < k; ++v)
        for (std::size_t w = v; w < k; ++w) zeta_.set(v, w, Rational(marks_[v][w]));
    for (std::size_t v = 0; v < k; ++v)
        for (std::size_t w = 0; w < v; ++w)
            if (marks_[v][w] != 0) fail(ErrorKind::InvalidArgument, "class order is not compatible with subconjugacy");
    mu_ = zeta_.inverse();

    p_.assign(k * k * k, 0);
    p_by_u_.assign(k, {});
    for (std::size_t v = 0; v < k; ++v)
        for (std::size_t w = 0; w < k; ++w)
            for (const auto& dc : double_cosets(v, w)) ++p_[(v * k + w) * k + dc.z_class];
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v)
            for (std::size_t w = 0; w < k; ++w)
                if (long c = p(v, w, u)) p_by_u_[u].push_back({v, w, c});
}

TablesPtr GroupTables::build(FiniteGroup g) { return TablesPtr(new GroupTables(std::move(g))); }

TablesPtr GroupTables::resolve(const std::string& descriptor, std::size_t bound) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::size_t>, TablesPtr> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({descriptor, bound});
        if (it != cache.end()) return it->second;
    }
    auto t = resolve_uncached(descriptor, bound);
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(descriptor, bound), t).first->second;
}

TablesPtr GroupTables::resolve_uncached(const std::string& descriptor, std::size_t bound) {
    int depth = 0;
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < descriptor.size(); ++i) {
        char c = descriptor[i];
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (c == '/' && depth == 0) slash = i;
    }
    if (slash == std::string::npos) return build(build_group(descriptor, bound));
    auto parent = resolve(descriptor.substr(0, slash), bound);
    std::string label = descriptor.substr(slash + 1);
    std::size_t u;
    try {
        u = parent->lattice().find(label);
    } catch (const Error&) {
        fail(ErrorKind::UnknownGroup, "'" + label + "' is not a subgroup class of " + parent->group().name());
    }
    return parent->subgroup_tables(u);
}

Rational GroupTables::a(std::size_t v, std::size_t w, std::size_t u) const {
    Rational r(static_cast<long>(index(u)) * p(v, w, u), static_cast<long>(index(v) * index(w)));
    r.canonicalize();
    return r;
}

std::vector<DoubleCoset> GroupTables::double_cosets(std::size_t v, std::size_t w) const {
    const std::size_t n = g_.order();
    Mask V = lat_[v].rep, W = lat_[w].rep;
    auto ve = FiniteGroup::elements_of(V), we = FiniteGroup::elements_of(W);
    Mask covered = 0;
    std::vector<DoubleCoset> out;
    for (std::size_t x = 0; x < n; ++x) {
        if (covered >> x & 1) continue;
        Mask d = 0;
        for (auto a : ve)
            for (auto b : we) d |= Mask(1) << g_.mul(g_.mul(a, x), b);
        covered |= d;
        Mask z = V & g_.conjugate(W, g_.inv(x));
        out.push_back({x, lat_.class_of(z), static_cast<std::size_t>(__builtin_popcountll(d))});
    }
    return out;
}

TablesPtr GroupTables::subgroup_tables(std::size_t u) const {
    std::lock_guard lock(sub_mu_);
    auto it = sub_.find(u);
    if (it != sub_.end()) return it->second;
    std::string name = g_.name() + "/" + lat_[u].label;
    auto t = build(g_.subgroup(lat_[u].rep, name));
    auto el = FiniteGroup::elements_of(lat_[u].rep);
    std::vector<std::size_t> fusion;
    for (const auto& c : t->lattice().classes()) {
        Mask m = 0;
        for (auto local : FiniteGroup::elements_of(c.rep)) m |= Mask(1) << el[local];
        fusion.push_back(lat_.class_of(m));
    }
    fusion_[u] = std::move(fusion);
    sub_[u] = t;
    return t;
}

const std::vector<std::size_t>& GroupTables::ind_class_map(std::size_t u) const {
    subgroup_tables(u);
    std::lock_guard lock(sub_mu_);
    return fusion_.at(u);
}

std::vector<std::pair<std::size_t, std::size_t>> GroupTables::res_orbit_data(std::size_t u, std::size_t v) const {
    auto sub = subgroup_tables(u);
    const std::size_t n = g_.order();
    Mask U = lat_[u].rep, V = lat_[v].rep;
    auto ue = FiniteGroup::elements_of(U);
    std::vector<std::size_t> local(n, n);
    for (std::size_t i = 0; i < ue.size(); ++i) local[ue[i]] = i;

    auto coset = [&](std::size_t x) {
        Mask c = 0;
        for (auto b : FiniteGroup::elements_of(V)) c |= Mask(1) << g_.mul(x, b);
        return c;
    };
    Mask seen = 0;  // union of cosets already in some orbit
    std::map<std::size_t, std::size_t> mult;
    for (std::size_t x = 0; x < n; ++x) {
        if (seen >> x & 1) continue;
        for (auto a : ue) seen |= coset(g_.mul(a, x));
        Mask stab = U & g_.conjugate(V, g_.inv(x));
        Mask lm = 0;
        for (auto e : FiniteGroup::elements_of(stab)) lm |= Mask(1) << local[e];
        ++mult[sub->lattice().class_of(lm)];
    }
    return {mult.begin(), mult.end()};
}

std::string GroupTables::fingerprint() const {
    std::string s = g_.name();
    for (const auto& c : lat_.classes()) s += "|" + c.label + ":" + std::to_string(c.index);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace wb
