#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "wb/error.hpp"
#include "wb/group/lattice.hpp"

using namespace wb;

namespace {

// Oracles below only use the multiplication table, never the lattice code.

std::set<Perm> close_perms(const std::vector<Perm>& gens) {
    std::set<Perm> out;
    std::size_t n = gens[0].size();
    Perm id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<std::uint8_t>(i);
    out.insert(id);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Perm> cur(out.begin(), out.end());
        for (const auto& a : cur)
            for (const auto& b : gens) {
                Perm c(n);
                for (std::size_t i = 0; i < n; ++i) c[i] = a[b[i]];
                grew |= out.insert(c).second;
            }
    }
    return out;
}

std::vector<Mask> all_subgroups_by_subsets(const FiniteGroup& g) {
    const std::size_t n = g.order();
    std::vector<Mask> out;
    for (Mask s = 1; s < (Mask(1) << n); ++s) {
        if (!(s & 1)) continue;
        bool closed = true;
        for (std::size_t a = 0; a < n && closed; ++a) {
            if (!(s >> a & 1)) continue;
            for (std::size_t b = 0; b < n && closed; ++b)
                if ((s >> b & 1) && !(s >> g.mul(a, b) & 1)) closed = false;
        }
        if (closed) out.push_back(s);
    }
    return out;
}

Mask conj_mask(const FiniteGroup& g, Mask h, std::size_t x) {
    Mask r = 0;
    for (std::size_t e = 0; e < g.order(); ++e)
        if (h >> e & 1) r |= Mask(1) << g.mul(g.mul(g.inv(x), e), x);
    return r;
}

/// Cosets of V as element sets.
std::vector<Mask> left_cosets(const FiniteGroup& g, Mask v) {
    std::set<Mask> cs;
    for (std::size_t x = 0; x < g.order(); ++x) {
        Mask c = 0;
        for (std::size_t e = 0; e < g.order(); ++e)
            if (v >> e & 1) c |= Mask(1) << g.mul(x, e);
        cs.insert(c);
    }
    return {cs.begin(), cs.end()};
}

Mask translate(const FiniteGroup& g, std::size_t u, Mask c) {
    Mask r = 0;
    for (std::size_t e = 0; e < g.order(); ++e)
        if (c >> e & 1) r |= Mask(1) << g.mul(u, e);
    return r;
}

long fixed_cosets(const FiniteGroup& g, Mask u, Mask v) {
    long count = 0;
    for (Mask c : left_cosets(g, v)) {
        bool fixed = true;
        for (std::size_t x = 0; x < g.order(); ++x)
            if ((u >> x & 1) && translate(g, x, c) != c) fixed = false;
        count += fixed;
    }
    return count;
}

std::vector<std::size_t> indices(const GroupTables& t) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.size(); ++i) out.push_back(t.index(i));
    return out;
}

} // namespace

TEST(Group, BuiltinsAndGenerators) {
    EXPECT_EQ(build_group("C2").order(), 2u);
    auto s3 = build_group("S3");
    EXPECT_EQ(s3.order(), 6u);
    EXPECT_EQ(close_perms({parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)}).size(), 6u);
    auto d4 = build_group("[(1 2 3 4),(1 3)]");
    EXPECT_EQ(d4.order(), 8u);
    EXPECT_EQ(close_perms({parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)}).size(), 8u);
    EXPECT_EQ(build_group("D4").order(), 8u);
    EXPECT_EQ(build_group("D2").order(), 4u);
    EXPECT_EQ(build_group("Q8").order(), 8u);
    EXPECT_EQ(build_group("S4").order(), 24u);
    EXPECT_EQ(build_group("A4").order(), 12u);
    EXPECT_FALSE(build_group("S3").is_abelian());
    EXPECT_TRUE(build_group("C6").is_abelian());
    // permutation elements are sorted, identity first
    const auto& perms = s3.permutations();
    EXPECT_TRUE(std::is_sorted(perms.begin(), perms.end()));
    EXPECT_EQ(s3.element_name(0), "()");
}

TEST(Group, Errors) {
    auto kind = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    EXPECT_EQ(kind([] { build_group("X9"); }), ErrorKind::UnknownGroup);
    EXPECT_EQ(kind([] { build_group("C30"); }), ErrorKind::OrderBoundExceeded);
    EXPECT_EQ(kind([] { build_group("[(1 2 3 4 5),(1 2)]"); }), ErrorKind::OrderBoundExceeded);
    EXPECT_EQ(kind([] { build_group("[(1 2"); }), ErrorKind::ParseError);
    // not associative: a Latin square with identity that is not a group
    std::vector<std::vector<std::size_t>> bad = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    EXPECT_EQ(kind([&] { FiniteGroup::from_table("L5", bad); }), ErrorKind::NotAGroup);
    std::vector<std::vector<std::size_t>> z3 = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    EXPECT_EQ(FiniteGroup::from_table("Z3", z3).order(), 3u);
}

TEST(Lattice, ClassCountsAndIndices) {
    auto c2 = GroupTables::resolve("C2");
    EXPECT_EQ(c2->lattice().labels(), (std::vector<std::string>{"G", "E"}));
    auto s3 = GroupTables::resolve("S3");
    EXPECT_EQ(indices(*s3), (std::vector<std::size_t>{1, 2, 3, 6}));
    EXPECT_EQ(s3->lattice().labels(), (std::vector<std::string>{"G", "C3", "C2", "E"}));
    auto d4 = GroupTables::resolve("[(1 2 3 4),(1 3)]");
    EXPECT_EQ(indices(*d4), (std::vector<std::size_t>{1, 2, 2, 2, 4, 4, 4, 8}));
    EXPECT_EQ(GroupTables::resolve("S4")->size(), 11u);
    EXPECT_EQ(GroupTables::resolve("Q8")->size(), 6u);
    EXPECT_EQ(GroupTables::resolve("C12")->size(), 6u);
}

TEST(Lattice, EnumerationMatchesSubsetOracle) {
    for (const char* d : {"C2", "C4", "C6", "S3", "D4", "Q8", "C8", "D2", "A4", "C12", "D6"}) {
        auto t = GroupTables::resolve(d);
        const auto& g = t->group();
        auto subs = all_subgroups_by_subsets(g);
        std::size_t total = 0;
        for (const auto& c : t->lattice().classes()) total += c.conjugates.size();
        EXPECT_EQ(total, subs.size()) << d;
        // oracle conjugacy partition
        std::set<std::set<Mask>> oracle;
        for (Mask h : subs) {
            std::set<Mask> cl;
            for (std::size_t x = 0; x < g.order(); ++x) cl.insert(conj_mask(g, h, x));
            oracle.insert(cl);
        }
        std::set<std::set<Mask>> ours;
        for (const auto& c : t->lattice().classes()) ours.insert(std::set<Mask>(c.conjugates.begin(), c.conjugates.end()));
        EXPECT_EQ(ours, oracle) << d;
    }
}

TEST(Lattice, DeterministicOrdering) {
    auto a = GroupTables::resolve("S4"), b = GroupTables::resolve_uncached("S4");
    EXPECT_EQ(a->lattice().labels(), b->lattice().labels());
    for (std::size_t i = 0; i < a->size(); ++i) EXPECT_EQ(a->cls(i).rep, b->cls(i).rep);
    EXPECT_EQ(a->fingerprint(), b->fingerprint());
    EXPECT_NE(a->fingerprint(), GroupTables::resolve("D4")->fingerprint());
}

TEST(Marks, ExamplesAndTables) {
    auto s3 = GroupTables::resolve("S3");
    EXPECT_EQ(s3->mark(0, 0), 1);
    EXPECT_EQ(s3->mark(3, 3), 6);
    EXPECT_EQ(s3->mark(1, 1), 2);
    const long expected[4][4] = {{1, 1, 1, 1}, {0, 2, 0, 2}, {0, 0, 1, 3}, {0, 0, 0, 6}};
    for (std::size_t v = 0; v < 4; ++v)
        for (std::size_t w = 0; w < 4; ++w) EXPECT_EQ(s3->zeta()(v, w), expected[v][w]) << v << "," << w;

    auto c2 = GroupTables::resolve("C2");
    EXPECT_EQ(c2->zeta()(0, 0), 1);
    EXPECT_EQ(c2->zeta()(0, 1), 1);
    EXPECT_EQ(c2->zeta()(1, 1), 2);
    EXPECT_EQ(c2->mobius()(0, 1), Rational(-1, 2));
    EXPECT_EQ(c2->mobius()(1, 1), Rational(1, 2));
}

TEST(Marks, MatchFixedCosetOracleAndStructure) {
    for (const char* d : {"C2", "C4", "C6", "S3", "D4", "Q8", "A4", "C12", "S4"}) {
        auto t = GroupTables::resolve(d);
        const auto& g = t->group();
        for (std::size_t u = 0; u < t->size(); ++u)
            for (std::size_t v = 0; v < t->size(); ++v) {
                EXPECT_EQ(t->mark(u, v), fixed_cosets(g, t->cls(u).rep, t->cls(v).rep)) << d;
                if (u < v) EXPECT_EQ(t->zeta()(v, u), 0) << d;
                if (t->mark(u, v) != 0) EXPECT_TRUE(t->lattice().subconjugate(u, v)) << d;
            }
        for (std::size_t v = 0; v < t->size(); ++v) {
            // diagonal is the normalizer index, computed here from scratch
            Mask V = t->cls(v).rep;
            std::size_t norm = 0;
            for (std::size_t x = 0; x < g.order(); ++x) norm += conj_mask(g, V, x) == V;
            EXPECT_EQ(t->mark(v, v), long(norm / t->cls(v).order)) << d;
            EXPECT_EQ(t->mark(v, v), long(t->cls(v).normalizer_index)) << d;
        }
        // divisibility: phi_W(G/W) | phi_V(G/W) whenever V <~ W
        for (std::size_t v = 0; v < t->size(); ++v)
            for (std::size_t w = 0; w < t->size(); ++w)
                if (t->lattice().subconjugate(v, w)) EXPECT_TRUE(mpz_divisible_p(t->mark(v, w).get_mpz_t(), t->mark(w, w).get_mpz_t())) << d;
        // zeta * mu = 1
        EXPECT_EQ(t->zeta() * t->mobius(), UniTriMatrix<Rational>::identity(t->lattice().labels())) << d;
    }
}

TEST(DoubleCosets, ExamplesAndOracle) {
    auto s3 = GroupTables::resolve("S3");
    auto top = s3->double_cosets(0, 0);
    ASSERT_EQ(top.size(), 1u);
    EXPECT_EQ(top[0].z_class, 0u);
    auto dc = s3->double_cosets(1, 2);
    ASSERT_EQ(dc.size(), 1u);
    EXPECT_EQ(dc[0].size, 6u);
    EXPECT_EQ(dc[0].z_class, 3u);
    auto c2 = GroupTables::resolve("C2");
    auto ee = c2->double_cosets(1, 1);
    ASSERT_EQ(ee.size(), 2u);
    EXPECT_EQ(ee[0].z_class, 1u);
    EXPECT_EQ(ee[1].z_class, 1u);

    for (const char* d : {"C4", "C6", "S3", "D4", "Q8", "A4", "S4"}) {
        auto t = GroupTables::resolve(d);
        const auto& g = t->group();
        for (std::size_t v = 0; v < t->size(); ++v)
            for (std::size_t w = 0; w < t->size(); ++w) {
                Mask V = t->cls(v).rep, W = t->cls(w).rep;
                // oracle: union-find over x ~ a x b
                std::vector<std::size_t> root(g.order());
                for (std::size_t x = 0; x < g.order(); ++x) root[x] = x;
                std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return root[x] == x ? x : root[x] = find(root[x]); };
                for (std::size_t x = 0; x < g.order(); ++x)
                    for (std::size_t a = 0; a < g.order(); ++a)
                        for (std::size_t b = 0; b < g.order(); ++b)
                            if ((V >> a & 1) && (W >> b & 1)) root[find(g.mul(g.mul(a, x), b))] = find(x);
                std::map<std::size_t, long> per_class;
                std::set<std::size_t> roots;
                for (std::size_t x = 0; x < g.order(); ++x) roots.insert(find(x));
                for (auto r : roots) {
                    Mask z = 0;
                    for (std::size_t e = 0; e < g.order(); ++e)
                        if ((V >> e & 1) && (W >> g.mul(g.mul(g.inv(r), e), r) & 1)) z |= Mask(1) << e;
                    ++per_class[t->lattice().class_of(z)];
                }
                auto ours = t->double_cosets(v, w);
                EXPECT_EQ(ours.size(), roots.size()) << d;
                std::size_t total = 0;
                for (const auto& c : ours) total += c.size;
                EXPECT_EQ(total, g.order()) << d;
                for (std::size_t u = 0; u < t->size(); ++u) {
                    EXPECT_EQ(t->p(v, w, u), per_class[u]) << d;
                    EXPECT_EQ(t->p(v, w, u), t->p(w, v, u)) << d;
                }
            }
    }
}

TEST(StructureConstants, Examples) {
    auto c2 = GroupTables::resolve("C2");
    EXPECT_EQ(c2->p(1, 1, 1), 2);
    EXPECT_EQ(c2->a(1, 1, 1), 1);
    auto s3 = GroupTables::resolve("S3");
    EXPECT_EQ(s3->p(1, 2, 3), 1);
    auto c6 = GroupTables::resolve("C6");  // classes: indices 1,2,3,6
    EXPECT_EQ(c6->index(1), 2u);
    EXPECT_EQ(c6->index(2), 3u);
    EXPECT_EQ(c6->p(1, 2, 3), 1);
    for (std::size_t u = 0; u < 3; ++u) EXPECT_EQ(c6->p(1, 2, u), 0);
}

TEST(StructureConstants, AbelianAperiodicConstantsAreIndicators) {
    for (const char* d : {"C2", "C4", "C6", "C12", "D2", "C8"}) {
        auto t = GroupTables::resolve(d);
        for (std::size_t v = 0; v < t->size(); ++v)
            for (std::size_t w = 0; w < t->size(); ++w) {
                Rational sum = 0;
                Mask inter = t->cls(v).rep & t->cls(w).rep;
                for (std::size_t u = 0; u < t->size(); ++u) {
                    Rational a = t->a(v, w, u);
                    EXPECT_TRUE(a == 0 || a == 1) << d;
                    sum += a;
                    if (a == 1) EXPECT_EQ(t->cls(u).rep, inter) << d;
                }
                EXPECT_EQ(sum, 1) << d;
            }
    }
}

TEST(Restriction, OrbitData) {
    auto s3 = GroupTables::resolve("S3");
    // U = G: one orbit with stabilizer V
    for (std::size_t v = 0; v < 4; ++v) {
        auto r = s3->res_orbit_data(0, v);
        ASSERT_EQ(r.size(), 1u);
        EXPECT_EQ(s3->ind_class_map(0)[r[0].first], v);
        EXPECT_EQ(r[0].second, 1u);
    }
    auto r1 = s3->res_orbit_data(2, 1);  // U=C2 on S3/C3
    ASSERT_EQ(r1.size(), 1u);
    EXPECT_EQ(s3->subgroup_tables(2)->cls(r1[0].first).label, "E");
    EXPECT_EQ(r1[0].second, 1u);
    auto r2 = s3->res_orbit_data(1, 2);  // U=C3 on S3/C2
    ASSERT_EQ(r2.size(), 1u);
    EXPECT_EQ(s3->subgroup_tables(1)->cls(r2[0].first).label, "E");

    // orbit sizes add up to (G:V)
    for (const char* d : {"S3", "D4", "A4", "S4", "C12"}) {
        auto t = GroupTables::resolve(d);
        for (std::size_t u = 0; u < t->size(); ++u) {
            auto sub = t->subgroup_tables(u);
            for (std::size_t v = 0; v < t->size(); ++v) {
                std::size_t total = 0;
                for (auto [w, m] : t->res_orbit_data(u, v)) total += m * sub->index(w);
                EXPECT_EQ(total, t->index(v)) << d;
            }
        }
    }
}

TEST(Induction, ClassFusion) {
    auto s3 = GroupTables::resolve("S3");
    EXPECT_EQ(s3->ind_class_map(0), (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(s3->ind_class_map(2), (std::vector<std::size_t>{2, 3}));
    auto d4 = GroupTables::resolve("D4");
    for (std::size_t u = 0; u < d4->size(); ++u) {
        if (d4->cls(u).label.rfind("V4", 0) != 0) continue;
        const auto& f = d4->ind_class_map(u);
        auto sub = d4->subgroup_tables(u);
        ASSERT_EQ(sub->size(), 5u);  // V4: G, three C2, E
        std::set<std::size_t> c2_images;
        for (std::size_t i = 1; i <= 3; ++i) c2_images.insert(f[i]);
        EXPECT_LE(c2_images.size(), 3u);
        EXPECT_EQ(c2_images.size(), 2u);  // center plus one non-central class
        EXPECT_EQ(f[0], u);
        EXPECT_EQ(f[4], d4->size() - 1);
    }
}

TEST(Resolve, SubgroupDescriptor) {
    auto t = GroupTables::resolve("S3/C2");
    EXPECT_EQ(t->group().order(), 2u);
    EXPECT_EQ(t->group().name(), "S3/C2");
    EXPECT_THROW(GroupTables::resolve("S3/X"), Error);
}
