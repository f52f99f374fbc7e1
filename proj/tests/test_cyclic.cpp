#include <gtest/gtest.h>

#include <functional>

#include "wb/burnside/burnside.hpp"
#include "wb/cyclic/cyclic.hpp"
#include "wb/error.hpp"
#include "wb/verify/sample.hpp"

using namespace wb;

namespace {

RingPtr ZZ() { return RingSpec::integers(); }
RingPtr QQ() { return RingSpec::rationals(); }

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidArgument;
}

TruncationSet upto(std::uint64_t n) {
    std::vector<std::uint64_t> m;
    for (std::uint64_t i = 1; i <= n; ++i) m.push_back(i);
    return TruncationSet::from_members(m);
}

CyclicVector cvec(const TruncationSet& t, Flavor f, const std::string& ring, std::vector<std::string> c) {
    return CyclicVector::parse(t, f, RingSpec::parse(ring), c);
}

CyclicVector random(Sampler& s, const TruncationSet& t, Flavor f, const RingPtr& r) {
    std::vector<RingValue> c;
    for (std::size_t i = 0; i < t.size(); ++i) c.push_back(s.value(r));
    return CyclicVector(t, f, r, std::move(c));
}

/// Number of primitive words of length n over k letters, up to rotation.
long count_aperiodic_necklaces(long k, long n) {
    long words = 1;
    for (long i = 0; i < n; ++i) words *= k;
    long primitive = 0;
    std::vector<long> w(static_cast<std::size_t>(n));
    for (long code = 0; code < words; ++code) {
        long c = code;
        for (long i = 0; i < n; ++i, c /= k) w[static_cast<std::size_t>(i)] = c % k;
        bool prim = true;
        for (long p = 1; p < n && prim; ++p) {
            if (n % p) continue;
            bool periodic = true;
            for (long i = 0; i < n; ++i)
                if (w[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>((i + p) % n)]) periodic = false;
            if (periodic) prim = false;
        }
        primitive += prim;
    }
    return primitive / n;
}

std::vector<Rational> plain_witt_ghost(const TruncationSet& t, const std::vector<Rational>& a) {
    std::vector<Rational> g;
    for (auto n : t.members()) {
        Rational acc = 0;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (n % t[i] == 0) acc += Rational(Integer(t[i])) * ipow(a[i], n / t[i]);
        g.push_back(acc);
    }
    return g;
}

std::vector<Rational> rationals(const CyclicVector& v) {
    std::vector<Rational> out;
    for (const auto& c : v.comps) out.push_back(c.cast(QQ()).scalar());
    return out;
}

RingValue Zv(long v) { return RingValue(ZZ(), v); }

} // namespace

TEST(Truncation, Validation) {
    EXPECT_EQ(TruncationSet::divisors_of(12).to_string(), "1,2,3,4,6,12");
    EXPECT_EQ(TruncationSet::parse("4, 2,1").to_string(), "1,2,4");
    EXPECT_EQ(kind_of([] { TruncationSet::parse("1,4"); }), ErrorKind::InvalidTruncation);
    EXPECT_EQ(kind_of([] { TruncationSet::parse("2"); }), ErrorKind::InvalidTruncation);
    EXPECT_EQ(kind_of([] { TruncationSet::parse("1,x"); }), ErrorKind::ParseError);
    EXPECT_EQ(TruncationSet::divisors_of(12).divided_by(2).to_string(), "1,2,3,6");
    EXPECT_EQ(upto(6).divided_by(2).to_string(), "1,2,3");
    EXPECT_EQ(kind_of([] { TruncationSet::parse("1,2").divided_by(3); }), ErrorKind::TruncationTooSmall);
}

TEST(CyclicUniversal, DegreeTwo) {
    auto t = TruncationSet::parse("1,2");
    EXPECT_EQ(cyc_universal(t, Op::Sum)[1], MPoly::parse("a_2+b_2-a_1*b_1"));
    EXPECT_EQ(cyc_universal(t, Op::Prod)[1], MPoly::parse("a_1^2*b_2+a_2*b_1^2+2*a_2*b_2"));
    EXPECT_EQ(cyc_universal(t, Op::Neg)[1], MPoly::parse("-a_2-a_1^2"));
}

TEST(CyclicUniversal, IntegralOnDiv12) {
    auto t = TruncationSet::divisors_of(12);
    for (Op op : {Op::Sum, Op::Prod, Op::Neg})
        for (const auto& p : cyc_universal(t, op)) EXPECT_TRUE(p.is_integral());
    for (std::uint64_t r : {2, 3, 4, 6, 12})
        for (const auto& p : cyc_frobenius_universal(t, r)) EXPECT_TRUE(p.is_integral());
    // F_2 on (a_1, a_2): a_1^2 + 2 a_2
    EXPECT_EQ(cyc_frobenius_universal(TruncationSet::parse("1,2"), 2)[0], MPoly::parse("a_1^2+2*a_2"));
}

TEST(CyclicWitt, OpsMatchGhostOracle) {
    Sampler s(11);
    auto t = upto(8);
    for (int i = 0; i < 20; ++i) {
        auto a = random(s, t, Flavor::Witt, ZZ());
        auto b = random(s, t, Flavor::Witt, ZZ());
        auto ga = plain_witt_ghost(t, rationals(a)), gb = plain_witt_ghost(t, rationals(b));
        auto gs = plain_witt_ghost(t, rationals(cyc_add(a, b)));
        auto gp = plain_witt_ghost(t, rationals(cyc_mul(a, b)));
        auto gn = plain_witt_ghost(t, rationals(cyc_neg(a)));
        for (std::size_t k = 0; k < t.size(); ++k) {
            EXPECT_EQ(gs[k], ga[k] + gb[k]);
            EXPECT_EQ(gp[k], ga[k] * gb[k]);
            EXPECT_EQ(gn[k], -ga[k]);
        }
        EXPECT_EQ(rationals(cyc_witt_ghost(a)), ga);
        EXPECT_EQ(cyc_witt_ghost_inv(cyc_witt_ghost(a)), a);
    }
}

TEST(CyclicWitt, PolynomialRingsAgreeWithUniversal) {
    auto r = RingSpec::parse("ZPoly(x,y)");
    auto t = TruncationSet::parse("1,2,3,4,6");
    Sampler s(3);
    for (int i = 0; i < 5; ++i) {
        auto a = random(s, t, Flavor::Witt, r), b = random(s, t, Flavor::Witt, r);
        std::vector<std::pair<VarId, RingValue>> bind;
        for (std::size_t k = 0; k < t.size(); ++k) {
            bind.emplace_back(universal_var('a', std::to_string(t[k])), a.comps[k]);
            bind.emplace_back(universal_var('b', std::to_string(t[k])), b.comps[k]);
        }
        auto p = cyc_mul(a, b);
        for (std::size_t k = 0; k < t.size(); ++k) EXPECT_EQ(p.comps[k], evaluate(cyc_universal(t, Op::Prod)[k], r, bind));
    }
}

TEST(NecklacePoly, CountsAperiodicNecklaces) {
    const long expected[] = {2, 1, 2, 3, 6, 9};
    for (long n = 1; n <= 6; ++n) {
        EXPECT_EQ(necklace_poly(Zv(2), n), Zv(expected[n - 1]));
        EXPECT_EQ(count_aperiodic_necklaces(2, n), expected[n - 1]);
    }
    for (long k = 1; k <= 4; ++k)
        for (long n = 1; n <= 6; ++n) EXPECT_EQ(necklace_poly(Zv(k), n), Zv(count_aperiodic_necklaces(k, n)));
    EXPECT_EQ(necklace_poly(Zv(4), 2), Zv(6));
    EXPECT_EQ(aperiodic_poly(Zv(2), 2), Zv(2));
    EXPECT_EQ(aperiodic_poly(Zv(4), 2), Zv(12));
    auto half = RingValue(QQ(), Rational(1, 2));
    EXPECT_EQ(necklace_poly(half, 2), RingValue(QQ(), Rational(-1, 8)));
    EXPECT_EQ(kind_of([] { necklace_poly(RingValue(RingSpec::parse("Z/8"), 3), 2); }), ErrorKind::NotBinomial);
    EXPECT_EQ(aperiodic_poly(RingValue(RingSpec::parse("Z/8"), 3), 2), RingValue(RingSpec::parse("Z/8"), 6));
}

TEST(NecklacePoly, ProductIdentities) {
    auto t = upto(12);
    auto seq = [&](long r, Flavor f) {
        std::vector<RingValue> c;
        for (auto n : t.members()) c.push_back(f == Flavor::Necklace ? necklace_poly(Zv(r), n) : aperiodic_poly(Zv(r), n));
        return CyclicVector(t, f, ZZ(), std::move(c));
    };
    for (long r = -3; r <= 3; ++r)
        for (long s = -3; s <= 3; ++s) {
            EXPECT_EQ(cyc_mul(seq(r, Flavor::Necklace), seq(s, Flavor::Necklace)), seq(r * s, Flavor::Necklace)) << r << "," << s;
            EXPECT_EQ(cyc_mul(seq(r, Flavor::Aperiodic), seq(s, Flavor::Aperiodic)), seq(r * s, Flavor::Aperiodic)) << r << "," << s;
        }
}

TEST(CyclicGhosts, ExamplesAndInverses) {
    auto t = TruncationSet::divisors_of(4);
    auto x = cvec(t, Flavor::Necklace, "Z", {"1", "2", "3"});
    EXPECT_EQ(cyc_nr_ghost(x).to_strings(), (std::vector<std::string>{"1", "5", "17"}));
    auto y = cvec(t, Flavor::Aperiodic, "Z", {"1", "2", "3"});
    EXPECT_EQ(cyc_ap_ghost(y).to_strings(), (std::vector<std::string>{"1", "3", "6"}));
    EXPECT_EQ(cyc_nr_ghost_inv(cyc_nr_ghost(x)), x);
    EXPECT_EQ(cyc_ap_ghost_inv(cyc_ap_ghost(y)), y);
    EXPECT_EQ(kind_of([&] { cyc_nr_ghost_inv(cvec(t, Flavor::Ghost, "Z", {"1", "2", "3"})); }), ErrorKind::NotInImage);
    EXPECT_EQ(cyc_nr_ghost_inv(cvec(t, Flavor::Ghost, "Q", {"1", "2", "3"})).to_strings(),
              (std::vector<std::string>{"1", "1/2", "1/4"}));
}

TEST(CyclicGhosts, ProductFormulas) {
    // the Moebius-inverted ghost products are the lcm convolutions
    Sampler s(5);
    auto t = upto(12);
    for (int i = 0; i < 30; ++i) {
        auto a = random(s, t, Flavor::Ghost, QQ()), b = random(s, t, Flavor::Ghost, QQ());
        EXPECT_EQ(cyc_nr_ghost_inv(cyc_mul(a, b)), cyc_mul(cyc_nr_ghost_inv(a), cyc_nr_ghost_inv(b)));
        auto az = random(s, t, Flavor::Ghost, ZZ()), bz = random(s, t, Flavor::Ghost, ZZ());
        EXPECT_EQ(cyc_ap_ghost_inv(cyc_mul(az, bz)), cyc_mul(cyc_ap_ghost_inv(az), cyc_ap_ghost_inv(bz)));
        auto x = random(s, t, Flavor::Necklace, ZZ()), y = random(s, t, Flavor::Necklace, ZZ());
        EXPECT_EQ(cyc_theta(cyc_mul(x, y)), cyc_mul(cyc_theta(x), cyc_theta(y)));
        EXPECT_EQ(cyc_ghost(cyc_theta(x)), cyc_ghost(x));
        EXPECT_EQ(cyc_theta_inv(cyc_theta(x)), x);
    }
    EXPECT_EQ(kind_of([&] { cyc_theta_inv(cvec(TruncationSet::parse("1,2"), Flavor::Aperiodic, "Z", {"1", "1"})); }),
              ErrorKind::NotInvertibleIndex);
}

TEST(CyclicShift, FrobeniusAndVerschiebung) {
    auto t = TruncationSet::divisors_of(4);
    auto x = cvec(t, Flavor::Necklace, "Z", {"5", "7", "11"});
    EXPECT_EQ(cyc_verschiebung(2, x).to_strings(), (std::vector<std::string>{"0", "5", "7"}));
    EXPECT_EQ(cyc_frobenius(2, x).trunc.to_string(), "1,2");
    EXPECT_EQ(kind_of([&] { cyc_frobenius(3, x); }), ErrorKind::TruncationTooSmall);

    Sampler s(9);
    auto big = upto(12);
    for (Flavor f : {Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic, Flavor::Ghost})
        for (std::uint64_t r : {1, 2, 3, 4, 6}) {
            for (int i = 0; i < 5; ++i) {
                auto a = random(s, big, f, ZZ()), b = random(s, big, f, ZZ());
                auto ga = cyc_ghost(a);
                auto fa = cyc_frobenius(r, a);
                for (auto n : fa.trunc.members()) EXPECT_EQ(cyc_ghost(fa).at(n), ga.at(r * n));
                auto va = cyc_verschiebung(r, a);
                for (auto n : big.members())
                    EXPECT_EQ(cyc_ghost(va).at(n), n % r ? Zv(0) : ga.at(n / r).scaled(Integer(r)));
                EXPECT_EQ(cyc_frobenius(r, cyc_add(a, b)), cyc_add(fa, cyc_frobenius(r, b)));
                EXPECT_EQ(cyc_frobenius(r, cyc_mul(a, b)), cyc_mul(fa, cyc_frobenius(r, b)));
            }
        }
}

TEST(CyclicShift, ResidueFrobeniusIsReducedIntegerFrobenius) {
    auto z8 = RingSpec::parse("Z/8");
    auto t = TruncationSet::divisors_of(12);
    Sampler s(13);
    for (Flavor f : {Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic})
        for (int i = 0; i < 5; ++i) {
            auto a = random(s, t, f, ZZ());
            auto a8 = CyclicVector(t, f, z8, [&] {
                std::vector<RingValue> c;
                for (auto& v : a.comps) c.push_back(v.cast(z8));
                return c;
            }());
            for (std::uint64_t r : {2, 3}) {
                auto fz = cyc_frobenius(r, a);
                auto f8 = cyc_frobenius(r, a8);
                for (std::size_t k = 0; k < fz.size(); ++k) EXPECT_EQ(fz.comps[k].cast(z8), f8.comps[k]);
            }
        }
}

// ---- agreement with the Burnside ring of C_N ----

namespace {

IndexedVector to_burnside(const TablesPtr& g, const CyclicVector& x) {
    std::vector<RingValue> c(g->size());
    for (std::size_t u = 0; u < g->size(); ++u) c[u] = x.at(g->index(u));
    return IndexedVector(g, x.flavor, x.ring, std::move(c));
}

std::size_t class_of_index(const TablesPtr& g, std::uint64_t r) {
    for (std::size_t u = 0; u < g->size(); ++u)
        if (g->index(u) == r) return u;
    ADD_FAILURE() << "no subgroup of index " << r;
    return 0;
}

} // namespace

TEST(CrossModel, MatchesBurnsideOnCyclicGroups) {
    Sampler s(17);
    for (std::uint64_t N : {2, 4, 6, 12}) {
        auto g = GroupTables::resolve("C" + std::to_string(N));
        auto t = TruncationSet::divisors_of(N);
        for (const char* ring : {"Z", "Q", "Z/8"}) {
            auto r = RingSpec::parse(ring);
            for (Flavor f : {Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic, Flavor::Ghost})
                for (int i = 0; i < 4; ++i) {
                    auto a = random(s, t, f, r), b = random(s, t, f, r);
                    auto A = to_burnside(g, a), B = to_burnside(g, b);
                    EXPECT_EQ(to_burnside(g, cyc_add(a, b)), add(A, B));
                    EXPECT_EQ(to_burnside(g, cyc_mul(a, b)), mul(A, B)) << N << " " << ring << " " << to_string(f);
                    EXPECT_EQ(to_burnside(g, cyc_neg(a)), neg(A));
                    if (f != Flavor::Ghost) EXPECT_EQ(to_burnside(g, cyc_ghost(a)), ghost(A));
                    for (auto r_idx : t.members()) {
                        auto u = class_of_index(g, r_idx);
                        auto sub = g->subgroup_tables(u);
                        auto fa = cyc_frobenius(r_idx, a);
                        auto down = f == Flavor::Witt ? witt_f(g, u, A) : res(g, u, A);
                        EXPECT_EQ(to_burnside(sub, fa), down) << "res " << N << " " << r_idx << " " << ring;
                        auto small = random(s, t.divided_by(r_idx), f, r);
                        auto up = f == Flavor::Witt ? witt_v(g, u, to_burnside(sub, small)) : ind(g, u, to_burnside(sub, small));
                        EXPECT_EQ(to_burnside(g, cyc_verschiebung(r_idx, small, t)), up) << "ind " << N << " " << r_idx;
                    }
                }
        }
    }
}
