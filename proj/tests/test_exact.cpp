#include <gtest/gtest.h>

#include <random>

#include "wb/error.hpp"
#include "wb/exact/format.hpp"
#include "wb/exact/mpoly.hpp"
#include "wb/exact/number_theory.hpp"
#include "wb/exact/qpolynomial.hpp"
#include "wb/exact/ring.hpp"
#include "wb/exact/unitri_matrix.hpp"

using namespace wb;

namespace {

std::vector<std::uint64_t> divisors_by_scan(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

int mobius_by_factoring(std::uint64_t n) {
    int primes = 0;
    for (std::uint64_t p = 2; n > 1; ++p) {
        int mult = 0;
        while (n % p == 0) n /= p, ++mult;
        if (mult > 1) return 0;
        primes += mult;
    }
    return primes % 2 ? -1 : 1;
}

QPolynomial random_qpoly(std::mt19937_64& rng, int maxdeg, int num, int den) {
    std::uniform_int_distribution<int> deg(0, maxdeg), n(-num, num), d(1, den);
    std::vector<Rational> c(deg(rng) + 1);
    for (auto& x : c) {
        x = Rational(n(rng), d(rng));
        x.canonicalize();
    }
    return QPolynomial(c);
}

} // namespace

TEST(NumberTheory, DivisorsMatchScan) {
    EXPECT_EQ(divisors(1), (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(divisors(7), (std::vector<std::uint64_t>{1, 7}));
    for (std::uint64_t n = 1; n <= 500; ++n) EXPECT_EQ(divisors(n), divisors_by_scan(n)) << n;
}

TEST(NumberTheory, MobiusMatchesFactoring) {
    EXPECT_EQ(mobius(1), 1);
    EXPECT_EQ(mobius(6), 1);
    EXPECT_EQ(mobius(12), 0);
    for (std::uint64_t n = 1; n <= 1000; ++n) EXPECT_EQ(mobius(n), mobius_by_factoring(n)) << n;
}

TEST(NumberTheory, MobiusSumsVanish) {
    for (std::uint64_t n = 1; n <= 1000; ++n) {
        int s = 0;
        for (auto d : divisors(n)) s += mobius(d);
        EXPECT_EQ(s, n == 1 ? 1 : 0) << n;
    }
}

TEST(NumberTheory, RejectsZero) {
    EXPECT_THROW(divisors(0), Error);
    EXPECT_THROW(mobius(0), Error);
}

TEST(QPoly, ArithmeticAndPrinting) {
    QPolynomial q = QPolynomial::q();
    QPolynomial p = (q * q - q) * Rational(1, 2);
    EXPECT_EQ(p.to_string(), "1/2*q^2-1/2*q");
    EXPECT_EQ(p.eval(3), 3);
    EXPECT_EQ((p - p).to_string(), "0");
    EXPECT_EQ((q - 1).pow(2).to_string(), "q^2-2*q+1");
    EXPECT_EQ(p.divide_by_q().to_string(), "1/2*q-1/2");
    EXPECT_THROW((q + 1).divide_by_q(), Error);
}

TEST(QPoly, Numericality) {
    QPolynomial q = QPolynomial::q();
    EXPECT_TRUE(is_numerical(q * (q - 1) * Rational(1, 2)));
    EXPECT_FALSE(is_numerical(q * Rational(1, 2)));
    EXPECT_TRUE(is_numerical(QPolynomial(1)));
    EXPECT_TRUE(is_numerical(q * (q - 1) * (q - 2) * Rational(1, 6)));
}

TEST(QPoly, NumericalityAgreesWithWideCheck) {
    std::mt19937_64 rng(11);
    int agreeing_true = 0;
    for (int it = 0; it < 400; ++it) {
        QPolynomial p = random_qpoly(rng, 4, 3, 3);
        // mix in binomial-coefficient shapes so positives occur
        if (it % 2 == 0) {
            QPolynomial q = QPolynomial::q();
            p = q * (q - 1) * Rational(it % 4 + 1) * Rational(1, 2) + QPolynomial(Rational(it % 5));
        }
        bool wide = true;
        int d = std::max(p.degree(), 0);
        for (int x = -d - 1; x <= d; ++x)
            if (!is_integer(p.eval(x))) wide = false;
        EXPECT_EQ(is_numerical(p), wide) << p.to_string();
        agreeing_true += wide;
    }
    EXPECT_GT(agreeing_true, 0);
}

TEST(MPoly, ParsePrintRoundTrip) {
    for (const char* s : {"x^2*y-3*y", "-a_1*b_1+a_2+b_2", "1/2*x^2-1/2*x", "0", "7", "-x", "q^3-2*q+1"}) {
        MPoly p = MPoly::parse(s);
        EXPECT_EQ(p.to_string(), s);
    }
    EXPECT_EQ(MPoly::parse("y*x + 2*x*y").to_string(), "3*x*y");
    EXPECT_EQ(MPoly::parse("x - x").to_string(), "0");
    EXPECT_THROW(MPoly::parse("x +* y"), Error);
    EXPECT_THROW(MPoly::parse(""), Error);
}

TEST(MPoly, Integrality) {
    EXPECT_TRUE(MPoly::parse("x^2*y-3*y").is_integral());
    EXPECT_FALSE(MPoly::parse("1/2*x^2-1/2*x").is_integral());
    EXPECT_TRUE(MPoly::parse("a_2+b_2-a_1*b_1").is_integral());
}

TEST(MPoly, ProductExpands) {
    MPoly x = MPoly::variable("x"), y = MPoly::variable("y");
    MPoly p = (x + y).pow(3);
    EXPECT_EQ(p.to_string(), "x^3+3*x^2*y+3*x*y^2+y^3");
    EXPECT_EQ(((x + 1) * (x - 1)).to_string(), "x^2-1");
    auto coeffs = MPoly::parse("x^2*y+3*x+y+1").coefficients_in(intern_var("x"));
    ASSERT_EQ(coeffs.size(), 3u);
    EXPECT_EQ(coeffs[0].to_string(), "y+1");
    EXPECT_EQ(coeffs[1].to_string(), "3");
    EXPECT_EQ(coeffs[2].to_string(), "y");
}

TEST(UniTri, ExamplesFromDefinition) {
    auto id = UniTriMatrix<Rational>::identity({"a", "b", "c"});
    EXPECT_EQ(invert_unitriangular(id), id);

    UniTriMatrix<QPolynomial> z({"1", "2"});
    z.set(0, 0, QPolynomial(1));
    z.set(0, 1, QPolynomial::q() * Rational(1, 2));
    z.set(1, 1, QPolynomial(1));
    auto m = z.inverse();
    EXPECT_EQ(m(0, 1).to_string(), "-1/2*q");
    EXPECT_EQ(m(0, 0).to_string(), "1");

    UniTriMatrix<Rational> c2({"G", "E"});
    c2.set(0, 0, 1);
    c2.set(0, 1, 1);
    c2.set(1, 1, 2);
    auto mu = c2.inverse();
    EXPECT_EQ(mu(0, 0), 1);
    EXPECT_EQ(mu(0, 1), Rational(-1, 2));
    EXPECT_EQ(mu(1, 1), Rational(1, 2));

    UniTriMatrix<Rational> bad({"a"});
    EXPECT_THROW(bad.inverse(), Error);
}

TEST(UniTri, RandomInversesAreTwoSided) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> small(-4, 4), pos(1, 5);
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        UniTriMatrix<Rational> a(labels);
        UniTriMatrix<QPolynomial> b(labels);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Rational dg(pos(rng), pos(rng));
                dg.canonicalize();
                a.set(i, j, i == j ? dg : Rational(small(rng)));
                b.set(i, j, i == j ? QPolynomial(Rational(pos(rng))) : random_qpoly(rng, 3, 3, 2));
            }
        auto ai = a.inverse();
        auto bi = b.inverse();
        auto ida = UniTriMatrix<Rational>::identity(labels);
        auto idb = UniTriMatrix<QPolynomial>::identity(labels);
        EXPECT_EQ(a * ai, ida);
        EXPECT_EQ(ai * a, ida);
        EXPECT_EQ(b * bi, idb);
        EXPECT_EQ(bi * b, idb);
    }
}

TEST(Ring, ParseAndPrintSpecs) {
    for (const char* s : {"Z", "Q", "Z/8", "Q[q]", "ZPoly(x,y)", "QPoly(t)"}) EXPECT_EQ(RingSpec::parse(s)->to_string(), s);
    EXPECT_THROW(RingSpec::parse("Z/1"), Error);
    EXPECT_THROW(RingSpec::parse("ZPoly(x,x)"), Error);
    EXPECT_THROW(RingSpec::parse("R"), Error);
    EXPECT_THROW(RingSpec::parse("ZPoly()"), Error);
}

TEST(Ring, CanonicalValues) {
    auto z8 = RingSpec::parse("Z/8");
    EXPECT_EQ(RingValue::parse(z8, "-3").to_string(), "5");
    EXPECT_EQ(RingValue::parse(z8, "19").to_string(), "3");
    auto q = RingSpec::rationals();
    EXPECT_EQ(RingValue::parse(q, "4/6").to_string(), "2/3");
    auto zp = RingSpec::parse("ZPoly(x,y)");
    EXPECT_THROW(RingValue::parse(zp, "1/2*x"), Error);
    EXPECT_THROW(RingValue::parse(zp, "z"), Error);
    EXPECT_THROW(RingValue::parse(RingSpec::integers(), "1/2"), Error);
    EXPECT_EQ(RingValue::parse(zp, "y*x+x*y").to_string(), "2*x*y");
}

TEST(Ring, DivisionAndCasts) {
    auto z = RingSpec::integers();
    auto z8 = RingSpec::parse("Z/8");
    EXPECT_EQ(RingValue(z, 6L).try_divide(3)->to_string(), "2");
    EXPECT_FALSE(RingValue(z, 7L).try_divide(3).has_value());
    EXPECT_EQ(RingValue(z8, 1L).try_divide(3)->to_string(), "3");
    EXPECT_FALSE(RingValue(z8, 1L).try_divide(2).has_value());
    EXPECT_EQ(RingValue(z8, 5L).cast(z).to_string(), "5");
    EXPECT_EQ(RingValue(z, -3L).cast(z8).to_string(), "5");
    EXPECT_FALSE(RingValue(RingSpec::rationals(), Rational(1, 2)).try_cast(z).has_value());
    auto zp = RingSpec::parse("ZPoly(x)");
    auto qp = zp->rationalization();
    EXPECT_EQ(qp->to_string(), "QPoly(x)");
    auto half = RingValue(qp, MPoly::parse("1/2*x^2-1/2*x"));
    EXPECT_FALSE(half.try_cast(zp).has_value());
    EXPECT_EQ(half.scaled(Integer(2)).cast(zp).to_string(), "x^2-x");
}

namespace {
RingValue random_value(std::mt19937_64& rng, const RingPtr& r) {
    std::uniform_int_distribution<int> c(-5, 5), d(1, 4);
    if (r->is_polynomial()) {
        MPoly p;
        for (const auto& v : r->vars()) p += MPoly::variable(v) * Rational(c(rng)) + MPoly(Rational(c(rng)));
        if (r->is_q_algebra()) p *= Rational(1, d(rng));
        return RingValue(r, p);
    }
    if (r->kind() == RingSpec::Kind::Rationals) return RingValue(r, Rational(c(rng), d(rng)));
    return RingValue(r, Rational(c(rng) * 7));
}
} // namespace

TEST(Ring, AxiomsOnRandomValues) {
    std::mt19937_64 rng(3);
    for (const char* spec : {"Z", "Q", "Z/8", "Z/9", "Q[q]", "ZPoly(x,y)", "QPoly(x)"}) {
        auto r = RingSpec::parse(spec);
        for (int it = 0; it < 100; ++it) {
            auto a = random_value(rng, r), b = random_value(rng, r), c = random_value(rng, r);
            EXPECT_EQ((a + b) + c, a + (b + c)) << spec;
            EXPECT_EQ(a * b, b * a) << spec;
            EXPECT_EQ((a * b) * c, a * (b * c)) << spec;
            EXPECT_EQ(a * (b + c), a * b + a * c) << spec;
            EXPECT_TRUE((a + (-a)).is_zero()) << spec;
            EXPECT_EQ(a * RingValue::one(r), a) << spec;
        }
    }
}

TEST(Ring, EvaluateUniversalShape) {
    auto z8 = RingSpec::parse("Z/8");
    MPoly p = MPoly::parse("a_G^2*b_E+a_E*b_G^2+2*a_E*b_E");
    std::vector<std::pair<VarId, RingValue>> bind = {{intern_var("a_G"), RingValue(z8, 1L)},
                                                    {intern_var("a_E"), RingValue(z8, 1L)},
                                                    {intern_var("b_G"), RingValue(z8, 1L)},
                                                    {intern_var("b_E"), RingValue(z8, 1L)}};
    EXPECT_EQ(evaluate(p, z8, bind).to_string(), "4");
    auto z4 = RingSpec::parse("Z/4");
    for (auto& b : bind) b.second = RingValue(z4, 1L);
    EXPECT_EQ(evaluate(p, z4, bind).to_string(), "0");
    EXPECT_THROW(evaluate(MPoly::parse("1/2*a_G"), z4, bind), Error);
}
