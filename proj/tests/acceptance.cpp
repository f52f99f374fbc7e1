// Acceptance gate: the ten criteria, exact, one line per criterion.
// usage: acceptance <path to wb> <golden dir>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracle.hpp"
#include "wb/burnside/burnside.hpp"
#include "wb/cyclic/cyclic.hpp"
#include "wb/error.hpp"
#include "wb/q/qdeform.hpp"
#include "wb/verify/sample.hpp"
#include "wb/verify/suites.hpp"

using namespace wb;

namespace {

constexpr std::uint64_t kSeed = 20240601;
const char* const kGroups[] = {"C2", "C4", "C6", "S3", "D4"};

struct Result {
    std::uint64_t checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
    void absorb(const Report& r) {
        checks += r.cases_run;
        for (const auto& f : r.failures) failures.push_back(f.id + ": " + f.lhs + " vs " + f.rhs);
    }
};

Result suites(std::initializer_list<std::pair<const char*, int>> runs) {
    Result r;
    for (const auto& [name, samples] : runs) r.absorb(run_suite(name, {kSeed, samples, 3}));
    return r;
}

TruncationSet upto(std::uint64_t n) {
    std::vector<std::uint64_t> m;
    for (std::uint64_t i = 1; i <= n; ++i) m.push_back(i);
    return TruncationSet::from_members(m);
}

RingPtr ZZ() { return RingSpec::integers(); }
RingPtr QQ() { return RingSpec::rationals(); }
RingValue Zv(long v) { return RingValue(ZZ(), v); }

Result integrality() {
    Result r;
    for (const char* g : kGroups)
        for (Op op : {Op::Sum, Op::Prod, Op::Neg}) {
            const auto& set = derive_universal(GroupTables::resolve(g), op);
            for (std::size_t k = 0; k < set.polys.size(); ++k)
                r.expect(set.polys[k].is_integral(), std::string(g) + " " + to_string(op) + " polynomial " + std::to_string(k));
        }
    const auto t12 = TruncationSet::divisors_of(12);
    for (Op op : {Op::Sum, Op::Prod, Op::Neg}) {
        const auto& polys = cyc_universal(t12, op);
        for (std::size_t k = 0; k < polys.size(); ++k)
            r.expect(polys[k].is_integral(), "div(12) " + to_string(op) + " at n=" + std::to_string(t12[k]));
    }
    // the q-families, coefficient by coefficient, against Z[q]
    for (Op op : {Op::Sum, Op::Prod, Op::Neg}) {
        const auto& polys = q_universal(t12, op);
        for (std::size_t k = 0; k < polys.size(); ++k) {
            std::size_t bad = 0;
            std::string first;
            for (const auto& [mono, c] : q_coefficients(polys[k]))
                if (!c.is_integral()) {
                    if (!bad) first = c.to_string();
                    ++bad;
                }
            r.expect(bad == 0, "q-" + to_string(op) + " at n=" + std::to_string(t12[k]) + ": " + std::to_string(bad) +
                                   " coefficients outside Z[q], e.g. " + first);
        }
    }
    for (std::uint64_t n = 1; n <= 12; ++n)
        for (auto i : divisors(n))
            for (auto j : divisors(n)) {
                const auto& p = p_poly(n, i, j);
                const std::string key = "P_{" + std::to_string(n) + "," + std::to_string(i) + "," + std::to_string(j) + "}";
                r.expect(is_numerical(p), key + " numerical");
                r.expect(p.eval(1) == Rational(lcm_u(i, j) == n ? 1 : 0), key + "(1)");
            }
    return r;
}

Result oracle_values() {
    Result r;
    auto ring = RingSpec::multipoly({"a_1", "a_2", "b_1", "b_2"}, false);
    auto qring = RingSpec::multipoly({"q", "a_1", "a_2", "b_1", "b_2"}, true);
    auto poly = [](const RingPtr& rg, const char* s) { return RingValue::parse(rg, s).as_poly(); };
    const auto t2 = TruncationSet::divisors_of(2);
    r.expect(cyc_universal(t2, Op::Sum)[1] == poly(ring, "a_2+b_2-a_1*b_1"), "s_2");
    r.expect(cyc_universal(t2, Op::Prod)[1] == poly(ring, "a_1^2*b_2+a_2*b_1^2+2*a_2*b_2"), "p_2");
    r.expect(cyc_universal(t2, Op::Neg)[1] == poly(ring, "-a_2-a_1^2"), "iota_2");
    r.expect(q_universal(t2, Op::Sum)[1] == poly(qring, "a_2+b_2-q*a_1*b_1"), "s_2^q");
    r.expect(p_poly(2, 1, 1) == QPolynomial(std::vector<Rational>{0, Rational(-1, 2), Rational(1, 2)}), "P_{2,1,1}");
    const long M2[] = {2, 1, 2, 3, 6, 9};
    for (std::uint64_t n = 1; n <= 6; ++n) r.expect(necklace_poly(Zv(2), n) == Zv(M2[n - 1]), "M(2," + std::to_string(n) + ")");
    const std::vector<std::vector<long>> c2 = {{1, 1}, {0, 2}};
    const std::vector<std::vector<long>> s3 = {{1, 1, 1, 1}, {0, 2, 0, 2}, {0, 0, 1, 3}, {0, 0, 0, 6}};
    for (auto [name, table] : {std::pair{"C2", c2}, std::pair{"S3", s3}}) {
        auto t = GroupTables::resolve(name);
        auto brute = oracle::marks(*t);
        for (std::size_t v = 0; v < t->size(); ++v)
            for (std::size_t w = 0; w < t->size(); ++w) {
                const std::string key = std::string("marks ") + name + "[" + std::to_string(v) + "][" + std::to_string(w) + "]";
                r.expect(t->zeta()(v, w) == Rational(table[v][w]), key);
                r.expect(brute[w][v] == table[v][w], key + " (coset count)");
            }
    }
    return r;
}

Result identities() {
    Result r;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (std::uint64_t n = 1; n <= 12; ++n) {
                RingValue m = RingValue::zero(ZZ()), s = RingValue::zero(ZZ());
                for (auto i : divisors(n))
                    for (auto j : divisors(n))
                        if (lcm_u(i, j) == n) {
                            m += (necklace_poly(Zv(a), i) * necklace_poly(Zv(b), j)).scaled(Integer(gcd_u(i, j)));
                            s += aperiodic_poly(Zv(a), i) * aperiodic_poly(Zv(b), j);
                        }
                const std::string key = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(n) + ")";
                r.expect(m == necklace_poly(Zv(a * b), n), "M product " + key);
                r.expect(s == aperiodic_poly(Zv(a * b), n), "S product " + key);
            }
    // inverse ghost maps: Moebius sums over a_{n/d}; products as sums over [i,j] = n
    Sampler smp(kSeed);
    const auto t = upto(12);
    for (int k = 0; k < 100; ++k) {
        const bool nr = k % 2 == 0;
        const auto ring = nr ? QQ() : ZZ();
        auto a = smp.cyclic(t, Flavor::Ghost, ring), b = smp.cyclic(t, Flavor::Ghost, ring);
        auto inv = [&](const CyclicVector& g) { return nr ? cyc_nr_ghost_inv(g) : cyc_ap_ghost_inv(g); };
        auto ia = inv(a), ib = inv(b), iab = inv(cyc_mul(a, b));
        for (auto n : t.members()) {
            RingValue mob = RingValue::zero(ring), conv = RingValue::zero(ring);
            for (auto d : divisors(n)) mob += a.at(n / d).scaled(Integer(mobius(d)));
            if (nr) mob = mob.scaled(Rational(1, Integer(n)));
            for (auto i : divisors(n))
                for (auto j : divisors(n))
                    if (lcm_u(i, j) == n) conv += (ia.at(i) * ib.at(j)).scaled(Integer(nr ? gcd_u(i, j) : 1));
            const std::string key = std::string(nr ? "necklace" : "aperiodic") + " sample " + std::to_string(k) + " n=" + std::to_string(n);
            r.expect(ia.at(n) == mob, "inverse ghost " + key);
            r.expect(iab.at(n) == conv, "inverse ghost product " + key);
        }
    }
    for (std::uint64_t n = 1; n <= 12; ++n)
        for (auto i : divisors(n))
            for (auto j : divisors(n)) {
                QPolynomial lhs;
                const auto l = lcm_u(i, j);
                for (auto d : divisors(n))
                    if (d % l == 0) lhs += p_poly(d, i, j) * QPolynomial::monomial(1, n / d - 1) * Rational(Integer(d / l));
                r.expect(lhs == QPolynomial::monomial(1, n / i + n / j - 2),
                         "aperiodic q-identity n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
            }
    for (long qv = -2; qv <= 3; ++qv) {
        const auto q = QContext::integer(qv);
        const auto qr = RingValue(QQ(), qv);
        for (int k = 0; k < 20; ++k) {
            auto x = smp.value(QQ()), y = smp.value(QQ());
            auto prod = q_mul(q, q_exp_M_vector(q, t, x), q_exp_M_vector(q, t, y));
            for (auto& c : prod.comps) c = qr * c;
            r.expect(q_exp_M_vector(q, t, qr * x * y) == prod, "M^q(qxy) q=" + std::to_string(qv) + " x=" + x.to_string() + " y=" + y.to_string());
        }
    }
    // M^q at q = 2 on (x, y) = (2, 3) in degree 2
    const auto q2 = QContext::integer(2);
    const auto t2 = upto(2);
    r.expect(q_exp_M_vector(q2, t2, Zv(6)) != q_mul(q2, q_exp_M_vector(q2, t2, Zv(2)), q_exp_M_vector(q2, t2, Zv(3))),
             "non-multiplicativity witness at q=2");
    return r;
}

struct Proc {
    int code;
    std::string out;
};

Proc run(const std::string& cmd) {
    Proc p{-1, {}};
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return p;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) p.out.append(buf.data(), n);
    int status = pclose(f);
    p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return p;
}

Result cli(const std::string& wb, const std::string& golden) {
    Result r;
    const std::pair<const char*, const char*> goldens[] = {
        {"group info --group S3", "group_info_S3.json"},
        {"universal --group C2 --op prod", "universal_C2_prod.json"},
        {"qpoly P --n 6", "qpoly_P_6.json"},
    };
    for (const auto& [args, file] : goldens) {
        auto p = run("'" + wb + "' " + args + " 2>/dev/null");
        std::ifstream in(golden + "/" + file, std::ios::binary);
        std::string want{std::istreambuf_iterator<char>(in), {}};
        r.expect(p.code == 0 && !want.empty() && p.out == want, std::string("golden ") + file);
    }
    auto ok = run("'" + wb + "' verify --suite all --seed 7 2>&1");
    r.expect(ok.code == 0, "verify --suite all --seed 7 exit " + std::to_string(ok.code));
    auto bad = run("'" + wb + "' verify --suite all --seed 7 --inject-fault 2>&1");
    r.expect(bad.code == 1 && bad.out.find("\"case\"") != std::string::npos,
             "injected fault exit " + std::to_string(bad.code));
    return r;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <wb binary> <golden dir>\n";
        return 2;
    }
    const std::string wb = argv[1], golden = argv[2];
    struct Criterion {
        const char* title;
        std::function<Result()> fn;
    };
    const Criterion criteria[] = {
        {"ring axioms, 200 triples per (G, R, flavor)", [] { return suites({{"rings", 200}}); }},
        {"ghost maps preserve + and *, 100 pairs", [] { return suites({{"ghosts", 100}}); }},
        {"tau, theta, gamma round trips and ghost diagrams, 100 samples", [] { return suites({{"diagrams", 100}}); }},
        {"integrality and numericality", integrality},
        {"oracle values", oracle_values},
        {"identity suites", identities},
        {"induction and restriction, 50 samples per (G, U)", [] { return suites({{"indres", 50}}); }},
        {"cyclic vs Burnside on C_N, q = 1 vs classical", [] { return suites({{"cyclic-identities", 20}}); }},
        {"q-suite", [] { return suites({{"qrings", 20}, {"artinhasse", 20}}); }},
        {"command line", [&] { return cli(wb, golden); }},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = criteria[i].fn();
        } catch (const std::exception& e) {
            r.failures.push_back(std::string("exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = r.failures.empty();
        failed += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].title << " ("
                  << r.checks << " checks, " << r.failures.size() << " failed, " << ms << " ms)\n";
        for (std::size_t k = 0; k < r.failures.size() && k < 8; ++k) std::cout << "        " << r.failures[k] << "\n";
        if (r.failures.size() > 8) std::cout << "        ... " << r.failures.size() - 8 << " more\n";
    }
    const auto total = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (failed ? "FAILED " : "PASSED ") << (std::size(criteria) - failed) << "/" << std::size(criteria)
              << " criteria in " << total << " s\n";
    return failed ? 1 : 0;
}
