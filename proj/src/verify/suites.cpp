#include "wb/verify/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "wb/burnside/burnside.hpp"
#include "wb/cyclic/cyclic.hpp"
#include "wb/error.hpp"
#include "wb/q/qdeform.hpp"
#include "wb/verify/sample.hpp"

namespace wb {
namespace {

const char* const kGroups[] = {"C2", "C4", "C6", "S3", "D4"};
const std::vector<long> kQs = {-2, -1, 0, 1, 2, 3};

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

std::string show(const IndexedVector& v) { return to_string(v); }
std::string show(const CyclicVector& v) {
    return to_string(v.flavor) + "{" + v.trunc.to_string() + "}[" + join(v.to_strings()) + "]";
}
std::string show(const RingValue& v) { return v.to_string(); }
std::string show(const QPolynomial& p) { return p.to_string(); }
std::string show(const TruncatedCurve& c) { return "curve[" + join(c.to_strings()) + "]"; }

struct Outcome {
    bool ok = true;
    std::string lhs, rhs;
};

template <class T>
Outcome same(const T& l, const T& r) {
    if (l == r) return {};
    return {false, show(l), show(r)};
}

Outcome holds(bool b) {
    if (b) return {};
    return {false, "false", "true"};
}

std::string pad(long k) {
    std::string s = std::to_string(k);
    return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

// splitmix64 over FNV-1a, so every configuration gets its own stream and the
// cases do not depend on the order the suites run in
std::uint64_t stream_seed(std::uint64_t seed, const std::string& cfg) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : cfg) h = (h ^ c) * 1099511628211ull;
    std::uint64_t z = seed + h + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Checker {
public:
    Checker(Report& rep, const VerifyOptions& opt, std::string prefix)
        : rep_(rep), prefix_(std::move(prefix)), sampler_(stream_seed(opt.seed, prefix_), opt.magnitude) {}

    Sampler& sampler() { return sampler_; }
    void inputs(const std::vector<std::string>& in) { inputs_ = join(in, " ; "); }

    void check(const std::string& prop, long sample, const std::function<Outcome()>& body) {
        ++rep_.cases_run;
        Outcome o;
        try {
            o = body();
        } catch (const Error& e) {
            o = {false, std::string("error: ") + e.what(), ""};
        }
        if (o.ok) return;
        std::string id = prefix_ + "/" + prop;
        if (sample >= 0) id += "/" + pad(sample);
        rep_.failures.push_back({id, inputs_, o.lhs, o.rhs});
    }

private:
    Report& rep_;
    std::string prefix_;
    Sampler sampler_;
    std::string inputs_;
};

TruncationSet upto(std::uint64_t n) {
    std::vector<std::uint64_t> m;
    for (std::uint64_t i = 1; i <= n; ++i) m.push_back(i);
    return TruncationSet::from_members(m);
}

std::vector<TruncationSet> cyclic_truncations() { return {TruncationSet::divisors_of(12), upto(12)}; }

RingValue int_value(const RingPtr& r, long v) { return RingValue(r, v); }

// ---- burnside ----

void suite_rings(Report& rep, const VerifyOptions& opt) {
    for (const char* gname : kGroups) {
        auto g = GroupTables::resolve(gname);
        for (const char* rname : {"Z", "Q", "Z/8", "ZPoly(x,y)"}) {
            auto r = RingSpec::parse(rname);
            for (Flavor f : {Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic}) {
                Checker ck(rep, opt, std::string("rings/") + gname + "/" + rname + "/" + to_string(f));
                auto& s = ck.sampler();
                for (int k = 0; k < opt.samples; ++k) {
                    auto x = s.vector(g, f, r), y = s.vector(g, f, r), z = s.vector(g, f, r);
                    ck.inputs({show(x), show(y), show(z)});
                    ck.check("add-commutative", k, [&] { return same(add(x, y), add(y, x)); });
                    ck.check("mul-commutative", k, [&] { return same(mul(x, y), mul(y, x)); });
                    ck.check("add-associative", k, [&] { return same(add(add(x, y), z), add(x, add(y, z))); });
                    ck.check("mul-associative", k, [&] { return same(mul(mul(x, y), z), mul(x, mul(y, z))); });
                    ck.check("distributive", k, [&] { return same(mul(x, add(y, z)), add(mul(x, y), mul(x, z))); });
                    ck.check("additive-inverse", k, [&] { return same(add(add(x, neg(x)), y), y); });
                    if (x.rep == Rep::Direct)
                        ck.check("identity", k, [&] { return same(mul(IndexedVector::one(g, f, r), x), x); });
                }
            }
        }
    }
}

void suite_ghosts(Report& rep, const VerifyOptions& opt) {
    for (const char* gname : kGroups) {
        auto g = GroupTables::resolve(gname);
        for (const char* rname : {"Z", "Q", "Z/8", "ZPoly(x,y)"}) {
            auto r = RingSpec::parse(rname);
            for (Flavor f : {Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic}) {
                Checker ck(rep, opt, std::string("ghosts/") + gname + "/" + rname + "/" + to_string(f));
                auto& s = ck.sampler();
                for (int k = 0; k < opt.samples; ++k) {
                    auto x = s.vector(g, f, r), y = s.vector(g, f, r);
                    ck.inputs({show(x), show(y)});
                    ck.check("additive", k, [&] { return same(ghost(add(x, y)), add(ghost(x), ghost(y))); });
                    ck.check("multiplicative", k, [&] { return same(ghost(mul(x, y)), mul(ghost(x), ghost(y))); });
                    ck.check("negation", k, [&] { return same(ghost(neg(x)), neg(ghost(x))); });
                    if (r->is_torsion_free())
                        ck.check("inverse", k, [&] { return same(ghost_inv(ghost(x), f), x); });
                }
                if (f == Flavor::Witt || f == Flavor::Necklace) {
                    ck.inputs({});
                    ck.check("unit", -1, [&] {
                        return same(ghost(IndexedVector::one(g, f, r)), IndexedVector::one(g, Flavor::Ghost, r));
                    });
                }
            }
        }
    }
    for (const auto& t : cyclic_truncations())
        for (const char* rname : {"Z", "Q", "Z/8"}) {
            auto r = RingSpec::parse(rname);
            for (Flavor f : {Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic}) {
                Checker ck(rep, opt, "ghosts/cyclic{" + t.to_string() + "}/" + rname + "/" + to_string(f));
                auto& s = ck.sampler();
                for (int k = 0; k < opt.samples; ++k) {
                    auto x = s.cyclic(t, f, r), y = s.cyclic(t, f, r);
                    ck.inputs({show(x), show(y)});
                    ck.check("additive", k, [&] { return same(cyc_ghost(cyc_add(x, y)), cyc_add(cyc_ghost(x), cyc_ghost(y))); });
                    ck.check("multiplicative", k,
                             [&] { return same(cyc_ghost(cyc_mul(x, y)), cyc_mul(cyc_ghost(x), cyc_ghost(y))); });
                    ck.check("negation", k, [&] { return same(cyc_ghost(cyc_neg(x)), cyc_neg(cyc_ghost(x))); });
                    if (r->is_torsion_free())
                        ck.check("inverse", k, [&] { return same(cyc_ghost_inv(cyc_ghost(x), f), x); });
                }
            }
        }
}

void suite_diagrams(Report& rep, const VerifyOptions& opt) {
    for (const char* gname : kGroups) {
        auto g = GroupTables::resolve(gname);
        for (const char* rname : {"Z", "Q", "Z/8", "ZPoly(x,y)"}) {
            auto r = RingSpec::parse(rname);
            Checker ck(rep, opt, std::string("diagrams/") + gname + "/" + rname);
            auto& s = ck.sampler();
            for (int k = 0; k < opt.samples; ++k) {
                auto a = s.witt(g, r), b = s.witt(g, r);
                // over Z/m the necklace side is the quotient of the integral one
                auto x = r->is_torsion_free() ? s.necklace(g, r) : teichmuller(s.witt(g, r));
                auto y = r->is_torsion_free() ? s.necklace(g, r) : teichmuller(s.witt(g, r));
                ck.inputs({show(a), show(b), show(x), show(y)});
                ck.check("tau-round-trip", k, [&] { return same(teichmuller_inv(teichmuller(a)), a); });
                ck.check("gamma-round-trip", k, [&] { return same(gamma_inv(gamma(a)), a); });
                if (r->is_torsion_free()) ck.check("theta-round-trip", k, [&] { return same(theta_inv(theta(x)), x); });
                ck.check("ghost-tau", k, [&] { return same(ghost(teichmuller(a)), ghost(a)); });
                ck.check("ghost-theta", k, [&] { return same(ghost(theta(x)), ghost(x)); });
                ck.check("gamma-theta-tau", k, [&] { return same(gamma(a), theta(teichmuller(a))); });
                ck.check("tau-additive", k, [&] { return same(teichmuller(add(a, b)), add(teichmuller(a), teichmuller(b))); });
                ck.check("tau-multiplicative", k,
                         [&] { return same(teichmuller(mul(a, b)), mul(teichmuller(a), teichmuller(b))); });
                ck.check("theta-multiplicative", k, [&] { return same(theta(mul(x, y)), mul(theta(x), theta(y))); });
            }
        }
    }
}

void suite_indres(Report& rep, const VerifyOptions& opt) {
    for (const char* gname : kGroups) {
        auto g = GroupTables::resolve(gname);
        for (std::size_t u = 0; u < g->size(); ++u) {
            auto sub = g->subgroup_tables(u);
            for (const char* rname : {"Z", "Q", "Z/8"}) {
                auto r = RingSpec::parse(rname);
                const bool tf = r->is_torsion_free();
                Checker ck(rep, opt, std::string("indres/") + gname + "/" + g->cls(u).label + "/" + rname);
                auto& s = ck.sampler();
                for (int k = 0; k < opt.samples; ++k) {
                    auto a = s.witt(sub, r), a2 = s.witt(sub, r);
                    auto c = s.witt(g, r), c2 = s.witt(g, r);
                    auto x = tf ? s.necklace(sub, r) : teichmuller(s.witt(sub, r));
                    auto x2 = tf ? s.necklace(sub, r) : teichmuller(s.witt(sub, r));
                    auto y = tf ? s.necklace(g, r) : teichmuller(s.witt(g, r));
                    auto y2 = tf ? s.necklace(g, r) : teichmuller(s.witt(g, r));
                    ck.inputs({show(a), show(a2), show(c), show(c2), show(x), show(x2), show(y), show(y2)});
                    ck.check("ind-tau", k, [&] { return same(ind(g, u, teichmuller(a)), teichmuller(witt_v(g, u, a))); });
                    ck.check("ind-theta", k, [&] { return same(ind(g, u, theta(x)), theta(ind(g, u, x))); });
                    ck.check("ind-gamma", k, [&] { return same(ind(g, u, gamma(a)), gamma(witt_v(g, u, a))); });
                    ck.check("res-tau", k, [&] { return same(res(g, u, teichmuller(c)), teichmuller(witt_f(g, u, c))); });
                    ck.check("res-theta", k, [&] { return same(res(g, u, theta(y)), theta(res(g, u, y))); });
                    ck.check("res-gamma", k, [&] { return same(res(g, u, gamma(c)), gamma(witt_f(g, u, c))); });
                    ck.check("ind-additive", k, [&] { return same(ind(g, u, add(x, x2)), add(ind(g, u, x), ind(g, u, x2))); });
                    ck.check("v-additive", k,
                             [&] { return same(witt_v(g, u, add(a, a2)), add(witt_v(g, u, a), witt_v(g, u, a2))); });
                    ck.check("res-additive", k, [&] { return same(res(g, u, add(y, y2)), add(res(g, u, y), res(g, u, y2))); });
                    ck.check("res-multiplicative", k,
                             [&] { return same(res(g, u, mul(y, y2)), mul(res(g, u, y), res(g, u, y2))); });
                    ck.check("f-multiplicative", k,
                             [&] { return same(witt_f(g, u, mul(c, c2)), mul(witt_f(g, u, c), witt_f(g, u, c2))); });
                    if (tf) {
                        ck.check("nu-ghost", k,
                                 [&] { return same(ghost_nu(g, u, nr_ghost(x)), nr_ghost(ind(g, u, x))); });
                        ck.check("F-ghost", k, [&] { return same(ghost_F(g, u, nr_ghost(y)), nr_ghost(res(g, u, y))); });
                    }
                }
            }
        }
    }
}

// ---- q-deformation ----

QPolynomial qpow(std::uint64_t k) { return QPolynomial::monomial(1, k); }

void suite_qpolys(Report& rep, const VerifyOptions& opt) {
    Checker ck(rep, opt, "qpolys");
    for (std::uint64_t n = 1; n <= 12; ++n) {
        const auto& m = zeta_mu_q(n);
        ck.check("zeta-mu/n=" + pad(static_cast<long>(n)), -1,
                 [&] { return holds(m.zeta * m.mu == UniTriMatrix<QPolynomial>::identity(m.zeta.labels())); });
        for (auto i : divisors(n))
            for (auto j : divisors(n)) {
                const std::string key = "n=" + pad(static_cast<long>(n)) + ",i=" + pad(static_cast<long>(i)) +
                                        ",j=" + pad(static_cast<long>(j));
                ck.check("numerical/" + key, -1, [&] { return holds(is_numerical(p_poly(n, i, j))); });
                ck.check("value-at-one/" + key, -1, [&] {
                    return same(QPolynomial(p_poly(n, i, j).eval(1)), QPolynomial(lcm_u(i, j) == n ? 1 : 0));
                });
                ck.check("aperiodic-identity/" + key, -1, [&] {
                    QPolynomial lhs;
                    const auto l = lcm_u(i, j);
                    for (auto d : divisors(n))
                        if (d % l == 0) lhs += p_poly(d, i, j) * qpow(n / d - 1) * Rational(Integer(d / l));
                    return same(lhs, qpow(n / i + n / j - 2));
                });
            }
    }
    auto t = TruncationSet::divisors_of(12);
    for (Op op : {Op::Sum, Op::Prod, Op::Neg}) {
        const auto& polys = q_universal(t, op);
        for (std::size_t k = 0; k < polys.size(); ++k)
            ck.check("universal-numerical/" + to_string(op) + "/n=" + pad(static_cast<long>(t[k])), -1,
                     [&] { return holds(has_numerical_q_coefficients(polys[k])); });
    }
}

void suite_qrings(Report& rep, const VerifyOptions& opt) {
    const auto t = TruncationSet::divisors_of(12);
    for (long qv : kQs) {
        const auto q = QContext::integer(qv);
        for (const char* rname : {"Z", "Z/8"}) {
            auto r = RingSpec::parse(rname);
            for (Flavor f : {Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic}) {
                Checker ck(rep, opt, "qrings/q=" + std::to_string(qv) + "/" + rname + "/" + to_string(f));
                auto& s = ck.sampler();
                for (int k = 0; k < opt.samples; ++k) {
                    auto x = s.cyclic(t, f, r), y = s.cyclic(t, f, r), z = s.cyclic(t, f, r);
                    ck.inputs({show(x), show(y), show(z)});
                    auto gh = [&](const CyclicVector& v) { return q_ghost(q, v); };
                    ck.check("ghost-additive", k, [&] { return same(gh(q_add(q, x, y)), cyc_add(gh(x), gh(y))); });
                    ck.check("ghost-multiplicative", k, [&] { return same(gh(q_mul(q, x, y)), cyc_mul(gh(x), gh(y))); });
                    ck.check("ghost-negation", k, [&] { return same(gh(q_neg(q, x)), cyc_neg(gh(x))); });
                    ck.check("mul-associative", k,
                             [&] { return same(q_mul(q, q_mul(q, x, y), z), q_mul(q, x, q_mul(q, y, z))); });
                    ck.check("distributive", k,
                             [&] { return same(q_mul(q, x, q_add(q, y, z)), q_add(q, q_mul(q, x, y), q_mul(q, x, z))); });
                    for (std::uint64_t rr : {2, 3, 4, 6}) {
                        const std::string tag = "r=" + std::to_string(rr);
                        auto fx = [&](const CyclicVector& v) { return q_frobenius(q, rr, v); };
                        ck.check("frobenius-multiplicative/" + tag, k,
                                 [&] { return same(fx(q_mul(q, x, y)), q_mul(q, fx(x), fx(y))); });
                        ck.check("frobenius-additive/" + tag, k,
                                 [&] { return same(fx(q_add(q, x, y)), q_add(q, fx(x), fx(y))); });
                        ck.check("ghost-shift/" + tag, k, [&] {
                            auto lhs = gh(fx(x));
                            auto g = gh(x);
                            std::vector<RingValue> shifted;
                            for (auto n : lhs.trunc.members()) shifted.push_back(g.at(rr * n));
                            return same(lhs, CyclicVector(lhs.trunc, Flavor::Ghost, r, std::move(shifted)));
                        });
                        if (f == Flavor::Necklace) {
                            ck.check("theta-frobenius/" + tag, k, [&] { return same(q_theta(fx(x)), fx(q_theta(x))); });
                            ck.check("theta-verschiebung/" + tag, k,
                                     [&] { return same(q_theta(q_verschiebung(rr, x)), q_verschiebung(rr, q_theta(x))); });
                        }
                        if (f == Flavor::Witt && r->is_torsion_free()) {
                            ck.check("teichmuller-frobenius/" + tag, k,
                                     [&] { return same(q_teichmuller(q, fx(x)), fx(q_teichmuller(q, x))); });
                            ck.check("teichmuller-verschiebung/" + tag, k, [&] {
                                return same(q_teichmuller(q, q_verschiebung(rr, x)), q_verschiebung(rr, q_teichmuller(q, x)));
                            });
                        }
                    }
                    if (f == Flavor::Witt && r->is_torsion_free()) {
                        ck.check("teichmuller-ghost", k, [&] { return same(q_nr_ghost(q, q_teichmuller(q, x)), q_witt_ghost(q, x)); });
                        ck.check("teichmuller-round-trip", k, [&] { return same(q_teichmuller_inv(q, q_teichmuller(q, x)), x); });
                        ck.check("teichmuller-multiplicative", k, [&] {
                            return same(q_teichmuller(q, q_mul(q, x, y)), q_mul(q, q_teichmuller(q, x), q_teichmuller(q, y)));
                        });
                    }
                }
            }
        }
        Checker ck(rep, opt, "qrings/q=" + std::to_string(qv) + "/Q/exponential");
        auto& s = ck.sampler();
        const auto QQ = RingSpec::rationals();
        const auto t12 = upto(12);
        for (int k = 0; k < opt.samples; ++k) {
            auto x = s.value(QQ), y = s.value(QQ);
            ck.inputs({show(x), show(y)});
            ck.check("scaled-multiplicative", k, [&] {
                auto qr = int_value(QQ, qv);
                auto prod = q_mul(q, q_exp_M_vector(q, t12, x), q_exp_M_vector(q, t12, y));
                for (auto& c : prod.comps) c = qr * c;
                return same(q_exp_M_vector(q, t12, qr * x * y), prod);
            });
        }
    }
    Checker ck(rep, opt, "qrings/q=2/Z/exponential");
    ck.check("not-multiplicative", -1, [&] {
        const auto q = QContext::integer(2);
        const auto ZZ = RingSpec::integers();
        const auto t = upto(4);
        for (long x = -2; x <= 2; ++x)
            for (long y = -2; y <= 2; ++y)
                if (q_exp_M_vector(q, t, int_value(ZZ, x * y)) !=
                    q_mul(q, q_exp_M_vector(q, t, int_value(ZZ, x)), q_exp_M_vector(q, t, int_value(ZZ, y))))
                    return Outcome{};
        return Outcome{false, "multiplicative on [-2,2]^2", "a witness"};
    });
}

void suite_artinhasse(Report& rep, const VerifyOptions& opt) {
    {
        Checker ck(rep, opt, "artinhasse/symbolic");
        auto r = RingSpec::parse("ZPoly(q,x1,x2,x3,x4)");
        auto a = CyclicVector::parse(upto(4), Flavor::Witt, r, {"x1", "x2", "x3", "x4"});
        const auto q = QContext::symbolic();
        ck.check("coefficient-t3", -1, [&] { return same(artin_hasse(q, a).coeffs[2], RingValue::parse(r, "x3-q*x1*x2")); });
        ck.check("coefficient-t4", -1, [&] { return same(artin_hasse(q, a).coeffs[3], RingValue::parse(r, "x4-q*x1*x3")); });
        ck.check("round-trip", -1, [&] { return same(artin_hasse_inv(q, artin_hasse(q, a)), a); });
    }
    const auto t = upto(8);
    for (long qv : kQs) {
        const auto q = QContext::integer(qv);
        for (const char* rname : {"Z", "Z/8"}) {
            auto r = RingSpec::parse(rname);
            Checker ck(rep, opt, "artinhasse/q=" + std::to_string(qv) + "/" + rname);
            auto& s = ck.sampler();
            for (int k = 0; k < opt.samples; ++k) {
                auto a = s.cyclic(t, Flavor::Witt, r), b = s.cyclic(t, Flavor::Witt, r), c = s.cyclic(t, Flavor::Witt, r);
                ck.inputs({show(a), show(b), show(c)});
                auto ha = artin_hasse(q, a), hb = artin_hasse(q, b), hc = artin_hasse(q, c);
                ck.check("round-trip", k, [&] { return same(artin_hasse_inv(q, ha), a); });
                ck.check("additive", k, [&] { return same(artin_hasse(q, q_add(q, a, b)), curve_add(q, ha, hb)); });
                ck.check("negation", k, [&] { return same(artin_hasse(q, q_neg(q, a)), curve_neg(q, ha)); });
                ck.check("mul-associative", k,
                         [&] { return same(curve_mul(q, curve_mul(q, ha, hb), hc), curve_mul(q, ha, curve_mul(q, hb, hc))); });
                ck.check("distributive", k, [&] {
                    return same(curve_mul(q, ha, curve_add(q, hb, hc)), curve_add(q, curve_mul(q, ha, hb), curve_mul(q, ha, hc)));
                });
            }
        }
    }
}

// ---- cyclic identities and cross-model checks ----

IndexedVector to_burnside(const TablesPtr& g, const CyclicVector& x) {
    std::vector<RingValue> c(g->size());
    for (std::size_t u = 0; u < g->size(); ++u) c[u] = x.at(g->index(u));
    return IndexedVector(g, x.flavor, x.ring, std::move(c));
}

std::size_t class_of_index(const TablesPtr& g, std::uint64_t r) {
    for (std::size_t u = 0; u < g->size(); ++u)
        if (g->index(u) == r) return u;
    fail(ErrorKind::InvalidArgument, "no subgroup of index " + std::to_string(r));
}

void suite_cyclic(Report& rep, const VerifyOptions& opt) {
    const auto ZZ = RingSpec::integers(), QQ = RingSpec::rationals();
    {
        Checker ck(rep, opt, "cyclic-identities/product-formulas");
        for (long r = -3; r <= 3; ++r)
            for (long s = -3; s <= 3; ++s)
                for (std::uint64_t n = 1; n <= 12; ++n) {
                    const std::string key = "r=" + std::to_string(r) + ",s=" + std::to_string(s) + ",n=" + pad(static_cast<long>(n));
                    ck.check("M/" + key, -1, [&] {
                        RingValue acc = RingValue::zero(ZZ);
                        for (auto i : divisors(n))
                            for (auto j : divisors(n))
                                if (lcm_u(i, j) == n)
                                    acc += (necklace_poly(int_value(ZZ, r), i) * necklace_poly(int_value(ZZ, s), j))
                                               .scaled(Integer(gcd_u(i, j)));
                        return same(acc, necklace_poly(int_value(ZZ, r * s), n));
                    });
                    ck.check("S/" + key, -1, [&] {
                        RingValue acc = RingValue::zero(ZZ);
                        for (auto i : divisors(n))
                            for (auto j : divisors(n))
                                if (lcm_u(i, j) == n) acc += aperiodic_poly(int_value(ZZ, r), i) * aperiodic_poly(int_value(ZZ, s), j);
                        return same(acc, aperiodic_poly(int_value(ZZ, r * s), n));
                    });
                }
    }
    {
        // inverse ghost maps written out: Moebius sums over a_{n/d}, products
        // as sums over [i,j] = n
        const auto t = upto(12);
        Checker ck(rep, opt, "cyclic-identities/inverse-ghosts");
        auto& s = ck.sampler();
        for (int k = 0; k < opt.samples; ++k) {
            auto a = s.cyclic(t, Flavor::Ghost, QQ), b = s.cyclic(t, Flavor::Ghost, QQ);
            auto az = s.cyclic(t, Flavor::Ghost, ZZ), bz = s.cyclic(t, Flavor::Ghost, ZZ);
            ck.inputs({show(a), show(b), show(az), show(bz)});
            auto expand = [&](const CyclicVector& g, bool necklace) {
                std::vector<RingValue> out;
                for (auto n : t.members()) {
                    RingValue acc = RingValue::zero(g.ring);
                    for (auto d : divisors(n)) acc += g.at(n / d).scaled(Integer(mobius(d)));
                    out.push_back(necklace ? acc.scaled(Rational(1, Integer(n))) : acc);
                }
                return CyclicVector(t, necklace ? Flavor::Necklace : Flavor::Aperiodic, g.ring, std::move(out));
            };
            auto convolve = [&](const CyclicVector& x, const CyclicVector& y, bool necklace) {
                std::vector<RingValue> out;
                for (auto n : t.members()) {
                    RingValue acc = RingValue::zero(x.ring);
                    for (auto i : divisors(n))
                        for (auto j : divisors(n))
                            if (lcm_u(i, j) == n) acc += (x.at(i) * y.at(j)).scaled(Integer(necklace ? gcd_u(i, j) : 1));
                    out.push_back(acc);
                }
                return CyclicVector(t, x.flavor, x.ring, std::move(out));
            };
            ck.check("necklace-mobius", k, [&] { return same(cyc_nr_ghost_inv(a), expand(a, true)); });
            ck.check("aperiodic-mobius", k, [&] { return same(cyc_ap_ghost_inv(az), expand(az, false)); });
            ck.check("necklace-product", k, [&] {
                return same(cyc_nr_ghost_inv(cyc_mul(a, b)), convolve(cyc_nr_ghost_inv(a), cyc_nr_ghost_inv(b), true));
            });
            ck.check("aperiodic-product", k, [&] {
                return same(cyc_ap_ghost_inv(cyc_mul(az, bz)), convolve(cyc_ap_ghost_inv(az), cyc_ap_ghost_inv(bz), false));
            });
        }
    }
    for (std::uint64_t N : {2, 4, 6, 12}) {
        auto g = GroupTables::resolve("C" + std::to_string(N));
        auto t = TruncationSet::divisors_of(N);
        for (const char* rname : {"Z", "Q", "Z/8"}) {
            auto r = RingSpec::parse(rname);
            for (Flavor f : {Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic, Flavor::Ghost}) {
                Checker ck(rep, opt, "cyclic-identities/cross-model/C" + std::to_string(N) + "/" + rname + "/" + to_string(f));
                auto& s = ck.sampler();
                for (int k = 0; k < opt.samples; ++k) {
                    auto a = s.cyclic(t, f, r), b = s.cyclic(t, f, r);
                    ck.inputs({show(a), show(b)});
                    auto A = to_burnside(g, a), B = to_burnside(g, b);
                    ck.check("add", k, [&] { return same(to_burnside(g, cyc_add(a, b)), add(A, B)); });
                    ck.check("mul", k, [&] { return same(to_burnside(g, cyc_mul(a, b)), mul(A, B)); });
                    ck.check("neg", k, [&] { return same(to_burnside(g, cyc_neg(a)), neg(A)); });
                    if (f != Flavor::Ghost) ck.check("ghost", k, [&] { return same(to_burnside(g, cyc_ghost(a)), ghost(A)); });
                    for (auto ri : t.members()) {
                        const std::string tag = "r=" + pad(static_cast<long>(ri));
                        const auto u = class_of_index(g, ri);
                        auto sub = g->subgroup_tables(u);
                        ck.check("frobenius-res/" + tag, k, [&] {
                            auto down = f == Flavor::Witt ? witt_f(g, u, A) : res(g, u, A);
                            return same(to_burnside(sub, cyc_frobenius(ri, a)), down);
                        });
                        ck.check("verschiebung-ind/" + tag, k, [&] {
                            std::vector<RingValue> head;
                            auto small_t = t.divided_by(ri);
                            for (auto n : small_t.members()) head.push_back(a.at(n));
                            CyclicVector small(small_t, f, r, std::move(head));
                            auto sb = to_burnside(sub, small);
                            auto up = f == Flavor::Witt ? witt_v(g, u, sb) : ind(g, u, sb);
                            return same(to_burnside(g, cyc_verschiebung(ri, small, t)), up);
                        });
                    }
                }
            }
        }
    }
    const auto one = QContext::integer(1);
    for (const auto& t : cyclic_truncations())
        for (const char* rname : {"Z", "Q", "Z/8"}) {
            auto r = RingSpec::parse(rname);
            for (Flavor f : {Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic}) {
                Checker ck(rep, opt, "cyclic-identities/q-equals-one/{" + t.to_string() + "}/" + rname + "/" + to_string(f));
                auto& s = ck.sampler();
                for (int k = 0; k < opt.samples; ++k) {
                    auto a = s.cyclic(t, f, r), b = s.cyclic(t, f, r);
                    ck.inputs({show(a), show(b)});
                    ck.check("add", k, [&] { return same(q_add(one, a, b), cyc_add(a, b)); });
                    ck.check("mul", k, [&] { return same(q_mul(one, a, b), cyc_mul(a, b)); });
                    ck.check("neg", k, [&] { return same(q_neg(one, a), cyc_neg(a)); });
                    ck.check("ghost", k, [&] { return same(q_ghost(one, a), cyc_ghost(a)); });
                    for (std::uint64_t rr : {2, 3})
                        if (t.contains(rr))
                            ck.check("frobenius/r=" + std::to_string(rr), k,
                                     [&] { return same(q_frobenius(one, rr, a), cyc_frobenius(rr, a)); });
                }
            }
        }
    {
        Checker ck(rep, opt, "cyclic-identities/q-equals-one/exponential");
        for (long v = -3; v <= 3; ++v)
            for (std::uint64_t n = 1; n <= 12; ++n)
                ck.check("M/x=" + std::to_string(v) + ",n=" + pad(static_cast<long>(n)), -1,
                         [&] { return same(q_exp_M(one, int_value(ZZ, v), n), necklace_poly(int_value(ZZ, v), n)); });
    }
}

using SuiteFn = void (*)(Report&, const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"rings", suite_rings},           {"ghosts", suite_ghosts},   {"diagrams", suite_diagrams},
        {"indres", suite_indres},         {"qpolys", suite_qpolys},   {"qrings", suite_qrings},
        {"artinhasse", suite_artinhasse}, {"cyclic-identities", suite_cyclic},
    };
    return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) n.push_back(name);
        return n;
    }();
    return names;
}

Report run_suite(const std::string& name, const VerifyOptions& opt) {
    if (opt.samples < 0 || opt.magnitude < 1) fail(ErrorKind::InvalidArgument, "samples must be >= 0 and magnitude >= 1");
    Report rep;
    rep.suite = name;
    rep.seed = opt.seed;
    const auto start = std::chrono::steady_clock::now();
    bool found = false;
    for (const auto& [n, fn] : registry())
        if (name == "all" || name == n) {
            fn(rep, opt);
            found = true;
        }
    if (!found) fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
    std::sort(rep.failures.begin(), rep.failures.end(),
              [](const CaseFailure& a, const CaseFailure& b) { return a.id < b.id; });
    rep.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace wb
