#include "wb/burnside/burnside.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <tuple>

#include "json.hpp"
#include "wb/error.hpp"
#include "wb/fault.hpp"

namespace wb {

std::string to_string(Op op) {
    switch (op) {
    case Op::Sum: return "sum";
    case Op::Prod: return "prod";
    case Op::Neg: return "neg";
    }
    return "?";
}

Op parse_op(const std::string& s) {
    if (s == "sum" || s == "add") return Op::Sum;
    if (s == "prod" || s == "mul") return Op::Prod;
    if (s == "neg") return Op::Neg;
    fail(ErrorKind::ParseError, "unknown operation '" + s + "'");
}

namespace {
std::atomic<bool> g_fault{false};
}

void set_fault_injection(bool on) { g_fault = on; }
bool fault_injection() { return g_fault; }

VarId universal_var(char side, const std::string& label) { return intern_var(std::string(1, side) + "_" + label); }

namespace {

using Values = std::vector<RingValue>;
using IntMatrix = std::vector<std::vector<Integer>>;

struct CTerm {
    Integer coef;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> f;  // (slot, exponent)
};
using Compiled = std::vector<std::vector<CTerm>>;

struct GroupCache {
    std::mutex mu;
    std::map<Op, std::unique_ptr<UniversalPolySet>> universal;
    std::map<Op, std::unique_ptr<Compiled>> compiled;
    std::unique_ptr<std::vector<std::vector<TeichTerm>>> teich;
    std::map<std::size_t, IntMatrix> nu;
    int ap_mul_integral = -1, ap_ghost_integral = -1;
};

GroupCache& cache_for(const TablesPtr& g) {
    static std::mutex mu;
    static std::map<const GroupTables*, std::pair<TablesPtr, std::unique_ptr<GroupCache>>> caches;
    std::lock_guard lock(mu);
    auto& slot = caches[g.get()];
    if (!slot.second) slot = {g, std::make_unique<GroupCache>()};
    return *slot.second;
}

std::uint64_t rel_index(const GroupTables& t, std::size_t u, std::size_t v) { return t.index(u) / t.index(v); }

[[noreturn]] void mismatch(const std::string& msg) { fail(ErrorKind::InvalidArgument, msg); }

void check_pair(const IndexedVector& a, const IndexedVector& b) {
    if (a.group != b.group) mismatch("vectors over different groups");
    if (!same_ring(a.ring, b.ring)) fail(ErrorKind::RingMismatch, a.ring->to_string() + " vs " + b.ring->to_string());
    if (a.flavor != b.flavor) mismatch(to_string(a.flavor) + " vs " + to_string(b.flavor) + " vector");
    if (a.rep != b.rep) mismatch(to_string(a.rep) + " vs " + to_string(b.rep) + " representation");
}

void expect(const IndexedVector& x, Flavor f) {
    if (x.flavor != f) mismatch("expected a " + to_string(f) + " vector, got " + to_string(x.flavor));
}

Values cast_all(const Values& v, const RingPtr& r) {
    Values out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(c.cast(r));
    return out;
}

std::optional<Values> try_cast_all(const Values& v, const RingPtr& r) {
    Values out;
    out.reserve(v.size());
    for (const auto& c : v) {
        auto x = c.try_cast(r);
        if (!x) return std::nullopt;
        out.push_back(std::move(*x));
    }
    return out;
}

Values narrow_all(const Values& v, const RingPtr& r, ErrorKind kind, const std::string& what) {
    auto out = try_cast_all(v, r);
    if (!out) fail(kind, what + " does not lie in " + r->to_string());
    return std::move(*out);
}

/// Multiplication by a rational constant. In residue rings a denominator
/// that is not a unit is reported as NonIntegralConstant.
RingValue scale_const(const RingValue& x, const Rational& c) {
    if (is_integer(c)) return x.scaled(Integer(c.get_num()));
    if (x.ring()->kind() == RingSpec::Kind::Residue) {
        try {
            return x.scaled(c);
        } catch (const Error&) {
            fail(ErrorKind::NonIntegralConstant, "constant " + c.get_str() + " is not defined in " + x.ring()->to_string());
        }
    }
    return x.scaled(c);
}

/// Where a map with rational constants is evaluated for values stored in `storage`.
RingPtr work_ring(const RingPtr& storage, bool integral) {
    if (integral || storage->is_q_algebra() || !storage->is_torsion_free()) return storage;
    return storage->rationalization();
}

// ---- Witt ghost components, generic over values with pow/scale/divide ----

RingValue rv_pow(const RingValue& x, std::uint64_t e) { return x.pow(e); }
MPoly rv_pow(const MPoly& x, std::uint64_t e) { return x.pow(e); }
RingValue rv_scale(const RingValue& x, const Integer& k) { return x.scaled(k); }
MPoly rv_scale(const MPoly& x, const Integer& k) { return x * Rational(k); }

template <class T>
std::vector<T> witt_ghost_values(const GroupTables& t, const std::vector<T>& a) {
    const std::size_t k = t.size();
    std::vector<T> out;
    out.reserve(k);
    for (std::size_t u = 0; u < k; ++u) {
        T acc = rv_scale(a[u], t.mark(u, u));
        for (std::size_t v = 0; v < u; ++v)
            if (t.mark(u, v) != 0) acc += rv_scale(rv_pow(a[v], rel_index(t, u, v)), t.mark(u, v));
        out.push_back(std::move(acc));
    }
    return out;
}

/// Solves Phi(a) = g in class order. `divide` returns nullopt on failure.
template <class T, class Div>
std::vector<T> witt_ghost_solve(const GroupTables& t, const std::vector<T>& g, Div divide) {
    const std::size_t k = t.size();
    std::vector<T> a;
    a.reserve(k);
    for (std::size_t u = 0; u < k; ++u) {
        T acc = g[u];
        for (std::size_t v = 0; v < u; ++v)
            if (t.mark(u, v) != 0) acc -= rv_scale(rv_pow(a[v], rel_index(t, u, v)), t.mark(u, v));
        auto q = divide(acc, t.mark(u, u));
        if (!q) fail(ErrorKind::NotInImage, "ghost vector has no Witt preimage at class " + t.cls(u).label);
        a.push_back(std::move(*q));
    }
    return a;
}

Values witt_solve_in(const GroupTables& t, const Values& g) {
    return witt_ghost_solve(t, g, [](const RingValue& x, const Integer& n) { return x.try_divide(n); });
}

// ---- universal polynomials ----

std::optional<UniversalPolySet> load_cached(const TablesPtr& g, Op op, const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    try {
        auto j = nlohmann::json::parse(in);
        if (j.at("fingerprint") != g->fingerprint() || j.at("op") != to_string(op)) return std::nullopt;
        if (j.at("labels").get<std::vector<std::string>>() != g->lattice().labels()) return std::nullopt;
        UniversalPolySet s{g, op, {}};
        for (const auto& p : j.at("polynomials")) s.polys.push_back(MPoly::parse(p.get<std::string>()));
        if (s.polys.size() != g->size()) return std::nullopt;
        for (const auto& p : s.polys)
            if (!p.is_integral()) return std::nullopt;
        return s;
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable cache entries are rederived
    }
}

void store_cached(const UniversalPolySet& s, const std::filesystem::path& file) {
    nlohmann::json j;
    j["fingerprint"] = s.group->fingerprint();
    j["group"] = s.group->group().name();
    j["labels"] = s.group->lattice().labels();
    j["op"] = to_string(s.op);
    std::vector<std::string> polys;
    for (const auto& p : s.polys) polys.push_back(p.to_string());
    j["polynomials"] = polys;
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump() << "\n";
    }
    std::filesystem::rename(tmp, file, ec);
}

Compiled compile(const UniversalPolySet& s) {
    const auto& t = *s.group;
    std::map<VarId, std::uint32_t> slot;
    for (std::size_t i = 0; i < t.size(); ++i) {
        slot[universal_var('a', t.cls(i).label)] = static_cast<std::uint32_t>(i);
        slot[universal_var('b', t.cls(i).label)] = static_cast<std::uint32_t>(t.size() + i);
    }
    Compiled out;
    for (const auto& p : s.polys) {
        std::vector<CTerm> terms;
        for (const auto& [m, c] : p.terms()) {
            CTerm ct{Integer(c.get_num()), {}};
            for (std::size_t i = 0; i < m.size(); ++i) ct.f.push_back({slot.at(m.var_at(i)), m.exp_at(i)});
            terms.push_back(std::move(ct));
        }
        out.push_back(std::move(terms));
    }
    return out;
}

const Compiled& compiled_universal(const TablesPtr& g, Op op) {
    const auto& s = derive_universal(g, op);
    auto& c = cache_for(g);
    std::lock_guard lock(c.mu);
    auto& slot = c.compiled[op];
    if (!slot) slot = std::make_unique<Compiled>(compile(s));
    return *slot;
}

/// Scalar evaluation: Z and Z/m in integers, Q in rationals.
template <class N>
std::vector<N> eval_compiled(const Compiled& cp, const std::vector<N>& in, const Integer* modulus) {
    std::vector<std::vector<N>> pw(in.size());
    auto power = [&](std::uint32_t s, std::uint32_t e) -> const N& {
        auto& p = pw[s];
        if (p.empty()) p.push_back(N(1));
        while (p.size() <= e) {
            N next = p.back() * in[s];
            if constexpr (std::is_same_v<N, Integer>)
                if (modulus) mpz_mod(next.get_mpz_t(), next.get_mpz_t(), modulus->get_mpz_t());
            p.push_back(std::move(next));
        }
        return p[e];
    };
    std::vector<N> out;
    for (const auto& terms : cp) {
        N acc = 0;
        for (const auto& t : terms) {
            N v = t.coef;
            for (auto [s, e] : t.f) {
                v *= power(s, e);
                if constexpr (std::is_same_v<N, Integer>)
                    if (modulus) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), modulus->get_mpz_t());
            }
            acc += v;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

Values eval_universal(const TablesPtr& g, Op op, const RingPtr& r, const Values& a, const Values* b) {
    const auto& cp = compiled_universal(g, op);
    const std::size_t k = g->size();
    Values out;
    if (r->kind() == RingSpec::Kind::Rationals) {
        std::vector<Rational> in(2 * k, Rational(0));
        for (std::size_t i = 0; i < k; ++i) {
            in[i] = a[i].scalar();
            if (b) in[k + i] = (*b)[i].scalar();
        }
        for (auto& v : eval_compiled(cp, in, nullptr)) {
            v.canonicalize();
            out.emplace_back(r, v);
        }
        return out;
    }
    std::vector<Integer> in(2 * k, Integer(0));
    for (std::size_t i = 0; i < k; ++i) {
        in[i] = a[i].scalar().get_num();
        if (b) in[k + i] = (*b)[i].scalar().get_num();
    }
    const Integer* m = r->kind() == RingSpec::Kind::Residue ? &r->modulus() : nullptr;
    for (auto& v : eval_compiled(cp, in, m)) out.emplace_back(r, Rational(v));
    return out;
}

// ---- Teichmuller ----

std::vector<std::vector<TeichTerm>> build_teich(const TablesPtr& g) {
    const std::size_t k = g->size();
    std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, Rational> acc;
    for (std::size_t u = 0; u < k; ++u) {
        auto sub = g->subgroup_tables(u);
        const auto& fusion = g->ind_class_map(u);
        const auto& mu = sub->mobius();
        for (std::size_t vp = 0; vp < sub->size(); ++vp)
            for (std::size_t v = 0; v <= vp; ++v) {
                const Rational& c = mu(v, vp);
                if (c != 0) acc[{fusion[vp], u, sub->index(v)}] += c;
            }
    }
    std::vector<std::vector<TeichTerm>> out(k);
    for (const auto& [key, c] : acc) {
        if (c == 0) continue;
        auto [w, u, e] = key;
        Rational cc = c;
        cc.canonicalize();
        out[w].push_back({u, e, cc});
    }
    for (std::size_t w = 0; w < k; ++w) {
        bool diag = false;
        for (const auto& t : out[w]) {
            if (t.u == w) {
                if (t.k != 1 || t.c != 1) fail(ErrorKind::IntegralityViolation, "Teichmuller table not unitriangular");
                diag = true;
            } else if (t.u > w) {
                fail(ErrorKind::IntegralityViolation, "Teichmuller table not triangular");
            }
        }
        if (!diag) fail(ErrorKind::IntegralityViolation, "Teichmuller table lacks a diagonal term");
    }
    return out;
}

/// tau over a Q-algebra (values already in it).
Values tau_values(const TablesPtr& g, const Values& alpha) {
    const auto& table = teichmuller_table(g);
    std::vector<std::map<std::uint64_t, RingValue>> pw(alpha.size());
    auto power = [&](std::size_t u, std::uint64_t e) -> const RingValue& {
        auto it = pw[u].find(e);
        if (it == pw[u].end()) it = pw[u].emplace(e, alpha[u].pow(e)).first;
        return it->second;
    };
    Values out;
    for (std::size_t w = 0; w < table.size(); ++w) {
        RingValue acc = RingValue::zero(alpha[0].ring());
        for (const auto& t : table[w]) acc += power(t.u, t.k).scaled(t.c);
        out.push_back(std::move(acc));
    }
    return out;
}

Values tau_inv_values(const TablesPtr& g, const Values& x) {
    const auto& table = teichmuller_table(g);
    Values alpha;
    for (std::size_t w = 0; w < table.size(); ++w) {
        RingValue acc = x[w];
        for (const auto& t : table[w])
            if (t.u != w) acc -= alpha[t.u].pow(t.k).scaled(t.c);
        alpha.push_back(std::move(acc));
    }
    return alpha;
}

RingPtr integers() { return RingSpec::integers(); }
RingPtr rationals() { return RingSpec::rationals(); }

/// tau over Z, exact: computed in Q and narrowed.
Values tau_Z(const TablesPtr& g, const Values& alpha_z) {
    return narrow_all(tau_values(g, cast_all(alpha_z, rationals())), integers(), ErrorKind::NotBinomial, "Teichmuller image");
}

Values tau_inv_Z(const TablesPtr& g, const Values& x_z) {
    return narrow_all(tau_inv_values(g, cast_all(x_z, rationals())), integers(), ErrorKind::NotInImage, "Witt preimage");
}

Values theta_values(const GroupTables& t, const Values& x) {
    Values out;
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i].scaled(Integer(static_cast<unsigned long>(t.index(i)))));
    return out;
}

std::optional<Values> theta_inv_values(const GroupTables& t, const Values& x) {
    Values out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto q = x[i].try_divide(Integer(static_cast<unsigned long>(t.index(i))));
        if (!q) return std::nullopt;
        out.push_back(std::move(*q));
    }
    return out;
}

/// Canonical lift in NR form: tau_Z(Witt coordinates reduced into [0,m)).
Values canonical_nr(const TablesPtr& g, const Values& lift, const RingPtr& residue) {
    Values beta = tau_inv_Z(g, lift);
    beta = cast_all(cast_all(beta, residue), integers());
    return tau_Z(g, beta);
}

Values canonical_ap(const TablesPtr& g, const Values& lift, const RingPtr& residue) {
    auto nr = theta_inv_values(*g, lift);
    if (!nr) fail(ErrorKind::NotInImage, "aperiodic lift is not in the image of theta");
    return theta_values(*g, canonical_nr(g, *nr, residue));
}

IndexedVector make_like(const IndexedVector& proto, Values comps) {
    IndexedVector out(proto.group, proto.flavor, proto.ring, std::move(comps), proto.rep);
    return out;
}

IndexedVector finish_lifted(const TablesPtr& g, Flavor f, const RingPtr& residue, const Values& lift) {
    Values c = f == Flavor::Necklace ? canonical_nr(g, lift, residue) : canonical_ap(g, lift, residue);
    return IndexedVector(g, f, residue, std::move(c), Rep::Lifted);
}

bool ap_mul_integral(const TablesPtr& g) {
    auto& c = cache_for(g);
    std::lock_guard lock(c.mu);
    if (c.ap_mul_integral < 0) {
        c.ap_mul_integral = 1;
        for (std::size_t u = 0; u < g->size(); ++u)
            for (const auto& e : g->p_entries(u))
                if (!is_integer(g->a(e.v, e.w, u))) c.ap_mul_integral = 0;
    }
    return c.ap_mul_integral == 1;
}

Rational ap_ghost_const(const GroupTables& t, std::size_t u, std::size_t v) {
    Rational c(t.mark(u, v), Integer(static_cast<unsigned long>(t.index(v))));
    c.canonicalize();
    return c;
}

bool ap_ghost_integral(const TablesPtr& g) {
    auto& c = cache_for(g);
    std::lock_guard lock(c.mu);
    if (c.ap_ghost_integral < 0) {
        c.ap_ghost_integral = 1;
        for (std::size_t u = 0; u < g->size(); ++u)
            for (std::size_t v = 0; v <= u; ++v)
                if (!is_integer(ap_ghost_const(*g, u, v))) c.ap_ghost_integral = 0;
        // the inverse has integral entries when the diagonal is 1
        for (std::size_t u = 0; u < g->size(); ++u)
            if (ap_ghost_const(*g, u, u) != 1) c.ap_ghost_integral = 0;
    }
    return c.ap_ghost_integral == 1;
}

Values nr_product(const GroupTables& t, const Values& x, const Values& y) {
    const std::size_t last = t.size() - 1;
    const bool faulty = fault_injection();
    Values out;
    for (std::size_t u = 0; u < t.size(); ++u) {
        RingValue acc = RingValue::zero(x[0].ring());
        for (const auto& e : t.p_entries(u)) {
            if (x[e.v].is_zero() || y[e.w].is_zero()) continue;
            long p = e.p;
            if (faulty && u == last && e.v == last && e.w == last) p = -p;
            acc += (x[e.v] * y[e.w]).scaled(Integer(p));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

Values ap_product(const GroupTables& t, const Values& x, const Values& y) {
    Values out;
    for (std::size_t u = 0; u < t.size(); ++u) {
        RingValue acc = RingValue::zero(x[0].ring());
        for (const auto& e : t.p_entries(u)) {
            if (x[e.v].is_zero() || y[e.w].is_zero()) continue;
            acc += scale_const(x[e.v] * y[e.w], t.a(e.v, e.w, u));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

Values componentwise(Op op, const Values& a, const Values* b) {
    Values out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        switch (op) {
        case Op::Sum: out.push_back(a[i] + (*b)[i]); break;
        case Op::Prod: out.push_back(a[i] * (*b)[i]); break;
        case Op::Neg: out.push_back(-a[i]); break;
        }
    }
    return out;
}

void check_operands(Op op, const IndexedVector& a, const IndexedVector* b) {
    if ((op == Op::Neg) != (b == nullptr)) mismatch("neg takes one operand, sum and prod take two");
    if (b) check_pair(a, *b);
}

/// Values in the rationalization of `r` turned into a necklace or aperiodic
/// vector over r: direct if possible, else the rationalized form for
/// polynomial rings whose Witt coordinates are integral.
IndexedVector from_rational(const TablesPtr& g, Flavor f, const RingPtr& r, const Values& vals) {
    if (auto d = try_cast_all(vals, r)) return IndexedVector(g, f, r, std::move(*d));
    if (r->kind() == RingSpec::Kind::MultiPoly && !r->is_q_algebra()) {
        IndexedVector x(g, f, r, vals, Rep::Rationalized);
        Values nr = f == Flavor::Necklace ? vals : *theta_inv_values(*g, vals);
        if (try_cast_all(tau_inv_values(g, nr), r)) return x;
    }
    fail(ErrorKind::NotInImage, to_string(f) + " preimage does not lie in " + r->to_string());
}

std::size_t check_sub(const TablesPtr& parent, std::size_t u, const IndexedVector& x) {
    if (u >= parent->size()) mismatch("no subgroup class " + std::to_string(u));
    if (x.group != parent->subgroup_tables(u))
        mismatch("vector is not over " + parent->group().name() + "/" + parent->cls(u).label);
    return u;
}

} // namespace

// ---- public ----

UniversalPolySet derive_universal_uncached(const TablesPtr& g, Op op) {
    const auto& t = *g;
    const std::size_t k = t.size();
    std::vector<MPoly> A, B;
    for (std::size_t i = 0; i < k; ++i) {
        A.push_back(MPoly::variable(universal_var('a', t.cls(i).label)));
        B.push_back(MPoly::variable(universal_var('b', t.cls(i).label)));
    }
    auto ga = witt_ghost_values(t, A);
    std::vector<MPoly> target;
    if (op == Op::Neg) {
        for (auto& x : ga) target.push_back(-x);
    } else {
        auto gb = witt_ghost_values(t, B);
        for (std::size_t i = 0; i < k; ++i) target.push_back(op == Op::Sum ? ga[i] + gb[i] : ga[i] * gb[i]);
    }
    // the solve needs each power of each solved component several times
    std::vector<std::map<std::uint64_t, MPoly>> pw(k);
    std::vector<MPoly> s;
    for (std::size_t u = 0; u < k; ++u) {
        MPoly acc = target[u];
        for (std::size_t v = 0; v < u; ++v) {
            if (t.mark(u, v) == 0) continue;
            auto e = rel_index(t, u, v);
            auto it = pw[v].find(e);
            if (it == pw[v].end()) it = pw[v].emplace(e, s[v].pow(e)).first;
            acc -= it->second * Rational(t.mark(u, v));
        }
        acc *= Rational(1) / Rational(t.mark(u, u));
        if (!acc.is_integral())
            fail(ErrorKind::IntegralityViolation, "universal " + to_string(op) + " polynomial at " + t.cls(u).label);
        s.push_back(std::move(acc));
    }
    return {g, op, std::move(s)};
}

const UniversalPolySet& derive_universal(const TablesPtr& g, Op op) {
    auto& c = cache_for(g);
    std::lock_guard lock(c.mu);
    auto& slot = c.universal[op];
    if (slot) return *slot;
    std::optional<std::filesystem::path> file;
    if (const char* dir = std::getenv("WB_CACHE_DIR"); dir && *dir)
        file = std::filesystem::path(dir) / ("universal-" + g->fingerprint() + "-" + to_string(op) + ".json");
    if (file)
        if (auto s = load_cached(g, op, *file)) slot = std::make_unique<UniversalPolySet>(std::move(*s));
    if (!slot) {
        slot = std::make_unique<UniversalPolySet>(derive_universal_uncached(g, op));
        if (file) store_cached(*slot, *file);
    }
    return *slot;
}

const std::vector<std::vector<TeichTerm>>& teichmuller_table(const TablesPtr& g) {
    auto& c = cache_for(g);
    {
        std::lock_guard lock(c.mu);
        if (c.teich) return *c.teich;
    }
    auto t = std::make_unique<std::vector<std::vector<TeichTerm>>>(build_teich(g));
    std::lock_guard lock(c.mu);
    if (!c.teich) c.teich = std::move(t);
    return *c.teich;
}

IndexedVector wg_op(Op op, const IndexedVector& a, const IndexedVector* b) {
    expect(a, Flavor::Witt);
    check_operands(op, a, b);
    const auto& t = *a.group;
    if (!a.ring->is_polynomial())
        return make_like(a, eval_universal(a.group, op, a.ring, a.comps, b ? &b->comps : nullptr));
    // Polynomial coefficients: substituting into the universal polynomials is
    // an order of magnitude slower than solving the ghost equations directly.
    auto ga = witt_ghost_values(t, a.comps);
    Values target;
    if (op == Op::Neg) {
        for (auto& x : ga) target.push_back(-x);
    } else {
        auto gb = witt_ghost_values(t, b->comps);
        target = componentwise(op, ga, &gb);
    }
    try {
        return make_like(a, witt_solve_in(t, target));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotInImage) fail(ErrorKind::IntegralityViolation, std::string("Witt operation: ") + e.what());
        throw;
    }
}

IndexedVector nr_op(Op op, const IndexedVector& x, const IndexedVector* y) {
    expect(x, Flavor::Necklace);
    check_operands(op, x, y);
    Values out = op == Op::Prod ? nr_product(*x.group, x.comps, y->comps) : componentwise(op, x.comps, y ? &y->comps : nullptr);
    if (x.rep == Rep::Lifted) return finish_lifted(x.group, x.flavor, x.ring, out);
    return make_like(x, std::move(out));
}

IndexedVector ap_op(Op op, const IndexedVector& x, const IndexedVector* y) {
    expect(x, Flavor::Aperiodic);
    check_operands(op, x, y);
    Values out;
    if (op != Op::Prod) {
        out = componentwise(op, x.comps, y ? &y->comps : nullptr);
    } else {
        RingPtr storage = x.storage_ring();
        RingPtr work = work_ring(storage, ap_mul_integral(x.group));
        out = ap_product(*x.group, cast_all(x.comps, work), cast_all(y->comps, work));
        if (work != storage) out = narrow_all(out, storage, ErrorKind::NotInImage, "aperiodic product");
    }
    if (x.rep == Rep::Lifted) return finish_lifted(x.group, x.flavor, x.ring, out);
    return make_like(x, std::move(out));
}

IndexedVector apply(Op op, const IndexedVector& a, const IndexedVector* b) {
    switch (a.flavor) {
    case Flavor::Witt: return wg_op(op, a, b);
    case Flavor::Necklace: return nr_op(op, a, b);
    case Flavor::Aperiodic: return ap_op(op, a, b);
    case Flavor::Ghost:
        check_operands(op, a, b);
        return make_like(a, componentwise(op, a.comps, b ? &b->comps : nullptr));
    }
    return a;
}

IndexedVector add(const IndexedVector& a, const IndexedVector& b) { return apply(Op::Sum, a, &b); }
IndexedVector mul(const IndexedVector& a, const IndexedVector& b) { return apply(Op::Prod, a, &b); }
IndexedVector neg(const IndexedVector& a) { return apply(Op::Neg, a); }

IndexedVector wg_ghost(const IndexedVector& a) {
    expect(a, Flavor::Witt);
    return IndexedVector(a.group, Flavor::Ghost, a.ring, witt_ghost_values(*a.group, a.comps));
}

IndexedVector wg_ghost_inv(const IndexedVector& g) {
    expect(g, Flavor::Ghost);
    return IndexedVector(g.group, Flavor::Witt, g.ring, witt_solve_in(*g.group, g.comps));
}

IndexedVector nr_ghost(const IndexedVector& x) {
    expect(x, Flavor::Necklace);
    const auto& t = *x.group;
    Values out;
    for (std::size_t u = 0; u < t.size(); ++u) {
        RingValue acc = x.comps[u].scaled(t.mark(u, u));
        for (std::size_t v = 0; v < u; ++v)
            if (t.mark(u, v) != 0) acc += x.comps[v].scaled(t.mark(u, v));
        out.push_back(std::move(acc));
    }
    if (x.rep != Rep::Direct) out = narrow_all(out, x.ring, ErrorKind::NotInImage, "necklace ghost");
    return IndexedVector(x.group, Flavor::Ghost, x.ring, std::move(out));
}

IndexedVector nr_ghost_inv(const IndexedVector& g) {
    expect(g, Flavor::Ghost);
    const auto& t = *g.group;
    auto solve = [&](const Values& gv) -> std::optional<Values> {
        Values x;
        for (std::size_t u = 0; u < t.size(); ++u) {
            RingValue acc = gv[u];
            for (std::size_t v = 0; v < u; ++v)
                if (t.mark(u, v) != 0) acc -= x[v].scaled(t.mark(u, v));
            auto q = acc.try_divide(t.mark(u, u));
            if (!q) return std::nullopt;
            x.push_back(std::move(*q));
        }
        return x;
    };
    if (auto x = solve(g.comps)) return IndexedVector(g.group, Flavor::Necklace, g.ring, std::move(*x));
    if (g.ring->is_torsion_free()) {
        auto x = solve(cast_all(g.comps, g.ring->rationalization()));
        return from_rational(g.group, Flavor::Necklace, g.ring, *x);
    }
    fail(ErrorKind::NotInImage, "ghost vector has no necklace preimage over " + g.ring->to_string());
}

IndexedVector ap_ghost(const IndexedVector& x) {
    expect(x, Flavor::Aperiodic);
    const auto& t = *x.group;
    RingPtr storage = x.storage_ring();
    RingPtr work = work_ring(storage, ap_ghost_integral(x.group));
    Values in = cast_all(x.comps, work), out;
    for (std::size_t u = 0; u < t.size(); ++u) {
        RingValue acc = RingValue::zero(work);
        for (std::size_t v = 0; v <= u; ++v)
            if (t.mark(u, v) != 0 && !in[v].is_zero()) acc += scale_const(in[v], ap_ghost_const(t, u, v));
        out.push_back(std::move(acc));
    }
    out = narrow_all(out, x.ring, ErrorKind::NotInImage, "aperiodic ghost");
    return IndexedVector(x.group, Flavor::Ghost, x.ring, std::move(out));
}

IndexedVector ap_ghost_inv(const IndexedVector& g) {
    expect(g, Flavor::Ghost);
    const auto& t = *g.group;
    RingPtr work = work_ring(g.ring, ap_ghost_integral(g.group));
    Values in = cast_all(g.comps, work), x;
    for (std::size_t u = 0; u < t.size(); ++u) {
        RingValue acc = in[u];
        for (std::size_t v = 0; v < u; ++v)
            if (t.mark(u, v) != 0 && !x[v].is_zero()) acc -= scale_const(x[v], ap_ghost_const(t, u, v));
        x.push_back(scale_const(acc, Rational(1) / ap_ghost_const(t, u, u)));
    }
    if (work == g.ring) return IndexedVector(g.group, Flavor::Aperiodic, g.ring, std::move(x));
    return from_rational(g.group, Flavor::Aperiodic, g.ring, x);
}

IndexedVector ghost(const IndexedVector& x) {
    switch (x.flavor) {
    case Flavor::Witt: return wg_ghost(x);
    case Flavor::Necklace: return nr_ghost(x);
    case Flavor::Aperiodic: return ap_ghost(x);
    case Flavor::Ghost: return x;
    }
    return x;
}

IndexedVector ghost_inv(const IndexedVector& g, Flavor target) {
    switch (target) {
    case Flavor::Witt: return wg_ghost_inv(g);
    case Flavor::Necklace: return nr_ghost_inv(g);
    case Flavor::Aperiodic: return ap_ghost_inv(g);
    case Flavor::Ghost: expect(g, Flavor::Ghost); return g;
    }
    return g;
}

IndexedVector exp_M(const TablesPtr& g, const RingValue& r) {
    if (!r.ring()->is_q_algebra() && !r.ring()->is_binomial())
        fail(ErrorKind::NotBinomial, "exponential map needs a Q-algebra or a binomial ring, got " + r.ring()->to_string());
    Values alpha(g->size(), RingValue::zero(r.ring()));
    alpha[0] = r;
    return teichmuller(IndexedVector(g, Flavor::Witt, r.ring(), std::move(alpha)));
}

IndexedVector exp_S(const TablesPtr& g, const RingValue& r) { return theta(exp_M(g, r)); }

IndexedVector teichmuller(const IndexedVector& a) {
    expect(a, Flavor::Witt);
    const RingPtr& r = a.ring;
    if (r->is_q_algebra()) return IndexedVector(a.group, Flavor::Necklace, r, tau_values(a.group, a.comps));
    switch (r->kind()) {
    case RingSpec::Kind::Integers: return IndexedVector(a.group, Flavor::Necklace, r, tau_Z(a.group, a.comps));
    case RingSpec::Kind::Residue:
        return IndexedVector(a.group, Flavor::Necklace, r, tau_Z(a.group, cast_all(a.comps, integers())), Rep::Lifted);
    default:
        return IndexedVector(a.group, Flavor::Necklace, r, tau_values(a.group, cast_all(a.comps, r->rationalization())),
                             Rep::Rationalized);
    }
}

IndexedVector teichmuller_inv(const IndexedVector& x) {
    expect(x, Flavor::Necklace);
    const RingPtr& r = x.ring;
    switch (x.rep) {
    case Rep::Lifted:
        return IndexedVector(x.group, Flavor::Witt, r, cast_all(tau_inv_Z(x.group, x.comps), r));
    case Rep::Rationalized:
        return IndexedVector(x.group, Flavor::Witt, r,
                             narrow_all(tau_inv_values(x.group, x.comps), r, ErrorKind::NotInImage, "Witt preimage"));
    case Rep::Direct: break;
    }
    if (r->is_q_algebra()) return IndexedVector(x.group, Flavor::Witt, r, tau_inv_values(x.group, x.comps));
    if (!r->is_torsion_free())
        fail(ErrorKind::NotInImage, "a direct necklace vector over " + r->to_string() +
                                        " has no Teichmuller preimage; use the lifted representation");
    Values w = tau_inv_values(x.group, cast_all(x.comps, r->rationalization()));
    return IndexedVector(x.group, Flavor::Witt, r, narrow_all(w, r, ErrorKind::NotInImage, "Witt preimage"));
}

IndexedVector theta(const IndexedVector& x) {
    expect(x, Flavor::Necklace);
    return IndexedVector(x.group, Flavor::Aperiodic, x.ring, theta_values(*x.group, x.comps), x.rep);
}

IndexedVector theta_inv(const IndexedVector& x) {
    expect(x, Flavor::Aperiodic);
    auto v = theta_inv_values(*x.group, x.comps);
    if (!v) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!x.comps[i].try_divide(Integer(static_cast<unsigned long>(x.group->index(i)))))
                fail(x.rep == Rep::Lifted ? ErrorKind::NotInImage : ErrorKind::NotInvertibleIndex,
                     "(G:" + x.group->cls(i).label + ") = " + std::to_string(x.group->index(i)) + " does not divide " +
                         x.comps[i].to_string() + " in " + x.storage_ring()->to_string());
    }
    return IndexedVector(x.group, Flavor::Necklace, x.ring, std::move(*v), x.rep);
}

IndexedVector gamma(const IndexedVector& a) { return theta(teichmuller(a)); }
IndexedVector gamma_inv(const IndexedVector& x) { return teichmuller_inv(theta_inv(x)); }

bool delta_membership(const IndexedVector& x, const RingPtr& r) {
    expect(x, Flavor::Necklace);
    if (!r->is_torsion_free()) mismatch("membership is defined for torsion-free rings");
    Values q = cast_all(x.comps, r->rationalization());
    return try_cast_all(tau_inv_values(x.group, q), r).has_value();
}

IndexedVector canonical(const IndexedVector& x) {
    if (x.rep != Rep::Lifted) return x;
    return finish_lifted(x.group, x.flavor, x.ring, x.comps);
}

IndexedVector reduce(const IndexedVector& x, const RingPtr& residue) {
    if (residue->kind() != RingSpec::Kind::Residue) mismatch("reduction target must be Z/m");
    if (x.ring->kind() != RingSpec::Kind::Integers || x.rep != Rep::Direct) mismatch("reduction starts from a direct vector over Z");
    if (x.flavor == Flavor::Witt || x.flavor == Flavor::Ghost)
        return IndexedVector(x.group, x.flavor, residue, cast_all(x.comps, residue));
    return finish_lifted(x.group, x.flavor, residue, x.comps);
}

// ---- induction / restriction ----

IndexedVector ind(const TablesPtr& parent, std::size_t u, const IndexedVector& x) {
    check_sub(parent, u, x);
    if (x.flavor == Flavor::Witt) return witt_v(parent, u, x);
    if (x.flavor == Flavor::Ghost) return ghost_nu(parent, u, x);
    const auto& fusion = parent->ind_class_map(u);
    RingPtr s = x.storage_ring();
    Values out(parent->size(), RingValue::zero(s));
    for (std::size_t v = 0; v < x.size(); ++v) out[fusion[v]] += x.comps[v];
    if (x.flavor == Flavor::Aperiodic)
        for (auto& c : out) c = c.scaled(Integer(static_cast<unsigned long>(parent->index(u))));
    if (x.rep == Rep::Lifted) return finish_lifted(parent, x.flavor, x.ring, out);
    return IndexedVector(parent, x.flavor, x.ring, std::move(out), x.rep);
}

IndexedVector res(const TablesPtr& parent, std::size_t u, const IndexedVector& x) {
    if (u >= parent->size()) mismatch("no subgroup class " + std::to_string(u));
    if (x.group != parent) mismatch("vector is not over " + parent->group().name());
    if (x.flavor == Flavor::Witt) return witt_f(parent, u, x);
    if (x.flavor == Flavor::Ghost) return ghost_F(parent, u, x);
    auto sub = parent->subgroup_tables(u);
    // coefficient of x_V in (Res x)_W
    std::map<std::pair<std::size_t, std::size_t>, Rational> coef;
    bool integral = true;
    for (std::size_t v = 0; v < parent->size(); ++v)
        for (auto [w, m] : parent->res_orbit_data(u, v)) {
            Rational c(static_cast<long>(m));
            if (x.flavor == Flavor::Aperiodic) {
                c *= Rational(static_cast<long>(sub->index(w)), static_cast<long>(parent->index(v)));
                c.canonicalize();
            }
            integral = integral && is_integer(c);
            coef[{w, v}] = c;
        }
    RingPtr s = x.storage_ring();
    RingPtr work = work_ring(s, integral);
    Values in = cast_all(x.comps, work);
    Values out(sub->size(), RingValue::zero(work));
    for (const auto& [wv, c] : coef)
        if (!in[wv.second].is_zero()) out[wv.first] += scale_const(in[wv.second], c);
    if (work != s) out = narrow_all(out, s, ErrorKind::NotInImage, "restriction");
    if (x.rep == Rep::Lifted) return finish_lifted(sub, x.flavor, x.ring, out);
    return IndexedVector(sub, x.flavor, x.ring, std::move(out), x.rep);
}

IndexedVector witt_v(const TablesPtr& parent, std::size_t u, const IndexedVector& a) {
    expect(a, Flavor::Witt);
    check_sub(parent, u, a);
    return teichmuller_inv(ind(parent, u, teichmuller(a)));
}

IndexedVector witt_f(const TablesPtr& parent, std::size_t u, const IndexedVector& a) {
    expect(a, Flavor::Witt);
    return teichmuller_inv(res(parent, u, teichmuller(a)));
}

const IntMatrix& nu_matrix(const TablesPtr& parent, std::size_t u) {
    auto& c = cache_for(parent);
    {
        std::lock_guard lock(c.mu);
        auto it = c.nu.find(u);
        if (it != c.nu.end()) return it->second;
    }
    auto sub = parent->subgroup_tables(u);
    const auto& fusion = parent->ind_class_map(u);
    const auto& mu = sub->mobius();
    IntMatrix n(parent->size(), std::vector<Integer>(sub->size(), 0));
    for (std::size_t j = 0; j < sub->size(); ++j) {
        // x = phi~_U^{-1}(e_j): x_{V'} = mu(j, V')
        std::vector<Rational> y(parent->size(), Rational(0));
        for (std::size_t vp = j; vp < sub->size(); ++vp) y[fusion[vp]] += mu(j, vp);
        for (std::size_t z = 0; z < parent->size(); ++z) {
            Rational acc = 0;
            for (std::size_t w = 0; w <= z; ++w) acc += Rational(parent->mark(z, w)) * y[w];
            acc.canonicalize();
            if (!is_integer(acc)) fail(ErrorKind::IntegralityViolation, "ghost induction matrix is not integral");
            n[z][j] = acc.get_num();
        }
    }
    std::lock_guard lock(c.mu);
    return c.nu.emplace(u, std::move(n)).first->second;
}

IndexedVector ghost_nu(const TablesPtr& parent, std::size_t u, const IndexedVector& b) {
    expect(b, Flavor::Ghost);
    check_sub(parent, u, b);
    const auto& n = nu_matrix(parent, u);
    Values out;
    for (std::size_t z = 0; z < parent->size(); ++z) {
        RingValue acc = RingValue::zero(b.ring);
        for (std::size_t j = 0; j < b.size(); ++j)
            if (n[z][j] != 0) acc += b.comps[j].scaled(n[z][j]);
        out.push_back(std::move(acc));
    }
    return IndexedVector(parent, Flavor::Ghost, b.ring, std::move(out));
}

IndexedVector ghost_F(const TablesPtr& parent, std::size_t u, const IndexedVector& b) {
    expect(b, Flavor::Ghost);
    if (b.group != parent) mismatch("vector is not over " + parent->group().name());
    auto sub = parent->subgroup_tables(u);
    const auto& fusion = parent->ind_class_map(u);
    Values out;
    for (std::size_t w = 0; w < sub->size(); ++w) out.push_back(b.comps[fusion[w]]);
    return IndexedVector(sub, Flavor::Ghost, b.ring, std::move(out));
}

} // namespace wb
