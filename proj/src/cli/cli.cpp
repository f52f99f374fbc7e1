#include "wb/cli/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wb/burnside/burnside.hpp"
#include "wb/cyclic/cyclic.hpp"
#include "wb/error.hpp"
#include "wb/fault.hpp"
#include "wb/q/qdeform.hpp"
#include "wb/verify/suites.hpp"

namespace wb {
namespace {

using json = nlohmann::json;

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::IntegralityViolation:
    case ErrorKind::NumericalityViolation:
    case ErrorKind::NonExactDivision: return kExitInternal;
    case ErrorKind::NotInImage:
    case ErrorKind::NonIntegralConstant:
    case ErrorKind::NotBinomial:
    case ErrorKind::NotInvertibleIndex:
    case ErrorKind::TruncationTooSmall:
    case ErrorKind::NonInvertibleDiagonal: return kExitDomain;
    default: return kExitUsage;
    }
}

[[noreturn]] void schema(const std::string& what) { fail(ErrorKind::SchemaMismatch, what); }

std::string rational_string(const Rational& r) { return r.get_str(); }

// ---- vector files ----

json read_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) fail(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ParseError, path + ": " + e.what());
    }
}

std::vector<std::string> string_array(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) schema(std::string("'") + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& x : j[key]) {
        if (!x.is_string()) schema(std::string("'") + key + "' must be an array of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

std::string string_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) schema(std::string("'") + key + "' must be a string");
    return j[key].get<std::string>();
}

struct Doc {
    json group;
    Flavor flavor = Flavor::Witt;
    RingPtr ring;
    Rep rep = Rep::Direct;
    std::vector<std::string> comps, labels;
};

Doc load_doc(const std::string& path) {
    json j = read_json(path);
    if (!j.is_object()) schema(path + ": expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (key != "schema_version" && key != "group" && key != "flavor" && key != "ring" && key != "components" &&
            key != "labels" && key != "representation")
            schema(path + ": unknown key '" + key + "'");
    if (!j.contains("schema_version") || j["schema_version"] != 1) schema(path + ": schema_version must be 1");
    if (!j.contains("group")) schema(path + ": missing 'group'");
    Doc d;
    d.group = j["group"];
    d.flavor = parse_flavor(string_field(j, "flavor"));
    d.ring = RingSpec::parse(string_field(j, "ring"));
    if (j.contains("representation")) d.rep = parse_rep(string_field(j, "representation"));
    d.comps = string_array(j, "components");
    d.labels = string_array(j, "labels");
    return d;
}

struct Loaded {
    IndexedVector v;
    std::string desc;
};

Loaded load_indexed(const std::string& path) {
    Doc d = load_doc(path);
    if (!d.group.is_string()) schema(path + ": expected a group descriptor string");
    auto desc = d.group.get<std::string>();
    auto g = GroupTables::resolve(desc);
    if (d.labels != g->lattice().labels()) schema(path + ": labels do not match the class order of " + desc);
    return {IndexedVector::parse(g, d.flavor, d.ring, d.comps, d.rep), desc};
}

std::vector<std::string> trunc_labels(const TruncationSet& t) {
    std::vector<std::string> out;
    for (auto n : t.members()) out.push_back(std::to_string(n));
    return out;
}

CyclicVector load_cyclic(const std::string& path) {
    Doc d = load_doc(path);
    if (!d.group.is_object() || d.group.size() != 1 || !d.group.contains("cyclic_trunc") ||
        !d.group["cyclic_trunc"].is_array())
        schema(path + ": expected {\"cyclic_trunc\": [...]}");
    std::vector<std::uint64_t> m;
    for (const auto& x : d.group["cyclic_trunc"]) {
        if (!x.is_number_unsigned()) schema(path + ": truncation members must be positive integers");
        m.push_back(x.get<std::uint64_t>());
    }
    auto t = TruncationSet::from_members(m);
    if (t.members() != m) schema(path + ": truncation set must be listed in increasing order");
    if (d.labels != trunc_labels(t)) schema(path + ": labels do not match the truncation set");
    if (d.rep != Rep::Direct) schema(path + ": cyclic vectors have no representation tag");
    return CyclicVector::parse(t, d.flavor, d.ring, d.comps);
}

json vector_json(const IndexedVector& v, const std::string& desc) {
    json j;
    j["schema_version"] = 1;
    j["group"] = desc;
    j["flavor"] = to_string(v.flavor);
    j["ring"] = v.ring->to_string();
    j["components"] = v.to_strings();
    j["labels"] = v.group->lattice().labels();
    if (v.rep != Rep::Direct) j["representation"] = to_string(v.rep);
    return j;
}

json vector_json(const CyclicVector& v) {
    json j;
    j["schema_version"] = 1;
    j["group"] = {{"cyclic_trunc", v.trunc.members()}};
    j["flavor"] = to_string(v.flavor);
    j["ring"] = v.ring->to_string();
    j["components"] = v.to_strings();
    j["labels"] = trunc_labels(v.trunc);
    return j;
}

// ---- flag consistency ----

void check_ring(const std::string& flag, const RingPtr& r) {
    if (flag.empty()) return;
    if (!same_ring(RingSpec::parse(flag), r))
        fail(ErrorKind::RingMismatch, "--ring " + flag + " but the input is over " + r->to_string());
}

void check_group(const std::string& flag, const Loaded& x) {
    if (flag.empty()) return;
    if (GroupTables::resolve(flag) != x.v.group)
        schema("--group " + flag + " but the input is over " + x.desc);
}

void check_flavor(Flavor want, Flavor got) {
    if (want != got) schema("expected a " + to_string(want) + " vector, got " + to_string(got));
}

void check_same_shape(const Loaded& a, const Loaded& b) {
    if (a.v.group != b.v.group) schema("operands are over " + a.desc + " and " + b.desc);
    if (a.v.flavor != b.v.flavor) schema("operands have flavors " + to_string(a.v.flavor) + " and " + to_string(b.v.flavor));
    if (!same_ring(a.v.ring, b.v.ring)) fail(ErrorKind::RingMismatch, "operands have different rings");
}

struct TruncFlags {
    std::uint64_t n = 0;
    std::string set;

    std::optional<TruncationSet> get() const {
        if (n && !set.empty()) fail(ErrorKind::InvalidArgument, "give --trunc or --trunc-set, not both");
        if (n) return TruncationSet::divisors_of(n);
        if (!set.empty()) return TruncationSet::parse(set);
        return std::nullopt;
    }
    TruncationSet require() const {
        auto t = get();
        if (!t) fail(ErrorKind::InvalidArgument, "--trunc or --trunc-set is required");
        return *t;
    }
    void check(const CyclicVector& v) const {
        auto t = get();
        if (t && *t != v.trunc) schema("truncation " + t->to_string() + " but the input is on " + v.trunc.to_string());
    }
};

void check_cyclic_pair(const CyclicVector& a, const CyclicVector& b) {
    if (a.trunc != b.trunc) schema("operands are on " + a.trunc.to_string() + " and " + b.trunc.to_string());
    if (a.flavor != b.flavor) schema("operands have flavors " + to_string(a.flavor) + " and " + to_string(b.flavor));
    if (!same_ring(a.ring, b.ring)) fail(ErrorKind::RingMismatch, "operands have different rings");
}

std::string key_of(std::initializer_list<std::uint64_t> xs) {
    std::string s;
    for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

json report_json(const Report& r) {
    json fails = json::array();
    for (const auto& f : r.failures) fails.push_back({{"case", f.id}, {"inputs", f.inputs}, {"lhs", f.lhs}, {"rhs", f.rhs}});
    return {{"suite", r.suite},
            {"cases_run", r.cases_run},
            {"failures", fails},
            {"seed", r.seed},
            {"runtime_ms", r.runtime_ms}};
}

// ---- the command tree ----

struct Opts {
    std::string group, ring, subgroup, op, flavor, lhs, rhs, in, q, x, target, suite;
    TruncFlags trunc;
    std::uint64_t n = 0, r = 0, deg = 0, seed = 0;
    int size = 4;
    bool inverse = false, inject = false;
};

class Tool {
public:
    Tool(std::ostream& out) : out_(out) {}

    void build(CLI::App& app);
    int run() { return action_ ? action_() : kExitUsage; }

private:
    void emit(const json& j) { out_ << j.dump(2) << "\n"; }
    void on(CLI::App* sub, std::function<int()> fn) {
        sub->callback([this, fn = std::move(fn)] { action_ = fn; });
    }

    void add_ring_ops(CLI::App& app, const char* name, Flavor f);
    void add_cyclic(CLI::App& app);
    void add_q(CLI::App& app);

    std::ostream& out_;
    Opts o_;
    std::function<int()> action_;
};

void Tool::build(CLI::App& app) {
    app.require_subcommand(1);

    auto* group = app.add_subcommand("group", "Finite group tables");
    group->require_subcommand(1);
    auto* info = group->add_subcommand("info", "Subgroup classes, table of marks and its inverse");
    info->add_option("--group", o_.group, "Group descriptor (C6, S3, D4, [(1 2 3)], ...)")->required();
    on(info, [this] {
        auto g = GroupTables::resolve(o_.group);
        json classes = json::array(), marks = json::array(), mobius = json::array();
        for (std::size_t i = 0; i < g->size(); ++i) {
            const auto& c = g->cls(i);
            classes.push_back({{"label", c.label},
                               {"order", c.order},
                               {"index", c.index},
                               {"normalizer_index", c.normalizer_index},
                               {"conjugates", c.conjugates.size()}});
            json mr = json::array(), ur = json::array();
            for (std::size_t j = 0; j < g->size(); ++j) {
                mr.push_back(g->zeta()(i, j).get_num().get_si());
                ur.push_back(rational_string(g->mobius()(i, j)));
            }
            marks.push_back(mr);
            mobius.push_back(ur);
        }
        emit({{"group", o_.group},
              {"order", g->group().order()},
              {"classes", classes},
              {"marks", marks},
              {"mobius", mobius}});
        return kExitOk;
    });

    add_ring_ops(app, "witt", Flavor::Witt);
    add_ring_ops(app, "necklace", Flavor::Necklace);
    add_ring_ops(app, "aperiodic", Flavor::Aperiodic);

    auto* gh = app.add_subcommand("ghost", "Ghost components, or their preimage with --inverse");
    gh->add_option("--in", o_.in, "Vector file ('-' for stdin)")->required();
    gh->add_option("--flavor", o_.flavor, "W|Nr|Ap (input flavor, or target with --inverse)");
    gh->add_flag("--inverse", o_.inverse);
    gh->add_option("--group", o_.group);
    gh->add_option("--ring", o_.ring);
    on(gh, [this] {
        auto x = load_indexed(o_.in);
        check_group(o_.group, x);
        check_ring(o_.ring, x.v.ring);
        if (o_.inverse) {
            if (o_.flavor.empty()) fail(ErrorKind::InvalidArgument, "--inverse needs --flavor");
            check_flavor(Flavor::Ghost, x.v.flavor);
            emit(vector_json(ghost_inv(x.v, parse_flavor(o_.flavor)), x.desc));
        } else {
            if (!o_.flavor.empty()) check_flavor(parse_flavor(o_.flavor), x.v.flavor);
            emit(vector_json(ghost(x.v), x.desc));
        }
        return kExitOk;
    });

    struct Pair {
        const char* name;
        const char* help;
        Flavor from, to;
        IndexedVector (*fwd)(const IndexedVector&);
        IndexedVector (*inv)(const IndexedVector&);
    };
    static const Pair pairs[] = {
        {"teichmuller", "Witt -> necklace coordinates", Flavor::Witt, Flavor::Necklace, teichmuller, teichmuller_inv},
        {"theta", "Necklace -> aperiodic coordinates", Flavor::Necklace, Flavor::Aperiodic, theta, theta_inv},
        {"gamma", "Witt -> aperiodic coordinates", Flavor::Witt, Flavor::Aperiodic, gamma, gamma_inv},
    };
    for (const auto& p : pairs) {
        auto* sub = app.add_subcommand(p.name, p.help);
        sub->add_option("--in", o_.in, "Vector file ('-' for stdin)")->required();
        sub->add_flag("--inverse", o_.inverse);
        sub->add_option("--group", o_.group);
        sub->add_option("--ring", o_.ring);
        on(sub, [this, &p] {
            auto x = load_indexed(o_.in);
            check_group(o_.group, x);
            check_ring(o_.ring, x.v.ring);
            check_flavor(o_.inverse ? p.to : p.from, x.v.flavor);
            emit(vector_json(o_.inverse ? p.inv(x.v) : p.fwd(x.v), x.desc));
            return kExitOk;
        });
    }

    for (bool induce : {true, false}) {
        auto* sub = app.add_subcommand(induce ? "ind" : "res",
                                       induce ? "Induction from a subgroup class (v_U on Witt vectors)"
                                              : "Restriction to a subgroup class (f_U on Witt vectors)");
        sub->add_option("--group", o_.group, "Parent group descriptor")->required();
        sub->add_option("--subgroup", o_.subgroup, "Subgroup class label")->required();
        sub->add_option("--in", o_.in, "Vector file ('-' for stdin)")->required();
        sub->add_option("--ring", o_.ring);
        on(sub, [this, induce] {
            auto g = GroupTables::resolve(o_.group);
            std::size_t u;
            try {
                u = g->lattice().find(o_.subgroup);
            } catch (const Error&) {
                fail(ErrorKind::UnknownGroup, "'" + o_.subgroup + "' is not a subgroup class of " + o_.group);
            }
            const std::string sub_desc = o_.group + "/" + o_.subgroup;
            auto x = load_indexed(o_.in);
            check_ring(o_.ring, x.v.ring);
            if (x.v.group != (induce ? g->subgroup_tables(u) : g))
                schema("input must be over " + (induce ? sub_desc : o_.group) + ", got " + x.desc);
            IndexedVector y;
            switch (x.v.flavor) {
            case Flavor::Witt: y = induce ? witt_v(g, u, x.v) : witt_f(g, u, x.v); break;
            case Flavor::Ghost: y = induce ? ghost_nu(g, u, x.v) : ghost_F(g, u, x.v); break;
            default: y = induce ? ind(g, u, x.v) : res(g, u, x.v); break;
            }
            emit(vector_json(y, induce ? o_.group : sub_desc));
            return kExitOk;
        });
    }

    auto* uni = app.add_subcommand("universal", "Universal Witt polynomials of a group");
    uni->add_option("--group", o_.group)->required();
    uni->add_option("--op", o_.op, "sum|prod|neg")->required();
    on(uni, [this] {
        auto g = GroupTables::resolve(o_.group);
        const auto op = parse_op(o_.op);
        const auto& set = derive_universal(g, op);
        std::vector<std::string> polys;
        for (const auto& p : set.polys) polys.push_back(p.to_string());
        emit({{"group", o_.group}, {"op", to_string(op)}, {"labels", g->lattice().labels()}, {"polynomials", polys}});
        return kExitOk;
    });

    add_cyclic(app);
    add_q(app);

    auto* ver = app.add_subcommand("verify", "Run a property suite; exit 1 on any failure");
    ver->add_option("--suite", o_.suite, "rings|ghosts|diagrams|indres|qpolys|qrings|artinhasse|cyclic-identities|all")
        ->required();
    ver->add_option("--seed", o_.seed, "Random seed");
    ver->add_option("--size", o_.size, "Random samples per configuration")->check(CLI::NonNegativeNumber);
    ver->add_flag("--inject-fault", o_.inject, "Self-test: negate one necklace structure constant");
    on(ver, [this] {
        set_fault_injection(o_.inject);
        auto rep = run_suite(o_.suite, {o_.seed, o_.size, 3});
        set_fault_injection(false);
        emit(report_json(rep));
        return rep.ok() ? kExitOk : kExitVerifyFailed;
    });
}

void Tool::add_ring_ops(CLI::App& app, const char* name, Flavor f) {
    auto* cmd = app.add_subcommand(name, to_string(f) + " ring arithmetic");
    cmd->require_subcommand(1);
    for (Op op : {Op::Sum, Op::Prod, Op::Neg}) {
        const char* verb = op == Op::Sum ? "add" : op == Op::Prod ? "mul" : "neg";
        auto* sub = cmd->add_subcommand(verb);
        sub->add_option("--lhs", o_.lhs, "Vector file ('-' for stdin)")->required();
        if (op != Op::Neg) sub->add_option("--rhs", o_.rhs, "Vector file")->required();
        sub->add_option("--group", o_.group);
        sub->add_option("--ring", o_.ring);
        on(sub, [this, f, op] {
            auto a = load_indexed(o_.lhs);
            check_group(o_.group, a);
            check_ring(o_.ring, a.v.ring);
            check_flavor(f, a.v.flavor);
            if (op == Op::Neg) {
                emit(vector_json(neg(a.v), a.desc));
                return kExitOk;
            }
            auto b = load_indexed(o_.rhs);
            check_same_shape(a, b);
            emit(vector_json(apply(op, a.v, &b.v), a.desc));
            return kExitOk;
        });
    }
}

void Tool::add_cyclic(CLI::App& app) {
    auto* cyc = app.add_subcommand("cyclic", "Witt, necklace and aperiodic vectors on truncation sets");
    cyc->require_subcommand(1);
    auto trunc_opts = [this](CLI::App* s) {
        s->add_option("--trunc", o_.trunc.n, "Truncation set: the divisors of N");
        s->add_option("--trunc-set", o_.trunc.set, "Truncation set as 1,2,3,...");
    };

    auto* uni = cyc->add_subcommand("universal", "Integral Witt polynomials in a_n, b_n");
    uni->add_option("--op", o_.op, "sum|prod|neg")->required();
    trunc_opts(uni);
    on(uni, [this] {
        auto t = o_.trunc.require();
        const auto op = parse_op(o_.op);
        std::vector<std::string> polys;
        for (const auto& p : cyc_universal(t, op)) polys.push_back(p.to_string());
        emit({{"trunc", t.members()}, {"op", to_string(op)}, {"polynomials", polys}});
        return kExitOk;
    });

    for (Op op : {Op::Sum, Op::Prod, Op::Neg}) {
        const char* verb = op == Op::Sum ? "add" : op == Op::Prod ? "mul" : "neg";
        auto* sub = cyc->add_subcommand(verb, "Ring operation in the flavor of the inputs");
        sub->add_option("--lhs", o_.lhs)->required();
        if (op != Op::Neg) sub->add_option("--rhs", o_.rhs)->required();
        sub->add_option("--ring", o_.ring);
        trunc_opts(sub);
        on(sub, [this, op] {
            auto a = load_cyclic(o_.lhs);
            o_.trunc.check(a);
            check_ring(o_.ring, a.ring);
            if (op == Op::Neg) {
                emit(vector_json(cyc_neg(a)));
                return kExitOk;
            }
            auto b = load_cyclic(o_.rhs);
            check_cyclic_pair(a, b);
            emit(vector_json(cyc_apply(op, a, &b)));
            return kExitOk;
        });
    }

    auto* gh = cyc->add_subcommand("ghost", "Ghost components, or their preimage with --inverse");
    gh->add_option("--in", o_.in)->required();
    gh->add_option("--flavor", o_.flavor);
    gh->add_flag("--inverse", o_.inverse);
    gh->add_option("--ring", o_.ring);
    trunc_opts(gh);
    on(gh, [this] {
        auto x = load_cyclic(o_.in);
        o_.trunc.check(x);
        check_ring(o_.ring, x.ring);
        if (o_.inverse) {
            if (o_.flavor.empty()) fail(ErrorKind::InvalidArgument, "--inverse needs --flavor");
            check_flavor(Flavor::Ghost, x.flavor);
            emit(vector_json(cyc_ghost_inv(x, parse_flavor(o_.flavor))));
        } else {
            if (!o_.flavor.empty()) check_flavor(parse_flavor(o_.flavor), x.flavor);
            emit(vector_json(cyc_ghost(x)));
        }
        return kExitOk;
    });

    auto* th = cyc->add_subcommand("theta", "x_n -> n x_n (necklace -> aperiodic)");
    th->add_option("--in", o_.in)->required();
    th->add_flag("--inverse", o_.inverse);
    trunc_opts(th);
    on(th, [this] {
        auto x = load_cyclic(o_.in);
        o_.trunc.check(x);
        check_flavor(o_.inverse ? Flavor::Aperiodic : Flavor::Necklace, x.flavor);
        emit(vector_json(o_.inverse ? cyc_theta_inv(x) : cyc_theta(x)));
        return kExitOk;
    });

    auto* fr = cyc->add_subcommand("frobenius", "f_r onto {n : rn in T}");
    fr->add_option("--r", o_.r)->required();
    fr->add_option("--in", o_.in)->required();
    trunc_opts(fr);
    on(fr, [this] {
        auto x = load_cyclic(o_.in);
        o_.trunc.check(x);
        emit(vector_json(cyc_frobenius(o_.r, x)));
        return kExitOk;
    });

    auto* vs = cyc->add_subcommand("verschiebung", "V_r, into --target (default: the input truncation)");
    vs->add_option("--r", o_.r)->required();
    vs->add_option("--in", o_.in)->required();
    vs->add_option("--target", o_.target, "Target truncation set as 1,2,3,...");
    trunc_opts(vs);
    on(vs, [this] {
        auto x = load_cyclic(o_.in);
        o_.trunc.check(x);
        std::optional<TruncationSet> target;
        if (!o_.target.empty()) target = TruncationSet::parse(o_.target);
        emit(vector_json(cyc_verschiebung(o_.r, x, target)));
        return kExitOk;
    });

    auto* ex = cyc->add_subcommand("exp", "M(x,n) (necklace) or S(x,n) (aperiodic) for n in T");
    ex->add_option("--x", o_.x, "Ring element")->required();
    ex->add_option("--ring", o_.ring, "Default Z");
    ex->add_option("--flavor", o_.flavor, "Nr (default) or Ap");
    trunc_opts(ex);
    on(ex, [this] {
        auto t = o_.trunc.require();
        auto ring = RingSpec::parse(o_.ring.empty() ? "Z" : o_.ring);
        auto f = o_.flavor.empty() ? Flavor::Necklace : parse_flavor(o_.flavor);
        if (f != Flavor::Necklace && f != Flavor::Aperiodic) fail(ErrorKind::InvalidArgument, "--flavor must be Nr or Ap");
        auto x = RingValue::parse(ring, o_.x);
        std::vector<RingValue> c;
        for (auto n : t.members()) c.push_back(f == Flavor::Necklace ? necklace_poly(x, n) : aperiodic_poly(x, n));
        emit(vector_json(CyclicVector(t, f, ring, std::move(c))));
        return kExitOk;
    });
}

void Tool::add_q(CLI::App& app) {
    auto trunc_opts = [this](CLI::App* s) {
        s->add_option("--trunc", o_.trunc.n, "Truncation set: the divisors of N");
        s->add_option("--trunc-set", o_.trunc.set, "Truncation set as 1,2,3,...");
    };

    auto* qp = app.add_subcommand("qpoly", "Polynomial tables over Q[q]");
    qp->require_subcommand(1);
    auto* P = qp->add_subcommand("P", "P_{d,i,j} for d | n and i, j | d");
    P->add_option("--n", o_.n)->required()->check(CLI::PositiveNumber);
    on(P, [this] {
        json table = json::object();
        for (auto d : divisors(o_.n))
            for (auto i : divisors(d))
                for (auto j : divisors(d)) table[key_of({d, i, j})] = p_poly(d, i, j).to_string();
        emit({{"n", o_.n}, {"P", table}});
        return kExitOk;
    });
    for (const char* name : {"zeta", "mu"}) {
        auto* sub = qp->add_subcommand(name, std::string(name) + "^q(d1, d2) for d1 | d2 | n");
        sub->add_option("--n", o_.n)->required()->check(CLI::PositiveNumber);
        const bool is_zeta = std::string(name) == "zeta";
        on(sub, [this, is_zeta, name] {
            json table = json::object();
            for (auto d2 : divisors(o_.n))
                for (auto d1 : divisors(d2))
                    table[key_of({d1, d2})] = (is_zeta ? zeta_q(d1, d2) : mu_q(d1, d2)).to_string();
            emit({{"n", o_.n}, {name, table}});
            return kExitOk;
        });
    }
    auto* tau = qp->add_subcommand("tau", "tau^q(i, m) for i | m | n");
    tau->add_option("--n", o_.n)->required()->check(CLI::PositiveNumber);
    on(tau, [this] {
        json table = json::object();
        for (auto m : divisors(o_.n))
            for (auto i : divisors(m)) table[key_of({i, m})] = tau_q(i, m).to_string();
        emit({{"n", o_.n}, {"tau", table}});
        return kExitOk;
    });

    auto* qu = app.add_subcommand("quniversal", "q-Witt polynomials in a_n, b_n over Q[q]");
    qu->add_option("--op", o_.op, "sum|prod|neg")->required();
    trunc_opts(qu);
    on(qu, [this] {
        auto t = o_.trunc.require();
        const auto op = parse_op(o_.op);
        std::vector<std::string> polys;
        for (const auto& p : q_universal(t, op)) polys.push_back(p.to_string());
        emit({{"trunc", t.members()}, {"op", to_string(op)}, {"polynomials", polys}});
        return kExitOk;
    });

    auto* qw = app.add_subcommand("qwitt", "q-deformed Witt, necklace and aperiodic vectors");
    qw->require_subcommand(1);
    auto q_opt = [this](CLI::App* s) { s->add_option("--q", o_.q, "An integer or the letter q")->required(); };

    for (Op op : {Op::Sum, Op::Prod, Op::Neg}) {
        const char* verb = op == Op::Sum ? "add" : op == Op::Prod ? "mul" : "neg";
        auto* sub = qw->add_subcommand(verb, "Ring operation in the flavor of the inputs");
        q_opt(sub);
        sub->add_option("--lhs", o_.lhs)->required();
        if (op != Op::Neg) sub->add_option("--rhs", o_.rhs)->required();
        sub->add_option("--ring", o_.ring);
        trunc_opts(sub);
        on(sub, [this, op] {
            auto q = QContext::parse(o_.q);
            auto a = load_cyclic(o_.lhs);
            o_.trunc.check(a);
            check_ring(o_.ring, a.ring);
            if (op == Op::Neg) {
                emit(vector_json(q_neg(q, a)));
                return kExitOk;
            }
            auto b = load_cyclic(o_.rhs);
            check_cyclic_pair(a, b);
            emit(vector_json(q_apply(q, op, a, &b)));
            return kExitOk;
        });
    }

    auto* gh = qw->add_subcommand("ghost", "q-ghost components, or their preimage with --inverse");
    q_opt(gh);
    gh->add_option("--in", o_.in)->required();
    gh->add_option("--flavor", o_.flavor);
    gh->add_flag("--inverse", o_.inverse);
    trunc_opts(gh);
    on(gh, [this] {
        auto q = QContext::parse(o_.q);
        auto x = load_cyclic(o_.in);
        o_.trunc.check(x);
        if (o_.inverse) {
            if (o_.flavor.empty()) fail(ErrorKind::InvalidArgument, "--inverse needs --flavor");
            check_flavor(Flavor::Ghost, x.flavor);
            emit(vector_json(q_ghost_inv(q, x, parse_flavor(o_.flavor))));
        } else {
            if (!o_.flavor.empty()) check_flavor(parse_flavor(o_.flavor), x.flavor);
            emit(vector_json(q_ghost(q, x)));
        }
        return kExitOk;
    });

    auto* te = qw->add_subcommand("teichmuller", "T^q: Witt -> necklace coordinates");
    q_opt(te);
    te->add_option("--in", o_.in)->required();
    te->add_flag("--inverse", o_.inverse);
    trunc_opts(te);
    on(te, [this] {
        auto q = QContext::parse(o_.q);
        auto x = load_cyclic(o_.in);
        o_.trunc.check(x);
        check_flavor(o_.inverse ? Flavor::Necklace : Flavor::Witt, x.flavor);
        emit(vector_json(o_.inverse ? q_teichmuller_inv(q, x) : q_teichmuller(q, x)));
        return kExitOk;
    });

    auto* th = qw->add_subcommand("theta", "x_n -> n x_n (independent of q)");
    q_opt(th);
    th->add_option("--in", o_.in)->required();
    th->add_flag("--inverse", o_.inverse);
    trunc_opts(th);
    on(th, [this] {
        QContext::parse(o_.q);
        auto x = load_cyclic(o_.in);
        o_.trunc.check(x);
        check_flavor(o_.inverse ? Flavor::Aperiodic : Flavor::Necklace, x.flavor);
        emit(vector_json(o_.inverse ? q_theta_inv(x) : q_theta(x)));
        return kExitOk;
    });

    auto* fr = qw->add_subcommand("frobenius", "f_r^q onto {n : rn in T}");
    q_opt(fr);
    fr->add_option("--r", o_.r)->required();
    fr->add_option("--in", o_.in)->required();
    trunc_opts(fr);
    on(fr, [this] {
        auto q = QContext::parse(o_.q);
        auto x = load_cyclic(o_.in);
        o_.trunc.check(x);
        emit(vector_json(q_frobenius(q, o_.r, x)));
        return kExitOk;
    });

    auto* vs = qw->add_subcommand("verschiebung", "V_r (independent of q)");
    q_opt(vs);
    vs->add_option("--r", o_.r)->required();
    vs->add_option("--in", o_.in)->required();
    vs->add_option("--target", o_.target, "Target truncation set as 1,2,3,...");
    trunc_opts(vs);
    on(vs, [this] {
        QContext::parse(o_.q);
        auto x = load_cyclic(o_.in);
        o_.trunc.check(x);
        std::optional<TruncationSet> target;
        if (!o_.target.empty()) target = TruncationSet::parse(o_.target);
        emit(vector_json(q_verschiebung(o_.r, x, target)));
        return kExitOk;
    });

    auto* ex = qw->add_subcommand("exp", "M^q(x,n) (necklace) or S^q(x,n) (aperiodic) for n in T");
    q_opt(ex);
    ex->add_option("--x", o_.x, "Ring element")->required();
    ex->add_option("--ring", o_.ring, "Default Z");
    ex->add_option("--flavor", o_.flavor, "Nr (default) or Ap");
    trunc_opts(ex);
    on(ex, [this] {
        auto q = QContext::parse(o_.q);
        auto t = o_.trunc.require();
        auto ring = RingSpec::parse(o_.ring.empty() ? "Z" : o_.ring);
        auto f = o_.flavor.empty() ? Flavor::Necklace : parse_flavor(o_.flavor);
        auto x = RingValue::parse(ring, o_.x);
        if (f == Flavor::Necklace) emit(vector_json(q_exp_M_vector(q, t, x)));
        else if (f == Flavor::Aperiodic) emit(vector_json(q_exp_S_vector(q, t, x)));
        else fail(ErrorKind::InvalidArgument, "--flavor must be Nr or Ap");
        return kExitOk;
    });

    auto* ah = app.add_subcommand("artinhasse", "Coefficients of the Artin-Hasse curve");
    q_opt(ah);
    ah->add_option("--deg", o_.deg, "Truncation degree N (generic coordinates x1..xN)");
    ah->add_option("--in", o_.in, "Witt vector on {1..N} instead of generic coordinates");
    ah->add_flag("--inverse", o_.inverse, "Read --in components as curve coefficients and return the Witt vector");
    on(ah, [this] {
        auto q = QContext::parse(o_.q);
        CyclicVector a;
        if (!o_.in.empty()) {
            a = load_cyclic(o_.in);
            if (o_.deg && a.trunc.members().back() != o_.deg)
                schema("--deg " + std::to_string(o_.deg) + " but the input is on " + a.trunc.to_string());
        } else {
            if (!o_.deg) fail(ErrorKind::InvalidArgument, "--deg or --in is required");
            if (o_.inverse) fail(ErrorKind::InvalidArgument, "--inverse needs --in");
            std::vector<std::string> vars, names;
            if (q.is_symbolic()) vars.push_back("q");
            std::vector<std::uint64_t> m;
            for (std::uint64_t k = 1; k <= o_.deg; ++k) {
                vars.push_back("x" + std::to_string(k));
                names.push_back("x" + std::to_string(k));
                m.push_back(k);
            }
            a = CyclicVector::parse(TruncationSet::from_members(m), Flavor::Witt, RingSpec::multipoly(vars, false), names);
        }
        if (o_.inverse) {
            TruncatedCurve c{a.ring, a.comps};
            emit(vector_json(artin_hasse_inv(q, c)));
            return kExitOk;
        }
        check_flavor(Flavor::Witt, a.flavor);
        auto h = artin_hasse(q, a);
        emit({{"q", q.to_string()}, {"ring", h.ring->to_string()}, {"coefficients", h.to_strings()}});
        return kExitOk;
    });
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Witt-Burnside, necklace and aperiodic rings", "wb"};
    Tool tool(out);
    tool.build(app);
    std::vector<std::string> store;
    store.push_back("wb");
    store.insert(store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : store) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: Usage: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        return tool.run();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: Internal: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace wb
