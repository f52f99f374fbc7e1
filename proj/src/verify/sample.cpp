#include "wb/verify/sample.hpp"

#include "wb/error.hpp"

namespace wb {

long Sampler::integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

RingValue Sampler::value(const RingPtr& r) {
    switch (r->kind()) {
    case RingSpec::Kind::Integers: return RingValue(r, integer(-size_, size_));
    case RingSpec::Kind::Rationals: {
        Rational q(integer(-size_, size_), integer(1, size_));
        q.canonicalize();
        return RingValue(r, q);
    }
    case RingSpec::Kind::Residue:
        if (!r->modulus().fits_slong_p()) fail(ErrorKind::InvalidArgument, "modulus too large to sample");
        return RingValue(r, integer(0, r->modulus().get_si() - 1));
    case RingSpec::Kind::QPoly:
    case RingSpec::Kind::MultiPoly: {
        const auto& ids = r->var_ids();
        MPoly p;
        long terms = integer(1, size_);
        for (long t = 0; t < terms; ++t) {
            Rational c(integer(-size_, size_));
            if (r->is_q_algebra()) c /= Rational(integer(1, 2));
            c.canonicalize();
            Monomial m;
            for (VarId v : ids) {
                auto e = static_cast<std::uint32_t>(integer(0, 1));
                if (e) m = m * Monomial::var(v, e);
            }
            p += MPoly::term(m, c);
        }
        return RingValue(r, p);
    }
    }
    fail(ErrorKind::InvalidArgument, "cannot sample " + r->to_string());
}

IndexedVector Sampler::witt(const TablesPtr& g, const RingPtr& r) {
    std::vector<RingValue> c;
    for (std::size_t i = 0; i < g->size(); ++i) c.push_back(value(r));
    return IndexedVector(g, Flavor::Witt, r, std::move(c));
}

IndexedVector Sampler::ghost(const TablesPtr& g, const RingPtr& r) {
    std::vector<RingValue> c;
    for (std::size_t i = 0; i < g->size(); ++i) c.push_back(value(r));
    return IndexedVector(g, Flavor::Ghost, r, std::move(c));
}

IndexedVector Sampler::necklace(const TablesPtr& g, const RingPtr& r, Rep rep) {
    if (rep != Rep::Direct) {
        auto x = teichmuller(witt(g, r));
        if (x.rep != rep) fail(ErrorKind::InvalidArgument, "no " + to_string(rep) + " necklaces over " + r->to_string());
        return x;
    }
    std::vector<RingValue> c;
    for (std::size_t i = 0; i < g->size(); ++i) c.push_back(value(r));
    return IndexedVector(g, Flavor::Necklace, r, std::move(c));
}

IndexedVector Sampler::aperiodic(const TablesPtr& g, const RingPtr& r) {
    if (r->is_q_algebra() || g->is_abelian()) {
        std::vector<RingValue> c;
        for (std::size_t i = 0; i < g->size(); ++i) c.push_back(value(r));
        return IndexedVector(g, Flavor::Aperiodic, r, std::move(c));
    }
    if (r->is_torsion_free()) return theta(necklace(g, r));
    return gamma(witt(g, r));
}

IndexedVector Sampler::vector(const TablesPtr& g, Flavor f, const RingPtr& r) {
    switch (f) {
    case Flavor::Witt: return witt(g, r);
    case Flavor::Necklace: return necklace(g, r);
    case Flavor::Aperiodic: return aperiodic(g, r);
    case Flavor::Ghost: return ghost(g, r);
    }
    return witt(g, r);
}

CyclicVector Sampler::cyclic(const TruncationSet& t, Flavor f, const RingPtr& r) {
    std::vector<RingValue> c;
    for (std::size_t i = 0; i < t.size(); ++i) c.push_back(value(r));
    return CyclicVector(t, f, r, std::move(c));
}

} // namespace wb
