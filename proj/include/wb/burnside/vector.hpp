#pragma once

#include <string>
#include <vector>

#include "wb/exact/ring.hpp"
#include "wb/group/lattice.hpp"

namespace wb {

enum class Flavor { Witt, Necklace, Aperiodic, Ghost };

std::string to_string(Flavor f);
/// Accepts W/Witt, Nr/Necklace, Ap/Aperiodic, Gh/Ghost (case-insensitive).
Flavor parse_flavor(const std::string& s);

/// How the components relate to the declared ring.
///   Direct        components are elements of the ring itself.
///   Rationalized  integral polynomial rings (not binomial): coordinates live in
///                 the rationalization, membership is via the Witt side.
///   Lifted        residue rings: canonical integer lift of a class of the
///                 quotient of the integral structure (Witt coordinates in [0,m)).
enum class Rep { Direct, Rationalized, Lifted };

std::string to_string(Rep r);
Rep parse_rep(const std::string& s);

struct IndexedVector {
    TablesPtr group;
    Flavor flavor = Flavor::Witt;
    RingPtr ring;
    Rep rep = Rep::Direct;
    std::vector<RingValue> comps;

    IndexedVector() = default;
    IndexedVector(TablesPtr g, Flavor f, RingPtr r, std::vector<RingValue> c, Rep rep = Rep::Direct);

    static IndexedVector zero(TablesPtr g, Flavor f, RingPtr r);
    /// Multiplicative identity: 1 at class G (all ones for ghosts).
    static IndexedVector one(TablesPtr g, Flavor f, RingPtr r);
    /// Parses component strings in the ring the representation stores.
    static IndexedVector parse(TablesPtr g, Flavor f, RingPtr r, const std::vector<std::string>& comps,
                               Rep rep = Rep::Direct);

    std::size_t size() const { return comps.size(); }
    const RingValue& operator[](std::size_t i) const { return comps[i]; }
    /// Ring the components actually live in.
    RingPtr storage_ring() const;
    std::vector<std::string> to_strings() const;

    friend bool operator==(const IndexedVector& a, const IndexedVector& b);
    friend bool operator!=(const IndexedVector& a, const IndexedVector& b) { return !(a == b); }
};

RingPtr storage_ring(const RingPtr& r, Rep rep);

std::string to_string(const IndexedVector& v);

} // namespace wb
