#pragma once

#include <cstdint>
#include <random>

#include "wb/burnside/burnside.hpp"
#include "wb/cyclic/cyclic.hpp"

namespace wb {

/// Seeded generator of ring elements and vectors. `size` bounds integers,
/// denominators and polynomial term counts.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed, int size = 3) : rng_(seed), size_(size) {}

    std::mt19937_64& rng() { return rng_; }
    int size() const { return size_; }

    long integer(long lo, long hi);
    RingValue value(const RingPtr& r);

    IndexedVector witt(const TablesPtr& g, const RingPtr& r);
    IndexedVector ghost(const TablesPtr& g, const RingPtr& r);
    /// Direct necklace vector, or Lifted (via tau) / Rationalized when asked.
    IndexedVector necklace(const TablesPtr& g, const RingPtr& r, Rep rep = Rep::Direct);
    /// Direct when the componentwise ring is closed under the product
    /// (Q-algebra or abelian group); otherwise theta of a necklace over
    /// torsion-free rings and gamma of a Witt vector over Z/m.
    IndexedVector aperiodic(const TablesPtr& g, const RingPtr& r);
    IndexedVector vector(const TablesPtr& g, Flavor f, const RingPtr& r);
    /// Componentwise random vector on a truncation set.
    CyclicVector cyclic(const TruncationSet& t, Flavor f, const RingPtr& r);

private:
    std::mt19937_64 rng_;
    int size_;
};

} // namespace wb
