#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace wb {

using Integer = mpz_class;
using Rational = mpq_class;

/// All positive divisors of n in increasing order. n must be >= 1.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Classical Moebius function.
int mobius(std::uint64_t n);

std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u(std::uint64_t a, std::uint64_t b);

Integer ipow(const Integer& base, std::uint64_t e);
Rational ipow(const Rational& base, std::uint64_t e);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Floor-style canonical residue in [0, m).
Integer mod_floor(const Integer& a, const Integer& m);

} // namespace wb
