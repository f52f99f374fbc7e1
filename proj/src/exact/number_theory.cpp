#include "wb/exact/number_theory.hpp"

#include <algorithm>

#include "wb/error.hpp"

namespace wb {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "divisors: n must be positive");
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

int mobius(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "mobius: n must be positive");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint64_t lcm_u(std::uint64_t a, std::uint64_t b) { return a / gcd_u(a, b) * b; }

Integer ipow(const Integer& base, std::uint64_t e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rational ipow(const Rational& base, std::uint64_t e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    // num/den stay coprime under powering; only the sign needs care
    r.canonicalize();
    return r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace wb
