#pragma once

// Exact integer arithmetic on 63-bit moduli: factorization, totient,
// multiplicative order, Legendre symbol, and the CRT component data used
// by every higher layer. All intermediates run through 128-bit products,
// so nothing here overflows for n < 2^63.

#include <cstdint>
#include <vector>

#include "gperiod/errors.hpp"

namespace gperiod {

int64_t mul_mod(int64_t a, int64_t b, int64_t n);
int64_t pow_mod(int64_t a, int64_t e, int64_t n);

// Inverse of a modulo n; throws NotAUnit when gcd(a, n) != 1.
int64_t mod_inverse(int64_t a, int64_t n);

// Deterministic Miller-Rabin, valid for all n < 2^63.
bool is_prime(int64_t n);

struct PrimePower {
    int64_t prime = 0;
    int exponent = 0;

    int64_t value() const;  // prime^exponent
    bool operator==(const PrimePower&) const = default;
};

// n in standard form: factors ascending by prime, every exponent >= 1.
struct Factorization {
    int64_t n = 1;
    std::vector<PrimePower> factors;
};

// Trial division through 10^6, then Brent-cycle rho on what remains.
// Deterministic: no randomized state.
Factorization factorize(int64_t n);

int64_t euler_phi(int64_t n);
int64_t euler_phi(const Factorization& f);

// Smallest t >= 1 with a^t == 1 (mod n); requires gcd(a, n) = 1.
// Computed by factoring phi(n) and descending through its divisors.
int64_t mul_order(int64_t a, int64_t n);

// 0 when p | m, +1 for nonzero quadratic residues, -1 otherwise.
// p must be an odd prime.
int legendre_symbol(int64_t m, int64_t p);

// One entry per prime power q_j = p_j^{a_j} of n. cofactor_inverse is the
// x_j with x_j * (n / q_j) == 1 (mod q_j); reduce() is the natural map
// Z/nZ -> Z/q_jZ.
struct CrtComponent {
    int64_t modulus = 1;
    int64_t cofactor_inverse = 1;

    int64_t reduce(int64_t y) const {
        int64_t v = y % modulus;
        return v < 0 ? v + modulus : v;
    }
};

struct ModulusContext {
    int64_t n = 0;
    Factorization factorization;
    int64_t totient = 0;
    std::vector<CrtComponent> components;

    explicit ModulusContext(int64_t n);
};

inline const std::vector<CrtComponent>& crt_components(const ModulusContext& ctx) {
    return ctx.components;
}

}  // namespace gperiod
