#include "gperiod/numtheory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace gperiod {

namespace {

using u128 = unsigned __int128;

int64_t normalize(int64_t a, int64_t n) {
    int64_t v = a % n;
    return v < 0 ? v + n : v;
}

}  // namespace

int64_t mul_mod(int64_t a, int64_t b, int64_t n) {
    a = normalize(a, n);
    b = normalize(b, n);
    return static_cast<int64_t>(u128(a) * u128(b) % u128(n));
}

int64_t pow_mod(int64_t a, int64_t e, int64_t n) {
    if (n == 1) return 0;
    int64_t base = normalize(a, n);
    int64_t out = 1;
    while (e > 0) {
        if (e & 1) out = mul_mod(out, base, n);
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    return out;
}

int64_t mod_inverse(int64_t a, int64_t n) {
    // extended gcd on (a mod n, n)
    int64_t r0 = n, r1 = normalize(a, n);
    int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1)
        throw NotAUnit("mod_inverse: gcd(" + std::to_string(a) + ", " +
                       std::to_string(n) + ") != 1");
    return normalize(s0, n);
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses decide primality for every n < 3.3 * 10^24.
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        int64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

constexpr int64_t kTrialLimit = 1'000'000;

// Brent's cycle variant of the rho method with a deterministic parameter
// schedule; n must be composite, odd, and free of factors <= kTrialLimit.
int64_t rho_divisor(int64_t n) {
    for (int64_t c = 1;; ++c) {
        int64_t x = 2, y = 2, divisor = 1;
        int64_t saved = 2;
        const auto step = [&](int64_t v) { return (mul_mod(v, v, n) + c) % n; };
        for (int64_t limit = 1; divisor == 1; limit <<= 1) {
            x = y;
            for (int64_t i = 0; i < limit && divisor == 1; i += 128) {
                saved = y;
                int64_t prod = 1;
                const int64_t batch = std::min<int64_t>(128, limit - i);
                for (int64_t j = 0; j < batch; ++j) {
                    y = step(y);
                    prod = mul_mod(prod, std::abs(x - y), n);
                }
                divisor = std::gcd(prod, n);
            }
        }
        if (divisor != n) return divisor;
        // rerun the last batch one step at a time
        int64_t y2 = saved;
        while (true) {
            y2 = step(y2);
            int64_t g = std::gcd(std::abs(x - y2), n);
            if (g == n) break;  // cycle degenerate for this c; try the next
            if (g > 1) return g;
        }
    }
}

void split(int64_t n, std::map<int64_t, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    int64_t d = rho_divisor(n);
    split(d, out);
    split(n / d, out);
}

}  // namespace

int64_t PrimePower::value() const {
    int64_t v = 1;
    for (int i = 0; i < exponent; ++i) v *= prime;
    return v;
}

Factorization factorize(int64_t n) {
    if (n < 2)
        throw OutOfRange("factorize: n must be at least 2, got " + std::to_string(n));
    Factorization f;
    f.n = n;
    std::map<int64_t, int> counts;
    int64_t m = n;
    for (int64_t p = 2; p <= kTrialLimit && p * p <= m; p == 2 ? p = 3 : p += 2) {
        while (m % p == 0) {
            ++counts[p];
            m /= p;
        }
    }
    split(m, counts);
    for (const auto& [p, e] : counts) f.factors.push_back({p, e});
    return f;
}

int64_t euler_phi(const Factorization& f) {
    int64_t phi = 1;
    for (const auto& pp : f.factors) {
        int64_t q = pp.prime;
        for (int i = 1; i < pp.exponent; ++i) q *= pp.prime;
        phi *= q / pp.prime * (pp.prime - 1);
    }
    return phi;
}

int64_t euler_phi(int64_t n) {
    if (n < 1)
        throw OutOfRange("euler_phi: n must be positive, got " + std::to_string(n));
    if (n == 1) return 1;
    return euler_phi(factorize(n));
}

int64_t mul_order(int64_t a, int64_t n) {
    a = normalize(a, n);
    if (std::gcd(a, n) != 1)
        throw NotAUnit("mul_order: " + std::to_string(a) + " is not a unit mod " +
                       std::to_string(n));
    if (n == 1) return 1;
    int64_t t = euler_phi(n);
    // Strip each prime out of t while the power still fixes 1.
    for (const auto& pp : factorize(t).factors) {
        for (int i = 0; i < pp.exponent; ++i) {
            if (pow_mod(a, t / pp.prime, n) == 1)
                t /= pp.prime;
            else
                break;
        }
    }
    return t;
}

int legendre_symbol(int64_t m, int64_t p) {
    if (p < 3 || !is_prime(p))
        throw BadModulus("legendre_symbol: " + std::to_string(p) +
                         " is not an odd prime");
    int64_t v = pow_mod(m, (p - 1) / 2, p);
    if (v == 0) return 0;
    return v == 1 ? 1 : -1;
}

ModulusContext::ModulusContext(int64_t modulus) : n(modulus) {
    if (n < 2)
        throw OutOfRange("ModulusContext: modulus must be at least 2");
    factorization = factorize(n);
    totient = euler_phi(factorization);
    for (const auto& pp : factorization.factors) {
        CrtComponent c;
        c.modulus = pp.value();
        c.cofactor_inverse = mod_inverse((n / c.modulus) % c.modulus, c.modulus);
        components.push_back(c);
    }
}

}  // namespace gperiod
