#include "gperiod/orbits.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace gperiod {

namespace {

int64_t normalize(int64_t a, int64_t n) {
    int64_t v = a % n;
    return v < 0 ? v + n : v;
}

}  // namespace

bool CyclicAction::contains(int64_t x) const {
    x = normalize(x, n);
    return std::find(elements.begin(), elements.end(), x) != elements.end();
}

CyclicAction cyclic_subgroup(int64_t n, int64_t omega) {
    if (n < 1)
        throw OutOfRange("cyclic_subgroup: modulus must be positive");
    omega = normalize(omega, n);
    if (std::gcd(omega, n) != 1)
        throw NotAUnit("cyclic_subgroup: " + std::to_string(omega) +
                       " is not a unit mod " + std::to_string(n));
    CyclicAction a;
    a.n = n;
    a.omega = omega;
    int64_t x = normalize(1, n);
    do {
        a.elements.push_back(x);
        x = mul_mod(x, omega, n);
    } while (x != a.elements.front());
    a.order = static_cast<int64_t>(a.elements.size());
    return a;
}

bool Orbit::contains(int64_t x) const {
    x = normalize(x, action.n);
    return std::binary_search(elements.begin(), elements.end(), x);
}

Orbit orbit(const CyclicAction& action, int64_t r) {
    Orbit X;
    X.action = action;
    X.base = normalize(r, action.n);
    int64_t x = X.base;
    do {
        X.elements.push_back(x);
        x = mul_mod(x, action.omega, action.n);
    } while (x != X.base);
    std::sort(X.elements.begin(), X.elements.end());
    return X;
}

SuperclassPartition superclass_partition(const CyclicAction& action) {
    SuperclassPartition part;
    part.n = action.n;
    std::vector<bool> seen(action.n, false);
    std::vector<int64_t> block;
    for (int64_t y = 0; y < action.n; ++y) {
        if (seen[y]) continue;
        block.clear();
        int64_t z = y;
        do {
            seen[z] = true;
            block.push_back(z);
            z = mul_mod(z, action.omega, action.n);
        } while (z != y);
        std::sort(block.begin(), block.end());
        part.blocks.push_back(block);
    }
    return part;
}

std::optional<PMDecomposition> pm_decompose(const CyclicAction& action, int64_t k) {
    if (k < 1 || action.n % k != 0)
        throw BadParameter("pm_decompose: k must be a positive divisor of n");
    const int64_t m = action.n / k;  // jn/k steps in units of m

    PMDecomposition pm;
    pm.k = k;
    for (int64_t a : action.elements) {
        bool matched = false;
        if ((a - 1) % m == 0) {
            pm.j_plus.push_back(((a - 1) / m) % k);
            matched = true;
        }
        if ((a + 1) % m == 0) {
            pm.j_minus.push_back(((a + 1) / m) % k);
            matched = true;
        }
        if (!matched) return std::nullopt;
    }
    for (auto* side : {&pm.j_plus, &pm.j_minus}) {
        std::sort(side->begin(), side->end());
        side->erase(std::unique(side->begin(), side->end()), side->end());
    }
    if ((action.omega + 1) % m == 0) pm.j0 = ((action.omega + 1) / m) % k;
    return pm;
}

}  // namespace gperiod
