#pragma once

// The multiplicative action of A = <omega> on Z/nZ: the subgroup itself,
// its orbits X = Ar, the superclass partition, and the decomposition of A
// into elements of the form jn/k +- 1.

#include <cstdint>
#include <optional>
#include <vector>

#include "gperiod/numtheory.hpp"

namespace gperiod {

struct CyclicAction {
    int64_t n = 0;
    int64_t omega = 1;
    int64_t order = 1;              // multiplicative order of omega mod n
    std::vector<int64_t> elements;  // 1, omega, omega^2, ... in power order

    bool contains(int64_t x) const;
};

CyclicAction cyclic_subgroup(int64_t n, int64_t omega);

struct Orbit {
    CyclicAction action;
    int64_t base = 0;               // r
    std::vector<int64_t> elements;  // sorted ascending

    int64_t size() const { return static_cast<int64_t>(elements.size()); }
    bool contains(int64_t x) const;
};

Orbit orbit(const CyclicAction& action, int64_t r);

// Blocks ordered by their smallest element, each block sorted; the block
// {0} always comes first.
struct SuperclassPartition {
    int64_t n = 0;
    std::vector<std::vector<int64_t>> blocks;
};

SuperclassPartition superclass_partition(const CyclicAction& action);

// A = {jn/k+1 : j in j_plus} u {jn/k-1 : j in j_minus}. j0 records the
// witness when omega itself is j0*n/k - 1 (0 when it is not of that form).
struct PMDecomposition {
    int64_t k = 1;
    int64_t j0 = 0;
    std::vector<int64_t> j_plus;   // sorted subsets of {0..k-1}
    std::vector<int64_t> j_minus;
};

// nullopt when some element of A is neither jn/k+1 nor jn/k-1.
std::optional<PMDecomposition> pm_decompose(const CyclicAction& action, int64_t k);

}  // namespace gperiod
