#pragma once

// The evaluation core: sigma_X(y) = sum_{x in X} e(xy/n) for single y and
// for the full cloud over Z/nZ, quadratic Gauss sums, the S_q
// equidistribution point sets, Weyl statistics, and grid coverage metrics.

#include <cstdint>
#include <span>
#include <vector>

#include "gperiod/complex_util.hpp"
#include "gperiod/cyclotomic.hpp"
#include "gperiod/orbits.hpp"

namespace gperiod {

// Worker count for cloud evaluation and verification sweeps.
// <= 0 restores the hardware default.
void set_thread_count(int threads);
int thread_count();

struct OrbitDescriptor {
    int64_t omega = 1;
    int64_t base = 0;  // r
    int64_t size = 1;  // d = |X|
};

// The full image { (y, sigma_X(y)) : y in Z/nZ } with residue-class labels.
// points[0] = d exactly; points[n-y] is the conjugate of points[y].
struct ValueCloud {
    int64_t n = 0;
    OrbitDescriptor orbit;
    int64_t color_modulus = 1;      // m
    std::vector<cplx> points;       // indexed by y
    std::vector<int64_t> labels;    // y mod m

    int64_t size() const { return static_cast<int64_t>(points.size()); }
};

cplx supercharacter_value(const Orbit& X, int64_t y);

// Evaluates once per superclass and replicates across the class; blocks are
// processed in parallel (disjoint writes).
ValueCloud supercharacter_image(const Orbit& X, int64_t color_modulus);

// g(m;p) = sum_l e(m l^2 / p) over l = 0..p-1, by direct summation.
cplx gauss_sum_quadratic(int64_t m, int64_t p);

// S_q = { (l/q)(1, w, w^2, ..., w^{phi(d)-1}) mod 1 : l = 0..q-1 } where w
// is the smallest primitive d-th root of unity modulo q = p^a.
struct SqPointSet {
    int64_t q = 0;
    int64_t d = 0;
    int64_t omega_q = 0;
    int64_t dim = 0;                // phi(d)
    std::vector<double> coords;     // q rows of dim entries, row-major

    std::span<const double> point(int64_t ell) const {
        return {coords.data() + ell * dim, static_cast<size_t>(dim)};
    }
};

SqPointSet sq_points(int64_t q, int64_t d);

// (1/q) sum_u e(u . v); exactly 0 or 1 up to roundoff.
cplx weyl_statistic(const SqPointSet& points, std::span<const int64_t> v);

// Exact integer test of q | f(omega_q) with f(t) = sum v_j t^j; decides
// which of 0/1 the Weyl statistic takes.
bool weyl_divisibility(const SqPointSet& points, std::span<const int64_t> v);

// Fraction of grid cells (grid_cells x grid_cells over [-d,d]^2, cells kept
// when their center lies in the filled region) whose eps-neighborhood
// contains at least one cloud point.
double coverage_fraction(const ValueCloud& cloud, const BoundarySpec& region,
                         int grid_cells, double eps);

// Distinct values of the cloud (exact duplicates removed, sorted).
std::vector<cplx> distinct_values(const ValueCloud& cloud);

}  // namespace gperiod
