#pragma once

// Cyclotomic polynomial arithmetic over Z, the table expressing t^k mod
// Phi_d(t), the unit-torus Laurent map that table induces, and hypocycloid
// geometry. The table entries are exact integers; they carry all boundary
// predictions, so nothing here is computed numerically.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gperiod/complex_util.hpp"
#include "gperiod/errors.hpp"

namespace gperiod {

// Coefficients of Phi_d(t), ascending degree. Monic, degree phi(d).
std::vector<int64_t> cyclotomic_poly(int64_t d);  // 1 <= d <= 10^5

// Row k holds b_{k,0..phi-1} with t^k == sum_j b_{k,j} t^j (mod Phi_d).
// Rows 0..phi-1 form the identity block.
struct CyclotomicReduction {
    int64_t d = 0;
    int64_t phi = 0;
    std::vector<std::vector<int64_t>> rows;  // d rows, phi columns each
};

CyclotomicReduction reduction_table(int64_t d);  // d >= 2

// g(z_1,...,z_phi) = sum_k prod_j z_{j+1}^{b_{k,j}} with every z_j on the
// unit circle. Angles are in turns; since |z_j| = 1 each product collapses
// to e(<b_k, angles>).
cplx laurent_eval(const CyclotomicReduction& table, std::span<const double> angles);

// Deterministic sample of the Laurent map image (seeded by d).
std::vector<cplx> laurent_samples(const CyclotomicReduction& table, int count);

// Boundary points (d-1)e^{i theta} + e^{i(1-d) theta} of the d-cusped
// hypocycloid (circle of radius 1 rolling inside radius d) at equally
// spaced theta in [0, 2pi). Cusps sit at d*e(j/d).
std::vector<cplx> hypocycloid_samples(int64_t d, int count);

// Membership test for the closed filled hypocycloid, precomputed once so
// sweeps over large clouds stay cheap. Immutable after construction.
class HypocycloidRegion {
public:
    explicit HypocycloidRegion(int64_t d, int vertices = 4096);

    // True iff z lies in the filled region dilated outward by tol.
    bool contains(cplx z, double tol) const;

    // 0 inside; distance past the (tol-dilated) region otherwise.
    double excess(cplx z, double tol) const;

    int64_t cusps() const { return d_; }

private:
    double distance_to_boundary(cplx z) const;
    bool winding_inside(cplx z) const;

    int64_t d_;
    std::vector<cplx> polygon_;
    double band_;  // covers polygon discretization sag
};

bool filled_hypocycloid_contains(int64_t d, cplx z, double tol);

// Predicted closure of a supercharacter image in the plane.
struct BoundarySpec {
    enum class Kind { hypocycloid, laurent, real_segment, point_set };

    Kind kind = Kind::point_set;
    int64_t d = 0;  // orbit size the prediction is for
    std::optional<CyclotomicReduction> table;       // laurent
    double segment_lo = 0.0, segment_hi = 0.0;      // real_segment
    std::vector<cplx> points;                       // point_set

    static BoundarySpec hypocycloid(int64_t d);
    static BoundarySpec laurent(CyclotomicReduction table);
    static BoundarySpec real_segment(double lo, double hi, int64_t d);
    static BoundarySpec point_set(std::vector<cplx> pts, int64_t d);
};

}  // namespace gperiod
