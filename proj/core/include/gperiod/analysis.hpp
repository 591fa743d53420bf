#pragma once

// Executable structure results: predicted dihedral symmetry with a
// multiset verifier, realness classes, the explicit k cos / ik sin
// evaluation, ellipse membership, splitting across coprime components,
// image nesting under reduction, prime-power collapse, and boundary
// prediction. Each verifier reports the measured deviation next to the
// tolerance it was judged against.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gperiod/cyclotomic.hpp"
#include "gperiod/evaluate.hpp"
#include "gperiod/numtheory.hpp"
#include "gperiod/orbits.hpp"

namespace gperiod {

// gcd(omega - 1, n / gcd(r, n)): the predicted dihedral symmetry order.
int64_t symmetry_order(int64_t n, int64_t omega, int64_t r);

struct DihedralCheck {
    int64_t k = 1;
    bool pass = false;
    double rotation_mismatch = 0.0;     // symmetric Hausdorff, rotated vs original
    double conjugation_mismatch = 0.0;  // conjugated vs original
    double tol = 0.0;
};

// Pass iff the value set rotated by e(1/k) and the conjugated value set
// each match the original within symmetric Hausdorff distance tol.
DihedralCheck verify_dihedral(const ValueCloud& cloud, int64_t k, double tol);

enum class RealnessKind { real, real_or_imaginary, generic };

struct RealnessClassification {
    RealnessKind kind = RealnessKind::generic;
    // Decomposition with k even and J- = k/2 - J+ (mod k) that forced a
    // non-generic class; absent when -1 in A decided it (or for generic).
    std::optional<PMDecomposition> witness;
};

// `real` when -1 in A (or r = 0); `real_or_imaginary` when a qualifying
// decomposition exists and r is odd (real on even y, imaginary on odd y);
// `real` when such a decomposition exists and r is even; else `generic`.
// When no decomposition is supplied, divisors k of n are swept ascending.
RealnessClassification realness_classification(
    const CyclicAction& action, int64_t r,
    std::optional<PMDecomposition> decomposition = std::nullopt);

// k cos(2 pi r y / n) when k | y; i k sin(2 pi r y / n) when y == k/2 mod k;
// 0 otherwise. The caller is responsible for verifying the hypotheses
// (k > 2 even, J+ = even residues, J- = odd residues, r a unit); only the
// local shape of k is checked here.
cplx explicit_eval(int64_t n, int64_t k, int64_t r, int64_t y);

// True when pm_decompose(action, k) yields J+ = all even residues and
// J- = all odd residues mod k, with k > 2 even.
bool explicit_form_applies(const CyclicAction& action, int64_t k);

struct EllipseReport {
    int64_t p = 0;
    int64_t points_off_axis = 0;        // y with p ∤ y
    int64_t points_on_axis = 0;         // y with p | y
    double max_ellipse_residual = 0.0;  // |(Re z)^2 + (Im z)^2/p - 1|
    double max_imag_on_axis = 0.0;
    double max_interval_excess = 0.0;   // distance outside [1-p, p-1]
    double max_cosine_residual = 0.0;   // vs (p-1) cos(2 pi y / n)
    double tol = 0.0;
    bool pass = false;
};

// Requires p | n, p prime, p == 1 (mod 4).
EllipseReport ellipse_report(const ValueCloud& cloud, int64_t p, double tol);

struct SplitComponent {
    int64_t modulus = 1;     // p_j^{a_j}
    int64_t generator = 1;   // omega mod p_j^{a_j}
    int64_t base = 0;        // x_j * psi_j(r)
    int64_t orbit_size = 1;  // |X_j|
};

struct MultiplicativeSplit {
    std::vector<SplitComponent> components;
    bool applicable = false;  // orbit sizes pairwise coprime
};

MultiplicativeSplit multiplicative_split(const ModulusContext& ctx,
                                         int64_t omega, int64_t r);

// max_y |sigma_X(y) - prod_j sigma_{X_j}(psi_j(y))| over all of Z/nZ.
double multiplicative_identity_error(const ModulusContext& ctx,
                                     int64_t omega, int64_t r);

struct NestingReport {
    int64_t d_prime = 1;        // reduced modulus, n / gcd(r, n)
    int64_t xi = 0;             // r / gcd(r, n) mod n
    bool xi_unit = false;       // gcd(xi, n) == 1
    double scale = 1.0;         // |A| / |psi_{d'}(A)|
    // Hausdorff distances between the images that the nesting statement
    // asserts equal, and the one-sided excess of the scaled image inside
    // the image of sigma_{A xi} (measured only when xi is a unit).
    double image_vs_gcd_base = 0.0;
    double image_vs_reduced = 0.0;
    double gcd_base_vs_reduced = 0.0;
    double scaled_subset_excess = 0.0;
};

NestingReport nesting_report(int64_t n, int64_t omega, int64_t r);

struct CollapseReport {
    int64_t p = 0;
    int a = 0, b = 0;
    int64_t scale = 1;            // p^b
    int64_t reduced_modulus = 1;  // p^{a-b}
    int64_t orbit_size = 1;
    int64_t reduced_orbit_size = 1;
    double max_off_support = 0.0;     // |sigma(y)| when p^b does not divide y
    double max_pointwise_error = 0.0; // |sigma(y) - p^b sigma'(psi(y))|
    double image_hausdorff = 0.0;     // {0} u p^b im' versus im
};

// Works over n = p^a with X = <omega>1; requires the orbit to be the full
// preimage of its reduction, i.e. |X| = p^b |psi(X)|.
CollapseReport prime_power_collapse(int64_t p, int a, int b, int64_t omega);

// hypocycloid(d) for odd prime d; [-d, d] on the real axis for even d;
// the Laurent image for the remaining d (including d = 1, the circle).
// q must be an odd prime power with d | p-1.
BoundarySpec boundary_predict(int64_t q, int64_t d);

// Greatest distance by which a cloud value escapes the predicted region.
// Laurent regions are realized as dense deterministic samples, so the
// returned figure is a nearest-sample distance in that case.
double boundary_containment_error(const ValueCloud& cloud, const BoundarySpec& spec,
                                  double tol);

struct VerificationEntry {
    std::string claim;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

struct AnalysisReport {
    int64_t n = 0, omega = 1, r = 1;
    int64_t d = 1;  // |X|
    int64_t symmetry = 1;
    RealnessKind realness = RealnessKind::generic;
    std::optional<PMDecomposition> realness_witness;
    MultiplicativeSplit split;
    NestingReport nesting;
    std::optional<BoundarySpec> boundary;  // prime-power moduli only
    std::vector<VerificationEntry> checks;
};

AnalysisReport analyze(int64_t n, int64_t omega, int64_t r);

// Symmetric Hausdorff distance between two point sets (exposed for image
// comparisons in callers and tests).
double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b);

// Directed variant: max over a of the distance to the nearest point of b.
double directed_hausdorff(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace gperiod
