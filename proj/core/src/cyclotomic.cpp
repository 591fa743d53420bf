#include "gperiod/cyclotomic.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "gperiod/numtheory.hpp"

namespace gperiod {

namespace {

// Multiply p by (t^a - 1), exactly.
std::vector<int64_t> mul_binomial(const std::vector<int64_t>& p, int64_t a) {
    std::vector<int64_t> out(p.size() + a, 0);
    for (size_t i = 0; i < p.size(); ++i) {
        out[i + a] += p[i];
        out[i] -= p[i];
    }
    return out;
}

// Divide p by (t^a - 1); the division is exact for every input used here.
std::vector<int64_t> div_binomial(const std::vector<int64_t>& p, int64_t a) {
    std::vector<int64_t> q(p.size() - a, 0);
    // p_k = q_{k-a} - q_k
    for (size_t k = 0; k < q.size(); ++k) {
        int64_t prev = (k >= static_cast<size_t>(a)) ? q[k - a] : 0;
        q[k] = prev - p[k];
    }
    return q;
}

int moebius(int64_t n) {
    if (n == 1) return 1;
    int sign = 1;
    for (const auto& pp : factorize(n).factors) {
        if (pp.exponent > 1) return 0;
        sign = -sign;
    }
    return sign;
}

CyclotomicReduction build_reduction(int64_t d) {
    CyclotomicReduction table;
    table.d = d;
    const std::vector<int64_t> poly = cyclotomic_poly(d);
    table.phi = static_cast<int64_t>(poly.size()) - 1;
    table.rows.reserve(d);

    std::vector<int64_t> row(table.phi, 0);
    row[0] = 1;
    table.rows.push_back(row);
    for (int64_t k = 1; k < d; ++k) {
        // multiply by t, then reduce the top coefficient against monic Phi_d
        int64_t top = row[table.phi - 1];
        for (int64_t j = table.phi - 1; j > 0; --j) row[j] = row[j - 1];
        row[0] = 0;
        if (top != 0)
            for (int64_t j = 0; j < table.phi; ++j) row[j] -= top * poly[j];
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace

std::vector<int64_t> cyclotomic_poly(int64_t d) {
    if (d < 1 || d > 100000)
        throw OutOfRange("cyclotomic_poly: d must lie in [1, 1e5], got " +
                         std::to_string(d));
    // Phi_d(t) = prod_{e | d} (t^{d/e} - 1)^{mu(e)}; all multiplications
    // first, then the exact divisions.
    std::vector<int64_t> divisors;
    for (int64_t e = 1; e * e <= d; ++e) {
        if (d % e != 0) continue;
        divisors.push_back(e);
        if (e != d / e) divisors.push_back(d / e);
    }
    std::vector<int64_t> poly{1};
    for (int64_t e : divisors)
        if (moebius(e) == 1) poly = mul_binomial(poly, d / e);
    for (int64_t e : divisors)
        if (moebius(e) == -1) poly = div_binomial(poly, d / e);
    return poly;
}

CyclotomicReduction reduction_table(int64_t d) {
    if (d < 2)
        throw OutOfRange("reduction_table: d must be at least 2, got " +
                         std::to_string(d));
    return build_reduction(d);
}

cplx laurent_eval(const CyclotomicReduction& table, std::span<const double> angles) {
    if (static_cast<int64_t>(angles.size()) != table.phi)
        throw DimensionMismatch("laurent_eval: expected " + std::to_string(table.phi) +
                                " angles, got " + std::to_string(angles.size()));
    KahanComplex sum;
    for (const auto& row : table.rows) {
        double turns = 0.0;
        for (int64_t j = 0; j < table.phi; ++j)
            turns += static_cast<double>(row[j]) * angles[j];
        sum.add(unit_root(turns - std::floor(turns)));
    }
    return sum.value();
}

std::vector<cplx> laurent_samples(const CyclotomicReduction& table, int count) {
    if (count < 1)
        throw BadParameter("laurent_samples: count must be positive");
    std::mt19937_64 rng(0x67706572u ^ static_cast<uint64_t>(table.d));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> angles(table.phi);
    std::vector<cplx> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        for (auto& a : angles) a = uniform(rng);
        out.push_back(laurent_eval(table, angles));
    }
    return out;
}

std::vector<cplx> hypocycloid_samples(int64_t d, int count) {
    if (d < 3 || !is_prime(d))
        throw BadParameter("hypocycloid_samples: d must be a prime >= 3, got " +
                           std::to_string(d));
    if (count < 1)
        throw BadParameter("hypocycloid_samples: count must be positive");
    std::vector<cplx> out;
    out.reserve(count);
    const double dd = static_cast<double>(d);
    for (int i = 0; i < count; ++i) {
        const double turns = static_cast<double>(i) / count;
        out.push_back((dd - 1.0) * unit_root(turns) + unit_root((1.0 - dd) * turns));
    }
    return out;
}

HypocycloidRegion::HypocycloidRegion(int64_t d, int vertices) : d_(d) {
    polygon_ = hypocycloid_samples(d, vertices);
    // chord sag of the inscribed polygon: |c''| <= d(d-1), step 2pi/N
    const double h = 2.0 * std::numbers::pi / vertices;
    band_ = 4.0 * static_cast<double>(d) * static_cast<double>(d) * h * h / 8.0;
}

bool HypocycloidRegion::winding_inside(cplx z) const {
    // nonzero-rule winding number over the polygon edges
    int wn = 0;
    const size_t n = polygon_.size();
    for (size_t i = 0; i < n; ++i) {
        const cplx& a = polygon_[i];
        const cplx& b = polygon_[(i + 1) % n];
        const double left = (b.real() - a.real()) * (z.imag() - a.imag()) -
                            (z.real() - a.real()) * (b.imag() - a.imag());
        if (a.imag() <= z.imag()) {
            if (b.imag() > z.imag() && left > 0) ++wn;
        } else {
            if (b.imag() <= z.imag() && left < 0) --wn;
        }
    }
    return wn != 0;
}

double HypocycloidRegion::distance_to_boundary(cplx z) const {
    double best = std::numeric_limits<double>::infinity();
    const size_t n = polygon_.size();
    for (size_t i = 0; i < n; ++i) {
        const cplx& a = polygon_[i];
        const cplx& b = polygon_[(i + 1) % n];
        const double vx = b.real() - a.real(), vy = b.imag() - a.imag();
        const double wx = z.real() - a.real(), wy = z.imag() - a.imag();
        const double len2 = vx * vx + vy * vy;
        double t = len2 > 0 ? (wx * vx + wy * vy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double dx = wx - t * vx, dy = wy - t * vy;
        best = std::min(best, dx * dx + dy * dy);
    }
    return std::sqrt(best);
}

bool HypocycloidRegion::contains(cplx z, double tol) const {
    if (winding_inside(z)) return true;
    return distance_to_boundary(z) <= tol + band_;
}

double HypocycloidRegion::excess(cplx z, double tol) const {
    if (winding_inside(z)) return 0.0;
    return std::max(0.0, distance_to_boundary(z) - tol - band_);
}

bool filled_hypocycloid_contains(int64_t d, cplx z, double tol) {
    if (tol < 0)
        throw BadParameter("filled_hypocycloid_contains: tol must be nonnegative");
    return HypocycloidRegion(d).contains(z, tol);
}

BoundarySpec BoundarySpec::hypocycloid(int64_t d) {
    BoundarySpec spec;
    spec.kind = Kind::hypocycloid;
    spec.d = d;
    return spec;
}

BoundarySpec BoundarySpec::laurent(CyclotomicReduction table) {
    BoundarySpec spec;
    spec.kind = Kind::laurent;
    spec.d = table.d;
    spec.table = std::move(table);
    return spec;
}

BoundarySpec BoundarySpec::real_segment(double lo, double hi, int64_t d) {
    if (lo > hi)
        throw BadParameter("BoundarySpec::real_segment: lo must be <= hi");
    BoundarySpec spec;
    spec.kind = Kind::real_segment;
    spec.d = d;
    spec.segment_lo = lo;
    spec.segment_hi = hi;
    return spec;
}

BoundarySpec BoundarySpec::point_set(std::vector<cplx> pts, int64_t d) {
    BoundarySpec spec;
    spec.kind = Kind::point_set;
    spec.d = d;
    spec.points = std::move(pts);
    return spec;
}

}  // namespace gperiod
