#include "gperiod/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "point_grid.hpp"

namespace gperiod {

namespace {

std::atomic<int> g_threads{0};  // 0 = hardware default

// Image construction materializes the superclass partition plus a root
// table (~24 bytes per residue); past this bound callers are expected to
// evaluate per-y with supercharacter_value instead.
constexpr int64_t kMaxImageModulus = 50'000'000;

std::vector<cplx> root_table(int64_t n) {
    std::vector<cplx> roots(n);
    detail::parallel_for(n, [&](int64_t begin, int64_t end) {
        for (int64_t j = begin; j < end; ++j)
            roots[j] = unit_root(static_cast<double>(j) / static_cast<double>(n));
    });
    return roots;
}

}  // namespace

namespace detail {

int configured_threads() {
    const int t = g_threads.load(std::memory_order_relaxed);
    if (t > 0) return t;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace detail

void set_thread_count(int threads) {
    g_threads.store(threads > 0 ? threads : 0, std::memory_order_relaxed);
}

int thread_count() { return detail::configured_threads(); }

cplx supercharacter_value(const Orbit& X, int64_t y) {
    const int64_t n = X.action.n;
    y %= n;
    if (y < 0) y += n;
    KahanComplex sum;
    for (int64_t x : X.elements)
        sum.add(unit_root(static_cast<double>(mul_mod(x, y, n)) /
                          static_cast<double>(n)));
    return sum.value();
}

ValueCloud supercharacter_image(const Orbit& X, int64_t color_modulus) {
    const int64_t n = X.action.n;
    if (n > kMaxImageModulus)
        throw OutOfRange("supercharacter_image: modulus too large to materialize (" +
                         std::to_string(n) + "); evaluate per y instead");
    if (color_modulus < 1 || color_modulus > n)
        throw BadParameter("supercharacter_image: color modulus must lie in [1, n]");

    ValueCloud cloud;
    cloud.n = n;
    cloud.orbit = {X.action.omega, X.base, X.size()};
    cloud.color_modulus = color_modulus;
    cloud.points.resize(n);
    cloud.labels.resize(n);

    const std::vector<cplx> roots = root_table(n);
    const SuperclassPartition part = superclass_partition(X.action);

    // one evaluation per superclass, replicated across the class
    detail::parallel_for(
        static_cast<int64_t>(part.blocks.size()), [&](int64_t begin, int64_t end) {
            for (int64_t i = begin; i < end; ++i) {
                const auto& block = part.blocks[i];
                const int64_t rep = block.front();
                KahanComplex sum;
                for (int64_t x : X.elements) sum.add(roots[mul_mod(x, rep, n)]);
                const cplx value = sum.value();
                for (int64_t y : block) cloud.points[y] = value;
            }
        });
    detail::parallel_for(n, [&](int64_t begin, int64_t end) {
        for (int64_t y = begin; y < end; ++y) cloud.labels[y] = y % color_modulus;
    });
    return cloud;
}

cplx gauss_sum_quadratic(int64_t m, int64_t p) {
    if (p < 3 || !is_prime(p))
        throw BadModulus("gauss_sum_quadratic: " + std::to_string(p) +
                         " is not an odd prime");
    const std::vector<cplx> roots = root_table(p);
    m %= p;
    if (m < 0) m += p;
    KahanComplex sum;
    for (int64_t ell = 0; ell < p; ++ell)
        sum.add(roots[mul_mod(m, mul_mod(ell, ell, p), p)]);
    return sum.value();
}

SqPointSet sq_points(int64_t q, int64_t d) {
    if (q < 3)
        throw BadModulus("sq_points: q must be an odd prime power >= 3");
    const Factorization f = factorize(q);
    if (f.factors.size() != 1 || f.factors[0].prime == 2)
        throw BadModulus("sq_points: " + std::to_string(q) +
                         " is not an odd prime power");
    const int64_t p = f.factors[0].prime;
    if (d < 2)
        throw BadParameter("sq_points: d must be at least 2");
    if ((p - 1) % d != 0)
        throw NoSuchRoot("sq_points: " + std::to_string(d) + " does not divide p-1 = " +
                         std::to_string(p - 1));

    const Factorization df = factorize(d);
    int64_t omega = 0;
    for (int64_t w = 2; w < q; ++w) {
        if (w % p == 0) continue;
        if (pow_mod(w, d, q) != 1) continue;
        bool primitive = true;
        for (const auto& pp : df.factors)
            if (pow_mod(w, d / pp.prime, q) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            omega = w;
            break;
        }
    }
    if (omega == 0)
        throw NoSuchRoot("sq_points: no primitive root of order " + std::to_string(d) +
                         " modulo " + std::to_string(q));

    SqPointSet set;
    set.q = q;
    set.d = d;
    set.omega_q = omega;
    set.dim = euler_phi(df);
    set.coords.resize(q * set.dim);
    std::vector<int64_t> powers(set.dim);
    powers[0] = 1;
    for (int64_t j = 1; j < set.dim; ++j) powers[j] = mul_mod(powers[j - 1], omega, q);
    detail::parallel_for(q, [&](int64_t begin, int64_t end) {
        for (int64_t ell = begin; ell < end; ++ell)
            for (int64_t j = 0; j < set.dim; ++j)
                set.coords[ell * set.dim + j] =
                    static_cast<double>(mul_mod(ell, powers[j], q)) /
                    static_cast<double>(q);
    });
    return set;
}

cplx weyl_statistic(const SqPointSet& points, std::span<const int64_t> v) {
    if (static_cast<int64_t>(v.size()) != points.dim)
        throw DimensionMismatch("weyl_statistic: expected vector of length " +
                                std::to_string(points.dim));
    if (std::all_of(v.begin(), v.end(), [](int64_t c) { return c == 0; }))
        throw BadParameter("weyl_statistic: v must be nonzero");
    KahanComplex sum;
    for (int64_t ell = 0; ell < points.q; ++ell) {
        const auto u = points.point(ell);
        double turns = 0.0;
        for (int64_t j = 0; j < points.dim; ++j)
            turns += static_cast<double>(v[j]) * u[j];
        sum.add(unit_root(turns - std::floor(turns)));
    }
    return sum.value() / static_cast<double>(points.q);
}

bool weyl_divisibility(const SqPointSet& points, std::span<const int64_t> v) {
    if (static_cast<int64_t>(v.size()) != points.dim)
        throw DimensionMismatch("weyl_divisibility: expected vector of length " +
                                std::to_string(points.dim));
    // Horner evaluation of f(omega_q) mod q
    int64_t acc = 0;
    for (int64_t j = points.dim - 1; j >= 0; --j) {
        acc = mul_mod(acc, points.omega_q, points.q);
        int64_t c = v[j] % points.q;
        if (c < 0) c += points.q;
        acc = (acc + c) % points.q;
    }
    return acc == 0;
}

std::vector<cplx> distinct_values(const ValueCloud& cloud) {
    std::vector<cplx> vals = cloud.points;
    std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

namespace {

// Membership probe for the filled region a BoundarySpec describes. The
// sampled kinds (laurent, point_set) treat "inside" as proximity to the
// sample at the probe resolution.
class RegionProbe {
public:
    RegionProbe(const BoundarySpec& spec, double resolution)
        : spec_(spec), resolution_(resolution) {
        switch (spec.kind) {
            case BoundarySpec::Kind::hypocycloid:
                hypo_.emplace(spec.d);
                break;
            case BoundarySpec::Kind::laurent:
                samples_ = laurent_samples(*spec.table, 65536);
                grid_.emplace(std::span<const cplx>(samples_), resolution_);
                break;
            case BoundarySpec::Kind::point_set:
                grid_.emplace(std::span<const cplx>(spec.points), resolution_);
                break;
            case BoundarySpec::Kind::real_segment:
                break;
        }
    }

    bool contains(cplx z) const {
        switch (spec_.kind) {
            case BoundarySpec::Kind::hypocycloid:
                return hypo_->contains(z, 0.0);
            case BoundarySpec::Kind::real_segment: {
                const double dx = z.real() < spec_.segment_lo
                                      ? spec_.segment_lo - z.real()
                                      : std::max(0.0, z.real() - spec_.segment_hi);
                return std::hypot(dx, z.imag()) <= resolution_;
            }
            case BoundarySpec::Kind::laurent:
            case BoundarySpec::Kind::point_set:
                return grid_->nearest(z) <= resolution_;
        }
        return false;
    }

private:
    const BoundarySpec& spec_;
    double resolution_;
    std::optional<HypocycloidRegion> hypo_;
    std::vector<cplx> samples_;
    std::optional<detail::PointGrid> grid_;
};

}  // namespace

double coverage_fraction(const ValueCloud& cloud, const BoundarySpec& region,
                         int grid_cells, double eps) {
    if (grid_cells < 1)
        throw BadParameter("coverage_fraction: grid_cells must be positive");
    if (eps <= 0)
        throw BadParameter("coverage_fraction: eps must be positive");

    const double d = static_cast<double>(std::max<int64_t>(region.d, 1));
    const int G = grid_cells;
    const double cell = 2.0 * d / G;
    const double half_diag = cell * std::numbers::sqrt2 / 2.0;
    const RegionProbe probe(region, half_diag);

    // bin the distinct cloud values into the same grid
    const std::vector<cplx> values = distinct_values(cloud);
    std::vector<std::vector<cplx>> bins(static_cast<size_t>(G) * G);
    auto bin_index = [&](double v) {
        return std::clamp(static_cast<int>(std::floor((v + d) / cell)), 0, G - 1);
    };
    for (cplx v : values)
        bins[static_cast<size_t>(bin_index(v.real())) * G + bin_index(v.imag())]
            .push_back(v);

    const int reach = static_cast<int>(std::ceil(eps / cell)) + 1;
    int64_t cells_in_region = 0;
    int64_t cells_covered = 0;
    for (int i = 0; i < G; ++i) {
        const double x0 = -d + i * cell, x1 = x0 + cell;
        for (int j = 0; j < G; ++j) {
            const double y0 = -d + j * cell, y1 = y0 + cell;
            if (!probe.contains({(x0 + x1) / 2, (y0 + y1) / 2})) continue;
            ++cells_in_region;
            bool hit = false;
            for (int bi = std::max(0, i - reach); bi <= std::min(G - 1, i + reach) && !hit; ++bi)
                for (int bj = std::max(0, j - reach); bj <= std::min(G - 1, j + reach) && !hit; ++bj)
                    for (cplx v : bins[static_cast<size_t>(bi) * G + bj]) {
                        const double dx = std::max({x0 - v.real(), v.real() - x1, 0.0});
                        const double dy = std::max({y0 - v.imag(), v.imag() - y1, 0.0});
                        if (dx * dx + dy * dy <= eps * eps) {
                            hit = true;
                            break;
                        }
                    }
            if (hit) ++cells_covered;
        }
    }
    if (cells_in_region == 0) return 0.0;
    return static_cast<double>(cells_covered) / static_cast<double>(cells_in_region);
}

}  // namespace gperiod
