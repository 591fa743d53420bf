#include "gperiod/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "point_grid.hpp"

namespace gperiod {

namespace {

int64_t normalize(int64_t a, int64_t n) {
    int64_t v = a % n;
    return v < 0 ? v + n : v;
}

detail::PointGrid make_grid(std::span<const cplx> pts) {
    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    for (cplx p : pts) {
        lo_x = std::min(lo_x, p.real());
        hi_x = std::max(hi_x, p.real());
        lo_y = std::min(lo_y, p.imag());
        hi_y = std::max(hi_y, p.imag());
    }
    const double diag = std::hypot(hi_x - lo_x, hi_y - lo_y);
    const double cell =
        std::max(diag / std::sqrt(static_cast<double>(pts.size()) + 1.0), 1e-9);
    return detail::PointGrid(pts, cell);
}

std::vector<int64_t> sorted_divisors(int64_t n) {
    std::vector<int64_t> divs;
    for (int64_t e = 1; e * e <= n; ++e) {
        if (n % e != 0) continue;
        divs.push_back(e);
        if (e != n / e) divs.push_back(n / e);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

bool qualifying_decomposition(const PMDecomposition& pm) {
    if (pm.k % 2 != 0) return false;
    std::vector<int64_t> mirrored;
    mirrored.reserve(pm.j_plus.size());
    for (int64_t j : pm.j_plus) mirrored.push_back(normalize(pm.k / 2 - j, pm.k));
    std::sort(mirrored.begin(), mirrored.end());
    return mirrored == pm.j_minus;
}

}  // namespace

double directed_hausdorff(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty()) return 0.0;
    if (b.empty()) return std::numeric_limits<double>::infinity();
    const detail::PointGrid grid = make_grid(b);
    double worst = 0.0;
    for (cplx p : a) worst = std::max(worst, grid.nearest(p));
    return worst;
}

double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

int64_t symmetry_order(int64_t n, int64_t omega, int64_t r) {
    omega = normalize(omega, n);
    if (std::gcd(omega, n) != 1)
        throw NotAUnit("symmetry_order: omega is not a unit mod n");
    const int64_t g = std::gcd(normalize(r, n), n);  // gcd(0, n) = n handles r = 0
    return std::gcd(omega - 1, n / g);
}

DihedralCheck verify_dihedral(const ValueCloud& cloud, int64_t k, double tol) {
    if (k < 1) throw BadParameter("verify_dihedral: k must be positive");
    DihedralCheck check;
    check.k = k;
    check.tol = tol;

    const std::vector<cplx> vals = distinct_values(cloud);
    std::vector<cplx> rotated(vals.size()), conjugated(vals.size());
    const cplx rot = unit_root(1.0 / static_cast<double>(k));
    for (size_t i = 0; i < vals.size(); ++i) {
        rotated[i] = vals[i] * rot;
        conjugated[i] = std::conj(vals[i]);
    }
    check.rotation_mismatch = hausdorff_distance(rotated, vals);
    check.conjugation_mismatch = hausdorff_distance(conjugated, vals);
    check.pass = check.rotation_mismatch <= tol && check.conjugation_mismatch <= tol;
    return check;
}

RealnessClassification realness_classification(
    const CyclicAction& action, int64_t r,
    std::optional<PMDecomposition> decomposition) {
    const int64_t n = action.n;
    r = normalize(r, n);
    if (r == 0) return {RealnessKind::real, std::nullopt};  // constant image {d}
    if (action.contains(n - 1)) return {RealnessKind::real, std::nullopt};

    std::optional<PMDecomposition> witness;
    if (decomposition && qualifying_decomposition(*decomposition)) {
        witness = std::move(decomposition);
    } else {
        for (int64_t k : sorted_divisors(n)) {
            if (k % 2 != 0) continue;
            auto pm = pm_decompose(action, k);
            if (pm && qualifying_decomposition(*pm)) {
                witness = std::move(pm);
                break;
            }
        }
    }
    if (!witness) return {RealnessKind::generic, std::nullopt};
    if (r % 2 == 1) return {RealnessKind::real_or_imaginary, std::move(witness)};
    return {RealnessKind::real, std::move(witness)};
}

cplx explicit_eval(int64_t n, int64_t k, int64_t r, int64_t y) {
    if (k <= 2 || k % 2 != 0)
        throw HypothesesNotVerified("explicit_eval: k must be even and > 2");
    y = normalize(y, n);
    const cplx e_ry = unit_root(static_cast<double>(mul_mod(r, y, n)) /
                                static_cast<double>(n));
    if (y % k == 0) return {k * e_ry.real(), 0.0};
    if (y % k == k / 2) return {0.0, k * e_ry.imag()};
    return {0.0, 0.0};
}

bool explicit_form_applies(const CyclicAction& action, int64_t k) {
    if (k <= 2 || k % 2 != 0 || action.n % k != 0) return false;
    const auto pm = pm_decompose(action, k);
    if (!pm) return false;
    std::vector<int64_t> evens, odds;
    for (int64_t j = 0; j < k; j += 2) evens.push_back(j);
    for (int64_t j = 1; j < k; j += 2) odds.push_back(j);
    return pm->j_plus == evens && pm->j_minus == odds;
}

EllipseReport ellipse_report(const ValueCloud& cloud, int64_t p, double tol) {
    if (p < 5 || !is_prime(p) || p % 4 != 1)
        throw BadParameter("ellipse_report: p must be a prime congruent to 1 mod 4");
    if (cloud.n % p != 0)
        throw BadParameter("ellipse_report: p must divide the modulus");

    EllipseReport rep;
    rep.p = p;
    rep.tol = tol;
    const double pd = static_cast<double>(p);
    for (int64_t y = 0; y < cloud.n; ++y) {
        const cplx v = cloud.points[y];
        if (y % p == 0) {
            ++rep.points_on_axis;
            rep.max_imag_on_axis = std::max(rep.max_imag_on_axis, std::abs(v.imag()));
            rep.max_interval_excess =
                std::max(rep.max_interval_excess, std::abs(v.real()) - (pd - 1.0));
            const double cosine =
                (pd - 1.0) * unit_root(static_cast<double>(y) /
                                       static_cast<double>(cloud.n))
                                 .real();
            rep.max_cosine_residual =
                std::max(rep.max_cosine_residual, std::abs(v - cplx{cosine, 0.0}));
        } else {
            ++rep.points_off_axis;
            rep.max_ellipse_residual = std::max(
                rep.max_ellipse_residual,
                std::abs(v.real() * v.real() + v.imag() * v.imag() / pd - 1.0));
        }
    }
    rep.max_interval_excess = std::max(rep.max_interval_excess, 0.0);
    rep.pass = rep.max_ellipse_residual <= tol && rep.max_imag_on_axis <= tol &&
               rep.max_interval_excess <= tol && rep.max_cosine_residual <= tol;
    return rep;
}

MultiplicativeSplit multiplicative_split(const ModulusContext& ctx, int64_t omega,
                                         int64_t r) {
    omega = normalize(omega, ctx.n);
    if (std::gcd(omega, ctx.n) != 1)
        throw NotAUnit("multiplicative_split: omega is not a unit mod n");
    r = normalize(r, ctx.n);

    MultiplicativeSplit split;
    for (const auto& comp : ctx.components) {
        SplitComponent c;
        c.modulus = comp.modulus;
        c.generator = comp.reduce(omega);
        c.base = mul_mod(comp.cofactor_inverse, comp.reduce(r), comp.modulus);
        c.orbit_size = orbit(cyclic_subgroup(comp.modulus, c.generator), c.base).size();
        split.components.push_back(c);
    }
    split.applicable = true;
    for (size_t i = 0; i < split.components.size() && split.applicable; ++i)
        for (size_t j = i + 1; j < split.components.size(); ++j)
            if (std::gcd(split.components[i].orbit_size,
                         split.components[j].orbit_size) != 1) {
                split.applicable = false;
                break;
            }
    return split;
}

double multiplicative_identity_error(const ModulusContext& ctx, int64_t omega,
                                     int64_t r) {
    const MultiplicativeSplit split = multiplicative_split(ctx, omega, r);
    const ValueCloud full =
        supercharacter_image(orbit(cyclic_subgroup(ctx.n, normalize(omega, ctx.n)), r), 1);

    std::vector<ValueCloud> parts;
    parts.reserve(split.components.size());
    for (const auto& c : split.components)
        parts.push_back(supercharacter_image(
            orbit(cyclic_subgroup(c.modulus, c.generator), c.base), 1));

    double worst = 0.0;
    for (int64_t y = 0; y < ctx.n; ++y) {
        cplx prod{1.0, 0.0};
        for (size_t j = 0; j < parts.size(); ++j)
            prod *= parts[j].points[y % parts[j].n];
        worst = std::max(worst, std::abs(full.points[y] - prod));
    }
    return worst;
}

NestingReport nesting_report(int64_t n, int64_t omega, int64_t r) {
    omega = normalize(omega, n);
    if (std::gcd(omega, n) != 1)
        throw NotAUnit("nesting_report: omega is not a unit mod n");
    r = normalize(r, n);

    NestingReport rep;
    const int64_t g = std::gcd(r, n);  // n when r = 0
    rep.d_prime = n / g;
    rep.xi = r == 0 ? 0 : normalize(r / g, n);
    rep.xi_unit = rep.xi != 0 && std::gcd(rep.xi, n) == 1;

    const CyclicAction A = cyclic_subgroup(n, omega);
    const int64_t reduced_order =
        rep.d_prime >= 2 ? mul_order(omega % rep.d_prime, rep.d_prime) : 1;
    rep.scale = static_cast<double>(A.order) / static_cast<double>(reduced_order);

    const std::vector<cplx> im_full = distinct_values(supercharacter_image(orbit(A, r), 1));
    const std::vector<cplx> im_gcd =
        distinct_values(supercharacter_image(orbit(A, g % n), 1));
    std::vector<cplx> im_reduced;
    if (rep.d_prime >= 2) {
        const CyclicAction A_red = cyclic_subgroup(rep.d_prime, omega % rep.d_prime);
        im_reduced = distinct_values(supercharacter_image(orbit(A_red, 1), 1));
    } else {
        im_reduced = {cplx{1.0, 0.0}};
    }

    rep.image_vs_gcd_base = hausdorff_distance(im_full, im_gcd);
    rep.image_vs_reduced = hausdorff_distance(im_full, im_reduced);
    rep.gcd_base_vs_reduced = hausdorff_distance(im_gcd, im_reduced);

    if (rep.xi_unit) {
        const std::vector<cplx> im_xi =
            distinct_values(supercharacter_image(orbit(A, rep.xi), 1));
        std::vector<cplx> scaled(im_full.size());
        for (size_t i = 0; i < im_full.size(); ++i) scaled[i] = rep.scale * im_full[i];
        rep.scaled_subset_excess = directed_hausdorff(scaled, im_xi);
    }
    return rep;
}

CollapseReport prime_power_collapse(int64_t p, int a, int b, int64_t omega) {
    if (p < 3 || !is_prime(p))
        throw BadParameter("prime_power_collapse: p must be an odd prime");
    if (b < 0 || a <= b)
        throw BadParameter("prime_power_collapse: need a > b >= 0");

    int64_t n = 1;
    for (int i = 0; i < a; ++i) n *= p;
    int64_t pb = 1;
    for (int i = 0; i < b; ++i) pb *= p;
    const int64_t n_red = n / pb;

    CollapseReport rep;
    rep.p = p;
    rep.a = a;
    rep.b = b;
    rep.scale = pb;
    rep.reduced_modulus = n_red;

    const CyclicAction A = cyclic_subgroup(n, omega);
    rep.orbit_size = A.order;  // X = A1
    if (rep.orbit_size % pb != 0)
        throw BadParameter("prime_power_collapse: p^b must divide the orbit size");

    const CyclicAction A_red = cyclic_subgroup(n_red, omega % n_red);
    rep.reduced_orbit_size = A_red.order;
    if (rep.orbit_size != pb * rep.reduced_orbit_size)
        throw BadParameter(
            "prime_power_collapse: orbit is not the full preimage of its reduction");

    const ValueCloud cloud = supercharacter_image(orbit(A, 1), 1);
    const ValueCloud reduced = supercharacter_image(orbit(A_red, 1), 1);

    for (int64_t y = 0; y < n; ++y) {
        if (y % pb != 0) {
            rep.max_off_support = std::max(rep.max_off_support, std::abs(cloud.points[y]));
        } else {
            const cplx predicted =
                static_cast<double>(pb) * reduced.points[y % n_red];
            rep.max_pointwise_error =
                std::max(rep.max_pointwise_error, std::abs(cloud.points[y] - predicted));
        }
    }

    std::vector<cplx> predicted_image = distinct_values(reduced);
    for (auto& v : predicted_image) v *= static_cast<double>(pb);
    if (b > 0) predicted_image.push_back({0.0, 0.0});
    rep.image_hausdorff =
        hausdorff_distance(distinct_values(cloud), predicted_image);
    return rep;
}

BoundarySpec boundary_predict(int64_t q, int64_t d) {
    if (q < 3)
        throw BadParameter("boundary_predict: q must be an odd prime power >= 3");
    const Factorization f = factorize(q);
    if (f.factors.size() != 1 || f.factors[0].prime == 2)
        throw BadParameter("boundary_predict: " + std::to_string(q) +
                           " is not an odd prime power");
    const int64_t p = f.factors[0].prime;
    if (d < 1 || (p - 1) % d != 0)
        throw BadParameter("boundary_predict: d must divide p-1");

    if (d % 2 == 0)
        return BoundarySpec::real_segment(-static_cast<double>(d),
                                          static_cast<double>(d), d);
    if (d == 1) {
        CyclotomicReduction unit_table;
        unit_table.d = 1;
        unit_table.phi = 1;
        unit_table.rows = {{1}};
        return BoundarySpec::laurent(std::move(unit_table));  // the unit circle
    }
    if (is_prime(d)) return BoundarySpec::hypocycloid(d);
    return BoundarySpec::laurent(reduction_table(d));
}

double boundary_containment_error(const ValueCloud& cloud, const BoundarySpec& spec,
                                  double tol) {
    const std::vector<cplx> values = distinct_values(cloud);
    switch (spec.kind) {
        case BoundarySpec::Kind::hypocycloid: {
            const HypocycloidRegion region(spec.d);
            double worst = 0.0;
            for (cplx v : values) worst = std::max(worst, region.excess(v, tol));
            return worst;
        }
        case BoundarySpec::Kind::real_segment: {
            double worst = 0.0;
            for (cplx v : values) {
                const double dx = v.real() < spec.segment_lo
                                      ? spec.segment_lo - v.real()
                                      : std::max(0.0, v.real() - spec.segment_hi);
                worst = std::max(worst, std::max(0.0, std::hypot(dx, v.imag()) - tol));
            }
            return worst;
        }
        case BoundarySpec::Kind::laurent: {
            const std::vector<cplx> samples = laurent_samples(*spec.table, 262144);
            const detail::PointGrid grid = make_grid(samples);
            double worst = 0.0;
            for (cplx v : values)
                worst = std::max(worst, std::max(0.0, grid.nearest(v) - tol));
            return worst;
        }
        case BoundarySpec::Kind::point_set: {
            const detail::PointGrid grid = make_grid(spec.points);
            double worst = 0.0;
            for (cplx v : values)
                worst = std::max(worst, std::max(0.0, grid.nearest(v) - tol));
            return worst;
        }
    }
    return 0.0;
}

AnalysisReport analyze(int64_t n, int64_t omega, int64_t r) {
    if (n < 2) throw OutOfRange("analyze: modulus must be at least 2");
    omega = normalize(omega, n);
    r = normalize(r, n);

    AnalysisReport rep;
    rep.n = n;
    rep.omega = omega;
    rep.r = r;

    const CyclicAction A = cyclic_subgroup(n, omega);
    const Orbit X = orbit(A, r);
    rep.d = X.size();
    rep.symmetry = symmetry_order(n, omega, r);

    const ValueCloud cloud = supercharacter_image(X, 1);
    const double dd = static_cast<double>(rep.d);

    // conjugate symmetry and superclass constancy hold for every cloud
    {
        double worst = 0.0;
        for (int64_t y = 0; y < n; ++y)
            worst = std::max(worst, std::abs(cloud.points[(n - y) % n] -
                                             std::conj(cloud.points[y])));
        rep.checks.push_back({"conjugate-symmetry", worst <= 1e-10, worst, 1e-10});
    }
    {
        double worst = 0.0;
        for (int64_t y = 0; y < n; ++y)
            worst = std::max(worst, std::abs(cloud.points[mul_mod(omega, y, n)] -
                                             cloud.points[y]));
        rep.checks.push_back({"superclass-constancy", worst <= 1e-10, worst, 1e-10});
    }

    {
        const double tol = 1e-8 * dd;
        const DihedralCheck dc = verify_dihedral(cloud, rep.symmetry, tol);
        rep.checks.push_back({"dihedral-symmetry k=" + std::to_string(rep.symmetry),
                              dc.pass,
                              std::max(dc.rotation_mismatch, dc.conjugation_mismatch),
                              tol});
    }

    const RealnessClassification rc = realness_classification(A, r);
    rep.realness = rc.kind;
    rep.realness_witness = rc.witness;
    if (rc.kind == RealnessKind::real) {
        double worst = 0.0;
        for (const cplx v : cloud.points) worst = std::max(worst, std::abs(v.imag()));
        const double tol = 1e-9 * dd;
        rep.checks.push_back({"realness", worst <= tol, worst, tol});
    } else if (rc.kind == RealnessKind::real_or_imaginary) {
        double worst = 0.0;
        for (int64_t y = 0; y < n; ++y)
            worst = std::max(worst, y % 2 == 0 ? std::abs(cloud.points[y].imag())
                                               : std::abs(cloud.points[y].real()));
        const double tol = 1e-9 * dd;
        rep.checks.push_back(
            {"real-or-imaginary parity r odd", worst <= tol, worst, tol});
    }

    if (rc.witness && std::gcd(r, n) == 1 &&
        explicit_form_applies(A, rc.witness->k)) {
        const int64_t k = rc.witness->k;
        double worst = 0.0;
        for (int64_t y = 0; y < n; ++y)
            worst = std::max(worst,
                             std::abs(cloud.points[y] - explicit_eval(n, k, r, y)));
        rep.checks.push_back(
            {"explicit-evaluation k=" + std::to_string(k), worst <= 1e-9, worst, 1e-9});
    }

    for (const auto& pp : factorize(n).factors) {
        const int64_t p = pp.prime;
        if (p % 4 != 1 || p < 5) continue;
        const EllipseReport er = ellipse_report(cloud, p, 1e-8);
        if (er.pass) {
            const double measured =
                std::max({er.max_ellipse_residual, er.max_imag_on_axis,
                          er.max_interval_excess, er.max_cosine_residual});
            rep.checks.push_back(
                {"ellipse-membership p=" + std::to_string(p), true, measured, 1e-8});
        }
    }

    const ModulusContext ctx(n);
    rep.split = multiplicative_split(ctx, omega, r);
    if (rep.split.applicable && rep.split.components.size() >= 2) {
        const double err = multiplicative_identity_error(ctx, omega, r);
        const double tol = 1e-9 * dd;
        rep.checks.push_back({"multiplicative-splitting", err <= tol, err, tol});
    }

    rep.nesting = nesting_report(n, omega, r);
    {
        const double tol = 1e-9 * dd;
        const double measured =
            std::max({rep.nesting.image_vs_gcd_base, rep.nesting.image_vs_reduced,
                      rep.nesting.gcd_base_vs_reduced});
        rep.checks.push_back({"nesting-image-equality d'=" +
                                  std::to_string(rep.nesting.d_prime),
                              measured <= tol, measured, tol});
        if (rep.nesting.xi_unit) {
            const double subset_tol = 1e-9 * static_cast<double>(A.order);
            rep.checks.push_back({"nesting-scaled-subset",
                                  rep.nesting.scaled_subset_excess <= subset_tol,
                                  rep.nesting.scaled_subset_excess, subset_tol});
        }
    }

    const Factorization nf = factorize(n);
    if (nf.factors.size() == 1 && nf.factors[0].prime != 2) {
        const int64_t p = nf.factors[0].prime;
        const int a = nf.factors[0].exponent;
        if (a >= 2 && r == 1) {
            int b_max = 0;
            int64_t pb = 1;
            while (b_max + 1 < a && rep.d % (pb * p) == 0) {
                pb *= p;
                ++b_max;
            }
            while (b_max > 0) {
                const int64_t n_red = n / pb;
                if (rep.d == pb * mul_order(omega % n_red, n_red)) break;
                pb /= p;
                --b_max;
            }
            if (b_max > 0) {
                const CollapseReport cr = prime_power_collapse(p, a, b_max, omega);
                const double measured =
                    std::max({cr.max_off_support, cr.max_pointwise_error,
                              cr.image_hausdorff});
                const double tol = 1e-9 * dd;
                rep.checks.push_back({"prime-power-collapse b=" + std::to_string(b_max),
                                      measured <= tol, measured, tol});
            }
        }
        if ((p - 1) % rep.d == 0 && r == 1) {
            rep.boundary = boundary_predict(n, rep.d);
            const bool laurent_kind =
                rep.boundary->kind == BoundarySpec::Kind::laurent;
            const double tol = laurent_kind ? 0.0 : 1e-9;
            const double err = boundary_containment_error(cloud, *rep.boundary, tol);
            const double limit = laurent_kind ? 0.05 * dd : 0.0;
            rep.checks.push_back({"boundary-containment", err <= limit, err,
                                  laurent_kind ? limit : tol});
        }
    }

    return rep;
}

}  // namespace gperiod
