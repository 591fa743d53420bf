#include "gperiod/cli.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gperiod/render.hpp"

namespace gperiod {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

uint64_t fnv64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string realness_name(RealnessKind kind) {
    switch (kind) {
        case RealnessKind::real: return "real";
        case RealnessKind::real_or_imaginary: return "real_or_imaginary";
        case RealnessKind::generic: return "generic";
    }
    return "generic";
}

std::string boundary_kind_name(BoundarySpec::Kind kind) {
    switch (kind) {
        case BoundarySpec::Kind::hypocycloid: return "hypocycloid";
        case BoundarySpec::Kind::laurent: return "laurent";
        case BoundarySpec::Kind::real_segment: return "real_segment";
        case BoundarySpec::Kind::point_set: return "point_set";
    }
    return "point_set";
}

json boundary_to_json(const BoundarySpec& spec) {
    json j{{"kind", boundary_kind_name(spec.kind)}, {"d", spec.d}};
    if (spec.kind == BoundarySpec::Kind::real_segment) {
        j["lo"] = spec.segment_lo;
        j["hi"] = spec.segment_hi;
    }
    if (spec.kind == BoundarySpec::Kind::laurent) j["phi"] = spec.table->phi;
    return j;
}

json checks_to_json(const std::vector<VerificationEntry>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"claim", c.claim},
                       {"pass", c.pass},
                       {"measured", c.measured},
                       {"tolerance", c.tolerance}});
    return arr;
}

json pm_to_json(const PMDecomposition& pm) {
    return {{"k", pm.k},
            {"j0", pm.j0},
            {"j_plus", pm.j_plus},
            {"j_minus", pm.j_minus}};
}

void write_file(const std::string& path, const void* data, size_t size) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw std::runtime_error("short write: " + path);
}

std::string resolve_cache_dir(const JobSpec& job) {
    if (!job.cache_dir.empty()) return job.cache_dir;
    if (const char* env = std::getenv("GPERIOD_CACHE_DIR")) return env;
    return {};
}

void apply_thread_setting(const JobSpec& job) {
    int threads = job.threads;
    if (threads <= 0)
        if (const char* env = std::getenv("GPERIOD_THREADS"))
            threads = std::atoi(env);
    set_thread_count(threads);
}

int64_t normalize(int64_t a, int64_t n) {
    int64_t v = a % n;
    return v < 0 ? v + n : v;
}

// Values are computed fresh or loaded from the (n, omega, r)-keyed cache;
// the cache stores the same CSV format and labels are recomputed, so a
// cache hit can never change output bytes.
ValueCloud obtain_cloud(const JobSpec& job, int64_t m) {
    const std::string cache_dir = resolve_cache_dir(job);
    std::string cache_file;
    if (!cache_dir.empty()) {
        const std::string key = "v1:" + std::to_string(job.n) + ":" +
                                std::to_string(job.omega) + ":" + std::to_string(job.r);
        char name[32];
        std::snprintf(name, sizeof name, "%016" PRIx64 ".csv", fnv64(key));
        cache_file = (fs::path(cache_dir) / name).string();
    }

    ValueCloud cloud;
    if (!cache_file.empty() && fs::exists(cache_file)) {
        cloud = read_values_csv(cache_file);
    } else {
        const CyclicAction A = cyclic_subgroup(job.n, job.omega);
        cloud = supercharacter_image(orbit(A, job.r), 1);
        if (!cache_file.empty()) {
            fs::create_directories(cache_dir);
            write_values_csv(cache_file, cloud);
        }
    }
    cloud.orbit.omega = normalize(job.omega, job.n);
    cloud.orbit.base = normalize(job.r, job.n);
    cloud.color_modulus = m;
    for (int64_t y = 0; y < cloud.size(); ++y) cloud.labels[y] = y % m;
    return cloud;
}

std::string replace_extension(const std::string& path, const std::string& ext) {
    fs::path p(path);
    p.replace_extension(ext);
    return p.string();
}

// ---- verification suites -------------------------------------------------

struct SuiteOutcome {
    std::vector<VerificationEntry> checks;
    json extra = json::object();
    bool pass = true;

    void add(VerificationEntry entry) {
        pass = pass && entry.pass;
        checks.push_back(std::move(entry));
    }
    void fail(const std::string& claim) {
        add({claim, false, 0.0, 0.0});
    }
};

SuiteOutcome suite_kfold(const JobSpec& job) {
    SuiteOutcome out;
    const ValueCloud cloud = obtain_cloud(job, 1);
    const int64_t k = symmetry_order(job.n, job.omega, job.r);
    const double tol =
        job.tol > 0 ? job.tol : 1e-8 * static_cast<double>(cloud.orbit.size);
    const DihedralCheck dc = verify_dihedral(cloud, k, tol);
    out.extra["predicted_k"] = k;
    out.add({"dihedral-symmetry k=" + std::to_string(k), dc.pass,
             std::max(dc.rotation_mismatch, dc.conjugation_mismatch), tol});
    return out;
}

SuiteOutcome suite_realness(const JobSpec& job) {
    SuiteOutcome out;
    const CyclicAction A = cyclic_subgroup(job.n, job.omega);
    const RealnessClassification rc = realness_classification(A, job.r);
    const ValueCloud cloud = obtain_cloud(job, 1);
    const double tol =
        job.tol > 0 ? job.tol : 1e-9 * static_cast<double>(cloud.orbit.size);
    out.extra["classification"] = realness_name(rc.kind);
    if (rc.witness) out.extra["witness"] = pm_to_json(*rc.witness);

    if (rc.kind == RealnessKind::real) {
        double worst = 0.0;
        for (cplx v : cloud.points) worst = std::max(worst, std::abs(v.imag()));
        out.add({"realness", worst <= tol, worst, tol});
    } else if (rc.kind == RealnessKind::real_or_imaginary) {
        double worst = 0.0;
        for (int64_t y = 0; y < cloud.size(); ++y)
            worst = std::max(worst, y % 2 == 0 ? std::abs(cloud.points[y].imag())
                                               : std::abs(cloud.points[y].real()));
        out.add({"real-or-imaginary parity", worst <= tol, worst, tol});
    } else {
        double worst = 0.0;
        for (int64_t y = 0; y < cloud.size(); ++y)
            worst = std::max(worst,
                             std::abs(cloud.points[(cloud.size() - y) % cloud.size()] -
                                      std::conj(cloud.points[y])));
        out.add({"conjugate-symmetry (generic class)", worst <= 1e-10, worst, 1e-10});
    }
    return out;
}

SuiteOutcome suite_explicit(const JobSpec& job) {
    SuiteOutcome out;
    const CyclicAction A = cyclic_subgroup(job.n, job.omega);
    if (std::gcd(normalize(job.r, job.n), job.n) != 1) {
        out.fail("explicit-evaluation requires a unit base point");
        return out;
    }
    int64_t found = 0;
    for (int64_t k = 4; k <= job.n; k += 2)
        if (job.n % k == 0 && explicit_form_applies(A, k)) {
            found = k;
            break;
        }
    if (found == 0) {
        out.fail("no even k with J+ = evens and J- = odds");
        return out;
    }
    const ValueCloud cloud = obtain_cloud(job, 1);
    const double tol = job.tol > 0 ? job.tol : 1e-9;
    double worst = 0.0;
    for (int64_t y = 0; y < cloud.size(); ++y)
        worst = std::max(worst, std::abs(cloud.points[y] -
                                         explicit_eval(job.n, found, job.r, y)));
    out.extra["k"] = found;
    out.add({"explicit-evaluation k=" + std::to_string(found), worst <= tol, worst,
             tol});
    return out;
}

SuiteOutcome suite_ellipse(const JobSpec& job) {
    SuiteOutcome out;
    const ValueCloud cloud = obtain_cloud(job, 1);
    const double tol = job.tol > 0 ? job.tol : 1e-8;
    json candidates = json::array();
    bool any = false;
    for (const auto& pp : factorize(job.n).factors) {
        if (pp.prime % 4 != 1 || pp.prime < 5) continue;
        const EllipseReport er = ellipse_report(cloud, pp.prime, tol);
        candidates.push_back({{"p", er.p},
                              {"pass", er.pass},
                              {"max_ellipse_residual", er.max_ellipse_residual},
                              {"max_imag_on_axis", er.max_imag_on_axis},
                              {"max_interval_excess", er.max_interval_excess},
                              {"max_cosine_residual", er.max_cosine_residual}});
        if (er.pass) {
            any = true;
            out.add({"ellipse-membership p=" + std::to_string(er.p), true,
                     std::max({er.max_ellipse_residual, er.max_imag_on_axis,
                               er.max_interval_excess, er.max_cosine_residual}),
                     tol});
        }
    }
    out.extra["candidates"] = candidates;
    if (!any) out.fail("no divisor p = 1 (mod 4) yields the ellipse structure");
    return out;
}

SuiteOutcome suite_mult(const JobSpec& job) {
    SuiteOutcome out;
    const ModulusContext ctx(job.n);
    const MultiplicativeSplit split = multiplicative_split(ctx, job.omega, job.r);
    json comps = json::array();
    for (const auto& c : split.components)
        comps.push_back({{"modulus", c.modulus},
                         {"generator", c.generator},
                         {"base", c.base},
                         {"orbit_size", c.orbit_size}});
    out.extra["components"] = comps;
    out.extra["applicable"] = split.applicable;
    if (!split.applicable || split.components.size() < 2) {
        out.fail("orbit sizes are not pairwise coprime across >= 2 components");
        return out;
    }
    const Orbit X = orbit(cyclic_subgroup(job.n, job.omega), job.r);
    const double tol =
        job.tol > 0 ? job.tol : 1e-9 * static_cast<double>(X.size());
    const double err = multiplicative_identity_error(ctx, job.omega, job.r);
    out.add({"multiplicative-splitting", err <= tol, err, tol});
    return out;
}

SuiteOutcome suite_nesting(const JobSpec& job) {
    SuiteOutcome out;
    const NestingReport rep = nesting_report(job.n, job.omega, job.r);
    const Orbit X = orbit(cyclic_subgroup(job.n, job.omega), job.r);
    const double tol =
        job.tol > 0 ? job.tol : 1e-9 * static_cast<double>(X.size());
    out.extra["d_prime"] = rep.d_prime;
    out.extra["xi"] = rep.xi;
    out.extra["scale"] = rep.scale;
    const double measured = std::max(
        {rep.image_vs_gcd_base, rep.image_vs_reduced, rep.gcd_base_vs_reduced});
    out.add({"nesting-image-equality d'=" + std::to_string(rep.d_prime),
             measured <= tol, measured, tol});
    if (rep.xi_unit) {
        const CyclicAction A = cyclic_subgroup(job.n, job.omega);
        const double subset_tol =
            job.tol > 0 ? job.tol : 1e-9 * static_cast<double>(A.order);
        out.add({"nesting-scaled-subset", rep.scaled_subset_excess <= subset_tol,
                 rep.scaled_subset_excess, subset_tol});
    }
    return out;
}

SuiteOutcome suite_collapse(const JobSpec& job) {
    SuiteOutcome out;
    const Factorization f = factorize(job.n);
    if (f.factors.size() != 1 || f.factors[0].prime == 2 || f.factors[0].exponent < 2)
        throw BadParameter("collapse suite requires n = p^a, p odd, a >= 2");
    const int64_t p = f.factors[0].prime;
    const int a = f.factors[0].exponent;
    const CyclicAction A = cyclic_subgroup(job.n, job.omega);

    bool any = false;
    int64_t pb = p;
    for (int b = 1; b < a; ++b, pb *= p) {
        if (A.order % pb != 0) break;
        const int64_t n_red = job.n / pb;
        if (A.order != pb * mul_order(A.omega % n_red, n_red)) continue;
        const CollapseReport cr = prime_power_collapse(p, a, b, job.omega);
        const double tol =
            job.tol > 0 ? job.tol : 1e-9 * static_cast<double>(cr.orbit_size);
        const double measured = std::max(
            {cr.max_off_support, cr.max_pointwise_error, cr.image_hausdorff});
        out.add({"prime-power-collapse b=" + std::to_string(b), measured <= tol,
                 measured, tol});
        any = true;
    }
    if (!any) out.fail("no b >= 1 with |X| = p^b |psi(X)|");
    return out;
}

SuiteOutcome suite_boundary(const JobSpec& job) {
    SuiteOutcome out;
    const CyclicAction A = cyclic_subgroup(job.n, job.omega);
    const int64_t d = job.d_override > 0 ? job.d_override : orbit(A, job.r).size();
    const BoundarySpec spec = boundary_predict(job.n, d);
    const ValueCloud cloud = obtain_cloud(job, 1);
    const bool laurent_kind = spec.kind == BoundarySpec::Kind::laurent;
    const double tol = job.tol > 0 ? job.tol : (laurent_kind ? 0.0 : 1e-9);
    const double limit = laurent_kind ? 0.05 * static_cast<double>(d) : 0.0;
    const double err = boundary_containment_error(cloud, spec, tol);
    out.extra["prediction"] = boundary_to_json(spec);
    out.add({"boundary-containment (" + boundary_kind_name(spec.kind) + ")",
             err <= limit, err, laurent_kind ? limit : tol});
    return out;
}

SuiteOutcome suite_weyl(const JobSpec& job) {
    SuiteOutcome out;
    if (job.d_override < 2)
        throw BadParameter("weyl suite requires --d (the orbit size) >= 2");
    const SqPointSet set = sq_points(job.n, job.d_override);
    out.extra["omega_q"] = set.omega_q;
    const double tol = job.tol > 0 ? job.tol : 1e-9;

    std::mt19937_64 rng(0x5EEDBA5Eull ^ static_cast<uint64_t>(job.n));
    std::uniform_int_distribution<int64_t> entry(-10, 10);
    double worst = 0.0;
    bool consistent = true;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int64_t> v(set.dim);
        do {
            for (auto& c : v) c = entry(rng);
        } while (std::all_of(v.begin(), v.end(), [](int64_t c) { return c == 0; }));
        const cplx w = weyl_statistic(set, v);
        const bool divides = weyl_divisibility(set, v);
        const double dev = std::abs(w - (divides ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
        worst = std::max(worst, dev);
        if (dev > tol) consistent = false;
    }
    out.add({"weyl-statistic 0/1 dichotomy", consistent, worst, tol});
    return out;
}

SuiteOutcome run_suite(const JobSpec& job) {
    if (job.suite == "kfold") return suite_kfold(job);
    if (job.suite == "realness") return suite_realness(job);
    if (job.suite == "explicit") return suite_explicit(job);
    if (job.suite == "ellipse") return suite_ellipse(job);
    if (job.suite == "mult") return suite_mult(job);
    if (job.suite == "nesting") return suite_nesting(job);
    if (job.suite == "collapse") return suite_collapse(job);
    if (job.suite == "boundary") return suite_boundary(job);
    if (job.suite == "weyl") return suite_weyl(job);
    throw BadParameter("unknown suite: " + job.suite);
}

// ---- commands --------------------------------------------------------------

JobResult run_plot(const JobSpec& job) {
    if (job.output_path.empty()) throw BadParameter("plot requires an output path");
    const int64_t m = job.color_modulus > 0
                          ? job.color_modulus
                          : auto_color_modulus(job.n, job.omega, job.r);
    const ValueCloud cloud = obtain_cloud(job, m);

    PlotConfig config;
    config.width = job.width;
    config.height = job.height;
    config.point_radius = job.point_radius;
    config.color_modulus = m;
    if (job.overlay) {
        const Factorization f = factorize(job.n);
        if (f.factors.size() == 1 && f.factors[0].prime != 2 &&
            (f.factors[0].prime - 1) % cloud.orbit.size == 0)
            config.boundary_overlay = boundary_predict(job.n, cloud.orbit.size);
    }

    const std::string values_path = replace_extension(job.output_path, ".csv");
    write_values_csv(values_path, cloud);
    if (job.svg) {
        const std::string svg = render_svg(cloud, config);
        write_file(job.output_path, svg.data(), svg.size());
    } else {
        const std::vector<uint8_t> png = render_png(cloud, config);
        write_file(job.output_path, png.data(), png.size());
    }
    return {0, "wrote " + job.output_path + " and " + values_path};
}

JobResult run_analyze(const JobSpec& job) {
    const AnalysisReport rep = analyze(job.n, job.omega, job.r);
    const std::string doc = report_to_json(rep);
    int pass = 0;
    for (const auto& c : rep.checks) pass += c.pass ? 1 : 0;
    std::string summary = "analyze n=" + std::to_string(rep.n) +
                          " omega=" + std::to_string(rep.omega) +
                          " r=" + std::to_string(rep.r) + ": d=" + std::to_string(rep.d) +
                          " k=" + std::to_string(rep.symmetry) +
                          " realness=" + realness_name(rep.realness) + "; checks " +
                          std::to_string(pass) + "/" + std::to_string(rep.checks.size()) +
                          " pass";
    if (job.output_path.empty()) return {0, doc};
    write_file(job.output_path, doc.data(), doc.size());
    return {0, summary + "; wrote " + job.output_path};
}

JobResult run_verify(const JobSpec& job) {
    const SuiteOutcome out = run_suite(job);
    json doc{{"schema", 1},
             {"suite", job.suite},
             {"parameters", {{"n", job.n}, {"omega", job.omega}, {"r", job.r}}},
             {"checks", checks_to_json(out.checks)},
             {"pass", out.pass}};
    for (auto& [key, value] : out.extra.items()) doc[key] = value;
    const std::string text = doc.dump(2) + "\n";
    if (!job.output_path.empty()) write_file(job.output_path, text.data(), text.size());
    return {out.pass ? 0 : 1,
            job.output_path.empty() ? text
                                    : ("suite " + job.suite +
                                       (out.pass ? ": pass" : ": FAIL") + "; wrote " +
                                       job.output_path)};
}

JobResult run_boundary(const JobSpec& job) {
    if (job.output_path.empty()) throw BadParameter("boundary requires an output path");
    int64_t d = job.d_override;
    if (d <= 0) d = orbit(cyclic_subgroup(job.n, job.omega), job.r).size();
    const BoundarySpec spec = boundary_predict(job.n, d);

    std::ostringstream csv;
    csv << "theta,re,im\n";
    char line[96];
    const int count = std::max(job.samples, 2);
    switch (spec.kind) {
        case BoundarySpec::Kind::hypocycloid: {
            const auto pts = hypocycloid_samples(spec.d, count);
            for (int i = 0; i < count; ++i) {
                std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n",
                              static_cast<double>(i) / count, pts[i].real(),
                              pts[i].imag());
                csv << line;
            }
            break;
        }
        case BoundarySpec::Kind::real_segment: {
            for (int i = 0; i < count; ++i) {
                const double t = static_cast<double>(i) / (count - 1);
                std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", t,
                              spec.segment_lo + t * (spec.segment_hi - spec.segment_lo),
                              0.0);
                csv << line;
            }
            break;
        }
        case BoundarySpec::Kind::laurent: {
            std::vector<double> angles(spec.table->phi);
            for (int i = 0; i < count; ++i) {
                const double t = static_cast<double>(i) / count;
                std::fill(angles.begin(), angles.end(), t);
                const cplx v = laurent_eval(*spec.table, angles);
                std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", t, v.real(),
                              v.imag());
                csv << line;
            }
            break;
        }
        case BoundarySpec::Kind::point_set: {
            for (size_t i = 0; i < spec.points.size(); ++i) {
                std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", i,
                              spec.points[i].real(), spec.points[i].imag());
                csv << line;
            }
            break;
        }
    }
    const std::string text = csv.str();
    write_file(job.output_path, text.data(), text.size());
    return {0, "wrote " + std::to_string(count) + " boundary samples (" +
                   boundary_kind_name(spec.kind) + ") to " + job.output_path};
}

JobResult run_sweep(const JobSpec& job) {
    if (job.output_path.empty()) throw BadParameter("sweep requires an output path");
    if (job.n_from < 2 || job.n_to < job.n_from || job.n_step < 1)
        throw BadParameter("sweep requires 2 <= n-from <= n-to and n-step >= 1");

    std::ostringstream csv;
    csv << "n,omega,r,d,symmetry,realness\n";
    int64_t swept = 0, real_count = 0, parity_count = 0, generic_count = 0;
    for (int64_t n = job.n_from; n <= job.n_to; n += job.n_step) {
        const int64_t w = normalize(job.omega, n);
        if (w == 0 || std::gcd(w, n) != 1) continue;
        const CyclicAction A = cyclic_subgroup(n, w);
        const Orbit X = orbit(A, job.r);
        const RealnessClassification rc = realness_classification(A, job.r);
        switch (rc.kind) {
            case RealnessKind::real: ++real_count; break;
            case RealnessKind::real_or_imaginary: ++parity_count; break;
            case RealnessKind::generic: ++generic_count; break;
        }
        csv << n << ',' << w << ',' << normalize(job.r, n) << ',' << X.size() << ','
            << symmetry_order(n, w, job.r) << ',' << realness_name(rc.kind) << '\n';
        ++swept;
    }
    const std::string text = csv.str();
    write_file(job.output_path, text.data(), text.size());
    return {0, "swept " + std::to_string(swept) + " moduli (real=" +
                   std::to_string(real_count) + ", real_or_imaginary=" +
                   std::to_string(parity_count) + ", generic=" +
                   std::to_string(generic_count) + "); wrote " + job.output_path};
}

void validate_common(const JobSpec& job) {
    if (job.command == Command::sweep) return;  // n ranges validated separately
    if (job.n < 2) throw BadParameter("n must be at least 2");
    const int64_t w = normalize(job.omega, job.n);
    if (std::gcd(w, job.n) != 1)
        throw NotAUnit("omega = " + std::to_string(job.omega) +
                       " is not a unit mod " + std::to_string(job.n));
}

json error_json(const std::string& kind, const std::string& what, int code) {
    return {{"error", {{"kind", kind}, {"message", what}}}, {"exit_code", code}};
}

}  // namespace

void write_values_csv(const std::string& path, const ValueCloud& cloud) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "y,re,im,label\n";
    char line[128];
    for (int64_t y = 0; y < cloud.size(); ++y) {
        std::snprintf(line, sizeof line, "%" PRId64 ",%.17g,%.17g,%" PRId64 "\n", y,
                      cloud.points[y].real(), cloud.points[y].imag(), cloud.labels[y]);
        out << line;
    }
    if (!out) throw std::runtime_error("short write: " + path);
}

ValueCloud read_values_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string header;
    std::getline(in, header);
    if (header != "y,re,im,label")
        throw std::runtime_error("unexpected values header in " + path);

    ValueCloud cloud;
    std::string record;
    while (std::getline(in, record)) {
        if (record.empty()) continue;
        int64_t y = 0, label = 0;
        double re = 0, im = 0;
        if (std::sscanf(record.c_str(), "%" SCNd64 ",%lg,%lg,%" SCNd64, &y, &re, &im,
                        &label) != 4)
            throw std::runtime_error("malformed values row in " + path);
        if (y != cloud.size())
            throw std::runtime_error("non-contiguous y sequence in " + path);
        cloud.points.push_back({re, im});
        cloud.labels.push_back(label);
    }
    if (cloud.points.empty()) throw std::runtime_error("empty values file: " + path);
    cloud.n = cloud.size();
    // sigma(0) equals the orbit size exactly, so d survives the round trip
    cloud.orbit.size = static_cast<int64_t>(std::llround(cloud.points[0].real()));
    int64_t max_label = 0;
    for (int64_t l : cloud.labels) max_label = std::max(max_label, l);
    cloud.color_modulus = max_label + 1;
    return cloud;
}

std::string report_to_json(const AnalysisReport& rep) {
    json comps = json::array();
    for (const auto& c : rep.split.components)
        comps.push_back({{"modulus", c.modulus},
                         {"generator", c.generator},
                         {"base", c.base},
                         {"orbit_size", c.orbit_size}});
    json doc{
        {"schema", 1},
        {"parameters",
         {{"n", rep.n}, {"omega", rep.omega}, {"r", rep.r}, {"d", rep.d}}},
        {"symmetry_order", rep.symmetry},
        {"realness", realness_name(rep.realness)},
        {"multiplicative_split",
         {{"applicable", rep.split.applicable}, {"components", comps}}},
        {"nesting",
         {{"d_prime", rep.nesting.d_prime},
          {"xi", rep.nesting.xi},
          {"xi_unit", rep.nesting.xi_unit},
          {"scale", rep.nesting.scale},
          {"image_vs_gcd_base", rep.nesting.image_vs_gcd_base},
          {"image_vs_reduced", rep.nesting.image_vs_reduced},
          {"gcd_base_vs_reduced", rep.nesting.gcd_base_vs_reduced},
          {"scaled_subset_excess", rep.nesting.scaled_subset_excess}}},
        {"verification", checks_to_json(rep.checks)},
    };
    doc["realness_witness"] =
        rep.realness_witness ? pm_to_json(*rep.realness_witness) : json(nullptr);
    doc["boundary"] = rep.boundary ? boundary_to_json(*rep.boundary) : json(nullptr);
    return doc.dump(2) + "\n";
}

JobResult run(const JobSpec& job) {
    try {
        apply_thread_setting(job);
        validate_common(job);
        switch (job.command) {
            case Command::plot: return run_plot(job);
            case Command::analyze: return run_analyze(job);
            case Command::verify: return run_verify(job);
            case Command::boundary: return run_boundary(job);
            case Command::sweep: return run_sweep(job);
        }
        throw BadParameter("unknown command");
    } catch (const Error& e) {
        return {2, error_json("validation", e.what(), 2).dump(2) + "\n"};
    } catch (const std::exception& e) {
        return {3, error_json("internal", e.what(), 3).dump(2) + "\n"};
    }
}

}  // namespace gperiod
