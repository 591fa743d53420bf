// Command-line front end: parses flags into a JobSpec and hands off to the
// library's job runner. Exit codes: 0 success / all checks pass, 1 a
// verification suite failed, 2 usage or validation error, 3 internal error.

#include <cstdio>

#include <CLI11.hpp>

#include "gperiod/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cyclic supercharacter toolkit: exponential-sum images over Z/nZ"};
    app.require_subcommand(1);

    gperiod::JobSpec job;

    auto add_params = [&](CLI::App* cmd, bool need_n) {
        auto* n = cmd->add_option("--n", job.n, "modulus n");
        if (need_n) n->required();
        cmd->add_option("--omega", job.omega, "generator of the acting subgroup");
        cmd->add_option("--r", job.r, "orbit base point (default 1)");
        cmd->add_option("--cache-dir", job.cache_dir,
                        "value cache directory (env GPERIOD_CACHE_DIR)");
        cmd->add_option("--threads", job.threads,
                        "worker threads (env GPERIOD_THREADS; default: all cores)");
    };

    CLI::App* plot = app.add_subcommand("plot", "render the image of sigma_X");
    add_params(plot, true);
    plot->add_option("--out", job.output_path, "output image path")->required();
    plot->add_option("--width", job.width, "image width in pixels");
    plot->add_option("--height", job.height, "image height in pixels");
    plot->add_option("--point-radius", job.point_radius, "point radius in pixels");
    plot->add_option("--color-modulus", job.color_modulus,
                     "residue classes to color (default: automatic)");
    plot->add_flag("--svg", job.svg, "emit SVG instead of PNG");
    plot->add_flag("--overlay", job.overlay, "draw the predicted boundary");

    CLI::App* analyze =
        app.add_subcommand("analyze", "predict and verify structural properties");
    add_params(analyze, true);
    analyze->add_option("--out", job.output_path, "report JSON path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
    add_params(verify, true);
    verify->add_option("--suite", job.suite,
                       "kfold|realness|explicit|ellipse|mult|nesting|collapse|"
                       "boundary|weyl")
        ->required();
    verify->add_option("--tol", job.tol, "override the suite tolerance");
    verify->add_option("--d", job.d_override, "orbit size (weyl/boundary suites)");
    verify->add_option("--out", job.output_path, "suite JSON path (default stdout)");

    CLI::App* boundary =
        app.add_subcommand("boundary", "sample the predicted boundary curve");
    add_params(boundary, true);
    boundary->add_option("--d", job.d_override, "orbit size (default: |<omega>r|)");
    boundary->add_option("--samples", job.samples, "number of samples");
    boundary->add_option("--out", job.output_path, "samples CSV path")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "scan a range of moduli");
    add_params(sweep, false);
    sweep->add_option("--n-from", job.n_from, "first modulus")->required();
    sweep->add_option("--n-to", job.n_to, "last modulus")->required();
    sweep->add_option("--n-step", job.n_step, "modulus stride (default 1)");
    sweep->add_option("--out", job.output_path, "summary CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (plot->parsed()) job.command = gperiod::Command::plot;
    if (analyze->parsed()) job.command = gperiod::Command::analyze;
    if (verify->parsed()) job.command = gperiod::Command::verify;
    if (boundary->parsed()) job.command = gperiod::Command::boundary;
    if (sweep->parsed()) job.command = gperiod::Command::sweep;

    const gperiod::JobResult result = gperiod::run(job);
    if (!result.message.empty())
        std::fprintf(result.exit_code == 0 ? stdout : stderr, "%s\n",
                     result.message.c_str());
    return result.exit_code;
}
