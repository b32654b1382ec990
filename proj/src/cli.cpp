#include "wrinklevar/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wrinklevar/config.hpp"
#include "wrinklevar/io.hpp"
#include "wrinklevar/numfmt.hpp"
#include "wrinklevar/pairing.hpp"

namespace wrinklevar {

namespace {

std::string report_line(const HypothesisReport& r) {
    std::string line = r.name + (r.pass ? " PASS" : " FAIL") +
                       " violations=" + std::to_string(r.violations) +
                       " samples=" + std::to_string(r.samples) + " seed=" + std::to_string(r.seed) +
                       " worst_margin=" + fmt17(r.worst_margin);
    if (!r.witness.empty()) line += " witness[" + r.witness + "]";
    return line;
}

std::string manifest_text(const RunConfig& cfg, const std::vector<std::string>& outcome) {
    std::ostringstream out;
    out << "# wrinklevar run manifest (parsable as a config; outcome lines are comments)\n";
    out << serialize_config(cfg);
    for (const std::string& line : outcome) out << "# " << line << "\n";
    return out.str();
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<std::string> lines;
    bool all_pass = true;

    SampleBox h1_box;
    h1_box.samples = cfg.verify.h1_samples;
    h1_box.seed = cfg.seed;
    const HypothesisReport h1 = check_convexity_H1(cfg.material, h1_box);
    all_pass = all_pass && h1.pass;
    lines.push_back(report_line(h1));

    SampleBox h2_box{10.0, 10.0, 1e-6, 10.0, cfg.verify.h2_samples, cfg.seed};
    const HypothesisReport h2 = check_growth_H2(cfg.material, h2_box);
    all_pass = all_pass && h2.pass;
    lines.push_back(report_line(h2));

    const HypothesisReport h3 = check_blowup_H3(cfg.material, {1e-1, 1e-2, 1e-3});
    all_pass = all_pass && h3.pass;
    lines.push_back(report_line(h3));

    SampleBox poly_box = h1_box;
    const HypothesisReport poly = check_planar_polyconvexity(cfg.material, poly_box);
    all_pass = all_pass && poly.pass;
    lines.push_back(report_line(poly));

    try {
        const RankOneWitness w = find_rank_one_nonconvexity(cfg.material);
        const double rel_gap =
            std::fabs(w.g2_fd - w.g2_closed_form) / std::max(1.0, std::fabs(w.g2_closed_form));
        lines.push_back("rank_one_failure PASS witness_F0=diag(" + fmt17(w.f0.m11) + "," +
                        fmt17(w.f0.m22) + ") a=e3 b=(" + fmt17(w.b.x) + "," + fmt17(w.b.y) +
                        ") g2_fd=" + fmt17(w.g2_fd) + " g2_closed=" + fmt17(w.g2_closed_form) +
                        " rel_gap=" + fmt17(rel_gap));
    } catch (const std::runtime_error& err) {
        all_pass = false;
        lines.push_back(std::string("rank_one_failure FAIL ") + err.what());
    }

    {
        const GridSpec demo{cfg.verify.demo_grid, cfg.verify.demo_grid, 1.0, 1.0};
        const ScalarField phi = clamped_bump_testfn(demo);
        const double limit = quadrature_integrate(phi, demo);
        const std::vector<int> ks{4, 8, 16};
        const std::vector<double> vals = weak_convergence_demo(ks, phi, demo);
        std::vector<double> errs;
        for (double v : vals) errs.push_back(std::fabs(v - limit));
        const bool shrinking = errs[0] > errs[1] && errs[1] > errs[2];
        const double rel16 = errs[2] / std::fabs(limit);
        const bool pass = shrinking && rel16 < 1e-2;
        all_pass = all_pass && pass;
        lines.push_back(std::string("dist_det_weak_convergence ") + (pass ? "PASS" : "FAIL") +
                        " grid=" + std::to_string(cfg.verify.demo_grid) +
                        " err_k4=" + fmt17(errs[0]) + " err_k8=" + fmt17(errs[1]) +
                        " err_k16=" + fmt17(errs[2]) + " rel_err_k16=" + fmt17(rel16));
    }

    std::ostringstream rep;
    for (const std::string& l : lines) rep << l << "\n";
    rep << (all_pass ? "ALL_CHECKS PASS" : "ALL_CHECKS FAIL") << "\n";
    write_text_file(cfg.output_dir + "/report.txt", rep.str());
    write_text_file(cfg.output_dir + "/manifest.txt",
                    manifest_text(cfg, {std::string("verify_pass = ") +
                                        (all_pass ? "true" : "false")}));
    std::cout << rep.str();
    return all_pass ? 0 : 1;
}

int cmd_minimize(const RunConfig& cfg) {
    const BoundarySpec bc = cfg.boundary();
    const LoadSpec loads = cfg.loads();
    DeformationState state0 = state_from_boundary_maps(cfg.grid, bc);
    if (!cfg.minimizer.freeze_w && cfg.minimizer.perturb_delta_rel > 0.0)
        state0 = perturb_out_of_plane(state0, cfg.minimizer.perturb_delta_rel * cfg.grid.Ly,
                                      cfg.minimizer.perturb_mode);
    const MinimizeResult res = minimize(state0, cfg.material, loads, bc, cfg.minimizer);
    const WrinkleMetrics metrics = wrinkle_metrics(res.state);

    write_trace_csv(cfg.output_dir + "/trace.csv", res.trace);
    write_fields_csv(cfg.output_dir + "/fields.csv", res.state, bc);
    std::vector<std::string> outcome{
        std::string("converged = ") + (res.trace.converged ? "true" : "false"),
        "gtol = " + fmt17(res.trace.gtol),
        "iterations = " + std::to_string(res.trace.rows.back().iter),
        "energy_total = " + fmt17(res.energy.total),
        "energy_membrane = " + fmt17(res.energy.membrane),
        "energy_bending = " + fmt17(res.energy.bending),
        "energy_load = " + fmt17(res.energy.load),
        "min_J = " + fmt17(res.trace.rows.back().min_j),
        "amplitude = " + fmt17(metrics.amplitude),
        "sign_changes = " + std::to_string(metrics.sign_changes)};
    if (!res.trace.diagnostic.empty()) outcome.push_back("diagnostic = " + res.trace.diagnostic);
    write_text_file(cfg.output_dir + "/manifest.txt", manifest_text(cfg, outcome));

    std::cout << "minimize: " << (res.trace.converged ? "converged" : "not converged")
              << " energy=" << fmt17(res.energy.total)
              << " gradnorm=" << fmt17(res.trace.rows.back().gradnorm)
              << " iters=" << res.trace.rows.back().iter << "\n";
    return res.trace.converged ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg) {
    const BoundarySpec bc = cfg.boundary();
    const LoadSpec loads = cfg.loads();
    const std::vector<SweepEntry> entries =
        continuation_sweep(cfg.sweep.lambda_from, cfg.sweep.lambda_to, cfg.sweep.steps,
                           cfg.material, loads, bc, cfg.minimizer, cfg.grid);

    write_sweep_csv(cfg.output_dir + "/sweep.csv", entries);
    write_trace_csv(cfg.output_dir + "/trace.csv", entries.back().result.trace);
    BoundarySpec final_bc = bc;
    final_bc.lambda = entries.back().lambda;
    write_fields_csv(cfg.output_dir + "/fields.csv", entries.back().result.state, final_bc);

    bool all_converged = true;
    std::vector<std::string> outcome;
    for (const SweepEntry& e : entries) {
        all_converged = all_converged && e.result.trace.converged;
        outcome.push_back("lambda " + fmt17(e.lambda) + " converged=" +
                          (e.result.trace.converged ? "true" : "false") +
                          " energy=" + fmt17(e.result.energy.total) +
                          " sign_changes=" + std::to_string(e.metrics.sign_changes));
    }
    outcome.push_back(std::string("sweep_converged = ") + (all_converged ? "true" : "false"));
    write_text_file(cfg.output_dir + "/manifest.txt", manifest_text(cfg, outcome));

    std::cout << sweep_csv_text(entries);
    return all_converged ? 0 : 1;
}

int cmd_analyze(const RunConfig& cfg) {
    const BoundarySpec bc = cfg.boundary();
    const DeformationState state = read_fields_csv(cfg.output_dir + "/fields.csv", cfg.grid);
    const WrinkleMetrics metrics = wrinkle_metrics(state);
    const ResidualReport residual = equilibrium_residual(state, cfg.material, bc, 1000000,
                                                         cfg.verify.residual_tests, cfg.seed);
    std::ostringstream rep;
    rep << "wrinkle_metrics amplitude=" << fmt17(metrics.amplitude) << " wavelength="
        << (metrics.wavelength ? fmt17(*metrics.wavelength) : std::string("undefined"))
        << " sign_changes=" << metrics.sign_changes << "\n";
    rep << "equilibrium_residual n=" << residual.n
        << " measure_fraction=" << fmt17(residual.measure_fraction)
        << " tests=" << residual.residuals.size() << " max_abs=" << fmt17(residual.max_abs)
        << "\n";
    write_text_file(cfg.output_dir + "/report.txt", rep.str());
    std::cout << rep.str();
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"stretched-membrane wrinkling: minimization, continuation and "
                 "constitutive verification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration file (key = value)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { seed = v; seed_given = true; },
            "seed override");
    };
    CLI::App* verify = app.add_subcommand("verify", "run the constitutive hypothesis checks");
    CLI::App* minimize_cmd = app.add_subcommand("minimize", "single energy minimization");
    CLI::App* sweep = app.add_subcommand("sweep", "continuation in the boundary stretch");
    CLI::App* analyze = app.add_subcommand("analyze", "metrics and residual of saved fields");
    for (CLI::App* sub : {verify, minimize_cmd, sweep, analyze}) add_common(sub);

    std::vector<const char*> argv;
    argv.push_back("wrinklevar");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = parse_config(read_text_file(config_path));
        if (seed_given) cfg.seed = seed;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(cfg);
        if (minimize_cmd->parsed()) return cmd_minimize(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (analyze->parsed()) return cmd_analyze(cfg);
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const IoError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace wrinklevar
