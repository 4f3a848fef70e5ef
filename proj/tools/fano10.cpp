// fano10: generation and verification of seeded instances of the nodal
// degree-10 threefold pipeline, with machine-readable reports.
#include <CLI11.hpp>

#include "fano10/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for nodal degree-10 threefold models"};
    app.require_subcommand(1);

    fano10::cli::RunConfig cfg;
    std::string instance_path, report_path;

    auto add_common = [&](CLI::App* sub, bool with_suite) {
        sub->add_option("--field", cfg.field_spec, "field spec: q | fp:p | fpk:p:modulus");
        sub->add_option("--seed", cfg.seed, "64-bit instance seed");
        if (with_suite)
            sub->add_option("--suite", cfg.suite, "suite: appendix | net | rulings | verra | all");
        sub->add_option("--trials", cfg.trials, "trial count for sampled identity checks");
        sub->add_option("--budget", cfg.budget, "resampling budget for degenerate seeds");
        sub->add_option("--out", cfg.out, "output path (default: stdout)");
        sub->add_option("--format", cfg.format, "output format: json | text");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate a seeded instance file");
    add_common(gen, false);

    CLI::App* verify = app.add_subcommand("verify", "run verification suites and emit a report");
    add_common(verify, true);
    verify->add_option("instance", instance_path, "instance file to verify (optional)");

    CLI::App* report = app.add_subcommand("report", "render an existing report file");
    report->add_option("report_file", report_path, "report file produced by verify")->required();
    report->add_option("--format", cfg.format, "output format: json | text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return fano10::cli::cmd_gen(cfg);
        if (verify->parsed()) return fano10::cli::cmd_verify(cfg, instance_path);
        if (report->parsed()) return fano10::cli::cmd_report(report_path, cfg.format);
    } catch (const fano10::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const fano10::cli::DegeneracyError& e) {
        std::cerr << "degenerate seed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
