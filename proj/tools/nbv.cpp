#include "nbv/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace {

using Clock = std::chrono::steady_clock;

void report_timing(bool on, const char* what, Clock::time_point start)
{
    if (!on)
        return;
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    std::cerr << "timing: " << what << " " << s << " s\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nested Bethe vectors: exact weight functions and verification suites"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "print wall-clock time to stderr");

    std::string job_path, out_path;
    auto* compute = app.add_subcommand("compute", "evaluate a job file");
    compute->add_option("job", job_path, "job JSON")->required();
    compute->add_option("-o,--output", out_path, "result JSON")->required();

    std::string suite, scale = "small";
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "r-matrix | rtt | section5 | identities | cross-validate | all")->required();
    verify->add_option("--seed", seed, "suite seed");
    verify->add_option("--scale", scale, "small | full");
    verify->add_option("-o,--output", out_path, "report JSON")->required();

    auto* explain = app.add_subcommand("explain", "expand B into T/L monomials");
    explain->add_option("job", job_path, "job JSON")->required();
    explain->add_option("-o,--output", out_path, "expansion JSON")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const auto start = Clock::now();
    try {
        if (*compute) {
            auto job = nbv::parse_job(nbv::read_json(job_path));
            nbv::write_json(out_path, nbv::compute(job));
            report_timing(timing, "compute", start);
        }
        else if (*explain) {
            auto job = nbv::parse_job(nbv::read_json(job_path), true);
            nbv::write_json(out_path, nbv::explain(job));
            report_timing(timing, "explain", start);
        }
        else {
            nbv::SuiteOptions opt;
            opt.seed = seed;
            try {
                opt.scale = nbv::scale_from_string(scale);
            }
            catch (const std::exception& e) {
                throw nbv::ValidationError("/scale", e.what());
            }
            auto entries = nbv::run_suite(suite, opt);
            auto report = nbv::report_json(suite, opt, entries);
            report["manifest"] = {{"tool_version", nbv::tool_version}, {"seed", seed}};
            nbv::write_json(out_path, report);
            report_timing(timing, "verify", start);
            const auto& s = report["summary"];
            std::cerr << suite << ": " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["skipped"]
                      << " skipped\n";
            return nbv::any_fail(entries) ? 1 : 0;
        }
    }
    catch (const nbv::ValidationError& e) {
        std::cerr << "validation error at " << (e.pointer().empty() ? "/" : e.pointer()) << ": " << e.what() << '\n';
        return 2;
    }
    catch (const nbv::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << '\n';
        return 3;
    }
    catch (const nbv::ArithmeticError& e) {
        std::cerr << "check failure: " << e.what() << '\n';
        return 1;
    }
    catch (const std::logic_error& e) {
        std::cerr << "check failure: " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
