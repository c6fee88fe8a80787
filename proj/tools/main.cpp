#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "efinv/version.hpp"
#include "job.hpp"

using namespace efinv::cli;

namespace {

int emit(const JobSpec& job, const Report& report)
{
    std::cerr << report.summary;
    const std::string text = report.json.dump(2) + "\n";
    if (job.output) {
        std::ofstream f(*job.output);
        if (!f) {
            std::cerr << "efinv: cannot write " << job.output->string() << "\n";
            return kExitUsage;
        }
        f << text;
    } else {
        std::cout << text;
    }
    return report.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generalized inverses with residual certificates", "efinv"};
    app.set_version_flag("--version", efinv::kVersion);
    app.require_subcommand(1);

    // One JobSpec per subcommand; only the parsed one is used.
    std::map<CLI::App*, JobSpec> jobs;
    std::map<CLI::App*, std::map<std::string, std::string>> paths;

    for (const CommandInfo& info : all_commands()) {
        CLI::App* sub = app.add_subcommand(std::string(info.name), std::string(info.help));
        JobSpec& job = jobs[sub];
        job.command = info.command;
        auto& p = paths[sub];
        for (auto key : info.required)
            sub->add_option("--" + std::string(key), p[std::string(key)], "input matrix " + std::string(key))
                ->required();
        for (auto key : info.optional)
            sub->add_option("--" + std::string(key), p[std::string(key)],
                            "generator matrix of the subspace " + std::string(key));
        if (info.takes_name_and_m) {
            sub->add_option("--name", job.name, "inverse name (GMP, DMP, CEP, m-WG, ...)")->required();
            sub->add_option("--m", job.m, "power for m-WG / m-WC");
        }
        if (info.takes_order)
            sub->add_option("--order", job.order, "outer-first or inner-first")
                ->check(CLI::IsMember({"outer-first", "inner-first"}));
        sub->add_option("--rank-rel-tol", job.tol.rank_rel_tol, "relative singular value cutoff");
        sub->add_option("--residual-tol", job.tol.residual_tol, "residual acceptance threshold");
        sub->add_option("--idempotency-tol", job.tol.idempotency_tol, "idempotency threshold");
        sub->add_option("--out", job.output, "write the JSON report here instead of stdout");
    }

    std::string job_file;
    CLI::App* run_sub = app.add_subcommand("run", "run a JSON job file");
    run_sub->add_option("job", job_file, "job file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const char* env_tol = std::getenv("EFINV_TOL");

    if (run_sub->parsed()) {
        JobSpec job;
        try {
            std::ifstream f(job_file);
            std::stringstream ss;
            ss << f.rdbuf();
            job = parse_job_json(ss.str(), std::filesystem::path(job_file).parent_path());
        } catch (const UsageError& e) {
            std::cerr << "efinv: " << e.what() << "\n";
            return kExitUsage;
        }
        return emit(job, run(job, env_tol));
    }

    for (auto& [sub, job] : jobs) {
        if (!sub->parsed())
            continue;
        for (const auto& [key, path] : paths[sub])
            if (!path.empty())
                job.inputs[key] = path;
        return emit(job, run(job, env_tol));
    }
    return kExitUsage;
}
