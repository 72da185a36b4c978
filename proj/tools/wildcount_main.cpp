// wildcount: counts of Galois extensions of p-adic fields with a single
// wild ramification jump, by exact closed forms and enumeration oracles.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wildcount/count_engine.hpp"
#include "wildcount/galois_ring.hpp"
#include "wildcount/sweep.hpp"
#include "wildcount/trunc_units.hpp"
#include "wildcount/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitOutOfRange = 3;
constexpr int kExitResource = 4;
constexpr int kExitVerifyFailed = 5;

using namespace wildcount;

int run_count(const QueryParams& q, const std::string& format) {
    CountResult r = count_extensions(q);
    if (format == "json") {
        std::cout << render_result_json(q, r) << '\n';
    } else {
        std::cout << "status: " << status_name(r.status) << '\n';
        std::cout << "branch: " << branch_name(r.branch) << '\n';
        if (r.status != Status::out_of_range) std::cout << "count: " << r.value.get_str() << '\n';
        for (const auto& f : r.flags) std::cout << "flag: " << f << '\n';
    }
    return r.status == Status::out_of_range ? kExitOutOfRange : kExitOk;
}

int run_oracle_units(std::uint64_t p, unsigned f_base, unsigned f, unsigned n, bool include_full,
                     std::uint64_t cap, const std::string& format) {
    OracleOptions opts;
    opts.include_full = include_full;
    opts.group_cap = cap;
    OracleBreakdown br = oracle_breakdown(p, f_base, f, n, opts);
    if (format == "json") {
        std::cout << "{\"engine\":\"truncated-units\",\"p\":" << p << ",\"f_base\":" << f_base
                  << ",\"inertia\":" << f << ",\"jump\":" << n
                  << ",\"include_full\":" << (include_full ? "true" : "false") << ",\"total\":\""
                  << br.total.get_str() << "\",\"subgroups\":" << br.subgroups.size() << "}\n";
    } else {
        std::cout << "valid subgroups: " << br.subgroups.size() << '\n';
        for (const auto& s : br.subgroups)
            std::cout << "  order " << s.order << "  dim(h) " << s.h_dim << "  fixed cosets "
                      << s.fixed_cosets << '\n';
        std::cout << "total: " << br.total.get_str() << '\n';
    }
    return kExitOk;
}

int run_oracle_ring(unsigned nk, unsigned r, const std::string& format) {
    UnramifiedOracleReport rep = unramified_oracle_report(nk, r);
    if (format == "json") {
        std::cout << "{\"engine\":\"galois-ring\",\"nk\":" << nk << ",\"r\":" << r << ",\"total\":\""
                  << rep.total.get_str() << "\",\"subgroups\":" << rep.subgroups.size() << "}\n";
    } else {
        std::cout << "valid subgroups: " << rep.subgroups.size() << '\n';
        for (const auto& s : rep.subgroups)
            std::cout << "  order " << s.order << "  dim(h) " << s.h_dim << "  fixed cosets "
                      << s.fixed_cosets << '\n';
        std::cout << "total: " << rep.total.get_str() << '\n';
    }
    return kExitOk;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
    auto results = verify::run_suite(suite, seed);
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        std::printf("%s %-28s (%s) [%.2fs]\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str(), r.seconds);
    }
    return all ? kExitOk : kExitVerifyFailed;
}

int run_sweep_cmd(const SweepSpec& spec, const std::string& out_path) {
    auto records = run_sweep(spec);
    if (out_path.empty()) {
        write_records(std::cout, records, spec.format, spec.engine, spec.include_full);
    } else {
        std::ofstream out(out_path);
        write_records(out, records, spec.format, spec.engine, spec.include_full);
        if (!out) throw std::runtime_error("sweep: failed writing " + out_path);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"counts of p-adic Galois extensions with one wild ramification jump"};
    app.require_subcommand(1);

    auto* count = app.add_subcommand("count", "evaluate the closed-form count at one parameter point");
    QueryParams q;
    std::string format = "text";
    count->add_option("--p", q.p, "residue characteristic (prime)")->required();
    count->add_option("--e", q.e, "ramification index of the base over Q_p")->required();
    count->add_option("--f-base", q.f_base, "inertia degree of the base over Q_p")->required();
    count->add_option("--jump", q.n, "ramification jump level n")->required();
    count->add_option("--inertia", q.f, "inertia degree of the extensions counted")->required();
    count->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    auto* oracle = app.add_subcommand("oracle", "run an enumeration oracle directly");
    std::string model = "units";
    std::uint64_t op = 3;
    unsigned of_base = 1, of = 1, on = 2, onk = 1, orr = 1;
    bool include_full = false;
    std::uint64_t cap = 4096;
    std::string oformat = "text";
    oracle->add_option("--model", model, "units|ring")->check(CLI::IsMember({"units", "ring"}));
    oracle->add_option("--p", op, "residue characteristic (units model)");
    oracle->add_option("--f-base", of_base, "base inertia degree (units model)");
    oracle->add_option("--inertia", of, "extension inertia degree (units model)");
    oracle->add_option("--jump", on, "jump level (units model)");
    oracle->add_flag("--include-full", include_full, "count the full unit group as well");
    oracle->add_option("--cap", cap, "unit-group order cap");
    oracle->add_option("--nk", onk, "base degree over Q_2 (ring model)");
    oracle->add_option("--r", orr, "extension inertia degree (ring model)");
    oracle->add_option("--format", oformat, "text|json")->check(CLI::IsMember({"text", "json"}));

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    std::uint64_t seed = 12345;
    verify_cmd->add_option("--suite", suite, "suite name or 'all'");
    verify_cmd->add_option("--seed", seed, "seed for randomized searches");

    auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid with a results cache");
    SweepSpec spec;
    std::string sweep_format = "csv", out_path, engine = "formula";
    sweep->add_option("--p", spec.ps, "characteristics")->required()->delimiter(',');
    sweep->add_option("--e", spec.es, "ramification indices")->required()->delimiter(',');
    sweep->add_option("--f-base", spec.f_bases, "base inertia degrees")->required()->delimiter(',');
    sweep->add_option("--jump", spec.ns, "jump levels")->required()->delimiter(',');
    sweep->add_option("--inertia", spec.fs, "extension inertia degrees")->required()->delimiter(',');
    sweep->add_option("--engine", engine, "formula|oracle|both")
        ->check(CLI::IsMember({"formula", "oracle", "both"}));
    sweep->add_flag("--include-full", spec.include_full, "oracle counts the full unit group too");
    sweep->add_option("--format", sweep_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--cache", spec.cache_path, "append-only results cache (JSON lines)");
    sweep->add_option("--cap", spec.oracle_group_cap, "oracle unit-group order cap");
    sweep->add_option("--out", out_path, "write the table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message or help text
        return e.get_name() == "CallForHelp" ? kExitOk : kExitUsage;
    }

    try {
        if (*count) return run_count(q, format);
        if (*oracle) {
            if (model == "ring") return run_oracle_ring(onk, orr, oformat);
            return run_oracle_units(op, of_base, of, on, include_full, cap, oformat);
        }
        if (*verify_cmd) return run_verify(suite, seed);
        if (*sweep) {
            if (engine == "oracle")
                spec.engine = SweepSpec::Engine::oracle;
            else if (engine == "both")
                spec.engine = SweepSpec::Engine::both;
            spec.format = sweep_format == "json" ? SweepSpec::Format::json : SweepSpec::Format::csv;
            return run_sweep_cmd(spec, out_path);
        }
    } catch (const wildcount::resource_error& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
