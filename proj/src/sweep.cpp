#include "wildcount/sweep.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wildcount/trunc_units.hpp"

namespace wildcount {

namespace {

const char* engine_name(SweepSpec::Engine e) {
    switch (e) {
        case SweepSpec::Engine::formula: return "formula";
        case SweepSpec::Engine::oracle: return "oracle";
        case SweepSpec::Engine::both: return "both";
    }
    return "?";
}

std::string cache_key(const QueryParams& q, const std::string& engine, bool include_full) {
    std::ostringstream os;
    os << q.p << ':' << q.e << ':' << q.f_base << ':' << q.n << ':' << q.f << ':' << engine << ':'
       << (include_full ? 1 : 0);
    return os.str();
}

}  // namespace

std::string record_to_json(const SweepRecord& r, SweepSpec::Engine engine, bool include_full) {
    nlohmann::json j;
    j["p"] = r.params.p;
    j["e"] = r.params.e;
    j["f_base"] = r.params.f_base;
    j["jump"] = r.params.n;
    j["inertia"] = r.params.f;
    j["status"] = r.status;
    j["branch"] = r.branch;
    j["engine"] = engine_name(engine);
    j["include_full"] = include_full;
    if (r.formula) j["formula"] = r.formula->get_str();
    if (r.oracle) j["oracle"] = r.oracle->get_str();
    if (r.delta) j["delta"] = *r.delta;
    return j.dump();
}

SweepRecord record_from_json(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    SweepRecord r;
    r.params.p = j.at("p").get<std::uint64_t>();
    r.params.e = j.at("e").get<unsigned>();
    r.params.f_base = j.at("f_base").get<unsigned>();
    r.params.n = j.at("jump").get<unsigned>();
    r.params.f = j.at("inertia").get<unsigned>();
    r.status = j.at("status").get<std::string>();
    r.branch = j.at("branch").get<std::string>();
    if (j.contains("formula")) r.formula = mpz_class(j["formula"].get<std::string>());
    if (j.contains("oracle")) r.oracle = mpz_class(j["oracle"].get<std::string>());
    if (j.contains("delta")) r.delta = j["delta"].get<long>();
    return r;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
    if (spec.ps.empty() || spec.es.empty() || spec.f_bases.empty() || spec.ns.empty() ||
        spec.fs.empty())
        throw std::invalid_argument("run_sweep: every parameter range must be nonempty");

    std::vector<QueryParams> grid;
    for (std::uint64_t p : spec.ps)
        for (unsigned e : spec.es)
            for (unsigned fb : spec.f_bases)
                for (unsigned n : spec.ns)
                    for (unsigned f : spec.fs) grid.push_back({p, e, fb, n, f});
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const bool want_oracle = spec.engine != SweepSpec::Engine::formula;
    const bool want_formula = spec.engine != SweepSpec::Engine::oracle;

    // Up-front cap validation for oracle points.
    if (want_oracle) {
        for (const QueryParams& q : grid) {
            if (q.e < q.n) continue;  // outside the oracle's model
            mpz_class order;
            mpz_class base(static_cast<unsigned long>(q.p));
            mpz_pow_ui(order.get_mpz_t(), base.get_mpz_t(),
                       static_cast<unsigned long>(q.f_base) * q.f * q.n);
            if (mpz_cmp_ui(order.get_mpz_t(), spec.oracle_group_cap) > 0)
                throw resource_error("run_sweep: oracle point over group cap at p=" +
                                     std::to_string(q.p) + " f_base=" + std::to_string(q.f_base) +
                                     " jump=" + std::to_string(q.n) +
                                     " inertia=" + std::to_string(q.f));
        }
    }

    // Cache load; lines are keyed by their own engine and include_full flags.
    std::map<std::string, SweepRecord> cache;
    if (!spec.cache_path.empty()) {
        std::ifstream in(spec.cache_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            nlohmann::json j = nlohmann::json::parse(line);
            SweepRecord r = record_from_json(line);
            cache.emplace(cache_key(r.params, j.value("engine", "formula"),
                                    j.value("include_full", false)),
                          std::move(r));
        }
    }

    std::vector<SweepRecord> records(grid.size());
    std::vector<char> cached(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto it = cache.find(cache_key(grid[i], engine_name(spec.engine), spec.include_full));
        if (it != cache.end()) {
            records[i] = it->second;
            cached[i] = 1;
        }
    }

#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
        if (cached[i]) continue;
        const QueryParams& q = grid[i];
        SweepRecord r;
        r.params = q;
        CountResult res = count_extensions(q);
        r.status = status_name(res.status);
        r.branch = branch_name(res.branch);
        if (want_formula && res.status != Status::out_of_range) r.formula = res.value;
        if (want_oracle && q.e >= q.n)
            r.oracle = oracle_total_count(q.p, q.f_base, q.f, q.n, spec.include_full,
                                          spec.oracle_group_cap);
        if (r.formula && r.oracle)
            r.delta = static_cast<long>(mpz_class(*r.formula - *r.oracle).get_si());
        records[i] = std::move(r);
    }

    // Append the newly computed lines; existing lines are never rewritten.
    if (!spec.cache_path.empty()) {
        std::ofstream out(spec.cache_path, std::ios::app);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (cached[i]) continue;
            out << record_to_json(records[i], spec.engine, spec.include_full) << '\n';
        }
        out.flush();
        if (!out) throw std::runtime_error("run_sweep: cache write failed at " + spec.cache_path);
    }
    return records;
}

void write_records(std::ostream& out, const std::vector<SweepRecord>& records,
                   SweepSpec::Format format, SweepSpec::Engine engine, bool include_full) {
    if (format == SweepSpec::Format::csv) {
        out << "p,e,f_base,jump,inertia,branch,formula,oracle,delta\n";
        for (const SweepRecord& r : records) {
            out << r.params.p << ',' << r.params.e << ',' << r.params.f_base << ',' << r.params.n
                << ',' << r.params.f << ',' << r.branch << ',';
            if (r.formula) out << r.formula->get_str();
            out << ',';
            if (r.oracle) out << r.oracle->get_str();
            out << ',';
            if (r.delta) out << *r.delta;
            out << '\n';
        }
    } else {
        for (const SweepRecord& r : records) out << record_to_json(r, engine, include_full) << '\n';
    }
}

}  // namespace wildcount
