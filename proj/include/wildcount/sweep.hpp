#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wildcount/count_engine.hpp"

namespace wildcount {

struct SweepSpec {
    std::vector<std::uint64_t> ps;
    std::vector<unsigned> es, f_bases, ns, fs;
    enum class Engine { formula, oracle, both } engine = Engine::formula;
    bool include_full = false;
    enum class Format { csv, json } format = Format::csv;
    std::string cache_path;  // empty disables the cache
    std::uint64_t oracle_group_cap = 4096;
};

struct SweepRecord {
    QueryParams params;
    std::string status;
    std::string branch;
    std::optional<mpz_class> formula;
    std::optional<mpz_class> oracle;
    std::optional<long> delta;  // formula - oracle when both present
    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

// One full sweep: serves completed points from the cache, computes the rest
// in parallel, appends new cache lines, and returns records sorted by
// parameters. Oracle points are validated against the caps up front.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

void write_records(std::ostream& out, const std::vector<SweepRecord>& records,
                   SweepSpec::Format format, SweepSpec::Engine engine, bool include_full);

std::string record_to_json(const SweepRecord& r, SweepSpec::Engine engine, bool include_full);
SweepRecord record_from_json(const std::string& line);

}  // namespace wildcount
