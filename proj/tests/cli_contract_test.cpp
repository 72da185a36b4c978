#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(WILDCOUNT_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("count command, text and json") {
    RunResult r = run("count --p 3 --e 2 --f-base 1 --jump 2 --inertia 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("count: 10") != std::string::npos);
    CHECK(r.out.find("branch: subspace_sum") != std::string::npos);

    RunResult j = run("count --p 3 --e 2 --f-base 1 --jump 2 --inertia 1 --format json");
    CHECK(j.exit_code == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["value"] == "10");
    CHECK(parsed["branch"] == "subspace_sum");

    RunResult two_adic = run("count --p 2 --e 1 --f-base 2 --jump 2 --inertia 5 --format json");
    CHECK(two_adic.exit_code == 0);
    CHECK(nlohmann::json::parse(two_adic.out)["value"] == "8");
}

TEST_CASE("documented exit codes") {
    // 3: the open region
    CHECK(run("count --p 3 --e 2 --f-base 1 --jump 3 --inertia 1").exit_code == 3);
    // 2: usage errors
    CHECK(run("count --p 3").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("count --p 4 --e 1 --f-base 1 --jump 1 --inertia 1").exit_code == 2);  // composite p
    // 4: resource caps
    CHECK(run("oracle --p 5 --f-base 1 --inertia 2 --jump 3").exit_code == 4);
    // 5: verification failure (fixture suite)
    CHECK(run("verify --suite selftest-fail").exit_code == 5);
    // 0: a passing verify suite
    CHECK(run("verify --suite partition-log").exit_code == 0);
}

TEST_CASE("oracle command output") {
    RunResult r = run("oracle --p 3 --f-base 1 --inertia 1 --jump 2 --format json");
    CHECK(r.exit_code == 0);
    auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["total"] == "9");
    RunResult full = run("oracle --p 3 --f-base 1 --inertia 1 --jump 2 --include-full --format json");
    CHECK(nlohmann::json::parse(full.out)["total"] == "10");

    RunResult ring = run("oracle --model ring --nk 2 --r 1 --format json");
    CHECK(ring.exit_code == 0);
    CHECK(nlohmann::json::parse(ring.out)["total"] == "8");
}

TEST_CASE("sweep through the binary: cache idempotence, byte for byte") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path();
    fs::path cache = dir / ("wc_cli_cache_" + std::to_string(::getpid()) + ".jsonl");
    fs::path out1 = dir / ("wc_cli_out1_" + std::to_string(::getpid()) + ".csv");
    fs::path out2 = dir / ("wc_cli_out2_" + std::to_string(::getpid()) + ".csv");
    std::string base = "sweep --p 3,5 --e 2 --f-base 1 --jump 2 --inertia 1,2 --engine both --cache " +
                       cache.string();

    CHECK(run(base + " --out " + out1.string()).exit_code == 0);
    auto cache_size = fs::file_size(cache);
    CHECK(run(base + " --out " + out2.string()).exit_code == 0);

    std::string first = slurp(out1), second = slurp(out2);
    CHECK(!first.empty());
    CHECK(first == second);
    CHECK(fs::file_size(cache) == cache_size);

    // fixed column order
    CHECK(first.rfind("p,e,f_base,jump,inertia,branch,formula,oracle,delta\n", 0) == 0);

    fs::remove(cache);
    fs::remove(out1);
    fs::remove(out2);
}

TEST_CASE("sweep json lines parse") {
    RunResult r = run("sweep --p 3 --e 2 --f-base 1 --jump 2 --inertia 1 --engine both --format json");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    unsigned count = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        CHECK(j["formula"] == "10");
        CHECK(j["oracle"] == "9");
        CHECK(j["delta"] == 1);
        ++count;
    }
    CHECK(count == 1);
}
