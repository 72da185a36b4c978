// Benchmark of the exhaustive counting kernels: serial reference vs the
// OpenMP version on instances near the enumeration budget. --quick runs a
// reduced set once and only asserts agreement (used as a smoke test).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "wildcount/equivariant.hpp"

using namespace wildcount;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Row {
    std::string name;
    std::uint64_t candidates;
    std::uint64_t count_serial = 0, count_parallel = 0;
    double serial_s = 0, parallel_s = 0;
};

Row bench_equivariant(const std::string& name, std::uint64_t p, unsigned deg, unsigned n,
                      const Subspace& h, std::uint64_t budget, unsigned iters) {
    FieldSpec spec(p, deg);
    FieldTable k(spec);
    EquivariantInstance inst{&k, 1, n, h};
    EquivariantKernel kernel(inst, budget);
    Row row;
    row.name = name;
    row.candidates = kernel.candidate_total();
    double t0 = now_seconds();
    for (unsigned i = 0; i < iters; ++i) row.count_serial = kernel.count_serial();
    double t1 = now_seconds();
    for (unsigned i = 0; i < iters; ++i) row.count_parallel = kernel.count_parallel();
    row.parallel_s = now_seconds() - t1;
    row.serial_s = t1 - t0;
    return row;
}

Row bench_refinement(const std::string& name, unsigned deg, const Subspace& h, const Subspace& hp,
                     std::uint64_t budget, unsigned iters) {
    FieldSpec spec(2, deg);
    FieldTable k(spec);
    BruteOptions opts;
    opts.budget = budget;
    Row row;
    row.name = name;
    QuotientMap qm = make_quotient(k, h);
    std::uint64_t cands = 1;
    for (unsigned i = 0; i < hp.dim(); ++i) cands *= qm.classes;
    row.candidates = cands;
    double t0 = now_seconds();
    for (unsigned i = 0; i < iters; ++i)
        row.count_serial = quadratic_refinement_count(k, h, hp, CountMode::brute_serial, opts).get_ui();
    double t1 = now_seconds();
    for (unsigned i = 0; i < iters; ++i)
        row.count_parallel = quadratic_refinement_count(k, h, hp, CountMode::brute, opts).get_ui();
    row.parallel_s = now_seconds() - t1;
    row.serial_s = t1 - t0;
    return row;
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    unsigned iters = 25;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--quick") {
            quick = true;
            iters = 3;
        } else if (arg == "--iters" && i + 1 < argc) {
            iters = static_cast<unsigned>(std::atoi(argv[++i]));
        }
    }

    // the codimension-1 invariant subspace of F_8 gives a 2^24 search space
    FieldSpec f8(2, 3);
    Subspace f8_plane;
    for (const Subspace& h : enumerate_invariant_subspaces(f8, 1))
        if (h.dim() == 2) f8_plane = h;

    std::vector<Row> rows;
    if (quick) {
        FieldSpec f4(2, 2);
        rows.push_back(bench_equivariant("equivariant F_4 n=3 h=t", 2, 2, 3,
                                         trace_zero_subspace(f4, 1, 2), 1u << 20, iters));
        rows.push_back(bench_refinement("refinement F_8 h'=F_8 h=0", 3, zero_subspace(),
                                        full_subspace(3), 1u << 20, iters));
    } else {
        // 4^10 candidates; the budget is raised accordingly.
        rows.push_back(
            bench_equivariant("equivariant F_4 n=3 h=0", 2, 2, 3, zero_subspace(), 1u << 21, iters));
        rows.push_back(
            bench_equivariant("equivariant F_9 n=2 h=0", 3, 2, 2, zero_subspace(), 1u << 20, iters));
        rows.push_back(bench_equivariant("equivariant F_8 n=3 h=plane", 2, 3, 3, f8_plane,
                                         1u << 25, std::max(1u, iters / 25)));
        rows.push_back(bench_refinement("refinement F_16 h'=F_16 h=0", 4, zero_subspace(),
                                        full_subspace(4), 1u << 20, iters));
        FieldSpec f256(2, 8);
        Subspace t = trace_zero_subspace(f256, 1, 8);
        rows.push_back(bench_refinement("refinement F_256 h'=t h=t", 8, t, t, 1u << 20, iters));
    }

    std::printf("iterations per kernel: %u\n", iters);
    std::printf("%-30s %12s %10s %10s %8s %s\n", "kernel", "candidates", "serial(s)", "omp(s)",
                "speedup", "counts");
    bool ok = true;
    for (const Row& r : rows) {
        double speedup = r.parallel_s > 0 ? r.serial_s / r.parallel_s : 0.0;
        bool equal = r.count_serial == r.count_parallel;
        ok = ok && equal;
        std::printf("%-30s %12llu %10.3f %10.3f %7.2fx %llu/%llu%s\n", r.name.c_str(),
                    static_cast<unsigned long long>(r.candidates), r.serial_s, r.parallel_s, speedup,
                    static_cast<unsigned long long>(r.count_serial),
                    static_cast<unsigned long long>(r.count_parallel), equal ? "" : "  MISMATCH");
    }
    return ok ? 0 : 1;
}
