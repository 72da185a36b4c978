#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wildcount::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Exact-identity checks. Each one is self-contained and uses an independent
// route from whatever it validates.
CheckResult log_coefficient_identity();                       // partition formula vs series expansion
CheckResult denominator_integrality();                        // denominator prime support
CheckResult log_additivity(std::uint64_t seed);               // r(x)+r(y)=r(x*y) at rational points
CheckResult equivariant_grid(std::uint64_t budget = 1'000'000);  // closed form vs exhaustive count
CheckResult quadratic_refinement_grid();                      // char-2 refinement, closed vs brute
CheckResult trace_basis_grid(std::uint64_t seed);             // structured basis search grids
CheckResult cross_sum_grid();                                 // pairwise cross sums mod trace zero
CheckResult fiber_correspondence();                           // extract/assemble round trip + per-h counts
CheckResult formula_vs_oracle();                              // subspace sum vs subgroup enumeration
CheckResult totally_ramified_comparison();                    // divisor sum vs sum; printed form report
CheckResult unramified_two_adic();                            // mod-8 oracle and square classes
CheckResult zero_branches_and_dispatch();                     // branch totality over a grid
CheckResult coset_count_agreement();                          // fixed-coset brute vs closed, all small fields

std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed);

}  // namespace wildcount::verify
