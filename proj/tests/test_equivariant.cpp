#include <doctest.h>

#include <vector>

#include "wildcount/equivariant.hpp"

using namespace wildcount;

namespace {

// Test-local oracle: enumerate every function f: k_0^(n-1) -> k_0/h directly
// (no orbit machinery) and count the solutions, additionally collecting them
// for structural checks. Only usable on tiny instances.
struct DirectSearch {
    std::vector<std::vector<std::uint32_t>> solutions;  // full value tables
};

DirectSearch direct_search(const FieldTable& k, unsigned fprime, unsigned n, const Subspace& h) {
    DirectSearch out;
    QuotientMap qm = make_quotient(k, h);
    const std::uint32_t Q = k.size();
    std::uint32_t D = 1;
    for (unsigned i = 0; i + 1 < n; ++i) D *= Q;

    auto qadd = [&](std::uint32_t a, std::uint32_t b) {
        return qm.proj[k.add(qm.rep[a], qm.rep[b])];
    };
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < D; ++i) total *= qm.classes;
    REQUIRE(total <= (1u << 22));

    std::vector<std::uint32_t> da(n - 1), db(n - 1);
    for (std::uint64_t cand = 0; cand < total; ++cand) {
        std::vector<std::uint32_t> f(D);
        std::uint64_t t = cand;
        for (std::uint32_t i = 0; i < D; ++i) {
            f[i] = t % qm.classes;
            t /= qm.classes;
        }
        bool ok = true;
        // equivariance
        for (std::uint32_t d = 0; d < D && ok; ++d) {
            std::uint32_t img = 0, mul = 1, v = d;
            for (unsigned i = 0; i + 1 < n; ++i) {
                img += k.frob_q(v % Q, fprime) * mul;
                v /= Q;
                mul *= Q;
            }
            if (f[img] != qm.proj[k.frob_q(qm.rep[f[d]], fprime)]) ok = false;
        }
        // relation
        for (std::uint32_t a = 0; a < D && ok; ++a) {
            std::uint32_t v = a;
            for (unsigned i = 0; i + 1 < n; ++i) {
                da[i] = v % Q;
                v /= Q;
            }
            for (std::uint32_t b = a; b < D && ok; ++b) {
                v = b;
                for (unsigned i = 0; i + 1 < n; ++i) {
                    db[i] = v % Q;
                    v /= Q;
                }
                std::uint32_t cidx = 0, mul = 1, cross = 0;
                for (unsigned i = 1; i + 1 <= n; ++i) {
                    std::uint32_t ci = k.add(da[i - 1], db[i - 1]);
                    for (unsigned j = 1; j < i; ++j) ci = k.add(ci, k.mul(da[j - 1], db[i - j - 1]));
                    cidx += ci * mul;
                    mul *= Q;
                }
                for (unsigned i = 1; i + 1 <= n; ++i) {
                    unsigned j = n - i;
                    if (j >= 1 && j + 1 <= n) cross = k.add(cross, k.mul(da[i - 1], db[j - 1]));
                }
                if (qadd(qadd(f[a], f[b]), qm.proj[cross]) != f[cidx]) ok = false;
            }
        }
        if (ok) out.solutions.push_back(std::move(f));
    }
    return out;
}

}  // namespace

TEST_CASE("closed form branches") {
    CHECK(equivariant_count_closed(2, 2, 2, 1) == 0);
    CHECK(equivariant_count_closed(2, 4, 4, 3) == 0);
    CHECK(equivariant_count_closed(3, 2, 3, 0) == 1);
    CHECK(equivariant_count_closed(3, 2, 3, 1) == 3);
    CHECK(equivariant_count_closed(5, 3, 5, 2) == 5 * 5 * 5 * 5);  // b = 2
}

TEST_CASE("exhaustive count on tiny instances, spec values") {
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    EquivariantInstance i1{&k3, 1, 2, zero_subspace()};
    CHECK(equivariant_count_brute(i1) == 3);

    FieldSpec f2(2, 1);
    FieldTable k2(f2);
    EquivariantInstance i2{&k2, 1, 3, zero_subspace()};
    CHECK(equivariant_count_brute(i2) == 2);

    // p | n with a proper subgroup: no solutions
    EquivariantInstance i3{&k2, 1, 2, zero_subspace()};
    CHECK(equivariant_count_brute(i3) == 0);
    EquivariantInstance i4{&k2, 1, 4, zero_subspace()};
    CHECK(equivariant_count_brute(i4) == 0);
}

TEST_CASE("direct search agrees and solutions form a coset") {
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    DirectSearch ds = direct_search(k3, 1, 2, zero_subspace());
    CHECK(ds.solutions.size() == 3);  // f(a) = 2a^2 + ca

    // differences of solutions solve the homogeneous equation
    QuotientMap qm = make_quotient(k3, zero_subspace());
    for (const auto& f1 : ds.solutions)
        for (const auto& f2 : ds.solutions) {
            for (std::uint32_t a = 0; a < 3; ++a)
                for (std::uint32_t b = 0; b < 3; ++b) {
                    auto diff = [&](std::uint32_t d) {
                        return k3.sub(qm.rep[f1[d]], qm.rep[f2[d]]);
                    };
                    CHECK(k3.add(diff(a), diff(b)) == diff(k3.add(a, b)));
                }
        }

    // and the kernel count matches the direct search on a Galois-nontrivial
    // instance as well
    FieldSpec f4(2, 2);
    FieldTable k4(f4);
    Subspace t = trace_zero_subspace(f4, 1, 2);
    DirectSearch ds4 = direct_search(k4, 1, 3, t);
    EquivariantInstance i4{&k4, 1, 3, t};
    CHECK(mpz_class(static_cast<unsigned long>(ds4.solutions.size())) ==
          equivariant_count_brute(i4));
    CHECK(equivariant_count_brute(i4) == equivariant_count_closed(2, 3, 2, 1));
}

TEST_CASE("budget refusal is a clean error") {
    FieldSpec f9(3, 2);
    FieldTable k9(f9);
    EquivariantInstance inst{&k9, 1, 3, zero_subspace()};
    CHECK_THROWS_AS(equivariant_count_brute(inst, {1000, true}), resource_error);
}

TEST_CASE("the n = 1 instance has exactly one function") {
    // empty domain: the single empty-tuple value is pinned to zero
    FieldSpec f5(5, 1);
    FieldTable k5(f5);
    EquivariantInstance inst{&k5, 1, 1, zero_subspace()};
    CHECK(equivariant_count_brute(inst) == 1);
    CHECK(equivariant_count_closed(5, 1, 5, 1) == 1);  // b = 0
}

TEST_CASE("full-space quotient always has exactly the zero function") {
    FieldSpec f2(2, 1);
    FieldTable k2(f2);
    EquivariantInstance inst{&k2, 1, 2, full_subspace(1)};  // p | n but h = k_0
    CHECK(equivariant_count_brute(inst) == 1);
}

TEST_CASE("canonical witness satisfies the relation") {
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    EquivariantInstance inst{&k3, 1, 2, zero_subspace()};
    auto table = canonical_witness_table(inst);  // throws on violation
    // witness is f(a) = 2a^2: values 0, 2, 2 (quotient by 0 keeps indices)
    CHECK(table == std::vector<std::uint32_t>{0, 2, 2});

    FieldSpec f2(2, 1);
    FieldTable k2(f2);
    EquivariantInstance inst2{&k2, 1, 3, zero_subspace()};
    // f(a1, a2) = a1 a2 + a1^3 on tuples indexed a1 + 2 a2
    CHECK(canonical_witness_table(inst2) == std::vector<std::uint32_t>{0, 1, 0, 0});

    FieldSpec f4(2, 2);
    FieldTable k4(f4);
    EquivariantInstance inst3{&k4, 1, 3, trace_zero_subspace(f4, 1, 2)};
    canonical_witness_table(inst3);
}

TEST_CASE("serial and parallel kernels agree") {
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    for (unsigned n : {2u, 3u}) {
        EquivariantInstance inst{&k3, 1, n, zero_subspace()};
        EquivariantKernel kernel(inst, 1'000'000);
        CHECK(kernel.count_serial() == kernel.count_parallel());
    }
}

TEST_CASE("characteristic 2 refinement counts") {
    FieldSpec f4(2, 2);
    FieldTable k4(f4);
    Subspace t = trace_zero_subspace(f4, 1, 2);

    // h' = t, h = t: 1^2 = 1 lies in t, so 2^(1*1) = 2
    CHECK(quadratic_refinement_count(k4, t, t, CountMode::closed) == 2);
    CHECK(quadratic_refinement_count(k4, t, t, CountMode::brute) == 2);

    // h' = F_4, h = 0: omega^2 is not 0
    CHECK(quadratic_refinement_count(k4, zero_subspace(), full_subspace(2), CountMode::closed) == 0);
    CHECK(quadratic_refinement_count(k4, zero_subspace(), full_subspace(2), CountMode::brute) == 0);

    // h = k_0: a single function
    CHECK(quadratic_refinement_count(k4, full_subspace(2), full_subspace(2), CountMode::closed) == 1);
    CHECK(quadratic_refinement_count(k4, full_subspace(2), full_subspace(2), CountMode::brute) == 1);

    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    CHECK_THROWS_AS(quadratic_refinement_count(k3, zero_subspace(), zero_subspace(), CountMode::brute),
                    std::invalid_argument);
}
