#include <doctest.h>

#include <set>

#include "wildcount/trunc_units.hpp"

using namespace wildcount;

TEST_CASE("unit group multiplication and inverses") {
    FieldSpec f2(2, 1);
    FieldTable k2(f2);
    TruncUnitGroup g2(k2, 2, 1);
    // (1+T)^2 = 1+T^2 in characteristic 2
    std::uint32_t u = g2.from_coeffs({1, 0});
    CHECK(g2.mul(u, u) == g2.from_coeffs({0, 1}));

    TruncUnitGroup g3(k2, 3, 1);
    // inverse of 1+T at level 3 is 1+T+T^2+T^3
    CHECK(g3.inv(g3.from_coeffs({1, 0, 0})) == g3.from_coeffs({1, 1, 1}));

    // (1+aT)^p = 1+a^p T^p below the truncation level
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    TruncUnitGroup g34(k3, 4, 1);
    std::uint32_t v = g34.from_coeffs({2, 0, 0, 0});
    std::uint32_t v3 = g34.mul(g34.mul(v, v), v);
    CHECK(v3 == g34.from_coeffs({0, 0, 2 * 2 * 2 % 3, 0}));
}

TEST_CASE("group axioms on small groups") {
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    TruncUnitGroup g(k3, 3, 1);  // order 27
    for (std::uint32_t a = 0; a < g.size(); ++a) {
        CHECK(g.mul(a, g.one()) == a);
        CHECK(g.mul(a, g.inv(a)) == g.one());
        for (std::uint32_t b = 0; b < g.size(); ++b) {
            CHECK(g.mul(a, b) == g.mul(b, a));
            for (std::uint32_t c = 0; c < g.size(); c += 5)
                CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
        }
    }
    CHECK_THROWS_AS(TruncUnitGroup(k3, 9, 1), resource_error);  // 3^9 over the cap

    // order 512: commutativity on all pairs, associativity sampled
    FieldSpec f2(2, 1);
    FieldTable k2(f2);
    TruncUnitGroup g512(k2, 9, 1, 512);
    for (std::uint32_t a = 0; a < g512.size(); ++a) {
        CHECK(g512.mul(a, g512.inv(a)) == g512.one());
        for (std::uint32_t b = a; b < g512.size(); ++b) {
            CHECK(g512.mul(a, b) == g512.mul(b, a));
            if ((a * 31 + b) % 97 == 0)
                for (std::uint32_t c = 0; c < g512.size(); c += 41)
                    CHECK(g512.mul(g512.mul(a, b), c) == g512.mul(a, g512.mul(b, c)));
        }
    }
}

TEST_CASE("truncation is a homomorphism with additive kernel") {
    FieldSpec f4(2, 2);
    FieldTable k4(f4);
    TruncUnitGroup g(k4, 3, 1);   // order 64
    TruncUnitGroup g2(k4, 2, 1);  // order 16
    unsigned kernel = 0;
    for (std::uint32_t a = 0; a < g.size(); ++a) {
        if (g.truncate_idx(a) == 0) ++kernel;
        for (std::uint32_t b = 0; b < g.size(); b += 3)
            CHECK(g.truncate_idx(g.mul(a, b)) == g2.mul(g.truncate_idx(a), g.truncate_idx(b)));
    }
    CHECK(kernel == k4.size());
    // kernel multiplication is addition of top coefficients
    const std::uint32_t D = g.truncate_size();
    for (std::uint32_t x = 0; x < k4.size(); ++x)
        for (std::uint32_t y = 0; y < k4.size(); ++y)
            CHECK(g.mul(x * D, y * D) == k4.add(x, y) * D);
}

TEST_CASE("valid subgroup enumeration, frozen small cases") {
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    TruncUnitGroup g(k3, 2, 1);
    CHECK(enumerate_valid_subgroups(g, false).size() == 3);
    CHECK(enumerate_valid_subgroups(g, true).size() == 4);

    FieldSpec f2(2, 1);
    FieldTable k2(f2);
    TruncUnitGroup g2(k2, 3, 1);
    auto valid = enumerate_valid_subgroups(g2, false);
    CHECK(valid.size() == 2);
    for (const auto& H : valid) CHECK(fiber_extract(g2, H).h.dim() == 0);

    // level 1: the truncation target is trivial, every invariant subgroup
    // qualifies
    TruncUnitGroup g1(k3, 1, 1);
    CHECK(enumerate_valid_subgroups(g1, true).size() == 2);
    CHECK(enumerate_valid_subgroups(g1, false).size() == 1);
}

TEST_CASE("subgroup closure produces actual subgroups") {
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    TruncUnitGroup g(k3, 2, 1);
    for (const auto& H : enumerate_valid_subgroups(g, true)) {
        std::set<std::uint32_t> set(H.elements.begin(), H.elements.end());
        for (std::uint32_t a : H.elements) {
            CHECK(set.count(g.inv(a)) == 1);
            CHECK(set.count(g.frob(a)) == 1);
            for (std::uint32_t b : H.elements) CHECK(set.count(g.mul(a, b)) == 1);
        }
        // generators regenerate the subgroup: close under products
        std::set<std::uint32_t> span{g.one()};
        span.insert(H.generators.begin(), H.generators.end());
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::uint32_t> cur(span.begin(), span.end());
            for (std::uint32_t a : cur)
                for (std::uint32_t b : cur)
                    if (span.insert(g.mul(a, b)).second) grew = true;
        }
        CHECK(std::vector<std::uint32_t>(span.begin(), span.end()) == H.elements);
    }
}

TEST_CASE("fiber extraction of the kernel-only data") {
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    TruncUnitGroup g(k3, 2, 1);

    // fd = (h = k_0, section = 0) assembles to the full group
    FiberData fd;
    fd.h = full_subspace(1);
    fd.reps.assign(g.truncate_size(), 0);
    UnitSubgroup full = fiber_assemble(g, fd);
    CHECK(full.elements.size() == g.size());

    // and extraction reads it back
    FiberData fd2 = fiber_extract(g, full);
    CHECK(fd2.h == full_subspace(1));
    CHECK(fd2.reps == fd.reps);
}

TEST_CASE("fiber roundtrip on every valid subgroup") {
    struct Point {
        std::uint64_t p;
        unsigned f, n;
    };
    for (auto [p, f, n] : {Point{3, 1, 2}, Point{2, 1, 3}}) {
        FieldSpec spec(p, f);
        FieldTable k(spec);
        TruncUnitGroup g(k, n, 1);
        for (const auto& H : enumerate_valid_subgroups(g, true)) {
            FiberData fd = fiber_extract(g, H);
            CHECK(fiber_assemble(g, fd).elements == H.elements);
            CHECK(fd.reps[0] == 0);
        }
    }
}

TEST_CASE("corrupted fiber data is rejected with the offending pair") {
    FieldSpec f3(3, 1);
    FieldTable k3(f3);
    TruncUnitGroup g(k3, 2, 1);
    auto valid = enumerate_valid_subgroups(g, false);
    FiberData fd = fiber_extract(g, valid[0]);
    REQUIRE(fd.reps.size() == 3);
    fd.reps[1] = k3.add(fd.reps[1], 1);  // break the section off the coset
    CHECK_THROWS_AS(fiber_assemble(g, fd), consistency_error);
}

TEST_CASE("oracle totals and the properness delta") {
    CHECK(oracle_total_count(3, 1, 1, 2, false) == 9);
    CHECK(oracle_total_count(3, 1, 1, 2, true) == 10);
    CHECK(oracle_total_count(2, 1, 1, 3, false) == 4);
    CHECK(oracle_total_count(2, 1, 1, 3, true) == 5);
    // p | n: no valid proper subgroup contributes
    CHECK(oracle_total_count(2, 1, 1, 2, false) == 0);
}

TEST_CASE("oracle breakdown matches the per-subspace closed form") {
    OracleOptions opts;
    opts.include_full = true;
    OracleBreakdown br = oracle_breakdown(3, 1, 1, 2, opts);
    REQUIRE(br.subgroups.size() == 4);
    unsigned dim0 = 0, dim1 = 0;
    for (const auto& s : br.subgroups) {
        if (s.h_dim == 0) {
            ++dim0;
            CHECK(s.fixed_cosets == 3);
        } else {
            ++dim1;
            CHECK(s.fixed_cosets == 1);
        }
    }
    CHECK(dim0 == 3);
    CHECK(dim1 == 1);
}
