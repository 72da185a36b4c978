#include <doctest.h>

#include <map>
#include <tuple>

#include "wildcount/ff.hpp"

using namespace wildcount;

TEST_CASE("modulus search finds the first monic irreducible") {
    CHECK(FieldSpec(2, 1).modulus() == std::vector<coeff_t>{0, 1});        // x
    CHECK(FieldSpec(2, 2).modulus() == std::vector<coeff_t>{1, 1, 1});     // x^2+x+1
    CHECK(FieldSpec(3, 2).modulus() == std::vector<coeff_t>{1, 0, 1});     // x^2+1
    CHECK(FieldSpec(2, 3).modulus() == std::vector<coeff_t>{1, 1, 0, 1});  // x^3+x+1
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(FieldSpec(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(3, 17), std::invalid_argument);
}

TEST_CASE("field axioms hold exhaustively on small fields") {
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{2, 3}, {3, 2}, {5, 1}, {2, 4}}) {
        FieldSpec k(p, m);
        const std::uint64_t N = k.order();
        for (std::uint64_t i = 0; i < N; ++i) {
            FieldElement a = k.from_index(i);
            CHECK(k.to_index(a) == i);
            CHECK(k.pow(a, N) == a);  // x^(p^m) = x
            if (!k.is_zero(a)) CHECK(k.mul(a, k.inv(a)) == k.one());
            for (std::uint64_t j = 0; j < N; ++j) {
                FieldElement b = k.from_index(j);
                CHECK(k.add(a, b) == k.add(b, a));
                CHECK(k.mul(a, b) == k.mul(b, a));
                // Frobenius is a homomorphism.
                CHECK(k.frobenius_power(k.mul(a, b), 1) ==
                      k.mul(k.frobenius_power(a, 1), k.frobenius_power(b, 1)));
                CHECK(k.frobenius_power(k.add(a, b), 1) ==
                      k.add(k.frobenius_power(a, 1), k.frobenius_power(b, 1)));
            }
        }
    }
}

TEST_CASE("x to the field order is x, all fields up to 256 elements") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        for (unsigned m = 1; pow_u64(p, m) <= 256; ++m) {
            FieldSpec k(p, m);
            for (std::uint64_t i = 0; i < k.order(); ++i) {
                FieldElement a = k.from_index(i);
                CHECK(k.pow(a, k.order()) == a);
            }
        }
    }
}

TEST_CASE("distributivity spot checks") {
    FieldSpec k(3, 3);
    for (std::uint64_t i = 1; i < 27; i += 5)
        for (std::uint64_t j = 2; j < 27; j += 7)
            for (std::uint64_t l = 3; l < 27; l += 11) {
                FieldElement a = k.from_index(i), b = k.from_index(j), c = k.from_index(l);
                CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
            }
}

TEST_CASE("frobenius fixes the prime field and has order m") {
    FieldSpec k(3, 2);
    CHECK(k.frobenius_power(k.from_int(2), 1) == k.from_int(2));
    // omega in F_4 with omega^2 = omega + 1
    FieldSpec f4(2, 2);
    FieldElement omega = f4.from_index(2);  // the class of x
    CHECK(f4.frobenius_power(omega, 1) == f4.add(omega, f4.one()));
    for (std::uint64_t i = 0; i < 4; ++i)
        CHECK(f4.frobenius_power(f4.from_index(i), 2) == f4.from_index(i));
}

TEST_CASE("relative trace lands in the subfield and is surjective") {
    FieldSpec f4(2, 2);
    FieldElement omega = f4.from_index(2);
    CHECK(f4.relative_trace(omega, 1, 2) == f4.one());  // omega + omega^2 = 1
    CHECK(f4.relative_trace(f4.zero(), 1, 2) == f4.zero());

    struct Tower {
        std::uint64_t p;
        unsigned fp, f;
    };
    for (auto [p, fp, f] : {Tower{2, 1, 4}, Tower{2, 2, 2}, Tower{3, 1, 3}, Tower{3, 2, 2}}) {
        FieldSpec k(p, fp * f);
        std::uint64_t q = pow_u64(p, fp);
        std::map<std::uint64_t, std::uint64_t> fibers;
        for (std::uint64_t i = 0; i < k.order(); ++i) {
            FieldElement tr = k.relative_trace(k.from_index(i), fp, f);
            // the image is fixed by the q-power map
            CHECK(k.frobenius_power(tr, fp) == tr);
            ++fibers[k.to_index(tr)];
        }
        CHECK(fibers.size() == q);  // surjective onto the subfield
        for (const auto& [val, count] : fibers) CHECK(count == k.order() / q);
    }

    // elements of the subfield trace to f * x
    FieldSpec f9(3, 2);
    FieldElement two = f9.from_int(2);
    CHECK(f9.relative_trace(two, 1, 2) == f9.scalar_mul(2, two));
    CHECK_THROWS_AS(f9.relative_trace(two, 2, 3), std::invalid_argument);
}

TEST_CASE("table arithmetic agrees with the spec arithmetic") {
    FieldSpec spec(5, 2);
    FieldTable k(spec);
    for (std::uint32_t i = 0; i < k.size(); i += 3)
        for (std::uint32_t j = 0; j < k.size(); j += 7) {
            FieldElement a = spec.from_index(i), b = spec.from_index(j);
            CHECK(k.add(i, j) == spec.to_index(spec.add(a, b)));
            CHECK(k.mul(i, j) == spec.to_index(spec.mul(a, b)));
        }
    for (std::uint32_t i = 1; i < k.size(); ++i) CHECK(k.mul(i, k.inv(i)) == 1);
    CHECK_THROWS_AS(k.inv(0), std::invalid_argument);
    CHECK_THROWS_AS(FieldTable(FieldSpec(3, 8)), resource_error);  // 6561 > cap
}

TEST_CASE("inverse via extended euclid matches fermat on a larger field") {
    FieldSpec k(7, 4);  // 2401 elements, beyond the table cap
    for (std::uint64_t i = 1; i < k.order(); i += 97) {
        FieldElement a = k.from_index(i);
        CHECK(k.mul(a, k.inv(a)) == k.one());
    }
}
