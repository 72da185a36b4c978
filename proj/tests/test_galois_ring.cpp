#include <doctest.h>

#include "wildcount/galois_ring.hpp"

using namespace wildcount;

TEST_CASE("degree 1 is the integers mod 8") {
    GaloisRing R(1);
    CHECK(R.size() == 8);
    CHECK(R.units().size() == 4);  // 1, 3, 5, 7
    for (std::uint32_t a = 0; a < 8; ++a) CHECK(R.sigma(a) == a);
    CHECK(R.mul(R.from_int(3), R.from_int(5)) == R.from_int(7));
}

TEST_CASE("modulus lifts the binary irreducible and the root is exact") {
    GaloisRing R(2);
    CHECK(R.modulus() == std::vector<std::uint32_t>{1, 1, 1});  // x^2+x+1
    // sigma(x) solves the modulus mod 8 and reduces to x^2 mod 2
    std::uint32_t y = R.frobenius_image();
    CHECK(R.eval_poly(R.modulus(), y) == R.zero());
    FieldSpec f4(2, 2);
    FieldElement x = f4.from_index(2);
    FieldElement x2 = f4.mul(x, x);
    CHECK(R.reduce_mod2(y) == f4.to_index(x2));

    for (unsigned d : {1u, 3u}) {
        GaloisRing Rd(d);
        CHECK(Rd.eval_poly(Rd.modulus(), Rd.frobenius_image()) == Rd.zero());
    }
}

TEST_CASE("sigma is a ring automorphism of the stated order") {
    for (unsigned d : {1u, 2u, 3u}) {
        GaloisRing R(d);
        std::uint32_t step = d == 3 ? 7 : 1;  // sample degree 3
        for (std::uint32_t a = 0; a < R.size(); a += step) {
            std::uint32_t sa = R.sigma(a);
            CHECK(R.sigma(a, d) == a);  // order divides d
            for (std::uint32_t b = 0; b < R.size(); b += step) {
                CHECK(R.sigma(R.add(a, b)) == R.add(sa, R.sigma(b)));
                CHECK(R.sigma(R.mul(a, b)) == R.mul(sa, R.sigma(b)));
            }
        }
    }
}

TEST_CASE("unit count and inverses") {
    for (unsigned d : {1u, 2u, 3u}) {
        GaloisRing R(d);
        std::uint64_t expect = (pow_u64(2, d) - 1) * pow_u64(4, d);
        CHECK(R.units().size() == expect);
    }
    GaloisRing R(2);
    for (std::uint32_t u : R.units()) CHECK(R.mul(u, R.unit_inv(u)) == R.one());
    CHECK_THROWS_AS(R.unit_inv(R.from_int(2)), std::invalid_argument);
}

TEST_CASE("square classes of 1 + 2R") {
    GaloisRing R1(1);
    // squares of {1,3,5,7} mod 8 are all 1
    for (std::uint32_t z = 0; z < 8; ++z) {
        std::uint32_t u = R1.add(R1.one(), R1.mul(R1.from_int(2), z));
        CHECK(R1.mul(u, u) == R1.one());
    }
    for (unsigned d : {1u, 2u, 3u}) {
        SquareClassReport rep = square_class_check(GaloisRing(d));
        CHECK(rep.squares_match);
        CHECK(rep.image_index_two);
        CHECK(rep.equals_trace_zero);
    }
}

TEST_CASE("unramified oracle counts") {
    CHECK(unramified_oracle_count(1, 1) == 4);
    CHECK(unramified_oracle_count(1, 2) == 4);
    CHECK(unramified_oracle_count(2, 1) == 8);
    CHECK(unramified_oracle_count(1, 3) == 4);
    CHECK(unramified_oracle_count(3, 1) == 16);
    CHECK_THROWS_AS(unramified_oracle_count(2, 2), resource_error);  // degree cap
}

TEST_CASE("oracle breakdown for the base case") {
    UnramifiedOracleReport rep = unramified_oracle_report(1, 1);
    // exactly the two subgroups {1,3} and {1,7} of (Z/8)^x qualify
    REQUIRE(rep.subgroups.size() == 2);
    for (const auto& s : rep.subgroups) {
        CHECK(s.order == 2);
        CHECK(s.fixed_cosets == 2);
    }
}
