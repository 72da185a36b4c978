#include <doctest.h>

#include "wildcount/partition_log.hpp"

using namespace wildcount;

namespace {

mpq_class q(long num, long den = 1) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}

}  // namespace

TEST_CASE("partition enumeration order and counts") {
    CHECK(enumerate_partitions(1) == std::vector<Partition>{{{1}}});
    CHECK(enumerate_partitions(2) == std::vector<Partition>{{{2}}, {{1, 1}}});
    auto p4 = enumerate_partitions(4);
    CHECK(p4.size() == 5);
    CHECK(p4[0].parts == std::vector<unsigned>{4});
    CHECK(p4[1].parts == std::vector<unsigned>{3, 1});
    CHECK(p4[2].parts == std::vector<unsigned>{2, 2});
    CHECK(p4[3].parts == std::vector<unsigned>{2, 1, 1});
    CHECK(p4[4].parts == std::vector<unsigned>{1, 1, 1, 1});
    CHECK(enumerate_partitions(10).size() == 42);
    CHECK_THROWS_AS(enumerate_partitions(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_partitions(21), std::invalid_argument);
}

TEST_CASE("permutation counts") {
    CHECK(partition_stats({{1, 1}}).length == 2);
    CHECK(partition_stats({{1, 1}}).perm_count == 1);
    CHECK(partition_stats({{2, 1}}).perm_count == 2);
    CHECK(partition_stats({{2, 1, 1}}).length == 3);
    CHECK(partition_stats({{2, 1, 1}}).perm_count == 3);
}

TEST_CASE("small log coefficient tables") {
    auto t1 = log_coefficient_table(1);
    CHECK(t1.terms.at({{1}}) == q(-1));

    auto t2 = log_coefficient_table(2);
    CHECK(t2.terms.at({{2}}) == q(-1));
    CHECK(t2.terms.at({{1, 1}}) == q(1, 2));

    auto t3 = log_coefficient_table(3);
    CHECK(t3.terms.at({{3}}) == q(-1));
    CHECK(t3.terms.at({{2, 1}}) == q(1));
    CHECK(t3.terms.at({{1, 1, 1}}) == q(-1, 3));
}

TEST_CASE("truncated log of concrete series") {
    TruncatedSeries one{std::vector<mpq_class>(4, mpq_class(0))};
    for (const auto& c : truncated_log(one, 4).coeffs) CHECK(c == 0);

    TruncatedSeries u{{q(1), q(0), q(0)}};  // 1 + T
    auto lg = truncated_log(u, 3);
    CHECK(lg.coeffs == std::vector<mpq_class>{q(1), q(-1, 2), q(1, 3)});

    TruncatedSeries v{{q(1), q(1)}};  // 1 + T + T^2
    auto lg2 = truncated_log(v, 2);
    CHECK(lg2.coeffs == std::vector<mpq_class>{q(1), q(1, 2)});
}

TEST_CASE("unit series convolution") {
    TruncatedSeries x{{q(5), q(-2), q(7)}};
    TruncatedSeries one{std::vector<mpq_class>(3, mpq_class(0))};
    CHECK(z_convolve(x, one).coeffs == x.coeffs);

    TruncatedSeries t{{q(1), q(0)}};
    CHECK(z_convolve(t, t).coeffs == std::vector<mpq_class>{q(2), q(1)});

    TruncatedSeries a{{q(1), q(0), q(0)}}, b{{q(0), q(1), q(0)}};
    CHECK(z_convolve(a, b).coeffs == std::vector<mpq_class>{q(1), q(1), q(1)});

    TruncatedSeries short_series{{q(1)}};
    CHECK_THROWS_AS(z_convolve(a, short_series), std::invalid_argument);
}

TEST_CASE("additivity identity at fixed and random points") {
    auto t2 = log_coefficient_table(2);
    std::vector<mpq_class> x{q(1), q(0)};
    mpq_class lhs = evaluate_log_poly(t2, x) + evaluate_log_poly(t2, x);
    TruncatedSeries xs{x};
    mpq_class rhs = evaluate_log_poly(t2, z_convolve(xs, xs).coeffs);
    CHECK(lhs == rhs);

    for (unsigned n = 1; n <= 6; ++n) CHECK(log_additivity_check(n, 25, 42 + n));
}

TEST_CASE("denominator prime support") {
    auto r2 = integrality_certificate(2);
    CHECK(r2.pass);
    CHECK(r2.max_denominator == 2);

    auto r4 = integrality_certificate(4);
    CHECK(r4.pass);
    CHECK(r4.denominator_primes == std::vector<std::uint64_t>{2});

    auto r6 = integrality_certificate(6);
    CHECK(r6.pass);
    for (std::uint64_t p : r6.denominator_primes) CHECK((p == 2 || p == 3));
}

TEST_CASE("series expansion matches the partition formula up to one sign") {
    CHECK(log_sign_epsilon() == -1);
    for (unsigned n = 1; n <= 8; ++n) {
        auto table = log_coefficient_table(n);
        auto series = generic_log_coefficients(n);
        REQUIRE(series.size() == table.terms.size());
        for (const auto& [part, coeff] : table.terms) CHECK(coeff == -series.at(part));
    }
}

TEST_CASE("witness polynomial reductions") {
    auto w23 = witness_polynomial(2, 3);
    REQUIRE(w23.terms.size() == 1);
    CHECK(w23.terms.at({{1, 1}}) == 2);  // 1/2 = 2 mod 3

    auto w32 = witness_polynomial(3, 2);
    CHECK(w32.terms.at({{2, 1}}) == 1);
    CHECK(w32.terms.at({{1, 1, 1}}) == 1);  // -1/3 = 1 mod 2

    CHECK_THROWS_AS(witness_polynomial(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(witness_polynomial(4, 2), std::invalid_argument);
}

TEST_CASE("witness evaluation over a field") {
    FieldSpec f3(3, 1);
    auto w = witness_polynomial(2, 3);
    // g(x) = 2x^2: g(1) = 2, g(2) = 8 = 2
    CHECK(witness_eval(w, f3, {f3.from_int(1)}) == f3.from_int(2));
    CHECK(witness_eval(w, f3, {f3.from_int(2)}) == f3.from_int(2));
    CHECK(witness_eval(w, f3, {f3.zero()}) == f3.zero());
}
