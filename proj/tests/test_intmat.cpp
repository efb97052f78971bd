#include "tlab/intmat.hpp"

#include "doctest.h"

using namespace tlab;

namespace {

std::vector<Int> mat(std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

}  // namespace

TEST_CASE("solver finds integer solutions") {
    // x + 2y = 5, 3x + 4y = 11  ->  x = 1, y = 2
    IntSolver s(mat({1, 2, 3, 4}), 2, 2);
    auto x = s.solve(mat({5, 11}));
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);
    CHECK(s.rank() == 2);
}

TEST_CASE("solver demands divisibility") {
    // 2x = 3 has no integer solution
    IntSolver s(mat({2}), 1, 1);
    CHECK(!s.solve(mat({3})).has_value());
    CHECK(s.solve(mat({6})).has_value());
}

TEST_CASE("solver detects inconsistency") {
    // x + y = 1 duplicated with a different right side
    IntSolver s(mat({1, 1, 1, 1}), 2, 2);
    CHECK(!s.solve(mat({1, 2})).has_value());
    auto x = s.solve(mat({1, 1}));
    REQUIRE(x.has_value());
    CHECK((*x)[0] + (*x)[1] == 1);
}

TEST_CASE("underdetermined systems give small solutions") {
    // x + 10y + 100z = 111 has solution (1,1,1) after kernel reduction keeps entries modest
    IntSolver s(mat({1, 10, 100}), 1, 3);
    auto x = s.solve(mat({111}));
    REQUIRE(x.has_value());
    CHECK((*x)[0] + 10 * (*x)[1] + 100 * (*x)[2] == 111);
    for (const auto& c : *x) CHECK(abs(c) <= 111);
}

TEST_CASE("gcd-only systems") {
    // 6x + 10y = 2 solvable (gcd 2), = 1 not
    IntSolver s(mat({6, 10}), 1, 2);
    auto x = s.solve(mat({2}));
    REQUIRE(x.has_value());
    CHECK(6 * (*x)[0] + 10 * (*x)[1] == 2);
    CHECK(!s.solve(mat({1})).has_value());
}

TEST_CASE("big-integer fallback engages on overflow") {
    // entries near 2^62 force the mpz path; system stays solvable
    Int big = Int(1) << 62;
    std::vector<Int> a = {big, Int(1), Int(0), Int(1)};
    IntSolver s(a, 2, 2);
    auto x = s.solve({big + 7, Int(7)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 7);
}

TEST_CASE("integer determinants") {
    CHECK(int_det(mat({}), 0) == 1);
    CHECK(int_det(mat({5}), 1) == 5);
    CHECK(int_det(mat({1, 2, 3, 4}), 2) == -2);
    // permutation matrix: sign of a 3-cycle is +1
    CHECK(int_det(mat({0, 1, 0, 0, 0, 1, 1, 0, 0}), 3) == 1);
    // row swap flips the sign
    CHECK(int_det(mat({0, 1, 1, 0}), 2) == -1);
    CHECK(int_det(mat({2, 0, 0, 0, 3, 0, 0, 0, 5}), 3) == 30);
    // singular
    CHECK(int_det(mat({1, 2, 2, 4}), 2) == 0);
}

TEST_CASE("primality for 64-bit inputs") {
    CHECK(!is_prime_u64(0));
    CHECK(!is_prime_u64(1));
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(97));
    CHECK(!is_prime_u64(561));  // Carmichael
    CHECK(is_prime_u64((uint64_t(1) << 61) - 1));   // Mersenne prime M61
    CHECK(!is_prime_u64((uint64_t(1) << 62) - 1));  // divisible by 3
}

TEST_CASE("modular helpers") {
    uint64_t p = (uint64_t(1) << 61) - 1;
    CHECK(mulmod_u64(p - 1, p - 1, p) == 1);
    CHECK(powmod_u64(2, 61, p) == 1);  // 2^61 = p + 1
    uint64_t inv3 = invmod_u64(3, p);
    CHECK(mulmod_u64(3, inv3, p) == 1);
}
