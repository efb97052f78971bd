#include "tlab/grmatrix.hpp"

#include "doctest.h"
#include "tlab/rng.hpp"

using namespace tlab;

namespace {

GroupSpec c5() { return GroupSpec{5, false, 1, 1}; }
GroupSpec c8w() { return GroupSpec{8, false, -1, 1}; }
GroupSpec prod3() { return GroupSpec{3, true, 1, 1}; }

RingElement el(const GroupSpec& g, const std::string& s) { return parse_element(g, s); }

// independent cofactor-expansion determinant
RingElement det_oracle(const GRMatrix& a) {
    int n = a.rows();
    if (n == 0) return RingElement::one(a.spec());
    if (n == 1) return a.at(0, 0);
    RingElement acc(a.spec());
    std::vector<int> rows, cols;
    for (int i = 1; i < n; ++i) rows.push_back(i);
    for (int j = 0; j < n; ++j) {
        if (a.at(0, j).is_zero()) continue;
        cols.clear();
        for (int k = 0; k < n; ++k)
            if (k != j) cols.push_back(k);
        RingElement minor = det_oracle(a.submatrix(rows, cols));
        RingElement term = a.at(0, j) * minor;
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

RingElement random_element(Rng& rng, const GroupSpec& g, int tmax) {
    RingElement x(g);
    int terms = int(rng.below(3));
    for (int k = 0; k < terms; ++k) {
        int te = g.has_t ? int(rng.range(-tmax, tmax)) : 0;
        int se = int(rng.below(uint64_t(g.m)));
        x.add_term(te, se, Int(long(rng.range(-3, 3))));
    }
    return x;
}

}  // namespace

TEST_CASE("determinant matches the cofactor oracle") {
    for (const GroupSpec& g : {c5(), c8w(), prod3(), GroupSpec{1, true, 1, -1}, GroupSpec{1, false, 1, 1}}) {
        Rng rng(1234 + g.m + (g.has_t ? 7 : 0));
        for (int trial = 0; trial < 8; ++trial) {
            int n = 1 + int(rng.below(3));
            GRMatrix a(g, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a.set(i, j, random_element(rng, g, 2));
            CHECK(gr_det(a) == det_oracle(a));
        }
    }
}

TEST_CASE("determinant basics") {
    auto g = c5();
    CHECK(gr_det(GRMatrix::identity(g, 3)) == RingElement::one(g));
    CHECK(gr_det(GRMatrix(g, 0, 0)) == RingElement::one(g));

    GRMatrix a(g, 2, 2);
    a.set(0, 0, el(g, "s"));
    a.set(0, 1, el(g, "1"));
    a.set(1, 1, el(g, "s^4"));
    CHECK(gr_det(a) == RingElement::one(g));  // s * s^4 = 1 over C_5

    // swapping rows flips the sign
    GRMatrix b(g, 2, 2);
    b.set(0, 1, el(g, "1"));
    b.set(1, 0, el(g, "1"));
    CHECK(gr_det(b) == el(g, "-1"));

    GRMatrix u = GRMatrix::scalar(g, 2, el(g, "s + s^4 - 1"));
    CHECK(gr_det(u) == el(g, "s + s^4 - 1") * el(g, "s + s^4 - 1"));
}

TEST_CASE("determinant with large coefficients stays exact") {
    auto g = GroupSpec{1, false, 1, 1};
    // Bareiss-style oracle territory: make coefficients overflow 64 bits in products
    GRMatrix a(g, 2, 2);
    Int big = Int("123456789012345678901234567890");
    a.set(0, 0, RingElement::from_int(g, big));
    a.set(0, 1, RingElement::from_int(g, 3));
    a.set(1, 0, RingElement::from_int(g, 5));
    a.set(1, 1, RingElement::from_int(g, big));
    CHECK(gr_det(a) == RingElement::from_int(g, big * big - 15));
}

TEST_CASE("involute transpose") {
    auto g = c8w();
    GRMatrix a(g, 1, 2);
    a.set(0, 0, el(g, "s"));
    a.set(0, 1, el(g, "1 + s^2"));
    GRMatrix b = a.involute_transpose();
    CHECK(b.rows() == 2);
    CHECK(b.at(0, 0) == el(g, "-1*s^7"));
    CHECK(b.at(1, 0) == el(g, "1 + s^6"));
    CHECK(a.involute_transpose().involute_transpose() == a);
}

TEST_CASE("one sided solves over a finite group ring") {
    auto g = c5();
    GRMatrix a(g, 2, 2);
    a.set(0, 0, el(g, "s + s^4 - 1"));
    a.set(0, 1, el(g, "s^2"));
    a.set(1, 1, el(g, "-1"));
    GRMatrix x0(g, 2, 2);
    x0.set(0, 0, el(g, "1 - s"));
    x0.set(1, 0, el(g, "s^3"));
    x0.set(1, 1, el(g, "2"));
    auto x = solve_AX_B(a, a * x0);
    REQUIRE(x.has_value());
    CHECK(a * *x == a * x0);

    auto y = solve_XA_B(a, x0 * a);
    REQUIRE(y.has_value());
    CHECK(*y * a == x0 * a);

    // 2X = I has no integral solution
    GRMatrix two = GRMatrix::scalar(g, 1, el(g, "2"));
    CHECK(!solve_AX_B(two, GRMatrix::identity(g, 1)).has_value());
}

TEST_CASE("one sided solves widen the t window") {
    auto g = prod3();
    GRMatrix a = GRMatrix::scalar(g, 1, el(g, "t"));
    auto x = solve_AX_B(a, GRMatrix::identity(g, 1));
    REQUIRE(x.has_value());
    CHECK(x->at(0, 0) == el(g, "t^-1"));

    // t - 1 is not invertible: exhausting the window reports failure
    GRMatrix b = GRMatrix::scalar(g, 1, el(g, "t - 1"));
    CHECK(!solve_AX_B(b, GRMatrix::identity(g, 1)).has_value());
}

TEST_CASE("ring systems solve two sided equations") {
    auto g = c5();
    // find X with  u X + X v = B, an equation no one-sided solve handles
    RingElement u = el(g, "s + s^4 - 1");
    RingElement v = el(g, "s^2 + 1");
    GRMatrix x0(g, 2, 2);
    x0.set(0, 0, el(g, "s^3 - 2"));
    x0.set(0, 1, el(g, "1"));
    x0.set(1, 0, el(g, "s"));
    GRMatrix lhs = GRMatrix::scalar(g, 2, u) * x0 + x0 * GRMatrix::scalar(g, 2, v);

    RingSystem sys(g);
    int h = sys.add_unknown(2, 2);
    sys.add_equation({{h, GRMatrix::scalar(g, 2, u), GRMatrix::identity(g, 2)},
                      {h, GRMatrix::identity(g, 2), GRMatrix::scalar(g, 2, v)}},
                     lhs);
    auto sol = sys.solve();
    REQUIRE(sol.has_value());
    GRMatrix got = (*sol)[0];
    CHECK(GRMatrix::scalar(g, 2, u) * got + got * GRMatrix::scalar(g, 2, v) == lhs);
}

TEST_CASE("block assembly") {
    auto g = c5();
    GRMatrix a = GRMatrix::identity(g, 1);
    GRMatrix z(g, 1, 2);
    GRMatrix b(g, 1, 2);
    b.set(0, 1, el(g, "s"));
    GRMatrix m = block_matrix(g, {{a, b}, {GRMatrix(g, 2, 1), GRMatrix::identity(g, 2)}});
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 3);
    CHECK(m.at(0, 2) == el(g, "s"));
    CHECK(gr_det(m) == RingElement::one(g));

    GRMatrix ds = direct_sum(a, GRMatrix::scalar(g, 1, el(g, "s^2")));
    CHECK(gr_det(ds) == el(g, "s^2"));
}
