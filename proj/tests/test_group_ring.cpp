#include "tlab/group_ring.hpp"

#include <map>

#include "doctest.h"
#include "tlab/intmat.hpp"

using namespace tlab;

namespace {

GroupSpec c5() { return GroupSpec{5, false, 1, 1}; }
GroupSpec cinf() { return GroupSpec{1, true, 1, 1}; }
GroupSpec prod8_w() { return GroupSpec{8, true, -1, -1}; }

// independent convolution oracle on (t-exp, s-exp) -> coeff tables
using Table = std::map<std::pair<int, int>, long>;
Table conv(const Table& a, const Table& b, int m) {
    Table r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            int te = ka.first + kb.first;
            int se = ((ka.second + kb.second) % m + m) % m;
            r[{te, se}] += ca * cb;
            if (r[{te, se}] == 0) r.erase({te, se});
        }
    return r;
}

Table table_of(const RingElement& x) {
    Table t;
    for (const auto& [k, c] : x.terms()) t[k] = long(c.get_si());
    return t;
}

}  // namespace

TEST_CASE("parse and print round trips") {
    auto g = c5();
    for (const char* text : {"1", "0", "s", "s^2", "2*s^3", "1 + s", "s + s^4 - 1", "-1*s^2", "-3",
                             "2 - 3*s + s^4"}) {
        RingElement x = parse_element(g, text);
        RingElement y = parse_element(g, x.str());
        CHECK(x == y);
    }
    auto p = prod8_w();
    for (const char* text : {"t", "t^-1", "s*t^2", "s^3*t^-4", "1 - t - t^-1", "5*s^7*t^-2 + s"}) {
        RingElement x = parse_element(p, text);
        RingElement y = parse_element(p, x.str());
        CHECK(x == y);
    }
}

TEST_CASE("printing is canonical") {
    auto g = c5();
    CHECK(parse_element(g, "s  +1").str() == "1 + s");
    CHECK(parse_element(g, "-1*s^2").str() == "-1*s^2");
    CHECK(parse_element(g, "s^7").str() == "s^2");
    CHECK(parse_element(g, "s - s").str() == "0");
    CHECK(parse_element(g, "3*s*s^4").str() == "3");
    auto p = prod8_w();
    CHECK(parse_element(p, "t^-1*s^9").str() == "s*t^-1");
    CHECK(parse_element(p, "2*t*t*t").str() == "2*t^3");
}

TEST_CASE("parser rejects malformed input") {
    auto g = c5();
    for (const char* text : {"", "s^", "1 +", "t", "x", "2*", "s^^2", "* s", "1 2"}) {
        CHECK_THROWS_AS(parse_element(g, text), Error);
    }
    CHECK_THROWS_AS(parse_element(cinf(), "s"), Error);
}

TEST_CASE("multiplication matches the convolution oracle") {
    auto p = GroupSpec{1, true, 1, 1};
    RingElement a = parse_element(p, "t + t^-1 - 1");
    RingElement b = parse_element(p, "t^2 + t^-2 - 1");
    RingElement ab = a * b;
    CHECK(table_of(ab) == conv(table_of(a), table_of(b), 1));
    CHECK(ab == parse_element(p, "t^3 + t^-3 - t^2 - t^-2 + 1"));

    auto g = c5();
    RingElement u = parse_element(g, "s + s^4 - 1");
    RingElement v = parse_element(g, "s^2 + s^3 - 1");
    CHECK(table_of(u * v) == conv(table_of(u), table_of(v), 5));
    CHECK(u * v == RingElement::one(g));

    auto pw = prod8_w();
    RingElement x = parse_element(pw, "2*s^3*t^-1 + s - 7");
    RingElement y = parse_element(pw, "s^5*t^2 - 3*t^-1");
    CHECK(table_of(x * y) == conv(table_of(x), table_of(y), 8));
}

TEST_CASE("involution twists by w and inverts the group element") {
    auto g = GroupSpec{4, false, -1, 1};
    CHECK(parse_element(g, "s").involute() == parse_element(g, "-1*s^3"));
    CHECK(parse_element(g, "s^2").involute() == parse_element(g, "s^2"));

    auto p = prod8_w();
    RingElement x = parse_element(p, "s*t");
    // conj(s t) = w(s)w(t) s^-1 t^-1 = s^7 t^-1
    CHECK(x.involute() == parse_element(p, "s^7*t^-1"));
    RingElement y = parse_element(p, "3*s^2*t - 2*s*t^2");
    CHECK(y.involute().involute() == y);

    auto u = GroupSpec{5, false, 1, 1};
    CHECK(parse_element(u, "s").involute() == parse_element(u, "s^4"));
}

TEST_CASE("augmentations") {
    auto p = prod8_w();
    RingElement x = parse_element(p, "3*s^2*t - 2*s*t^2 + 4");
    CHECK(x.augment() == 5);
    // w-signs: s^2 t -> -1, s t^2 -> -1, 1 -> +1
    CHECK(x.augment_w() == -3 + 2 + 4);
    CHECK(x.project_t1() == parse_element(p.finite_part(), "3*s^2 - 2*s + 4"));
}

TEST_CASE("unit detection over the finite group ring") {
    auto g = c5();
    CHECK(is_unit(parse_element(g, "s + s^4 - 1")));
    CHECK(*ring_inverse(parse_element(g, "s + s^4 - 1")) == parse_element(g, "s^2 + s^3 - 1"));
    CHECK(is_unit(parse_element(g, "-1*s^3")));
    CHECK(!is_unit(parse_element(g, "s - 1")));
    CHECK(!is_unit(parse_element(g, "2")));
    CHECK(!is_unit(parse_element(g, "1 + s + s^2 + s^3 + s^4")));
    CHECK(!is_unit(RingElement::zero(g)));

    // determinant of the regular representation of a unit is +-1
    Int d = int_det(regular_rep(parse_element(g, "s + s^4 - 1")), 5);
    CHECK((d == 1 || d == -1));
    CHECK(int_det(regular_rep(parse_element(g, "s - 1")), 5) == 0);
}

TEST_CASE("unit detection over Laurent extensions") {
    auto p = prod8_w();
    CHECK(is_unit(parse_element(p, "t^3")));
    CHECK(is_unit(parse_element(p, "-1*s^5*t^-2")));
    CHECK(!is_unit(parse_element(p, "t + 1")));
    CHECK(!is_unit(parse_element(p, "s + t")));
    auto z = cinf();
    CHECK(is_unit(parse_element(z, "-1*t^7")));
    CHECK(!is_unit(parse_element(z, "2*t")));
    CHECK(*ring_inverse(parse_element(z, "-1*t^7")) == parse_element(z, "-1*t^-7"));
}

TEST_CASE("trivial units") {
    auto g = c5();
    CHECK(is_trivial_unit(parse_element(g, "s^2")));
    CHECK(is_trivial_unit(parse_element(g, "-1*s^4")));
    CHECK(!is_trivial_unit(parse_element(g, "s + s^4 - 1")));
    CHECK(!is_trivial_unit(parse_element(g, "2*s")));
    CHECK(is_trivial_unit(parse_element(prod8_w(), "-1*s^3*t^-9")));
}

TEST_CASE("group automorphisms act as ring maps") {
    auto g = c5();
    RingAuto theta(g, 2);
    RingElement x = parse_element(g, "s + s^4 - 1");
    CHECK(theta.apply(x) == parse_element(g, "s^2 + s^3 - 1"));
    CHECK(theta.inverse().apply(theta.apply(x)) == x);
    RingElement a = parse_element(g, "1 + 2*s^3");
    CHECK(theta.apply(a * x) == theta.apply(a) * theta.apply(x));

    auto p = prod8_w();
    RingAuto phi(p, 3, -1, 2);
    RingElement y = parse_element(p, "s*t + s^6*t^-2");
    CHECK(phi.inverse().apply(phi.apply(y)) == y);
    CHECK(phi.apply(y).involute() == phi.apply(y.involute()));

    CHECK_THROWS_AS(RingAuto(g, 5), Error);  // gcd(5, 5) != 1
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((GroupSpec{0, false, 1, 1}.validate()), Error);
    CHECK_THROWS_AS((GroupSpec{5, false, -1, 1}.validate()), Error);  // odd m, w(s) = -1
    CHECK_THROWS_AS((GroupSpec{5, false, 1, -1}.validate()), Error);  // no t factor
    CHECK_THROWS_AS((GroupSpec{1, false, -1, 1}.validate()), Error);  // no s factor
    GroupSpec{8, true, -1, -1}.validate();
    GroupSpec{1, true, 1, -1}.validate();
    GroupSpec pw{8, true, -1, -1};
    CHECK(pw.describe() == "Cinf x C8, w(t)=-1, w(s)=-1");
    GroupSpec triv{1, false, 1, 1};
    CHECK(triv.describe() == "C1");
}

TEST_CASE("norm element") {
    auto g = c5();
    RingElement n = RingElement::norm_element(g);
    CHECK(n == parse_element(g, "1 + s + s^2 + s^3 + s^4"));
    CHECK(parse_element(g, "s") * n == n);
    CHECK(n * n == Int(5) * n);
}
