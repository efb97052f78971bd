#pragma once

// Exact arithmetic in Z[G] for G one of C_m, C_inf, C_inf x C_m, together with
// the w-twisted involution  g |-> w(g) g^{-1}  and the ring maps used elsewhere
// (augmentation, projection t -> 1, group automorphisms).
//
// Elements are stored as sparse sums  sum c * t^a s^b  with b reduced mod m.
// The finite generator prints as `s`, the infinite one as `t`.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlab/base.hpp"

namespace tlab {

struct GroupSpec {
    int m = 1;           // order of the finite cyclic factor (1 = absent)
    bool has_t = false;  // infinite cyclic factor present
    int w_s = 1;         // orientation character at s; -1 needs m even
    int w_t = 1;         // orientation character at t

    void validate() const;
    bool trivial_w() const { return w_s == 1 && w_t == 1; }
    GroupSpec finite_part() const;  // drops the t factor
    std::string describe() const;

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

class RingElement {
public:
    // (t-exponent, s-exponent) -> coefficient; s-exponent always in [0, m)
    using Terms = std::map<std::pair<int, int>, Int>;

    explicit RingElement(GroupSpec spec) : spec_(spec) {}

    static RingElement zero(const GroupSpec& spec) { return RingElement(spec); }
    static RingElement one(const GroupSpec& spec) { return monomial(spec, 0, 0, 1); }
    static RingElement from_int(const GroupSpec& spec, Int c) { return monomial(spec, 0, 0, std::move(c)); }
    static RingElement monomial(const GroupSpec& spec, int te, int se, Int c);
    // 1 + s + ... + s^{m-1}
    static RingElement norm_element(const GroupSpec& spec);

    const GroupSpec& spec() const { return spec_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Int coeff(int te, int se) const;
    int term_count() const { return int(terms_.size()); }

    // inclusive t-degree span; {0, 0} for the zero element
    std::pair<int, int> t_span() const;

    RingElement& add_term(int te, int se, const Int& c);

    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const Int& c, const RingElement& a);
    friend bool operator==(const RingElement& a, const RingElement& b);

    // w-twisted involution: c t^a s^b  |->  c w_t^a w_s^b t^{-a} s^{-b}
    RingElement involute() const;

    Int augment() const;    // sum of coefficients
    Int augment_w() const;  // sum of w(g)-signed coefficients

    // ring map Z[C_inf x C_m] -> Z[C_m], t -> 1
    RingElement project_t1() const;

    std::string str() const;

private:
    GroupSpec spec_;
    Terms terms_;
};

// s -> s^a, t -> t^e s^b (e = +-1); must commute with w
struct RingAuto {
    GroupSpec spec;
    int a = 1;
    int e = 1;
    int b = 0;

    RingAuto(GroupSpec spec, int a, int e = 1, int b = 0);
    RingElement apply(const RingElement& x) const;
    RingAuto inverse() const;
    bool is_identity() const;
};

// Exact unit test.  Over Z[C_m] this solves the regular-representation system;
// over a Laurent extension a unit is a single t-power times a unit of Z[C_m]
// (the coefficient ring is reduced and has connected spectrum).
bool is_unit(const RingElement& u);

// Inverse when is_unit holds, nullopt otherwise.
std::optional<RingElement> ring_inverse(const RingElement& u);

// +- t^a s^b
bool is_trivial_unit(const RingElement& u);

// m x m integer matrix of multiplication by u on Z[C_m] (basis 1, s, ..., s^{m-1});
// requires !spec.has_t
std::vector<Int> regular_rep(const RingElement& u);

RingElement parse_element(const GroupSpec& spec, const std::string& text);

}  // namespace tlab
