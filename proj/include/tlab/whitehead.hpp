#pragma once

// Classes of units in the determinant-reduced Whitehead group of Z[G]: units
// modulo the trivial units +-t^a s^b.  Every class carries a canonical
// representative (t-span normalised to start at 0, then the least of the 2m
// sign/s-shift candidates in term order), so equality, triviality, and
// hashing into reports are exact and deterministic.

#include <string>
#include <vector>

#include "tlab/grmatrix.hpp"

namespace tlab {

class WhElement {
public:
    static WhElement zero(const GroupSpec& spec);
    static WhElement from_unit(RingElement u);  // fails unless u is a unit
    static WhElement from_unit_with_inverse(RingElement u, RingElement uinv);

    const GroupSpec& spec() const { return spec_; }
    const RingElement& rep() const { return rep_; }
    const RingElement& rep_inverse() const { return inv_; }
    bool is_zero() const;

    friend WhElement operator+(const WhElement& a, const WhElement& b);
    friend WhElement operator-(const WhElement& a);
    friend WhElement operator-(const WhElement& a, const WhElement& b);
    friend bool operator==(const WhElement& a, const WhElement& b);

    WhElement involute() const;
    WhElement transport(const RingAuto& theta) const;

    std::string str() const { return rep_.str(); }

private:
    explicit WhElement(GroupSpec spec) : spec_(spec), rep_(spec), inv_(spec) {}
    void canonicalize();

    GroupSpec spec_;
    RingElement rep_;
    RingElement inv_;
};

// x scaled by (-1)^n
WhElement sign_by(const WhElement& x, int n);

// determinant class of an invertible matrix; fails if the determinant is not
// a unit
WhElement wh_of_matrix(const GRMatrix& a);

// x is in J_n, i.e. x = -(-1)^n conj(x)
bool in_J(const WhElement& x, int n);

// x - (-1)^n conj(x), the generic element of I_n
WhElement antisymmetrize(const WhElement& x, int n);

// Wh(C_inf x C_m) -> Wh(C_m) along t -> 1; needs w(t) = +1
WhElement bhs_project_fin(const WhElement& x);

// triviality of a class; exact at the determinant-reduced level
Verdict wh_verdict(const WhElement& x);

// Equality in the Tate quotient J_n / I_n, searched over integer combinations
// of antisymmetrized context generators with coefficients bounded by `bound`.
// An exhausted search is only a Nontrivial verdict when the context is
// declared complete.
struct TateContext {
    std::vector<WhElement> generators;
    bool complete = false;
};
Verdict tate_equal(const WhElement& x, const WhElement& y, int n, const TateContext& ctx, int bound = 8);

// an element of J_n presented modulo I_n, compared through tate_equal over a
// shared context
struct TateClass {
    WhElement rep;
    int n = 0;
    TateContext ctx;
    int bound = 8;
};

// needs the same level, group, and context on both sides
Verdict tate_equal(const TateClass& a, const TateClass& b);

}  // namespace tlab
