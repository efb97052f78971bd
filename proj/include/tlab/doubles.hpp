#pragma once

// Chain-level models of polarised doubles.  A base complex A in degrees 0..k
// with ambient n >= 2k+2 gives the double  C = A (+) A^{n-*}  with zero
// cross-differential; the two halves occupy disjoint degree ranges, so C is
// split on the nose and the block-swap duality  C^{n-*} -> C  is the identity
// matrix in every degree.
//
// Twisted and generalised doubles compose the swap with a unit scaling of one
// isolated generator in the upper half, placed so that the restriction of the
// duality to the upper halves has exactly the prescribed torsion, and with
// the involuted scaling on the mirrored lower generator.  The mirror keeps
// the duality equal to its own dual, and that symmetry is what lets any
// equivalence of lower halves extend to a duality-compatible comparison of
// two such models: dualising the upper compatibility condition yields the
// lower one.

#include <optional>
#include <utility>

#include "tlab/split_duality.hpp"

namespace tlab {

// A models C(K) for the core K of a thickening, embedded in ambient
// dimension n; base_duality is present when K itself models a k-manifold
struct ThickeningModel {
    BasedComplex a;
    int n = 0;
    std::optional<DualityPair> base_duality;

    int k() const;  // top degree carrying a nonzero rank
    void validate() const;
};

ThickeningModel make_thickening(const BasedComplex& a, int n);
ThickeningModel make_thickening(const BasedComplex& a, int n, const ChainMap& base_p,
                                int t_cap = 16);

enum class DoubleKind { Trivial, Twisted, Generalised };

struct DoubleModel {
    DoubleKind kind = DoubleKind::Trivial;
    ThickeningModel thick;
    BasedComplex complex;     // A (+) dual(A, n)
    DualityPair duality;
    WhElement tau_polarised;  // alpha_invariant(duality), recomputed at build time
    WhElement alpha_torsion;  // torsion of the gluing self-equivalence (zero for Trivial)
    WhElement u;              // prescribed cobordism torsion (zero unless Generalised)
};

// basis element with no differential in or out, lowest degree then lowest
// index; the position a torsion twist can scale without breaking d
std::optional<std::pair<int, int>> find_isolated(const BasedComplex& c);

// automorphism scaling one isolated generator by the unit v
ChainMap unit_twist(const BasedComplex& c, int degree, int index, const RingElement& v);

// tau_polarised = 0, -torsion(alpha), u - torsion(alpha) respectively; each
// build recomputes the invariant from a cone contraction and fails loudly on
// any disagreement
DoubleModel build_trivial_double(const ThickeningModel& t, int t_cap = 16);
DoubleModel build_twisted_double(const ThickeningModel& t, const ChainMap& alpha, int t_cap = 16);
DoubleModel build_generalised_double(const ThickeningModel& t, const ChainMap& alpha,
                                     const WhElement& u, int t_cap = 16);

// the same certified pair over theta-twisted coefficients
DualityPair twist_duality(const DualityPair& p, const RingAuto& theta);

// Comparison map twist(dm, theta) -> dn with lower block alpha_low and upper
// block forced by the two dualities; membership in chEq is certified before
// returning.  alpha_low must be an equivalence lower(twist(dm)) -> lower(dn).
ChainMap induced_equivalence(const DoubleModel& dm, const DoubleModel& dn,
                             const ChainMap& alpha_low, const RingAuto& theta, int t_cap = 16);

// tau of the induced equivalence against
// x - (-1)^n conj(x) + tau(N) - theta_*(tau(M)),  x = tau(alpha_low)
struct ComparisonReport {
    WhElement lhs;
    WhElement rhs;
    WhElement lower_torsion;
    WhElement tau_n;
    WhElement tau_m_transported;
    Verdict verdict;
};
ComparisonReport theorem_b_check(const DoubleModel& dm, const DoubleModel& dn,
                                 const ChainMap& alpha_low, const RingAuto& theta,
                                 int t_cap = 16);

// Manifold-base cancellation: both models carry base dualities, alpha_low
// commutes with them, and its torsion lies in J_k.  For odd n - k the
// antisymmetric term cancels and tau(f) = tau(N) - theta_*(tau(M)); for even
// n - k the expected value keeps the 2x term.
struct BaseVanishingReport {
    bool odd_gap = false;
    WhElement lower_torsion;
    WhElement lhs;
    WhElement expected;
    Verdict verdict;
};
BaseVanishingReport manifold_base_vanishing_check(const DoubleModel& dm, const DoubleModel& dn,
                                                  const ChainMap& alpha_low, const RingAuto& theta,
                                                  int t_cap = 16);

// Both ends of a cobordism with torsion u glued onto the same thickening:
// the comparison between the two generalised doubles (gluing map the
// identity) has torsion -u + (-1)^n conj(u).
struct SwapLawReport {
    WhElement lhs;
    WhElement expected;
    Verdict verdict;
};
SwapLawReport h_cobordism_swap_check(const ThickeningModel& t, const WhElement& u,
                                     int t_cap = 16);

// degrees 0..3 over C_m, ranks all 1: d1 = s - 1, d2 = 1 + s + ... + s^{m-1},
// d3 = s^{qhat} - 1 with q qhat = 1 (mod m)
BasedComplex lens_complex(int m, int q);

// Chain equivalence lens(m, q) -> lens(m, q2) covering s -> s^a, with the
// source read over twisted coefficients; nullopt when no such equivalence
// exists (q2 must match a^2 q up to sign mod m).  The returned map is
// certified through its cone.
std::optional<ChainMap> lens_equivalence(int m, int q, int q2, int a, int t_cap = 16);

// the polarised torsion as a Tate class; requires tau_polarised in J_n
TateClass tau_unpolarised(const DoubleModel& d, const TateContext& ctx, int bound = 8);

}  // namespace tlab
