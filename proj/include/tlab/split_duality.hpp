#pragma once

// Split chain complexes and duality structure.  A complex inside ambient
// dimension n is split when nothing lives in the middle: rank zero in degree
// n/2 for even n, vanishing differential d_{(n+1)/2} for odd n.  Splitting
// cuts the complex into the lower half (degrees below n/2) and the upper half
// (degrees above n/2, with the differential into the middle dropped), and an
// equivalence between split complexes restricts to an equivalence on each
// half.
//
// A duality pair carries a certified equivalence P from the n-dual of a
// complex onto the complex itself.  For split complexes P restricts to an
// equivalence from the dual of the lower half onto the upper half; its
// torsion is the alpha invariant.  The torsion of an equivalence f that
// commutes with two such dualities up to chain homotopy is determined by its
// lower restriction:
//
//   tau(f) = x - (-1)^n conj(x) + beta - alpha,   x = tau(f restricted low)
//
// split_formula_check computes both sides independently and reports the
// verdict of their difference.

#include "tlab/chains.hpp"

namespace tlab {

// lower half: degrees i with 2i < n survive, everything else is cut
BasedComplex lower(const BasedComplex& c, int n);
// upper half: degrees i with 2i > n survive; the bottom differential of the
// surviving range is replaced by zero (its target was cut)
BasedComplex upper(const BasedComplex& c, int n);

bool is_split(const BasedComplex& c, int n);

// degreewise truncations of a map between split complexes
ChainMap restrict_lower(const ChainMap& f, int n);
ChainMap restrict_upper(const ChainMap& f, int n);

// P : dual_complex(c, n) -> c together with the contraction certifying that
// it is an equivalence
struct DualityPair {
    BasedComplex c;
    int n = 0;
    ChainMap P;
    Contraction cone_delta;
};

// validates shapes and certifies the equivalence; Input error when P is
// provably not an equivalence, Solver error when the search gives up
DualityPair make_duality_pair(const BasedComplex& c, int n, const ChainMap& P, int t_cap = 16);

/// does f : P.c -> Q.c commute with the dualities up to chain homotopy,
// i.e. is f o P o dual(f) - Q nullhomotopic
Verdict in_cheq_PQ(const ChainMap& f, const DualityPair& P, const DualityPair& Q, int t_cap = 16);

// the duality as a chain map between the upper halves,
// upper(dual(c, n), n) -> upper(c, n); needs P.c split
ChainMap upper_restriction(const DualityPair& P);

// torsion of upper_restriction(P), certified through its cone
WhElement alpha_invariant(const DualityPair& P, int t_cap = 16);

struct SplitReport {
    WhElement lhs;            // tau(f), computed from the cone of f
    WhElement rhs;            // x - (-1)^n conj(x) + beta - alpha
    WhElement lower_torsion;  // x
    WhElement alpha;
    WhElement beta;
    Verdict verdict;          // triviality of lhs - rhs
};

SplitReport split_formula_check(const ChainMap& f, const DualityPair& P, const DualityPair& Q,
                                int t_cap = 16);

}  // namespace tlab
