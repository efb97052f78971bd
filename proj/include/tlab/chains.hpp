#pragma once

// Based chain complexes over Z[G], chain maps, mapping cones, duals, and the
// torsion of a contractible based complex.
//
// A complex lives in degrees 0..top.  d[i] maps degree i to degree i-1, with
// d[0] the unique map to the zero module.  All maps between complexes are
// degree-preserving; duality enters through dual_complex / dual_map, which
// regrade by n - i and apply the w-twisted involute-transpose (no extra signs,
// so the double dual is the identity on the nose).
//
// The mapping cone of f : C -> D has cone_i = C_{i-1} (+) D_i with
// differential  [[-d_C, 0], [f, d_D]]  (source block first).  Torsion of a
// contractible complex is the determinant class of (d + delta) restricted
// odd -> even, blocks ordered by ascending degree; its inverse is the
// determinant of the even -> odd restriction.

#include <optional>
#include <vector>

#include "tlab/grmatrix.hpp"
#include "tlab/whitehead.hpp"

namespace tlab {

struct BasedComplex {
    GroupSpec spec;
    std::vector<int> ranks;    // ranks[i] = rank of C_i, i = 0..top
    std::vector<GRMatrix> d;   // d[i] : C_i -> C_{i-1}; d[0] has 0 rows

    int top() const { return int(ranks.size()) - 1; }
    int rank(int i) const { return (i >= 0 && i <= top()) ? ranks[size_t(i)] : 0; }
    // d[i] for any integer i, zero-shaped outside the stored range
    GRMatrix diff(int i) const;
    int total_rank() const;
    void validate() const;  // shapes and d = 0 on composites

    friend bool operator==(const BasedComplex&, const BasedComplex&);
};

BasedComplex make_complex(const GroupSpec& spec, std::vector<int> ranks, std::vector<GRMatrix> diffs);
BasedComplex zero_complex(const GroupSpec& spec, int top = 0);

struct ChainMap {
    BasedComplex src;
    BasedComplex tgt;
    std::vector<GRMatrix> f;  // f[i] : src_i -> tgt_i, i = 0..max(tops)

    GRMatrix at(int i) const;  // zero-shaped outside the stored range
    void validate() const;     // chain map identity d f = f d

    friend bool operator==(const ChainMap&, const ChainMap&);
};

struct ChainHomotopy {
    GroupSpec spec;
    std::vector<GRMatrix> h;  // h[i] : src_i -> tgt_{i+1}
};

// delta[i] : C_i -> C_{i+1} with d delta + delta d = 1
struct Contraction {
    BasedComplex of;
    std::vector<GRMatrix> delta;
    GRMatrix at(int i) const;  // zero-shaped outside the stored range
};

enum class Acyclicity { Acyclic, NotAcyclic, Unknown };

struct ContractionSearch {
    Acyclicity state = Acyclicity::Unknown;
    std::optional<Contraction> delta;
};

// Greedy degreewise solve; complete for groups without a t factor, and the
// NotAcyclic outcome is a proof in every case (a failed step or a failed top
// identity contradicts contractibility outright).
ContractionSearch find_contraction(const BasedComplex& c, int t_cap = 16);

// determinant class data of a contractible complex: (det, det^{-1})
struct TorsionUnit {
    RingElement value;
    RingElement inverse;
};

TorsionUnit torsion_acyclic(const BasedComplex& c, const Contraction& delta);

ChainMap identity_map(const BasedComplex& c);
ChainMap scalar_map(const BasedComplex& c, const RingElement& u);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f
ChainMap map_sum(const ChainMap& a, const ChainMap& b);  // same src/tgt, f + g
ChainMap map_diff(const ChainMap& a, const ChainMap& b);

BasedComplex shift(const BasedComplex& c, int k);  // degrees move up by k >= 0
ChainMap shift_map(const ChainMap& f, int k);

BasedComplex direct_sum(const BasedComplex& a, const BasedComplex& b);
ChainMap direct_sum_map(const ChainMap& fa, const ChainMap& fb);

BasedComplex dual_complex(const BasedComplex& c, int n);  // (C^{n-*}), needs n >= top
ChainMap dual_map(const ChainMap& f, int n);              // f^* : D^{n-*} -> C^{n-*}

BasedComplex twist_complex(const BasedComplex& c, const RingAuto& theta);
ChainMap twist_map(const ChainMap& f, const RingAuto& theta);

BasedComplex cone(const ChainMap& f);

// homotopy inverse of f extracted from a contraction of cone(f)
struct HomotopyInverse {
    ChainMap g;
    ChainHomotopy on_src;  // d h + h d = 1 - g f
    ChainHomotopy on_tgt;  // d h + h d = 1 - f g
};

// tri-state equivalence test via the cone
struct EquivalenceCheck {
    Acyclicity state = Acyclicity::Unknown;
    std::optional<Contraction> cone_delta;
};
EquivalenceCheck is_equivalence(const ChainMap& f, int t_cap = 16);

HomotopyInverse homotopy_inverse(const ChainMap& f, const Contraction& cone_delta);

// Whitehead torsion of a chain homotopy equivalence, computed from a
// contraction of its cone.  Fails with an Input error when the cone is
// provably not acyclic and a Solver error when the bounded Laurent search
// gives up.  The overload taking a contraction skips the search.
WhElement torsion_map(const ChainMap& f, int t_cap = 16);
WhElement torsion_map(const ChainMap& f, const Contraction& cone_delta);

// nullhomotopy by one global linear system over all degrees
enum class NullHomotopy { Yes, No, Unknown };
struct NullHomotopyCheck {
    NullHomotopy state = NullHomotopy::Unknown;
    std::optional<ChainHomotopy> h;
};
NullHomotopyCheck is_nullhomotopic(const ChainMap& f, int t_cap = 16);

}  // namespace tlab
