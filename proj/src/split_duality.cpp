#include "tlab/split_duality.hpp"

#include <algorithm>

namespace tlab {

namespace {

// largest degree of the lower half and smallest degree of the upper half
int lower_top(int n) { return (n - 1) / 2; }
int upper_bottom(int n) { return n / 2 + 1; }

}  // namespace

BasedComplex lower(const BasedComplex& c, int n) {
    require(n >= 1, ErrKind::Input, "ambient dimension must be positive");
    int hi = std::min(c.top(), lower_top(n));
    std::vector<int> ranks;
    std::vector<GRMatrix> diffs;
    for (int i = 0; i <= hi; ++i) {
        ranks.push_back(c.rank(i));
        if (i >= 1) diffs.push_back(c.diff(i));
    }
    return make_complex(c.spec, std::move(ranks), std::move(diffs));
}

BasedComplex upper(const BasedComplex& c, int n) {
    require(n >= 1, ErrKind::Input, "ambient dimension must be positive");
    int lo = upper_bottom(n);
    if (c.top() < lo) return zero_complex(c.spec);
    std::vector<int> ranks;
    for (int i = 0; i <= c.top(); ++i) ranks.push_back(i >= lo ? c.rank(i) : 0);
    std::vector<GRMatrix> diffs;
    for (int i = 1; i <= c.top(); ++i) {
        if (i >= lo + 1)
            diffs.push_back(c.diff(i));
        else
            diffs.emplace_back(c.spec, ranks[size_t(i - 1)], ranks[size_t(i)]);
    }
    return make_complex(c.spec, std::move(ranks), std::move(diffs));
}

bool is_split(const BasedComplex& c, int n) {
    require(n >= 1, ErrKind::Input, "ambient dimension must be positive");
    if (n % 2 == 0) return c.rank(n / 2) == 0;
    return c.diff((n + 1) / 2).is_zero();
}

ChainMap restrict_lower(const ChainMap& f, int n) {
    require(is_split(f.src, n) && is_split(f.tgt, n), ErrKind::Input,
            "restriction needs split source and target");
    BasedComplex s = lower(f.src, n);
    BasedComplex t = lower(f.tgt, n);
    int hi = std::max(s.top(), t.top());
    std::vector<GRMatrix> blocks;
    for (int i = 0; i <= hi; ++i) blocks.push_back(f.at(i));
    ChainMap r{std::move(s), std::move(t), std::move(blocks)};
    r.validate();
    return r;
}

ChainMap restrict_upper(const ChainMap& f, int n) {
    require(is_split(f.src, n) && is_split(f.tgt, n), ErrKind::Input,
            "restriction needs split source and target");
    BasedComplex s = upper(f.src, n);
    BasedComplex t = upper(f.tgt, n);
    int lo = upper_bottom(n);
    int hi = std::max(s.top(), t.top());
    std::vector<GRMatrix> blocks;
    for (int i = 0; i <= hi; ++i) {
        if (i >= lo)
            blocks.push_back(f.at(i));
        else
            blocks.emplace_back(f.src.spec, t.rank(i), s.rank(i));
    }
    ChainMap r{std::move(s), std::move(t), std::move(blocks)};
    r.validate();
    return r;
}

DualityPair make_duality_pair(const BasedComplex& c, int n, const ChainMap& P, int t_cap) {
    c.validate();
    P.validate();
    require(n >= c.top(), ErrKind::Input, "ambient dimension below the top degree");
    require(P.src == dual_complex(c, n), ErrKind::Input, "duality source must be the n-dual");
    require(P.tgt == c, ErrKind::Input, "duality target must be the complex itself");
    auto ec = is_equivalence(P, t_cap);
    require(ec.state != Acyclicity::NotAcyclic, ErrKind::Input, "duality map is not an equivalence");
    require(ec.state == Acyclicity::Acyclic, ErrKind::Solver,
            "could not certify the duality equivalence");
    return DualityPair{c, n, P, *ec.cone_delta};
}

Verdict in_cheq_PQ(const ChainMap& f, const DualityPair& P, const DualityPair& Q, int t_cap) {
    require(P.n == Q.n, ErrKind::Input, "ambient dimension mismatch");
    require(f.src == P.c && f.tgt == Q.c, ErrKind::Input,
            "map must run from the first duality's complex to the second's");
    f.validate();
    ChainMap around = compose(f, compose(P.P, dual_map(f, P.n)));
    auto nh = is_nullhomotopic(map_diff(around, Q.P), t_cap);
    switch (nh.state) {
        case NullHomotopy::Yes: return Verdict::trivial("chain homotopy witness found");
        case NullHomotopy::No: return Verdict::nontrivial("no chain homotopy exists");
        default: return Verdict::unknown("bounded homotopy search exhausted");
    }
}

ChainMap upper_restriction(const DualityPair& P) {
    require(is_split(P.c, P.n), ErrKind::Input, "upper restriction needs a split complex");
    BasedComplex s = upper(dual_complex(P.c, P.n), P.n);
    BasedComplex t = upper(P.c, P.n);
    int lo = upper_bottom(P.n);
    int hi = std::max(s.top(), t.top());
    std::vector<GRMatrix> blocks;
    for (int i = 0; i <= hi; ++i) {
        if (i >= lo)
            blocks.push_back(P.P.at(i));
        else
            blocks.emplace_back(P.c.spec, t.rank(i), s.rank(i));
    }
    ChainMap r{std::move(s), std::move(t), std::move(blocks)};
    r.validate();
    return r;
}

WhElement alpha_invariant(const DualityPair& P, int t_cap) {
    ChainMap r = upper_restriction(P);
    auto ec = is_equivalence(r, t_cap);
    require(ec.state != Acyclicity::NotAcyclic, ErrKind::Input,
            "malformed duality: restriction to the upper half is not an equivalence");
    require(ec.state == Acyclicity::Acyclic, ErrKind::Solver,
            "could not certify the restricted duality equivalence");
    return torsion_map(r, *ec.cone_delta);
}

SplitReport split_formula_check(const ChainMap& f, const DualityPair& P, const DualityPair& Q,
                                int t_cap) {
    Verdict member = in_cheq_PQ(f, P, Q, t_cap);
    require(!member.is_nontrivial(), ErrKind::Input, "map does not commute with the dualities");
    require(member.is_trivial(), ErrKind::Solver, "duality compatibility left undecided");
    int n = P.n;
    WhElement lhs = torsion_map(f, t_cap);
    WhElement x = torsion_map(restrict_lower(f, n), t_cap);
    WhElement alpha = alpha_invariant(P, t_cap);
    WhElement beta = alpha_invariant(Q, t_cap);
    WhElement rhs = antisymmetrize(x, n) + beta - alpha;
    Verdict verdict = wh_verdict(lhs - rhs);
    return SplitReport{lhs, rhs, x, alpha, beta, verdict};
}

}  // namespace tlab
