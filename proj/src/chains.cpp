#include "tlab/chains.hpp"

#include <algorithm>

namespace tlab {

GRMatrix BasedComplex::diff(int i) const {
    if (i >= 1 && i <= top()) return d[size_t(i)];
    return GRMatrix(spec, rank(i - 1), rank(i));
}

int BasedComplex::total_rank() const {
    int s = 0;
    for (int r : ranks) s += r;
    return s;
}

void BasedComplex::validate() const {
    spec.validate();
    require(!ranks.empty(), ErrKind::Internal, "complex without degrees");
    require(d.size() == ranks.size(), ErrKind::Internal, "differential count mismatch");
    for (int i = 0; i <= top(); ++i) {
        require(ranks[size_t(i)] >= 0, ErrKind::Internal, "negative rank");
        require(d[size_t(i)].spec() == spec, ErrKind::Internal, "differential over wrong ring");
        require(d[size_t(i)].rows() == rank(i - 1) && d[size_t(i)].cols() == rank(i), ErrKind::Internal,
                "differential shape mismatch");
    }
    for (int i = 2; i <= top(); ++i)
        require((d[size_t(i - 1)] * d[size_t(i)]).is_zero(), ErrKind::Internal, "d^2 != 0");
}

bool operator==(const BasedComplex& a, const BasedComplex& b) {
    if (!(a.spec == b.spec)) return false;
    int hi = std::max(a.top(), b.top());
    for (int i = 0; i <= hi; ++i) {
        if (a.rank(i) != b.rank(i)) return false;
        if (!(a.diff(i) == b.diff(i))) return false;
    }
    return true;
}

bool operator==(const ChainMap& a, const ChainMap& b) {
    if (!(a.src == b.src) || !(a.tgt == b.tgt)) return false;
    int hi = std::max(a.src.top(), a.tgt.top());
    for (int i = 0; i <= hi; ++i)
        if (!(a.at(i) == b.at(i))) return false;
    return true;
}

BasedComplex make_complex(const GroupSpec& spec, std::vector<int> ranks, std::vector<GRMatrix> diffs) {
    require(!ranks.empty(), ErrKind::Input, "complex needs at least one degree");
    require(diffs.size() + 1 == ranks.size(), ErrKind::Input,
            "expected one differential per degree above the bottom");
    BasedComplex c{spec, std::move(ranks), {}};
    c.d.reserve(c.ranks.size());
    c.d.push_back(GRMatrix(spec, 0, c.ranks[0]));
    for (auto& m : diffs) c.d.push_back(std::move(m));
    c.validate();
    return c;
}

BasedComplex zero_complex(const GroupSpec& spec, int top) {
    require(top >= 0, ErrKind::Internal, "negative top");
    BasedComplex c{spec, std::vector<int>(size_t(top) + 1, 0), {}};
    for (int i = 0; i <= top; ++i) c.d.push_back(GRMatrix(spec, 0, 0));
    return c;
}

GRMatrix ChainMap::at(int i) const {
    if (i >= 0 && i < int(f.size())) return f[size_t(i)];
    return GRMatrix(src.spec, tgt.rank(i), src.rank(i));
}

void ChainMap::validate() const {
    src.validate();
    tgt.validate();
    require(src.spec == tgt.spec, ErrKind::Internal, "chain map between different rings");
    int t = std::max(src.top(), tgt.top());
    require(int(f.size()) == t + 1, ErrKind::Internal, "chain map level count mismatch");
    for (int i = 0; i <= t; ++i)
        require(f[size_t(i)].rows() == tgt.rank(i) && f[size_t(i)].cols() == src.rank(i), ErrKind::Internal,
                "chain map level shape mismatch");
    for (int i = 1; i <= t; ++i)
        require(tgt.diff(i) * at(i) == at(i - 1) * src.diff(i), ErrKind::Internal, "not a chain map");
}

GRMatrix Contraction::at(int i) const {
    if (i >= 0 && i < int(delta.size())) return delta[size_t(i)];
    return GRMatrix(of.spec, of.rank(i + 1), of.rank(i));
}

ContractionSearch find_contraction(const BasedComplex& c, int t_cap) {
    c.validate();
    Contraction out{c, {}};
    out.delta.reserve(size_t(c.top()) + 1);
    for (int i = 0; i <= c.top(); ++i) {
        GRMatrix b = GRMatrix::identity(c.spec, c.rank(i));
        if (i > 0) b = b - out.delta[size_t(i - 1)] * c.diff(i);
        if (i < c.top()) {
            auto x = solve_AX_B(c.diff(i + 1), b, t_cap);
            if (!x) {
                Acyclicity st = c.spec.has_t ? Acyclicity::Unknown : Acyclicity::NotAcyclic;
                return {st, std::nullopt};
            }
            out.delta.push_back(std::move(*x));
        } else {
            if (!b.is_zero()) return {Acyclicity::NotAcyclic, std::nullopt};
            out.delta.push_back(GRMatrix(c.spec, c.rank(i + 1), c.rank(i)));
        }
    }
    return {Acyclicity::Acyclic, std::move(out)};
}

TorsionUnit torsion_acyclic(const BasedComplex& c, const Contraction& delta) {
    require(delta.of == c, ErrKind::Internal, "contraction belongs to another complex");
    std::vector<int> evens, odds;
    for (int i = 0; i <= c.top(); ++i) (i % 2 == 0 ? evens : odds).push_back(i);

    auto block = [&](int row_deg, int col_deg) {
        if (row_deg == col_deg - 1) return c.diff(col_deg);
        if (row_deg == col_deg + 1) return delta.at(col_deg);
        return GRMatrix(c.spec, c.rank(row_deg), c.rank(col_deg));
    };
    auto assemble = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
        std::vector<std::vector<GRMatrix>> grid;
        grid.reserve(rows.size());
        for (int r : rows) {
            std::vector<GRMatrix> line;
            line.reserve(cols.size());
            for (int cd : cols) line.push_back(block(r, cd));
            grid.push_back(std::move(line));
        }
        if (grid.empty() || grid[0].empty()) return GRMatrix(c.spec, 0, 0);
        return block_matrix(c.spec, grid);
    };

    GRMatrix m_oe = assemble(evens, odds);
    GRMatrix m_eo = assemble(odds, evens);
    require(m_oe.rows() == m_oe.cols(), ErrKind::Internal, "odd/even ranks differ in an acyclic complex");
    RingElement det = gr_det(m_oe);
    RingElement inv = gr_det(m_eo);
    require(det * inv == RingElement::one(c.spec), ErrKind::Internal,
            "torsion determinant is not a unit");
    return {det, inv};
}

ChainMap identity_map(const BasedComplex& c) { return scalar_map(c, RingElement::one(c.spec)); }

ChainMap scalar_map(const BasedComplex& c, const RingElement& u) {
    ChainMap f{c, c, {}};
    for (int i = 0; i <= c.top(); ++i) f.f.push_back(GRMatrix::scalar(c.spec, c.rank(i), u));
    return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    require(f.tgt == g.src, ErrKind::Internal, "composing maps with mismatched middles");
    ChainMap r{f.src, g.tgt, {}};
    int t = std::max(f.src.top(), g.tgt.top());
    for (int i = 0; i <= t; ++i) r.f.push_back(g.at(i) * f.at(i));
    return r;
}

ChainMap map_sum(const ChainMap& a, const ChainMap& b) {
    require(a.src == b.src && a.tgt == b.tgt, ErrKind::Internal, "adding maps with different ends");
    ChainMap r{a.src, a.tgt, {}};
    int t = std::max(a.src.top(), a.tgt.top());
    for (int i = 0; i <= t; ++i) r.f.push_back(a.at(i) + b.at(i));
    return r;
}

ChainMap map_diff(const ChainMap& a, const ChainMap& b) {
    require(a.src == b.src && a.tgt == b.tgt, ErrKind::Internal, "subtracting maps with different ends");
    ChainMap r{a.src, a.tgt, {}};
    int t = std::max(a.src.top(), a.tgt.top());
    for (int i = 0; i <= t; ++i) r.f.push_back(a.at(i) - b.at(i));
    return r;
}

BasedComplex shift(const BasedComplex& c, int k) {
    require(k >= 0, ErrKind::Internal, "shift must be upward");
    if (k == 0) return c;
    BasedComplex r{c.spec, std::vector<int>(size_t(c.top() + k) + 1, 0), {}};
    for (int i = 0; i <= c.top(); ++i) r.ranks[size_t(i + k)] = c.rank(i);
    for (int i = 0; i <= c.top() + k; ++i) r.d.push_back(c.diff(i - k));
    r.validate();
    return r;
}

ChainMap shift_map(const ChainMap& f, int k) {
    ChainMap r{shift(f.src, k), shift(f.tgt, k), {}};
    int t = std::max(r.src.top(), r.tgt.top());
    for (int i = 0; i <= t; ++i) r.f.push_back(f.at(i - k));
    return r;
}

BasedComplex direct_sum(const BasedComplex& a, const BasedComplex& b) {
    require(a.spec == b.spec, ErrKind::Internal, "direct sum over different rings");
    int t = std::max(a.top(), b.top());
    BasedComplex r{a.spec, std::vector<int>(size_t(t) + 1, 0), {}};
    for (int i = 0; i <= t; ++i) r.ranks[size_t(i)] = a.rank(i) + b.rank(i);
    for (int i = 0; i <= t; ++i) r.d.push_back(direct_sum(a.diff(i), b.diff(i)));
    r.validate();
    return r;
}

ChainMap direct_sum_map(const ChainMap& fa, const ChainMap& fb) {
    ChainMap r{direct_sum(fa.src, fb.src), direct_sum(fa.tgt, fb.tgt), {}};
    int t = std::max(r.src.top(), r.tgt.top());
    for (int i = 0; i <= t; ++i) r.f.push_back(direct_sum(fa.at(i), fb.at(i)));
    return r;
}

BasedComplex dual_complex(const BasedComplex& c, int n) {
    require(n >= c.top(), ErrKind::Internal, "dual degree below the top of the complex");
    BasedComplex r{c.spec, std::vector<int>(size_t(n) + 1, 0), {}};
    for (int i = 0; i <= n; ++i) r.ranks[size_t(i)] = c.rank(n - i);
    for (int i = 0; i <= n; ++i) r.d.push_back(c.diff(n - i + 1).involute_transpose());
    r.validate();
    return r;
}

ChainMap dual_map(const ChainMap& f, int n) {
    ChainMap r{dual_complex(f.tgt, n), dual_complex(f.src, n), {}};
    for (int i = 0; i <= n; ++i) r.f.push_back(f.at(n - i).involute_transpose());
    return r;
}

BasedComplex twist_complex(const BasedComplex& c, const RingAuto& theta) {
    BasedComplex r{c.spec, c.ranks, {}};
    for (const auto& m : c.d) r.d.push_back(m.apply(theta));
    r.validate();
    return r;
}

ChainMap twist_map(const ChainMap& f, const RingAuto& theta) {
    ChainMap r{twist_complex(f.src, theta), twist_complex(f.tgt, theta), {}};
    for (const auto& m : f.f) r.f.push_back(m.apply(theta));
    return r;
}

BasedComplex cone(const ChainMap& f) {
    f.validate();
    const GroupSpec& g = f.src.spec;
    int t = std::max(f.src.top() + 1, f.tgt.top());
    BasedComplex r{g, std::vector<int>(size_t(t) + 1, 0), {}};
    for (int i = 0; i <= t; ++i) r.ranks[size_t(i)] = f.src.rank(i - 1) + f.tgt.rank(i);
    for (int i = 0; i <= t; ++i) {
        GRMatrix z(g, f.src.rank(i - 2), f.tgt.rank(i));
        r.d.push_back(block_matrix(
            g, {{-f.src.diff(i - 1), z}, {f.at(i - 1), f.tgt.diff(i)}}));
    }
    r.validate();
    return r;
}

EquivalenceCheck is_equivalence(const ChainMap& f, int t_cap) {
    auto got = find_contraction(cone(f), t_cap);
    return {got.state, std::move(got.delta)};
}

WhElement torsion_map(const ChainMap& f, const Contraction& cone_delta) {
    TorsionUnit tu = torsion_acyclic(cone(f), cone_delta);
    return WhElement::from_unit_with_inverse(tu.value, tu.inverse);
}

WhElement torsion_map(const ChainMap& f, int t_cap) {
    auto ec = is_equivalence(f, t_cap);
    require(ec.state != Acyclicity::NotAcyclic, ErrKind::Input, "not a chain homotopy equivalence");
    require(ec.state == Acyclicity::Acyclic, ErrKind::Solver, "could not certify the cone contraction");
    return torsion_map(f, *ec.cone_delta);
}

namespace {

GRMatrix sub_block(const GRMatrix& m, int r0, int nr, int c0, int nc) {
    std::vector<int> rr(static_cast<size_t>(nr), 0), cc(static_cast<size_t>(nc), 0);
    for (int i = 0; i < nr; ++i) rr[size_t(i)] = r0 + i;
    for (int j = 0; j < nc; ++j) cc[size_t(j)] = c0 + j;
    return m.submatrix(rr, cc);
}

}  // namespace

HomotopyInverse homotopy_inverse(const ChainMap& f, const Contraction& cone_delta) {
    const BasedComplex& c = f.src;
    const BasedComplex& dd = f.tgt;
    require(cone_delta.of == cone(f), ErrKind::Internal, "contraction is not for this cone");
    int t = std::max(c.top(), dd.top());

    ChainMap g{dd, c, {}};
    ChainHomotopy on_src{c.spec, {}}, on_tgt{c.spec, {}};
    for (int i = 0; i <= t; ++i) {
        // delta_i : C_{i-1} (+) D_i  ->  C_i (+) D_{i+1}
        GRMatrix delta_i = cone_delta.at(i);
        GRMatrix a_i = sub_block(delta_i, 0, c.rank(i), 0, c.rank(i - 1));
        GRMatrix g_i = sub_block(delta_i, 0, c.rank(i), c.rank(i - 1), dd.rank(i));
        GRMatrix c_i = sub_block(delta_i, c.rank(i), dd.rank(i + 1), c.rank(i - 1), dd.rank(i));
        g.f.push_back(g_i);                    // D_i -> C_i
        on_tgt.h.push_back(c_i);               // D_i -> D_{i+1}
        if (i >= 1) on_src.h.push_back(-a_i);  // h[i-1] = -a_i : C_{i-1} -> C_i
    }
    on_src.h.push_back(GRMatrix(c.spec, c.rank(t + 1), c.rank(t)));

    g.validate();
    // defensive checks of the extracted identities
    ChainMap gf = compose(g, f);
    ChainMap fg = compose(f, g);
    for (int i = 0; i <= t; ++i) {
        GRMatrix lhs_src = c.diff(i + 1) * on_src.h[size_t(i)] +
                           (i > 0 ? on_src.h[size_t(i - 1)] * c.diff(i)
                                  : GRMatrix(c.spec, c.rank(0), c.rank(0)));
        require(lhs_src == GRMatrix::identity(c.spec, c.rank(i)) - gf.at(i), ErrKind::Internal,
                "extracted source homotopy failed");
        GRMatrix lhs_tgt = dd.diff(i + 1) * on_tgt.h[size_t(i)] +
                           (i > 0 ? on_tgt.h[size_t(i - 1)] * dd.diff(i)
                                  : GRMatrix(c.spec, dd.rank(0), dd.rank(0)));
        require(lhs_tgt == GRMatrix::identity(c.spec, dd.rank(i)) - fg.at(i), ErrKind::Internal,
                "extracted target homotopy failed");
    }
    return {std::move(g), std::move(on_src), std::move(on_tgt)};
}

NullHomotopyCheck is_nullhomotopic(const ChainMap& f, int t_cap) {
    f.validate();
    const BasedComplex& c = f.src;
    const BasedComplex& dd = f.tgt;
    const GroupSpec& g = c.spec;
    int t = std::max(c.top(), dd.top());

    RingSystem sys(g);
    std::vector<int> handle(size_t(t) + 1, -1);
    for (int i = 0; i <= t; ++i)
        if (dd.rank(i + 1) > 0 && c.rank(i) > 0) handle[size_t(i)] = sys.add_unknown(dd.rank(i + 1), c.rank(i));

    bool any_equation = false;
    for (int i = 0; i <= t; ++i) {
        if (dd.rank(i) == 0 || c.rank(i) == 0) {
            require(f.at(i).is_zero(), ErrKind::Internal, "nonzero map on zero module");
            continue;
        }
        std::vector<RingSystem::Term> terms;
        if (handle[size_t(i)] >= 0)
            terms.push_back({handle[size_t(i)], dd.diff(i + 1), GRMatrix::identity(g, c.rank(i))});
        if (i >= 1 && handle[size_t(i - 1)] >= 0)
            terms.push_back({handle[size_t(i - 1)], GRMatrix::identity(g, dd.rank(i)), c.diff(i)});
        if (terms.empty()) {
            if (!f.at(i).is_zero()) return {NullHomotopy::No, std::nullopt};
            continue;
        }
        sys.add_equation(std::move(terms), f.at(i));
        any_equation = true;
    }
    if (!any_equation) return {NullHomotopy::Yes, ChainHomotopy{g, {}}};

    auto sol = sys.solve(t_cap);
    if (!sol) return {g.has_t ? NullHomotopy::Unknown : NullHomotopy::No, std::nullopt};

    ChainHomotopy h{g, {}};
    for (int i = 0; i <= t; ++i) {
        if (handle[size_t(i)] >= 0)
            h.h.push_back((*sol)[size_t(handle[size_t(i)])]);
        else
            h.h.push_back(GRMatrix(g, dd.rank(i + 1), c.rank(i)));
    }
    return {NullHomotopy::Yes, std::move(h)};
}

}  // namespace tlab
