#include "tlab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "tlab/rng.hpp"
#include "tlab/tlx.hpp"

namespace tlab {

std::vector<RingElement> unit_table(const GroupSpec& spec) {
    // Bass cyclic units with small support:
    //   m = 5:        s + s^4 - 1
    //   m = 7, 8, 9:  nu_c^phi(m) - ((c^phi(m) - 1) / m) N,  nu_c = 1 + s + ... + s^{c-1}
    std::vector<RingElement> out;
    if (spec.m == 5) {
        out.push_back(parse_element(spec, "s + s^4 - 1"));
    } else if (spec.m == 7 || spec.m == 8 || spec.m == 9) {
        int c = spec.m == 8 ? 3 : 2;
        int phi = spec.m == 8 ? 4 : 6;
        RingElement nu = RingElement::zero(spec);
        for (int i = 0; i < c; ++i) nu = nu + RingElement::monomial(spec, 0, i, 1);
        RingElement pw = RingElement::one(spec);
        for (int i = 0; i < phi; ++i) pw = pw * nu;
        long cp = 1;
        for (int i = 0; i < phi; ++i) cp *= c;
        Int lam((cp - 1) / spec.m);
        out.push_back(pw - lam * RingElement::norm_element(spec));
    }
    for (const RingElement& u : out) {
        require(is_unit(u), ErrKind::Internal, "unit table entry is not a unit");
        require(wh_verdict(WhElement::from_unit(u)).is_nontrivial(), ErrKind::Internal,
                "unit table entry is trivial in Wh");
    }
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"calculus", "split", "theoremB", "parity",
                                                   "doubles"};
    return names;
}

namespace {

uint64_t tag(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (char c : s) {
        h ^= uint64_t(uint8_t(c));
        h *= 1099511628211ULL;
    }
    return h;
}

struct TrialOutcome {
    bool pass = true;
    std::string law;
    std::string detail;
    std::string tlx;
};

TrialOutcome fail_law(const std::string& law, const std::string& detail, std::string tlx) {
    return {false, law, detail, std::move(tlx)};
}

// ---------------------------------------------------------------- generators

GroupSpec random_spec(Rng& rng, const SuiteOptions& opt) {
    int m = int(rng.range(opt.m_lo, opt.m_hi));
    bool has_t = rng.below(6) == 0;
    int ws = (m % 2 == 0 && rng.below(4) == 0) ? -1 : 1;
    int wt = (has_t && rng.below(4) == 0) ? -1 : 1;
    GroupSpec spec{m, has_t, ws, wt};
    spec.validate();
    return spec;
}

RingElement random_element(Rng& rng, const GroupSpec& spec) {
    RingElement x = RingElement::zero(spec);
    int terms = int(rng.below(3));
    for (int i = 0; i < terms; ++i) {
        int se = spec.m > 1 ? int(rng.below(uint64_t(spec.m))) : 0;
        int te = spec.has_t ? int(rng.range(-1, 1)) : 0;
        int c = int(rng.range(1, 2)) * (rng.coin() ? 1 : -1);
        x = x + RingElement::monomial(spec, te, se, c);
    }
    return x;
}

RingElement random_trivial_unit(Rng& rng, const GroupSpec& spec) {
    int se = spec.m > 1 ? int(rng.below(uint64_t(spec.m))) : 0;
    int te = spec.has_t ? int(rng.range(-1, 1)) : 0;
    return RingElement::monomial(spec, te, se, rng.coin() ? 1 : -1);
}

struct UnitPair {
    RingElement u, uinv;
};

UnitPair random_unit(Rng& rng, const GroupSpec& spec) {
    RingElement t = random_trivial_unit(rng, spec);
    auto tinv = ring_inverse(t);
    require(tinv.has_value(), ErrKind::Internal, "trivial unit has no inverse");
    std::vector<RingElement> table = unit_table(spec);
    if (!table.empty() && rng.below(3) == 0) {
        const RingElement& u = rng.pick(table);
        auto uinv = ring_inverse(u);
        require(uinv.has_value(), ErrKind::Internal, "table unit has no inverse");
        if (rng.coin()) return {u * t, *tinv * *uinv};
        return {*uinv * t, *tinv * u};
    }
    return {t, *tinv};
}

WhElement random_wh(Rng& rng, const GroupSpec& spec) {
    WhElement x = WhElement::zero(spec);
    for (const RingElement& u : unit_table(spec)) {
        WhElement cls = WhElement::from_unit(u);
        int c = int(rng.range(-2, 2));
        for (int i = 0; i < std::abs(c); ++i) x = c > 0 ? x + cls : x - cls;
        if (rng.below(3) == 0) x = rng.coin() ? x + cls.involute() : x - cls.involute();
    }
    return x;
}

// invertible matrix assembled from tracked elementary moves, so both the
// inverse and the determinant class come for free
struct TrackedAuto {
    GRMatrix a, inv;
    WhElement cls;
};

TrackedAuto random_auto(Rng& rng, const GroupSpec& spec, int r) {
    TrackedAuto t{GRMatrix::identity(spec, r), GRMatrix::identity(spec, r),
                  WhElement::zero(spec)};
    if (r == 0) return t;
    int ops = 1 + int(rng.below(3));
    for (int k = 0; k < ops; ++k) {
        uint64_t what = rng.below(3);
        if (what == 0 || r == 1) {
            int i = int(rng.below(uint64_t(r)));
            UnitPair u = random_unit(rng, spec);
            GRMatrix d = GRMatrix::identity(spec, r);
            GRMatrix dinv = GRMatrix::identity(spec, r);
            d.set(i, i, u.u);
            dinv.set(i, i, u.uinv);
            t.a = d * t.a;
            t.inv = t.inv * dinv;
            t.cls = t.cls + WhElement::from_unit_with_inverse(u.u, u.uinv);
        } else if (what == 1) {
            int i = int(rng.below(uint64_t(r)));
            int j = int(rng.below(uint64_t(r - 1)));
            if (j >= i) ++j;
            RingElement x = random_element(rng, spec);
            GRMatrix e = GRMatrix::identity(spec, r);
            GRMatrix einv = GRMatrix::identity(spec, r);
            e.set(i, j, x);
            einv.set(i, j, -x);
            t.a = e * t.a;
            t.inv = t.inv * einv;
        } else {
            int i = int(rng.below(uint64_t(r)));
            int j = int(rng.below(uint64_t(r - 1)));
            if (j >= i) ++j;
            GRMatrix p(spec, r, r);
            for (int q = 0; q < r; ++q) {
                int to = q == i ? j : (q == j ? i : q);
                p.set(to, q, RingElement::one(spec));
            }
            t.a = p * t.a;
            t.inv = t.inv * p;
            // det is -1, trivial in Wh
        }
    }
    return t;
}

BasedComplex random_zero_complex(Rng& rng, const GroupSpec& spec, int top, int rank_max,
                                 bool force_top) {
    std::vector<int> ranks(size_t(top) + 1, 0);
    for (int& r : ranks) r = int(rng.below(uint64_t(rank_max) + 1));
    if (force_top && ranks.back() == 0) ranks.back() = 1;
    if (std::accumulate(ranks.begin(), ranks.end(), 0) == 0)
        ranks[rng.below(ranks.size())] = 1;
    std::vector<GRMatrix> diffs;
    for (int i = 1; i <= top; ++i)
        diffs.emplace_back(spec, ranks[size_t(i) - 1], ranks[size_t(i)]);
    return make_complex(spec, std::move(ranks), std::move(diffs));
}

// zero-differential base salted with a few elementary cones, so differentials
// of conjugated copies are genuinely nonzero
BasedComplex random_complex(Rng& rng, const GroupSpec& spec) {
    int top = 1 + int(rng.below(4));
    BasedComplex c = random_zero_complex(rng, spec, top, 2, false);
    int cones = int(rng.below(3));
    for (int q = 0; q < cones; ++q) {
        int j = int(rng.below(uint64_t(top) + 1));
        UnitPair u = random_unit(rng, spec);
        std::vector<int> ranks(size_t(j) + 2, 0);
        ranks[size_t(j)] = 1;
        ranks[size_t(j) + 1] = 1;
        std::vector<GRMatrix> diffs;
        for (int i = 1; i <= j + 1; ++i)
            diffs.emplace_back(spec, ranks[size_t(i) - 1], ranks[size_t(i)]);
        diffs[size_t(j)].set(0, 0, u.u);
        c = direct_sum(c, make_complex(spec, std::move(ranks), std::move(diffs)));
    }
    return c;
}

// degreewise conjugate d' = A d A^{-1}; the basis change A is a chain
// equivalence with torsion sum_i (-1)^i [det A_i]
struct IsoPair {
    BasedComplex tgt;
    ChainMap f;
    WhElement cls;
};

IsoPair conjugate(Rng& rng, const BasedComplex& c) {
    std::vector<TrackedAuto> autos;
    for (int i = 0; i <= c.top(); ++i) autos.push_back(random_auto(rng, c.spec, c.rank(i)));
    std::vector<GRMatrix> diffs;
    for (int i = 1; i <= c.top(); ++i)
        diffs.push_back(autos[size_t(i) - 1].a * c.diff(i) * autos[size_t(i)].inv);
    BasedComplex t = make_complex(c.spec, c.ranks, std::move(diffs));
    std::vector<GRMatrix> blocks;
    WhElement cls = WhElement::zero(c.spec);
    for (int i = 0; i <= c.top(); ++i) {
        blocks.push_back(autos[size_t(i)].a);
        cls = i % 2 == 0 ? cls + autos[size_t(i)].cls : cls - autos[size_t(i)].cls;
    }
    ChainMap f{c, std::move(t), std::move(blocks)};
    f.validate();
    return {f.tgt, f, std::move(cls)};
}

// f + d h + h d for a random degree-(+1) block h
ChainMap add_null(Rng& rng, const ChainMap& f) {
    const GroupSpec& spec = f.src.spec;
    int hi = std::max(f.src.top(), f.tgt.top());
    std::vector<GRMatrix> h;
    for (int i = 0; i <= hi; ++i) {
        GRMatrix m(spec, f.tgt.rank(i + 1), f.src.rank(i));
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                if (rng.below(2) == 0) m.set(r, c, random_element(rng, spec));
        h.push_back(std::move(m));
    }
    std::vector<GRMatrix> blocks;
    for (int i = 0; i <= hi; ++i) {
        GRMatrix b = f.at(i) + f.tgt.diff(i + 1) * h[size_t(i)];
        if (i >= 1) b = b + h[size_t(i) - 1] * f.src.diff(i);
        blocks.push_back(std::move(b));
    }
    ChainMap g{f.src, f.tgt, std::move(blocks)};
    g.validate();
    return g;
}

ChainMap null_map(Rng& rng, const BasedComplex& src, const BasedComplex& tgt) {
    return add_null(rng, ChainMap{src, tgt, {}});
}

int coprime_exponent(Rng& rng, int m, bool skip_identity) {
    std::vector<int> opts;
    for (int a = 1; a < m; ++a)
        if (std::gcd(a, m) == 1 && !(skip_identity && a == 1)) opts.push_back(a);
    if (opts.empty()) return 1;
    return rng.pick(opts);
}

RingAuto random_theta(Rng& rng, const GroupSpec& spec, bool prefer_nontrivial) {
    int a = coprime_exponent(rng, spec.m, prefer_nontrivial);
    int e = 1, b = 0;
    if (spec.has_t) {
        if (rng.below(3) == 0) e = -1;
        if (spec.m > 1 && rng.below(3) == 0) {
            b = int(rng.below(uint64_t(spec.m)));
            if (spec.w_s == -1 && b % 2 != 0) b = (b + 1) % spec.m;
        }
    }
    return RingAuto(spec, a, e, b);
}

std::string describe_theta(const RingAuto& th) {
    std::string s = "s -> s^" + std::to_string(th.a);
    if (th.spec.has_t) {
        s += ", t -> t";
        if (th.e == -1) s += "^-1";
        if (th.b != 0) s += " s^" + std::to_string(th.b);
    }
    return s;
}

std::string describe_spec(const GroupSpec& spec) {
    return "group m=" + std::to_string(spec.m) + " t=" + (spec.has_t ? "1" : "0") +
           " ws=" + std::to_string(spec.w_s) + " wt=" + std::to_string(spec.w_t);
}

std::vector<std::pair<int, GRMatrix>> sparse_blocks(const ChainMap& f) {
    std::vector<std::pair<int, GRMatrix>> out;
    int hi = std::max(f.src.top(), f.tgt.top());
    for (int i = 0; i <= hi; ++i) {
        GRMatrix b = f.at(i);
        if (!b.is_zero()) out.emplace_back(i, std::move(b));
    }
    return out;
}

TLXMap to_tlx_map(std::string name, std::string src, std::string tgt, const ChainMap& f) {
    return {std::move(name), std::move(src), std::move(tgt), sparse_blocks(f)};
}

// ----------------------------------------------------------------- calculus

std::string echo_calculus(const GroupSpec& spec, const BasedComplex& c, const BasedComplex& d0,
                          const IsoPair& p1, const IsoPair& p2, const IsoPair& p3) {
    TLXDocument doc;
    doc.group = spec;
    doc.complexes = {{"C", c}, {"C1", p1.tgt}, {"C2", p2.tgt}, {"D", d0}, {"D1", p3.tgt}};
    doc.maps = {to_tlx_map("f", "C", "C1", p1.f), to_tlx_map("g", "C1", "C2", p2.f),
                to_tlx_map("f3", "D", "D1", p3.f)};
    return emit_tlx(doc);
}

TrialOutcome calculus_trial(const SuiteOptions& opt, int trial) {
    Rng rng = Rng::for_trial(opt.seed, tag("calculus"), uint64_t(trial));
    GroupSpec spec = random_spec(rng, opt);
    BasedComplex c = random_complex(rng, spec);
    IsoPair p1 = conjugate(rng, c);
    IsoPair p2 = conjugate(rng, p1.tgt);
    BasedComplex d0 = random_complex(rng, spec);
    IsoPair p3 = conjugate(rng, d0);
    int shift_k = 1 + int(rng.below(3));
    int dual_n = std::max(c.top(), p1.tgt.top()) + int(rng.below(3));
    ChainMap homotoped = add_null(rng, p1.f);
    ChainMap cross = null_map(rng, d0, p1.tgt);

    BasedComplex bs = direct_sum(c, d0);
    BasedComplex bt = direct_sum(p1.tgt, p3.tgt);
    std::vector<GRMatrix> blocks;
    for (int i = 0; i <= std::max(bs.top(), bt.top()); ++i)
        blocks.push_back(block_matrix(
            spec, {{p1.f.at(i), cross.at(i)},
                   {GRMatrix(spec, p3.tgt.rank(i), c.rank(i)), p3.f.at(i)}}));
    ChainMap big{bs, bt, std::move(blocks)};
    big.validate();

    WhElement tf = torsion_map(p1.f, opt.t_cap);
    WhElement tg = torsion_map(p2.f, opt.t_cap);
    WhElement tf3 = torsion_map(p3.f, opt.t_cap);

    struct Law {
        const char* name;
        WhElement lhs, rhs;
    };
    std::vector<Law> laws;
    laws.push_back({"determinant-oracle", tf, p1.cls});
    laws.push_back({"composition", torsion_map(compose(p2.f, p1.f), opt.t_cap), tg + tf});
    laws.push_back({"homotopy-invariance", torsion_map(homotoped, opt.t_cap), tf});
    laws.push_back({"shift-sign", torsion_map(shift_map(p1.f, shift_k), opt.t_cap),
                    sign_by(tf, shift_k)});
    laws.push_back({"duality-conjugation", torsion_map(dual_map(p1.f, dual_n), opt.t_cap),
                    sign_by(tf.involute(), dual_n)});
    laws.push_back({"block-additivity", torsion_map(big, opt.t_cap), tf + tf3});
    for (const Law& law : laws) {
        if (!wh_verdict(law.lhs - law.rhs).is_trivial())
            return fail_law(law.name,
                            describe_spec(spec) + "; lhs = " + law.lhs.str() +
                                "; rhs = " + law.rhs.str(),
                            echo_calculus(spec, c, d0, p1, p2, p3));
    }
    return {};
}

// ------------------------------------------------- thickening-based instances

struct SideSpec {
    int sel = 0;  // 0 trivial, 1 twisted, 2 generalised
    std::vector<TrackedAuto> autos;
    WhElement alpha_cls;
    WhElement u;
};

SideSpec random_side(Rng& rng, const BasedComplex& a, int sel) {
    std::vector<TrackedAuto> autos;
    WhElement alpha_cls = WhElement::zero(a.spec);
    WhElement u = WhElement::zero(a.spec);
    if (sel != 0) {
        for (int i = 0; i <= a.top(); ++i) {
            autos.push_back(random_auto(rng, a.spec, a.rank(i)));
            alpha_cls = i % 2 == 0 ? alpha_cls + autos.back().cls : alpha_cls - autos.back().cls;
        }
        if (sel == 2) u = random_wh(rng, a.spec);
    }
    return {sel, std::move(autos), std::move(alpha_cls), std::move(u)};
}

ChainMap side_alpha(const BasedComplex& a, const SideSpec& s) {
    if (s.sel == 0) return identity_map(a);
    std::vector<GRMatrix> blocks;
    for (int i = 0; i <= a.top(); ++i) blocks.push_back(s.autos[size_t(i)].a);
    ChainMap f{a, a, std::move(blocks)};
    f.validate();
    return f;
}

DoubleModel build_side(const ThickeningModel& t, const SideSpec& s, int t_cap) {
    if (s.sel == 0) return build_trivial_double(t, t_cap);
    ChainMap alpha = side_alpha(t.a, s);
    if (s.sel == 1) return build_twisted_double(t, alpha, t_cap);
    return build_generalised_double(t, alpha, s.u, t_cap);
}

const char* kind_word(int sel) {
    return sel == 0 ? "trivial" : sel == 1 ? "twisted" : "generalised";
}

// lower comparison map with tracked torsion; blocks indexed 0..a.top()
struct LowerMap {
    std::vector<TrackedAuto> autos;
    WhElement cls;
};

LowerMap random_lower(Rng& rng, const BasedComplex& a) {
    std::vector<TrackedAuto> autos;
    WhElement cls = WhElement::zero(a.spec);
    for (int i = 0; i <= a.top(); ++i) {
        autos.push_back(random_auto(rng, a.spec, a.rank(i)));
        cls = i % 2 == 0 ? cls + autos.back().cls : cls - autos.back().cls;
    }
    return {std::move(autos), std::move(cls)};
}

ChainMap padded_map(const BasedComplex& src, const BasedComplex& tgt,
                    std::vector<GRMatrix> blocks) {
    int hi = std::max(src.top(), tgt.top());
    for (int i = int(blocks.size()); i <= hi; ++i)
        blocks.emplace_back(src.spec, tgt.rank(i), src.rank(i));
    ChainMap f{src, tgt, std::move(blocks)};
    f.validate();
    return f;
}

ChainMap lower_map(const BasedComplex& src, const BasedComplex& tgt, const LowerMap& lm) {
    std::vector<GRMatrix> blocks;
    for (size_t i = 0; i < lm.autos.size(); ++i) blocks.push_back(lm.autos[i].a);
    return padded_map(src, tgt, std::move(blocks));
}

std::string echo_instance(const GroupSpec& spec, const BasedComplex& a, int n,
                          const SideSpec& sm, const SideSpec& sn, const ChainMap& low,
                          const ChainMap* base_p, int base_n) {
    TLXDocument doc;
    doc.group = spec;
    doc.complexes = {{"A", a}, {"LS", low.src}, {"LT", low.tgt}};
    doc.maps = {to_tlx_map("low", "LS", "LT", low)};
    if (sm.sel != 0) doc.maps.push_back(to_tlx_map("aM", "A", "A", side_alpha(a, sm)));
    if (sn.sel != 0) doc.maps.push_back(to_tlx_map("aN", "A", "A", side_alpha(a, sn)));
    if (base_p != nullptr)
        doc.dualities.push_back({"PB", "A", base_n, sparse_blocks(*base_p)});
    TLXDoubleDecl m{"M", DoubleKind::Trivial, "A", n, "", std::nullopt, ""};
    m.kind = sm.sel == 0 ? DoubleKind::Trivial
                         : sm.sel == 1 ? DoubleKind::Twisted : DoubleKind::Generalised;
    if (sm.sel != 0) m.alpha = "aM";
    if (sm.sel == 2) m.u = sm.u.rep();
    if (base_p != nullptr) m.basep = "PB";
    TLXDoubleDecl nn{"N", DoubleKind::Trivial, "A", n, "", std::nullopt, ""};
    nn.kind = sn.sel == 0 ? DoubleKind::Trivial
                          : sn.sel == 1 ? DoubleKind::Twisted : DoubleKind::Generalised;
    if (sn.sel != 0) nn.alpha = "aN";
    if (sn.sel == 2) nn.u = sn.u.rep();
    if (base_p != nullptr) nn.basep = "PB";
    doc.doubles = {m, nn};
    return emit_tlx(doc);
}

// ------------------------------------------------------------------- split

TrialOutcome split_direct(Rng& rng, const SuiteOptions& opt) {
    GroupSpec spec = random_spec(rng, opt);
    int n = int(rng.range(std::max(2, opt.n_lo), std::max(2, opt.n_hi)));
    int lt = (n - 1) / 2;
    std::vector<int> ranks(size_t(n) + 1, 0);
    for (int i = 0; i <= lt; ++i) {
        int r = int(rng.below(3));
        ranks[size_t(i)] = r;
        ranks[size_t(n - i)] = r;
    }
    if (std::accumulate(ranks.begin(), ranks.end(), 0) == 0) {
        ranks[0] = 1;
        ranks[size_t(n)] = 1;
    }
    std::vector<GRMatrix> diffs;
    for (int i = 1; i <= n; ++i)
        diffs.emplace_back(spec, ranks[size_t(i) - 1], ranks[size_t(i)]);
    BasedComplex c = make_complex(spec, ranks, std::move(diffs));

    // strictly self-dual pairing: free on upper degrees, mirrored below
    auto symmetric_pairing = [&](std::vector<TrackedAuto>& store) {
        store.assign(size_t(n) + 1, TrackedAuto{GRMatrix(spec, 0, 0), GRMatrix(spec, 0, 0),
                                                WhElement::zero(spec)});
        std::vector<GRMatrix> blocks;
        for (int i = 0; i <= n; ++i) blocks.emplace_back(spec, ranks[size_t(i)], 0);
        for (int i = 0; i <= n; ++i) {
            if (2 * i > n) {
                store[size_t(i)] = random_auto(rng, spec, ranks[size_t(i)]);
                blocks[size_t(i)] = store[size_t(i)].a;
                blocks[size_t(n - i)] = store[size_t(i)].a.involute_transpose();
            } else if (2 * i == n) {
                blocks[size_t(i)] = GRMatrix::identity(spec, ranks[size_t(i)]);
            }
        }
        ChainMap p{dual_complex(c, n), c, std::move(blocks)};
        p.validate();
        return p;
    };
    std::vector<TrackedAuto> pa, qa;
    ChainMap pmap = symmetric_pairing(pa);
    ChainMap qmap = symmetric_pairing(qa);
    DualityPair P = make_duality_pair(c, n, pmap, opt.t_cap);
    DualityPair Q = make_duality_pair(c, n, qmap, opt.t_cap);

    // lower blocks free, upper blocks forced by f o P o dual(f) = Q
    std::vector<TrackedAuto> la(size_t(n) + 1,
                                TrackedAuto{GRMatrix(spec, 0, 0), GRMatrix(spec, 0, 0),
                                            WhElement::zero(spec)});
    WhElement x_pred = WhElement::zero(spec);
    WhElement alpha_pred = WhElement::zero(spec);
    WhElement beta_pred = WhElement::zero(spec);
    std::vector<GRMatrix> fb;
    for (int i = 0; i <= n; ++i) fb.emplace_back(spec, ranks[size_t(i)], ranks[size_t(i)]);
    for (int i = 0; i <= n; ++i) {
        if (2 * i < n) {
            la[size_t(i)] = random_auto(rng, spec, ranks[size_t(i)]);
            fb[size_t(i)] = la[size_t(i)].a;
            x_pred = i % 2 == 0 ? x_pred + la[size_t(i)].cls : x_pred - la[size_t(i)].cls;
        } else if (2 * i == n) {
            fb[size_t(i)] = GRMatrix::identity(spec, ranks[size_t(i)]);
        } else {
            fb[size_t(i)] =
                qa[size_t(i)].a * la[size_t(n - i)].inv.involute_transpose() * pa[size_t(i)].inv;
            alpha_pred = i % 2 == 0 ? alpha_pred + pa[size_t(i)].cls
                                    : alpha_pred - pa[size_t(i)].cls;
            beta_pred =
                i % 2 == 0 ? beta_pred + qa[size_t(i)].cls : beta_pred - qa[size_t(i)].cls;
        }
    }
    ChainMap f{c, c, std::move(fb)};
    f.validate();

    SplitReport rep = split_formula_check(f, P, Q, opt.t_cap);
    auto echo = [&] {
        TLXDocument doc;
        doc.group = spec;
        doc.complexes = {{"C", c}};
        doc.maps = {to_tlx_map("f", "C", "C", f)};
        doc.dualities = {{"P", "C", n, sparse_blocks(pmap)}, {"Q", "C", n, sparse_blocks(qmap)}};
        return emit_tlx(doc);
    };
    std::string ctx = describe_spec(spec) + "; n = " + std::to_string(n);
    if (!rep.verdict.is_trivial())
        return fail_law("split-formula", ctx + "; lhs = " + rep.lhs.str() +
                                             "; rhs = " + rep.rhs.str(), echo());
    if (!wh_verdict(rep.lower_torsion - x_pred).is_trivial())
        return fail_law("split-lower-torsion", ctx + "; got " + rep.lower_torsion.str() +
                                                   "; predicted " + x_pred.str(), echo());
    if (!wh_verdict(rep.alpha - alpha_pred).is_trivial())
        return fail_law("split-alpha", ctx + "; got " + rep.alpha.str() + "; predicted " +
                                           alpha_pred.str(), echo());
    if (!wh_verdict(rep.beta - beta_pred).is_trivial())
        return fail_law("split-beta", ctx + "; got " + rep.beta.str() + "; predicted " +
                                          beta_pred.str(), echo());
    return {};
}

TrialOutcome split_doubles(Rng& rng, const SuiteOptions& opt, int trial) {
    GroupSpec spec = random_spec(rng, opt);
    int k = int(rng.below(3));
    BasedComplex a = random_zero_complex(rng, spec, k, 2, true);
    int n = int(rng.range(std::max(2 * k + 2, opt.n_lo), std::max(2 * k + 2, opt.n_hi)));
    SideSpec sm = random_side(rng, a, (trial / 2) % 3);
    SideSpec sn = random_side(rng, a, (trial / 2 + 1 + int(rng.below(2))) % 3);
    RingAuto theta = random_theta(rng, spec, false);
    ThickeningModel t = make_thickening(a, n);
    DoubleModel dm = build_side(t, sm, opt.t_cap);
    DoubleModel dn = build_side(t, sn, opt.t_cap);
    LowerMap lm = random_lower(rng, a);
    ChainMap low = lower_map(lower(twist_complex(dm.complex, theta), n),
                             lower(dn.complex, n), lm);
    ChainMap f = induced_equivalence(dm, dn, low, theta, opt.t_cap);
    DualityPair Pt = twist_duality(dm.duality, theta);
    SplitReport rep = split_formula_check(f, Pt, dn.duality, opt.t_cap);

    auto echo = [&] { return echo_instance(spec, a, n, sm, sn, low, nullptr, 0); };
    std::string ctx = describe_spec(spec) + "; n = " + std::to_string(n) +
                      "; k = " + std::to_string(k) + "; kinds " + kind_word(sm.sel) + "/" +
                      kind_word(sn.sel) + "; theta: " + describe_theta(theta);
    if (!rep.verdict.is_trivial())
        return fail_law("split-formula", ctx + "; lhs = " + rep.lhs.str() +
                                             "; rhs = " + rep.rhs.str(), echo());
    if (!wh_verdict(rep.lower_torsion - lm.cls).is_trivial())
        return fail_law("split-lower-torsion", ctx + "; got " + rep.lower_torsion.str() +
                                                   "; predicted " + lm.cls.str(), echo());
    if (!wh_verdict(rep.alpha - dm.tau_polarised.transport(theta)).is_trivial())
        return fail_law("split-alpha-transport",
                        ctx + "; got " + rep.alpha.str() + "; predicted " +
                            dm.tau_polarised.transport(theta).str(), echo());
    if (!wh_verdict(rep.beta - dn.tau_polarised).is_trivial())
        return fail_law("split-beta", ctx + "; got " + rep.beta.str() + "; predicted " +
                                          dn.tau_polarised.str(), echo());
    return {};
}

TrialOutcome split_trial(const SuiteOptions& opt, int trial) {
    Rng rng = Rng::for_trial(opt.seed, tag("split"), uint64_t(trial));
    if (trial % 2 == 0) return split_direct(rng, opt);
    return split_doubles(rng, opt, trial);
}

// ----------------------------------------------------------------- theoremB

TrialOutcome theoremb_trial(const SuiteOptions& opt, int trial) {
    Rng rng = Rng::for_trial(opt.seed, tag("theoremB"), uint64_t(trial));
    GroupSpec spec = random_spec(rng, opt);
    int k = int(rng.below(3));
    BasedComplex a = random_zero_complex(rng, spec, k, 2, true);
    int n = int(rng.range(std::max(2 * k + 2, opt.n_lo), std::max(2 * k + 2, opt.n_hi)));
    SideSpec sm = random_side(rng, a, (trial % 9) / 3);
    SideSpec sn = random_side(rng, a, trial % 3);
    RingAuto theta = random_theta(rng, spec, true);
    ThickeningModel t = make_thickening(a, n);
    DoubleModel dm = build_side(t, sm, opt.t_cap);
    DoubleModel dn = build_side(t, sn, opt.t_cap);
    LowerMap lm = random_lower(rng, a);
    ChainMap low = lower_map(lower(twist_complex(dm.complex, theta), n),
                             lower(dn.complex, n), lm);
    ComparisonReport rep = theorem_b_check(dm, dn, low, theta, opt.t_cap);

    auto echo = [&] { return echo_instance(spec, a, n, sm, sn, low, nullptr, 0); };
    std::string ctx = describe_spec(spec) + "; n = " + std::to_string(n) +
                      "; k = " + std::to_string(k) + "; kinds " + kind_word(sm.sel) + "/" +
                      kind_word(sn.sel) + "; theta: " + describe_theta(theta);
    if (!rep.verdict.is_trivial())
        return fail_law("comparison-formula", ctx + "; lhs = " + rep.lhs.str() +
                                                  "; rhs = " + rep.rhs.str(), echo());
    if (!wh_verdict(rep.lower_torsion - lm.cls).is_trivial())
        return fail_law("comparison-lower-torsion",
                        ctx + "; got " + rep.lower_torsion.str() + "; predicted " +
                            lm.cls.str(), echo());
    if (!wh_verdict(rep.tau_n - dn.tau_polarised).is_trivial())
        return fail_law("comparison-tau-n", ctx + "; got " + rep.tau_n.str() + "; predicted " +
                                                dn.tau_polarised.str(), echo());
    if (!wh_verdict(rep.tau_m_transported - dm.tau_polarised.transport(theta)).is_trivial())
        return fail_law("comparison-tau-m",
                        ctx + "; got " + rep.tau_m_transported.str() + "; predicted " +
                            dm.tau_polarised.transport(theta).str(), echo());
    WhElement recomposed =
        antisymmetrize(lm.cls, n) + dn.tau_polarised - dm.tau_polarised.transport(theta);
    if (!wh_verdict(rep.rhs - recomposed).is_trivial())
        return fail_law("comparison-rhs-assembly", ctx + "; got " + rep.rhs.str() +
                                                       "; predicted " + recomposed.str(),
                        echo());
    return {};
}

// ------------------------------------------------------------------- parity

TrialOutcome parity_trial(const SuiteOptions& opt, int trial) {
    Rng rng = Rng::for_trial(opt.seed, tag("parity"), uint64_t(trial));
    GroupSpec spec = random_spec(rng, opt);
    int k = int(rng.below(3));
    std::vector<int> ranks(size_t(k) + 1, 0);
    for (int i = 0; 2 * i <= k; ++i) {
        int r = 1 + int(rng.below(2));
        ranks[size_t(i)] = r;
        ranks[size_t(k - i)] = r;
    }
    std::vector<GRMatrix> diffs;
    for (int i = 1; i <= k; ++i)
        diffs.emplace_back(spec, ranks[size_t(i) - 1], ranks[size_t(i)]);
    BasedComplex a = make_complex(spec, ranks, std::move(diffs));
    std::vector<GRMatrix> pb_blocks;
    for (int i = 0; i <= k; ++i)
        pb_blocks.push_back(GRMatrix::identity(spec, ranks[size_t(i)]));
    ChainMap pb{dual_complex(a, k), a, std::move(pb_blocks)};
    pb.validate();

    int gap = k + 2;
    if (gap % 2 == 0) ++gap;
    int n = k + gap;
    if (n + 3 <= opt.n_hi) n += 2 * int(rng.below(2));

    // base-compatible lower blocks: L_{k-i} = conj(L_i^{-1})^T, diagonal
    // w-balanced trivial units in the middle degree
    std::vector<TrackedAuto> la(size_t(k) + 1,
                                TrackedAuto{GRMatrix(spec, 0, 0), GRMatrix(spec, 0, 0),
                                            WhElement::zero(spec)});
    WhElement x_pred = WhElement::zero(spec);
    std::vector<GRMatrix> lb;
    for (int i = 0; i <= k; ++i) lb.emplace_back(spec, ranks[size_t(i)], ranks[size_t(i)]);
    for (int i = 0; i <= k; ++i) {
        if (2 * i < k) {
            la[size_t(i)] = random_auto(rng, spec, ranks[size_t(i)]);
            lb[size_t(i)] = la[size_t(i)].a;
            lb[size_t(k - i)] = la[size_t(i)].inv.involute_transpose();
            WhElement c = la[size_t(i)].cls;
            x_pred = i % 2 == 0 ? x_pred + c : x_pred - c;
            WhElement cc = -c.involute();
            x_pred = (k - i) % 2 == 0 ? x_pred + cc : x_pred - cc;
        } else if (2 * i == k) {
            GRMatrix mid = GRMatrix::identity(spec, ranks[size_t(i)]);
            for (int j = 0; j < ranks[size_t(i)]; ++j) {
                int se = spec.m > 1 ? int(rng.below(uint64_t(spec.m))) : 0;
                if (spec.w_s == -1 && se % 2 != 0) se = (se + 1) % spec.m;
                mid.set(j, j, RingElement::monomial(spec, 0, se, rng.coin() ? 1 : -1));
            }
            lb[size_t(i)] = mid;
        }
    }
    if (!in_J(x_pred, k))
        return fail_law("parity-generator", "lower torsion escaped J at level " +
                                                std::to_string(k) + ": " + x_pred.str(), "");

    SideSpec triv = random_side(rng, a, 0);
    struct Ran {
        BaseVanishingReport rep;
        RingAuto theta;
        ChainMap low;
    };
    auto run_at = [&](int amb) {
        ThickeningModel t = make_thickening(a, amb, pb, opt.t_cap);
        DoubleModel dm = build_trivial_double(t, opt.t_cap);
        DoubleModel dn = build_trivial_double(t, opt.t_cap);
        RingAuto theta = random_theta(rng, spec, false);
        ChainMap low = padded_map(lower(twist_complex(dm.complex, theta), amb),
                                  lower(dn.complex, amb), lb);
        return Ran{manifold_base_vanishing_check(dm, dn, low, theta, opt.t_cap), theta, low};
    };

    auto odd = run_at(n);
    auto echo_odd = [&] {
        return echo_instance(spec, a, n, triv, triv, odd.low, &pb, k);
    };
    std::string ctx = describe_spec(spec) + "; n = " + std::to_string(n) +
                      "; k = " + std::to_string(k) + "; theta: " + describe_theta(odd.theta);
    if (!odd.rep.odd_gap)
        return fail_law("parity-gap-flag", ctx + "; expected odd gap", echo_odd());
    if (!odd.rep.verdict.is_trivial())
        return fail_law("parity-vanishing", ctx + "; lhs = " + odd.rep.lhs.str() +
                                                "; expected " + odd.rep.expected.str(),
                        echo_odd());
    if (!wh_verdict(odd.rep.lhs).is_trivial())
        return fail_law("parity-vanishing", ctx + "; lhs = " + odd.rep.lhs.str() +
                                                "; trivial ends demand zero", echo_odd());
    if (!wh_verdict(odd.rep.lower_torsion - x_pred).is_trivial())
        return fail_law("parity-lower-torsion", ctx + "; got " + odd.rep.lower_torsion.str() +
                                                    "; predicted " + x_pred.str(), echo_odd());

    auto even = run_at(n + 1);
    auto echo_even = [&] {
        return echo_instance(spec, a, n + 1, triv, triv, even.low, &pb, k);
    };
    ctx = describe_spec(spec) + "; n = " + std::to_string(n + 1) + "; k = " +
          std::to_string(k) + "; theta: " + describe_theta(even.theta);
    if (even.rep.odd_gap)
        return fail_law("parity-gap-flag", ctx + "; expected even gap", echo_even());
    if (!even.rep.verdict.is_trivial())
        return fail_law("parity-control", ctx + "; lhs = " + even.rep.lhs.str() +
                                              "; expected " + even.rep.expected.str(),
                        echo_even());
    if (!wh_verdict(even.rep.lhs - (x_pred + x_pred)).is_trivial())
        return fail_law("parity-control-2x", ctx + "; lhs = " + even.rep.lhs.str() +
                                                 "; predicted " + (x_pred + x_pred).str(),
                        echo_even());
    return {};
}

// ------------------------------------------------------------------ doubles

TrialOutcome doubles_trial(const SuiteOptions& opt, int trial) {
    Rng rng = Rng::for_trial(opt.seed, tag("doubles"), uint64_t(trial));
    GroupSpec spec = random_spec(rng, opt);
    int k = int(rng.below(3));
    BasedComplex a = random_zero_complex(rng, spec, k, 2, true);
    int n = int(rng.range(std::max(2 * k + 2, opt.n_lo), std::max(2 * k + 2, opt.n_hi)));
    ThickeningModel t = make_thickening(a, n);

    SideSpec st = random_side(rng, a, 0);
    SideSpec sw = random_side(rng, a, 1);
    SideSpec sg = random_side(rng, a, 2);
    sg.autos = sw.autos;  // same gluing map, so the kinds are comparable
    sg.alpha_cls = sw.alpha_cls;
    WhElement u = sg.u;

    DoubleModel dt = build_side(t, st, opt.t_cap);
    DoubleModel dw = build_side(t, sw, opt.t_cap);
    DoubleModel dg = build_side(t, sg, opt.t_cap);
    SideSpec sg0 = sg;
    sg0.u = WhElement::zero(spec);
    DoubleModel dg0 = build_side(t, sg0, opt.t_cap);
    SwapLawReport swap = h_cobordism_swap_check(t, u, opt.t_cap);

    ChainMap low = identity_map(lower(dt.complex, n));
    auto echo = [&] { return echo_instance(spec, a, n, sw, sg, low, nullptr, 0); };
    std::string ctx = describe_spec(spec) + "; n = " + std::to_string(n) +
                      "; k = " + std::to_string(k) + "; u = " + u.str();

    if (!wh_verdict(dt.tau_polarised).is_trivial())
        return fail_law("kind-trivial", ctx + "; tau = " + dt.tau_polarised.str(), echo());
    if (!wh_verdict(dw.tau_polarised - (-sw.alpha_cls)).is_trivial())
        return fail_law("kind-twisted", ctx + "; tau = " + dw.tau_polarised.str() +
                                            "; predicted " + (-sw.alpha_cls).str(), echo());
    if (!wh_verdict(dg.tau_polarised - (u - sg.alpha_cls)).is_trivial())
        return fail_law("kind-generalised", ctx + "; tau = " + dg.tau_polarised.str() +
                                                "; predicted " + (u - sg.alpha_cls).str(),
                        echo());
    if (!wh_verdict(dg0.tau_polarised - dw.tau_polarised).is_trivial())
        return fail_law("kind-generalised-zero",
                        ctx + "; generalised with u = 0 gave " + dg0.tau_polarised.str() +
                            "; twisted gave " + dw.tau_polarised.str(), echo());
    if (!wh_verdict(dw.alpha_torsion - sw.alpha_cls).is_trivial())
        return fail_law("kind-alpha-torsion", ctx + "; got " + dw.alpha_torsion.str() +
                                                  "; predicted " + sw.alpha_cls.str(), echo());
    WhElement swap_pred = sign_by(u.involute(), n) - u;
    if (!swap.verdict.is_trivial())
        return fail_law("swap-law", ctx + "; lhs = " + swap.lhs.str() + "; expected " +
                                        swap.expected.str(), echo());
    if (!wh_verdict(swap.lhs - swap_pred).is_trivial())
        return fail_law("swap-law", ctx + "; lhs = " + swap.lhs.str() + "; predicted " +
                                        swap_pred.str(), echo());
    if (!wh_verdict(swap.expected - swap_pred).is_trivial())
        return fail_law("swap-expected", ctx + "; reported " + swap.expected.str() +
                                             "; predicted " + swap_pred.str(), echo());
    return {};
}

// ------------------------------------------------------------------ harness

TrialOutcome run_one(const SuiteOptions& opt, int trial) {
    try {
        if (opt.suite == "calculus") return calculus_trial(opt, trial);
        if (opt.suite == "split") return split_trial(opt, trial);
        if (opt.suite == "theoremB") return theoremb_trial(opt, trial);
        if (opt.suite == "parity") return parity_trial(opt, trial);
        return doubles_trial(opt, trial);
    } catch (const Error& e) {
        std::string kind = e.kind() == ErrKind::Input
                               ? "input"
                               : e.kind() == ErrKind::Solver ? "solver" : "internal";
        return fail_law("construction", kind + " error: " + e.what(), "");
    }
}

}  // namespace

SuiteReport run_suite(const SuiteOptions& opt) {
    const auto& names = suite_names();
    require(std::find(names.begin(), names.end(), opt.suite) != names.end(),
            "unknown suite \"" + opt.suite + "\"");
    require(opt.trials >= 1, "trials must be positive");
    require(opt.jobs >= 1, "jobs must be positive");
    require(opt.t_cap >= 1, "t-cap must be positive");
    require(opt.m_lo >= 1 && opt.m_lo <= opt.m_hi, "bad m range");
    require(opt.n_lo >= 2 && opt.n_lo <= opt.n_hi, "bad n range");

    std::vector<TrialOutcome> out(size_t(opt.trials));
    std::atomic<int> next{0};
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= opt.trials) return;
            out[size_t(i)] = run_one(opt, i);
        }
    };
    int workers = std::min(opt.jobs, opt.trials);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SuiteReport rep{opt.suite, opt.trials, opt.seed, 0, 0, std::nullopt};
    for (int i = 0; i < opt.trials; ++i) {
        if (out[size_t(i)].pass) {
            ++rep.passed;
        } else {
            ++rep.failed;
            if (!rep.first_failure)
                rep.first_failure = TrialFailure{i, out[size_t(i)].law, out[size_t(i)].detail,
                                                 out[size_t(i)].tlx};
        }
    }
    return rep;
}

}  // namespace tlab
