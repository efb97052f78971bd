#include "tlab/whitehead.hpp"

#include <algorithm>

namespace tlab {

namespace {

// total order on elements: sorted term lists compared by key, then by
// coefficient magnitude with the positive sign first
bool element_less(const RingElement& a, const RingElement& b) {
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        int c = mpz_cmpabs(ia->second.get_mpz_t(), ib->second.get_mpz_t());
        if (c != 0) return c < 0;
        bool na = sgn(ia->second) < 0, nb = sgn(ib->second) < 0;
        if (na != nb) return nb;
    }
    return ia == ea && ib != eb;
}

}  // namespace

WhElement WhElement::zero(const GroupSpec& spec) {
    WhElement x(spec);
    x.rep_ = RingElement::one(spec);
    x.inv_ = RingElement::one(spec);
    return x;
}

WhElement WhElement::from_unit(RingElement u) {
    auto inv = ring_inverse(u);
    require(inv.has_value(), ErrKind::Input, "not a unit: " + u.str());
    return from_unit_with_inverse(std::move(u), std::move(*inv));
}

WhElement WhElement::from_unit_with_inverse(RingElement u, RingElement uinv) {
    WhElement x(u.spec());
    require(u * uinv == RingElement::one(u.spec()), ErrKind::Internal, "bad cached inverse");
    x.rep_ = std::move(u);
    x.inv_ = std::move(uinv);
    x.canonicalize();
    return x;
}

void WhElement::canonicalize() {
    require(!rep_.is_zero(), ErrKind::Internal, "zero is not a unit");
    if (spec_.has_t) {
        int lo = rep_.t_span().first;
        if (lo != 0) {
            rep_ = RingElement::monomial(spec_, -lo, 0, 1) * rep_;
            inv_ = RingElement::monomial(spec_, lo, 0, 1) * inv_;
        }
    }
    RingElement best = rep_, best_inv = inv_;
    for (int sign = 0; sign < 2; ++sign)
        for (int b = 0; b < spec_.m; ++b) {
            if (sign == 0 && b == 0) continue;
            RingElement cand = RingElement::monomial(spec_, 0, b, sign ? Int(-1) : Int(1)) * rep_;
            if (element_less(cand, best)) {
                best = cand;
                best_inv = RingElement::monomial(spec_, 0, -b, sign ? Int(-1) : Int(1)) * inv_;
            }
        }
    rep_ = std::move(best);
    inv_ = std::move(best_inv);
}

bool WhElement::is_zero() const { return rep_ == RingElement::one(spec_); }

WhElement operator+(const WhElement& a, const WhElement& b) {
    require(a.spec_ == b.spec_, ErrKind::Internal, "adding Wh classes over different groups");
    return WhElement::from_unit_with_inverse(a.rep_ * b.rep_, b.inv_ * a.inv_);
}

WhElement operator-(const WhElement& a) {
    return WhElement::from_unit_with_inverse(a.inv_, a.rep_);
}

WhElement operator-(const WhElement& a, const WhElement& b) { return a + (-b); }

bool operator==(const WhElement& a, const WhElement& b) {
    return a.spec_ == b.spec_ && a.rep_ == b.rep_;
}

WhElement WhElement::involute() const {
    return from_unit_with_inverse(rep_.involute(), inv_.involute());
}

WhElement WhElement::transport(const RingAuto& theta) const {
    return from_unit_with_inverse(theta.apply(rep_), theta.apply(inv_));
}

WhElement sign_by(const WhElement& x, int n) { return (n % 2 == 0) ? x : -x; }

WhElement wh_of_matrix(const GRMatrix& a) {
    RingElement det = gr_det(a);
    return WhElement::from_unit(std::move(det));
}

bool in_J(const WhElement& x, int n) { return (x + sign_by(x.involute(), n)).is_zero(); }

WhElement antisymmetrize(const WhElement& x, int n) { return x - sign_by(x.involute(), n); }

WhElement bhs_project_fin(const WhElement& x) {
    const GroupSpec& g = x.spec();
    require(g.has_t, ErrKind::Input, "projection needs a t factor");
    require(g.w_t == 1, ErrKind::Input, "projection t -> 1 is w-compatible only for w(t) = +1");
    return WhElement::from_unit_with_inverse(x.rep().project_t1(), x.rep_inverse().project_t1());
}

Verdict wh_verdict(const WhElement& x) {
    if (x.is_zero()) return Verdict::trivial("class of the trivial unit " + x.rep().str());
    return Verdict::nontrivial("canonical representative " + x.str());
}

Verdict tate_equal(const WhElement& x, const WhElement& y, int n, const TateContext& ctx, int bound) {
    require(bound >= 0, ErrKind::Input, "negative search bound");
    require(ctx.generators.size() <= 4, ErrKind::Input, "tate_equal supports at most 4 generators");
    WhElement target = x - y;
    if (target.is_zero()) return Verdict::trivial("classes agree in Wh");

    // powers[i][c + bound] = c * antisymmetrize(g_i, n)
    std::vector<std::vector<WhElement>> powers;
    for (const auto& g : ctx.generators) {
        WhElement a = antisymmetrize(g, n);
        std::vector<WhElement> row(size_t(2 * bound) + 1, WhElement::zero(target.spec()));
        for (int c = 1; c <= bound; ++c) {
            row[size_t(bound + c)] = row[size_t(bound + c - 1)] + a;
            row[size_t(bound - c)] = row[size_t(bound - c + 1)] - a;
        }
        powers.push_back(std::move(row));
    }

    std::vector<int> coeff(powers.size(), -bound);
    if (!powers.empty()) {
        for (;;) {
            WhElement acc = WhElement::zero(target.spec());
            for (size_t i = 0; i < powers.size(); ++i) acc = acc + powers[i][size_t(coeff[i] + bound)];
            if (acc == target) {
                std::string w = "difference =";
                for (size_t i = 0; i < powers.size(); ++i)
                    w += " " + std::to_string(coeff[i]) + "*asym(" + ctx.generators[i].str() + ")";
                return Verdict::trivial(w);
            }
            size_t k = 0;
            while (k < coeff.size() && coeff[k] == bound) coeff[k++] = -bound;
            if (k == coeff.size()) break;
            ++coeff[k];
        }
    }
    if (ctx.complete) return Verdict::nontrivial("search over the declared I_n generators exhausted");
    return Verdict::unknown("bounded I_n search exhausted with an incomplete context");
}

Verdict tate_equal(const TateClass& a, const TateClass& b) {
    require(a.n == b.n, ErrKind::Input, "Tate classes live at different levels");
    require(a.rep.spec() == b.rep.spec(), ErrKind::Input, "Tate classes over different groups");
    bool same_ctx = a.ctx.complete == b.ctx.complete &&
                    a.ctx.generators.size() == b.ctx.generators.size();
    for (size_t i = 0; same_ctx && i < a.ctx.generators.size(); ++i)
        same_ctx = a.ctx.generators[i] == b.ctx.generators[i];
    require(same_ctx, ErrKind::Input, "Tate classes carry different contexts");
    return tate_equal(a.rep, b.rep, a.n, a.ctx, std::max(a.bound, b.bound));
}

}  // namespace tlab
