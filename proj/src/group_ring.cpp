#include "tlab/group_ring.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "tlab/intmat.hpp"

namespace tlab {

void GroupSpec::validate() const {
    require(m >= 1, ErrKind::Input, "group order must be >= 1");
    require(w_s == 1 || w_s == -1, ErrKind::Input, "w(s) must be +1 or -1");
    require(w_t == 1 || w_t == -1, ErrKind::Input, "w(t) must be +1 or -1");
    if (w_s == -1) require(m % 2 == 0, ErrKind::Input, "w(s) = -1 needs even group order");
    if (!has_t) require(w_t == 1, ErrKind::Input, "w(t) set but group has no t factor");
    if (m == 1) require(w_s == 1, ErrKind::Input, "w(s) set but group has no s factor");
}

GroupSpec GroupSpec::finite_part() const {
    GroupSpec f = *this;
    f.has_t = false;
    f.w_t = 1;
    return f;
}

std::string GroupSpec::describe() const {
    std::string out;
    if (has_t) out = "Cinf";
    if (m > 1) out += (out.empty() ? "" : " x ") + ("C" + std::to_string(m));
    if (out.empty()) out = "C1";
    if (w_t == -1) out += ", w(t)=-1";
    if (w_s == -1) out += ", w(s)=-1";
    return out;
}

namespace {

inline int mod_s(int se, int m) {
    int r = se % m;
    return r < 0 ? r + m : r;
}

}  // namespace

RingElement RingElement::monomial(const GroupSpec& spec, int te, int se, Int c) {
    RingElement x(spec);
    x.add_term(te, se, c);
    return x;
}

RingElement RingElement::norm_element(const GroupSpec& spec) {
    RingElement x(spec);
    for (int b = 0; b < spec.m; ++b) x.add_term(0, b, 1);
    return x;
}

Int RingElement::coeff(int te, int se) const {
    auto it = terms_.find({te, mod_s(se, spec_.m)});
    return it == terms_.end() ? Int(0) : it->second;
}

std::pair<int, int> RingElement::t_span() const {
    if (terms_.empty()) return {0, 0};
    return {terms_.begin()->first.first, terms_.rbegin()->first.first};
}

RingElement& RingElement::add_term(int te, int se, const Int& c) {
    if (sgn(c) == 0) return *this;
    require(spec_.has_t || te == 0, ErrKind::Internal, "t-power in a group without t");
    auto key = std::make_pair(te, mod_s(se, spec_.m));
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
    return *this;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
    require(a.spec_ == b.spec_, ErrKind::Internal, "mixed group specs");
    RingElement r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
    return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    require(a.spec_ == b.spec_, ErrKind::Internal, "mixed group specs");
    RingElement r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, -c);
    return r;
}

RingElement operator-(const RingElement& a) {
    RingElement r(a.spec_);
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
    return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    require(a.spec_ == b.spec_, ErrKind::Internal, "mixed group specs");
    RingElement r(a.spec_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

RingElement operator*(const Int& c, const RingElement& a) {
    RingElement r(a.spec_);
    if (sgn(c) == 0) return r;
    for (const auto& [k, v] : a.terms_) r.terms_.emplace(k, c * v);
    return r;
}

bool operator==(const RingElement& a, const RingElement& b) {
    return a.spec_ == b.spec_ && a.terms_ == b.terms_;
}

RingElement RingElement::involute() const {
    RingElement r(spec_);
    for (const auto& [k, c] : terms_) {
        auto [te, se] = k;
        int sign = 1;
        if (spec_.w_t == -1 && (te & 1)) sign = -sign;
        if (spec_.w_s == -1 && (se & 1)) sign = -sign;
        r.add_term(-te, -se, sign < 0 ? Int(-c) : c);
    }
    return r;
}

Int RingElement::augment() const {
    Int s(0);
    for (const auto& [k, c] : terms_) s += c;
    return s;
}

Int RingElement::augment_w() const {
    Int s(0);
    for (const auto& [k, c] : terms_) {
        int sign = 1;
        if (spec_.w_t == -1 && (k.first & 1)) sign = -sign;
        if (spec_.w_s == -1 && (k.second & 1)) sign = -sign;
        s += sign < 0 ? Int(-c) : c;
    }
    return s;
}

RingElement RingElement::project_t1() const {
    require(spec_.has_t, ErrKind::Internal, "project_t1 on a group without t");
    RingElement r(spec_.finite_part());
    for (const auto& [k, c] : terms_) r.add_term(0, k.second, c);
    return r;
}

std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        auto [te, se] = k;
        Int mag = sgn(c) < 0 ? Int(-c) : c;
        if (first) {
            if (sgn(c) < 0) out << "-";
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        std::string monos;
        if (se != 0) {
            monos = "s";
            if (se != 1) monos += "^" + std::to_string(se);
        }
        if (te != 0) {
            if (!monos.empty()) monos += "*";
            monos += "t";
            if (te != 1) monos += "^" + std::to_string(te);
        }
        bool show_mag = mag != 1 || monos.empty() || (first && sgn(c) < 0);
        if (monos.empty()) {
            out << mag.get_str();
        } else if (show_mag) {
            out << mag.get_str() << "*" << monos;
        } else {
            out << monos;
        }
        first = false;
    }
    return out.str();
}

RingAuto::RingAuto(GroupSpec spec_, int a_, int e_, int b_) : spec(spec_), a(a_), e(e_), b(b_) {
    spec.validate();
    if (!spec.has_t) {
        require(e == 1 && b == 0, ErrKind::Input, "t-data in an automorphism of a group without t");
    }
    require(e == 1 || e == -1, ErrKind::Input, "t must map to t or t^-1");
    a = mod_s(a, spec.m);
    b = mod_s(b, spec.m);
    require(std::gcd(a == 0 ? spec.m : a, spec.m) == 1, ErrKind::Input, "s -> s^a needs gcd(a, m) = 1");
    if (spec.w_s == -1) {
        require(a % 2 == 1, ErrKind::Input, "automorphism breaks w at s");
        require(b % 2 == 0, ErrKind::Input, "automorphism breaks w at t");
    }
}

RingElement RingAuto::apply(const RingElement& x) const {
    require(x.spec() == spec, ErrKind::Internal, "automorphism applied to foreign element");
    RingElement r(spec);
    for (const auto& [k, c] : x.terms()) {
        auto [te, se] = k;
        r.add_term(e * te, a * se + b * te, c);
    }
    return r;
}

RingAuto RingAuto::inverse() const {
    if (spec.m == 1) return RingAuto(spec, 1, e, 0);
    int ainv = -1;
    for (int x = 1; x < spec.m; ++x)
        if ((x * a) % spec.m == 1) { ainv = x; break; }
    require(ainv > 0, ErrKind::Internal, "automorphism not invertible");
    int binv = mod_s(-b * e * ainv, spec.m);
    return RingAuto(spec, ainv, e, binv);
}

bool RingAuto::is_identity() const { return mod_s(a - 1, spec.m) == 0 && e == 1 && b == 0; }

std::vector<Int> regular_rep(const RingElement& u) {
    const GroupSpec& g = u.spec();
    require(!g.has_t, ErrKind::Internal, "regular_rep needs a finite group");
    int m = g.m;
    std::vector<Int> a(size_t(m) * m, Int(0));
    for (const auto& [k, c] : u.terms()) {
        int b = k.second;
        for (int j = 0; j < m; ++j) a[size_t((b + j) % m) * m + j] = c;
    }
    return a;
}

namespace {

std::optional<RingElement> finite_inverse(const RingElement& u) {
    const GroupSpec& g = u.spec();
    int m = g.m;
    if (m == 1) {
        Int c = u.coeff(0, 0);
        if (c == 1 || c == -1) return RingElement::from_int(g, c);
        return std::nullopt;
    }
    IntSolver solver(regular_rep(u), m, m);
    std::vector<Int> e0(m, Int(0));
    e0[0] = 1;
    auto x = solver.solve(e0);
    if (!x) return std::nullopt;
    RingElement v(g);
    for (int b = 0; b < m; ++b) v.add_term(0, b, (*x)[b]);
    require(u * v == RingElement::one(g), ErrKind::Internal, "inverse candidate failed to verify");
    return v;
}

}  // namespace

std::optional<RingElement> ring_inverse(const RingElement& u) {
    if (u.is_zero()) return std::nullopt;
    const GroupSpec& g = u.spec();
    if (!g.has_t) return finite_inverse(u);
    // Units of Z[C_m][t, t^-1] are concentrated in a single t-degree: the
    // coefficient ring is reduced with connected spectrum, so no mixed-degree
    // element is invertible.
    auto [lo, hi] = u.t_span();
    if (lo != hi) return std::nullopt;
    RingElement base(g.finite_part());
    for (const auto& [k, c] : u.terms()) base.add_term(0, k.second, c);
    auto binv = finite_inverse(base);
    if (!binv) return std::nullopt;
    RingElement v(g);
    for (const auto& [k, c] : binv->terms()) v.add_term(-lo, k.second, c);
    require(u * v == RingElement::one(g), ErrKind::Internal, "inverse candidate failed to verify");
    return v;
}

bool is_unit(const RingElement& u) { return ring_inverse(u).has_value(); }

bool is_trivial_unit(const RingElement& u) {
    if (u.term_count() != 1) return false;
    const Int& c = u.terms().begin()->second;
    return c == 1 || c == -1;
}

namespace {

struct Parser {
    const GroupSpec& spec;
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void bail(const std::string& what) {
        fail_input("parse error at offset " + std::to_string(pos) + ": " + what + " in \"" + text + "\"");
    }

    bool peek_digit() { return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); }

    Int read_uint() {
        size_t start = pos;
        while (peek_digit()) ++pos;
        if (pos == start) bail("expected integer");
        return Int(text.substr(start, pos - start));
    }

    int read_signed_small() {
        int sign = 1;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            if (text[pos] == '-') sign = -1;
            ++pos;
        }
        Int v = read_uint();
        require(v.fits_sint_p(), ErrKind::Input, "exponent out of range");
        return sign * int(v.get_si());
    }

    // returns false at end of input
    bool parse_term(int sign, RingElement& acc) {
        skip_ws();
        if (pos >= text.size()) bail("expected term");
        Int c(1);
        bool saw_int = false;
        if (peek_digit()) {
            c = read_uint();
            saw_int = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            } else {
                acc.add_term(0, 0, sign < 0 ? Int(-c) : c);
                return true;
            }
        }
        int te = 0, se = 0;
        bool saw_mono = false;
        for (;;) {
            skip_ws();
            if (pos >= text.size()) break;
            char ch = text[pos];
            if (ch != 's' && ch != 't') break;
            ++pos;
            int exp = 1;
            skip_ws();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip_ws();
                exp = read_signed_small();
            }
            if (ch == 's') {
                if (spec.m == 1) bail("group has no generator s");
                se += exp;
            } else {
                if (!spec.has_t) bail("group has no generator t");
                te += exp;
            }
            saw_mono = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!saw_mono) {
            if (saw_int) bail("dangling '*'");
            bail("expected term");
        }
        acc.add_term(te, se, sign < 0 ? Int(-c) : c);
        return true;
    }
};

}  // namespace

RingElement parse_element(const GroupSpec& spec, const std::string& text) {
    spec.validate();
    Parser p{spec, text};
    RingElement acc(spec);
    p.skip_ws();
    if (p.pos >= text.size()) p.bail("empty input");
    int sign = 1;
    if (text[p.pos] == '-') {
        sign = -1;
        ++p.pos;
    } else if (text[p.pos] == '+') {
        ++p.pos;
    }
    p.skip_ws();
    if (p.pos >= text.size()) p.bail("expected term");
    if (text[p.pos] == '0' && [&] {
            size_t q = p.pos + 1;
            while (q < text.size() && std::isspace(static_cast<unsigned char>(text[q]))) ++q;
            return q == text.size();
        }()) {
        return acc;
    }
    p.parse_term(sign, acc);
    for (;;) {
        p.skip_ws();
        if (p.pos >= text.size()) break;
        char op = text[p.pos];
        if (op != '+' && op != '-') p.bail("expected '+' or '-'");
        ++p.pos;
        p.parse_term(op == '-' ? -1 : 1, acc);
    }
    return acc;
}

}  // namespace tlab
