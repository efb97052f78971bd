#include "tlab/grmatrix.hpp"

#include <algorithm>
#include <sstream>

#include "tlab/intmat.hpp"

namespace tlab {

GRMatrix::GRMatrix(GroupSpec spec, int rows, int cols)
    : spec_(spec), rows_(rows), cols_(cols), e_(size_t(rows) * cols, RingElement(spec)) {
    require(rows >= 0 && cols >= 0, ErrKind::Internal, "negative matrix shape");
}

GRMatrix GRMatrix::identity(const GroupSpec& spec, int n) {
    return scalar(spec, n, RingElement::one(spec));
}

GRMatrix GRMatrix::scalar(const GroupSpec& spec, int n, const RingElement& u) {
    GRMatrix a(spec, n, n);
    for (int i = 0; i < n; ++i) a.set(i, i, u);
    return a;
}

const RingElement& GRMatrix::at(int r, int c) const {
    require(r >= 0 && r < rows_ && c >= 0 && c < cols_, ErrKind::Internal, "matrix index out of range");
    return e_[size_t(r) * cols_ + c];
}

void GRMatrix::set(int r, int c, RingElement v) {
    require(r >= 0 && r < rows_ && c >= 0 && c < cols_, ErrKind::Internal, "matrix index out of range");
    require(v.spec() == spec_, ErrKind::Internal, "mixed group specs");
    e_[size_t(r) * cols_ + c] = std::move(v);
}

bool GRMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool GRMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    RingElement one = RingElement::one(spec_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!(at(i, j) == (i == j ? one : RingElement::zero(spec_)))) return false;
    return true;
}

GRMatrix GRMatrix::transpose() const {
    GRMatrix r(spec_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

GRMatrix GRMatrix::involute_transpose() const {
    GRMatrix r(spec_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j).involute());
    return r;
}

GRMatrix GRMatrix::apply(const RingAuto& theta) const {
    GRMatrix r(spec_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, theta.apply(at(i, j)));
    return r;
}

GRMatrix GRMatrix::submatrix(const std::vector<int>& row_ids, const std::vector<int>& col_ids) const {
    GRMatrix r(spec_, int(row_ids.size()), int(col_ids.size()));
    for (int i = 0; i < r.rows_; ++i)
        for (int j = 0; j < r.cols_; ++j) r.set(i, j, at(row_ids[i], col_ids[j]));
    return r;
}

GRMatrix operator+(const GRMatrix& a, const GRMatrix& b) {
    require(a.spec_ == b.spec_ && a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrKind::Internal,
            "matrix shape mismatch in +");
    GRMatrix r(a.spec_, a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
}

GRMatrix operator-(const GRMatrix& a, const GRMatrix& b) {
    require(a.spec_ == b.spec_ && a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrKind::Internal,
            "matrix shape mismatch in -");
    GRMatrix r(a.spec_, a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
    return r;
}

GRMatrix operator-(const GRMatrix& a) {
    GRMatrix r(a.spec_, a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = -a.e_[k];
    return r;
}

GRMatrix operator*(const GRMatrix& a, const GRMatrix& b) {
    require(a.spec_ == b.spec_, ErrKind::Internal, "mixed group specs in *");
    require(a.cols_ == b.rows_, ErrKind::Internal, "matrix shape mismatch in *");
    GRMatrix r(a.spec_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const RingElement& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                const RingElement& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                r.set(i, j, r.at(i, j) + aik * bkj);
            }
        }
    return r;
}

GRMatrix operator*(const RingElement& c, const GRMatrix& a) {
    require(c.spec() == a.spec_, ErrKind::Internal, "mixed group specs in scalar *");
    GRMatrix r(a.spec_, a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = c * a.e_[k];
    return r;
}

bool operator==(const GRMatrix& a, const GRMatrix& b) {
    return a.spec_ == b.spec_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

std::string GRMatrix::str() const {
    std::ostringstream out;
    out << rows_ << "x" << cols_ << " [";
    for (int i = 0; i < rows_; ++i) {
        out << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) out << (j ? ", " : "") << at(i, j).str();
    }
    out << "]";
    return out.str();
}

GRMatrix direct_sum(const GRMatrix& a, const GRMatrix& b) {
    require(a.spec() == b.spec(), ErrKind::Internal, "mixed group specs in direct_sum");
    GRMatrix r(a.spec(), a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) r.set(a.rows() + i, a.cols() + j, b.at(i, j));
    return r;
}

GRMatrix block_matrix(const GroupSpec& spec, const std::vector<std::vector<GRMatrix>>& grid) {
    require(!grid.empty() && !grid[0].empty(), ErrKind::Internal, "empty block grid");
    int brows = int(grid.size()), bcols = int(grid[0].size());
    std::vector<int> rh(brows), cw(bcols, -1);
    int rows = 0, cols = 0;
    for (int i = 0; i < brows; ++i) {
        require(int(grid[i].size()) == bcols, ErrKind::Internal, "ragged block grid");
        rh[i] = grid[i][0].rows();
        for (int j = 0; j < bcols; ++j) {
            require(grid[i][j].rows() == rh[i], ErrKind::Internal, "block row height mismatch");
            if (cw[j] < 0) cw[j] = grid[i][j].cols();
            require(grid[i][j].cols() == cw[j], ErrKind::Internal, "block column width mismatch");
        }
        rows += rh[i];
    }
    for (int j = 0; j < bcols; ++j) cols += cw[j];
    GRMatrix r(spec, rows, cols);
    int roff = 0;
    for (int i = 0; i < brows; ++i) {
        int coff = 0;
        for (int j = 0; j < bcols; ++j) {
            for (int p = 0; p < rh[i]; ++p)
                for (int q = 0; q < cw[j]; ++q) r.set(roff + p, coff + q, grid[i][j].at(p, q));
            coff += cw[j];
        }
        roff += rh[i];
    }
    return r;
}

// ---------------------------------------------------------------------------
// determinant

namespace {

Int l1_norm(const RingElement& x) {
    Int s(0);
    for (const auto& [k, c] : x.terms()) s += sgn(c) < 0 ? Int(-c) : c;
    return s;
}

uint64_t mod_of(const Int& c, uint64_t p) {
    return mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p));
}

uint64_t det_mod_p(std::vector<uint64_t>& a, int n, uint64_t p) {
    uint64_t det = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (a[size_t(r) * n + k] % p != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int c = k; c < n; ++c) std::swap(a[size_t(piv) * n + c], a[size_t(k) * n + c]);
            det = p - det;
            if (det == p) det = 0;
        }
        uint64_t pv = a[size_t(k) * n + k] % p;
        det = mulmod_u64(det, pv, p);
        uint64_t pinv = invmod_u64(pv, p);
        for (int r = k + 1; r < n; ++r) {
            uint64_t f = mulmod_u64(a[size_t(r) * n + k] % p, pinv, p);
            if (f == 0) continue;
            for (int c = k; c < n; ++c) {
                uint64_t sub = mulmod_u64(f, a[size_t(k) * n + c] % p, p);
                uint64_t& v = a[size_t(r) * n + c];
                v = (v % p + p - sub) % p;
            }
        }
    }
    return det % p;
}

uint64_t root_of_unity(uint64_t p, int m) {
    if (m == 1) return 1;
    std::vector<int> qs;
    int mm = m;
    for (int q = 2; q * q <= mm; ++q)
        while (mm % q == 0) {
            if (qs.empty() || qs.back() != q) qs.push_back(q);
            mm /= q;
        }
    if (mm > 1) qs.push_back(mm);
    for (uint64_t c = 2;; ++c) {
        uint64_t w = powmod_u64(c, (p - 1) / uint64_t(m), p);
        if (w == 1) continue;
        bool ok = true;
        for (int q : qs)
            if (powmod_u64(w, uint64_t(m / q), p) == 1) { ok = false; break; }
        if (ok) return w;
    }
}

// coefficients of the degree <= n-1 polynomial through (xs[i], vs[i]) mod p
std::vector<uint64_t> interpolate_mod_p(const std::vector<uint64_t>& xs, const std::vector<uint64_t>& vs,
                                        uint64_t p) {
    int n = int(xs.size());
    // master = prod (X - xs[i])
    std::vector<uint64_t> master(size_t(n) + 1, 0);
    master[0] = 1;
    for (int i = 0; i < n; ++i) {
        uint64_t xi = xs[i] % p;
        for (int k = i + 1; k >= 1; --k) {
            uint64_t lowered = mulmod_u64(master[size_t(k)], xi, p);
            master[size_t(k)] = (master[size_t(k - 1)] + p - lowered) % p;
        }
        master[0] = mulmod_u64(master[0], (p - xi) % p, p);
    }
    std::vector<uint64_t> out(size_t(n), 0);
    std::vector<uint64_t> q(size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        uint64_t xi = xs[i] % p;
        // q = master / (X - xi) by synthetic division, degree n-1
        uint64_t carry = 0;
        for (int k = n; k >= 1; --k) {
            uint64_t coeff = (master[size_t(k)] + mulmod_u64(carry, xi, p)) % p;
            q[size_t(k - 1)] = coeff;
            carry = coeff;
        }
        // scale = vs[i] / q(xi)
        uint64_t qx = 0;
        for (int k = n - 1; k >= 0; --k) qx = (mulmod_u64(qx, xi, p) + q[size_t(k)]) % p;
        uint64_t scale = mulmod_u64(vs[i] % p, invmod_u64(qx, p), p);
        for (int k = 0; k < n; ++k) out[size_t(k)] = (out[size_t(k)] + mulmod_u64(scale, q[size_t(k)], p)) % p;
    }
    return out;
}

}  // namespace

RingElement gr_det(const GRMatrix& a) {
    require(a.rows() == a.cols(), ErrKind::Internal, "determinant of a non-square matrix");
    const GroupSpec& g = a.spec();
    int n = a.rows();
    if (n == 0) return RingElement::one(g);

    Int bound(1);
    int tlo = 0, thi = 0;
    for (int i = 0; i < n; ++i) {
        Int rowsum(0);
        int rlo = 0, rhi = 0;
        bool seen = false;
        for (int j = 0; j < n; ++j) {
            const RingElement& x = a.at(i, j);
            if (x.is_zero()) continue;
            rowsum += l1_norm(x);
            auto [lo, hi] = x.t_span();
            if (!seen) {
                rlo = lo;
                rhi = hi;
                seen = true;
            } else {
                rlo = std::min(rlo, lo);
                rhi = std::max(rhi, hi);
            }
        }
        if (!seen) return RingElement::zero(g);
        bound *= rowsum;
        tlo += rlo;
        thi += rhi;
    }
    if (!g.has_t) tlo = thi = 0;

    int m = g.m;
    int npts = thi - tlo + 1;

    std::vector<uint64_t> primes;
    Int prod(1);
    {
        uint64_t top = (uint64_t(1) << 62) - 1;
        uint64_t p = top - ((top - 1) % uint64_t(m));
        while (prod <= 2 * bound) {
            while (!is_prime_u64(p)) p -= uint64_t(m);
            primes.push_back(p);
            prod *= Int(static_cast<unsigned long>(p));
            p -= uint64_t(m);
        }
    }

    // residues[prime][(k, b)] with k the t-offset and b the s-exponent
    std::vector<std::vector<uint64_t>> residues(primes.size(),
                                                std::vector<uint64_t>(size_t(npts) * m, 0));
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        uint64_t p = primes[pi];
        uint64_t w = root_of_unity(p, m);
        std::vector<uint64_t> xs(static_cast<size_t>(npts), 0);
        for (int e = 0; e < npts; ++e) xs[size_t(e)] = uint64_t(e + 1);
        std::vector<std::vector<uint64_t>> ghat(static_cast<size_t>(m), std::vector<uint64_t>{});
        std::vector<uint64_t> mat(size_t(n) * n);
        for (int j = 0; j < m; ++j) {
            uint64_t sval = powmod_u64(w, uint64_t(j), p);
            std::vector<uint64_t> vals(static_cast<size_t>(npts), 0);
            for (int e = 0; e < npts; ++e) {
                uint64_t yval = xs[size_t(e)];
                uint64_t yinv = g.has_t ? invmod_u64(yval, p) : 1;
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) {
                        uint64_t acc = 0;
                        for (const auto& [k, coeff] : a.at(r, c).terms()) {
                            auto [te, se] = k;
                            uint64_t v = mod_of(coeff, p);
                            v = mulmod_u64(v, powmod_u64(sval, uint64_t(se), p), p);
                            if (te > 0)
                                v = mulmod_u64(v, powmod_u64(yval, uint64_t(te), p), p);
                            else if (te < 0)
                                v = mulmod_u64(v, powmod_u64(yinv, uint64_t(-te), p), p);
                            acc = (acc + v) % p;
                        }
                        mat[size_t(r) * n + c] = acc;
                    }
                uint64_t d = det_mod_p(mat, n, p);
                if (g.has_t) {
                    // normalise to the polynomial det * t^{-tlo}
                    if (tlo > 0)
                        d = mulmod_u64(d, powmod_u64(yinv, uint64_t(tlo), p), p);
                    else if (tlo < 0)
                        d = mulmod_u64(d, powmod_u64(yval, uint64_t(-tlo), p), p);
                }
                vals[size_t(e)] = d;
            }
            ghat[size_t(j)] = npts == 1 ? vals : interpolate_mod_p(xs, vals, p);
        }
        uint64_t minv = invmod_u64(uint64_t(m), p);
        uint64_t winv = m == 1 ? 1 : powmod_u64(w, uint64_t(m - 1), p);
        for (int k = 0; k < npts; ++k)
            for (int b = 0; b < m; ++b) {
                uint64_t acc = 0;
                for (int j = 0; j < m; ++j) {
                    uint64_t ph = powmod_u64(winv, uint64_t((j * b) % m), p);
                    acc = (acc + mulmod_u64(ghat[size_t(j)][size_t(k)], ph, p)) % p;
                }
                residues[pi][size_t(k) * m + b] = mulmod_u64(acc, minv, p);
            }
    }

    RingElement out(g);
    Int half = prod / 2;
    for (int k = 0; k < npts; ++k)
        for (int b = 0; b < m; ++b) {
            Int x(0), mod(1);
            for (size_t pi = 0; pi < primes.size(); ++pi) {
                Int p(static_cast<unsigned long>(primes[pi]));
                Int r(static_cast<unsigned long>(residues[pi][size_t(k) * m + b]));
                // x' = x + mod * ((r - x) / mod  (mod p))
                Int diff = r - x;
                Int minv_p;
                require(mpz_invert(minv_p.get_mpz_t(), mod.get_mpz_t(), p.get_mpz_t()) != 0,
                        ErrKind::Internal, "CRT moduli not coprime");
                Int step = diff * minv_p;
                mpz_fdiv_r(step.get_mpz_t(), step.get_mpz_t(), p.get_mpz_t());
                x += mod * step;
                mod *= p;
            }
            if (x > half) x -= prod;
            out.add_term(tlo + k, b, x);
        }
    return out;
}

// ---------------------------------------------------------------------------
// flattened linear solving

namespace {

struct Window {
    int lo = 0, hi = 0, m = 1;
    int count() const { return (hi - lo + 1) * m; }
    int idx(int te, int se) const { return (te - lo) * m + se; }
    bool contains(int te) const { return te >= lo && te <= hi; }
};

std::pair<int, int> matrix_t_span(const GRMatrix& a) {
    int lo = 0, hi = 0;
    bool seen = false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            auto [l, h] = a.at(i, j).t_span();
            if (!seen) {
                lo = l;
                hi = h;
                seen = true;
            } else {
                lo = std::min(lo, l);
                hi = std::max(hi, h);
            }
        }
    return {lo, hi};
}

GRMatrix unflatten(const GroupSpec& g, int rows, int cols, const Window& w, const std::vector<Int>& x,
                   size_t base) {
    GRMatrix r(g, rows, cols);
    for (int p = 0; p < rows; ++p)
        for (int q = 0; q < cols; ++q) {
            RingElement v(g);
            for (int te = w.lo; te <= w.hi; ++te)
                for (int se = 0; se < w.m; ++se) {
                    const Int& c = x[base + size_t((p * cols + q) * w.count() + w.idx(te, se))];
                    if (sgn(c) != 0) v.add_term(te, se, c);
                }
            r.set(p, q, v);
        }
    return r;
}

}  // namespace

std::optional<GRMatrix> solve_AX_B(const GRMatrix& a, const GRMatrix& b, int t_cap) {
    require(a.spec() == b.spec(), ErrKind::Internal, "mixed group specs in solve");
    require(a.rows() == b.rows(), ErrKind::Internal, "shape mismatch in solve");
    const GroupSpec& g = a.spec();
    int m = g.m;

    auto [alo, ahi] = matrix_t_span(a);
    auto [blo, bhi] = matrix_t_span(b);
    int ulo = 0, uhi = 0;
    if (g.has_t) {
        ulo = std::min(0, blo - ahi);
        uhi = std::max(0, bhi - alo);
    }

    for (;;) {
        Window uw{ulo, uhi, m};
        Window ew{g.has_t ? std::min(blo, alo + ulo) : 0, g.has_t ? std::max(bhi, ahi + uhi) : 0, m};

        int rows = a.rows() * ew.count();
        int cols = a.cols() * uw.count();
        std::vector<Int> flat(size_t(rows) * cols, Int(0));
        for (int i = 0; i < a.rows(); ++i)
            for (int p = 0; p < a.cols(); ++p) {
                const RingElement& el = a.at(i, p);
                if (el.is_zero()) continue;
                for (int te = uw.lo; te <= uw.hi; ++te)
                    for (int se = 0; se < m; ++se) {
                        int col = p * uw.count() + uw.idx(te, se);
                        for (const auto& [k, c] : el.terms()) {
                            int rte = k.first + te;
                            int rse = (k.second + se) % m;
                            require(ew.contains(rte), ErrKind::Internal, "equation window too small");
                            flat[size_t(i * ew.count() + ew.idx(rte, rse)) * cols + col] += c;
                        }
                    }
            }
        IntSolver solver(std::move(flat), rows, cols);

        GRMatrix x(g, a.cols(), b.cols());
        bool ok = true;
        for (int q = 0; q < b.cols() && ok; ++q) {
            std::vector<Int> rhs(size_t(rows), Int(0));
            for (int i = 0; i < b.rows(); ++i)
                for (const auto& [k, c] : b.at(i, q).terms()) {
                    require(ew.contains(k.first), ErrKind::Internal, "rhs outside equation window");
                    rhs[size_t(i * ew.count() + ew.idx(k.first, k.second))] = c;
                }
            auto sol = solver.solve(rhs);
            if (!sol) {
                ok = false;
                break;
            }
            for (int p = 0; p < a.cols(); ++p) {
                RingElement v(g);
                for (int te = uw.lo; te <= uw.hi; ++te)
                    for (int se = 0; se < m; ++se) {
                        const Int& c = (*sol)[size_t(p * uw.count() + uw.idx(te, se))];
                        if (sgn(c) != 0) v.add_term(te, se, c);
                    }
                x.set(p, q, v);
            }
        }
        if (ok) {
            require(a * x == b, ErrKind::Internal, "solver produced a bad solution");
            return x;
        }
        if (!g.has_t) return std::nullopt;
        int width = uhi - ulo + 1;
        if (2 * width > t_cap) return std::nullopt;
        ulo -= width;
        uhi += width;
    }
}

std::optional<GRMatrix> solve_XA_B(const GRMatrix& a, const GRMatrix& b, int t_cap) {
    auto xt = solve_AX_B(a.transpose(), b.transpose(), t_cap);
    if (!xt) return std::nullopt;
    return xt->transpose();
}

RingSystem::RingSystem(GroupSpec spec) : spec_(spec) { spec_.validate(); }

int RingSystem::add_unknown(int rows, int cols) {
    require(rows > 0 && cols > 0, ErrKind::Internal, "unknown with empty shape");
    shapes_.push_back({rows, cols});
    return int(shapes_.size()) - 1;
}

void RingSystem::add_equation(std::vector<Term> terms, GRMatrix rhs) {
    for (const auto& t : terms) {
        require(t.unknown >= 0 && t.unknown < int(shapes_.size()), ErrKind::Internal, "bad unknown handle");
        require(t.left.rows() == rhs.rows() && t.right.cols() == rhs.cols(), ErrKind::Internal,
                "equation shape mismatch");
        require(t.left.cols() == shapes_[size_t(t.unknown)].first &&
                    t.right.rows() == shapes_[size_t(t.unknown)].second,
                ErrKind::Internal, "term shape mismatch");
    }
    eqs_.push_back({std::move(terms), std::move(rhs)});
}

std::optional<std::vector<GRMatrix>> RingSystem::attempt(int lo, int hi) const {
    int m = spec_.m;
    Window uw{lo, hi, m};

    std::vector<size_t> var_base(shapes_.size() + 1, 0);
    for (size_t u = 0; u < shapes_.size(); ++u)
        var_base[u + 1] = var_base[u] + size_t(shapes_[u].first * shapes_[u].second * uw.count());
    size_t nvars = var_base.back();

    // per-equation windows and row offsets
    std::vector<Window> ew(eqs_.size());
    std::vector<size_t> row_base(eqs_.size() + 1, 0);
    for (size_t e = 0; e < eqs_.size(); ++e) {
        auto [rlo, rhi] = matrix_t_span(eqs_[e].rhs);
        int elo = rlo, ehi = rhi;
        for (const auto& t : eqs_[e].terms) {
            auto [llo, lhi] = matrix_t_span(t.left);
            auto [plo, phi] = matrix_t_span(t.right);
            elo = std::min(elo, llo + plo + lo);
            ehi = std::max(ehi, lhi + phi + hi);
        }
        if (!spec_.has_t) elo = ehi = 0;
        ew[e] = Window{elo, ehi, m};
        row_base[e + 1] = row_base[e] + size_t(eqs_[e].rhs.rows() * eqs_[e].rhs.cols() * ew[e].count());
    }
    size_t nrows = row_base.back();

    std::vector<Int> flat(nrows * nvars, Int(0));
    std::vector<Int> rhs(nrows, Int(0));
    for (size_t e = 0; e < eqs_.size(); ++e) {
        const Eq& eq = eqs_[e];
        int ecols = eq.rhs.cols();
        auto row_of = [&](int i, int j, int te, int se) {
            return row_base[e] + size_t((i * ecols + j) * ew[e].count() + ew[e].idx(te, se));
        };
        for (int i = 0; i < eq.rhs.rows(); ++i)
            for (int j = 0; j < ecols; ++j)
                for (const auto& [k, c] : eq.rhs.at(i, j).terms()) rhs[row_of(i, j, k.first, k.second)] = c;
        for (const auto& t : eq.terms) {
            auto [urows, ucols] = shapes_[size_t(t.unknown)];
            for (int i = 0; i < t.left.rows(); ++i)
                for (int p = 0; p < urows; ++p) {
                    if (t.left.at(i, p).is_zero()) continue;
                    for (int q = 0; q < ucols; ++q)
                        for (int j = 0; j < t.right.cols(); ++j) {
                            if (t.right.at(q, j).is_zero()) continue;
                            RingElement prod = t.left.at(i, p) * t.right.at(q, j);
                            if (prod.is_zero()) continue;
                            for (int te = lo; te <= hi; ++te)
                                for (int se = 0; se < m; ++se) {
                                    size_t col = var_base[size_t(t.unknown)] +
                                                 size_t((p * ucols + q) * uw.count() + uw.idx(te, se));
                                    for (const auto& [k, c] : prod.terms()) {
                                        size_t row = row_of(i, j, k.first + te, (k.second + se) % m);
                                        flat[row * nvars + col] += c;
                                    }
                                }
                        }
                }
        }
    }

    IntSolver solver(std::move(flat), int(nrows), int(nvars));
    auto sol = solver.solve(rhs);
    if (!sol) return std::nullopt;

    std::vector<GRMatrix> out;
    out.reserve(shapes_.size());
    for (size_t u = 0; u < shapes_.size(); ++u)
        out.push_back(unflatten(spec_, shapes_[u].first, shapes_[u].second, uw, *sol, var_base[u]));

    for (const auto& eq : eqs_) {
        GRMatrix acc(spec_, eq.rhs.rows(), eq.rhs.cols());
        for (const auto& t : eq.terms) acc = acc + t.left * out[size_t(t.unknown)] * t.right;
        require(acc == eq.rhs, ErrKind::Internal, "system solution failed to verify");
    }
    return out;
}

std::optional<std::vector<GRMatrix>> RingSystem::solve(int t_cap) const {
    if (!spec_.has_t) return attempt(0, 0);
    int lo = 0, hi = 0;
    for (const auto& eq : eqs_) {
        auto [rlo, rhi] = matrix_t_span(eq.rhs);
        lo = std::min(lo, rlo);
        hi = std::max(hi, rhi);
        for (const auto& t : eq.terms) {
            auto [llo, lhi] = matrix_t_span(t.left);
            auto [plo, phi] = matrix_t_span(t.right);
            lo = std::min(lo, rlo - lhi - phi);
            hi = std::max(hi, rhi - llo - plo);
        }
    }
    for (;;) {
        auto got = attempt(lo, hi);
        if (got) return got;
        int width = hi - lo + 1;
        if (2 * width > t_cap) return std::nullopt;
        lo -= width;
        hi += width;
    }
}

}  // namespace tlab
