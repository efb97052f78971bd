#include "tlab/intmat.hpp"

#include <algorithm>
#include <cstdlib>

namespace tlab {

namespace {

struct Ovf {};  // thrown by the checked 64-bit path, caught by the ctor

inline int64_t ck_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Ovf{};
    return r;
}
inline int64_t ck_sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Ovf{};
    return r;
}
inline int64_t ck_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Ovf{};
    return r;
}
inline int64_t ck_neg(int64_t a) { return ck_sub(0, a); }

inline int64_t to_i64(const Int& v) {
    if (!v.fits_slong_p()) throw Ovf{};
    return int64_t(mpz_get_si(v.get_mpz_t()));
}

}  // namespace

IntSolver::IntSolver(std::vector<Int> a, int rows, int cols)
    : rows_(rows), cols_(cols) {
    try {
        build_i64(a);
    } catch (const Ovf&) {
        piv_.clear();
        rank_ = 0;
        build_big(a);
    }
}

void IntSolver::build_i64(const std::vector<Int>& a) {
    std::vector<int64_t> h(size_t(rows_) * cols_), u(size_t(cols_) * cols_, 0);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) h[size_t(c) * rows_ + r] = to_i64(a[size_t(r) * cols_ + c]);
    for (int c = 0; c < cols_; ++c) u[size_t(c) * cols_ + c] = 1;

    auto colop = [&](int dst, int src, int64_t q, int fromrow) {
        // col dst -= q * col src
        int64_t* hd = &h[size_t(dst) * rows_];
        int64_t* hs = &h[size_t(src) * rows_];
        for (int r = fromrow; r < rows_; ++r) hd[r] = ck_sub(hd[r], ck_mul(q, hs[r]));
        int64_t* ud = &u[size_t(dst) * cols_];
        int64_t* us = &u[size_t(src) * cols_];
        for (int r = 0; r < cols_; ++r) ud[r] = ck_sub(ud[r], ck_mul(q, us[r]));
    };

    int pc = 0;
    for (int r = 0; r < rows_ && pc < cols_; ++r) {
        for (;;) {
            int jmin = -1;
            int nnz = 0;
            for (int j = pc; j < cols_; ++j) {
                int64_t v = h[size_t(j) * rows_ + r];
                if (v == 0) continue;
                ++nnz;
                if (jmin < 0 || std::llabs(v) < std::llabs(h[size_t(jmin) * rows_ + r])) jmin = j;
            }
            if (nnz == 0) break;
            if (nnz == 1) {
                if (h[size_t(jmin) * rows_ + r] < 0) {
                    int64_t* hc = &h[size_t(jmin) * rows_];
                    for (int k = r; k < rows_; ++k) hc[k] = ck_neg(hc[k]);
                    int64_t* uc = &u[size_t(jmin) * cols_];
                    for (int k = 0; k < cols_; ++k) uc[k] = ck_neg(uc[k]);
                }
                std::swap_ranges(h.begin() + size_t(jmin) * rows_, h.begin() + size_t(jmin + 1) * rows_,
                                 h.begin() + size_t(pc) * rows_);
                std::swap_ranges(u.begin() + size_t(jmin) * cols_, u.begin() + size_t(jmin + 1) * cols_,
                                 u.begin() + size_t(pc) * cols_);
                piv_.push_back({r, pc});
                ++pc;
                break;
            }
            int64_t pv = h[size_t(jmin) * rows_ + r];
            for (int j = pc; j < cols_; ++j) {
                if (j == jmin) continue;
                int64_t v = h[size_t(j) * rows_ + r];
                if (v == 0) continue;
                colop(j, jmin, v / pv, r);
            }
        }
    }
    rank_ = int(piv_.size());
    h_.assign(h.begin(), h.end());
    u_.assign(u.begin(), u.end());
}

void IntSolver::build_big(const std::vector<Int>& a) {
    h_.assign(size_t(rows_) * cols_, Int(0));
    u_.assign(size_t(cols_) * cols_, Int(0));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) h_[size_t(c) * rows_ + r] = a[size_t(r) * cols_ + c];
    for (int c = 0; c < cols_; ++c) u_[size_t(c) * cols_ + c] = 1;

    Int q;
    auto colop = [&](int dst, int src, const Int& qq, int fromrow) {
        Int* hd = &h_[size_t(dst) * rows_];
        Int* hs = &h_[size_t(src) * rows_];
        for (int r = fromrow; r < rows_; ++r)
            mpz_submul(hd[r].get_mpz_t(), qq.get_mpz_t(), hs[r].get_mpz_t());
        Int* ud = &u_[size_t(dst) * cols_];
        Int* us = &u_[size_t(src) * cols_];
        for (int r = 0; r < cols_; ++r)
            mpz_submul(ud[r].get_mpz_t(), qq.get_mpz_t(), us[r].get_mpz_t());
    };

    int pc = 0;
    for (int r = 0; r < rows_ && pc < cols_; ++r) {
        for (;;) {
            int jmin = -1;
            int nnz = 0;
            for (int j = pc; j < cols_; ++j) {
                const Int& v = h_[size_t(j) * rows_ + r];
                if (sgn(v) == 0) continue;
                ++nnz;
                if (jmin < 0) {
                    jmin = j;
                } else {
                    if (mpz_cmpabs(v.get_mpz_t(), h_[size_t(jmin) * rows_ + r].get_mpz_t()) < 0) jmin = j;
                }
            }
            if (nnz == 0) break;
            if (nnz == 1) {
                if (sgn(h_[size_t(jmin) * rows_ + r]) < 0) {
                    for (int k = r; k < rows_; ++k) h_[size_t(jmin) * rows_ + k] = -h_[size_t(jmin) * rows_ + k];
                    for (int k = 0; k < cols_; ++k) u_[size_t(jmin) * cols_ + k] = -u_[size_t(jmin) * cols_ + k];
                }
                for (int k = 0; k < rows_; ++k) std::swap(h_[size_t(jmin) * rows_ + k], h_[size_t(pc) * rows_ + k]);
                for (int k = 0; k < cols_; ++k) std::swap(u_[size_t(jmin) * cols_ + k], u_[size_t(pc) * cols_ + k]);
                piv_.push_back({r, pc});
                ++pc;
                break;
            }
            const Int& pv = h_[size_t(jmin) * rows_ + r];
            for (int j = pc; j < cols_; ++j) {
                if (j == jmin) continue;
                const Int& v = h_[size_t(j) * rows_ + r];
                if (sgn(v) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), v.get_mpz_t(), pv.get_mpz_t());
                colop(j, jmin, q, r);
            }
        }
    }
    rank_ = int(piv_.size());
}

void IntSolver::reduce_by_kernel(std::vector<Int>& x) const {
    if (rank_ == cols_) return;
    Int num, den, t;
    for (int pass = 0; pass < 2; ++pass) {
        for (int c = rank_; c < cols_; ++c) {
            const Int* k = &u_[size_t(c) * cols_];
            num = 0;
            den = 0;
            for (int i = 0; i < cols_; ++i) {
                mpz_addmul(num.get_mpz_t(), x[i].get_mpz_t(), k[i].get_mpz_t());
                mpz_addmul(den.get_mpz_t(), k[i].get_mpz_t(), k[i].get_mpz_t());
            }
            if (sgn(den) == 0) continue;
            // t = round(num / den)
            t = 2 * num + den;
            mpz_fdiv_q(t.get_mpz_t(), t.get_mpz_t(), Int(2 * den).get_mpz_t());
            if (sgn(t) == 0) continue;
            for (int i = 0; i < cols_; ++i) mpz_submul(x[i].get_mpz_t(), t.get_mpz_t(), k[i].get_mpz_t());
        }
    }
}

std::optional<std::vector<Int>> IntSolver::solve(const std::vector<Int>& b) const {
    std::vector<Int> residual = b;
    std::vector<Int> z(cols_, Int(0));
    Int q, rem;
    for (const auto& [r, c] : piv_) {
        const Int& pv = h_[size_t(c) * rows_ + r];
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), residual[r].get_mpz_t(), pv.get_mpz_t());
        if (sgn(rem) != 0) return std::nullopt;
        if (sgn(q) != 0) {
            const Int* hc = &h_[size_t(c) * rows_];
            for (int k = r; k < rows_; ++k) mpz_submul(residual[k].get_mpz_t(), q.get_mpz_t(), hc[k].get_mpz_t());
            z[c] = q;
        }
    }
    for (int r = 0; r < rows_; ++r)
        if (sgn(residual[r]) != 0) return std::nullopt;

    std::vector<Int> x(cols_, Int(0));
    for (int c = 0; c < cols_; ++c) {
        if (sgn(z[c]) == 0) continue;
        const Int* uc = &u_[size_t(c) * cols_];
        for (int i = 0; i < cols_; ++i) mpz_addmul(x[i].get_mpz_t(), z[c].get_mpz_t(), uc[i].get_mpz_t());
    }
    reduce_by_kernel(x);
    return x;
}

Int int_det(const std::vector<Int>& a, int n) {
    if (n == 0) return Int(1);
    std::vector<Int> m = a;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (sgn(m[size_t(k) * n + k]) == 0) {
            int sw = -1;
            for (int r = k + 1; r < n; ++r)
                if (sgn(m[size_t(r) * n + k]) != 0) { sw = r; break; }
            if (sw < 0) return Int(0);
            for (int c = k; c < n; ++c) std::swap(m[size_t(k) * n + c], m[size_t(sw) * n + c]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int v = m[size_t(i) * n + j] * m[size_t(k) * n + k] - m[size_t(i) * n + k] * m[size_t(k) * n + j];
                mpz_divexact(m[size_t(i) * n + j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[size_t(k) * n + k];
    }
    Int d = m[size_t(n - 1) * n + (n - 1)];
    return sign < 0 ? Int(-d) : d;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t((__uint128_t(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

uint64_t invmod_u64(uint64_t a, uint64_t p) { return powmod_u64(a % p, p - 2, p); }

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace tlab
