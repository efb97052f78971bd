#pragma once

// Matrices over Z[G], exact determinants, and linear solving for matrix
// equations with group-ring unknowns.
//
// Determinants run through a modular transform: for primes p = 1 (mod m) the
// matrix is evaluated at every m-th root of unity in F_p (and, when a t factor
// is present, at interpolation points for t), reduced by Gaussian elimination,
// and the coefficients are recovered by inverse transform plus CRT under a
// rigorous coefficient bound, so the result is exact.

#include <optional>
#include <string>
#include <vector>

#include "tlab/group_ring.hpp"

namespace tlab {

class GRMatrix {
public:
    GRMatrix(GroupSpec spec, int rows, int cols);

    static GRMatrix identity(const GroupSpec& spec, int n);
    static GRMatrix scalar(const GroupSpec& spec, int n, const RingElement& u);

    const GroupSpec& spec() const { return spec_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const RingElement& at(int r, int c) const;
    void set(int r, int c, RingElement v);

    bool is_zero() const;
    bool is_identity() const;

    GRMatrix transpose() const;
    // w-twisted conjugate transpose
    GRMatrix involute_transpose() const;
    GRMatrix apply(const RingAuto& theta) const;
    GRMatrix submatrix(const std::vector<int>& row_ids, const std::vector<int>& col_ids) const;

    friend GRMatrix operator+(const GRMatrix& a, const GRMatrix& b);
    friend GRMatrix operator-(const GRMatrix& a, const GRMatrix& b);
    friend GRMatrix operator-(const GRMatrix& a);
    friend GRMatrix operator*(const GRMatrix& a, const GRMatrix& b);
    friend GRMatrix operator*(const RingElement& c, const GRMatrix& a);
    friend bool operator==(const GRMatrix& a, const GRMatrix& b);

    std::string str() const;

private:
    GroupSpec spec_;
    int rows_, cols_;
    std::vector<RingElement> e_;
};

GRMatrix direct_sum(const GRMatrix& a, const GRMatrix& b);
// assemble from a rectangular grid of blocks with consistent shapes
GRMatrix block_matrix(const GroupSpec& spec, const std::vector<std::vector<GRMatrix>>& grid);

RingElement gr_det(const GRMatrix& a);

// Linear systems  sum_k  L_k X_{u_k} R_k = rhs  in several matrix unknowns.
// Everything is flattened to one integer system over a window of monomials;
// for groups with a t factor the window on each unknown starts at the span of
// the inputs and widens geometrically up to t_cap.  A nullopt from solve() is
// a proof of unsolvability only when the group has no t factor.
class RingSystem {
public:
    explicit RingSystem(GroupSpec spec);

    int add_unknown(int rows, int cols);

    struct Term {
        int unknown;
        GRMatrix left;
        GRMatrix right;
    };
    void add_equation(std::vector<Term> terms, GRMatrix rhs);

    std::optional<std::vector<GRMatrix>> solve(int t_cap = 16) const;

private:
    std::optional<std::vector<GRMatrix>> attempt(int lo, int hi) const;

    GroupSpec spec_;
    std::vector<std::pair<int, int>> shapes_;
    struct Eq {
        std::vector<Term> terms;
        GRMatrix rhs;
    };
    std::vector<Eq> eqs_;
};

// One-sided solves with a shared echelon across right-hand columns.
// Same completeness caveat as RingSystem for groups with a t factor.
std::optional<GRMatrix> solve_AX_B(const GRMatrix& a, const GRMatrix& b, int t_cap = 16);
std::optional<GRMatrix> solve_XA_B(const GRMatrix& a, const GRMatrix& b, int t_cap = 16);

}  // namespace tlab
