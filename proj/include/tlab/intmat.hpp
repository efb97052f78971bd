#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tlab/base.hpp"

namespace tlab {

/**
 * Exact linear algebra over the integers.
 *
 * Solving A·x = b runs through a column echelon form H = A·U with U
 * unimodular.  The echelon build happens once per matrix and is then shared
 * by any number of right-hand sides, which is the usage pattern of the chain
 * level solvers (one differential, many columns).
 *
 * Everything is first attempted in checked 64-bit arithmetic; on overflow
 * the computation restarts with arbitrary-precision integers.  Results are
 * identical either way, the fast path is purely an optimization.
 */
class IntSolver {
public:
    // A is rows x cols, row-major.
    IntSolver(std::vector<Int> a, int rows, int cols);

    // Particular solution of A·x = b, size-reduced against the kernel.
    // nullopt means provably no integer solution.
    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const;

    int rank() const { return rank_; }

private:
    void build_i64(const std::vector<Int>& a);
    void build_big(const std::vector<Int>& a);
    void reduce_by_kernel(std::vector<Int>& x) const;

    int rows_ = 0, cols_ = 0, rank_ = 0;
    // column-major echelon data (bignum form; the i64 build converts up)
    std::vector<Int> h_;                    // rows_ x cols_
    std::vector<Int> u_;                    // cols_ x cols_
    std::vector<std::pair<int, int>> piv_;  // (row, column position)
};

// Determinant of a square integer matrix (Bareiss). Small sizes only.
Int int_det(const std::vector<Int>& a, int n);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);
uint64_t invmod_u64(uint64_t a, uint64_t p);

}  // namespace tlab
