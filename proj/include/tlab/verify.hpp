#pragma once

// Randomized verification suites. Each suite draws instances from a seeded
// generator, evaluates both sides of a law with independent code paths, and
// reports the first counterexample as a parseable TLX echo. Reports are
// deterministic in (suite, trials, seed, ranges) and independent of jobs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlab/group_ring.hpp"

namespace tlab {

struct SuiteOptions {
    std::string suite;  // calculus | split | theoremB | parity | doubles
    int trials = 100;
    std::uint64_t seed = 1;
    int m_lo = 2;  // cyclic order range for generated groups
    int m_hi = 9;
    int n_lo = 4;  // formal dimension range
    int n_hi = 9;
    int jobs = 1;
    int t_cap = 16;
};

struct TrialFailure {
    int trial = 0;
    std::string law;     // name of the violated identity
    std::string detail;  // the two sides, or the error that was thrown
    std::string tlx;     // instance echo, empty when no instance was built
};

struct SuiteReport {
    std::string suite;
    int trials = 0;
    std::uint64_t seed = 0;
    int passed = 0;
    int failed = 0;
    std::optional<TrialFailure> first_failure;
};

const std::vector<std::string>& suite_names();

/** Runs one suite. Throws Error(Input) for bad options. */
SuiteReport run_suite(const SuiteOptions& opt);

/**
 * Units of Z[C_m] that are nontrivial in the Whitehead group, used to salt
 * generated instances. Empty when Wh is trivial or no unit is on file.
 * Every entry is certified (unit, nontrivial class) before it is returned.
 */
std::vector<RingElement> unit_table(const GroupSpec& spec);

}  // namespace tlab
