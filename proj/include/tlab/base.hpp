#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tlab {

using Int = mpz_class;

/** Error kinds, mapped to process exit codes by the CLI layer. */
enum class ErrKind {
    Input,      // malformed input, violated precondition, unsupported request
    Solver,     // a bounded search ended without a decision
    Internal,   // broken invariant; indicates a bug, not a user mistake
};

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) { throw Error(ErrKind::Input, msg); }
[[noreturn]] inline void fail_solver(const std::string& msg) { throw Error(ErrKind::Solver, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(ErrKind::Internal, msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail_input(msg);
}

inline void require(bool cond, ErrKind kind, const std::string& msg) {
    if (!cond) throw Error(kind, msg);
}

/**
 * Three-valued answer used throughout: exact yes, exact no, or out of reach
 * for the bounded solver.  `witness` documents a Trivial answer, `reason`
 * documents the other two.
 */
enum class VState { Trivial, Nontrivial, Unknown };

struct Verdict {
    VState state = VState::Unknown;
    std::string witness;
    std::string reason;

    static Verdict trivial(const std::string& w) { return {VState::Trivial, w, ""}; }
    static Verdict nontrivial(const std::string& r) { return {VState::Nontrivial, "", r}; }
    static Verdict unknown(const std::string& r) { return {VState::Unknown, "", r}; }

    bool is_trivial() const { return state == VState::Trivial; }
    bool is_nontrivial() const { return state == VState::Nontrivial; }
    bool is_unknown() const { return state == VState::Unknown; }
};

inline const char* to_cstr(VState s) {
    switch (s) {
        case VState::Trivial: return "trivial";
        case VState::Nontrivial: return "nontrivial";
        default: return "unknown";
    }
}

}  // namespace tlab
