#pragma once

#include <string>
#include <vector>

#include "tlab/base.hpp"

namespace tlab {

// the three vanishing predicates that classify a 1-type (G, w) at level n:
// whether I_n(G, w) = 0, whether the Tate quotient J_n / I_n vanishes, and
// whether the map psi^{n+1} from quadratic L-theory into that quotient
// vanishes
struct GroupProfile {
    bool In_zero = true;
    bool Tate_zero = true;
    bool psi_zero = true;

    // psi maps into the Tate group, so psi != 0 needs Tate != 0
    void validate() const;

    bool operator==(const GroupProfile&) const = default;
};

enum class Answer { Yes, No, Open };

const char* to_cstr(Answer a);

// one classification cell: the existence answer together with the dimension
// range it is asserted for ("-" when the question is open)
struct TableCell {
    Answer answer = Answer::Open;
    std::string dims = "-";

    bool operator==(const TableCell&) const = default;
};

// answers to "is there an n-manifold with this profile carrying a homotopy
// equivalence that is not simple", in three strengths: up to simple homotopy
// equivalence (hs), within an h-cobordism class (hcob), and up to the
// relation generated by simple equivalence and h-cobordism (hs_hcob)
struct TableRow {
    GroupProfile profile;
    TableCell hs;
    TableCell hcob;
    TableCell hs_hcob;
};

// the six classification rows, stored as data and guarded by cross-checks
// rather than re-derived; exactly one row per valid profile
const std::vector<TableRow>& classification_table();

// the row for a profile; Input error on an invalid profile
TableRow existence_answers(const GroupProfile& p);

}  // namespace tlab