#include "tlab/tables.hpp"

namespace tlab {

void GroupProfile::validate() const {
    require(psi_zero || !Tate_zero, ErrKind::Input,
            "psi maps into the Tate group; psi != 0 needs a nonzero Tate group");
}

const char* to_cstr(Answer a) {
    switch (a) {
        case Answer::Yes: return "Yes";
        case Answer::No: return "No";
        default: return "Open";
    }
}

const std::vector<TableRow>& classification_table() {
    static const std::vector<TableRow> rows = [] {
        const TableCell yes5{Answer::Yes, "n ≥ 5"};
        const TableCell yes911{Answer::Yes, "n = 9, ≥ 11"};
        const TableCell no_all{Answer::No, "all n"};
        const TableCell no5{Answer::No, "n ≥ 5"};
        const TableCell open{Answer::Open, "-"};
        std::vector<TableRow> t{
            {GroupProfile{true, true, true}, no_all, no_all, no_all},
            {GroupProfile{true, false, false}, yes5, no_all, yes5},
            {GroupProfile{true, false, true}, open, no_all, open},
            {GroupProfile{false, true, true}, yes911, yes911, no5},
            {GroupProfile{false, false, false}, yes5, yes911, yes5},
            {GroupProfile{false, false, true}, yes911, yes911, open},
        };
        require(t.size() == 6, ErrKind::Internal, "classification table must have six rows");
        for (size_t i = 0; i < t.size(); ++i) {
            const TableRow& r = t[i];
            r.profile.validate();
            for (size_t j = 0; j < i; ++j)
                require(!(t[j].profile == r.profile), ErrKind::Internal,
                        "duplicate profile in the classification table");
            bool stronger =
                r.hcob.answer == Answer::Yes || r.hs_hcob.answer == Answer::Yes;
            require(!stronger || r.hs.answer == Answer::Yes, ErrKind::Internal,
                    "a refined answer is positive but the plain one is not");
            require((r.hcob.answer == Answer::Yes) == !r.profile.In_zero, ErrKind::Internal,
                    "the h-cobordism column must match the vanishing of I_n");
            if (r.profile.In_zero && r.profile.Tate_zero)
                require(r.hs.answer == Answer::No && r.hcob.answer == Answer::No &&
                            r.hs_hcob.answer == Answer::No,
                        ErrKind::Internal, "J_n = 0 forces every answer negative");
        }
        return t;
    }();
    return rows;
}

TableRow existence_answers(const GroupProfile& p) {
    p.validate();
    for (const TableRow& r : classification_table())
        if (r.profile == p) return r;
    fail_internal("classification table is missing a valid profile");
}

}  // namespace tlab