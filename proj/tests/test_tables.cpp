#include "tlab/tables.hpp"

#include "doctest.h"

using namespace tlab;

TEST_CASE("six classification rows, bit-exact") {
    const auto& t = classification_table();
    REQUIRE(t.size() == 6);

    auto cell = [](Answer a, const char* d) { return TableCell{a, d}; };

    CHECK(t[0].profile == GroupProfile{true, true, true});
    CHECK(t[0].hs == cell(Answer::No, "all n"));
    CHECK(t[0].hcob == cell(Answer::No, "all n"));
    CHECK(t[0].hs_hcob == cell(Answer::No, "all n"));

    CHECK(t[1].profile == GroupProfile{true, false, false});
    CHECK(t[1].hs == cell(Answer::Yes, "n ≥ 5"));
    CHECK(t[1].hcob == cell(Answer::No, "all n"));
    CHECK(t[1].hs_hcob == cell(Answer::Yes, "n ≥ 5"));

    CHECK(t[2].profile == GroupProfile{true, false, true});
    CHECK(t[2].hs == cell(Answer::Open, "-"));
    CHECK(t[2].hcob == cell(Answer::No, "all n"));
    CHECK(t[2].hs_hcob == cell(Answer::Open, "-"));

    CHECK(t[3].profile == GroupProfile{false, true, true});
    CHECK(t[3].hs == cell(Answer::Yes, "n = 9, ≥ 11"));
    CHECK(t[3].hcob == cell(Answer::Yes, "n = 9, ≥ 11"));
    CHECK(t[3].hs_hcob == cell(Answer::No, "n ≥ 5"));

    CHECK(t[4].profile == GroupProfile{false, false, false});
    CHECK(t[4].hs == cell(Answer::Yes, "n ≥ 5"));
    CHECK(t[4].hcob == cell(Answer::Yes, "n = 9, ≥ 11"));
    CHECK(t[4].hs_hcob == cell(Answer::Yes, "n ≥ 5"));

    CHECK(t[5].profile == GroupProfile{false, false, true});
    CHECK(t[5].hs == cell(Answer::Yes, "n = 9, ≥ 11"));
    CHECK(t[5].hcob == cell(Answer::Yes, "n = 9, ≥ 11"));
    CHECK(t[5].hs_hcob == cell(Answer::Open, "-"));
}

TEST_CASE("profile lookup and rejection") {
    TableRow r = existence_answers(GroupProfile{true, false, false});
    CHECK(r.hs.answer == Answer::Yes);
    CHECK(r.hcob.answer == Answer::No);

    CHECK_THROWS_AS(existence_answers(GroupProfile{true, true, false}), Error);
    CHECK_THROWS_AS(existence_answers(GroupProfile{false, true, false}), Error);
    CHECK_NOTHROW(GroupProfile{}.validate());

    for (const TableRow& r : classification_table())
        CHECK(existence_answers(r.profile).profile == r.profile);
}

TEST_CASE("cross-row invariants") {
    int open_cells = 0;
    for (const TableRow& r : classification_table()) {
        if (r.hcob.answer == Answer::Yes || r.hs_hcob.answer == Answer::Yes)
            CHECK(r.hs.answer == Answer::Yes);
        CHECK((r.hcob.answer == Answer::Yes) == !r.profile.In_zero);
        for (const TableCell* c : {&r.hs, &r.hcob, &r.hs_hcob}) {
            if (c->answer == Answer::Open) {
                ++open_cells;
                CHECK(c->dims == "-");
            }
        }
    }
    // two open questions, three open cells: hs and hs_hcob for the
    // (= 0, != 0, = 0) profile, hs_hcob again for (!= 0, != 0, = 0)
    CHECK(open_cells == 3);
}

TEST_CASE("answer names") {
    CHECK(std::string(to_cstr(Answer::Yes)) == "Yes");
    CHECK(std::string(to_cstr(Answer::No)) == "No");
    CHECK(std::string(to_cstr(Answer::Open)) == "Open");
}