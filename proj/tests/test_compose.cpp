#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qcfa/compose.hpp"
#include "qcfa/exec.hpp"
#include "qcfa/zoo.hpp"

#include "support/helpers.hpp"

using namespace qcfa;
using namespace testsupport;

TEST_CASE("complement swaps the halting sets and nothing else") {
    Machine m = zoo::m_eq(1);
    ComposeReport rep = complement(m, 0.25);
    CHECK(rep.machine.accepting_ids() == m.rejecting_ids());
    CHECK(rep.machine.rejecting_ids() == m.accepting_ids());
    CHECK(rep.after == state_counts(m));
    CHECK(rep.eps_bound == 0.25);
    CHECK(complement(rep.machine).machine == m);  // involution

    // Exact duality: identical evaluation tree, absorbed masses swapped
    // bit for bit.
    ExactResult a = eval_input(m, "aab", 4000);
    ExactResult b = eval_input(rep.machine, "aab", 4000);
    CHECK(a.p_acc_low == b.p_rej_low);
    CHECK(a.p_rej_low == b.p_acc_low);
    CHECK(a.residual == b.residual);
}

TEST_CASE("lift_dfa wraps a DFA with certainty verdicts") {
    Machine m = lift_dfa(astar_bstar_dfa());
    CHECK(validate(m).ok());
    CHECK(state_counts(m).qs == 1);
    CHECK(state_counts(m).cs == 5);  // three DFA states plus accept/reject

    ExactResult yes = eval_input(m, "aab", 100);
    CHECK(yes.p_acc_low == 1.0);
    CHECK(yes.residual == 0.0);
    ExactResult no = eval_input(m, "aba", 100);
    CHECK(no.p_rej_low == 1.0);
    CHECK(no.residual == 0.0);

    Machine all = lift_dfa(accept_all_dfa());
    CHECK(eval_input(all, "", 100).p_acc_low == 1.0);  // accepts the empty string
}

TEST_CASE("intersect: counts and alphabet policy") {
    Machine lifted = lift_dfa(astar_bstar_dfa());
    Machine mce = zoo::m_count_eq(1);
    ComposeReport rep = intersect(lifted, mce, 0.0, 0.1);
    CHECK(validate(rep.machine).ok());
    StateCounts bound = predicted_state_bounds(OpKind::Intersect, rep.before1, rep.before2);
    CHECK(rep.after == bound);
    CHECK(rep.after.qs == state_counts(lifted).qs + state_counts(mce).qs);
    CHECK(rep.after.cs == state_counts(lifted).cs + state_counts(mce).cs + state_counts(lifted).qs);
    CHECK(rep.eps_bound == doctest::Approx(0.1));

    Machine other = rename_alphabet(mce, {"x", "y"});
    CHECK_THROWS_AS(intersect(lifted, other), std::invalid_argument);
}

TEST_CASE("intersect classifies like the conjunction of its parts") {
    Machine inter = intersect(lift_dfa(astar_bstar_dfa()), zoo::m_count_eq(1)).machine;
    for (const std::string& w : all_strings("ab", 6)) {
        const bool member = in_astar_bstar(w) && in_count_eq_lang(w);
        ExactResult r = eval_input(inter, w, 200000, 1e-7);
        if (member) {
            CHECK(r.p_rej_low == 0.0);  // both parts are one-sided
            CHECK(r.p_acc_low > 0.5);
        } else {
            CHECK(r.p_rej_low > 0.5);
        }
    }
}

TEST_CASE("union classifies like the disjunction of its parts") {
    Machine uni = union_(zoo::m_eq_ratio(1, zoo::Orientation::AHeavy, 1),
                         zoo::m_eq_ratio(2, zoo::Orientation::AHeavy, 1))
                      .machine;
    CHECK(validate(uni).ok());
    for (const std::string& w : all_strings("ab", 6)) {
        const bool member =
            in_ratio_lang(tokens(w), "a", "b", 1) || in_ratio_lang(tokens(w), "a", "b", 2);
        ExactResult r = eval_input(uni, w, 300000, 1e-7);
        if (member) {
            CHECK(r.p_rej_low == 0.0);
            CHECK(r.p_acc_low > 0.5);
        } else {
            CHECK(r.p_rej_low > 0.5);
        }
    }
}

TEST_CASE("union spot checks from the ratio family") {
    Machine uni = union_(zoo::m_eq_ratio(1, zoo::Orientation::AHeavy, 1),
                         zoo::m_eq_ratio(2, zoo::Orientation::AHeavy, 1))
                      .machine;
    CHECK(eval_input(uni, "aab", 200000, 1e-7).p_acc_low > 0.9);  // in L(2,a)
    CHECK(eval_input(uni, "ab", 200000, 1e-7).p_acc_low > 0.9);   // in L(1,a)
    CHECK(eval_input(uni, "abb", 200000, 1e-7).p_rej_low > 0.9);  // in neither
}

TEST_CASE("reverse meets the mirrored-acceptance contract") {
    Machine m = zoo::m_eq(1);
    ComposeReport rep = reverse(m);
    CHECK(validate(rep.machine).ok());
    CHECK(rep.after.qs == state_counts(m).qs + 1);
    CHECK(rep.after.cs == state_counts(m).cs + 1);

    for (const std::string& w : {std::string("ab"), std::string("abb"), std::string("aabb")}) {
        std::string rw(w.rbegin(), w.rend());
        ExactResult a = eval_input(m, w, 150000, 1e-8);
        ExactResult b = eval_input(rep.machine, rw, 150000, 1e-8);
        const double slack = a.residual + b.residual + 1e-6;
        CHECK(std::abs(a.p_acc_low - b.p_acc_low) <= slack);
        CHECK(std::abs(a.p_rej_low - b.p_rej_low) <= slack);
    }

    // Double reversal recognizes the original language again.
    Machine twice = reverse(rep.machine).machine;
    CHECK(validate(twice).ok());
    ExactResult a = eval_input(m, "aab", 150000, 1e-8);
    ExactResult b = eval_input(twice, "aab", 150000, 1e-8);
    CHECK(std::abs(a.p_acc_low - b.p_acc_low) <= 2 * (a.residual + b.residual + 1e-6));
}

TEST_CASE("catenate: guard, hand-off and error bound structure") {
    Machine m1 = zoo::m_eq(1);
    Machine m2 = rename_alphabet(zoo::m_eq(1), {"c", "d"});
    ComposeReport rep = catenate(m1, m2);
    CHECK(validate(rep.machine).ok());
    CHECK(rep.after.cs == state_counts(m1).cs + state_counts(m2).cs + 4);
    CHECK(rep.after.qs == state_counts(m1).qs + state_counts(m2).qs);

    // Strings outside Sigma1+ Sigma2+ are rejected with certainty.
    for (const char* w : {"", "ab", "cd", "acbd", "cdab", "abcda"}) {
        ExactResult r = eval_input(rep.machine, w, 2000);
        CHECK(r.p_rej_low == 1.0);
        CHECK(r.residual == 0.0);
    }

    CHECK(eval_input(rep.machine, "abcd", 200000, 1e-7).p_acc_low > 0.9);
    CHECK(eval_input(rep.machine, "abcd", 200000, 1e-7).p_rej_low == 0.0);
    CHECK(eval_input(rep.machine, "aabcd", 200000, 1e-7).p_rej_low > 0.9);

    CHECK_THROWS_AS(catenate(m1, zoo::m_count_eq(1)), std::invalid_argument);  // alphabets overlap
    CHECK_THROWS_AS(catenate(m1, m2, {true, false}), UnimplementedCaseError);
}

TEST_CASE("catenate classifies an exhaustive short corpus") {
    Machine cat = catenate(zoo::m_eq(1), rename_alphabet(zoo::m_eq(1), {"c", "d"})).machine;
    auto in_l1 = [](const std::string& w) { return in_eq_lang(w); };
    auto in_l2 = [](const std::string& w) {
        std::string t = w;
        std::replace(t.begin(), t.end(), 'c', 'a');
        std::replace(t.begin(), t.end(), 'd', 'b');
        return in_eq_lang(t);
    };
    for (const std::string& w : all_strings("abcd", 5)) {
        const bool member = in_catenation(w, "ab", in_l1, in_l2);
        ExactResult r = eval_input(cat, w, 250000, 1e-7);
        if (member) {
            CHECK(r.p_rej_low == 0.0);
            CHECK(r.p_acc_low > 0.5);
        } else {
            CHECK(r.p_rej_low > 0.5);
        }
    }
}

TEST_CASE("predicted_state_bounds formulas") {
    StateCounts c1{2, 18}, c2{1, 5};
    CHECK(predicted_state_bounds(OpKind::Intersect, c1, c2) == StateCounts{3, 25});
    CHECK(predicted_state_bounds(OpKind::Union, c2, c1) == StateCounts{3, 24});
    CHECK(predicted_state_bounds(OpKind::Complement, c1) == c1);
    CHECK(predicted_state_bounds(OpKind::Reverse, c1) == StateCounts{3, 19});
    CHECK(predicted_state_bounds(OpKind::Catenate, c1, c2) == StateCounts{3, 27});
    CHECK_THROWS_AS(predicted_state_bounds(OpKind::Intersect, c1), std::invalid_argument);
}

TEST_CASE("combinators meet their count bounds on random machines") {
    RandomStream rng(314, 0);
    for (int i = 0; i < 10; ++i) {
        Machine m1 = random_machine(rng);
        Machine m2 = random_machine(rng);
        ComposeReport ri = intersect(m1, m2);
        CHECK(validate(ri.machine).ok());
        CHECK(ri.after == predicted_state_bounds(OpKind::Intersect, state_counts(m1), state_counts(m2)));
        ComposeReport ru = union_(m1, m2);
        CHECK(validate(ru.machine).ok());
        CHECK(ru.after == predicted_state_bounds(OpKind::Union, state_counts(m1), state_counts(m2)));
        ComposeReport rr = reverse(m1);
        CHECK(validate(rr.machine).ok());
        CHECK(rr.after == predicted_state_bounds(OpKind::Reverse, state_counts(m1)));
        Machine m3 = rename_alphabet(random_machine(rng), {"c", "d"});
        ComposeReport rc = catenate(m1, m3);
        CHECK(validate(rc.machine).ok());
        CHECK(rc.after == predicted_state_bounds(OpKind::Catenate, state_counts(m1), state_counts(m3)));
    }
}

TEST_CASE("complement duality is exact on random machines") {
    RandomStream rng(2718, 0);
    for (int i = 0; i < 8; ++i) {
        Machine m = random_machine(rng);
        Machine mc = complement(m).machine;
        for (const std::string& w : {std::string(""), std::string("ab"), std::string("ba")}) {
            ExactResult a = eval_input(m, w, 200);
            ExactResult b = eval_input(mc, w, 200);
            CHECK(a.p_acc_low == b.p_rej_low);
            CHECK(a.p_rej_low == b.p_acc_low);
            CHECK(a.residual == b.residual);
        }
    }
}
