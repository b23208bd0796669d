#include <doctest.h>

#include "qcfa/machine.hpp"
#include "qcfa/zoo.hpp"

#include "support/helpers.hpp"

using namespace qcfa;

TEST_CASE("tape layout") {
    CHECK(tape_symbol("ab", 0) == "^");
    CHECK(tape_symbol("ab", 1) == "a");
    CHECK(tape_symbol("ab", 2) == "b");
    CHECK(tape_symbol("ab", 3) == "$");
    CHECK_THROWS(tape_symbol("ab", 4));

    Machine m = zoo::m_eq(1);
    Tape t = Tape::from_symbols(parse_input(m, "ab"));
    CHECK(t.at(0) == kLeftEnd);
    CHECK(t.at(3) == kRightEnd);
    CHECK(t.length() == 2);
}

TEST_CASE("parse_input handles both symbol styles") {
    Machine m = zoo::m_eq(1);
    CHECK(parse_input(m, "aab").size() == 3);
    CHECK(parse_input(m, "").empty());
    CHECK_THROWS_AS(parse_input(m, "abc"), std::invalid_argument);

    Machine md = zoo::m_eq_double(1);
    std::vector<int> syms = parse_input(md, "a b1 a b2");
    CHECK(syms.size() == 4);
    CHECK(md.symbol_name(syms[1]) == "b1");
    CHECK(format_input(md, syms) == "a b1 a b2");
    CHECK_THROWS_AS(parse_input(md, "a b3"), std::invalid_argument);
}

TEST_CASE("zoo machines validate cleanly") {
    for (int k : {1, 3}) {
        CHECK(validate(zoo::m_eq(k)).ok());
        CHECK(validate(zoo::m_count_eq(k)).ok());
        CHECK(validate(zoo::m_eq_double(k)).ok());
        CHECK(validate(zoo::amplification_round(k)).ok());
    }
}

TEST_CASE("state counts") {
    Machine m = zoo::m_eq(2);
    StateCounts c = state_counts(m);
    CHECK(c.qs == 2);  // two quantum states suffice for the whole family
    CHECK(c.cs == m.classical_states.size());
}

TEST_CASE("validator flags a scaled rotation") {
    Machine m = zoo::m_eq(1);
    const int s = m.classical_id("in_heavy");
    const int g = m.symbol_id("a");
    REQUIRE(s >= 0);
    auto& act = const_cast<std::optional<QuantumAction>&>(m.action(s, g));
    auto& ua = std::get<UnitaryAction>(*act);
    for (auto& e : ua.op.entries) e *= 2.0;
    ValidationReport rep = validate(m);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.code == "unitarity" && v.where.find("in_heavy") != std::string::npos &&
            v.where.find("a") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("validator flags a left move at the left endmarker") {
    Machine m = zoo::m_eq(1);
    const int s = m.classical_id("start");
    auto& act = const_cast<std::optional<QuantumAction>&>(m.action(s, kLeftEnd));
    std::get<UnitaryAction>(*act).response.move = -1;
    ValidationReport rep = validate(m);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].code == "endmarker_direction");
}

TEST_CASE("validator flags right move at the right endmarker and bad targets") {
    Machine m = zoo::m_count_eq(1);
    const int s = m.classical_id("coin1");
    auto& act = const_cast<std::optional<QuantumAction>&>(m.action(s, kRightEnd));
    std::get<UnitaryAction>(*act).response.move = +1;
    CHECK_FALSE(validate(m).ok());

    Machine m2 = zoo::m_count_eq(1);
    auto& act2 = const_cast<std::optional<QuantumAction>&>(m2.action(m2.classical_id("scan"), kRightEnd));
    std::get<MeasureAction>(*act2).responses[0].next = 999;
    ValidationReport rep = validate(m2);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].code == "target_state");
}

TEST_CASE("validator flags missing and extra rows") {
    Machine m = zoo::m_eq(1);
    auto& hole = const_cast<std::optional<QuantumAction>&>(m.action(m.classical_id("start"), kLeftEnd));
    hole.reset();
    ValidationReport rep = validate(m);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].code == "missing_entry");

    Machine m2 = zoo::m_eq(1);
    m2.set_action(m2.classical_id("accept"), kLeftEnd,
                  QuantumAction{UnitaryAction{identity_op(2), Response{0, 0}}});
    ValidationReport rep2 = validate(m2);
    REQUIRE_FALSE(rep2.ok());
    CHECK(rep2.violations[0].code == "halting_state_row");
}

TEST_CASE("validator flags overlapping measurement blocks") {
    Machine m = zoo::m_count_eq(1);
    auto& act = const_cast<std::optional<QuantumAction>&>(m.action(m.classical_id("scan"), kRightEnd));
    std::get<MeasureAction>(*act).measurement.blocks[0] = {0, 1};  // now overlaps block 1
    ValidationReport rep = validate(m);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].code == "measurement_partition");
}

TEST_CASE("rename_alphabet") {
    Machine m = zoo::m_eq(1);
    Machine r = rename_alphabet(m, {"c", "d"});
    CHECK(r.alphabet == std::vector<std::string>{"c", "d"});
    CHECK(validate(r).ok());
    CHECK_THROWS_AS(rename_alphabet(m, {"a"}), std::invalid_argument);
    CHECK_THROWS_AS(rename_alphabet(m, {"a", "a"}), std::invalid_argument);
    CHECK_THROWS_AS(rename_alphabet(m, {"a", "$"}), std::invalid_argument);
}

TEST_CASE("random machines validate") {
    RandomStream rng(99, 0);
    for (int i = 0; i < 25; ++i) {
        Machine m = testsupport::random_machine(rng);
        CHECK(validate(m).ok());
    }
}
