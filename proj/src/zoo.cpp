#include "qcfa/zoo.hpp"

#include <stdexcept>

#include "qcfa/builder.hpp"
#include "qcfa/compose.hpp"

namespace qcfa::zoo {

namespace {

RotationSpec sqrt2_rotation(long long num) { return RotationSpec{num, 1, 0, 1, 0, 1}; }
RotationSpec coin_rotation() { return RotationSpec{0, 1, 1, 4, 0, 1}; }

/// Appends the amplification gadget to a builder over alphabet
/// `syms`: two random walks launched from the cell right of "^" that
/// must both reach "$", then `k` quantum coin flips at "$" that must
/// all yield q0. Any failure routes to `restart`; full success routes
/// to `accept`. Walk entry point is the returned state (enter it at
/// "^" with move +1 pending, i.e. respond (<returned>, -1) from the
/// "$" measurement to start rewinding).
///
/// Created states: rewind1, walk1, walk1m, walk1f, rewind2, walk2,
/// walk2m, walk2f, coin_i, coinm_i, coinf, coin_rewind.
std::string add_gadget(MachineBuilder& b, const std::vector<std::string>& syms, int k,
                       const std::string& restart, const std::string& accept) {
    const UnitaryOp coin = rotation_op(coin_rotation(), 2);
    const UnitaryOp swap = basis_swap_op(0, 1, 2);

    for (const char* s : {"rewind1", "walk1", "walk1m", "walk1f", "rewind2", "walk2", "walk2m", "walk2f",
                          "coinf", "coin_rewind"})
        b.add_classical(s);
    for (int i = 1; i <= k; ++i) {
        b.add_classical("coin" + std::to_string(i));
        b.add_classical("coinm" + std::to_string(i));
    }

    auto wire_walk = [&](const std::string& walk, const std::string& measure, const std::string& fix,
                         const std::string& on_success, int success_move) {
        for (const auto& sym : syms) {
            b.unitary(walk, sym, coin, measure, 0);
            b.measure_basis(measure, sym, {{"q0", walk, -1}, {"q1", fix, +1}});
            b.unitary(fix, sym, swap, walk, 0);
        }
        b.unitary(fix, "$", swap, walk, 0);
        b.unitary(walk, "^", identity_op(2), restart, 0);  // fell back: round restarts
        b.unitary(walk, "$", identity_op(2), on_success, success_move);
    };

    auto wire_rewind = [&](const std::string& rew, const std::string& walk) {
        for (const auto& sym : syms) b.unitary(rew, sym, identity_op(2), rew, -1);
        b.unitary(rew, "^", identity_op(2), walk, +1);
    };

    wire_rewind("rewind1", "walk1");
    wire_walk("walk1", "walk1m", "walk1f", "rewind2", -1);
    wire_rewind("rewind2", "walk2");
    wire_walk("walk2", "walk2m", "walk2f", "coin1", 0);

    for (int i = 1; i <= k; ++i) {
        const std::string ci = "coin" + std::to_string(i);
        const std::string cm = "coinm" + std::to_string(i);
        const std::string after = (i == k) ? accept : "coin" + std::to_string(i + 1);
        b.unitary(ci, "$", coin, cm, 0);
        b.measure_basis(cm, "$", {{"q0", after, 0}, {"q1", "coinf", 0}});
    }
    b.unitary("coinf", "$", swap, "coin_rewind", -1);
    for (const auto& sym : syms) b.unitary("coin_rewind", sym, identity_op(2), "coin_rewind", -1);
    b.unitary("coin_rewind", "^", identity_op(2), restart, 0);
    return "rewind1";
}

/// Common skeleton of m_eq / m_eq_ratio / m_count_eq: rotate by
/// +sqrt(2)pi per heavy symbol and -ratio*sqrt(2)pi per light symbol
/// while scanning left to right (optionally enforcing the shape
/// heavy+ light+), measure at "$", and amplify.
Machine ratio_machine(const std::string& name, const std::string& heavy, const std::string& light,
                      long long ratio, int k_coins, bool shape_check) {
    if (k_coins < 1) throw std::invalid_argument("k_coins must be >= 1");
    if (ratio < 1) throw std::invalid_argument("ratio must be >= 1");

    MachineBuilder b(name);
    b.set_alphabet({"a", "b"});
    b.add_quantum("q0");
    b.add_quantum("q1");
    b.add_classical("start");
    b.add_classical("accept", StateKind::Accept);
    b.add_classical("reject", StateKind::Reject);

    const UnitaryOp rot_heavy = rotation_op(sqrt2_rotation(1), 2);
    const UnitaryOp rot_light = rotation_op(sqrt2_rotation(-ratio), 2);

    std::string measure_state;  // state that reads "$" and measures
    if (shape_check) {
        b.add_classical("expect_heavy");
        b.add_classical("in_heavy");
        b.add_classical("in_light");
        b.unitary("start", "^", identity_op(2), "expect_heavy", +1);
        b.unitary("expect_heavy", heavy, rot_heavy, "in_heavy", +1);
        b.unitary("expect_heavy", light, identity_op(2), "reject", 0);
        b.unitary("expect_heavy", "$", identity_op(2), "reject", 0);
        b.unitary("in_heavy", heavy, rot_heavy, "in_heavy", +1);
        b.unitary("in_heavy", light, rot_light, "in_light", +1);
        b.unitary("in_heavy", "$", identity_op(2), "reject", 0);
        b.unitary("in_light", light, rot_light, "in_light", +1);
        b.unitary("in_light", heavy, identity_op(2), "reject", 0);
        measure_state = "in_light";
    } else {
        b.add_classical("scan");
        b.unitary("start", "^", identity_op(2), "scan", +1);
        b.unitary("scan", heavy, rot_heavy, "scan", +1);
        b.unitary("scan", light, rot_light, "scan", +1);
        measure_state = "scan";
    }

    std::string gadget_entry = add_gadget(b, {"a", "b"}, k_coins, "start", "accept");
    b.measure_basis(measure_state, "$", {{"q0", gadget_entry, -1}, {"q1", "reject", 0}});

    b.fill_missing("reject");
    return b.build();
}

}  // namespace

Machine m_eq(int k_coins) { return ratio_machine("m_eq", "a", "b", 1, k_coins, true); }

Machine m_count_eq(int k_coins) { return ratio_machine("m_count_eq", "a", "b", 1, k_coins, false); }

Machine m_eq_ratio(int ratio, Orientation orientation, int k_coins) {
    const bool a_heavy = orientation == Orientation::AHeavy;
    const std::string name = "m_eq_ratio_" + std::to_string(ratio) + (a_heavy ? "a" : "b");
    return ratio_machine(name, a_heavy ? "a" : "b", a_heavy ? "b" : "a", ratio, k_coins, true);
}

Machine amplification_round(int k_coins) {
    if (k_coins < 1) throw std::invalid_argument("k_coins must be >= 1");
    MachineBuilder b("amplification_round");
    b.set_alphabet({"a"});
    b.add_quantum("q0");
    b.add_quantum("q1");
    b.add_classical("start");
    b.add_classical("accept", StateKind::Accept);
    b.add_classical("reject", StateKind::Reject);
    // One round only: a failed walk or a "heads" coin rejects instead
    // of restarting, so P_acc over a^(ell-1) is exactly 2^-k / ell^2.
    std::string entry = add_gadget(b, {"a"}, k_coins, "reject", "accept");
    b.unitary("start", "^", identity_op(2), entry, 0);
    b.fill_missing("reject");
    return b.build();
}

Machine m_eq_double(int k_coins) {
    if (k_coins < 1) throw std::invalid_argument("k_coins must be >= 1");
    MachineBuilder b("m_eq_double");
    b.set_alphabet({"a", "b1", "b2"});
    b.add_quantum("q0");
    b.add_quantum("q1");

    const UnitaryOp rot_a = rotation_op(sqrt2_rotation(1), 2);
    const UnitaryOp rot_b = rotation_op(sqrt2_rotation(-1), 2);
    const UnitaryOp coin = rotation_op(coin_rotation(), 2);
    const UnitaryOp swap = basis_swap_op(0, 1, 2);
    const UnitaryOp eye = identity_op(2);

    b.add_classical("accept", StateKind::Accept);
    b.add_classical("reject", StateKind::Reject);

    // Shape pass: a+ b1+ a+ b2+, identity quantum actions throughout.
    for (const char* s : {"f_start", "f_a1", "f_a2", "f_b1", "f_a3", "f_b2", "f_rewind"}) b.add_classical(s);
    b.set_initial("q0", "f_start");
    b.unitary("f_start", "^", eye, "f_a1", +1);
    b.unitary("f_a1", "a", eye, "f_a2", +1);
    b.unitary("f_a2", "a", eye, "f_a2", +1);
    b.unitary("f_a2", "b1", eye, "f_b1", +1);
    b.unitary("f_b1", "b1", eye, "f_b1", +1);
    b.unitary("f_b1", "a", eye, "f_a3", +1);
    b.unitary("f_a3", "a", eye, "f_a3", +1);
    b.unitary("f_a3", "b2", eye, "f_b2", +1);
    b.unitary("f_b2", "b2", eye, "f_b2", +1);
    b.unitary("f_b2", "$", eye, "f_rewind", -1);
    for (const char* sym : {"a", "b1", "b2"}) b.unitary("f_rewind", sym, eye, "f_rewind", -1);

    // Phase 1: m_eq on the a^n b1^n prefix; its right endmarker is the
    // first a after the b1 block, so the rotation scan stops there and
    // the walk tracks which block the head is in to recognize that
    // boundary (an a entered from a b1 cell moving right).
    for (const char* s : {"p1_start", "p1_scan_a", "p1_scan_b", "p1_rewind", "p1_coinf", "p1_coin_rewind"})
        b.add_classical(s);
    b.unitary("f_rewind", "^", eye, "p1_start", 0);
    b.unitary("p1_start", "^", eye, "p1_scan_a", +1);
    b.unitary("p1_scan_a", "a", rot_a, "p1_scan_a", +1);
    b.unitary("p1_scan_a", "b1", rot_b, "p1_scan_b", +1);
    b.unitary("p1_scan_b", "b1", rot_b, "p1_scan_b", +1);
    b.measure_basis("p1_scan_b", "a", {{"q0", "p1_rewind", -1}, {"q1", "reject", 0}});
    for (const char* sym : {"a", "b1"}) b.unitary("p1_rewind", sym, eye, "p1_rewind", -1);

    // Phase-1 walk, one copy per attempt. Region states: A = first
    // a block (or just launched), B = b1 block; arriving on an a from
    // B by a right move is the virtual endmarker.
    auto wire_phase1_walk = [&](const std::string& pfx, const std::string& entry_from,
                                const std::string& entry_sym, int entry_move,
                                const std::string& on_success, int success_move) {
        const std::string wA = pfx + "A", wAm = pfx + "Am", wAf = pfx + "Af";
        const std::string wBm = pfx + "Bm", wBL = pfx + "BL", wBf = pfx + "Bf", wBR = pfx + "BR";
        for (const auto& s : {wA, wAm, wAf, wBm, wBL, wBf, wBR}) b.add_classical(s);
        b.unitary(entry_from, entry_sym, eye, wA, entry_move);
        b.unitary(wA, "a", coin, wAm, 0);
        b.unitary(wA, "b1", coin, wBm, 0);
        b.unitary(wA, "^", eye, "p1_start", 0);  // fell back: whole round restarts
        b.measure_basis(wAm, "a", {{"q0", wA, -1}, {"q1", wAf, +1}});
        b.unitary(wAf, "a", swap, wA, 0);
        b.unitary(wAf, "b1", swap, wA, 0);
        b.measure_basis(wBm, "b1", {{"q0", wBL, -1}, {"q1", wBf, +1}});
        b.unitary(wBL, "b1", coin, wBm, 0);
        b.unitary(wBL, "a", coin, wAm, 0);
        b.unitary(wBf, "b1", swap, wBR, 0);
        b.unitary(wBf, "a", swap, wBR, 0);
        b.unitary(wBR, "b1", coin, wBm, 0);
        b.unitary(wBR, "a", eye, on_success, success_move);  // virtual right endmarker
    };
    wire_phase1_walk("p1w1", "p1_rewind", "^", +1, "p1_rew2", -1);
    b.add_classical("p1_rew2");
    for (const char* sym : {"a", "b1"}) b.unitary("p1_rew2", sym, eye, "p1_rew2", -1);
    wire_phase1_walk("p1w2", "p1_rew2", "^", +1, "p1coin1", 0);

    // Phase-1 coins happen on the virtual endmarker cell (an a).
    for (int i = 1; i <= k_coins; ++i) {
        const std::string ci = "p1coin" + std::to_string(i);
        const std::string cm = "p1coinm" + std::to_string(i);
        b.add_classical(ci);
        b.add_classical(cm);
        const std::string after = (i == k_coins) ? "p2_scan_a" : "p1coin" + std::to_string(i + 1);
        b.unitary(ci, "a", coin, cm, 0);
        b.measure_basis(cm, "a", {{"q0", after, 0}, {"q1", "p1_coinf", 0}});
    }
    b.unitary("p1_coinf", "a", swap, "p1_coin_rewind", -1);
    for (const char* sym : {"a", "b1"}) b.unitary("p1_coin_rewind", sym, eye, "p1_coin_rewind", -1);
    b.unitary("p1_coin_rewind", "^", eye, "p1_start", 0);

    // Phase 2: m_eq on the a^m b2^m suffix; the last b1 is its left
    // endmarker. The scan starts on the cell phase 1 accepted at.
    for (const char* s :
         {"p2_scan_a", "p2_scan_b", "p2_rewind", "p2_restart", "p2_rew2", "p2_coinf", "p2_coin_rewind"})
        b.add_classical(s);
    b.unitary("p2_scan_a", "a", rot_a, "p2_scan_a", +1);
    b.unitary("p2_scan_a", "b2", rot_b, "p2_scan_b", +1);
    b.unitary("p2_scan_b", "b2", rot_b, "p2_scan_b", +1);
    b.measure_basis("p2_scan_b", "$", {{"q0", "p2_rewind", -1}, {"q1", "reject", 0}});
    for (const char* sym : {"b2", "a"}) b.unitary("p2_rewind", sym, eye, "p2_rewind", -1);
    b.unitary("p2_restart", "b1", eye, "p2_scan_a", +1);

    // Phase-2 walk: region C = second a block, D = b2 block; absorbed
    // at the last b1 (restart phase 2) or at the real "$" (success).
    auto wire_phase2_walk = [&](const std::string& pfx, const std::string& entry_from,
                                const std::string& entry_sym, int entry_move,
                                const std::string& on_success, int success_move) {
        const std::string wC = pfx + "C", wCm = pfx + "Cm", wCf = pfx + "Cf";
        const std::string wDm = pfx + "Dm", wDL = pfx + "DL", wDf = pfx + "Df", wDR = pfx + "DR";
        for (const auto& s : {wC, wCm, wCf, wDm, wDL, wDf, wDR}) b.add_classical(s);
        b.unitary(entry_from, entry_sym, eye, wC, entry_move);
        b.unitary(wC, "a", coin, wCm, 0);
        b.unitary(wC, "b2", coin, wDm, 0);
        b.unitary(wC, "b1", eye, "p2_restart", 0);  // fell back onto the virtual left end
        b.measure_basis(wCm, "a", {{"q0", wC, -1}, {"q1", wCf, +1}});
        b.unitary(wCf, "a", swap, wC, 0);
        b.unitary(wCf, "b2", swap, wC, 0);
        b.measure_basis(wDm, "b2", {{"q0", wDL, -1}, {"q1", wDf, +1}});
        b.unitary(wDL, "b2", coin, wDm, 0);
        b.unitary(wDL, "a", coin, wCm, 0);
        b.unitary(wDf, "b2", swap, wDR, 0);
        b.unitary(wDf, "$", swap, wDR, 0);
        b.unitary(wDR, "b2", coin, wDm, 0);
        b.unitary(wDR, "$", eye, on_success, success_move);
    };
    wire_phase2_walk("p2w1", "p2_rewind", "b1", +1, "p2_rew2", -1);
    for (const char* sym : {"b2", "a"}) b.unitary("p2_rew2", sym, eye, "p2_rew2", -1);
    wire_phase2_walk("p2w2", "p2_rew2", "b1", +1, "p2coin1", 0);

    for (int i = 1; i <= k_coins; ++i) {
        const std::string ci = "p2coin" + std::to_string(i);
        const std::string cm = "p2coinm" + std::to_string(i);
        b.add_classical(ci);
        b.add_classical(cm);
        const std::string after = (i == k_coins) ? "accept" : "p2coin" + std::to_string(i + 1);
        b.unitary(ci, "$", coin, cm, 0);
        b.measure_basis(cm, "$", {{"q0", after, 0}, {"q1", "p2_coinf", 0}});
    }
    b.unitary("p2_coinf", "$", swap, "p2_coin_rewind", -1);
    for (const char* sym : {"b2", "a"}) b.unitary("p2_coin_rewind", sym, eye, "p2_coin_rewind", -1);
    b.unitary("p2_coin_rewind", "b1", eye, "p2_restart", 0);

    b.fill_missing("reject");
    return b.build();
}

std::map<std::string, Machine> example_machines(int k_coins) {
    std::map<std::string, Machine> out;
    Machine r1 = m_eq_ratio(1, Orientation::AHeavy, k_coins);
    Machine r2 = m_eq_ratio(2, Orientation::AHeavy, k_coins);
    Machine ex2 = union_(r1, r2).machine;
    ex2.name = "example_2";
    out.emplace("example-2", std::move(ex2));
    Machine ex3 = complement(m_count_eq(k_coins)).machine;
    ex3.name = "example_3";
    out.emplace("example-3", std::move(ex3));
    Machine r4 = m_eq_double(k_coins);
    r4.name = "remark_4";
    out.emplace("remark-4", std::move(r4));
    return out;
}

}  // namespace qcfa::zoo
