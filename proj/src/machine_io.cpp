#include "qcfa/machine_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcfa {

using nlohmann::json;

namespace {

json rational_json(long long num, long long den) { return json::array({num, den}); }

json unitary_json(const UnitaryOp& u) {
    if (u.rotation) {
        const RotationSpec& r = *u.rotation;
        json rot;
        rot["plane"] = json::array({r.plane_i, r.plane_j});
        if (r.sqrt2_num != 0) rot["coeff_sqrt2_pi"] = rational_json(r.sqrt2_num, r.sqrt2_den);
        if (r.pi_num != 0) rot["coeff_pi"] = rational_json(r.pi_num, r.pi_den);
        return json{{"rotation", rot}};
    }
    if (u.swap_pair) return json{{"swap", json::array({u.swap_pair->first, u.swap_pair->second})}};
    if (u.is_identity_exact()) return json("identity");
    json rows = json::array();
    for (std::size_t r = 0; r < u.dim; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < u.dim; ++c)
            row.push_back(json::array({u.at(r, c).real(), u.at(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

json entry_json(const Machine& m, const QuantumAction& a) {
    json e;
    if (std::holds_alternative<UnitaryAction>(a)) {
        const auto& ua = std::get<UnitaryAction>(a);
        e["unitary"] = unitary_json(ua.op);
        e["next"] = m.classical_states[ua.response.next];
        e["move"] = ua.response.move;
    } else {
        const auto& ma = std::get<MeasureAction>(a);
        json blocks = json::array();
        for (std::size_t j = 0; j < ma.measurement.blocks.size(); ++j) {
            json names = json::array();
            for (int q : ma.measurement.blocks[j]) names.push_back(m.quantum_states[q]);
            blocks.push_back(json{{"label", ma.measurement.labels[j]}, {"states", names}});
        }
        e["measure"] = json{{"blocks", blocks}};
        json outs;
        for (std::size_t j = 0; j < ma.responses.size(); ++j)
            outs[ma.measurement.labels[j]] =
                json{{"next", m.classical_states[ma.responses[j].next]}, {"move", ma.responses[j].move}};
        e["outcomes"] = outs;
    }
    return e;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

long long int_field(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
}

std::pair<long long, long long> rational_field(const json& j, const std::string& where) {
    if (j.is_number_integer()) return {j.get<long long>(), 1};
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        long long den = j[1].get<long long>();
        if (den == 0) fail(where, "denominator is zero");
        return {j[0].get<long long>(), den};
    }
    fail(where, "expected an integer or [numerator, denominator]");
}

UnitaryOp parse_unitary(const json& j, std::size_t dim, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "identity") return identity_op(dim);
        fail(where, "unknown unitary shorthand '" + j.get<std::string>() + "'");
    }
    if (j.is_object() && j.contains("rotation")) {
        const json& r = j["rotation"];
        if (!r.is_object() || !r.contains("plane")) fail(where, "rotation needs a plane");
        const json& plane = r["plane"];
        if (!plane.is_array() || plane.size() != 2) fail(where, "plane must be [i, j]");
        RotationSpec spec;
        spec.plane_i = static_cast<int>(int_field(plane[0], where));
        spec.plane_j = static_cast<int>(int_field(plane[1], where));
        if (r.contains("coeff_sqrt2_pi"))
            std::tie(spec.sqrt2_num, spec.sqrt2_den) = rational_field(r["coeff_sqrt2_pi"], where);
        if (r.contains("coeff_pi")) std::tie(spec.pi_num, spec.pi_den) = rational_field(r["coeff_pi"], where);
        try {
            return rotation_op(spec, dim);
        } catch (const std::exception& e) {
            fail(where, e.what());
        }
    }
    if (j.is_object() && j.contains("swap")) {
        const json& s = j["swap"];
        if (!s.is_array() || s.size() != 2) fail(where, "swap must be [i, j]");
        try {
            return basis_swap_op(static_cast<int>(int_field(s[0], where)),
                                 static_cast<int>(int_field(s[1], where)), dim);
        } catch (const std::exception& e) {
            fail(where, e.what());
        }
    }
    if (j.is_array()) {
        if (j.size() != dim) fail(where, "matrix row count does not match |Q|");
        UnitaryOp u = identity_op(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            const json& row = j[r];
            if (!row.is_array() || row.size() != dim) fail(where, "matrix column count does not match |Q|");
            for (std::size_t c = 0; c < dim; ++c) {
                const json& cell = row[c];
                if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
                    fail(where, "matrix entries must be [re, im]");
                u.at(r, c) = Complex{cell[0].get<double>(), cell[1].get<double>()};
            }
        }
        return u;
    }
    fail(where, "unitary must be 'identity', {rotation}, {swap} or a matrix");
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected a list of strings");
    std::vector<std::string> out;
    for (const json& e : j) {
        if (!e.is_string()) fail(where, "expected a list of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

}  // namespace

std::string serialize(const Machine& m) {
    json doc;
    doc["name"] = m.name;
    doc["alphabet"] = m.alphabet;
    doc["quantum_states"] = m.quantum_states;
    doc["classical_states"] = m.classical_states;
    doc["initial_quantum"] = m.quantum_states[m.initial_quantum];
    doc["initial_classical"] = m.classical_states[m.initial_classical];
    json acc = json::array(), rej = json::array();
    for (int s : m.accepting_ids()) acc.push_back(m.classical_states[s]);
    for (int s : m.rejecting_ids()) rej.push_back(m.classical_states[s]);
    doc["accepting"] = acc;
    doc["rejecting"] = rej;
    json trans;
    for (std::size_t s = 0; s < m.classical_count(); ++s) {
        if (m.is_halting(static_cast<int>(s))) continue;
        json row;
        for (std::size_t g = 0; g < m.gamma_size(); ++g) {
            const auto& a = m.action(static_cast<int>(s), static_cast<int>(g));
            if (a) row[m.symbol_name(static_cast<int>(g))] = entry_json(m, *a);
        }
        trans[m.classical_states[s]] = std::move(row);
    }
    doc["transitions"] = std::move(trans);
    return doc.dump(2) + "\n";
}

void serialize_to_file(const Machine& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << serialize(m);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Machine parse_machine(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("machine document must be a JSON object");

    Machine m;
    auto need = [&](const char* key) -> const json& {
        if (!doc.contains(key)) fail("document", std::string("missing field '") + key + "'");
        return doc[key];
    };
    m.name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "machine";
    m.alphabet = string_list(need("alphabet"), "alphabet");
    m.quantum_states = string_list(need("quantum_states"), "quantum_states");
    m.classical_states = string_list(need("classical_states"), "classical_states");

    auto q_id = [&](const std::string& n, const std::string& where) {
        int id = m.quantum_id(n);
        if (id < 0) fail(where, "unknown quantum state '" + n + "'");
        return id;
    };
    auto s_id = [&](const std::string& n, const std::string& where) {
        int id = m.classical_id(n);
        if (id < 0) fail(where, "unknown classical state '" + n + "'");
        return id;
    };

    const json& iq = need("initial_quantum");
    const json& ic = need("initial_classical");
    if (!iq.is_string() || !ic.is_string()) fail("document", "initial states must be names");
    m.initial_quantum = q_id(iq.get<std::string>(), "initial_quantum");
    m.initial_classical = s_id(ic.get<std::string>(), "initial_classical");

    m.kind.assign(m.classical_count(), StateKind::Normal);
    for (const std::string& n : string_list(need("accepting"), "accepting"))
        m.kind[s_id(n, "accepting")] = StateKind::Accept;
    for (const std::string& n : string_list(need("rejecting"), "rejecting")) {
        int id = s_id(n, "rejecting");
        if (m.kind[id] == StateKind::Accept) fail("rejecting", "state '" + n + "' is already accepting");
        m.kind[id] = StateKind::Reject;
    }

    m.actions.assign(m.classical_count() * m.gamma_size(), std::nullopt);
    const json& trans = need("transitions");
    if (!trans.is_object()) fail("transitions", "expected an object keyed by classical state");
    const std::size_t dim = m.quantum_dim();

    for (auto it = trans.begin(); it != trans.end(); ++it) {
        const int s = s_id(it.key(), "transitions");
        if (!it.value().is_object()) fail(it.key(), "expected an object keyed by tape symbol");
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
            const std::string where = "(" + it.key() + ", " + jt.key() + ")";
            const int g = m.symbol_id(jt.key());
            if (g < 0) fail(where, "unknown tape symbol");
            const json& e = jt.value();
            if (!e.is_object()) fail(where, "transition entry must be an object");
            if (e.contains("unitary")) {
                if (!e.contains("next") || !e["next"].is_string()) fail(where, "unitary entry needs 'next'");
                if (!e.contains("move")) fail(where, "unitary entry needs 'move'");
                UnitaryAction ua{parse_unitary(e["unitary"], dim, where),
                                 Response{s_id(e["next"].get<std::string>(), where),
                                          static_cast<int>(int_field(e["move"], where))}};
                m.set_action(s, g, QuantumAction{std::move(ua)});
            } else if (e.contains("measure")) {
                const json& meas = e["measure"];
                if (!meas.is_object() || !meas.contains("blocks") || !meas["blocks"].is_array())
                    fail(where, "measure entry needs a 'blocks' list");
                MeasureAction ma;
                ma.measurement.dim = dim;
                for (const json& blk : meas["blocks"]) {
                    if (!blk.is_object() || !blk.contains("label") || !blk["label"].is_string() ||
                        !blk.contains("states"))
                        fail(where, "each block needs 'label' and 'states'");
                    ma.measurement.labels.push_back(blk["label"].get<std::string>());
                    std::vector<int> idx;
                    for (const std::string& qn : string_list(blk["states"], where))
                        idx.push_back(q_id(qn, where));
                    ma.measurement.blocks.push_back(std::move(idx));
                }
                if (!e.contains("outcomes") || !e["outcomes"].is_object())
                    fail(where, "measure entry needs an 'outcomes' table");
                const json& outs = e["outcomes"];
                for (const std::string& label : ma.measurement.labels) {
                    if (!outs.contains(label)) fail(where, "no outcome for block '" + label + "'");
                    const json& o = outs[label];
                    if (!o.is_object() || !o.contains("next") || !o["next"].is_string() || !o.contains("move"))
                        fail(where, "outcome needs 'next' and 'move'");
                    ma.responses.push_back(Response{s_id(o["next"].get<std::string>(), where),
                                                    static_cast<int>(int_field(o["move"], where))});
                }
                if (outs.size() != ma.measurement.labels.size())
                    fail(where, "outcomes table has entries for unknown blocks");
                m.set_action(s, g, QuantumAction{std::move(ma)});
            } else {
                fail(where, "entry must contain 'unitary' or 'measure'");
            }
        }
    }
    return m;
}

Machine parse_machine_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open machine file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_machine(ss.str());
}

}  // namespace qcfa
