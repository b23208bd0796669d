#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcfa/compose.hpp"
#include "qcfa/exec.hpp"
#include "qcfa/machine_io.hpp"
#include "qcfa/zoo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

qcfa::Machine load_validated(const std::string& path) {
    qcfa::Machine m = qcfa::parse_machine_file(path);
    qcfa::ValidationReport rep = qcfa::validate(m);
    if (!rep.ok()) throw qcfa::ParseError("machine '" + path + "' is invalid:\n" + rep.to_string());
    return m;
}

void print_estimate(const qcfa::AcceptanceEstimate& e) {
    std::cout << "trials=" << e.trials << "\n"
              << "accepts=" << e.accepts << "\n"
              << "rejects=" << e.rejects << "\n"
              << "budget_exceeded=" << e.budget_exceeded << "\n"
              << "p_acc_hat=" << fmt(e.p_acc_hat) << "\n"
              << "ci_low=" << fmt(e.ci_low) << "\n"
              << "ci_high=" << fmt(e.ci_high) << "\n"
              << "confidence=" << fmt(e.confidence) << "\n"
              << "mean_steps=" << fmt(e.mean_steps) << "\n"
              << "median_steps=" << fmt(e.median_steps) << "\n";
}

void print_report(const qcfa::ComposeReport& rep, const std::string& out_path) {
    std::cout << "op=" << qcfa::op_name(rep.op) << "\n";
    std::cout << "in1_quantum=" << rep.before1.qs << "\nin1_classical=" << rep.before1.cs << "\n";
    if (rep.before2)
        std::cout << "in2_quantum=" << rep.before2->qs << "\nin2_classical=" << rep.before2->cs << "\n";
    std::cout << "out_quantum=" << rep.after.qs << "\nout_classical=" << rep.after.cs << "\n";
    qcfa::StateCounts bound = qcfa::predicted_state_bounds(rep.op, rep.before1, rep.before2);
    std::cout << "bound_quantum=" << bound.qs << "\nbound_classical=" << bound.cs << "\n";
    std::cout << "eps_formula=" << rep.eps_formula << "\n";
    std::cout << "eps_bound=" << fmt(rep.eps_bound) << "\n";
    std::string added;
    for (const auto& s : rep.added_classical) {
        if (!added.empty()) added += ",";
        added += s;
    }
    std::cout << "added_classical=" << added << "\n";
    std::cout << "wrote=" << out_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-way quantum-classical finite automata toolkit"};
    app.require_subcommand(1);

    // validate
    std::string v_file;
    CLI::App* v = app.add_subcommand("validate", "check a machine file against the model rules");
    v->add_option("file", v_file, "machine JSON file")->required();

    // run
    std::string r_file, r_input;
    long long r_trials = 10000, r_max_steps = 1000000;
    std::uint64_t r_seed = 1;
    double r_conf = 0.99;
    CLI::App* r = app.add_subcommand("run", "Monte Carlo acceptance estimate");
    r->add_option("file", r_file)->required();
    r->add_option("--input", r_input, "input string (whitespace-separated for multi-char symbols)")
        ->required();
    r->add_option("--trials", r_trials)->check(CLI::PositiveNumber);
    r->add_option("--seed", r_seed);
    r->add_option("--max-steps", r_max_steps)->check(CLI::PositiveNumber);
    r->add_option("--confidence", r_conf)->check(CLI::Range(1e-6, 1.0 - 1e-6));

    // eval
    std::string e_file, e_input;
    long long e_budget = 100000;
    double e_merge_tol = 1e-9, e_mass_floor = 1e-12;
    CLI::App* e = app.add_subcommand("eval", "exact acceptance probability bounds");
    e->add_option("file", e_file)->required();
    e->add_option("--input", e_input)->required();
    e->add_option("--budget", e_budget)->check(CLI::PositiveNumber);
    e->add_option("--merge-tol", e_merge_tol)->check(CLI::Range(0.0, 1.0));
    e->add_option("--mass-floor", e_mass_floor)->check(CLI::Range(0.0, 1.0));

    // compose
    std::string c_op, c_m1, c_m2, c_out;
    double c_eps1 = 0.0, c_eps2 = 0.0;
    bool c_eps_l1 = false, c_eps_l2 = false;
    CLI::App* c = app.add_subcommand("compose", "closure constructions");
    c->add_option("op", c_op)->required()->check(
        CLI::IsMember({"intersect", "union", "complement", "reverse", "catenate"}));
    c->add_option("m1", c_m1)->required();
    c->add_option("m2", c_m2);
    c->add_option("-o,--output", c_out)->required();
    c->add_option("--eps1", c_eps1, "error bound of m1, for the report")->check(CLI::Range(0.0, 1.0));
    c->add_option("--eps2", c_eps2, "error bound of m2, for the report")->check(CLI::Range(0.0, 1.0));
    c->add_flag("--eps-in-l1", c_eps_l1, "declare that L1 contains the empty string (catenate)");
    c->add_flag("--eps-in-l2", c_eps_l2, "declare that L2 contains the empty string (catenate)");

    // zoo
    std::string z_kind, z_out, z_orientation = "a";
    int z_coins = 3, z_ratio = 1;
    CLI::App* z = app.add_subcommand("zoo", "write one of the built-in machines");
    z->add_option("machine", z_kind)->required()->check(
        CLI::IsMember({"m-eq", "m-count-eq", "m-eq-ratio", "m-eq-double", "example-2", "example-3"}));
    z->add_option("-o,--output", z_out)->required();
    z->add_option("--coins", z_coins, "amplification coins k")->check(CLI::PositiveNumber);
    z->add_option("--ratio", z_ratio, "ratio k of m-eq-ratio")->check(CLI::PositiveNumber);
    z->add_option("--orientation", z_orientation, "a (a-heavy) or b (b-heavy)")
        ->check(CLI::IsMember({"a", "b"}));

    // stats
    std::string s_file, s_inputs, s_csv;
    long long s_trials = 10000, s_max_steps = 1000000;
    std::uint64_t s_seed = 1;
    double s_conf = 0.99;
    CLI::App* st = app.add_subcommand("stats", "batch acceptance statistics to CSV");
    st->add_option("file", s_file)->required();
    st->add_option("--inputs", s_inputs, "file with one input per line (empty line = empty string)")
        ->required();
    st->add_option("--trials", s_trials)->check(CLI::PositiveNumber);
    st->add_option("--seed", s_seed);
    st->add_option("--max-steps", s_max_steps)->check(CLI::PositiveNumber);
    st->add_option("--confidence", s_conf)->check(CLI::Range(1e-6, 1.0 - 1e-6));
    st->add_option("--csv", s_csv, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*v) {
            qcfa::Machine m = qcfa::parse_machine_file(v_file);
            qcfa::ValidationReport rep = qcfa::validate(m);
            if (rep.ok()) {
                std::cout << "ok: " << m.name << " (" << m.quantum_dim() << " quantum, "
                          << m.classical_count() << " classical states)\n";
                return kExitOk;
            }
            std::cout << rep.to_string();
            return kExitParse;
        }

        if (*r) {
            qcfa::Machine m = load_validated(r_file);
            qcfa::Tape t = qcfa::Tape::from_symbols(qcfa::parse_input(m, r_input));
            print_estimate(qcfa::estimate_acceptance(m, t, r_trials, r_seed, r_max_steps, r_conf));
            return kExitOk;
        }

        if (*e) {
            qcfa::Machine m = load_validated(e_file);
            qcfa::Tape t = qcfa::Tape::from_symbols(qcfa::parse_input(m, e_input));
            qcfa::ExactEvalOptions opts;
            opts.step_budget = e_budget;
            opts.merge_tol = e_merge_tol;
            opts.mass_floor = e_mass_floor;
            qcfa::ExactResult res = qcfa::exact_eval(m, t, opts);
            std::cout << "p_acc_low=" << fmt(res.p_acc_low) << "\n"
                      << "p_rej_low=" << fmt(res.p_rej_low) << "\n"
                      << "residual=" << fmt(res.residual) << "\n"
                      << "steps_expanded=" << res.steps_expanded << "\n";
            return kExitOk;
        }

        if (*c) {
            const bool binary = c_op == "intersect" || c_op == "union" || c_op == "catenate";
            if (binary && c_m2.empty()) {
                std::cerr << c_op << " needs two machine files\n";
                return kExitUsage;
            }
            if (!binary && !c_m2.empty()) {
                std::cerr << c_op << " takes a single machine file\n";
                return kExitUsage;
            }
            qcfa::Machine m1 = load_validated(c_m1);
            qcfa::ComposeReport rep;
            if (c_op == "complement") {
                rep = qcfa::complement(m1, c_eps1);
            } else if (c_op == "reverse") {
                rep = qcfa::reverse(m1, c_eps1);
            } else {
                qcfa::Machine m2 = load_validated(c_m2);
                if (c_op == "intersect")
                    rep = qcfa::intersect(m1, m2, c_eps1, c_eps2);
                else if (c_op == "union")
                    rep = qcfa::union_(m1, m2, c_eps1, c_eps2);
                else
                    rep = qcfa::catenate(m1, m2, {c_eps_l1, c_eps_l2}, c_eps1, c_eps2);
            }
            qcfa::serialize_to_file(rep.machine, c_out);
            print_report(rep, c_out);
            return kExitOk;
        }

        if (*z) {
            qcfa::Machine m;
            if (z_kind == "m-eq") {
                m = qcfa::zoo::m_eq(z_coins);
            } else if (z_kind == "m-count-eq") {
                m = qcfa::zoo::m_count_eq(z_coins);
            } else if (z_kind == "m-eq-ratio") {
                m = qcfa::zoo::m_eq_ratio(z_ratio,
                                          z_orientation == "a" ? qcfa::zoo::Orientation::AHeavy
                                                               : qcfa::zoo::Orientation::BHeavy,
                                          z_coins);
            } else if (z_kind == "m-eq-double") {
                m = qcfa::zoo::m_eq_double(z_coins);
            } else {
                m = qcfa::zoo::example_machines(z_coins).at(z_kind);
            }
            qcfa::serialize_to_file(m, z_out);
            std::cout << "wrote=" << z_out << "\n";
            return kExitOk;
        }

        if (*st) {
            qcfa::Machine m = load_validated(s_file);
            std::ifstream in(s_inputs);
            if (!in) {
                std::cerr << "cannot open inputs file: " << s_inputs << "\n";
                return kExitPrecondition;
            }
            std::vector<std::string> inputs;
            std::string line;
            while (std::getline(in, line)) inputs.push_back(line);
            std::vector<qcfa::ProfileRow> rows =
                qcfa::expected_steps_profile(m, inputs, s_trials, s_seed, s_max_steps, s_conf);
            std::ofstream csv(s_csv);
            if (!csv) {
                std::cerr << "cannot open CSV output: " << s_csv << "\n";
                return kExitPrecondition;
            }
            csv << "input,length,trials,accepts,rejects,budget_exceeded,p_acc_hat,ci_low,ci_high,"
                   "mean_steps,median_steps\n";
            for (const auto& row : rows) {
                const auto& est = row.estimate;
                csv << row.input << "," << row.length << "," << est.trials << "," << est.accepts << ","
                    << est.rejects << "," << est.budget_exceeded << "," << fmt(est.p_acc_hat) << ","
                    << fmt(est.ci_low) << "," << fmt(est.ci_high) << "," << fmt(est.mean_steps) << ","
                    << fmt(est.median_steps) << "\n";
            }
            std::cout << "wrote=" << s_csv << "\n";
            return kExitOk;
        }
    } catch (const qcfa::ParseError& err) {
        std::cerr << err.what() << "\n";
        return kExitParse;
    } catch (const qcfa::UnimplementedCaseError& err) {
        std::cerr << err.what() << "\n";
        return kExitPrecondition;
    } catch (const std::invalid_argument& err) {
        std::cerr << err.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitPrecondition;
    }
    return kExitUsage;
}
