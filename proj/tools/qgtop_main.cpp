// qgtop command-line tool.
//
// Exit codes: 0 success, 1 input error (bad files, flags, states, grammars),
// 2 consistency failure (winding residual, step-cap violations, sum rule
// inconsistency). All numeric output is JSON on stdout unless --out is given;
// warnings go to stderr.

#include <CLI11.hpp>

#include <iostream>

#include "qgtop/qgtop.hpp"

namespace {

using namespace qgtop;

std::vector<double> parse_range(const std::string& s, const std::string& what) {
    return parse_float_grid(s, what);
}

State parse_state(const std::string& s, int dim) {
    State psi = parse_state_literal(s, dim);
    const double n = norm(psi);
    if (n < 1e-12) throw std::invalid_argument("state: zero vector");
    if (std::abs(n - 1.0) > 1e-9) {
        std::cerr << "warning: state norm " << n << " != 1; normalizing\n";
    }
    for (Cmplx& a : psi) a /= n;
    return psi;
}

Schedule load(const std::string& file) {
    const std::filesystem::path p(file);
    return load_circuit(p, sidecar_ramp_lookup(p.has_parent_path()
                                                   ? p.parent_path()
                                                   : std::filesystem::path(".")));
}

Schedule strip_global_phases(Schedule sched) {
    for (Segment& seg : sched.segments) seg.global_phase = 0.0;
    return sched;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << j.dump(2) << "\n";
}

void write_text(const std::string& text, const std::string& out_path) {
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << text;
}

struct CommonArgs {
    std::string circuit;
    int steps = 256;
    bool bare = false;
    std::string out;
};

StepControl control_of(int steps) {
    StepControl ctl;
    ctl.steps_per_segment = steps;
    return ctl;
}

int run(int argc, char** argv) {
    CLI::App app{"geometric phases, winding numbers, and topological classes "
                 "of piecewise-constant qubit schedules"};
    app.require_subcommand(1);

    // nu-h
    auto* nu_h_cmd = app.add_subcommand("nu-h", "topological class of each segment Hamiltonian");
    std::string nuh_circuit;
    double zero_tol = 1e-9;
    nu_h_cmd->add_option("--circuit", nuh_circuit, "circuit file")->required();
    nu_h_cmd->add_option("--zero-tol", zero_tol, "spectral zero tolerance");

    // nu-u
    auto* nu_u_cmd = app.add_subcommand("nu-u", "winding number of the evolution operator");
    CommonArgs nuu;
    nu_u_cmd->add_option("--circuit", nuu.circuit, "circuit file")->required();
    nu_u_cmd->add_option("--steps", nuu.steps, "samples per segment");
    nu_u_cmd->add_flag("--bare", nuu.bare, "strip global-phase gauges");

    // sumrule
    auto* sum_cmd = app.add_subcommand("sumrule", "winding number vs geometric-phase sum");
    CommonArgs sum;
    sum_cmd->add_option("--circuit", sum.circuit, "circuit file")->required();
    sum_cmd->add_option("--steps", sum.steps, "samples per segment");
    sum_cmd->add_flag("--bare", sum.bare, "strip global-phase gauges");

    // phase
    auto* phase_cmd = app.add_subcommand("phase", "geometric phase of one initial state");
    std::string ph_circuit, ph_state;
    int ph_steps = 256;
    phase_cmd->add_option("--circuit", ph_circuit, "circuit file")->required();
    phase_cmd->add_option("--state", ph_state,
                          "comma-separated amplitudes (re+imj), basis |00>,|01>,|10>,|11>")
        ->required();
    phase_cmd->add_option("--steps", ph_steps, "samples per segment");

    // table1
    auto* table_cmd = app.add_subcommand("table1", "gate table under both phase conventions");
    std::string table_out;
    int table_steps = 256;
    table_cmd->add_option("--out", table_out, "write JSON here instead of stdout");
    table_cmd->add_option("--steps", table_steps, "samples per segment");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "family sweep of the squared gates");
    std::string sw_gate, sw_family, sw_alpha, sw_beta, sw_out, sw_cycles;
    bool sw_bare = false;
    double sw_coupling = 1.0;
    int sw_steps = 256;
    sweep_cmd->add_option("--gate", sw_gate, "swap1sq|swap2sq|cnot1sq|cnot2sq")->required();
    sweep_cmd->add_option("--family", sw_family, "sym|asym")->required();
    sweep_cmd->add_option("--alpha0", sw_alpha, "LO:HI:STEP")->required();
    sweep_cmd->add_option("--beta0", sw_beta, "LO:HI:STEP")->required();
    sweep_cmd->add_option("--out", sw_out, "CSV output path")->required();
    sweep_cmd->add_option("--cycles", sw_cycles, "override cycle count (N or N/D)");
    sweep_cmd->add_option("--coupling", sw_coupling, "Hamiltonian coupling strength");
    sweep_cmd->add_option("--steps", sw_steps, "samples per segment");
    sweep_cmd->add_flag("--bare", sw_bare, "strip global-phase gauges");

    // noise
    auto* noise_cmd = app.add_subcommand("noise", "parasitic-field phase shifts");
    std::string nz_b, nz_alpha, nz_out;
    int nz_steps = 256;
    noise_cmd->add_option("--b-over-lambda", nz_b, "LO:HI:STEP")->required();
    noise_cmd->add_option("--alpha0", nz_alpha, "LO:HI:STEP")->required();
    noise_cmd->add_option("--out", nz_out, "CSV output path")->required();
    noise_cmd->add_option("--steps", nz_steps, "samples per segment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (nu_h_cmd->parsed()) {
        emit(nu_h_json(load(nuh_circuit), zero_tol), "");
        return 0;
    }

    if (nu_u_cmd->parsed()) {
        Schedule sched = load(nuu.circuit);
        if (nuu.bare) sched = strip_global_phases(sched);
        const WindingReport wr = winding_number(propagate(sched, control_of(nuu.steps)));
        emit(winding_json(wr, !nuu.bare, sched.cycles), "");
        return 0;
    }

    if (sum_cmd->parsed()) {
        Schedule sched = load(sum.circuit);
        if (sum.bare) sched = strip_global_phases(sched);
        const SumRuleReport srr = sum_rule(sched, control_of(sum.steps));
        emit(sumrule_json(srr, sched, !sum.bare), "");
        return srr.consistent ? 0 : 2;
    }

    if (phase_cmd->parsed()) {
        const Schedule sched = load(ph_circuit);
        const State psi0 = parse_state(ph_state, 1 << sched.qubits);
        const PhaseReport pr = geometric_phase(evolve_state(sched, psi0, control_of(ph_steps)));
        emit(phase_json(pr, psi0, sched), "");
        return 0;
    }

    if (table_cmd->parsed()) {
        emit(table1_json(table1(control_of(table_steps))), table_out);
        return 0;
    }

    if (sweep_cmd->parsed()) {
        static const std::map<std::string, GateName> gate_names = {
            {"swap1sq", GateName::SWAP1},
            {"swap2sq", GateName::SWAP2},
            {"cnot1sq", GateName::CNOT1},
            {"cnot2sq", GateName::CNOT2}};
        const auto git = gate_names.find(sw_gate);
        if (git == gate_names.end())
            throw std::invalid_argument("unknown gate '" + sw_gate +
                                        "' (want swap1sq|swap2sq|cnot1sq|cnot2sq)");
        Family family;
        if (sw_family == "sym")
            family = Family::symmetric;
        else if (sw_family == "asym")
            family = Family::antisymmetric;
        else
            throw std::invalid_argument("unknown family '" + sw_family + "' (want sym|asym)");

        SweepOptions opt;
        opt.bare = sw_bare;
        opt.coupling = sw_coupling;
        opt.ctl = control_of(sw_steps);
        if (!sw_cycles.empty()) {
            const std::size_t slash = sw_cycles.find('/');
            const long long num = std::stoll(sw_cycles.substr(0, slash));
            const long long den =
                slash == std::string::npos ? 1 : std::stoll(sw_cycles.substr(slash + 1));
            opt.cycles = Rational{num, den};
        }
        const std::vector<SweepPoint> rows =
            run_sweep(git->second, family, parse_range(sw_alpha, "--alpha0"),
                      parse_range(sw_beta, "--beta0"), opt);
        write_text(sweep_csv(rows), sw_out);
        return 0;
    }

    if (noise_cmd->parsed()) {
        SweepOptions opt;
        opt.ctl = control_of(nz_steps);
        const std::vector<NoisePoint> rows = run_noise(
            parse_range(nz_b, "--b-over-lambda"), parse_range(nz_alpha, "--alpha0"), opt);
        write_text(noise_csv(rows), nz_out);
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qgtop::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 2;
    }
}
