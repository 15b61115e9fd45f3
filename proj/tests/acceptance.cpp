// Acceptance suite: one self-contained check per shipping criterion, driven
// through the public headers only. Each check prints exactly one [PASS] or
// [FAIL] line; the exit status is the number of failures. `--criterion N`
// restricts the run to a single check (that is how ctest invokes it).

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "helpers.hpp"

namespace {

using namespace qgtop;

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, ap);
    va_end(ap);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ---- 1: winding integrality on random two-qubit schedules ----

Outcome criterion1() {
    std::mt19937_64 g(1001);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const WindingReport w = winding_number(propagate(th::random_schedule(g)));
        worst = std::max(worst, w.residual);
    }
    return {worst < 1e-6, strf("100 random schedules, max |winding - nearest integer| = %.2e", worst)};
}

// ---- 2: eigenbasis sum rule on the same draws ----

Outcome criterion2() {
    std::mt19937_64 g(1001);  // replays the criterion-1 schedules
    double worst = 0.0;
    bool consistent = true;
    for (int i = 0; i < 100; ++i) {
        const SumRuleReport r = sum_rule(th::random_schedule(g));
        worst = std::max(worst, r.discrepancy);
        consistent = consistent && r.consistent;
    }
    return {consistent && worst < 1e-5,
            strf("100 random schedules, max |sum gamma/2pi - nu_u| = %.2e", worst)};
}

// ---- 3: flattened evolutions wind at twice the class per cycle ----

Outcome criterion3() {
    struct Rep {
        const char* label;
        HamiltonianSpec spec;
        int twice_nu;
    };

    ComplexMatrix d(8);
    const double diag[8] = {1, 1, 1, 1, 1, 1, -3, -3};
    for (int k = 0; k < 8; ++k) d.at(k, k) = diag[k];

    HamiltonianSpec zi;
    zi.qubits = 2;
    zi.terms = {{1.0, "ZI"}};

    std::vector<Rep> reps;
    reps.push_back({"+2", pauli_decompose(d), 4});
    reps.push_back({"+1", heisenberg(1.0), 2});
    reps.push_back({"0", zi, 0});
    reps.push_back({"-1", heisenberg(-1.0), -2});
    reps.push_back({"-2", pauli_decompose(Cmplx(-1.0) * d), -4});

    for (const Rep& rep : reps) {
        const NuHReport nh = nu_h(rep.spec);
        if (nh.twice_nu != rep.twice_nu)
            return {false, strf("class %s: nu_h reported 2nu = %d, want %d", rep.label,
                                nh.twice_nu, rep.twice_nu)};
        const HamiltonianSpec flat = pauli_decompose(flatten(rep.spec));
        for (int m = 1; m <= 3; ++m) {
            Schedule s;
            s.qubits = rep.spec.qubits;
            s.segments = {Segment{flat, kTwoPi, 0.0, std::nullopt}};
            s.cycles = Rational{m, 1};
            const int nu = winding_number(propagate(s)).nu_u;
            if (nu != m * rep.twice_nu)
                return {false, strf("class %s, m = %d: nu_u = %d, want %d", rep.label, m, nu,
                                    m * rep.twice_nu)};
        }
    }
    return {true, "nu_u = 2 m nu_h exactly for nu_h in {-2..+2}, m in {1,2,3}"};
}

// ---- 4: purely local fields wind zero and follow the Bloch closed form ----

Outcome criterion4() {
    std::mt19937_64 g(4004);
    const char* locals[6] = {"XI", "YI", "ZI", "IX", "IY", "IZ"};

    double worst_sum = 0.0;
    for (int i = 0; i < 50; ++i) {
        Schedule s;
        s.qubits = 2;
        const int nseg = 1 + static_cast<int>(g() % 5);
        for (int k = 0; k < nseg; ++k) {
            Segment seg;
            seg.hamiltonian.qubits = 2;
            for (const char* p : locals)
                seg.hamiltonian.terms.push_back({th::urand(g, -2.0, 2.0), p});
            seg.duration = th::urand(g, 0.1, 5.0);
            s.segments.push_back(std::move(seg));
        }
        const SumRuleReport r = sum_rule(s);
        if (r.nu_u != 0) return {false, strf("local schedule %d wound nu_u = %d", i, r.nu_u)};
        worst_sum = std::max(worst_sum, std::abs(r.gamma_sum_over_2pi) * kTwoPi);
    }
    if (worst_sum >= 1e-6)
        return {false, strf("local schedules: max |sum gamma| = %.2e", worst_sum)};

    auto local_op = [](const char* p) {
        HamiltonianSpec h;
        h.qubits = 2;
        h.terms = {{1.0, p}};
        return to_matrix(h);
    };
    const ComplexMatrix sx = local_op("XI"), sy = local_op("YI"), sz = local_op("ZI");

    std::normal_distribution<double> nd;
    double worst_cf = 0.0;
    int done = 0;
    for (int attempt = 0; attempt < 100 && done < 20; ++attempt) {
        double u[3], len = 0.0;
        do {
            for (double& x : u) x = nd(g);
            len = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        } while (len < 1e-3);
        for (double& x : u) x /= len;

        const double b = th::urand(g, 0.5, 2.0);
        const State psi = th::random_state(g, 4);
        const double v[3] = {inner(psi, sx * psi).real(), inner(psi, sy * psi).real(),
                             inner(psi, sz * psi).real()};
        const double vlen = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (vlen < 1e-6) continue;  // first-qubit Bloch direction undefined

        Schedule s;
        s.qubits = 2;
        Segment seg;
        seg.hamiltonian.qubits = 2;
        seg.hamiltonian.terms = {{b * u[0], "XI"}, {b * u[1], "YI"}, {b * u[2], "ZI"}};
        seg.duration = kTwoPi / b;  // one full precession
        s.segments = {seg};

        const double gamma = geometric_phase(evolve_state(s, psi)).gamma;
        const double cee = concurrence(psi);
        const double udotn = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) / vlen;
        const double closed = kTwoPi * std::sqrt(std::max(0.0, 1.0 - cee * cee)) * udotn;
        worst_cf = std::max(worst_cf, std::abs(gamma - closed));
        ++done;
    }
    if (done < 20) return {false, "could not draw 20 states with a defined Bloch direction"};
    return {worst_cf < 1e-5, strf("max |sum gamma| = %.2e over 50 schedules; "
                                  "max closed-form error = %.2e over 20 states",
                                  worst_sum, worst_cf)};
}

// ---- 5: symmetric-family SWAP closed forms ----

Outcome criterion5() {
    std::vector<double> alphas;
    for (int k = 0; k <= 8; ++k) alphas.push_back(k * kPi / 16.0);
    const std::vector<double> betas = {0.7};

    const std::vector<SweepPoint> s1 = run_sweep(GateName::SWAP1, Family::symmetric, alphas, betas);
    const std::vector<SweepPoint> s2 = run_sweep(GateName::SWAP2, Family::symmetric, alphas, betas);

    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        e1 = std::max(e1, std::abs(s1[i].difference));
        e2 = std::max(e2, std::abs(s2[i].difference));
        const double diff_curve = s2[i].gamma_numeric - s1[i].gamma_numeric;
        e3 = std::max(e3, std::abs(diff_curve - kPi * std::cos(s1[i].alpha0)));
    }
    return {e1 < 2e-4 && e2 < 2e-4 && e3 < 2e-4,
            strf("max errors: swap1 vs pi = %.2e, swap2 vs pi(1+cos a) = %.2e, "
                 "difference vs pi cos a = %.2e",
                 e1, e2, e3)};
}

// ---- 6: antisymmetric-family SWAP coincidence ----

Outcome criterion6() {
    std::vector<double> alphas, betas;
    for (int k = 0; k <= 8; ++k) alphas.push_back(k * kPi / 16.0);
    for (int j = 0; j <= 8; ++j) betas.push_back(j * kPi / 4.0);

    double worst = 0.0;
    for (GateName gate : {GateName::SWAP1, GateName::SWAP2})
        for (const SweepPoint& p : run_sweep(gate, Family::antisymmetric, alphas, betas))
            worst = std::max(worst, std::abs(p.difference));
    return {worst < 2e-4,
            strf("max |gamma - 2pi sin a cos b| = %.2e over 81-point grids, both compilations",
                 worst)};
}

// ---- 7: CNOT closed forms and the compilation difference map ----

Outcome criterion7() {
    std::vector<double> alphas, betas;
    for (int k = 0; k <= 8; ++k) alphas.push_back(k * kPi / 16.0);
    for (int j = 0; j <= 8; ++j) betas.push_back(j * kPi / 4.0);

    const std::vector<SweepPoint> c1 =
        run_sweep(GateName::CNOT1, Family::antisymmetric, alphas, betas);
    const std::vector<SweepPoint> c2 =
        run_sweep(GateName::CNOT2, Family::antisymmetric, alphas, betas);

    double e1 = 0.0, ed = 0.0;
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < c1.size(); ++i) {
        e1 = std::max(e1, std::abs(c1[i].difference));
        const double dg = c2[i].gamma_numeric - c1[i].gamma_numeric;
        ed = std::max(ed, std::abs(dg - (c2[i].prediction - c1[i].prediction)));
        if (c1[i].alpha0 > 0.0) {
            has_pos = has_pos || dg > 1e-3;
            has_neg = has_neg || dg < -1e-3;
        }
    }
    return {e1 < 2e-4 && ed < 2e-4 && has_pos && has_neg,
            strf("max errors: cnot1 closed form = %.2e, difference map = %.2e; "
                 "sign change across beta: %s",
                 e1, ed, has_pos && has_neg ? "yes" : "no")};
}

// ---- 8: summary-table anchors under the documented conventions ----

Outcome criterion8() {
    const std::vector<Table1Row> rows = table1();

    // Per-state columns are reported under every convention combination; the
    // anchors below are the only assertion.
    for (const Table1Row& row : rows)
        for (const Table1Entry& e : row.entries)
            std::printf("  info: %-6s bare=%d cycles=%-3s sum/2pi=%+9.6f nu=%+d "
                        "basis gamma/pi = (%+.4f, %+.4f, %+.4f, %+.4f)\n",
                        gate_label(row.gate).c_str(), e.bare ? 1 : 0, e.cycles.str().c_str(),
                        e.gamma_sum_over_2pi, e.nu_u, e.basis_gamma[0] / kPi,
                        e.basis_gamma[1] / kPi, e.basis_gamma[2] / kPi, e.basis_gamma[3] / kPi);

    const std::size_t ncombo = rows.front().entries.size();
    for (std::size_t j = 0; j < ncombo; ++j) {
        bool all = true;
        for (const Table1Row& row : rows) all = all && row.entries[j].matches_anchor;
        if (all)
            return {true, strf("sum and nu_u anchors reproduced with bare=%d cycles=%s",
                               rows[0].entries[j].bare ? 1 : 0,
                               rows[0].entries[j].cycles.str().c_str())};
    }

    std::string blockers;
    for (const Table1Row& row : rows)
        if (!row.any_match) blockers += gate_label(row.gate) + " ";
    if (blockers.empty()) blockers = "(each row matches somewhere, but never jointly)";
    return {false, "no convention combination reproduces the anchor columns; "
                   "rows matching under none: " + blockers};
}

// ---- 9: parasitic-noise slope ----

Outcome criterion9() {
    const std::vector<double> bs = {0.01, 0.02, 0.03, 0.04, 0.05};
    const std::vector<double> as = {0.0, kPi / 4.0, 3.0 * kPi / 8.0};
    const std::vector<NoisePoint> pts = run_noise(bs, as);

    bool pass = true;
    std::string det;
    for (double a : as) {
        double num = 0.0, den = 0.0;
        for (const NoisePoint& p : pts)
            if (p.alpha0 == a) {
                num += p.b_over_lambda * p.delta_numeric;
                den += p.b_over_lambda * p.b_over_lambda;
            }
        const double slope = num / den;
        const double want = kPi * std::cos(a);
        const double rel = std::abs(slope - want) / std::abs(want);
        pass = pass && rel <= 0.05;
        det += strf("a0=%.3f: slope %.4f vs pi cos a0 = %.4f (%.2f%%); ", a, slope, want,
                    100.0 * rel);
    }
    return {pass, det};
}

// ---- 10: gauge invariance and identity-drift correction ----

Outcome criterion10() {
    std::mt19937_64 g(1010);

    // Small endpoint gauges rho = +-pi/8 must never move nu_u. A closing
    // eigenphase within rho of the branch cut can wrap legitimately, so only
    // cut-cleared schedules probe invariance.
    int checked = 0;
    for (int attempt = 0; attempt < 400 && checked < 20; ++attempt) {
        const Schedule s = th::random_schedule(g);
        double margin = kTwoPi;
        for (double t : winding_number(propagate(s)).closing_phases)
            margin = std::min(margin, kPi - std::abs(t));
        if (margin < kPi / 8.0 + 0.05) continue;
        if (!gauge_check(s, kPi / 8.0) || !gauge_check(s, -kPi / 8.0))
            return {false, strf("rho = pi/8 moved nu_u on a schedule with cut margin %.3f",
                                margin)};
        ++checked;
    }
    if (checked < 20) return {false, "could not draw 20 cut-cleared schedules"};

    // Identity drift mu I on a constant segment: the branch-corrected gamma
    // must equal the traceless gamma, both with the correction active
    // (mu T > 2pi) and with it dormant (pi/2 < mu T < 2pi). The closing arg
    // needs clearance above the cut so the drift cannot wrap an extra turn.
    const double mu_ts[2] = {kTwoPi + 0.3, 1.8};
    double worst = 0.0;
    int done = 0;
    for (int attempt = 0; attempt < 400 && done < 20; ++attempt) {
        const double t = th::urand(g, 1.0, 4.0);
        const State psi = th::random_state(g, 4);
        Schedule base;
        base.qubits = 2;
        base.segments = {Segment{th::random_two_qubit_spec(g), t, 0.0, std::nullopt}};
        const PhaseReport r0 = geometric_phase(evolve_state(base, psi));
        if (r0.closing_arg <= 1.8 - kPi + 0.05) continue;
        for (double mu_t : mu_ts) {
            Schedule drifted = base;
            drifted.segments[0].hamiltonian.identity_coefficient += mu_t / t;
            const double gm = geometric_phase(evolve_state(drifted, psi)).gamma;
            worst = std::max(worst, std::abs(gm - r0.gamma));
        }
        ++done;
    }
    if (done < 20) return {false, "could not draw 20 wrap-cleared drift cases"};
    return {worst < 1e-6,
            strf("nu_u unchanged on 20 gauged schedules; max |gamma_drifted - gamma_traceless| "
                 "= %.2e over 20 states x 2 drift regimes",
                 worst)};
}

// ---- 11: closed-form estimator vs the definitional phase ----

Outcome criterion11() {
    std::mt19937_64 g(1111);
    StepControl fine;
    fine.steps_per_segment = 16384;

    double worst = 0.0;
    int done = 0, attempts = 0;
    while (done < 50 && ++attempts <= 600) {
        const Schedule s = th::random_schedule(g, /*with_phases=*/false);
        const Trajectory probe = propagate(s);
        const UnitaryEig we =
            eig_unitary(probe.unitaries.front().adjoint() * probe.unitaries.back());
        State v(4);
        const int pick = static_cast<int>(g() % 4);
        for (int r = 0; r < 4; ++r) v[r] = we.vectors.at(r, pick);

        // Cheap singularity probe before paying for the fine trajectory.
        const Trajectory coarse = evolve_state(s, v);
        double cmin = 2.0;
        for (const State& ps : coarse.states) cmin = std::min(cmin, concurrence(ps));
        if (cmin < 0.05) continue;

        const Trajectory traj = evolve_state(s, v, fine);
        double closed = 0.0;
        try {
            closed = gamma_closed_form(traj);
        } catch (const std::domain_error&) {
            continue;  // singular in a way the coarse probe missed
        }
        const double exact = geometric_phase(traj).gamma;
        worst = std::max(worst, th::mod_two_pi_distance(closed, exact));
        ++done;
    }
    if (done < 50) return {false, strf("only %d usable cyclic trajectories in %d draws", done,
                                       attempts)};
    return {worst < 1e-5,
            strf("50 cyclic trajectories, max |gamma_closed - gamma| mod 2pi = %.2e", worst)};
}

// ---- 12: ramp invariance of the geometric phase ----

Outcome criterion12() {
    const Schedule abrupt = squared_schedule(build_gate(GateName::SWAP1));
    Schedule ramped = abrupt;
    for (Segment& seg : ramped.segments) seg = apply_ramp(seg, RampProfile::tent());

    std::mt19937_64 g(1212);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const State psi = th::random_state(g, 4);
        const double ga = geometric_phase(evolve_state(abrupt, psi)).gamma;
        const double gt = geometric_phase(evolve_state(ramped, psi)).gamma;
        worst = std::max(worst, std::abs(gt - ga));
    }
    return {worst < 1e-6, strf("max |gamma_tent - gamma_abrupt| = %.2e over 10 states", worst)};
}

// ---- 13: entanglement machinery invariants ----

Outcome criterion13() {
    std::mt19937_64 g(1313);

    double e_lu = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const State psi = th::random_state(g, 4);
        const ComplexMatrix u = kron(th::random_unitary(g, 2), th::random_unitary(g, 2));
        e_lu = std::max(e_lu, std::abs(concurrence(u * psi) - concurrence(psi)));
    }

    double e_rt = 0.0, e_sin = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const State psi = th::random_state(g, 4);
        const SchmidtForm f = schmidt_decompose(psi);
        const State rec = schmidt_reconstruct(f);
        double d2 = 0.0;
        for (int k = 0; k < 4; ++k) d2 += std::norm(psi[k] - rec[k]);
        e_rt = std::max(e_rt, std::sqrt(d2));
        e_sin = std::max(e_sin, std::abs(std::sin(f.alpha) - concurrence(psi)));
    }

    return {e_lu < 1e-10 && e_rt < 1e-9 && e_sin < 1e-10,
            strf("LU invariance %.2e (1000 trials), round trip %.2e (10000), "
                 "|sin alpha - C| %.2e",
                 e_lu, e_rt, e_sin)};
}

// ---- 14: parser totality and canonical fixed point ----

std::string random_line_noise(std::mt19937_64& g) {
    static const std::string alphabet =
        "qubits segment hamiltonian cycles ramp phase duration identity "
        "IXYZixyz0123456789 .+-eE/ #,;:(){}\"'\t";
    const std::size_t len = g() % 120;
    std::string s;
    s.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        const std::uint64_t r = g();
        if (r % 10 == 0)
            s.push_back(static_cast<char>(g() % 256));
        else if (r % 7 == 0)
            s.push_back('\n');
        else
            s.push_back(alphabet[g() % alphabet.size()]);
    }
    return s;
}

std::string mutate(std::string s, std::mt19937_64& g) {
    const int edits = 1 + static_cast<int>(g() % 8);
    for (int e = 0; e < edits; ++e) {
        if (s.empty()) {
            s.push_back(static_cast<char>(g() % 256));
            continue;
        }
        const std::size_t pos = g() % s.size();
        switch (g() % 4) {
            case 0:
                s.insert(pos, 1, static_cast<char>(g() % 256));
                break;
            case 1:
                s.erase(pos, 1 + g() % std::min<std::size_t>(8, s.size() - pos));
                break;
            case 2:
                s[pos] = static_cast<char>(g() % 256);
                break;
            default:
                s.insert(pos, s.substr(pos, std::min<std::size_t>(12, s.size() - pos)));
                break;
        }
    }
    return s;
}

Schedule random_valid_schedule(std::mt19937_64& g) {
    Schedule s;
    s.qubits = 1 + static_cast<int>(g() % 4);
    const int base = 1 + static_cast<int>(g() % 3);
    for (int k = 0; k < base; ++k) {
        Segment seg;
        seg.hamiltonian.qubits = s.qubits;
        if (g() % 3 == 0) seg.hamiltonian.identity_coefficient = th::urand(g, -2.0, 2.0);
        const int nterm = 1 + static_cast<int>(g() % 4);
        for (int t = 0; t < nterm; ++t) {
            std::string letters;
            for (int q = 0; q < s.qubits; ++q) letters.push_back("IXYZ"[g() % 4]);
            seg.hamiltonian.terms.push_back({th::urand(g, -3.0, 3.0), letters});
        }
        seg.duration = th::urand(g, 0.1, 5.0);
        if (g() % 3 == 0) seg.global_phase = th::urand(g, -3.0, 3.0);
        switch (g() % 4) {
            case 0:
                seg.ramp = RampProfile::tent();
                break;
            case 1:
                seg.ramp = RampProfile::trapezoid();
                break;
            default:
                break;
        }
        s.segments.push_back(std::move(seg));
    }
    if (g() % 3 == 0) {
        // Half-integer cycle counts need the second half to repeat the first.
        const std::vector<Segment> first = s.segments;
        s.segments.insert(s.segments.end(), first.begin(), first.end());
        s.cycles = Rational{1 + 2 * static_cast<long long>(g() % 3), 2};
    } else {
        s.cycles = Rational{1 + static_cast<long long>(g() % 4), 1};
    }
    return s;
}

Outcome criterion14() {
    std::mt19937_64 g(1414);

    std::vector<std::string> corpus;
    for (int i = 0; i < 12; ++i) corpus.push_back(canonical_circuit(random_valid_schedule(g)));
    corpus.push_back(canonical_circuit(squared_schedule(build_gate(GateName::SWAP1))));
    corpus.push_back(canonical_circuit(build_gate(GateName::CNOT2).schedule));

    long long escaped = 0;
    std::string first;
    for (long long i = 0; i < 100000; ++i) {
        const std::string text =
            (i % 2 == 0) ? random_line_noise(g) : mutate(corpus[g() % corpus.size()], g);
        try {
            (void)parse_circuit(text);
        } catch (const ParseError&) {
        } catch (const std::invalid_argument&) {
        } catch (const std::exception& e) {
            if (escaped == 0) first = e.what();
            ++escaped;
        }
    }
    if (escaped > 0)
        return {false, strf("%lld fuzz inputs leaked a non-diagnostic exception (first: %s)",
                            escaped, first.c_str())};

    int fp_bad = 0;
    for (int i = 0; i < 100; ++i) {
        const std::string t1 = canonical_circuit(random_valid_schedule(g));
        const std::string t2 = canonical_circuit(parse_circuit(t1));
        if (t1 != t2) ++fp_bad;
    }
    if (fp_bad > 0)
        return {false, strf("%d of 100 canonical circuits are not serialization fixed points",
                            fp_bad)};
    return {true, "100000 fuzz inputs, diagnostics only; 100 canonical fixed points"};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);

    struct Row {
        int n;
        const char* title;
        Outcome (*fn)();
    };
    const Row rows[] = {
        {1, "winding numbers are integers on random schedules", criterion1},
        {2, "eigenbasis sum rule matches the winding", criterion2},
        {3, "flattened evolutions wind at twice the class per cycle", criterion3},
        {4, "local fields wind zero and follow the Bloch closed form", criterion4},
        {5, "symmetric-family SWAP closed forms", criterion5},
        {6, "antisymmetric-family SWAP coincidence", criterion6},
        {7, "CNOT closed forms and compilation difference map", criterion7},
        {8, "summary-table anchors under documented conventions", criterion8},
        {9, "parasitic-noise slope", criterion9},
        {10, "gauge invariance and identity-drift correction", criterion10},
        {11, "closed-form estimator matches the definitional phase", criterion11},
        {12, "ramp invariance of the geometric phase", criterion12},
        {13, "entanglement machinery invariants", criterion13},
        {14, "parser totality and canonical fixed point", criterion14},
    };

    int failures = 0;
    for (const Row& row : rows) {
        if (only != 0 && row.n != only) continue;
        Outcome o;
        try {
            o = row.fn();
        } catch (const std::exception& e) {
            o = {false, strf("unexpected exception: %s", e.what())};
        }
        std::printf("[%s] criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", row.n, row.title,
                    o.detail.c_str());
        if (!o.pass) ++failures;
    }
    return failures;
}
