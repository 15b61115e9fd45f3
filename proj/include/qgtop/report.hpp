#pragma once

// JSON / CSV emission. All floats go out at 12 significant digits; the
// circuit serializer (17 digits, bit-exact round trips) lives in
// circuit_io.hpp and is deliberately separate.

#include <json.hpp>

#include "gates.hpp"

namespace qgtop {

using json = nlohmann::json;

inline std::string sig12_str(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// Round-trip through the 12-digit decimal form so JSON numbers match the
// documented precision exactly.
inline double sig12(double x) { return std::strtod(sig12_str(x).c_str(), nullptr); }

// Complex amplitudes in the same re+imj literal format the CLI accepts.
inline std::string complex_literal(const Cmplx& z) {
    const double im = z.imag();
    return sig12_str(z.real()) + (std::signbit(im) ? "-" : "+") + sig12_str(std::abs(im)) + "j";
}

inline std::string state_literal(const State& psi) {
    std::string s;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (i) s += ",";
        s += complex_literal(psi[i]);
    }
    return s;
}

inline json phase_report_json(const PhaseReport& pr) {
    return json{{"connection_integral", sig12(pr.connection_integral)},
                {"closing_arg", sig12(pr.closing_arg)},
                {"gauge_correction", sig12(pr.gauge_correction)},
                {"gamma", sig12(pr.gamma)},
                {"closing_overlap_abs", sig12(pr.closing_overlap_abs)}};
}

inline json conventions_json(bool global_phase_included, const Rational& cycles) {
    return json{{"global_phase_included", global_phase_included}, {"cycles", cycles.str()}};
}

// nu_H of each segment as written (one entry per segment, file order); null
// where the spectrum is degenerate at zero and the class is undefined.
inline json nu_h_per_segment_json(const Schedule& sched, double zero_tol = 1e-9) {
    json arr = json::array();
    for (const Segment& seg : sched.segments) {
        try {
            arr.push_back(sig12(nu_h(seg.hamiltonian, zero_tol).nu()));
        } catch (const std::exception&) {
            arr.push_back(nullptr);
        }
    }
    return arr;
}

inline json nu_h_json(const Schedule& sched, double zero_tol) {
    json detail = json::array();
    for (const Segment& seg : sched.segments) {
        json d;
        try {
            const NuHReport r = nu_h(seg.hamiltonian, zero_tol);
            d = json{{"nu_h", sig12(r.nu())},         {"twice_nu", r.twice_nu},
                     {"n_plus", r.n_plus},            {"n_minus", r.n_minus},
                     {"zero_count", r.zero_count},    {"gauge_stripped", r.gauge_stripped}};
        } catch (const std::exception& e) {
            d = json{{"nu_h", nullptr}, {"error", e.what()}};
        }
        detail.push_back(std::move(d));
    }
    return json{{"nu_h_per_segment", nu_h_per_segment_json(sched, zero_tol)},
                {"segments", std::move(detail)},
                {"zero_tol", zero_tol},
                {"conventions", conventions_json(true, sched.cycles)}};
}

inline json winding_json(const WindingReport& wr, bool global_phase_included,
                         const Rational& cycles) {
    json phases = json::array();
    for (double t : wr.closing_phases) phases.push_back(sig12(t));
    return json{{"nu_u", wr.nu_u},
                {"raw_winding", sig12(wr.raw_winding)},
                {"contour_turns", sig12(wr.contour_turns)},
                {"closing_phases", std::move(phases)},
                {"gauge_correction_trace", sig12(wr.gauge_correction_trace)},
                {"conventions", conventions_json(global_phase_included, cycles)},
                {"residuals", json{{"winding", sig12(wr.residual)}}}};
}

inline json sumrule_json(const SumRuleReport& srr, const Schedule& sched,
                         bool global_phase_included) {
    json gammas = json::array();
    for (std::size_t i = 0; i < srr.gammas.size(); ++i) {
        json g = phase_report_json(srr.gammas[i]);
        State v(srr.eigenvectors.dim());
        for (int r = 0; r < srr.eigenvectors.dim(); ++r)
            v[r] = srr.eigenvectors.at(r, static_cast<int>(i));
        g["state"] = state_literal(v);
        gammas.push_back(std::move(g));
    }
    return json{{"nu_u", srr.nu_u},
                {"nu_h_per_segment", nu_h_per_segment_json(sched)},
                {"gamma_sum_over_2pi", sig12(srr.gamma_sum_over_2pi)},
                {"gamma_sum_corrected_over_2pi", sig12(srr.gamma_sum_corrected_over_2pi)},
                {"gammas", std::move(gammas)},
                {"consistent", srr.consistent},
                {"conventions", conventions_json(global_phase_included, sched.cycles)},
                {"residuals", json{{"winding", sig12(srr.winding.residual)},
                                   {"sum_rule", sig12(srr.discrepancy)}}}};
}

inline json phase_json(const PhaseReport& pr, const State& psi0, const Schedule& sched) {
    json j = phase_report_json(pr);
    j["state"] = state_literal(psi0);
    j["conventions"] = conventions_json(true, sched.cycles);
    return j;
}

inline json table1_json(const std::vector<Table1Row>& rows) {
    json out = json::array();
    for (const Table1Row& row : rows) {
        json entries = json::array();
        for (const Table1Entry& e : row.entries) {
            json bg = json::array(), bo = json::array();
            for (double g : e.basis_gamma) bg.push_back(sig12(g));
            for (double o : e.basis_overlap_abs) bo.push_back(sig12(o));
            entries.push_back(json{{"bare", e.bare},
                                   {"cycles", e.cycles.str()},
                                   {"gamma_sum_over_2pi", sig12(e.gamma_sum_over_2pi)},
                                   {"nu_u", e.nu_u},
                                   {"basis_gamma", std::move(bg)},
                                   {"basis_overlap_abs", std::move(bo)},
                                   {"matches_anchor", e.matches_anchor}});
        }
        out.push_back(json{{"gate", gate_label(row.gate)},
                           {"anchor",
                            json{{"gamma_sum_over_2pi", row.anchor_sum_over_2pi},
                                 {"nu_u", row.anchor_nu}}},
                           {"entries", std::move(entries)},
                           {"any_match", row.any_match}});
    }
    return json{{"table1", std::move(out)}};
}

inline std::string sweep_csv(const std::vector<SweepPoint>& rows) {
    std::string out =
        "alpha0,beta0,concurrence,gamma_numeric,gamma_closed_form,prediction,difference\n";
    for (const SweepPoint& p : rows) {
        out += sig12_str(p.alpha0) + "," + sig12_str(p.beta0) + "," + sig12_str(p.concurrence) +
               "," + sig12_str(p.gamma_numeric) + "," + sig12_str(p.gamma_closed_form) + "," +
               sig12_str(p.prediction) + "," + sig12_str(p.difference) + "\n";
    }
    return out;
}

inline std::string noise_csv(const std::vector<NoisePoint>& rows) {
    std::string out = "b_over_lambda,alpha0,gamma_clean,gamma_noisy,delta_numeric,delta_predicted\n";
    for (const NoisePoint& p : rows) {
        out += sig12_str(p.b_over_lambda) + "," + sig12_str(p.alpha0) + "," +
               sig12_str(p.gamma_clean) + "," + sig12_str(p.gamma_noisy) + "," +
               sig12_str(p.delta_numeric) + "," + sig12_str(p.delta_predicted) + "\n";
    }
    return out;
}

}  // namespace qgtop
