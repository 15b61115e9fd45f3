#pragma once

// Two-qubit entanglement machinery: concurrence, Schmidt-sphere form
//
//   psi = e^{i g} [ cos(a/2) e^{-i b/2} |n1>|n2> + sin(a/2) e^{+i b/2} |-n1>|-n2> ]
//
// with |n> = (cos(t/2) e^{-i f/2}, sin(t/2) e^{+i f/2}), and the closed-form
// geometric phase integral
//
//   gamma = 1/2 int cos(a) (db + cos(t1) df1 + cos(t2) df2).
//
// The one-shot decomposition folds alpha into [0, pi/2] (larger Schmidt
// coefficient on the first pair). The trajectory integrator instead keeps the
// pair labels continuous between samples, letting alpha run over [0, pi], so
// equator crossings (where folding would kink the parametrization) integrate
// smoothly.

#include "evolution.hpp"

namespace qgtop {

inline void check_two_qubit_state(const State& psi) {
    if (psi.size() != 4) throw std::invalid_argument("expected a two-qubit state (dim 4)");
    if (std::abs(norm(psi) - 1.0) > 1e-8)
        throw std::invalid_argument("expected a normalized state");
}

// C = |<psi|(sigma_y x sigma_y) K psi>| = 2|ad - bc|.
inline double concurrence(const State& psi) {
    check_two_qubit_state(psi);
    return std::min(1.0, 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]));
}

struct SchmidtForm {
    double alpha = 0.0;   // [0, pi/2]
    double beta = 0.0;    // [0, 2pi); 0 with flag when degenerate
    double theta1 = 0.0, phi1 = 0.0;
    double theta2 = 0.0, phi2 = 0.0;
    double global_phase = 0.0;
    bool beta_degenerate = false;   // alpha at a pole: beta is pure gauge
    bool phi1_degenerate = false;   // theta at a pole: phi undefined
    bool phi2_degenerate = false;
};

struct SchmidtVector {
    double x = 0.0, y = 0.0, z = 1.0;
};

namespace detail {

struct BlochAngles {
    double theta = 0.0;
    double phi = 0.0;   // [0, 2pi)
    double mu = 0.0;    // overall phase: vector = e^{i mu} |n(theta, phi)>
    bool phi_degenerate = false;
};

inline double wrap_two_pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

inline BlochAngles extract_bloch(Cmplx v0, Cmplx v1, double pole_tol = 1e-9) {
    BlochAngles b;
    const double m0 = std::abs(v0), m1 = std::abs(v1);
    b.theta = 2.0 * std::atan2(m1, m0);
    if (m0 > pole_tol && m1 > pole_tol) {
        b.phi = wrap_two_pi(std::arg(v1) - std::arg(v0));
        b.mu = std::arg(v0) + 0.5 * b.phi;
    } else if (m1 <= m0) {  // north pole
        b.phi = 0.0;
        b.phi_degenerate = true;
        b.mu = std::arg(v0);
    } else {  // south pole
        b.phi = 0.0;
        b.phi_degenerate = true;
        b.mu = std::arg(v1);
    }
    return b;
}

inline std::pair<Cmplx, Cmplx> plus_vector(double theta, double phi) {
    return {std::cos(0.5 * theta) * std::polar(1.0, -0.5 * phi),
            std::sin(0.5 * theta) * std::polar(1.0, +0.5 * phi)};
}

inline std::pair<Cmplx, Cmplx> minus_vector(double theta, double phi) {
    return {-std::sin(0.5 * theta) * std::polar(1.0, -0.5 * phi),
            std::cos(0.5 * theta) * std::polar(1.0, +0.5 * phi)};
}

// One Schmidt pair split of the amplitude matrix M[j][k] = <jk|psi> along a
// given right vector v: sigma u (x) conj(v) with u = M v / sigma. The residual
// pair uses the orthogonal complement. Exact identity for any unit v:
// M = (M v) conj(v)^T + (M v_perp) conj(v_perp)^T.
struct PairSplit {
    double sigma_first = 0.0, sigma_second = 0.0;
    Cmplx u_first[2], u_second[2];   // qubit-1 vectors
    Cmplx w_first[2], w_second[2];   // qubit-2 vectors (conj of right vectors)
    Cmplx v_first[2];                // right vector kept for continuity
};

inline PairSplit split_along(const Cmplx m[2][2], const Cmplx v[2]) {
    PairSplit s;
    const Cmplx vp[2] = {-std::conj(v[1]), std::conj(v[0])};
    Cmplx mv[2] = {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
    Cmplx mvp[2] = {m[0][0] * vp[0] + m[0][1] * vp[1], m[1][0] * vp[0] + m[1][1] * vp[1]};
    s.sigma_first = std::sqrt(std::norm(mv[0]) + std::norm(mv[1]));
    s.sigma_second = std::sqrt(std::norm(mvp[0]) + std::norm(mvp[1]));
    for (int i = 0; i < 2; ++i) {
        s.v_first[i] = v[i];
        s.w_first[i] = std::conj(v[i]);
        s.w_second[i] = std::conj(vp[i]);
        s.u_first[i] = s.sigma_first > 1e-300 ? mv[i] / s.sigma_first : (i == 0 ? 1.0 : 0.0);
    }
    if (s.sigma_second > 1e-12) {
        for (int i = 0; i < 2; ++i) s.u_second[i] = mvp[i] / s.sigma_second;
    } else {
        s.u_second[0] = -std::conj(s.u_first[1]);
        s.u_second[1] = std::conj(s.u_first[0]);
    }
    return s;
}

struct AngleSet {
    double alpha = 0.0;  // [0, pi] in track mode, [0, pi/2] folded
    double beta = 0.0;
    BlochAngles b1, b2;
    double global_phase = 0.0;
    bool beta_degenerate = false;
};

inline AngleSet angles_from_split(const PairSplit& s) {
    AngleSet a;
    a.alpha = 2.0 * std::atan2(s.sigma_second, s.sigma_first);
    a.b1 = extract_bloch(s.u_first[0], s.u_first[1]);
    a.b2 = extract_bloch(s.w_first[0], s.w_first[1]);
    const double mu = a.b1.mu + a.b2.mu;
    if (s.sigma_second > 1e-12) {
        const auto m1 = minus_vector(a.b1.theta, a.b1.phi);
        const auto m2 = minus_vector(a.b2.theta, a.b2.phi);
        const Cmplx o1 = std::conj(m1.first) * s.u_second[0] + std::conj(m1.second) * s.u_second[1];
        const Cmplx o2 = std::conj(m2.first) * s.w_second[0] + std::conj(m2.second) * s.w_second[1];
        if (std::abs(o1) < 1.0 - 1e-5 || std::abs(o2) < 1.0 - 1e-5)
            throw std::logic_error("schmidt: minus-branch vectors failed to align");
        const double xi = std::arg(o1) + std::arg(o2);
        a.beta = wrap_two_pi(xi - mu);
        a.global_phase = principal_angle(mu + 0.5 * a.beta);
    } else {
        a.beta = 0.0;
        a.beta_degenerate = true;
        a.global_phase = principal_angle(mu);
    }
    return a;
}

inline void eig_2x2_right_vectors(const Cmplx m[2][2], Cmplx v_large[2], Cmplx v_small[2],
                                  double& gap) {
    // G = M^dag M, Hermitian 2x2.
    const Cmplx g01 = std::conj(m[0][0]) * m[0][1] + std::conj(m[1][0]) * m[1][1];
    const double g00 = std::norm(m[0][0]) + std::norm(m[1][0]);
    const double g11 = std::norm(m[0][1]) + std::norm(m[1][1]);
    const double tr = g00 + g11;
    const double disc = std::sqrt(std::max(0.0, (g00 - g11) * (g00 - g11) + 4.0 * std::norm(g01)));
    const double lam_large = 0.5 * (tr + disc);
    gap = disc;
    // Eigenvector for lam_large: (g01, lam - g00) or (lam - g11, conj(g01)).
    Cmplx a = g01, b = Cmplx(lam_large - g00, 0.0);
    Cmplx a2 = Cmplx(lam_large - g11, 0.0), b2 = std::conj(g01);
    if (std::norm(a2) + std::norm(b2) > std::norm(a) + std::norm(b)) {
        a = a2;
        b = b2;
    }
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n < 1e-300) {  // fully degenerate: any direction
        a = 1.0;
        b = 0.0;
        n = 1.0;
    }
    v_large[0] = a / n;
    v_large[1] = b / n;
    v_small[0] = -std::conj(v_large[1]);
    v_small[1] = std::conj(v_large[0]);
}

inline void amplitude_matrix(const State& psi, Cmplx m[2][2]) {
    m[0][0] = psi[0];
    m[0][1] = psi[1];
    m[1][0] = psi[2];
    m[1][1] = psi[3];
}

}  // namespace detail

inline SchmidtForm schmidt_decompose(const State& psi) {
    check_two_qubit_state(psi);
    Cmplx m[2][2];
    detail::amplitude_matrix(psi, m);

    Cmplx v_large[2], v_small[2];
    double gap = 0.0;
    detail::eig_2x2_right_vectors(m, v_large, v_small, gap);

    detail::PairSplit split;
    if (gap < 1e-12) {
        // Maximally entangled: the Schmidt basis is free. Fix it by pushing
        // the first qubit-1 vector onto |0> (maximizes |<0|n1>|, theta1 = 0).
        Cmplx v0[2] = {std::conj(m[0][0]), std::conj(m[0][1])};  // M^dag e0
        const double n = std::sqrt(std::norm(v0[0]) + std::norm(v0[1]));
        if (n > 1e-300) {
            v0[0] /= n;
            v0[1] /= n;
            split = detail::split_along(m, v0);
        } else {
            split = detail::split_along(m, v_large);
        }
    } else {
        split = detail::split_along(m, v_large);
    }

    detail::AngleSet a = detail::angles_from_split(split);
    SchmidtForm form;
    form.alpha = a.alpha;
    form.beta = a.beta;
    form.beta_degenerate = a.beta_degenerate;
    form.theta1 = a.b1.theta;
    form.phi1 = a.b1.phi;
    form.phi1_degenerate = a.b1.phi_degenerate;
    form.theta2 = a.b2.theta;
    form.phi2 = a.b2.phi;
    form.phi2_degenerate = a.b2.phi_degenerate;
    form.global_phase = a.global_phase;
    return form;
}

inline State schmidt_reconstruct(const SchmidtForm& f) {
    const auto p1 = detail::plus_vector(f.theta1, f.phi1);
    const auto p2 = detail::plus_vector(f.theta2, f.phi2);
    const auto m1 = detail::minus_vector(f.theta1, f.phi1);
    const auto m2 = detail::minus_vector(f.theta2, f.phi2);
    const Cmplx cp = std::cos(0.5 * f.alpha) * std::polar(1.0, -0.5 * f.beta);
    const Cmplx cm = std::sin(0.5 * f.alpha) * std::polar(1.0, +0.5 * f.beta);
    const Cmplx g = std::polar(1.0, f.global_phase);
    State psi(4);
    psi[0] = g * (cp * p1.first * p2.first + cm * m1.first * m2.first);
    psi[1] = g * (cp * p1.first * p2.second + cm * m1.first * m2.second);
    psi[2] = g * (cp * p1.second * p2.first + cm * m1.second * m2.first);
    psi[3] = g * (cp * p1.second * p2.second + cm * m1.second * m2.second);
    return psi;
}

inline SchmidtVector schmidt_vector(const SchmidtForm& f) {
    return {std::sin(f.alpha) * std::cos(f.beta), std::sin(f.alpha) * std::sin(f.beta),
            std::cos(f.alpha)};
}

// Sigma-tilde operators in the |00>/|11> anchoring (SM's symmetric-sector
// Pauli algebra); <psi|Sigma|psi> reproduces schmidt_vector on that family.
inline ComplexMatrix sigma_tilde_z() {
    ComplexMatrix m(4);
    m.at(0, 0) = 1.0;
    m.at(3, 3) = -1.0;
    return m;
}
inline ComplexMatrix sigma_tilde_x() {
    ComplexMatrix m(4);
    m.at(0, 3) = 1.0;
    m.at(3, 0) = 1.0;
    return m;
}
inline ComplexMatrix sigma_tilde_y() {
    ComplexMatrix m(4);
    m.at(0, 3) = Cmplx(0.0, -1.0);
    m.at(3, 0) = Cmplx(0.0, 1.0);
    return m;
}

// Closed-form two-qubit geometric phase along a state trajectory (Eq. (10)
// style): trapezoid integral of 1/2 cos(a)(db + cos(t1) df1 + cos(t2) df2)
// over continuously tracked Schmidt parameters.
//
// Singularity policy: alpha within `margin` of 0 or pi (beta undefined) is a
// hard error, as is any per-step parameter jump >= pi/2 (insufficient
// resolution, e.g. a transversal theta pole crossing). Persistent theta poles
// are fine: phi is frozen there and contributes nothing. The running alpha is
// unfolded past pi/2 by keeping the Schmidt pair labels continuous, so
// equator (maximal-entanglement) crossings are smooth.
inline double gamma_closed_form(const Trajectory& traj, double margin = 1e-6) {
    if (!traj.has_states() || traj.states.size() < 2)
        throw std::invalid_argument("gamma_closed_form: trajectory carries no states");

    struct Tracked {
        double alpha, beta, theta1, phi1, theta2, phi2;
    };
    std::vector<Tracked> track;
    track.reserve(traj.states.size());

    Cmplx v_prev[2] = {1.0, 0.0};
    bool have_prev = false;

    auto unwrap_near = [](double raw, double prev) {
        return raw + kTwoPi * std::round((prev - raw) / kTwoPi);
    };

    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const State& psi = traj.states[k];
        check_two_qubit_state(psi);
        Cmplx m[2][2];
        detail::amplitude_matrix(psi, m);

        Cmplx v_large[2], v_small[2];
        double gap = 0.0;
        detail::eig_2x2_right_vectors(m, v_large, v_small, gap);

        Cmplx v_pick[2];
        if (!have_prev) {
            v_pick[0] = v_large[0];
            v_pick[1] = v_large[1];
        } else if (gap < 1e-8) {
            // Degenerate Schmidt spectrum: any right vector is valid; carry
            // the previous one to keep the pair labels continuous.
            v_pick[0] = v_prev[0];
            v_pick[1] = v_prev[1];
        } else {
            const Cmplx ol = std::conj(v_prev[0]) * v_large[0] + std::conj(v_prev[1]) * v_large[1];
            const Cmplx os = std::conj(v_prev[0]) * v_small[0] + std::conj(v_prev[1]) * v_small[1];
            if (std::abs(ol) >= std::abs(os)) {
                v_pick[0] = v_large[0];
                v_pick[1] = v_large[1];
            } else {
                v_pick[0] = v_small[0];
                v_pick[1] = v_small[1];
            }
        }

        const detail::PairSplit split = detail::split_along(m, v_pick);
        detail::AngleSet a = detail::angles_from_split(split);

        if (std::min(a.alpha, kPi - a.alpha) < margin)
            throw std::domain_error(
                "gamma_closed_form: closed form inapplicable near a Schmidt pole "
                "(alpha within margin of 0 or pi); use geometric_phase");

        Tracked cur;
        cur.alpha = a.alpha;
        if (!have_prev) {
            cur.beta = a.beta;
            cur.theta1 = a.b1.theta;
            cur.phi1 = a.b1.phi;
            cur.theta2 = a.b2.theta;
            cur.phi2 = a.b2.phi;
        } else {
            const Tracked& prev = track.back();
            cur.beta = unwrap_near(a.beta, prev.beta);
            cur.theta1 = a.b1.theta;
            cur.theta2 = a.b2.theta;
            cur.phi1 = a.b1.phi_degenerate ? prev.phi1 : unwrap_near(a.b1.phi, prev.phi1);
            cur.phi2 = a.b2.phi_degenerate ? prev.phi2 : unwrap_near(a.b2.phi, prev.phi2);
            const double jump =
                std::max({std::abs(cur.alpha - prev.alpha), std::abs(cur.beta - prev.beta),
                          std::abs(cur.theta1 - prev.theta1), std::abs(cur.phi1 - prev.phi1),
                          std::abs(cur.theta2 - prev.theta2), std::abs(cur.phi2 - prev.phi2)});
            if (jump >= kPi / 2.0)
                throw std::domain_error(
                    "gamma_closed_form: Schmidt parameters jump by >= pi/2 per step; "
                    "refine the trajectory or use geometric_phase");
        }
        track.push_back(cur);
        v_prev[0] = split.v_first[0];
        v_prev[1] = split.v_first[1];
        have_prev = true;
    }

    double gamma = 0.0;
    for (std::size_t k = 0; k + 1 < track.size(); ++k) {
        const Tracked& p = track[k];
        const Tracked& q = track[k + 1];
        const double cb = 0.5 * (std::cos(p.alpha) + std::cos(q.alpha));
        const double c1 =
            0.5 * (std::cos(p.alpha) * std::cos(p.theta1) + std::cos(q.alpha) * std::cos(q.theta1));
        const double c2 =
            0.5 * (std::cos(p.alpha) * std::cos(p.theta2) + std::cos(q.alpha) * std::cos(q.theta2));
        gamma += 0.5 * (cb * (q.beta - p.beta) + c1 * (q.phi1 - p.phi1) + c2 * (q.phi2 - p.phi2));
    }

    // The integrand is the connection of the half-angle rotation lift, which
    // changes sign under a net 2pi winding of beta or either azimuth. When the
    // tracked parameters close onto themselves (a cyclic ray with the Schmidt
    // pair unswapped), an odd total winding therefore leaves the lift at
    // -|psi>, and the observable phase picks up the half turn the bare
    // integral misses. Open paths get the bare integral; the phase is only
    // meaningful for closed ones anyway.
    const Tracked& first = track.front();
    const Tracked& last = track.back();
    const double wind =
        (last.beta - first.beta) + (last.phi1 - first.phi1) + (last.phi2 - first.phi2);
    const double turns = std::round(wind / kTwoPi);
    const bool closes = std::abs(last.alpha - first.alpha) < 1e-3 &&
                        std::abs(last.theta1 - first.theta1) < 1e-3 &&
                        std::abs(last.theta2 - first.theta2) < 1e-3 &&
                        std::abs(wind - kTwoPi * turns) < 1e-3;
    if (closes && (static_cast<long long>(turns) % 2 != 0)) gamma += kPi;
    return gamma;
}

}  // namespace qgtop
