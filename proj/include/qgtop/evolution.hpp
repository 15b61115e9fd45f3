#pragma once

// Piecewise-constant schedules and exact trajectory sampling.
//
// A Segment evolves under H_eff = to_matrix(hamiltonian) - (global_phase /
// effective_duration) * Id, so a scalar gate prefactor e^{i phi} is realized
// as a Hamiltonian gauge. An optional strictly positive ramp lambda(t)
// rescales the clock: H(t) = lambda(t) H_eff, and every sample is the exact
// value exp(-i H_eff s(t)) U(t0) with s = integral of lambda. There is no
// integrator error anywhere; step counts only control sampling density.

#include <numeric>
#include <optional>

#include "pauli.hpp"

namespace qgtop {

// Piecewise-linear strength profile on the normalized clock u in [0, 1].
struct RampProfile {
    std::string name;
    std::vector<std::pair<double, double>> points;  // (u, lambda), u ascending

    void validate() const {
        if (points.size() < 2) throw std::invalid_argument("RampProfile: needs >= 2 points");
        if (std::abs(points.front().first) > 1e-12 || std::abs(points.back().first - 1.0) > 1e-12)
            throw std::invalid_argument("RampProfile: grid must span [0, 1]");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second))
                throw std::invalid_argument("RampProfile: non-finite entry");
            if (points[i].second <= 0.0)
                throw std::invalid_argument("RampProfile: lambda must be strictly positive");
            if (i > 0 && points[i].first <= points[i - 1].first)
                throw std::invalid_argument("RampProfile: grid not strictly ascending");
        }
    }

    // Exact trapezoid integral of lambda over [0, u]; piecewise quadratic.
    double integral_to(double u) const {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < points.size(); ++i) {
            const auto [u0, l0] = points[i];
            const auto [u1, l1] = points[i + 1];
            if (u <= u0) break;
            const double hi = std::min(u, u1);
            const double du = hi - u0;
            const double slope = (l1 - l0) / (u1 - u0);
            s += l0 * du + 0.5 * slope * du * du;
        }
        return s;
    }

    double area() const { return integral_to(1.0); }

    double value_at(double u) const {
        if (u <= points.front().first) return points.front().second;
        for (std::size_t i = 0; i + 1 < points.size(); ++i)
            if (u <= points[i + 1].first) {
                const auto [u0, l0] = points[i];
                const auto [u1, l1] = points[i + 1];
                return l0 + (l1 - l0) * (u - u0) / (u1 - u0);
            }
        return points.back().second;
    }

    static RampProfile constant() { return {"const", {{0.0, 1.0}, {1.0, 1.0}}}; }
    static RampProfile tent() { return {"tent", {{0.0, 0.2}, {0.5, 1.8}, {1.0, 0.2}}}; }
    static RampProfile trapezoid() {
        return {"trapezoid", {{0.0, 0.4}, {0.25, 1.2}, {0.75, 1.2}, {1.0, 0.4}}};
    }
    static std::optional<RampProfile> builtin(const std::string& name) {
        if (name == "const") return constant();
        if (name == "tent") return tent();
        if (name == "trapezoid") return trapezoid();
        return std::nullopt;
    }
};

inline bool operator==(const RampProfile& a, const RampProfile& b) {
    return a.name == b.name && a.points == b.points;
}

// Positive rational cycle count; half-integers are the only fractions with
// defined replay semantics (they need a symmetric half-list).
struct Rational {
    long long num = 1;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) {
        if (den <= 0 || num <= 0) throw std::invalid_argument("Rational: must be positive");
        const long long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

inline bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
}

struct Segment {
    HamiltonianSpec hamiltonian;
    double duration = 1.0;
    double global_phase = 0.0;  // e^{i phi} across the segment, as a gauge
    std::optional<RampProfile> ramp;

    double effective_duration() const {
        return ramp ? duration * ramp->area() : duration;
    }
};

inline bool operator==(const PauliTerm& a, const PauliTerm& b) {
    return a.coefficient == b.coefficient && a.letters == b.letters;
}
inline bool operator==(const HamiltonianSpec& a, const HamiltonianSpec& b) {
    return a.qubits == b.qubits && a.identity_coefficient == b.identity_coefficient &&
           a.terms.size() == b.terms.size() &&
           std::equal(a.terms.begin(), a.terms.end(), b.terms.begin(),
                      [](const PauliTerm& x, const PauliTerm& y) { return x == y; });
}
inline bool operator==(const Segment& a, const Segment& b) {
    return a.hamiltonian == b.hamiltonian && a.duration == b.duration &&
           a.global_phase == b.global_phase && a.ramp == b.ramp;
}

struct Schedule {
    int qubits = 2;
    std::vector<Segment> segments;
    Rational cycles{1, 1};

    double segment_sum() const {
        double s = 0.0;
        for (const Segment& seg : segments) s += seg.duration;
        return s;
    }
    double total_duration() const { return cycles.value() * segment_sum(); }
};

inline void validate(const Schedule& sched) {
    if (sched.segments.empty()) throw std::invalid_argument("Schedule: no segments");
    for (const Segment& seg : sched.segments) {
        validate(seg.hamiltonian);
        if (seg.hamiltonian.qubits != sched.qubits)
            throw std::invalid_argument("Schedule: segment qubit count mismatch");
        if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
            throw std::invalid_argument("Schedule: segment duration must be > 0");
        if (!std::isfinite(seg.global_phase))
            throw std::invalid_argument("Schedule: non-finite global phase");
        if (seg.ramp) seg.ramp->validate();
    }
    if (sched.cycles.den != 1 && sched.cycles.den != 2)
        throw std::invalid_argument("Schedule: only whole and half cycle counts are defined");
    if (sched.cycles.den == 2) {
        const std::size_t n = sched.segments.size();
        if (n % 2 != 0)
            throw std::invalid_argument("Schedule: half cycles need an even segment list");
        for (std::size_t i = 0; i < n / 2; ++i)
            if (!(sched.segments[i] == sched.segments[i + n / 2]))
                throw std::invalid_argument(
                    "Schedule: half cycles need a symmetric half-list (second half must "
                    "repeat the first)");
    }
}

// The segment sequence actually played: floor(m) full passes plus, for
// half-integer m, the first half of the (symmetric) list.
inline std::vector<const Segment*> played_segments(const Schedule& sched) {
    validate(sched);
    std::vector<const Segment*> out;
    const long long whole = sched.cycles.num / sched.cycles.den;
    for (long long r = 0; r < whole; ++r)
        for (const Segment& seg : sched.segments) out.push_back(&seg);
    if (sched.cycles.den == 2)
        for (std::size_t i = 0; i < sched.segments.size() / 2; ++i)
            out.push_back(&sched.segments[i]);
    if (out.empty()) throw std::invalid_argument("Schedule: zero total duration");
    return out;
}

struct SegmentTrace {
    std::size_t first_sample = 0;  // index into times of the segment's start
    std::size_t steps = 0;
    double trace_h_eff = 0.0;      // includes the global-phase gauge
    double effective_duration = 0.0;
    ComplexMatrix h_eff;
};

struct Trajectory {
    int qubits = 2;
    std::vector<double> times;              // wall-clock grid, segment boundaries included
    std::vector<ComplexMatrix> unitaries;   // U(t_k), U(0) = I
    std::vector<State> states;              // psi(t_k) when state-tracked, else empty
    std::vector<double> conn_increments;    // exact <H_eff> ds per step when state-tracked
    std::vector<SegmentTrace> segment_traces;
    double min_step_overlap = 1.0;          // min |<psi_k|psi_k+1>| when state-tracked
    double max_step_det_arg = 0.0;          // max |Tr H_eff| * ds over steps

    bool has_states() const { return !states.empty(); }
};

struct StepControl {
    int steps_per_segment = 256;
    double max_step = 0.0;                  // optional wall-clock step cap; 0 disables
    int max_steps_per_segment = 1 << 20;
};

namespace detail {

// Samples one segment onto the back of a trajectory. U(t) = V e^{-i L s} V^dag
// U_entry with s the effective elapsed time, so every sample is exact.
inline void sample_segment(Trajectory& traj, const Segment& seg, const StepControl& ctl,
                           std::size_t seg_index, bool track_state) {
    const double tau_eff = seg.effective_duration();
    const double mu_gauge = seg.global_phase == 0.0 ? 0.0 : -seg.global_phase / tau_eff;

    ComplexMatrix h_eff = to_matrix(seg.hamiltonian);
    const int dim = h_eff.dim();
    for (int i = 0; i < dim; ++i) h_eff.at(i, i) += mu_gauge;
    const double tr = h_eff.trace().real();
    const HermitianEig eig = eig_hermitian(h_eff);

    long long n = std::max(1, ctl.steps_per_segment);
    if (ctl.max_step > 0.0)
        n = std::max<long long>(n, static_cast<long long>(std::ceil(seg.duration / ctl.max_step)));
    // Winding needs |Tr H| * ds < pi/2 per step; size for it analytically.
    if (std::abs(tr) > 0.0)
        n = std::max<long long>(
            n, static_cast<long long>(std::ceil(std::abs(tr) * tau_eff / (0.95 * kPi / 2.0))));

    const ComplexMatrix u_entry = traj.unitaries.back();
    const State psi_entry = track_state ? traj.states.back() : State{};
    double energy_entry = 0.0;
    if (track_state) energy_entry = inner(psi_entry, h_eff * psi_entry).real();

    while (true) {
        if (n > ctl.max_steps_per_segment)
            throw std::runtime_error(
                "propagate: segment " + std::to_string(seg_index) +
                " cannot satisfy trajectory invariants within the step cap");

        // V^dag U_entry once; each sample is then one dense multiply.
        ComplexMatrix a(dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) {
                Cmplx s = 0.0;
                for (int k = 0; k < dim; ++k)
                    s += std::conj(eig.vectors.at(k, r)) * u_entry.at(k, c);
                a.at(r, c) = s;
            }
        State psi_rot(dim);
        if (track_state)
            for (int r = 0; r < dim; ++r) {
                Cmplx s = 0.0;
                for (int k = 0; k < dim; ++k) s += std::conj(eig.vectors.at(k, r)) * psi_entry[k];
                psi_rot[r] = s;
            }

        std::vector<ComplexMatrix> us;
        std::vector<State> ps;
        std::vector<double> ds_list;
        us.reserve(n);
        double s_prev = 0.0;
        double min_overlap = 1.0;
        bool ok = true;
        const double t0 = traj.times.back();
        std::vector<double> ts;
        for (long long j = 1; j <= n; ++j) {
            const double u = static_cast<double>(j) / static_cast<double>(n);
            const double s_eff =
                seg.ramp ? seg.duration * seg.ramp->integral_to(u) : seg.duration * u;
            ts.push_back(t0 + seg.duration * u);
            ds_list.push_back(s_eff - s_prev);
            s_prev = s_eff;

            ComplexMatrix uk(dim);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) {
                    Cmplx s = 0.0;
                    for (int k = 0; k < dim; ++k)
                        s += eig.vectors.at(r, k) *
                             std::polar(1.0, -eig.values[k] * s_eff) * a.at(k, c);
                    uk.at(r, c) = s;
                }
            if (track_state) {
                State pk(dim);
                for (int r = 0; r < dim; ++r) {
                    Cmplx s = 0.0;
                    for (int k = 0; k < dim; ++k)
                        s += eig.vectors.at(r, k) * std::polar(1.0, -eig.values[k] * s_eff) *
                             psi_rot[k];
                    pk[r] = s;
                }
                const State& prev = ps.empty() ? psi_entry : ps.back();
                min_overlap = std::min(min_overlap, std::abs(inner(prev, pk)));
                ps.push_back(std::move(pk));
            }
            us.push_back(std::move(uk));
        }
        if (track_state && min_overlap <= 0.9) ok = false;

        if (!ok) {
            n *= 2;
            continue;
        }

        SegmentTrace trace;
        trace.first_sample = traj.times.size() - 1;
        trace.steps = static_cast<std::size_t>(n);
        trace.trace_h_eff = tr;
        trace.effective_duration = tau_eff;
        trace.h_eff = h_eff;
        traj.segment_traces.push_back(std::move(trace));

        for (long long j = 0; j < n; ++j) {
            if (unitarity_defect(us[j]) > 1e-8)
                throw std::runtime_error("propagate: sampled unitary drifted off the group");
            traj.times.push_back(ts[j]);
            traj.unitaries.push_back(std::move(us[j]));
            traj.max_step_det_arg =
                std::max(traj.max_step_det_arg, std::abs(tr) * ds_list[j]);
            if (track_state) {
                traj.states.push_back(std::move(ps[j]));
                traj.conn_increments.push_back(energy_entry * ds_list[j]);
            }
        }
        if (track_state) traj.min_step_overlap = std::min(traj.min_step_overlap, min_overlap);
        break;
    }
}

inline Trajectory propagate_impl(const Schedule& sched, const StepControl& ctl,
                                 const State* psi0) {
    const std::vector<const Segment*> plays = played_segments(sched);
    const int dim = 1 << sched.qubits;

    Trajectory traj;
    traj.qubits = sched.qubits;
    traj.times.push_back(0.0);
    traj.unitaries.push_back(ComplexMatrix::identity(dim));
    if (psi0) {
        if (static_cast<int>(psi0->size()) != dim)
            throw std::invalid_argument("evolve_state: state dimension mismatch");
        if (std::abs(norm(*psi0) - 1.0) > 1e-10)
            throw std::invalid_argument("evolve_state: state not normalized");
        traj.states.push_back(*psi0);
    }

    for (std::size_t i = 0; i < plays.size(); ++i)
        detail::sample_segment(traj, *plays[i], ctl, i, psi0 != nullptr);
    return traj;
}

}  // namespace detail

inline Trajectory propagate(const Schedule& sched, const StepControl& ctl = {}) {
    return detail::propagate_impl(sched, ctl, nullptr);
}

inline Trajectory evolve_state(const Schedule& sched, const State& psi0,
                               const StepControl& ctl = {}) {
    return detail::propagate_impl(sched, ctl, &psi0);
}

// Reparametrize a segment onto a ramp. The new duration is chosen so the
// effective time integral equals the original duration, which makes the final
// unitary (and every downstream phase) identical by construction.
inline Segment apply_ramp(const Segment& seg, const RampProfile& profile) {
    profile.validate();
    if (seg.ramp) throw std::invalid_argument("apply_ramp: segment is already ramped");
    Segment out = seg;
    out.duration = seg.duration / profile.area();
    out.ramp = profile;
    return out;
}

}  // namespace qgtop
