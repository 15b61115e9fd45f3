#pragma once

#include <random>

#include "qgtop/qgtop.hpp"

namespace th {

using namespace qgtop;

inline double urand(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline State random_state(std::mt19937_64& g, int dim) {
    std::normal_distribution<double> nd;
    State psi(dim);
    for (Cmplx& a : psi) a = Cmplx(nd(g), nd(g));
    return normalized(psi);
}

inline ComplexMatrix random_hermitian(std::mt19937_64& g, int dim, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, scale);
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        m.at(r, r) = nd(g);
        for (int c = r + 1; c < dim; ++c) {
            m.at(r, c) = Cmplx(nd(g), nd(g));
            m.at(c, r) = std::conj(m.at(r, c));
        }
    }
    return m;
}

inline ComplexMatrix random_unitary(std::mt19937_64& g, int dim) {
    return expm_minus_iht(random_hermitian(g, dim), 1.0);
}

// Entangling part plus local fields on both qubits, coefficients in [-2, 2].
inline HamiltonianSpec random_two_qubit_spec(std::mt19937_64& g) {
    HamiltonianSpec s = entangling(urand(g, -2.0, 2.0), urand(g, -2.0, 2.0), urand(g, -2.0, 2.0));
    s.qubits = 2;
    const char axes[3] = {'X', 'Y', 'Z'};
    for (int q = 0; q < 2; ++q)
        for (char a : axes) {
            const double c = urand(g, -2.0, 2.0);
            std::string letters = "II";
            letters[q] = a;
            s.terms.push_back({c, letters});
        }
    return s;
}

inline Schedule random_schedule(std::mt19937_64& g, bool with_phases = true) {
    Schedule sched;
    sched.qubits = 2;
    const int nseg = 1 + static_cast<int>(g() % 5);
    for (int i = 0; i < nseg; ++i) {
        Segment seg;
        seg.hamiltonian = random_two_qubit_spec(g);
        seg.duration = urand(g, 0.1, 5.0);
        if (with_phases && (g() % 2)) seg.global_phase = urand(g, -kPi, kPi);
        sched.segments.push_back(std::move(seg));
    }
    return sched;
}

inline double mod_two_pi_distance(double a, double b) {
    return std::abs(principal_angle(a - b));
}

}  // namespace th
