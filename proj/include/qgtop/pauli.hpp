#pragma once

// Pauli-string Hamiltonians on 1..4 qubit registers.
//
// A HamiltonianSpec is a real-weighted sum of Pauli strings plus an explicit
// identity (gauge) coefficient. The topological class nu_h of a Hermitian H
// is half the signed imbalance of its spectrum, (n_plus - n_minus)/2, taken
// after stripping the gauge term; it is stored doubled so half-integers stay
// exact.

#include <map>
#include <optional>

#include "eig.hpp"

namespace qgtop {

struct PauliTerm {
    double coefficient = 0.0;
    std::string letters;  // one of I X Y Z per qubit, leftmost = qubit 1
};

struct HamiltonianSpec {
    int qubits = 2;
    std::vector<PauliTerm> terms;
    double identity_coefficient = 0.0;  // mu in H = H_0 + mu * Id
};

inline void validate(const HamiltonianSpec& spec) {
    if (spec.qubits < 1 || spec.qubits > 4)
        throw std::invalid_argument("HamiltonianSpec: qubits must be in [1, 4]");
    if (!std::isfinite(spec.identity_coefficient))
        throw std::invalid_argument("HamiltonianSpec: non-finite identity coefficient");
    for (const PauliTerm& t : spec.terms) {
        if (!std::isfinite(t.coefficient))
            throw std::invalid_argument("HamiltonianSpec: non-finite coefficient");
        if (static_cast<int>(t.letters.size()) != spec.qubits)
            throw std::invalid_argument("HamiltonianSpec: Pauli string '" + t.letters +
                                        "' does not match qubit count");
        for (char ch : t.letters)
            if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z')
                throw std::invalid_argument("HamiltonianSpec: bad Pauli letter in '" +
                                            t.letters + "'");
    }
}

namespace detail {

inline const ComplexMatrix& pauli_1q(char letter) {
    static const ComplexMatrix kI = ComplexMatrix::from_rows({{1, 0}, {0, 1}});
    static const ComplexMatrix kX = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    static const ComplexMatrix kY =
        ComplexMatrix::from_rows({{0, Cmplx(0, -1)}, {Cmplx(0, 1), 0}});
    static const ComplexMatrix kZ = ComplexMatrix::from_rows({{1, 0}, {0, -1}});
    switch (letter) {
        case 'I': return kI;
        case 'X': return kX;
        case 'Y': return kY;
        case 'Z': return kZ;
    }
    throw std::invalid_argument("pauli_1q: bad letter");
}

inline ComplexMatrix pauli_string_matrix(const std::string& letters) {
    ComplexMatrix m = pauli_1q(letters[0]);
    for (std::size_t i = 1; i < letters.size(); ++i) m = kron(m, pauli_1q(letters[i]));
    return m;
}

}  // namespace detail

inline ComplexMatrix to_matrix(const HamiltonianSpec& spec) {
    validate(spec);
    const int dim = 1 << spec.qubits;
    ComplexMatrix m(dim);
    for (const PauliTerm& t : spec.terms) {
        if (t.coefficient == 0.0) continue;
        m += t.coefficient * detail::pauli_string_matrix(t.letters);
    }
    for (int i = 0; i < dim; ++i) m.at(i, i) += spec.identity_coefficient;
    return m;
}

// Inverse of to_matrix for Hermitian input: project onto the Pauli basis.
// Coefficients are Tr(P M)/dim and real up to rounding; all-identity mass
// lands in identity_coefficient.
inline HamiltonianSpec pauli_decompose(const ComplexMatrix& m, double drop_tol = 1e-13) {
    int qubits = 0;
    while ((1 << qubits) < m.dim()) ++qubits;
    if ((1 << qubits) != m.dim() || qubits < 1 || qubits > 4)
        throw std::invalid_argument("pauli_decompose: dimension is not 2^n for n in [1, 4]");
    if (hermiticity_defect(m) > 1e-9 * std::max(1.0, m.frobenius_norm()))
        throw std::invalid_argument("pauli_decompose: input not Hermitian");

    HamiltonianSpec spec;
    spec.qubits = qubits;
    const int dim = m.dim();
    std::string letters(qubits, 'I');
    const char alphabet[4] = {'I', 'X', 'Y', 'Z'};
    const int strings = 1 << (2 * qubits);
    double scale = std::max(1.0, m.frobenius_norm());
    for (int code = 0; code < strings; ++code) {
        int c = code;
        for (int q = 0; q < qubits; ++q) {
            letters[q] = alphabet[c & 3];
            c >>= 2;
        }
        const ComplexMatrix p = detail::pauli_string_matrix(letters);
        Cmplx tr = 0.0;
        for (int r = 0; r < dim; ++r)
            for (int k = 0; k < dim; ++k) tr += p.at(r, k) * m.at(k, r);
        const double coeff = tr.real() / dim;
        if (code == 0) {
            spec.identity_coefficient = (std::abs(coeff) > drop_tol * scale) ? coeff : 0.0;
        } else if (std::abs(coeff) > drop_tol * scale) {
            spec.terms.push_back({coeff, letters});
        }
    }
    return spec;
}

struct NuHReport {
    int twice_nu = 0;  // 2 * nu_h, exact integer
    int n_plus = 0;
    int n_minus = 0;
    int zero_count = 0;        // eigenvalues inside the tolerance band
    bool gauge_stripped = false;
    std::vector<double> eigenvalues;  // of the stripped operator, ascending

    double nu() const { return 0.5 * twice_nu; }
};

// nu_h from a Hermitian matrix that is already gauge-free.
inline NuHReport nu_h_from_matrix(const ComplexMatrix& h, double zero_tol = 1e-9) {
    HermitianEig eig = eig_hermitian(h);
    double scale = 0.0;
    for (double v : eig.values) scale = std::max(scale, std::abs(v));
    if (scale < 1e-300)
        throw std::domain_error("nu_h: operator vanishes; class undefined");
    const double band = zero_tol * scale;
    NuHReport rep;
    for (double v : eig.values) {
        if (v > band)
            ++rep.n_plus;
        else if (v < -band)
            ++rep.n_minus;
        else
            ++rep.zero_count;
    }
    if (rep.n_plus + rep.n_minus == 0)
        throw std::domain_error("nu_h: spectrum degenerate at zero; class undefined");
    rep.twice_nu = rep.n_plus - rep.n_minus;
    rep.eigenvalues = std::move(eig.values);
    return rep;
}

// nu_h of a spec: the gauge term is stripped first and the report says so.
inline NuHReport nu_h(const HamiltonianSpec& spec, double zero_tol = 1e-9) {
    HamiltonianSpec stripped = spec;
    const bool had_gauge = stripped.identity_coefficient != 0.0;
    stripped.identity_coefficient = 0.0;
    NuHReport rep = nu_h_from_matrix(to_matrix(stripped), zero_tol);
    rep.gauge_stripped = had_gauge;
    return rep;
}

// Flattened representative V sign(Lambda) V^dag of the full operator
// (gauge included; strip beforehand if the class representative is wanted).
inline ComplexMatrix flatten(const HamiltonianSpec& spec, double zero_tol = 1e-9) {
    const ComplexMatrix h = to_matrix(spec);
    HermitianEig eig = eig_hermitian(h);
    double scale = 0.0;
    for (double v : eig.values) scale = std::max(scale, std::abs(v));
    if (scale < 1e-300) throw std::domain_error("flatten: operator vanishes");
    const int n = h.dim();
    ComplexMatrix out(n);
    for (int k = 0; k < n; ++k) {
        if (std::abs(eig.values[k]) <= zero_tol * scale)
            throw std::domain_error("flatten: eigenvalue inside the zero band; "
                                    "representative undefined");
        const double s = eig.values[k] > 0.0 ? 1.0 : -1.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                out.at(r, c) += s * eig.vectors.at(r, k) * std::conj(eig.vectors.at(c, k));
    }
    return out;
}

inline HamiltonianSpec gauge_shift(HamiltonianSpec spec, double mu) {
    if (!std::isfinite(mu)) throw std::invalid_argument("gauge_shift: non-finite mu");
    spec.identity_coefficient += mu;
    return spec;
}

// ---- named builders ----

namespace detail {

inline std::string one_site(int qubits, int site, char letter) {
    std::string s(qubits, 'I');
    if (site < 0 || site >= qubits) throw std::invalid_argument("builder: site out of range");
    s[site] = letter;
    return s;
}

inline void push_term(HamiltonianSpec& spec, double coeff, std::string letters) {
    if (coeff != 0.0) spec.terms.push_back({coeff, std::move(letters)});
}

}  // namespace detail

// cx XX + cy YY + cz ZZ on two qubits.
inline HamiltonianSpec entangling(double cx, double cy, double cz) {
    HamiltonianSpec spec;
    detail::push_term(spec, cx, "XX");
    detail::push_term(spec, cy, "YY");
    detail::push_term(spec, cz, "ZZ");
    validate(spec);
    return spec;
}

// Isotropic exchange lambda (XX + YY + ZZ).
inline HamiltonianSpec heisenberg(double lambda) { return entangling(lambda, lambda, lambda); }

// (w/2)(Z_c + X_t - Z_c X_t) with control/target on distinct qubits of a pair.
inline HamiltonianSpec cross_resonance(double w, int control = 0) {
    if (control != 0 && control != 1)
        throw std::invalid_argument("cross_resonance: control must be 0 or 1");
    const int target = 1 - control;
    HamiltonianSpec spec;
    detail::push_term(spec, w / 2.0, detail::one_site(2, control, 'Z'));
    detail::push_term(spec, w / 2.0, detail::one_site(2, target, 'X'));
    std::string zx(2, 'I');
    zx[control] = 'Z';
    zx[target] = 'X';
    detail::push_term(spec, -w / 2.0, zx);
    validate(spec);
    return spec;
}

// (E/sqrt(2))(X + Z) on one qubit of a pair: generates a Hadamard.
inline HamiltonianSpec hadamard_h(double e, int site) {
    HamiltonianSpec spec;
    const double c = e / std::sqrt(2.0);
    detail::push_term(spec, c, detail::one_site(2, site, 'X'));
    detail::push_term(spec, c, detail::one_site(2, site, 'Z'));
    validate(spec);
    return spec;
}

// Heisenberg exchange plus a parasitic local field B Z on qubit 1.
inline HamiltonianSpec parasitic_heisenberg(double b, double lambda) {
    HamiltonianSpec spec = heisenberg(lambda);
    detail::push_term(spec, b, "ZI");
    validate(spec);
    return spec;
}

}  // namespace qgtop
