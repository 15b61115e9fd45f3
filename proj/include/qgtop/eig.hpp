#pragma once

// Hermitian and unitary eigendecompositions via cyclic Jacobi sweeps.
// Deterministic output ordering: Hermitian eigenvalues ascend; within a
// degenerate cluster, eigenvectors sort by descending magnitude of their
// first nonzero amplitude and every column is phase-fixed so that its
// first nonzero amplitude is real positive.

#include <cmath>
#include <cstdio>
#include <numeric>

#include "complex_matrix.hpp"

namespace qgtop {

struct HermitianEig {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns, same order as values
};

struct UnitaryEig {
    std::vector<double> phases;  // principal branch (-pi, pi], ascending
    ComplexMatrix vectors;
};

namespace detail {

inline int first_significant_row(const ComplexMatrix& v, int col, double tol = 1e-12) {
    for (int r = 0; r < v.dim(); ++r)
        if (std::abs(v.at(r, col)) > tol) return r;
    return v.dim() - 1;
}

inline void phase_fix_column(ComplexMatrix& v, int col) {
    const int r = first_significant_row(v, col);
    const Cmplx lead = v.at(r, col);
    const double mag = std::abs(lead);
    if (mag == 0.0) return;
    const Cmplx rot = std::conj(lead) / mag;
    for (int i = 0; i < v.dim(); ++i) v.at(i, col) *= rot;
}

// Reorder eigenpairs: values ascending; inside clusters of width
// cluster_tol * scale, descending first-amplitude magnitude breaks ties.
inline void canonical_order(std::vector<double>& vals, ComplexMatrix& vecs, double cluster_tol) {
    const int n = static_cast<int>(vals.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });

    double scale = 0.0;
    for (double v : vals) scale = std::max(scale, std::abs(v));
    const double gap = cluster_tol * std::max(scale, 1.0);

    ComplexMatrix sorted(n);
    std::vector<double> svals(n);
    for (int c = 0; c < n; ++c) {
        svals[c] = vals[idx[c]];
        for (int r = 0; r < n; ++r) sorted.at(r, c) = vecs.at(r, idx[c]);
    }

    for (int start = 0; start < n;) {
        int end = start + 1;
        while (end < n && svals[end] - svals[start] < gap) ++end;
        if (end - start > 1) {
            std::vector<int> local(end - start);
            std::iota(local.begin(), local.end(), start);
            auto key = [&](int col) {
                int r = first_significant_row(sorted, col);
                return std::pair<double, int>(-std::abs(sorted.at(r, col)), r);
            };
            std::stable_sort(local.begin(), local.end(),
                             [&](int a, int b) { return key(a) < key(b); });
            ComplexMatrix tmp(n);
            std::vector<double> tvals(end - start);
            for (int c = start; c < end; ++c) {
                tvals[c - start] = svals[local[c - start]];
                for (int r = 0; r < n; ++r) tmp.at(r, c) = sorted.at(r, local[c - start]);
            }
            for (int c = start; c < end; ++c) {
                svals[c] = tvals[c - start];
                for (int r = 0; r < n; ++r) sorted.at(r, c) = tmp.at(r, c);
            }
        }
        start = end;
    }

    for (int c = 0; c < n; ++c) phase_fix_column(sorted, c);
    vals = std::move(svals);
    vecs = std::move(sorted);
}

}  // namespace detail

// Cyclic Jacobi for complex Hermitian matrices. Off-diagonal mass decays
// quadratically once small; 50 sweeps is far beyond what dims <= 16 need.
inline HermitianEig eig_hermitian(const ComplexMatrix& h, double cluster_tol = 1e-9) {
    const int n = h.dim();
    if (n == 0) return {{}, ComplexMatrix(0)};

    const double defect = hermiticity_defect(h);
    const double hnorm = h.frobenius_norm();
    if (defect > 1e-9 * std::max(1.0, hnorm)) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "eig_hermitian: input not Hermitian (asymmetry norm %.3e)", defect);
        throw std::invalid_argument(buf);
    }

    // Symmetrize away the representational dust before iterating.
    ComplexMatrix a(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a.at(r, c) = 0.5 * (h.at(r, c) + std::conj(h.at(c, r)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double stop = 1e-14 * std::max(hnorm, 1e-300);

    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a.at(p, q));
        if (std::sqrt(2.0 * off) <= stop) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const Cmplx beta = a.at(p, q);
                const double babs = std::abs(beta);
                if (babs <= stop / (n * n)) continue;

                // Zeroing (V^dag A V)_pq with this V needs (c^2 - sigma^2)|b| =
                // (alpha - delta) c sigma, i.e. t^2 + 2 tau t - 1 = 0 with
                // tau = (alpha - delta)/(2|b|).
                const double alpha = a.at(p, p).real();
                const double delta = a.at(q, q).real();
                const double tau = (alpha - delta) / (2.0 * babs);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sigma = t * c;
                const Cmplx phase = beta / babs;          // e^{i phi}
                const Cmplx s = sigma * std::conj(phase); // s = sigma e^{-i phi}

                // A <- V^dag A V with V = [[c, -conj(s)], [s, c]] acting on (p, q).
                for (int i = 0; i < n; ++i) {
                    const Cmplx aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = aip * c + aiq * s;
                    a.at(i, q) = -aip * std::conj(s) + aiq * c;
                }
                for (int j = 0; j < n; ++j) {
                    const Cmplx apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = c * apj + std::conj(s) * aqj;
                    a.at(q, j) = -s * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const Cmplx vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = vip * c + viq * s;
                    v.at(i, q) = -vip * std::conj(s) + viq * c;
                }
            }
    }

    double off_final = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) off_final += std::norm(a.at(p, q));
    if (std::sqrt(2.0 * off_final) > 1e-12 * std::max(hnorm, 1.0))
        throw std::runtime_error("eig_hermitian: Jacobi failed to converge");

    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = a.at(i, i).real();
    detail::canonical_order(vals, v, cluster_tol);
    return {std::move(vals), std::move(v)};
}

// exp(-i H t) for Hermitian H, via the spectral decomposition.
inline ComplexMatrix expm_minus_iht(const ComplexMatrix& h, double t) {
    const HermitianEig eig = eig_hermitian(h);
    const int n = h.dim();
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Cmplx s = 0.0;
            for (int k = 0; k < n; ++k)
                s += eig.vectors.at(r, k) * std::polar(1.0, -eig.values[k] * t) *
                     std::conj(eig.vectors.at(c, k));
            out.at(r, c) = s;
        }
    return out;
}

// Eigendecomposition of a unitary W. C = (W + W^dag)/2 and S = (W - W^dag)/2i
// commute with W and with each other; diagonalize C, then split each
// degenerate C-cluster by the projected S. Phases come out as atan2(s, c)
// on the (-pi, pi] branch with -pi mapped to +pi.
inline UnitaryEig eig_unitary(const ComplexMatrix& w) {
    const int n = w.dim();
    const double udef = unitarity_defect(w);
    if (udef > 1e-8) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "eig_unitary: input not unitary (defect %.3e)", udef);
        throw std::invalid_argument(buf);
    }

    const ComplexMatrix wd = w.adjoint();
    ComplexMatrix cmat(n), smat(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cmat.at(r, c) = 0.5 * (w.at(r, c) + wd.at(r, c));
            smat.at(r, c) = (w.at(r, c) - wd.at(r, c)) / Cmplx(0.0, 2.0);
        }

    HermitianEig ce = eig_hermitian(cmat);
    ComplexMatrix vecs = ce.vectors;

    // Rotate within each C-cluster so S is diagonal there too.
    const double ctol = 1e-8;  // |c| <= 1, absolute tolerance is fine
    for (int start = 0; start < n;) {
        int end = start + 1;
        while (end < n && ce.values[end] - ce.values[start] < ctol) ++end;
        const int k = end - start;
        if (k > 1) {
            ComplexMatrix proj(k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    Cmplx s = 0.0;
                    for (int r = 0; r < n; ++r)
                        for (int c = 0; c < n; ++c)
                            s += std::conj(vecs.at(r, start + i)) * smat.at(r, c) *
                                 vecs.at(c, start + j);
                    proj.at(i, j) = s;
                }
            HermitianEig se = eig_hermitian(proj);
            ComplexMatrix rotated(n);
            for (int j = 0; j < k; ++j)
                for (int r = 0; r < n; ++r) {
                    Cmplx s = 0.0;
                    for (int i = 0; i < k; ++i) s += vecs.at(r, start + i) * se.vectors.at(i, j);
                    rotated.at(r, start + j) = s;
                }
            for (int j = 0; j < k; ++j)
                for (int r = 0; r < n; ++r) vecs.at(r, start + j) = rotated.at(r, start + j);
        }
        start = end;
    }

    std::vector<double> phases(n);
    for (int j = 0; j < n; ++j) {
        State col(n);
        for (int r = 0; r < n; ++r) col[r] = vecs.at(r, j);
        const State wc = w * col;
        const double cj = inner(col, cmat * col).real();
        const double sj = inner(col, smat * col).real();
        double theta = std::atan2(sj, cj);
        // The cut belongs to +pi. Snap noise-level undershoots so closings at
        // -Id come out deterministic instead of tracking rounding in <v|S|v>.
        if (theta <= -kPi + 1e-12) theta = kPi;
        phases[j] = theta;

        // Residual check: W v = e^{i theta} v within 1e-9.
        double res = 0.0;
        for (int r = 0; r < n; ++r) res += std::norm(wc[r] - std::polar(1.0, theta) * col[r]);
        res = std::sqrt(res);
        if (res > 1e-9) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "eig_unitary: eigenpair residual %.3e exceeds 1e-9", res);
            throw std::runtime_error(buf);
        }
    }

    detail::canonical_order(phases, vecs, 1e-12);
    return {std::move(phases), std::move(vecs)};
}

}  // namespace qgtop
