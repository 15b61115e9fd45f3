#pragma once

// Dense complex matrices and state vectors for few-qubit work (dims <= 16).
// Everything is value-semantic; no external linear algebra dependency.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgtop {

using Cmplx = std::complex<double>;
using State = std::vector<Cmplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wrap an angle into the principal branch (-pi, pi]; the boundary resolves
// to +pi so that a half-turn is always reported as +pi, never -pi.
inline double principal_angle(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("principal_angle: non-finite input");
    double r = std::remainder(a, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

// arg(z) on the same branch convention: arg(-1) = +pi even for -0.0 imag parts.
inline double arg_principal(Cmplx z) {
    double a = std::arg(z);
    if (a <= -kPi) a = kPi;
    return a;
}

class ComplexMatrix {
public:
    ComplexMatrix() : dim_(0) {}
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
        if (dim < 0) throw std::invalid_argument("ComplexMatrix: negative dimension");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Cmplx>> rows) {
        ComplexMatrix m(static_cast<int>(rows.size()));
        int r = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != m.dim())
                throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows");
            int c = 0;
            for (Cmplx v : row) m.at(r, c++) = v;
            ++r;
        }
        return m;
    }

    int dim() const { return dim_; }
    Cmplx& at(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    const Cmplx& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(dim_);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
        return m;
    }

    Cmplx trace() const {
        Cmplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += at(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Cmplx& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    ComplexMatrix& operator*=(Cmplx s) {
        for (Cmplx& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Cmplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Cmplx s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const int n = a.dim_;
        ComplexMatrix c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Cmplx aik = a.at(i, k);
                if (aik == Cmplx(0.0)) continue;
                for (int j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
            }
        return c;
    }

private:
    void check_same_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    }

    int dim_;
    std::vector<Cmplx> a_;
};

inline State operator*(const ComplexMatrix& m, const State& v) {
    if (static_cast<int>(v.size()) != m.dim())
        throw std::invalid_argument("matvec: dimension mismatch");
    State out(v.size());
    for (int r = 0; r < m.dim(); ++r) {
        Cmplx s = 0.0;
        for (int c = 0; c < m.dim(); ++c) s += m.at(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

// <a|b> with the conjugate on the first argument.
inline Cmplx inner(const State& a, const State& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
    Cmplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm(const State& v) { return std::sqrt(std::abs(inner(v, v).real())); }

inline State normalized(State v) {
    double n = norm(v);
    if (n < 1e-300) throw std::invalid_argument("normalized: zero vector");
    for (Cmplx& x : v) x /= n;
    return v;
}

// Kronecker product; the first factor owns the most significant index,
// so for two qubits |jk> sits at index 2*j + k.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (int ra = 0; ra < na; ++ra)
        for (int ca = 0; ca < na; ++ca) {
            const Cmplx f = a.at(ra, ca);
            if (f == Cmplx(0.0)) continue;
            for (int rb = 0; rb < nb; ++rb)
                for (int cb = 0; cb < nb; ++cb)
                    out.at(ra * nb + rb, ca * nb + cb) = f * b.at(rb, cb);
        }
    return out;
}

inline State kron(const State& a, const State& b) {
    State out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

// ||A - A^dag|| / 2, i.e. the norm of the anti-Hermitian part.
inline double hermiticity_defect(const ComplexMatrix& a) {
    return 0.5 * frobenius_distance(a, a.adjoint());
}

inline double unitarity_defect(const ComplexMatrix& u) {
    return frobenius_distance(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

// Determinant by LU with partial pivoting.
inline Cmplx determinant(const ComplexMatrix& m) {
    const int n = m.dim();
    if (n == 0) return 1.0;
    ComplexMatrix a = m;
    Cmplx det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(a.at(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(a.at(pivot, c), a.at(col, c));
            det = -det;
        }
        const Cmplx d = a.at(col, col);
        det *= d;
        for (int r = col + 1; r < n; ++r) {
            const Cmplx f = a.at(r, col) / d;
            if (f == Cmplx(0.0)) continue;
            for (int c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
        }
    }
    return det;
}

}  // namespace qgtop
