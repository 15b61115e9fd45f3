#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace qgtop;
using Catch::Matchers::WithinAbs;

TEST_CASE("principal_angle maps onto (-pi, pi] with the boundary at +pi") {
    CHECK_THAT(principal_angle(0.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(principal_angle(kPi), WithinAbs(kPi, 1e-15));
    CHECK_THAT(principal_angle(-kPi), WithinAbs(kPi, 1e-15));
    CHECK_THAT(principal_angle(3.0 * kPi), WithinAbs(kPi, 1e-12));
    CHECK_THAT(principal_angle(kTwoPi), WithinAbs(0.0, 1e-15));
    CHECK_THAT(principal_angle(-0.5), WithinAbs(-0.5, 1e-15));
    CHECK_THAT(principal_angle(kPi + 0.25), WithinAbs(-kPi + 0.25, 1e-12));
}

TEST_CASE("kron uses the first factor as the most significant qubit") {
    const ComplexMatrix z = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const ComplexMatrix x = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});

    const ComplexMatrix zi = kron(z, id);
    const double zi_diag[4] = {1.0, 1.0, -1.0, -1.0};
    const ComplexMatrix iz = kron(id, z);
    const double iz_diag[4] = {1.0, -1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i) {
        CHECK_THAT(zi.at(i, i).real(), WithinAbs(zi_diag[i], 1e-15));
        CHECK_THAT(iz.at(i, i).real(), WithinAbs(iz_diag[i], 1e-15));
    }

    const ComplexMatrix xx = kron(x, x);
    for (int i = 0; i < 4; ++i)
        CHECK_THAT(std::abs(xx.at(i, 3 - i) - Cmplx(1.0)), WithinAbs(0.0, 1e-15));

    // |1> kron |0> = |10> = e_2
    const State one{0.0, 1.0}, zero{1.0, 0.0};
    const State v = kron(one, zero);
    REQUIRE(v.size() == 4);
    CHECK_THAT(std::abs(v[2] - Cmplx(1.0)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("inner products conjugate the first argument") {
    const State e0{1.0, 0.0};
    const State iv{Cmplx(0.0, 1.0), 0.0};
    CHECK_THAT(std::abs(inner(e0, iv) - Cmplx(0.0, 1.0)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(inner(iv, e0) - Cmplx(0.0, -1.0)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("determinant: diagonal, unitary modulus, and the trace law") {
    ComplexMatrix d(3);
    d.at(0, 0) = 2.0;
    d.at(1, 1) = Cmplx(0.0, 1.0);
    d.at(2, 2) = -3.0;
    CHECK_THAT(std::abs(determinant(d) - Cmplx(0.0, -6.0)), WithinAbs(0.0, 1e-12));

    std::mt19937_64 g(11);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix h = th::random_hermitian(g, 4);
        const double t = th::urand(g, 0.1, 2.0);
        const ComplexMatrix u = expm_minus_iht(h, t);
        CHECK_THAT(std::abs(determinant(u)) - 1.0, WithinAbs(0.0, 1e-11));
        // det exp(-iHt) = exp(-i tr(H) t)
        const Cmplx expected = std::polar(1.0, -h.trace().real() * t);
        CHECK_THAT(std::abs(determinant(u) - expected), WithinAbs(0.0, 1e-10));
    }
}

TEST_CASE("eig_hermitian nails the Heisenberg and cross-resonance spectra") {
    const double lam = 0.7;
    const HermitianEig eh = eig_hermitian(to_matrix(heisenberg(lam)));
    // Characteristic polynomial roots: -3 lam and a triple lam.
    CHECK_THAT(eh.values[0], WithinAbs(-3.0 * lam, 1e-12));
    for (int i = 1; i < 4; ++i) CHECK_THAT(eh.values[i], WithinAbs(lam, 1e-12));

    const double w = 1.3;
    const HermitianEig ec = eig_hermitian(to_matrix(cross_resonance(w, 0)));
    CHECK_THAT(ec.values[0], WithinAbs(-1.5 * w, 1e-12));
    for (int i = 1; i < 4; ++i) CHECK_THAT(ec.values[i], WithinAbs(0.5 * w, 1e-12));
}

TEST_CASE("eig_hermitian residuals on random and adversarial matrices") {
    std::mt19937_64 g(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + static_cast<int>(g() % 3);  // 2..4
        const ComplexMatrix h = th::random_hermitian(g, dim, 2.0);
        const HermitianEig e = eig_hermitian(h);

        for (int k = 0; k < dim; ++k) {
            State v(dim);
            for (int r = 0; r < dim; ++r) v[r] = e.vectors.at(r, k);
            const State hv = h * v;
            double r2 = 0.0;
            for (int r = 0; r < dim; ++r) r2 += std::norm(hv[r] - e.values[k] * v[r]);
            CHECK(std::sqrt(r2) < 1e-12 * std::max(1.0, h.frobenius_norm()));
        }
        CHECK(unitarity_defect(e.vectors) < 1e-12);
        for (int k = 1; k < dim; ++k) CHECK(e.values[k - 1] <= e.values[k] + 1e-13);
    }
}

TEST_CASE("eig_hermitian handles asymmetric diagonal blocks (regression)") {
    // Heisenberg plus a small Z field splits the central block diagonally;
    // rotations with unequal diagonal entries must still zero the coupling.
    ComplexMatrix h = to_matrix(parasitic_heisenberg(0.01, 1.0));
    const HermitianEig e = eig_hermitian(h);
    // Spectrum: -1 - sqrt(4 + B^2), 1 - B, -1 + sqrt(4 + B^2), 1 + B sorted.
    const double b = 0.01, root = std::sqrt(4.0 + b * b);
    const double expect[4] = {-1.0 - root, 1.0 - b, -1.0 + root, 1.0 + b};
    std::vector<double> sorted(expect, expect + 4);
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 4; ++i) CHECK_THAT(e.values[i], WithinAbs(sorted[i], 1e-12));

    for (int k = 0; k < 4; ++k) {
        State v(4);
        for (int r = 0; r < 4; ++r) v[r] = e.vectors.at(r, k);
        const State hv = h * v;
        double r2 = 0.0;
        for (int r = 0; r < 4; ++r) r2 += std::norm(hv[r] - e.values[k] * v[r]);
        CHECK(std::sqrt(r2) < 1e-12);
    }
}

TEST_CASE("eig_hermitian is deterministic and rejects non-Hermitian input") {
    std::mt19937_64 g(7);
    const ComplexMatrix h = th::random_hermitian(g, 4);
    const HermitianEig a = eig_hermitian(h);
    const HermitianEig b = eig_hermitian(h);
    CHECK(a.values == b.values);
    CHECK(frobenius_distance(a.vectors, b.vectors) == 0.0);

    ComplexMatrix bad = h;
    bad.at(0, 1) += Cmplx(0.0, 0.5);
    CHECK_THROWS_AS(eig_hermitian(bad), std::invalid_argument);
}

TEST_CASE("expm_minus_iht reproduces hand values") {
    const ComplexMatrix x = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const ComplexMatrix u = expm_minus_iht(x, kPi);  // = -I
    CHECK(frobenius_distance(u, Cmplx(-1.0) * ComplexMatrix::identity(2)) < 1e-13);

    const ComplexMatrix z = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    ComplexMatrix expect(2);
    expect.at(0, 0) = std::polar(1.0, -kPi / 2.0);
    expect.at(1, 1) = std::polar(1.0, kPi / 2.0);
    CHECK(frobenius_distance(expm_minus_iht(z, kPi / 2.0), expect) < 1e-13);
}

TEST_CASE("eig_unitary: boundary phases, ordering, residuals") {
    // exp(-i pi X) = -I: both eigenphases sit on the branch boundary -> +pi.
    const ComplexMatrix x = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const UnitaryEig mi = eig_unitary(expm_minus_iht(x, kPi));
    REQUIRE(mi.phases.size() == 2);
    CHECK_THAT(mi.phases[0], WithinAbs(kPi, 1e-12));
    CHECK_THAT(mi.phases[1], WithinAbs(kPi, 1e-12));

    ComplexMatrix d(4);
    d.at(0, 0) = 1.0;
    d.at(1, 1) = Cmplx(0.0, 1.0);
    d.at(2, 2) = -1.0;
    d.at(3, 3) = Cmplx(0.0, -1.0);
    const UnitaryEig de = eig_unitary(d);
    const double expect[4] = {-kPi / 2.0, 0.0, kPi / 2.0, kPi};
    for (int i = 0; i < 4; ++i) CHECK_THAT(de.phases[i], WithinAbs(expect[i], 1e-12));

    std::mt19937_64 g(5);
    for (int trial = 0; trial < 25; ++trial) {
        const ComplexMatrix h = th::random_hermitian(g, 4);
        const ComplexMatrix u = expm_minus_iht(h, 1.0);
        const UnitaryEig e = eig_unitary(u);
        for (int k = 0; k < 4; ++k) {
            State v(4);
            for (int r = 0; r < 4; ++r) v[r] = e.vectors.at(r, k);
            const State uv = u * v;
            double r2 = 0.0;
            for (int r = 0; r < 4; ++r)
                r2 += std::norm(uv[r] - std::polar(1.0, e.phases[k]) * v[r]);
            CHECK(std::sqrt(r2) < 1e-9);
        }
        // Phase multiset matches principal(-lambda) of the generator.
        std::vector<double> want;
        for (double lam : eig_hermitian(h).values) want.push_back(principal_angle(-lam));
        std::sort(want.begin(), want.end());
        std::vector<double> got = e.phases;
        std::sort(got.begin(), got.end());
        for (int k = 0; k < 4; ++k) CHECK_THAT(got[k], WithinAbs(want[k], 1e-10));
    }

    CHECK_THROWS_AS(eig_unitary(th::random_hermitian(g, 3, 2.0)), std::invalid_argument);
}

TEST_CASE("eig_unitary on the identity and on degenerate clusters") {
    const UnitaryEig e = eig_unitary(ComplexMatrix::identity(4));
    for (double p : e.phases) CHECK_THAT(p, WithinAbs(0.0, 1e-13));

    // Two-fold degenerate phases from a projector pair.
    std::mt19937_64 g(9);
    const ComplexMatrix q = th::random_unitary(g, 4);
    ComplexMatrix d(4);
    d.at(0, 0) = d.at(1, 1) = std::polar(1.0, 0.4);
    d.at(2, 2) = d.at(3, 3) = std::polar(1.0, -1.1);
    const ComplexMatrix u = q * d * q.adjoint();
    const UnitaryEig eu = eig_unitary(u);
    std::vector<double> got = eu.phases;
    std::sort(got.begin(), got.end());
    CHECK_THAT(got[0], WithinAbs(-1.1, 1e-10));
    CHECK_THAT(got[1], WithinAbs(-1.1, 1e-10));
    CHECK_THAT(got[2], WithinAbs(0.4, 1e-10));
    CHECK_THAT(got[3], WithinAbs(0.4, 1e-10));
}

TEST_CASE("matrix utilities: defects and distances") {
    const ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK(hermiticity_defect(id) == 0.0);
    CHECK(unitarity_defect(id) == 0.0);
    std::mt19937_64 g(3);
    const ComplexMatrix u = th::random_unitary(g, 4);
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK_THAT(frobenius_distance(u, u), WithinAbs(0.0, 1e-300));
}
