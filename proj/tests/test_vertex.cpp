#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "susy8v/vertex.hpp"

using namespace susy8v;

namespace {

void require_all_pass(const Report& rep) {
    for (const auto& r : rep.records) {
        INFO(r.check, " residual=", r.residual, " tol=", r.tol);
        CHECK(r.status == Status::pass);
    }
}

}  // namespace

TEST_CASE("r-matrix pattern") {
    const VertexWeights w{2.0, 3.0, 5.0, 7.0};
    const Matrix R = r_matrix(w).m;
    CHECK(R(0, 0) == Complex(2.0, 0.0));
    CHECK(R(3, 3) == Complex(2.0, 0.0));
    CHECK(R(1, 1) == Complex(3.0, 0.0));
    CHECK(R(2, 2) == Complex(3.0, 0.0));
    CHECK(R(1, 2) == Complex(5.0, 0.0));
    CHECK(R(2, 1) == Complex(5.0, 0.0));
    CHECK(R(0, 3) == Complex(7.0, 0.0));
    CHECK(R(3, 0) == Complex(7.0, 0.0));
    int nonzero = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) nonzero += R(i, j) != Complex(0.0, 0.0);
    CHECK(nonzero == 8);
    CHECK((R - R.transpose()).norm() == 0.0);

    const Matrix Ra = r_matrix(VertexWeights{1.0, 0.0, 0.0, 0.0}).m;
    CHECK(Ra.cwiseAbs().sum() == 2.0);  // only the two diagonal a-corners
    CHECK(Ra(0, 0) == Complex(1.0, 0.0));
    CHECK(Ra(3, 3) == Complex(1.0, 0.0));

    const Matrix R6 = r_matrix(VertexWeights{1.0, 0.5, 0.3, 0.0}).m;
    CHECK(R6(0, 3) == Complex(0.0, 0.0));
    CHECK(R6(3, 0) == Complex(0.0, 0.0));
}

TEST_CASE("r-matrix at zero argument is the weighted swap") {
    const SpectralPoint sp(Nome(0.3), 0.0);
    const VertexWeights w0 = weights(sp);
    const Matrix R0 = r_matrix(w0).m;
    CHECK((R0 - w0.a * swap_gate()).norm() < 1e-12 * std::abs(w0.a));
}

TEST_CASE("yang-baxter residual") {
    const SpectralPoint slice(Nome(0.3), 0.0);
    CHECK(ybe_residual(slice, 0.2, 0.2) < 1e-12);
    CHECK(ybe_residual(slice, 0.2, 0.11) < 1e-11);

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> uu(0.02, 0.8), ueta(0.5, 1.3), unome(0.05, 0.6);
    for (int k = 0; k < 10; ++k) {
        const SpectralPoint on(Nome(unome(rng)), 0.0);
        CHECK(ybe_residual(on, uu(rng), uu(rng)) < 1e-11);
        const SpectralPoint off(Nome(unome(rng)), 0.0, pi / 6.0, ueta(rng));
        CHECK(ybe_residual(off, uu(rng), uu(rng)) < 1e-11);
    }
}

TEST_CASE("yang-baxter negative control with broken weights") {
    const SpectralPoint sp(Nome(0.3), 0.0);
    VertexWeights w_uv = weights(SpectralPoint(sp.p, 0.2 - 0.11));
    const VertexWeights w_u = weights(SpectralPoint(sp.p, 0.2));
    const VertexWeights w_v = weights(SpectralPoint(sp.p, 0.11));
    w_uv.a *= 1.01;  // off the parameterization
    const Matrix r12 = two_site_op(r_matrix(w_uv).m, 0, 1, 3);
    const Matrix r13 = two_site_op(r_matrix(w_u).m, 0, 2, 3);
    const Matrix r23 = two_site_op(r_matrix(w_v).m, 1, 2, 3);
    const Matrix lhs = r12 * r13 * r23;
    CHECK((lhs - r23 * r13 * r12).norm() / lhs.norm() > 1e-3);
}

TEST_CASE("theta-general boundary matrix") {
    const Nome p(0.3);
    const std::array<double, 3> mu{0.2, 0.33, -0.41};
    CHECK((k_general(p, 0.0, mu) - Matrix::Identity(2, 2)).norm() < 1e-15);
    CHECK((k_general(p, 0.37, {0.0, 0.0, 0.0}) - Matrix::Identity(2, 2)).norm() < 1e-15);
    const Matrix K = k_general(p, 0.37, mu);
    CHECK(std::abs(K.trace() - Complex(2.0, 0.0)) < 1e-14);
    CHECK_THROWS_AS(k_general(p, pi / 2.0, mu), std::domain_error);  // theta2 zero
}

TEST_CASE("reflection equation for the theta-general matrix") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> uu(0.05, 0.6), um(-0.5, 0.5), unome(0.05, 0.5);
    for (int k = 0; k < 10; ++k) {
        const SpectralPoint sp(Nome(unome(rng)), 0.0);
        const std::array<double, 3> mu{um(rng), um(rng), um(rng)};
        CHECK(reflection_residual(sp, uu(rng), uu(rng), mu) < 1e-11);
    }
}

TEST_CASE("weight-form k-matrix shapes") {
    const VertexWeights w = weights(SpectralPoint(Nome(0.3), 0.2));
    {
        const KPair kp = k_pair_weights(w, Complex(0.0, 0.0));
        CHECK(std::abs(kp.k_minus(0, 1)) + std::abs(kp.k_minus(1, 0)) == 0.0);
        CHECK(std::abs(kp.k_plus(0, 1)) + std::abs(kp.k_plus(1, 0)) == 0.0);
    }
    {
        const Complex y = std::polar(1.0, 0.3);  // |y| = 1 kills the diagonal part
        const KPair kp = k_pair_weights(w, y);
        CHECK(std::abs(kp.k_minus(0, 0) - 1.0) < 1e-15);
        CHECK(std::abs(kp.k_minus(1, 1) - 1.0) < 1e-15);
        CHECK(std::abs(kp.k_plus(0, 0) - 1.0) < 1e-15);
    }
    // u = 0 weights have b = d = 0, so bc - ad vanishes.
    const VertexWeights w0 = weights(SpectralPoint(Nome(0.3), 0.0));
    CHECK_THROWS_AS(k_pair_weights(w0, Complex(0.3, 0.0)), std::domain_error);
}

TEST_CASE("weight-form and theta-general boundary pairs agree at the root") {
    for (auto [pv, u] : {std::pair<double, double>{0.3, 0.2}, {0.2, 0.1}, {0.5, 0.3}}) {
        const SpectralPoint sp(Nome(pv), u);
        const double y0 = y_of_t(sp.p, pi / 6.0);
        const KPair kw = k_pair_weights(weights(sp), Complex(y0, 0.0));
        const KPair kg = k_pair_general(sp, boundary_mu(sp.p, sp.eta, Complex(y0, 0.0)));
        for (auto [got, want] : {std::pair<Matrix, Matrix>{kw.k_minus, kg.k_minus},
                                 {kw.k_plus, kg.k_plus}}) {
            const Complex scale = want.conjugate().cwiseProduct(got).sum() / want.squaredNorm();
            INFO("scale=", scale.real(), "+", scale.imag(), "i");
            CHECK((got - scale * want).norm() / got.norm() < 1e-10);
            CHECK(std::abs(scale - 1.0) < 1e-9);  // the two normalizations coincide
        }
    }
}

TEST_CASE("exchange operator components") {
    const VertexWeights w = weights(SpectralPoint(Nome(0.3), 0.2));
    const double zeta = zeta_of_nome(Nome(0.3));
    const Complex y(y_of_t(Nome(0.3), 0.4), 0.0);
    const Matrix A = a_operators(w, zeta, y).m;

    const Complex phi_up = y * (y * y * zeta - 1.0);
    const Complex phi_dn = zeta - y * y;
    const Complex cu = 1.0 - y * y * zeta;
    const Complex cd = y * (y * y - zeta);
    const double a = w.a, b = w.b, c = w.c, d = w.d;
    CHECK(std::abs(A(0, 0) - (cd * (-c * d / b) + (2.0 * a + b) * phi_up)) < 1e-12);
    CHECK(std::abs(A(1, 0) - (cu * (-d * c / a) + (a + 2.0 * b) * phi_dn)) < 1e-12);
    CHECK(std::abs(A(2, 0) - (cu * d + c * phi_dn)) < 1e-12);
    CHECK(std::abs(A(3, 0) - (cd * c + d * phi_up)) < 1e-12);
    CHECK(std::abs(A(0, 1) - (cu * c + d * phi_dn)) < 1e-12);
    CHECK(std::abs(A(1, 1) - (cd * d + c * phi_up)) < 1e-12);
    CHECK(std::abs(A(2, 1) - (cd * (-d * c / a) + (a + 2.0 * b) * phi_up)) < 1e-12);
    CHECK(std::abs(A(3, 1) - (cu * (-c * d / b) + (2.0 * a + b) * phi_dn)) < 1e-12);
}

TEST_CASE("exchange operator degenerate weights") {
    const VertexWeights w{1.3, 0.7, 0.0, 0.0};
    const double zeta = 0.6;
    const Complex y(0.35, 0.0);
    const Matrix A = a_operators(w, zeta, y).m;
    // c = d = 0 removes both ladder parts; only the phi part survives.
    const Complex phi_up = y * (y * y * zeta - 1.0);
    const Complex phi_dn = zeta - y * y;
    Matrix expect = Matrix::Zero(4, 2);
    expect(0, 0) = (2.0 * w.a + w.b) * phi_up;
    expect(1, 0) = (w.a + 2.0 * w.b) * phi_dn;
    expect(2, 1) = (w.a + 2.0 * w.b) * phi_up;
    expect(3, 1) = (2.0 * w.a + w.b) * phi_dn;
    CHECK((A - expect).norm() < 1e-15);

    CHECK_THROWS_AS(a_operators(VertexWeights{0.0, 1.0, 0.5, 0.2}, zeta, y), std::domain_error);
    CHECK_THROWS_AS(a_operators(VertexWeights{1.0, 0.0, 0.5, 0.2}, zeta, y), std::domain_error);
}

TEST_CASE("insertion operator semantics") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    Matrix op(4, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) op(i, j) = Complex(un(rng), un(rng));

    const int L = 2;
    CHECK((b_insert(op, 1, L) - kron(op, Matrix::Identity(4, 4))).norm() == 0.0);

    // Product input aux (x) s1 (x) s2; inserting at j = 2 must give
    // sum over the op's output pair (aux', new): aux' (x) s1 (x) new (x) s2.
    Vector aux(2), s1(2), s2(2);
    aux << Complex(0.3, -0.2), Complex(0.8, 0.1);
    s1 << Complex(-0.5, 0.4), Complex(0.2, 0.9);
    s2 << Complex(0.7, 0.0), Complex(-0.1, 0.6);
    const Vector got = b_insert(op, 2, L) * kron_vec(aux, kron_vec(s1, s2));
    const Vector pair = op * aux;  // components (aux', new)
    Vector expect = Vector::Zero(16);
    for (int ap = 0; ap < 2; ++ap)
        for (int nw = 0; nw < 2; ++nw) {
            Vector apv = Vector::Zero(2), nwv = Vector::Zero(2);
            apv(ap) = 1.0;
            nwv(nw) = 1.0;
            expect += pair(2 * ap + nw) * kron_vec(apv, kron_vec(s1, kron_vec(nwv, s2)));
        }
    CHECK((got - expect).norm() < 1e-14);

    CHECK_THROWS_AS(b_insert(op, 0, L), std::invalid_argument);
    CHECK_THROWS_AS(b_insert(op, L + 2, L), std::invalid_argument);
    CHECK_THROWS_AS(b_insert(Matrix::Zero(2, 2), 1, L), std::invalid_argument);
}

TEST_CASE("bulk exchange identities on the supersymmetric slice") {
    require_all_pass(check_bulk_exchange(SpectralPoint(Nome(0.3), 0.2), 2, 1));
    require_all_pass(check_bulk_exchange(SpectralPoint(Nome(0.3), 0.2), 2, 2));
    require_all_pass(check_bulk_exchange(SpectralPoint(Nome(0.2), 0.35, 0.4), 3, 2));
}

TEST_CASE("bulk exchange fails off the slice") {
    const Report rep = check_bulk_exchange(SpectralPoint(Nome(0.3), 0.2, pi / 6.0, 0.9), 2, 1);
    for (const auto& r : rep.records) {
        CHECK(r.status == Status::fail);
        CHECK(r.residual > 1e-4);
    }
}

TEST_CASE("boundary exchange identities at the root") {
    require_all_pass(check_boundary_exchange(SpectralPoint(Nome(0.3), 0.2)));
    require_all_pass(check_boundary_exchange(SpectralPoint(Nome(0.2), 0.1)));
    require_all_pass(check_boundary_exchange(SpectralPoint(Nome(0.5), 0.3)));
    CHECK_THROWS_AS(check_boundary_exchange(SpectralPoint(Nome(0.3), 0.2, 0.4)),
                    std::domain_error);
}

TEST_CASE("boundary exchange needs matching spectral coordinates") {
    // The identities hold for ANY y shared by A and the K-matrices; what
    // breaks them is a mismatch between the two sides.
    const SpectralPoint sp(Nome(0.3), 0.2);
    const double zeta = zeta_of_nome(sp.p);
    const double y0 = y_of_t(sp.p, pi / 6.0);
    const VertexWeights w = weights(sp);
    {
        const Complex y(0.77, 0.0);  // generic matched value: still exact
        const Matrix A = a_operators(w, zeta, y).m;
        const KPair kp = k_pair_weights(w, y);
        const Matrix lhs = (w.a + w.b) * A * kp.k_minus;
        const Matrix rhs = r_matrix(w).m * kron(kp.k_minus, Matrix::Identity(2, 2)) * A;
        CHECK((lhs - rhs).norm() / lhs.norm() < 1e-12);
    }
    const Report rep = check_boundary_exchange(sp, 1.1);  // K built off the shared y
    for (const auto& r : rep.records) {
        CHECK(r.status == Status::fail);
        CHECK(r.residual > 1e-5);
    }
    CHECK(std::abs(y0) > 0.0);
}
