#include "susy8v/vertex.hpp"

#include "susy8v/susy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace susy8v {

namespace {

VertexWeights weights_at(const SpectralPoint& sp, double u) {
    return weights(SpectralPoint(sp.p, u, sp.t, sp.eta, sp.rho));
}

void guard_denominator(double value, const char* name) {
    if (std::abs(value) < 1e-12)
        throw std::domain_error(std::string("k_pair_weights: denominator ") + name + " vanishes");
}

// A[(alpha,i), beta] -> At[(beta,i), alpha]: transpose of the auxiliary slot
// of a one-site-to-two-site map, the site index riding along.
Matrix transpose_aux_rect(const Matrix& A) {
    Matrix out(4, 2);
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int i = 0; i < 2; ++i)
            for (int beta = 0; beta < 2; ++beta) out(2 * beta + i, alpha) = A(2 * alpha + i, beta);
    return out;
}

}  // namespace

RMatrix r_matrix(const VertexWeights& w) {
    RMatrix r;
    r.w = w;
    r.m = Matrix::Zero(4, 4);
    r.m(0, 0) = w.a;
    r.m(3, 3) = w.a;
    r.m(1, 1) = w.b;
    r.m(2, 2) = w.b;
    r.m(1, 2) = w.c;
    r.m(2, 1) = w.c;
    r.m(0, 3) = w.d;
    r.m(3, 0) = w.d;
    return r;
}

double ybe_residual(const SpectralPoint& sp, double u, double v) {
    const Matrix r_uv = r_matrix(weights_at(sp, u - v)).m;
    const Matrix r_u = r_matrix(weights_at(sp, u)).m;
    const Matrix r_v = r_matrix(weights_at(sp, v)).m;
    const Matrix r12 = two_site_op(r_uv, 0, 1, 3);
    const Matrix r13 = two_site_op(r_u, 0, 2, 3);
    const Matrix r23 = two_site_op(r_v, 1, 2, 3);
    const Matrix lhs = r12 * r13 * r23;
    const Matrix rhs = r23 * r13 * r12;
    return (lhs - rhs).norm() / lhs.norm();
}

Matrix k_general(const Nome& p, double u, const std::array<double, 3>& mu) {
    Matrix K = Matrix::Identity(2, 2);
    const double num = theta(1, u, p);
    for (int a = 1; a <= 3; ++a) {
        const double den = theta(5 - a, u, p);
        if (std::abs(den) < 1e-12 * (1.0 + std::abs(num)))
            throw std::domain_error("k_general: theta_" + std::to_string(5 - a) +
                                    " vanishes at the evaluation point");
        K += (num / den) * mu[a - 1] * pauli(a);
    }
    return K;
}

KPair k_pair_weights(const VertexWeights& w, Complex y) {
    const double a = w.a, b = w.b, c = w.c, d = w.d;
    guard_denominator(a * c + b * d, "ac+bd");
    guard_denominator(a * c - b * d, "ac-bd");
    guard_denominator(a * d + b * c, "ad+bc");
    guard_denominator(b * c - a * d, "bc-ad");
    guard_denominator(2.0 * a * b + b * b + d * d, "2ab+b^2+d^2");
    guard_denominator(2.0 * a * b + b * b + c * c, "2ab+b^2+c^2");

    const double n = 1.0 + std::norm(y);
    const double f1 = 2.0 * y.real() / n;
    const double f2 = 2.0 * y.imag() / n;
    const double f3 = (1.0 - std::norm(y)) / n;

    KPair kp;
    kp.k_minus = Matrix::Identity(2, 2) +
                 f1 * ((a * b + c * d) / (a * c + b * d)) * pauli(1) +
                 f2 * ((a * b - c * d) / (a * c - b * d)) * pauli(2) +
                 f3 * ((b * b - d * d) / (2.0 * a * b + b * b + d * d)) * pauli(3);
    kp.k_plus = Matrix::Identity(2, 2) +
                f1 * ((a * b + c * d) / (a * d + b * c)) * pauli(1) +
                f2 * ((a * b - c * d) / (b * c - a * d)) * pauli(2) +
                f3 * ((b * b - c * c) / (2.0 * a * b + b * b + c * c)) * pauli(3);
    return kp;
}

KPair k_pair_general(const SpectralPoint& sp, const std::array<double, 3>& mu) {
    KPair kp;
    kp.k_minus = k_general(sp.p, sp.u, mu);
    kp.k_plus = k_general(sp.p, sp.u + 2.0 * sp.eta, mu);
    return kp;
}

double reflection_residual(const SpectralPoint& sp, double u, double v,
                           const std::array<double, 3>& mu) {
    const Matrix id = Matrix::Identity(2, 2);
    const Matrix r_minus = r_matrix(weights_at(sp, u - v)).m;
    const Matrix r_plus = r_matrix(weights_at(sp, u + v)).m;
    const Matrix k1 = kron(k_general(sp.p, u, mu), id);
    const Matrix k2 = kron(id, k_general(sp.p, v, mu));
    const Matrix lhs = r_minus * k1 * r_plus * k2;
    const Matrix rhs = k2 * r_plus * k1 * r_minus;
    return (lhs - rhs).norm() / lhs.norm();
}

AOperator a_operators(const VertexWeights& w, double zeta, Complex y) {
    const double a = w.a, b = w.b, c = w.c, d = w.d;
    if (std::abs(a) < 1e-14 || std::abs(b) < 1e-14)
        throw std::domain_error("a_operators: weights a and b must be nonzero");

    Matrix a_up = Matrix::Zero(4, 2);
    a_up(1, 0) = -d * c / a;
    a_up(2, 0) = d;
    a_up(0, 1) = c;
    a_up(3, 1) = -c * d / b;

    Matrix a_dn = Matrix::Zero(4, 2);
    a_dn(0, 0) = -c * d / b;
    a_dn(3, 0) = c;
    a_dn(1, 1) = d;
    a_dn(2, 1) = -d * c / a;

    const Complex phi_up = y * (y * y * zeta - 1.0);
    const Complex phi_dn = zeta - y * y;
    Matrix a_phi = Matrix::Zero(4, 2);
    a_phi(0, 0) = (2.0 * a + b) * phi_up;
    a_phi(1, 0) = (a + 2.0 * b) * phi_dn;
    a_phi(2, 0) = c * phi_dn;
    a_phi(3, 0) = d * phi_up;
    a_phi(0, 1) = d * phi_dn;
    a_phi(1, 1) = c * phi_up;
    a_phi(2, 1) = (a + 2.0 * b) * phi_up;
    a_phi(3, 1) = (2.0 * a + b) * phi_dn;

    AOperator out;
    out.m = (1.0 - y * y * zeta) * a_up + y * (y * y - zeta) * a_dn + a_phi;
    return out;
}

Matrix b_insert(const Matrix& op, int j, int L) {
    if (op.rows() != 4 || op.cols() != 2)
        throw std::invalid_argument("b_insert: operator must map one slot to two");
    if (L < 0 || j < 1 || j > L + 1) throw std::invalid_argument("b_insert: site out of range");
    if ((Eigen::Index(1) << (L + 2)) > dense_cap)
        throw std::invalid_argument("b_insert: dimension exceeds the dense cap");
    const Eigen::Index chain = Eigen::Index(1) << L;
    Matrix out = kron(op, Matrix::Identity(chain, chain));
    // The new site starts adjacent to the auxiliary slot; carry it to j.
    for (int k = 1; k < j; ++k) out = two_site_op(swap_gate(), k, k + 1, L + 2) * out;
    return out;
}

Report check_bulk_exchange(const SpectralPoint& sp, int L, int j) {
    if (j < 1 || j + 1 > L + 1) throw std::invalid_argument("check_bulk_exchange: j out of range");
    Report rep;
    const double zeta = zeta_of_nome(sp.p);
    const Complex y(y_of_t(sp.p, sp.t), 0.0);
    const VertexWeights w = weights(sp);
    const Matrix r = r_matrix(w).m;
    const Matrix q = local_supercharge(zeta, y).m;
    const Matrix a_op = a_operators(w, zeta, y).m;

    const Eigen::Index chain = Eigen::Index(1) << L;
    const Matrix q_j = kron(Matrix::Identity(2, 2), kron_place(q, j, L));
    const Matrix r_small = two_site_op(r, 0, j, L + 1);
    const Matrix r_lo = two_site_op(r, 0, j, L + 2);
    const Matrix r_hi = two_site_op(r, 0, j + 1, L + 2);
    const Matrix a_j = b_insert(a_op, j, L);
    const Matrix a_next = b_insert(a_op, j + 1, L);
    const double ab = w.a + w.b;

    const std::map<std::string, double> at{{"p", sp.p.p}, {"u", sp.u},  {"t", sp.t},
                                           {"eta", sp.eta}, {"L", double(L)}, {"j", double(j)}};
    {
        const Matrix lhs = r_lo * r_hi * q_j + ab * q_j * r_small;
        const Matrix rhs = r_lo * a_next + a_j * r_small;
        rep.add("bulk-exchange-ordered",
                "R0j R0j+1 (1(x)q_j) + (a+b)(1(x)q_j) R0j = R0j A_(j+1) + A_j R0j", at,
                (lhs - rhs).norm() / lhs.norm(), 1e-10);
    }
    {
        const Matrix lhs = r_hi * r_lo * q_j + ab * q_j * r_small;
        const Matrix rhs = r_hi * a_j + a_next * r_small;
        rep.add("bulk-exchange-swapped",
                "R0j+1 R0j (1(x)q_j) + (a+b)(1(x)q_j) R0j = R0j+1 A_j + A_(j+1) R0j", at,
                (lhs - rhs).norm() / lhs.norm(), 1e-10);
    }
    return rep;
}

Report check_boundary_exchange(const SpectralPoint& sp, double k_y_scale) {
    if (std::abs(sp.t - pi / 6.0) > 1e-9)
        throw std::domain_error("check_boundary_exchange: defined at t = pi/6 only");
    Report rep;
    const double zeta = zeta_of_nome(sp.p);
    const Complex y(y_of_t(sp.p, sp.t), 0.0);
    const VertexWeights w = weights(sp);
    const Matrix r = r_matrix(w).m;
    const KPair kp = k_pair_weights(w, k_y_scale * y);
    const Matrix a_op = a_operators(w, zeta, y).m;
    const Matrix id = Matrix::Identity(2, 2);
    const double ab = w.a + w.b;

    const std::map<std::string, double> at{{"p", sp.p.p}, {"u", sp.u}, {"t", sp.t}};
    {
        const Matrix lhs = ab * a_op * kp.k_minus;
        const Matrix rhs = r * kron(kp.k_minus, id) * a_op;
        rep.add("boundary-exchange-incoming", "(a+b) A K^- = R (K^- (x) 1) A", at,
                (lhs - rhs).norm() / lhs.norm(), 1e-10);
    }
    {
        const Matrix at_op = transpose_aux_rect(a_op);
        const Matrix lhs = ab * at_op * kp.k_plus.transpose();
        const Matrix rhs =
            partial_transpose_aux(r) * partial_transpose_aux(kron(kp.k_plus, id)) * at_op;
        rep.add("boundary-exchange-outgoing",
                "(a+b) A^t0 (K^+)^T = R^t0 (K^+ (x) 1)^t0 A^t0", at,
                (lhs - rhs).norm() / lhs.norm(), 1e-10);
    }
    return rep;
}

}  // namespace susy8v
