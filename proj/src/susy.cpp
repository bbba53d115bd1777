#include "susy8v/susy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace susy8v {

namespace {

RowVector kron_row(const RowVector& a, const RowVector& b) {
    RowVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
    return out;
}

Complex contract(const RowVector& w, const Vector& v) { return (w * v).eval()(0, 0); }

// Lambda_e(t) with everything else fixed; used for the finite-difference
// cross-check of the stored analytic derivative.
double lambda_at(const Nome& p, double t, double eps) {
    const Nome p2 = p.squared();
    const double e = pi / 3.0;
    const double pref = 2.0 * eps * theta(1, e, p2) * std::pow(theta(4, 0.0, p2), 2) /
                        (theta(4, e, p2) * theta(2, 0.0, p));
    return pref * theta(2, t + eps * e, p) / std::pow(theta(4, t, p2), 3);
}

}  // namespace

LocalSupercharge local_supercharge(double zeta, Complex y) {
    Matrix q_up = Matrix::Zero(4, 2);
    q_up(0, 1) = 1.0;
    q_up(3, 1) = -zeta;
    Matrix q_dn = Matrix::Zero(4, 2);
    q_dn(3, 0) = 1.0;
    q_dn(0, 0) = -zeta;
    const Complex phi_up = y * (y * y * zeta - 1.0);
    const Complex phi_dn = zeta - y * y;
    Matrix q_phi = Matrix::Zero(4, 2);
    q_phi(0, 0) = 2.0 * phi_up;
    q_phi(1, 0) = phi_dn;
    q_phi(2, 0) = phi_dn;
    q_phi(1, 1) = phi_up;
    q_phi(2, 1) = phi_up;
    q_phi(3, 1) = 2.0 * phi_dn;

    LocalSupercharge q;
    q.m = (1.0 - y * y * zeta) * q_up + y * (y * y - zeta) * q_dn + q_phi;
    q.zeta = zeta;
    q.y = y;
    return q;
}

Matrix global_supercharge(const LocalSupercharge& q, int L) {
    if (L < 1) throw std::invalid_argument("global_supercharge: L must be positive");
    if ((Eigen::Index(1) << (L + 1)) > dense_cap)
        throw std::invalid_argument("global_supercharge: output dimension exceeds the dense cap");
    const Eigen::Index rows = Eigen::Index(1) << (L + 1);
    const Eigen::Index cols = Eigen::Index(1) << L;
    Matrix Q = Matrix::Zero(rows, cols);
    double sign = -1.0;  // alternating (-1)^j starting at j = 1
    for (int j = 1; j <= L; ++j, sign = -sign) Q += sign * kron_place(q.m, j, L);
    return Q;
}

double coassociativity_residual(const LocalSupercharge& q) {
    const Matrix id = Matrix::Identity(2, 2);
    return ((kron(q.m, id) - kron(id, q.m)) * q.m).norm();
}

ThetaBasis theta_basis(const Nome& p, double t) {
    if (!(t >= 0.0 && t <= pi / 2.0 + 1e-12))
        throw std::domain_error("theta_basis: t must lie in [0, pi/2]");
    const Nome p2 = p.squared();
    const double e = pi / 3.0;

    ThetaBasis b{.p = p, .t = t};
    b.zeta = zeta_of_nome(p);
    b.y = Complex(y_of_t(p, t), 0.0);

    auto vket = [&](double eps) {
        Vector v(2);
        v << Complex(theta(4, t + eps * e, p2), 0.0), Complex(theta(1, t + eps * e, p2), 0.0);
        return v;
    };
    auto wcov = [&](double eps) {
        RowVector w(2);
        w << Complex(-eps * theta(1, t - eps * e, p2), 0.0),
            Complex(eps * theta(4, t - eps * e, p2), 0.0);
        return w;
    };
    b.v_plus = vket(+1.0);
    b.v_minus = vket(-1.0);
    b.w_plus = wcov(+1.0);
    b.w_minus = wcov(-1.0);
    b.pairing = theta(1, e, p) * theta(2, t, p);
    b.Lambda_plus = lambda_at(p, t, +1.0);
    b.Lambda_minus = lambda_at(p, t, -1.0);
    b.kappa = theta(3, e, p) / theta(3, 0.0, p);

    // Proportionality constants to the polynomial vectors; the y^(-1) in
    // C_plus degenerates at t = 0.
    if (std::abs(b.y) > 1e-14) {
        const Complex y = b.y;
        const double z = b.zeta;
        const double th3 = theta(3, e, p2);
        b.C_plus = std::pow(1.0 - z * z, -2.0 / 3.0) * th3 / y;
        b.C_minus = Complex(th3, 0.0);
        b.D_plus = z * (y * y - 1.0) * b.C_plus * b.C_plus;
        b.D_minus = z * (y * y - 1.0) / (y * (z - 1.0)) * b.C_minus * b.C_minus;
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        b.C_plus = b.C_minus = b.D_plus = b.D_minus = Complex(nan, nan);
    }

    if (std::abs(t - pi / 2.0) < 1e-12) {
        b.has_tderiv = true;
        Vector vd(2);
        vd << Complex(theta_deriv(4, t + e, p2), 0.0), Complex(theta_deriv(1, t + e, p2), 0.0);
        b.vdot_plus = vd;
        const double pref = 2.0 * theta(1, e, p2) * std::pow(theta(4, 0.0, p2), 2) /
                            (theta(4, e, p2) * theta(2, 0.0, p));
        const double t4 = theta(4, t, p2);
        b.Lambda_dot_plus = pref * (theta_deriv(2, t + e, p) / std::pow(t4, 3) -
                                    3.0 * theta(2, t + e, p) * theta_deriv(4, t, p2) / std::pow(t4, 4));
    }
    return b;
}

Report check_q_on_basis(const LocalSupercharge& q, const ThetaBasis& basis) {
    if (std::abs(q.zeta - basis.zeta) > 1e-12 || std::abs(q.y - basis.y) > 1e-12)
        throw std::invalid_argument("check_q_on_basis: supercharge and basis disagree on (zeta, y)");

    Report rep;
    const std::map<std::string, double> at{{"p", basis.p.p}, {"t", basis.t}};
    const Vector v[2] = {basis.v_plus, basis.v_minus};
    const RowVector w[2] = {basis.w_plus, basis.w_minus};
    const double lam[2] = {basis.Lambda_plus, basis.Lambda_minus};

    {
        const double scale = std::max(1.0, std::abs(basis.pairing));
        double res = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                const Complex expect = i == k ? Complex(basis.pairing, 0.0) : Complex(0.0, 0.0);
                res = std::max(res, std::abs(contract(w[i], v[k]) - expect) / scale);
            }
        rep.add("dual-pairing", "<w_e|v_e'> = delta(e,e') theta1(pi/3,p) theta2(t,p)", at, res,
                1e-11);
    }

    {
        double res = 0.0;
        for (int i = 0; i < 2; ++i) {
            const Vector rhs = lam[i] * kron_vec(v[i], v[i]);
            res = std::max(res, (q.m * v[i] - rhs).norm() / std::max(1.0, rhs.norm()));
        }
        rep.add("supercharge-on-kets", "q v_e = Lambda_e v_e (x) v_e", at, res, 1e-10);
    }

    {
        double res = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                const RowVector lhs = kron_row(w[i], w[k]) * q.m;
                RowVector rhs = RowVector::Zero(2);
                if (i == k) rhs = basis.pairing * lam[i] * w[i];
                res = std::max(res, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
            }
        rep.add("duals-absorb-supercharge",
                "(w_e (x) w_e') q = delta(e,e') theta1 theta2 Lambda_e w_e", at, res, 1e-10);
    }

    {
        // One-site global supercharge is -q; its adjoint sends the dual pair
        // columns back onto the covector columns.
        const Matrix Q1 = global_supercharge(q, 1);
        double res = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                const Vector col = kron_row(w[i], w[k]).transpose().conjugate();
                Vector rhs = Vector::Zero(2);
                if (i == k) rhs = -basis.pairing * lam[i] * w[i].transpose().conjugate();
                res = std::max(res,
                               (Q1.adjoint() * col - rhs).norm() / std::max(1.0, rhs.norm()));
            }
        rep.add("adjoint-closes-duals",
                "Q1^dag (w_e (x) w_e')^dag = -delta(e,e') theta1 theta2 Lambda_e w_e^dag", at, res,
                1e-10);
    }

    if (std::abs(basis.t - pi / 6.0) < 1e-9) {
        rep.add("lambda-plus-vanishes", "Lambda_+ = 0 at t = pi/6", at,
                std::abs(basis.Lambda_plus), 1e-11 * std::abs(basis.Lambda_minus));
    }

    if (basis.has_tderiv) {
        rep.add("degenerate-pair", "v_- = v_+ at t = pi/2", at,
                (basis.v_minus - basis.v_plus).norm() / basis.v_plus.norm(), 1e-12);

        const Vector lhs = q.m * basis.vdot_plus;
        const Vector rhs = basis.Lambda_dot_plus * kron_vec(basis.v_plus, basis.v_plus) +
                           basis.Lambda_plus * (kron_vec(basis.vdot_plus, basis.v_plus) +
                                                kron_vec(basis.v_plus, basis.vdot_plus));
        rep.add("supercharge-on-derivative",
                "q vdot = Lambdadot v (x) v + Lambda (vdot (x) v + v (x) vdot)", at,
                (lhs - rhs).norm() / std::max(1.0, rhs.norm()), 1e-10);

        const double h = 1e-6;
        auto central = [&](double step) {
            return (lambda_at(basis.p, basis.t + step, +1.0) -
                    lambda_at(basis.p, basis.t - step, +1.0)) /
                   (2.0 * step);
        };
        const double fd = (4.0 * central(h / 2.0) - central(h)) / 3.0;
        rep.add("lambda-derivative-cross-check",
                "analytic dLambda_+/dt matches central differences", at,
                std::abs(basis.Lambda_dot_plus - fd) / std::max(1.0, std::abs(fd)), 1e-8);
    }

    return rep;
}

Report check_polynomial_forms(const ThetaBasis& basis) {
    if (std::abs(basis.t - pi / 6.0) > 1e-9)
        throw std::domain_error("check_polynomial_forms: defined at t = pi/6 only");

    Report rep;
    const std::map<std::string, double> at{{"p", basis.p.p}, {"t", basis.t}};
    const Complex y = basis.y;
    const double z = basis.zeta;

    Vector vb_plus(2), vb_minus(2);
    vb_plus << y * (1.0 - z * y * y), z - y * y;
    vb_minus << Complex(1.0, 0.0), -y;
    RowVector wb_plus(2), wb_minus(2);
    wb_plus << y, Complex(1.0, 0.0);
    wb_minus << z - y * y, -y * (1.0 - z * y * y);

    auto rel = [](const Vector& got, const Vector& want) {
        return (got - want).norm() / std::max(1.0, want.norm());
    };

    rep.add("ket-plus-polynomial", "v_+ = C_+ (y(1 - zeta y^2), zeta - y^2)", at,
            rel(basis.v_plus, basis.C_plus * vb_plus), 1e-10);
    rep.add("ket-minus-polynomial", "v_- = C_- (1, -y)", at,
            rel(basis.v_minus, basis.C_minus * vb_minus), 1e-10);
    rep.add("covector-plus-polynomial", "w_+ = C_- (y, 1)", at,
            rel(basis.w_plus.transpose(), basis.C_minus * wb_plus.transpose()), 1e-10);
    rep.add("covector-minus-polynomial", "w_- = C_+ (zeta - y^2, -y(1 - zeta y^2))", at,
            rel(basis.w_minus.transpose(), basis.C_plus * wb_minus.transpose()), 1e-10);

    const ChiAlpha ca = chi_alpha(basis);
    Vector chib(4);
    chib << y * y * (z - 2.0 + z * y * y), y * (y * y - 1.0), y * (y * y - 1.0),
        -(z + (z - 2.0) * y * y);
    Vector alphab(4);
    alphab << y, Complex(1.0, 0.0), -y * y, -y;

    rep.add("pair-ket-polynomial",
            "v+v+ - kappa^2 v-v- = D_+ (y^2(zeta-2+zeta y^2), y(y^2-1), y(y^2-1), "
            "-(zeta+(zeta-2)y^2))",
            at, rel(ca.chi, basis.D_plus * chib), 1e-10);
    rep.add("pair-covector-polynomial", "w+w+ + kappa^-1 w-w+ = D_- (y, 1, -y^2, -y)", at,
            rel(ca.alpha.transpose(), basis.D_minus * alphab), 1e-10);

    return rep;
}

ChiAlpha chi_alpha(const ThetaBasis& basis) {
    if (std::abs(basis.t - pi / 6.0) > 1e-9)
        throw std::domain_error("chi_alpha: defined at t = pi/6 only");
    ChiAlpha out;
    out.chi = kron_vec(basis.v_plus, basis.v_plus) -
              (basis.kappa * basis.kappa) * kron_vec(basis.v_minus, basis.v_minus);
    out.alpha = kron_row(basis.w_plus, basis.w_plus) +
                kron_row(basis.w_minus, basis.w_plus) / basis.kappa;
    out.pairing = (out.alpha * out.chi).eval()(0, 0);
    return out;
}

Report check_q_covariance(int L, double zeta, Complex y) {
    if (std::abs(y) < 1e-14)
        throw std::invalid_argument("check_q_covariance: y must be nonzero");
    Report rep;
    const Matrix q0 = global_supercharge(local_supercharge(zeta, y), L);
    const Complex targets[3] = {1.0 / y, -1.0 / y, -y};
    const char* names[3] = {"covariance-axis-1", "covariance-axis-2", "covariance-axis-3"};
    for (int a = 1; a <= 3; ++a) {
        const Matrix qa = global_supercharge(local_supercharge(zeta, targets[a - 1]), L);
        const Matrix rhs = rotation(a, -pi, L + 1) * q0 * rotation(a, pi, L);
        const Complex c = qa.conjugate().cwiseProduct(rhs).sum() / Complex(qa.squaredNorm(), 0.0);
        const double res = (c * qa - rhs).norm() / rhs.norm();
        rep.add(names[a - 1],
                "c Q(zeta, y_a) = R^a(-pi) Q(zeta, y) R^a(pi) with fitted scalar c",
                {{"L", double(L)}, {"zeta", zeta}, {"re_y", y.real()}, {"im_y", y.imag()},
                 {"re_c", c.real()}, {"im_c", c.imag()}},
                res, 1e-10);
    }
    return rep;
}

std::pair<int, int> cohomology_dims(const LocalSupercharge& q, int L) {
    if (L < 1) throw std::invalid_argument("cohomology_dims: L must be positive");
    const Eigen::Index dim = Eigen::Index(1) << L;
    const Matrix q_up = global_supercharge(q, L);
    Matrix q_dn;
    if (L >= 2) q_dn = global_supercharge(q, L - 1);

    auto rank_of = [](const Matrix& M, const std::string& what) {
        const RankResult r = numeric_rank(M);
        if (r.ambiguous)
            throw InconclusiveRank("cohomology_dims: rank decision ambiguous for " + what);
        return r.rank;
    };

    const int upper = int(dim) - rank_of(q_up, "outgoing map") -
                      (L >= 2 ? rank_of(q_dn, "incoming map") : 0);
    const int lower = int(dim) - rank_of(Matrix(q_up.adjoint()), "outgoing adjoint") -
                      (L >= 2 ? rank_of(Matrix(q_dn.adjoint()), "incoming adjoint") : 0);
    return {upper, lower};
}

SingletData singlet(const LocalSupercharge& q, int L, const Matrix& H, const ThetaBasis& basis) {
    if (L < 1) throw std::invalid_argument("singlet: L must be positive");
    const Eigen::Index dim = Eigen::Index(1) << L;
    if (H.rows() != dim || H.cols() != dim)
        throw std::invalid_argument("singlet: Hamiltonian dimension does not match L");

    const GroundState g = ground_state(H);
    if (std::abs(g.energy) > 1e-9 * std::max(1.0, H.norm()))
        throw std::domain_error("singlet: ground energy is nonzero; wrong parameter point");

    Vector psi = g.psi;
    const Vector wp_col = basis.w_plus.transpose();
    const Vector dual = kron_vec_pow(wp_col, L);
    const Complex overlap = (dual.transpose() * psi).eval()(0, 0);  // no conjugation
    if (std::abs(overlap) < 1e-13)
        throw std::domain_error("singlet: dual overlap vanishes; phase fix impossible");
    psi *= std::abs(overlap) / overlap;

    SingletData s;
    s.L = L;
    s.psi = psi;
    s.energy = g.energy;
    const Vector vp = kron_vec_pow(basis.v_plus, L);
    s.mu_L = vp.dot(psi) / (dual.transpose() * psi).eval()(0, 0);
    s.q_residual = (global_supercharge(q, L) * psi).norm();
    s.qdag_residual = L >= 2 ? (global_supercharge(q, L - 1).adjoint() * psi).norm() : 0.0;
    return s;
}

}  // namespace susy8v
