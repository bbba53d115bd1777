#include "susy8v/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "susy8v/susy.hpp"

namespace susy8v {

namespace {

VertexWeights weights_at(const SpectralPoint& sp, double u) {
    return weights(SpectralPoint(sp.p, u, sp.t, sp.eta, sp.rho));
}

double inhomogeneity(const TransferSpec& spec, int j) {  // 1-based site
    return spec.inhomogeneities.empty() ? 0.0 : spec.inhomogeneities[size_t(j - 1)];
}

void require_lengths(const TransferSpec& spec) {
    if (spec.L < 1) throw std::invalid_argument("transfer matrix needs L >= 1");
    if (!spec.inhomogeneities.empty() && int(spec.inhomogeneities.size()) != spec.L)
        throw std::invalid_argument("inhomogeneity list must be empty or length L, got " +
                                    std::to_string(spec.inhomogeneities.size()));
}

// All u-dependent factors of one double-row build, resolved once.
struct TransferFactors {
    std::vector<Matrix> r_plus;   // R(u + u_j), site j = 1..L
    std::vector<Matrix> r_minus;  // R(u - u_j)
    KPair kp;
};

TransferFactors factors_for(const TransferSpec& spec, const KPair& kp) {
    require_lengths(spec);
    TransferFactors f;
    f.r_plus.reserve(size_t(spec.L));
    f.r_minus.reserve(size_t(spec.L));
    for (int j = 1; j <= spec.L; ++j) {
        const double uj = inhomogeneity(spec, j);
        f.r_plus.push_back(r_matrix(weights_at(spec.sp, spec.sp.u + uj)).m);
        f.r_minus.push_back(r_matrix(weights_at(spec.sp, spec.sp.u - uj)).m);
    }
    f.kp = kp;
    return f;
}

// In-place two-site gate on slots (si, sj) of an n-slot register, slot 0
// most significant; gate index (bit si << 1) | bit sj, matching two_site_op.
void apply_two_site(const Matrix& op4, int si, int sj, int n, Vector& v) {
    const Eigen::Index mi = Eigen::Index(1) << (n - 1 - si);
    const Eigen::Index mj = Eigen::Index(1) << (n - 1 - sj);
    const Eigen::Index dim = Eigen::Index(1) << n;
    for (Eigen::Index base = 0; base < dim; ++base) {
        if ((base & mi) != 0 || (base & mj) != 0) continue;
        const Eigen::Index i01 = base | mj;
        const Eigen::Index i10 = base | mi;
        const Eigen::Index i11 = base | mi | mj;
        const Complex x00 = v(base), x01 = v(i01), x10 = v(i10), x11 = v(i11);
        v(base) = op4(0, 0) * x00 + op4(0, 1) * x01 + op4(0, 2) * x10 + op4(0, 3) * x11;
        v(i01) = op4(1, 0) * x00 + op4(1, 1) * x01 + op4(1, 2) * x10 + op4(1, 3) * x11;
        v(i10) = op4(2, 0) * x00 + op4(2, 1) * x01 + op4(2, 2) * x10 + op4(2, 3) * x11;
        v(i11) = op4(3, 0) * x00 + op4(3, 1) * x01 + op4(3, 2) * x10 + op4(3, 3) * x11;
    }
}

// 2x2 gate on the auxiliary (most significant) slot.
void apply_aux(const Matrix& k, Vector& v) {
    const Eigen::Index half = v.size() / 2;
    const Vector top = v.head(half);
    v.head(half) = k(0, 0) * top + k(0, 1) * v.tail(half);
    v.tail(half) = k(1, 0) * top + k(1, 1) * v.tail(half);
}

// tr_0(K^+ U K^- Ubar) applied to one chain vector, O(L 2^L).
Vector apply_factors(const TransferFactors& f, int L, const Vector& psi) {
    const Eigen::Index D = Eigen::Index(1) << L;
    if (psi.size() != D)
        throw std::invalid_argument("transfer_apply expects a length 2^L vector, got " +
                                    std::to_string(psi.size()));
    const int n = L + 1;
    Vector out = Vector::Zero(D);
    for (int alpha = 0; alpha < 2; ++alpha) {
        Vector w = Vector::Zero(2 * D);
        w.segment(alpha * D, D) = psi;
        // Ubar = R01 ... R0L acts rightmost factor first
        for (int j = L; j >= 1; --j) apply_two_site(f.r_minus[size_t(j - 1)], 0, j, n, w);
        apply_aux(f.kp.k_minus, w);
        // U = R0L ... R01 acts rightmost factor first
        for (int j = 1; j <= L; ++j) apply_two_site(f.r_plus[size_t(j - 1)], 0, j, n, w);
        apply_aux(f.kp.k_plus, w);
        out += w.segment(alpha * D, D);
    }
    return out;
}

// Dense double-row build from materialized two-site factors (independent of
// the vector kernel above).
Matrix dense_with_pair(const TransferSpec& spec, const KPair& kp) {
    require_lengths(spec);
    const int n = spec.L + 1;
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (dim > dense_cap)
        throw std::invalid_argument("transfer_dense needs 2^(L+1) <= " +
                                    std::to_string(dense_cap) + "; use transfer_apply");
    const TransferFactors f = factors_for(spec, kp);
    const Eigen::Index D = dim / 2;
    Matrix U = Matrix::Identity(dim, dim);
    for (int j = spec.L; j >= 1; --j)
        U = (U * two_site_op(f.r_plus[size_t(j - 1)], 0, j, n)).eval();
    Matrix Ub = Matrix::Identity(dim, dim);
    for (int j = 1; j <= spec.L; ++j)
        Ub = (Ub * two_site_op(f.r_minus[size_t(j - 1)], 0, j, n)).eval();
    const Matrix id = Matrix::Identity(D, D);
    const Matrix M = kron(f.kp.k_plus, id) * U * kron(f.kp.k_minus, id) * Ub;
    return partial_trace_aux(M);
}

std::map<std::string, double> tag(const TransferSpec& spec) {
    return {{"L", double(spec.L)},
            {"p", spec.sp.p.p},
            {"u", spec.sp.u},
            {"t", spec.sp.t},
            {"eta", spec.sp.eta}};
}

Complex contract(const RowVector& w, const Matrix& M, const Vector& v) {
    return (w * M * v).eval()(0, 0);
}

// Eigenvalue of T closest to the factorized formula, no eigenvectors.
Complex matched_eigenvalue(int L, const Nome& p, double u) {
    const SpectralPoint sp(p, u);
    const TransferSpec spec(L, sp);
    const double target = lambda_formula(L, weights(sp), k_pair_for(spec));
    const SpectralResult es = eig_dense(transfer_dense(spec), false);
    Eigen::Index best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        const double d = std::abs(es.eigenvalues(i) - Complex(target, 0.0));
        if (d < dist) { dist = d; best = i; }
    }
    return es.eigenvalues(best);
}

// Derivatives of the four weights in the spectral argument.
struct WeightDerivs {
    double da, db, dc, dd;
};

WeightDerivs weight_derivs(const SpectralPoint& sp, double u) {
    const Nome p2 = sp.p.squared();
    const double e2 = 2.0 * sp.eta;
    const double f4 = sp.rho * theta(4, e2, p2);
    const double f1 = sp.rho * theta(1, e2, p2);
    WeightDerivs d;
    d.da = f4 * (theta_deriv(4, u, p2) * theta(1, u + e2, p2) +
                 theta(4, u, p2) * theta_deriv(1, u + e2, p2));
    d.db = f4 * (theta_deriv(1, u, p2) * theta(4, u + e2, p2) +
                 theta(1, u, p2) * theta_deriv(4, u + e2, p2));
    d.dc = f1 * (theta_deriv(4, u, p2) * theta(4, u + e2, p2) +
                 theta(4, u, p2) * theta_deriv(4, u + e2, p2));
    d.dd = f1 * (theta_deriv(1, u, p2) * theta(1, u + e2, p2) +
                 theta(1, u, p2) * theta_deriv(1, u + e2, p2));
    return d;
}

// d/du of K(u) = Id + sum_a (theta1(u)/theta_(5-a)(u)) mu_a s^a at nome p.
Matrix k_general_deriv(const Nome& p, double u, const std::array<double, 3>& mu) {
    Matrix K = Matrix::Zero(2, 2);
    for (int a = 1; a <= 3; ++a) {
        const int j = 5 - a;
        const double den = theta(j, u, p);
        const double ratio =
            (theta_deriv(1, u, p) * den - theta(1, u, p) * theta_deriv(j, u, p)) / (den * den);
        K += ratio * mu[size_t(a - 1)] * pauli(a);
    }
    return K;
}

Matrix ordered_product(const std::vector<Matrix>& F) {
    Matrix P = F.front();
    for (size_t i = 1; i < F.size(); ++i) P = (P * F[i]).eval();
    return P;
}

// d/du of F[0](u) ... F[m-1](u) by the product rule.
Matrix product_derivative(const std::vector<Matrix>& F, const std::vector<Matrix>& dF) {
    const Eigen::Index dim = F.front().rows();
    Matrix sum = Matrix::Zero(dim, dim);
    for (size_t k = 0; k < F.size(); ++k) {
        Matrix term = Matrix::Identity(dim, dim);
        for (size_t i = 0; i < F.size(); ++i) term = (term * (i == k ? dF[i] : F[i])).eval();
        sum += term;
    }
    return sum;
}

}  // namespace

KPair k_pair_for(const TransferSpec& spec) {
    if (spec.source == KSource::weight_form)
        return k_pair_weights(weights(spec.sp), Complex(y_of_t(spec.sp.p, spec.sp.t), 0.0));
    return k_pair_general(spec.sp, spec.mu);
}

Matrix transfer_dense(const TransferSpec& spec) {
    return dense_with_pair(spec, k_pair_for(spec));
}

Vector transfer_apply(const TransferSpec& spec, const Vector& psi) {
    return apply_factors(factors_for(spec, k_pair_for(spec)), spec.L, psi);
}

double lambda_formula(int L, const VertexWeights& w, const KPair& kp) {
    return std::pow(w.a + w.b, 2 * L) * (kp.k_plus * kp.k_minus).trace().real();
}

Matrix transfer_hamiltonian(const TransferSpec& spec) {
    if (spec.source == KSource::weight_form)
        return xyz_hamiltonian(spec.L, chain_couplings(spec.sp));
    ChainCouplings c;
    c.J = exchange_couplings_theta(spec.sp.p, spec.sp.eta);
    c.lambda = lambda_from_mu(spec.sp.p, spec.sp.eta, c.J, spec.mu);
    c.mu = spec.mu;
    return xyz_hamiltonian(spec.L, c);
}

Report check_commutation(const TransferSpec& spec, double v) {
    Report rep;
    auto params = tag(spec);
    params["v"] = v;
    const Matrix Tu = transfer_dense(spec);
    TransferSpec sv = spec;
    sv.sp = SpectralPoint(spec.sp.p, v, spec.sp.t, spec.sp.eta, spec.sp.rho);
    const Matrix Tv = transfer_dense(sv);
    rep.add("transfer-commutation", "[T(u), T(v)] = 0 for one boundary pair", params,
            (Tu * Tv - Tv * Tu).norm() / (Tu.norm() * Tv.norm()), 1e-10);
    const Matrix H = transfer_hamiltonian(spec);
    rep.add("hamiltonian-transfer-commutation", "[H_XYZ, T(u)] = 0 at matched couplings", params,
            (H * Tu - Tu * H).norm() / (H.norm() * Tu.norm()), 1e-10);
    return rep;
}

Report check_log_derivative(int L, const SpectralPoint& sp, const std::array<double, 3>& mu) {
    Report rep;
    TransferSpec spec(L, SpectralPoint(sp.p, 0.0, sp.t, sp.eta, sp.rho));
    spec.source = KSource::theta_general;
    spec.mu = mu;
    auto params = tag(spec);

    const VertexWeights w0 = weights_at(sp, 0.0);
    const WeightDerivs d = weight_derivs(sp, 0.0);
    const int n = L + 1;
    const Eigen::Index D = Eigen::Index(1) << L;
    const Matrix id = Matrix::Identity(D, D);

    // site factors and their derivatives at u = 0
    const Matrix R0 = r_matrix(w0).m;
    const Matrix Rd = r_matrix(VertexWeights{d.da, d.db, d.dc, d.dd}).m;
    std::vector<Matrix> Fu, dFu, Fb, dFb;
    for (int j = L; j >= 1; --j) {  // U = R0L ... R01, left to right
        Fu.push_back(two_site_op(R0, 0, j, n));
        dFu.push_back(two_site_op(Rd, 0, j, n));
    }
    for (int j = 1; j <= L; ++j) {  // Ubar = R01 ... R0L
        Fb.push_back(two_site_op(R0, 0, j, n));
        dFb.push_back(two_site_op(Rd, 0, j, n));
    }
    const Matrix U = ordered_product(Fu), Ub = ordered_product(Fb);
    const Matrix Ud = product_derivative(Fu, dFu), Ubd = product_derivative(Fb, dFb);

    const double e2 = 2.0 * sp.eta;
    const Matrix Kp = kron(k_general(sp.p, e2, mu), id);
    const Matrix Km = kron(k_general(sp.p, 0.0, mu), id);
    const Matrix Kpd = kron(k_general_deriv(sp.p, e2, mu), id);
    const Matrix Kmd = kron(k_general_deriv(sp.p, 0.0, mu), id);

    const Matrix T0 = partial_trace_aux(Kp * U * Km * Ub);
    const Matrix Tp = partial_trace_aux(Kpd * U * Km * Ub + Kp * Ud * Km * Ub +
                                        Kp * U * Kmd * Ub + Kp * U * Km * Ubd);

    // T(0)^(-1) T'(0) = L (a'+c')/a - (2 b'/a) H_XYZ, couplings from derivatives
    ChainCouplings c;
    c.J = {1.0 + d.dd / d.db, 1.0 - d.dd / d.db, (d.da - d.dc) / d.db};
    c.lambda = lambda_from_mu(sp.p, sp.eta, c.J, mu);
    c.mu = mu;
    const Matrix H = xyz_hamiltonian(L, c);
    const Matrix rhs = (double(L) * (d.da + d.dc) / w0.a) * id - (2.0 * d.db / w0.a) * H;
    const Matrix lhs = T0.partialPivLu().solve(Tp);
    rep.add("log-derivative-identity",
            "T(0)^(-1) T'(0) = L (a'+c')/a - (2 b'/a) H_XYZ", params,
            (lhs - rhs).norm() / rhs.norm(), 1e-9);

    // central-difference cross-check of the analytic T'(0)
    const auto T_at = [&](double u) {
        TransferSpec s = spec;
        s.sp = SpectralPoint(sp.p, u, sp.t, sp.eta, sp.rho);
        return transfer_dense(s);
    };
    const double h = 1e-5;
    const auto sym = [&](double step) { return ((T_at(step) - T_at(-step)) / (2.0 * step)).eval(); };
    const Matrix Tfd = (4.0 * sym(h / 2.0) - sym(h)) / 3.0;
    rep.add("log-derivative-fd", "analytic T'(0) matches Richardson central differences", params,
            (Tp - Tfd).norm() / Tp.norm(), 1e-6);

    // closure between the two nomes: a(0) theta1'(0,p) / (J b'(0)) = theta1(2 eta, p)
    const Nome p2 = sp.p.squared();
    const double Jfac = std::pow(theta(4, 0.0, p2) / theta(4, e2, p2), 2);
    const double lhs_b = w0.a * theta_deriv(1, 0.0, sp.p) / (Jfac * d.db);
    const double rhs_b = theta(1, e2, sp.p);
    rep.add("boundary-coupling-closure", "a(0) theta1'(0,p) / (J b'(0)) = theta1(2 eta, p)",
            params, std::abs(lhs_b - rhs_b) / std::abs(rhs_b), 1e-10);
    return rep;
}

EigenCertificate certify_singlet_eigenvalue(int L, const Nome& p, double u) {
    const SpectralPoint sp(p, u);
    const TransferSpec spec(L, sp);
    EigenCertificate cert;
    cert.source = spec.source;
    const VertexWeights w = weights(sp);
    cert.lambda_formula = lambda_formula(L, w, k_pair_for(spec));

    const double zeta = zeta_of_nome(p);
    const Complex y0(y_of_t(p, pi / 6.0), 0.0);
    const LocalSupercharge q = local_supercharge(zeta, y0);
    const ThetaBasis basis = theta_basis(p, pi / 6.0);
    const SingletData s = singlet(q, L, susy_hamiltonian(q, L), basis);

    const Matrix T = transfer_dense(spec);
    cert.residual = (T * s.psi - cert.lambda_formula * s.psi).norm() /
                    (std::abs(cert.lambda_formula) * s.psi.norm());

    const SpectralResult es = eig_dense(T, true);
    const Complex target(cert.lambda_formula, 0.0);
    const double ball = 1e-8 * std::max(1.0, std::abs(cert.lambda_formula));
    cert.multiplicity = multiplicity_in_ball(es.eigenvalues, target, ball);
    Eigen::Index best = 0;
    double dist = std::numeric_limits<double>::infinity();
    double top_mod = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        const double dd = std::abs(es.eigenvalues(i) - target);
        if (dd < dist) { dist = dd; best = i; }
        top_mod = std::max(top_mod, std::abs(es.eigenvalues(i)));
    }
    cert.lambda_measured = es.eigenvalues(best);
    cert.overlap = std::abs(es.eigenvectors.col(best).dot(s.psi)) / s.psi.norm();
    cert.is_largest = std::abs(cert.lambda_measured) >= top_mod * (1.0 - 1e-12);
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        const double dd = std::abs(es.eigenvalues(i) - target);
        if (dd > ball) gap = std::min(gap, dd);
    }
    cert.gap_to_next = gap;
    return cert;
}

Report check_tq_commutation(int L, const Nome& p, double u, double eta) {
    Report rep;
    const SpectralPoint sp(p, u, pi / 6.0, eta);
    const TransferSpec sL(L, sp), sL1(L + 1, sp);
    auto params = tag(sL);
    const VertexWeights w = weights(sp);
    const double zeta = zeta_of_nome(p);
    const Complex y0(y_of_t(p, pi / 6.0), 0.0);
    const Matrix Q = global_supercharge(local_supercharge(zeta, y0), L);
    const Matrix lhs = transfer_dense(sL1) * Q;
    const Matrix rhs = std::pow(w.a + w.b, 2) * Q * transfer_dense(sL);
    rep.add("transfer-supercharge-exchange", "T_(L+1) Q_L = (a+b)^2 Q_L T_L", params,
            (lhs - rhs).norm() / lhs.norm(), 1e-10);
    return rep;
}

Report check_eigenvalue_recurrence(const Nome& p, double u, int Lmax) {
    Report rep;
    if (Lmax < 3) throw std::invalid_argument("recurrence needs Lmax >= 3");
    std::vector<Complex> lam(size_t(Lmax) + 1);
    for (int L = 1; L <= Lmax; ++L) lam[size_t(L)] = matched_eigenvalue(L, p, u);
    const VertexWeights w = weights(SpectralPoint(p, u));
    const double f = std::pow(w.a + w.b, 4);
    for (int L = 3; L <= Lmax; ++L) {
        rep.add("eigenvalue-recurrence", "lambda_L = (a+b)^4 lambda_(L-2), measured values",
                {{"L", double(L)}, {"p", p.p}, {"u", u}},
                std::abs(lam[size_t(L)] - f * lam[size_t(L) - 2]) / std::abs(lam[size_t(L)]),
                1e-9);
    }
    return rep;
}

Report check_singlet_contractions(const Nome& p, double u, double k_y_scale) {
    Report rep;
    const SpectralPoint sp(p, u);
    const VertexWeights w = weights(sp);
    const ThetaBasis basis = theta_basis(p, pi / 6.0);
    const Complex yk(k_y_scale * y_of_t(p, pi / 6.0), 0.0);
    const KPair kp = k_pair_weights(w, yk);
    const Complex trkk = (kp.k_plus * kp.k_minus).trace();
    std::map<std::string, double> params{{"p", p.p}, {"u", u}, {"k_y_scale", k_y_scale}};

    // one site: (w+ T1 v+)/(w+ v+) = (a+b)^2 tr(K+ K-)
    const Matrix R = r_matrix(w).m;
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix T1 = partial_trace_aux(kron(kp.k_plus, id2) * R * kron(kp.k_minus, id2) * R);
    const Complex lhs1 = contract(basis.w_plus, T1, basis.v_plus) /
                         (basis.w_plus * basis.v_plus).eval()(0, 0);
    const Complex rhs1 = std::pow(w.a + w.b, 2) * trkk;
    rep.add("one-site-contraction", "(w+ T_1 v+)/(w+ v+) = (a+b)^2 tr(K+ K-)", params,
            std::abs(lhs1 - rhs1) / std::abs(rhs1), 1e-10);

    // two sites: (1 (x) alpha) R02 R01 K0^- R01 R02 (1 (x) chi) = (a+b)^4 <alpha|chi> K^-
    const ChiAlpha ca = chi_alpha(basis);
    const Matrix R01 = two_site_op(R, 0, 1, 3), R02 = two_site_op(R, 0, 2, 3);
    const Matrix M = R02 * R01 * kron(kp.k_minus, Matrix::Identity(4, 4)) * R01 * R02;
    Matrix Mc(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            Mc(a, b) = (ca.alpha * M.block(4 * a, 4 * b, 4, 4) * ca.chi).eval()(0, 0);
    const Complex pairing = (ca.alpha * ca.chi).eval()(0, 0);
    const Complex factor = std::pow(w.a + w.b, 4) * pairing;
    const Matrix rhs2 = factor * kp.k_minus;
    rep.add("two-site-contraction",
            "(1 (x) alpha) R02 R01 K0^- R01 R02 (1 (x) chi) = (a+b)^4 <alpha|chi> K^-", params,
            (Mc - rhs2).norm() / rhs2.norm(), 1e-10);

    // the scalar in front of K^- alone
    const Complex fit = (kp.k_minus.adjoint() * Mc).trace() /
                        (kp.k_minus.adjoint() * kp.k_minus).trace();
    rep.add("two-site-factor", "fitted sandwich scalar equals (a+b)^4 <alpha|chi>", params,
            std::abs(fit - factor) / std::abs(factor), 1e-10);
    return rep;
}

EigenCertificate certify_top_eigenvalue(int L, const Nome& p, double u, unsigned seed) {
    if (!(u > 0.0 && u < pi / 3.0))
        throw std::domain_error("positive-weight regime needs 0 < u < pi/3, got " +
                                std::to_string(u));
    const SpectralPoint sp(p, u);
    const TransferSpec spec(L, sp);
    EigenCertificate cert;
    cert.source = spec.source;
    cert.lambda_formula = lambda_formula(L, weights(sp), k_pair_for(spec));
    const Complex target(cert.lambda_formula, 0.0);
    const double ball = 1e-8 * std::max(1.0, std::abs(cert.lambda_formula));
    const Eigen::Index D = Eigen::Index(1) << L;

    Vector values;
    if ((Eigen::Index(2) << L) <= dense_cap) {
        const Matrix T = transfer_dense(spec);
        cert.min_entry = T.real().minCoeff();
        cert.max_imag = T.imag().cwiseAbs().maxCoeff();
        values = eig_dense(T, false).eigenvalues;
    } else {
        cert.sampled = true;
        std::mt19937 rng(seed);
        std::uniform_int_distribution<Eigen::Index> pick(0, D - 1);
        const TransferFactors f = factors_for(spec, k_pair_for(spec));
        cert.min_entry = std::numeric_limits<double>::infinity();
        cert.max_imag = 0.0;
        for (int s = 0; s < 32; ++s) {
            Vector e = Vector::Zero(D);
            e(pick(rng)) = 1.0;
            const Vector col = apply_factors(f, L, e);
            cert.min_entry = std::min(cert.min_entry, col.real().minCoeff());
            cert.max_imag = std::max(cert.max_imag, col.imag().cwiseAbs().maxCoeff());
        }
        const auto apply = [&](const Vector& x) { return apply_factors(f, L, x); };
        values = eig_extreme(apply, D, 2, Which::largest_magnitude, 1e-8).eigenvalues;
    }

    Eigen::Index best = 0;
    double dist = std::numeric_limits<double>::infinity();
    double top_mod = 0.0, second_mod = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double dd = std::abs(values(i) - target);
        if (dd < dist) { dist = dd; best = i; }
        const double m = std::abs(values(i));
        if (m > top_mod) { second_mod = top_mod; top_mod = m; }
        else second_mod = std::max(second_mod, m);
    }
    cert.lambda_measured = values(best);
    cert.residual = std::abs(cert.lambda_measured - target) / std::abs(target);
    cert.multiplicity = multiplicity_in_ball(values, target, ball);
    cert.is_largest = std::abs(cert.lambda_measured) >= top_mod * (1.0 - 1e-12);
    cert.gap_to_next = top_mod - second_mod;
    return cert;
}

Report check_free_energy(int L, const Nome& p, double u) {
    Report rep;
    const SpectralPoint sp(p, u);
    const TransferSpec spec(L, sp);
    auto params = tag(spec);
    const VertexWeights w = weights(sp);
    const KPair kp = k_pair_for(spec);
    const double trkk = (kp.k_plus * kp.k_minus).trace().real();
    const double lam = lambda_formula(L, w, kp);
    const double split = -2.0 * L * std::log(w.a + w.b) - std::log(trkk);
    rep.add("free-energy-split", "-ln Lambda_L = -2L ln(a+b) - ln tr(K+ K-)", params,
            std::abs(-std::log(lam) - split) / std::max(1.0, std::abs(split)), 1e-12);
    const Complex lam_m = matched_eigenvalue(L, p, u);
    rep.add("free-energy-measured", "-ln |lambda_measured| matches the split", params,
            std::abs(-std::log(std::abs(lam_m)) - split) / std::max(1.0, std::abs(split)), 1e-8);
    return rep;
}

Report check_transfer_covariance(int L, const Nome& p, double u) {
    Report rep;
    const SpectralPoint sp(p, u);
    const TransferSpec spec(L, sp);
    const VertexWeights w = weights(sp);
    const Complex y(y_of_t(p, pi / 6.0), 0.0);
    const Matrix T = dense_with_pair(spec, k_pair_weights(w, y));
    const struct { const char* name; int axis; Complex yp; } cases[] = {
        {"rotation-covariance-axis-1", 1, 1.0 / y},
        {"rotation-covariance-axis-2", 2, -1.0 / y},
        {"rotation-covariance-axis-3", 3, -y},
    };
    for (const auto& c : cases) {
        auto params = tag(spec);
        params["axis"] = double(c.axis);
        const Matrix R = rotation(c.axis, pi, L);
        const Matrix rhs = dense_with_pair(spec, k_pair_weights(w, c.yp));
        const Matrix lhs = R * T * R.adjoint();
        rep.add(c.name, "R^a(pi) T(y) R^a(pi)^dag = T(y') at the partner twist", params,
                (lhs - rhs).norm() / rhs.norm(), 1e-9);
        if (L <= 5) {
            const Vector ev_l = eig_dense(lhs, false).eigenvalues;
            const Vector ev_r = eig_dense(rhs, false).eigenvalues;
            const double scale = std::max(1.0, ev_r.cwiseAbs().maxCoeff());
            rep.add("rotation-covariance-spectra",
                    "conjugated and partner transfer matrices share their spectrum", params,
                    (ev_l - ev_r).cwiseAbs().maxCoeff() / scale, 1e-9);
        }
    }
    return rep;
}

Report check_inhomogeneous_factorization(int L, const Nome& p, double u,
                                         const std::vector<double>& inhomogeneities) {
    Report rep;
    const SpectralPoint sp(p, u);
    TransferSpec spec(L, sp);
    spec.source = KSource::theta_general;
    spec.mu = boundary_mu(p, sp.eta, Complex(y_of_t(p, pi / 6.0), 0.0));
    spec.inhomogeneities = inhomogeneities;
    auto params = tag(spec);
    double inh_max = 0.0;
    for (double v : inhomogeneities) inh_max = std::max(inh_max, std::abs(v));
    params["inh_max"] = inh_max;

    const KPair kp = k_pair_for(spec);
    double lam = (kp.k_plus * kp.k_minus).trace().real();
    for (int j = 1; j <= L; ++j) {
        const double uj = inhomogeneities.empty() ? 0.0 : inhomogeneities[size_t(j - 1)];
        const VertexWeights wp = weights_at(sp, u + uj), wm = weights_at(sp, u - uj);
        lam *= (wp.a + wp.b) * (wm.a + wm.b);
    }

    const SpectralResult es = eig_dense(transfer_dense(spec), true);
    const Complex target(lam, 0.0);
    Eigen::Index best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        const double dd = std::abs(es.eigenvalues(i) - target);
        if (dd < dist) { dist = dd; best = i; }
    }
    const double ball = 1e-8 * std::max(1.0, std::abs(lam));
    params["min_distance"] = dist;
    params["multiplicity"] = double(multiplicity_in_ball(es.eigenvalues, target, ball));
    rep.add("inhomogeneous-eigenvalue",
            "tr(K+ K-) prod_j (a(u+u_j)+b(u+u_j))(a(u-u_j)+b(u-u_j)) lies in the spectrum",
            params, dist / std::max(1.0, std::abs(lam)), 1e-8);

    // overlap of the matched eigenvector with the homogeneous singlet: data only
    const double zeta = zeta_of_nome(p);
    const Complex y0(y_of_t(p, pi / 6.0), 0.0);
    const LocalSupercharge q = local_supercharge(zeta, y0);
    const SingletData s = singlet(q, L, susy_hamiltonian(q, L), theta_basis(p, pi / 6.0));
    CheckRecord r;
    r.check = "inhomogeneous-singlet-overlap";
    r.citation = "overlap of the matched eigenvector with the singlet, reported as data";
    r.params = params;
    r.residual = std::abs(es.eigenvectors.col(best).dot(s.psi));
    r.tol = 0.0;
    r.status = Status::pass;
    rep.add(std::move(r));
    return rep;
}

}  // namespace susy8v
