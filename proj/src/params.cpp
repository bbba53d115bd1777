#include "susy8v/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace susy8v {

SpectralPoint::SpectralPoint(Nome nome, double u_, double t_, double eta_, double rho_)
    : p(nome), u(u_), t(t_), eta(eta_), rho(rho_) {
    if (!(t >= 0.0 && t <= pi / 2.0))
        throw std::domain_error("t must lie in [0, pi/2], got " + std::to_string(t));
    if (!(rho > 0.0))
        throw std::domain_error("rho must be positive, got " + std::to_string(rho));
}

double VertexWeights::combined_residual() const {
    const double lhs = (a * a + a * b) * (b * b + a * b);
    const double rhs = (c * c + a * b) * (d * d + a * b);
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

double zeta_of_nome(const Nome& p) {
    const Nome p2 = p.squared();
    const double r = theta(1, 2.0 * pi / 3.0, p2) / theta(4, 2.0 * pi / 3.0, p2);
    return r * r;
}

double y_of_t(const Nome& p, double t) {
    if (!(t >= 0.0 && t <= pi / 2.0))
        throw std::domain_error("t must lie in [0, pi/2], got " + std::to_string(t));
    const Nome p2 = p.squared();
    return theta(1, t, p2) / theta(4, t, p2);
}

std::array<double, 4> y_roots(double zeta) {
    if (!(zeta > 0.0 && zeta < 1.0))
        throw std::domain_error("zeta must lie in (0,1), got " + std::to_string(zeta));
    const double s = 3.0 - zeta * zeta;
    const double y0 = std::sqrt((s - std::sqrt(s * s - 4.0 * zeta * zeta)) / (2.0 * zeta));
    return {-1.0 / y0, -y0, y0, 1.0 / y0};
}

VertexWeights weights(const SpectralPoint& sp) {
    const Nome p2 = sp.p.squared();
    const double e2 = 2.0 * sp.eta;
    const double t4e = theta(4, e2, p2), t1e = theta(1, e2, p2);
    const double t4u = theta(4, sp.u, p2), t1u = theta(1, sp.u, p2);
    const double t4s = theta(4, sp.u + e2, p2), t1s = theta(1, sp.u + e2, p2);
    return {sp.rho * t4e * t4u * t1s, sp.rho * t4e * t1u * t4s,
            sp.rho * t1e * t4u * t4s, sp.rho * t1e * t1u * t1s};
}

ChainCouplings chain_couplings(double zeta, Complex y) {
    ChainCouplings c;
    c.zeta = zeta;
    c.y = y;
    c.J = {1.0 + zeta, 1.0 - zeta, (zeta * zeta - 1.0) / 2.0};
    const double n = 1.0 + std::norm(y);
    c.lambda = {-(1.0 + zeta) * y.real() / n, -(1.0 - zeta) * y.imag() / n,
                (zeta * zeta - 1.0) / 4.0 * (1.0 - std::norm(y)) / n};
    return c;
}

ChainCouplings chain_couplings(const SpectralPoint& sp) {
    const Nome p2 = sp.p.squared();
    const double r = theta(1, 2.0 * sp.eta, p2) / theta(4, 2.0 * sp.eta, p2);
    const Complex y(y_of_t(sp.p, sp.t), 0.0);
    ChainCouplings c = chain_couplings(r * r, y);
    c.mu = boundary_mu(sp.p, sp.eta, y);
    return c;
}

std::array<double, 3> boundary_mu(const Nome& p, double eta, Complex y) {
    const double n = 1.0 + std::norm(y);
    const double t1 = theta(1, eta, p);
    return {theta(4, eta, p) / t1 * 2.0 * y.real() / n,
            theta(3, eta, p) / t1 * 2.0 * y.imag() / n,
            theta(2, eta, p) / t1 * (1.0 - std::norm(y)) / n};
}

std::array<double, 3> lambda_from_mu(const Nome& p, double eta,
                                     const std::array<double, 3>& J,
                                     const std::array<double, 3>& mu) {
    const double half_t1 = 0.5 * theta(1, 2.0 * eta, p);
    return {-half_t1 * J[0] * mu[0] / theta(4, 2.0 * eta, p),
            -half_t1 * J[1] * mu[1] / theta(3, 2.0 * eta, p),
            -half_t1 * J[2] * mu[2] / theta(2, 2.0 * eta, p)};
}

std::array<double, 3> exchange_couplings_theta(const Nome& p, double eta) {
    const Nome p2 = p.squared();
    const double e2 = 2.0 * eta;
    const double ratio = theta(4, 0.0, p2) / theta(4, e2, p2);
    const double J = ratio * ratio;
    return {J * theta(4, e2, p) / theta(4, 0.0, p),
            J * theta(3, e2, p) / theta(3, 0.0, p),
            J * theta(2, e2, p) / theta(2, 0.0, p)};
}

SusyNormalization susy_normalization(double zeta, Complex y) {
    const double ay2 = std::norm(y);
    const double rey2 = (y * y).real();
    const double denom = 1.0 + ay2 * ay2 + (zeta * zeta - 1.0) * ay2 - 2.0 * zeta * rey2;
    const double x = (1.0 + ay2) * denom;
    if (!(x > 0.0))
        throw std::domain_error("normalization scale x is not positive at this (zeta, y)");
    const double lambda0 = (1.0 + 3.0 * zeta * zeta) / 4.0 -
                           (zeta * zeta - 1.0) *
                               ((3.0 + zeta * zeta) * ay2 - 4.0 * zeta * rey2) / (2.0 * denom);
    return {x, lambda0};
}

double ground_energy(int L, double zeta) {
    if (L < 1) throw std::domain_error("chain length must be >= 1");
    return -(L - 1) * (3.0 + zeta * zeta) / 4.0 - (1.0 + zeta) * (1.0 + zeta) / 2.0;
}

}  // namespace susy8v
