#pragma once

#include <array>
#include <complex>

#include "susy8v/theta.hpp"

namespace susy8v {

// Strip parameter bundle: nome p, spectral u, twist t, crossing eta, scale rho.
// t parameterizes the boundary twist and lives in [0, pi/2]; eta = pi/3 is the
// combined (supersymmetric) slice and the default.
struct SpectralPoint {
    Nome p;
    double u;
    double t;
    double eta;
    double rho;

    explicit SpectralPoint(Nome nome, double u_ = 0.0, double t_ = pi / 6.0,
                           double eta_ = pi / 3.0, double rho_ = 1.0);
};

struct VertexWeights {
    double a, b, c, d;

    // |(a^2+ab)(b^2+ab) - (c^2+ab)(d^2+ab)| / scale; zero exactly on the
    // combined slice eta = pi/3.
    double combined_residual() const;
};

// Couplings of the open XYZ chain: two-site exchange J, boundary field
// lambda, boundary K-matrix direction mu.
struct ChainCouplings {
    double zeta = 0.0;
    Complex y{};
    std::array<double, 3> J{};
    std::array<double, 3> lambda{};
    std::array<double, 3> mu{};
};

// Scale x and shift lambda0 linking the supercharge square to H_XYZ.
struct SusyNormalization {
    double x;
    double lambda0;
};

// Anisotropy zeta = (theta1(2pi/3, p^2) / theta4(2pi/3, p^2))^2, in (0,1).
double zeta_of_nome(const Nome& p);

// Twist coordinate y = theta1(t, p^2) / theta4(t, p^2), t in [0, pi/2].
double y_of_t(const Nome& p, double t);

// Roots of zeta (1 + y^4) = (3 - zeta^2) y^2, ascending:
// {-1/y0, -y0, y0, 1/y0} with y0 in (0,1).
std::array<double, 4> y_roots(double zeta);

VertexWeights weights(const SpectralPoint& sp);

// J and lambda from (zeta, y) on the combined slice; mu left zero.
ChainCouplings chain_couplings(double zeta, Complex y);

// Full couplings at a spectral point: zeta from (p, eta), y from t, mu from
// the boundary direction formulas at nome p.
ChainCouplings chain_couplings(const SpectralPoint& sp);

// Boundary direction mu_alpha = (theta_{5-alpha}(eta, p) / theta1(eta, p)) *
// {2 Re y, 2 Im y, 1 - |y|^2} / (1 + |y|^2).
std::array<double, 3> boundary_mu(const Nome& p, double eta, Complex y);

// Boundary field from the exchange couplings and mu:
// lambda_alpha = -(theta1(2 eta, p)/2) J_alpha mu_alpha / theta_{5-alpha}(2 eta, p).
std::array<double, 3> lambda_from_mu(const Nome& p, double eta,
                                     const std::array<double, 3>& J,
                                     const std::array<double, 3>& mu);

// Exchange couplings from theta ratios at 2 eta; at eta = pi/3 this must
// reproduce {1 + zeta, 1 - zeta, (zeta^2 - 1)/2}.
std::array<double, 3> exchange_couplings_theta(const Nome& p, double eta);

SusyNormalization susy_normalization(double zeta, Complex y);

// -(L-1)(3 + zeta^2)/4 - (1 + zeta)^2 / 2
double ground_energy(int L, double zeta);

}  // namespace susy8v
