#pragma once

#include "susy8v/susy.hpp"

namespace susy8v {

// Open XYZ chain with equal boundary fields on the first and last site:
//   H = -1/2 sum_{j<L} sum_a J_a s^a_j s^a_(j+1) + sum_a lambda_a (s^a_1 + s^a_L).
// At L = 1 the bulk sum is empty and H = 2 sum_a lambda_a s^a.
Matrix xyz_hamiltonian(int L, const ChainCouplings& c);

// H_L = Q_(L-1) Q_(L-1)^dag + Q_L^dag Q_L, the first term absent at L = 1.
// Hermitian and positive semidefinite by construction.
Matrix susy_hamiltonian(const LocalSupercharge& q, int L);

// The two Hamiltonians at one (zeta, y) together with the scale x and shift
// lambda0 that relate them affinely.
struct HamiltonianPair {
    int L = 0;
    double zeta = 0.0;
    Complex y{};
    Matrix xyz;
    Matrix susy;
    double x = 0.0;
    double lambda0 = 0.0;
};

HamiltonianPair hamiltonian_pair(int L, double zeta, Complex y);

// H_susy = x (H_xyz + ((L-1)(zeta^2+3)/4 + 2 lambda0) Id), plus Hermiticity
// of both operators and positivity of the supercharge square.
Report check_affine_relation(int L, double zeta, Complex y);

// Six unitary conjugation identities. R^a(theta) is the product single-site
// spin rotation; each case maps (zeta, y) to a new parameter point with a
// scalar prefactor:
//   a=1, pi/2: ((1+zeta)/2)^2 H((3-zeta)/(1+zeta), (y-i)/(1-iy))
//   a=2, pi/2: ((1-zeta)/2)^2 H((zeta+3)/(zeta-1), (1+y)/(1-y))
//   a=3, pi/2: H(-zeta, -iy)
//   a=1, pi:   H(zeta, 1/y)
//   a=2, pi:   H(zeta, -1/y)
//   a=3, pi:   H(zeta, -y)
// The mapped zeta may leave (0,1); the chain is assembled from the raw
// constants without domain checks.
Report check_rotation_identities(int L, double zeta, Complex y);

// Ground-state certificates at nome p, spectral angle t = pi/6 (y = y0):
//   - ground energy equals -(L-1)(3+zeta^2)/4 - (1+zeta)^2/2 within 1e-9,
//   - one-dimensional ground space with a reported gap,
//   - the ground state is annihilated by Q_L and Q_(L-1)^dag,
//   - the shifted chain (1 + max row sum) Id - H is entrywise nonnegative and
//     the phase-fixed ground state is componentwise positive,
//   - at the root 1/y0 outside the unit disk the energy law still holds and
//     the rotated singlet R^1(-pi) psi is an eigenvector,
//   - at five off-root values of y the state fails to be a singlet: either
//     the supercharges do not annihilate it or the energy law breaks.
Report check_ground_energy(int L, const Nome& p);

// Ground energies at y0 for L = 1..Lmax fit an affine law in L; the fitted
// slope equals -(3+zeta^2)/4 and the fit residual stays below 1e-9.
Report check_energy_slope(const Nome& p, int Lmax);

}  // namespace susy8v
