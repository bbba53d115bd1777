#pragma once

#include "susy8v/linalg.hpp"
#include "susy8v/params.hpp"
#include "susy8v/report.hpp"

namespace susy8v {

// Local supercharge q : V -> V (x) V for one site, V = C^2.  Built from the
// anisotropy zeta and the spectral coordinate y; both are kept so that global
// operators and consistency checks can recover the construction point.
struct LocalSupercharge {
    Matrix m;  // 4 x 2
    double zeta = 0.0;
    Complex y{0.0, 0.0};
};

// q = (1 - y^2 zeta) q_up + y (y^2 - zeta) q_dn + q_phi with
//   q_up |down> = |up up> - zeta |down down>,   q_up |up> = 0,
//   q_dn |up>   = |down down> - zeta |up up>,   q_dn |down> = 0,
//   q_phi |up>  = 2 phi_up |up up> + phi_dn (|up down> + |down up>),
//   q_phi |down>= 2 phi_dn |down down> + phi_up (|up down> + |down up>),
// where phi_up = y (y^2 zeta - 1) and phi_dn = zeta - y^2.
LocalSupercharge local_supercharge(double zeta, Complex y);

// Q_L = sum_j (-1)^j 1^(j-1) (x) q (x) 1^(L-j) : V^L -> V^(L+1).
// Requires 2^(L+1) <= dense_cap.
Matrix global_supercharge(const LocalSupercharge& q, int L);

// Coassociativity defect ||(q (x) 1 - 1 (x) q) q||; zero for every (zeta, y).
double coassociativity_residual(const LocalSupercharge& q);

// One-site eigenvectors of q and their dual covectors, parameterized by the
// nome p and the spectral angle t.  Covectors are row vectors and are always
// contracted without conjugation.
struct ThetaBasis {
    Nome p;
    double t = 0.0;
    double zeta = 0.0;
    Complex y{0.0, 0.0};

    Vector v_plus, v_minus;       // kets (theta4(t+e pi/3,p^2), theta1(t+e pi/3,p^2))
    RowVector w_plus, w_minus;    // covectors e(-theta1(t-e pi/3,p^2), theta4(t-e pi/3,p^2))
    double pairing = 0.0;         // <w_e|v_e> = theta1(pi/3,p) theta2(t,p)
    double Lambda_plus = 0.0;     // q v_e = Lambda_e v_e (x) v_e
    double Lambda_minus = 0.0;
    double kappa = 0.0;           // theta3(pi/3,p)/theta3(0,p)

    // Proportionality constants to the polynomial forms of the same vectors:
    // v_e = C_e vbar_e, w_e = C_(-e) wbar_e (note the swap), and the two-site
    // combinations chi = D_plus chibar, alpha = D_minus alphabar.  Finite only
    // for y != 0; NaN at y = 0 where the polynomial normalization degenerates.
    Complex C_plus{0.0, 0.0}, C_minus{0.0, 0.0};
    Complex D_plus{0.0, 0.0}, D_minus{0.0, 0.0};

    // t-derivative data, stored only at t = pi/2 where v_minus = v_plus and
    // the derivative vector closes the Jordan-type action of q.
    bool has_tderiv = false;
    Vector vdot_plus;
    double Lambda_dot_plus = 0.0;
};

ThetaBasis theta_basis(const Nome& p, double t);

// Action of the local supercharge on the theta basis:
//  - dual pairing <w_e|v_e'> = delta theta1(pi/3,p) theta2(t,p),
//  - q v_e = Lambda_e v_e (x) v_e,
//  - (w_e (x) w_e') q = delta theta1(pi/3,p) theta2(t,p) Lambda_e w_e,
//  - adjoint closedness of w (x) w columns under -q at L = 1,
//  - at t = pi/2 the derivative relation
//    q vdot = Lambda_dot v (x) v + Lambda (vdot (x) v + v (x) vdot),
//    with the analytic Lambda_dot cross-checked against finite differences.
// Precondition: q was built from the same (zeta, y) as the basis.
Report check_q_on_basis(const LocalSupercharge& q, const ThetaBasis& basis);

// Proportionality of the theta-function vectors to their polynomial forms in
// (zeta, y), valid at t = pi/6:
//   vbar_plus  = (y (1 - zeta y^2), zeta - y^2),   vbar_minus = (1, -y),
//   wbar_plus  = (y, 1),   wbar_minus = (zeta - y^2, -y (1 - zeta y^2)),
// with v_e = C_e vbar_e and w_e = C_(-e) wbar_e, and the two-site pair
//   chibar  = (y^2 (zeta - 2 + zeta y^2), y (y^2-1), y (y^2-1), -(zeta + (zeta-2) y^2)),
//   alphabar= (y, 1, -y^2, -y),
// with chi = D_plus chibar and alpha = D_minus alphabar.
Report check_polynomial_forms(const ThetaBasis& basis);

// Two-site singlet pair: chi = v+ (x) v+ - kappa^2 v- (x) v-  (column) and
// alpha = w+ (x) w+ + kappa^(-1) w- (x) w+  (row).  Defined at t = pi/6 only.
struct ChiAlpha {
    Vector chi;
    RowVector alpha;
    Complex pairing;  // alpha . chi, contracted without conjugation
};
ChiAlpha chi_alpha(const ThetaBasis& basis);

// Projective covariance of the global supercharge under the pi spin
// rotations: for alpha = 1,2,3 the rotated supercharge at y equals the
// supercharge at y_alpha = {1/y, -1/y, -y} up to one fitted scalar,
//   c_alpha Q(zeta, y_alpha) = R^alpha(-pi) Q(zeta, y) R^alpha(pi).
// The fitted scalar is reported; the gate is the post-fit residual.
Report check_q_covariance(int L, double zeta, Complex y);

// Dimensions of ker/im quotients of the supercharge complex at chain length L,
// computed twice: from Q_(L-1), Q_L directly and from their adjoints.  Both
// routes run their own rank decisions; a rank decision that falls in the
// ambiguous band throws InconclusiveRank rather than guessing.
std::pair<int, int> cohomology_dims(const LocalSupercharge& q, int L);

// Zero-energy ground state data at the singlet point (t = pi/6).
struct SingletData {
    int L = 0;
    Vector psi;           // normalized, phase fixed so <w+^L|psi> is real positive
    Complex mu_L;         // <v+^L|psi> / <w+^L|psi> (v side conjugated, w side not)
    double energy = 0.0;  // ground eigenvalue of the supplied Hamiltonian
    double q_residual = 0.0;     // ||Q_L psi||
    double qdag_residual = 0.0;  // ||Q_(L-1)^dag psi||
};

// Extracts the singlet from a Hamiltonian whose ground energy is zero.
// Throws std::domain_error when the ground energy is nonzero beyond
// 1e-9 * max(1, ||H||): the caller is off the singlet parameter point.
SingletData singlet(const LocalSupercharge& q, int L, const Matrix& H, const ThetaBasis& basis);

}  // namespace susy8v
