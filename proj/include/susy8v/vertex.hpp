#pragma once

#include <array>

#include "susy8v/linalg.hpp"
#include "susy8v/params.hpp"
#include "susy8v/report.hpp"

namespace susy8v {

// Eight-vertex R-matrix on V (x) V:
//   [[a,0,0,d],[0,b,c,0],[0,c,b,0],[d,0,0,a]].
struct RMatrix {
    Matrix m;  // 4 x 4
    VertexWeights w;
};
RMatrix r_matrix(const VertexWeights& w);

// || R12(u-v) R13(u) R23(v) - R23(v) R13(u) R12(u-v) || / ||lhs|| with all
// three built at (p, eta, rho) of sp; holds for every eta.
double ybe_residual(const SpectralPoint& sp, double u, double v);

// Boundary matrix K(u) = Id + sum_a (theta1(u,p)/theta_(5-a)(u,p)) mu_a s^a,
// built at nome p (not p^2).  Throws when an evaluation point hits the
// theta2 zero of the a = 3 term.
Matrix k_general(const Nome& p, double u, const std::array<double, 3>& mu);

struct KPair {
    Matrix k_minus, k_plus;  // 2 x 2 each
};

// Weight-form boundary pair.  With n = 1 + |y|^2:
//   K^- = Id + (2 Re y/n)((ab+cd)/(ac+bd)) s^1 + (2 Im y/n)((ab-cd)/(ac-bd)) s^2
//            + ((1-|y|^2)/n)((b^2-d^2)/(2ab+b^2+d^2)) s^3,
//   K^+ = same structure with denominators ad+bc, bc-ad, 2ab+b^2+c^2 and
//         numerator b^2-c^2 in the s^3 term.
// Throws when one of the six denominators vanishes, naming it.
KPair k_pair_weights(const VertexWeights& w, Complex y);

// Theta-general pair K^- = K(u), K^+ = K(u + 2 eta) at sp's nome.
KPair k_pair_general(const SpectralPoint& sp, const std::array<double, 3>& mu);

// Boundary reflection residual for the theta-general K:
//   R(u-v) (K(u) (x) 1) R(u+v) (1 (x) K(v))
//     = (1 (x) K(v)) R(u+v) (K(u) (x) 1) R(u-v),
// normalized by the left side.
double reflection_residual(const SpectralPoint& sp, double u, double v,
                           const std::array<double, 3>& mu);

// One-site-to-two-site exchange operator A = (1-y^2 zeta) A_up
// + y(y^2-zeta) A_dn + A_phi with
//   A_up |up>   = d(-(c/a)|up down> + |down up>),
//   A_up |down> = c|up up> - (cd/b)|down down>,
//   A_dn |up>   = -(cd/b)|up up> + c|down down>,
//   A_dn |down> = d(|up down> - (c/a)|down up>),
//   A_phi|up>   = (2a+b) phi_up|up up> + (a+2b) phi_dn|up down>
//               + c phi_dn|down up> + d phi_up|down down>,
//   A_phi|down> = d phi_dn|up up> + c phi_up|up down>
//               + (a+2b) phi_up|down up> + (2a+b) phi_dn|down down>,
// phi_up = y(y^2 zeta - 1), phi_dn = zeta - y^2.  Requires a, b nonzero.
struct AOperator {
    Matrix m;  // 4 x 2
};
AOperator a_operators(const VertexWeights& w, double zeta, Complex y);

// Insertion of a V_0 -> V_0 (x) V map into slot j (1-based chain site) of an
// auxiliary-plus-L register: the new site is created next to the auxiliary
// slot and carried to position j by adjacent swaps.
Matrix b_insert(const Matrix& op, int j, int L);

// Bulk exchange identities between the R-matrix, the local supercharge and
// the A-operator at chain site j:
//   R0j R0j+1 (1 (x) q_j) + (a+b)(1 (x) q_j) R0j = R0j A_(j+1) + A_j R0j
// and its partner with the two R factors swapped on the left and the two
// A terms swapped on the right.  Holds exactly on the eta = pi/3 slice.
Report check_bulk_exchange(const SpectralPoint& sp, int L, int j);

// Boundary exchange identities tying A to the weight-form K-matrices at the
// singlet angle:
//   (a+b) A K^- = R (K^- (x) 1) A
// and the auxiliary-transposed partner with K^+.  The identity holds for any
// y shared by A and K; k_y_scale != 1 rebuilds only the K-matrices at a
// scaled y, the mismatch that breaks both identities (negative control).
Report check_boundary_exchange(const SpectralPoint& sp, double k_y_scale = 1.0);

}  // namespace susy8v
