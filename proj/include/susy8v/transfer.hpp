#pragma once

#include <vector>

#include "susy8v/hamiltonian.hpp"
#include "susy8v/vertex.hpp"

namespace susy8v {

// Which boundary pair enters the double-row transfer matrix.
enum class KSource {
    theta_general,  // K^- = K(u), K^+ = K(u + 2 eta) with explicit mu
    weight_form,    // ratio-of-weights pair at y = y(t)
};

// One double-row transfer matrix T(u) = tr_0(K_0^+ U K_0^- Ubar) with
//   U    = R_0L(u+u_L) ... R_01(u+u_1),
//   Ubar = R_01(u-u_1) ... R_0L(u-u_L),
// auxiliary slot 0 most significant.  An empty inhomogeneity list means the
// homogeneous chain u_j = 0.
struct TransferSpec {
    int L;
    SpectralPoint sp;  // p, u, t, eta, rho
    KSource source = KSource::weight_form;
    std::array<double, 3> mu{};            // theta-general coefficients
    std::vector<double> inhomogeneities{};  // empty or length L

    TransferSpec(int L_, SpectralPoint sp_) : L(L_), sp(std::move(sp_)) {}
};

// The boundary pair the transfer spec resolves to at its own spectral argument.
KPair k_pair_for(const TransferSpec& spec);

// Dense build by materialized two-site products; 2^(L+1) <= dense cap.
Matrix transfer_dense(const TransferSpec& spec);

// Matrix-free action on a chain vector in O(L 2^L) time, any L that fits in
// memory.  Agrees with transfer_dense wherever both exist.
Vector transfer_apply(const TransferSpec& spec, const Vector& psi);

// (a+b)^(2L) tr(K^+ K^-)
double lambda_formula(int L, const VertexWeights& w, const KPair& kp);

// The chain Hamiltonian whose couplings match the transfer spec's boundary
// pair: J from the anisotropy, lambda from its boundary directions.
Matrix transfer_hamiltonian(const TransferSpec& spec);

// [T(u), T(v)] = 0 and [H_XYZ, T(u)] = 0, both normalized.
Report check_commutation(const TransferSpec& spec, double v);

// T(0)^(-1) T'(0) = L (a'(0)+c'(0))/a(0) - (2 b'(0)/a(0)) H_XYZ with J from
// the weight derivatives and lambda from mu; T'(0) assembled analytically
// from theta derivatives, cross-checked against central differences, plus
// the closure a(0) theta1'(0,p) / (J b'(0)) = theta1(2 eta, p).
Report check_log_derivative(int L, const SpectralPoint& sp, const std::array<double, 3>& mu);

// Spectral certificate for one eigenvalue claim.  `residual` is the action
// residual ||T psi - lambda psi|| / (|lambda| ||psi||) for the singlet
// certificate and the relative eigenvalue mismatch for the top certificate;
// `gap_to_next` is the distance from lambda to the rest of the spectrum
// (modulus gap for the top certificate).
struct EigenCertificate {
    double lambda_formula = 0.0;
    Complex lambda_measured{};
    double residual = 0.0;
    int multiplicity = 0;      // eigenvalues within 1e-8 max(1,|lambda|)
    bool is_largest = false;   // lambda tops the spectrum by modulus
    double gap_to_next = 0.0;
    double overlap = 0.0;      // |<matched eigenvector, reference state>|
    KSource source = KSource::weight_form;

    // entrywise positivity data, top certificate only
    double min_entry = 0.0;  // smallest real part over checked entries
    double max_imag = 0.0;   // largest |imaginary part| over the same
    bool sampled = false;    // true when only sampled columns were checked
};

// The supersymmetry singlet is a transfer eigenvector with the factorized
// eigenvalue (a+b)^(2L) tr(K^+ K^-), simple in the spectrum; weight-form
// boundary pair at t = pi/6.
EigenCertificate certify_singlet_eigenvalue(int L, const Nome& p, double u);

// T_(L+1) Q_L = (a+b)^2 Q_L T_L with the weight-form pair at t = pi/6.
// eta != pi/3 leaves the supersymmetric slice and breaks the identity
// (negative control).
Report check_tq_commutation(int L, const Nome& p, double u, double eta = pi / 3.0);

// Measured simple eigenvalues obey lambda_L = (a+b)^4 lambda_(L-2).
Report check_eigenvalue_recurrence(const Nome& p, double u, int Lmax);

// One-site and two-site contractions of the double-row monodromy against the
// theta basis:
//   (w+ T_1 v+)/(w+ v+) = (a+b)^2 tr(K^+ K^-),
//   and the two-site sandwich (1 (x) alpha) R02 R01 K0^- R01 R02 (1 (x) chi)
//   = (a+b)^4 <alpha|chi> K^-, checked as a full 2x2 identity.
// k_y_scale != 1 rebuilds only the K side (mismatch negative control).
Report check_singlet_contractions(const Nome& p, double u, double k_y_scale = 1.0);

// Perron certificate: every dense entry of T positive (or 32 sampled columns
// when the dense build is out of reach), the top eigenvalue matches the
// factorized formula, the modulus gap is reported, and the free energy
// splits as -ln Lambda_L = 2L(-ln(a+b)) - ln tr(K^+ K^-).
EigenCertificate certify_top_eigenvalue(int L, const Nome& p, double u, unsigned seed = 1u);

// Free-energy split of the factorized eigenvalue: exact on the formula,
// within 1e-8 against the measured eigenvalue.
Report check_free_energy(int L, const Nome& p, double u);

// pi rotations about each axis conjugate T(y) into T(y') exactly:
// (axis, y') in {(1, 1/y), (2, -1/y), (3, -y)}; weight-form pair.
Report check_transfer_covariance(int L, const Nome& p, double u);

// The conjectured inhomogeneous eigenvalue
//   tr(K^+(u) K^-(u)) prod_j (a(u+u_j)+b(u+u_j)) (a(u-u_j)+b(u-u_j))
// lies in the spectrum of the inhomogeneous transfer matrix built with the
// theta-general pair at the t = pi/6 boundary directions.  The matched
// eigenvector's overlap with the singlet is reported as data, not gated.
Report check_inhomogeneous_factorization(int L, const Nome& p, double u,
                                         const std::vector<double>& inhomogeneities);

}  // namespace susy8v
