#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "susy8v/theta.hpp"

namespace susy8v {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

// Operations that materialize matrices refuse dimensions beyond this.
inline constexpr Eigen::Index dense_cap = 1 << 12;

// Thrown when a rank decision falls inside the ambiguity band.
struct InconclusiveRank : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Matrix kron(const Matrix& A, const Matrix& B);
Matrix kron_pow(const Matrix& A, int n);
Vector kron_vec(const Vector& a, const Vector& b);
Vector kron_vec_pow(const Vector& a, int n);

// sigma^alpha, alpha in {1,2,3}
Matrix pauli(int alpha);

// (cos(theta/2) I + i sin(theta/2) sigma^alpha)^{(x) L}
Matrix rotation(int alpha, double theta, int L);

// Places op (2^r x 2^c, possibly rectangular) on sites
// first_site .. first_site + c - 1 of an L-site register; sites are
// 1-based with site 1 the most significant factor.
Matrix kron_place(const Matrix& op, int first_site, int L);

// Places a 4x4 operator on slots (si, sj), si < sj, of an n-slot register;
// slots are 0-based with slot 0 the most significant factor.
Matrix two_site_op(const Matrix& op4, int si, int sj, int n);

Matrix swap_gate();

// Both take a (2D x 2D) operator on aux (x) chain with the aux factor most
// significant. Trace removes the aux factor; transpose transposes only it.
Matrix partial_trace_aux(const Matrix& M);
Matrix partial_transpose_aux(const Matrix& M);

struct RankResult {
    int rank = 0;
    std::vector<double> singular_values;  // descending
    Matrix kernel;                        // orthonormal basis of the null space
    double tol_used = 0.0;                // relative threshold applied
    bool ambiguous = false;               // some sigma/sigma_max in the gray band
};

// Rank by SVD: sigma > tol * sigma_max counts. Default tol is
// max(rows, cols) * eps * 64. Values with sigma/sigma_max inside
// [min(tol, 1e-11), 1e-6) set the ambiguous flag: neither clearly zero
// nor clearly full-weight.
RankResult numeric_rank(const Matrix& M, double tol = 0.0);

struct SpectralResult {
    Vector eigenvalues;              // descending real part, ties by descending imaginary part
    Matrix eigenvectors;             // unit columns aligned with eigenvalues; empty if not requested
    std::vector<double> residuals;   // ||M v - lambda v|| per pair, when vectors are present
};

SpectralResult eig_dense(const Matrix& M, bool with_vectors = true);
SpectralResult eig_hermitian(const Matrix& M, bool with_vectors = true);

// Number of eigenvalues within |lambda - target| <= radius.
int multiplicity_in_ball(const Vector& eigenvalues, Complex target, double radius);

struct GroundState {
    double energy;
    Vector psi;
    double gap;       // distance to the first level outside the degeneracy ball
    int degeneracy;   // levels within energy + ball
};

// Ground sector of a Hermitian matrix; ball radius scales as
// degeneracy_ball * max(1, |energy|).
GroundState ground_state(const Matrix& H, double degeneracy_ball = 1e-8);

enum class Which { largest_real, largest_magnitude };

// Restarted Arnoldi for the k extreme eigenpairs of an operator given only
// through its action. Deterministic start vector; residuals are true
// ||A x - theta x|| computed with one extra apply per returned pair.
SpectralResult eig_extreme(const std::function<Vector(const Vector&)>& apply, Eigen::Index dim,
                           int k, Which which, double tol = 1e-10, int max_restarts = 200);

}  // namespace susy8v
