#include "susy8v/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace susy8v {

namespace {

void check_dense(Eigen::Index rows, Eigen::Index cols, const char* who) {
    if (rows > dense_cap || cols > dense_cap)
        throw std::invalid_argument(std::string(who) + ": dimension " +
                                    std::to_string(std::max(rows, cols)) + " exceeds the dense cap " +
                                    std::to_string(dense_cap));
}

bool eig_before(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

SpectralResult sorted_result(const Vector& vals, const Matrix& vecs, const Matrix& M,
                             bool with_vectors) {
    const Eigen::Index n = vals.size();
    std::vector<Eigen::Index> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](Eigen::Index i, Eigen::Index j) { return eig_before(vals(i), vals(j)); });
    SpectralResult r;
    r.eigenvalues.resize(n);
    if (with_vectors) r.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        r.eigenvalues(i) = vals(idx[i]);
        if (with_vectors) r.eigenvectors.col(i) = vecs.col(idx[i]);
    }
    if (with_vectors) {
        r.residuals.resize(size_t(n));
        for (Eigen::Index i = 0; i < n; ++i)
            r.residuals[size_t(i)] =
                (M * r.eigenvectors.col(i) - r.eigenvalues(i) * r.eigenvectors.col(i)).norm();
    }
    return r;
}

}  // namespace

Matrix kron(const Matrix& A, const Matrix& B) {
    check_dense(A.rows() * B.rows(), A.cols() * B.cols(), "kron");
    Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

Matrix kron_pow(const Matrix& A, int n) {
    if (n < 0) throw std::invalid_argument("kron_pow: negative power");
    Matrix K = Matrix::Identity(1, 1);
    for (int i = 0; i < n; ++i) K = kron(K, A);
    return K;
}

Vector kron_vec(const Vector& a, const Vector& b) {
    Vector v(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) v.segment(i * b.size(), b.size()) = a(i) * b;
    return v;
}

Vector kron_vec_pow(const Vector& a, int n) {
    Vector v = Vector::Ones(1);
    for (int i = 0; i < n; ++i) v = kron_vec(v, a);
    return v;
}

Matrix pauli(int alpha) {
    Matrix s(2, 2);
    switch (alpha) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli: alpha must be 1, 2 or 3");
    }
    return s;
}

Matrix rotation(int alpha, double theta, int L) {
    if (L < 0) throw std::invalid_argument("rotation: negative length");
    const Matrix single = std::cos(theta / 2.0) * Matrix::Identity(2, 2) +
                          Complex(0, 1) * std::sin(theta / 2.0) * pauli(alpha);
    return kron_pow(single, L);
}

Matrix kron_place(const Matrix& op, int first_site, int L) {
    int rk = 0, ck = 0;
    while ((Eigen::Index(1) << rk) < op.rows()) ++rk;
    while ((Eigen::Index(1) << ck) < op.cols()) ++ck;
    if ((Eigen::Index(1) << rk) != op.rows() || (Eigen::Index(1) << ck) != op.cols())
        throw std::invalid_argument("kron_place: operator dimensions are not powers of two");
    if (first_site < 1 || first_site + ck - 1 > L)
        throw std::invalid_argument("kron_place: sites out of range");
    const int left = first_site - 1;
    const int right = L - left - ck;
    check_dense(Eigen::Index(1) << (left + rk + right), Eigen::Index(1) << L, "kron_place");
    return kron(kron(Matrix::Identity(Eigen::Index(1) << left, Eigen::Index(1) << left), op),
                Matrix::Identity(Eigen::Index(1) << right, Eigen::Index(1) << right));
}

Matrix two_site_op(const Matrix& op4, int si, int sj, int n) {
    if (op4.rows() != 4 || op4.cols() != 4)
        throw std::invalid_argument("two_site_op: operator must be 4x4");
    if (!(0 <= si && si < sj && sj < n))
        throw std::invalid_argument("two_site_op: need 0 <= si < sj < n");
    const Eigen::Index dim = Eigen::Index(1) << n;
    check_dense(dim, dim, "two_site_op");
    const Eigen::Index mi = Eigen::Index(1) << (n - 1 - si);
    const Eigen::Index mj = Eigen::Index(1) << (n - 1 - sj);
    Matrix M = Matrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const int bi = int((col / mi) & 1);
        const int bj = int((col / mj) & 1);
        const int in4 = (bi << 1) | bj;
        const Eigen::Index base = col & ~(mi | mj);
        for (int out4 = 0; out4 < 4; ++out4) {
            const Complex v = op4(out4, in4);
            if (v == Complex(0, 0)) continue;
            const Eigen::Index row = base | (((out4 >> 1) & 1) ? mi : 0) | ((out4 & 1) ? mj : 0);
            M(row, col) += v;
        }
    }
    return M;
}

Matrix swap_gate() {
    Matrix s = Matrix::Zero(4, 4);
    s(0, 0) = 1;
    s(1, 2) = 1;
    s(2, 1) = 1;
    s(3, 3) = 1;
    return s;
}

Matrix partial_trace_aux(const Matrix& M) {
    const Eigen::Index D = M.rows() / 2;
    if (M.rows() != 2 * D || M.cols() != 2 * D || M.rows() != M.cols())
        throw std::invalid_argument("partial_trace_aux: need a square matrix of even dimension");
    return M.topLeftCorner(D, D) + M.bottomRightCorner(D, D);
}

Matrix partial_transpose_aux(const Matrix& M) {
    const Eigen::Index D = M.rows() / 2;
    if (M.rows() != 2 * D || M.cols() != 2 * D || M.rows() != M.cols())
        throw std::invalid_argument("partial_transpose_aux: need a square matrix of even dimension");
    Matrix R(2 * D, 2 * D);
    R.topLeftCorner(D, D) = M.topLeftCorner(D, D);
    R.topRightCorner(D, D) = M.bottomLeftCorner(D, D);
    R.bottomLeftCorner(D, D) = M.topRightCorner(D, D);
    R.bottomRightCorner(D, D) = M.bottomRightCorner(D, D);
    return R;
}

RankResult numeric_rank(const Matrix& M, double tol) {
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    RankResult r;
    r.tol_used = tol > 0.0 ? tol
                           : double(std::max(M.rows(), M.cols())) *
                                 std::numeric_limits<double>::epsilon() * 64.0;
    r.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    if (smax > 0.0) {
        const double band_lo = std::min(r.tol_used, 1e-11);
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            const double rel = sv(i) / smax;
            if (rel > r.tol_used) ++r.rank;
            if (rel >= band_lo && rel < 1e-6) r.ambiguous = true;
        }
    }
    r.kernel = svd.matrixV().rightCols(M.cols() - r.rank);
    return r;
}

SpectralResult eig_dense(const Matrix& M, bool with_vectors) {
    if (M.rows() != M.cols()) throw std::invalid_argument("eig_dense: matrix must be square");
    check_dense(M.rows(), M.cols(), "eig_dense");
    Eigen::ComplexEigenSolver<Matrix> es(M, with_vectors);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_dense: solver failed");
    return sorted_result(es.eigenvalues(), with_vectors ? es.eigenvectors() : Matrix(), M,
                         with_vectors);
}

SpectralResult eig_hermitian(const Matrix& M, bool with_vectors) {
    if (M.rows() != M.cols()) throw std::invalid_argument("eig_hermitian: matrix must be square");
    check_dense(M.rows(), M.cols(), "eig_hermitian");
    const double dev = (M - M.adjoint()).norm();
    if (dev > 1e-12 * std::max(1.0, M.norm()))
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, with_vectors ? Eigen::ComputeEigenvectors
                                                             : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
    return sorted_result(es.eigenvalues().cast<Complex>(),
                         with_vectors ? Matrix(es.eigenvectors()) : Matrix(), M, with_vectors);
}

int multiplicity_in_ball(const Vector& eigenvalues, Complex target, double radius) {
    int count = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        if (std::abs(eigenvalues(i) - target) <= radius) ++count;
    return count;
}

GroundState ground_state(const Matrix& H, double degeneracy_ball) {
    const SpectralResult full = eig_hermitian(H, true);
    const Eigen::Index n = full.eigenvalues.size();
    GroundState g;
    g.energy = full.eigenvalues(n - 1).real();  // descending order: ground state last
    g.psi = full.eigenvectors.col(n - 1);
    const double ball = degeneracy_ball * std::max(1.0, std::abs(g.energy));
    g.degeneracy = 0;
    g.gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = n; i-- > 0;) {
        const double e = full.eigenvalues(i).real();
        if (e - g.energy <= ball)
            ++g.degeneracy;
        else {
            g.gap = e - g.energy;
            break;
        }
    }
    return g;
}

SpectralResult eig_extreme(const std::function<Vector(const Vector&)>& apply, Eigen::Index dim,
                           int k, Which which, double tol, int max_restarts) {
    if (k < 1 || Eigen::Index(k) > dim) throw std::invalid_argument("eig_extreme: bad k");
    const Eigen::Index m = std::min<Eigen::Index>(dim, std::max(32, 2 * k + 16));

    auto prefer = [&](const Complex& a, const Complex& b) {
        if (which == Which::largest_magnitude) {
            if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        }
        return eig_before(a, b);
    };

    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = 1.0 + 0.25 * std::sin(0.7 * double(i) + 0.3);
    v.normalize();

    Matrix V(dim, m + 1);
    Matrix H;
    Eigen::Index m_eff = m;
    bool breakdown = false;

    for (int restart = 0; restart < max_restarts; ++restart) {
        V.col(0) = v;
        H = Matrix::Zero(m + 1, m);
        m_eff = m;
        breakdown = false;
        for (Eigen::Index j = 0; j < m; ++j) {
            Vector w = apply(V.col(j));
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index i = 0; i <= j; ++i) {
                    const Complex h = V.col(i).dot(w);
                    w -= h * V.col(i);
                    H(i, j) += h;
                }
            const double nw = w.norm();
            H(j + 1, j) = nw;
            if (nw < 1e-13) {
                m_eff = j + 1;
                breakdown = true;
                break;
            }
            V.col(j + 1) = w / nw;
        }

        Eigen::ComplexEigenSolver<Matrix> es(H.topLeftCorner(m_eff, m_eff), true);
        std::vector<Eigen::Index> idx(m_eff);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
            return prefer(es.eigenvalues()(a), es.eigenvalues()(b));
        });

        const double hedge = breakdown ? 0.0 : std::abs(H(m_eff, m_eff - 1));
        const int kk = int(std::min<Eigen::Index>(k, m_eff));
        bool converged = true;
        for (int i = 0; i < kk; ++i) {
            const double est = hedge * std::abs(es.eigenvectors()(m_eff - 1, idx[size_t(i)]));
            if (est > tol * std::max(1.0, std::abs(es.eigenvalues()(idx[size_t(i)])))) {
                converged = false;
                break;
            }
        }

        if (converged || breakdown || restart == max_restarts - 1) {
            SpectralResult r;
            r.eigenvalues.resize(kk);
            r.eigenvectors.resize(dim, kk);
            r.residuals.resize(size_t(kk));
            std::vector<Eigen::Index> order(static_cast<size_t>(kk));
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
                return eig_before(es.eigenvalues()(idx[size_t(a)]), es.eigenvalues()(idx[size_t(b)]));
            });
            for (int i = 0; i < kk; ++i) {
                const Eigen::Index src = idx[size_t(order[size_t(i)])];
                r.eigenvalues(i) = es.eigenvalues()(src);
                Vector x = V.leftCols(m_eff) * es.eigenvectors().col(src);
                x.normalize();
                r.eigenvectors.col(i) = x;
                r.residuals[size_t(i)] = (apply(x) - r.eigenvalues(i) * x).norm();
            }
            return r;
        }

        // restart from the dominant Ritz directions
        Vector next = Vector::Zero(dim);
        for (int i = 0; i < kk; ++i)
            next += V.leftCols(m_eff) * es.eigenvectors().col(idx[size_t(i)]);
        const double nn = next.norm();
        v = nn > 0 ? Vector(next / nn) : v;
    }
    throw std::runtime_error("eig_extreme: unreachable");
}

}  // namespace susy8v
