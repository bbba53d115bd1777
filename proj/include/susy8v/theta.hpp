#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace susy8v {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Elliptic nome q in (0,1), carried together with s = -ln q so series
// exponents q^e evaluate as exp(-s*e) without pow underflow surprises.
struct Nome {
    double p;
    double s;

    explicit Nome(double nome) : p(nome), s(-std::log(nome)) {
        if (!(nome > 0.0 && nome < 1.0))
            throw std::domain_error("nome must lie in (0,1), got " + std::to_string(nome));
    }

    Nome squared() const { return Nome(p * p); }
};

namespace detail {

inline double mag(double x) { return std::abs(x); }
inline double mag(const Complex& x) { return std::abs(x); }

inline constexpr int theta_max_terms = 64;
inline constexpr double theta_rel_stop = 1e-16;

// Nome series, second argument is the nome itself:
//   theta1 = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)z)
//   theta2 = 2 sum_{n>=0}        q^{(n+1/2)^2} cos((2n+1)z)
//   theta3 = 1 + 2 sum_{n>=1}        q^{n^2} cos(2nz)
//   theta4 = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2nz)
// z-derivatives are term-wise: each order multiplies by the trig frequency
// and steps the trig function through its sign cycle explicitly, so exact
// zeros (e.g. odd derivatives of even functions at z=0) stay exact.
// Terminates once two consecutive terms fall below theta_rel_stop relative
// to the largest partial sum; a single small term is not trusted because a
// trig node can zero one term mid-series.
template <class Scalar>
Scalar theta_series(int j, const Scalar& z, const Nome& q, int order) {
    static_assert(std::is_same_v<Scalar, double> || std::is_same_v<Scalar, Complex>,
                  "theta takes double or complex<double> arguments");
    if (j < 1 || j > 4)
        throw std::domain_error("theta index must be in 1..4, got " + std::to_string(j));
    using std::cos;
    using std::sin;

    const bool half_integer = (j == 1 || j == 2);  // frequencies 2n+1, else 2n
    const bool alternating = (j == 1 || j == 4);
    // Derivative cycle: sin-series (j=1) steps sin, cos, -sin, -cos;
    // cos-series (j>=2) steps cos, -sin, -cos, sin.
    const int cyc = order & 3;
    const bool want_sin = (j == 1) ? (cyc == 0 || cyc == 2) : (cyc == 1 || cyc == 3);
    double cyc_sign;
    if (j == 1)
        cyc_sign = (cyc == 2 || cyc == 3) ? -1.0 : 1.0;
    else
        cyc_sign = (cyc == 1 || cyc == 2) ? -1.0 : 1.0;

    Scalar sum{};
    double scale = 0.0;
    int quiet = 0;
    for (int n = 0; n < theta_max_terms; ++n) {
        const double k = half_integer ? 2.0 * n + 1.0 : 2.0 * n;
        Scalar term;
        if (!half_integer && n == 0) {
            if (order > 0) continue;  // constant term, killed by d/dz
            term = Scalar(1);
        } else {
            const double expo = half_integer ? (n + 0.5) * (n + 0.5) : double(n) * double(n);
            double coeff = 2.0 * std::exp(-q.s * expo) * cyc_sign;
            for (int m = 0; m < order; ++m) coeff *= k;
            if (alternating && (n & 1)) coeff = -coeff;
            const Scalar arg = k * z;
            term = coeff * (want_sin ? sin(arg) : cos(arg));
        }
        if (!std::isfinite(mag(term)))
            throw std::domain_error("theta series overflowed: |Im z| too large for nome " +
                                    std::to_string(q.p));
        quiet = (mag(term) <= theta_rel_stop * scale) ? quiet + 1 : 0;
        sum += term;
        scale = std::max(scale, mag(sum));
        if (quiet >= 2) return sum;
    }
    throw std::domain_error("theta series did not converge in 64 terms: |Im z| too large for nome " +
                            std::to_string(q.p));
}

}  // namespace detail

template <class Scalar>
Scalar theta(int j, const Scalar& z, const Nome& q) {
    return detail::theta_series(j, z, q, 0);
}

template <class Scalar>
Scalar theta_deriv(int j, const Scalar& z, const Nome& q, int order = 1) {
    if (order < 1)
        throw std::domain_error("theta_deriv expects order >= 1, got " + std::to_string(order));
    return detail::theta_series(j, z, q, order);
}

}  // namespace susy8v
