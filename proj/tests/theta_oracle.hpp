#pragma once

#include <cmath>
#include <complex>

// Test-only reference for the four nome series, deliberately independent of
// the library implementation: long double arithmetic, Kahan-compensated
// accumulation, a fixed 192-term cap, and explicit per-order trig formulas
// instead of a shared sign-cycle. Used to freeze expected values.
namespace theta_oracle {

using C = std::complex<long double>;

inline C jtheta(int j, C z, long double q, int order = 0) {
    const long double lnq = std::log(q);
    long double sum_re = 0, comp_re = 0, sum_im = 0, comp_im = 0;
    auto accumulate = [&](C t) {
        long double yr = t.real() - comp_re;
        long double tr = sum_re + yr;
        comp_re = (tr - sum_re) - yr;
        sum_re = tr;
        long double yi = t.imag() - comp_im;
        long double ti = sum_im + yi;
        comp_im = (ti - sum_im) - yi;
        sum_im = ti;
    };
    for (int n = 0; n <= 192; ++n) {
        long double k, amp;
        if (j == 1 || j == 2) {
            k = 2.0L * n + 1.0L;
            amp = 2.0L * std::exp(lnq * (n + 0.5L) * (n + 0.5L));
            if (j == 1 && n % 2 == 1) amp = -amp;
        } else {
            k = 2.0L * n;
            amp = (n == 0) ? 1.0L : 2.0L * std::exp(lnq * (long double)n * (long double)n);
            if (j == 4 && n % 2 == 1) amp = -amp;
        }
        if (amp == 0.0L) break;  // underflow; all later terms vanish too
        for (int m = 0; m < order; ++m) amp *= k;
        C trig;
        if (j == 1) {
            switch (order % 4) {
                case 0: trig = std::sin(k * z); break;
                case 1: trig = std::cos(k * z); break;
                case 2: trig = -std::sin(k * z); break;
                default: trig = -std::cos(k * z); break;
            }
        } else {
            if (order > 0 && n == 0 && (j == 3 || j == 4)) continue;
            switch (order % 4) {
                case 0: trig = std::cos(k * z); break;
                case 1: trig = -std::sin(k * z); break;
                case 2: trig = -std::cos(k * z); break;
                default: trig = std::sin(k * z); break;
            }
        }
        accumulate(amp * trig);
    }
    return {sum_re, sum_im};
}

inline std::complex<double> value(int j, std::complex<double> z, double q, int order = 0) {
    C r = jtheta(j, C(z.real(), z.imag()), (long double)q, order);
    return {(double)r.real(), (double)r.imag()};
}

inline double real_value(int j, double z, double q, int order = 0) {
    return value(j, {z, 0.0}, q, order).real();
}

}  // namespace theta_oracle
