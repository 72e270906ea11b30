// Complex special functions: log-gamma, gamma ratios, and the Gauss
// hypergeometric function 2F1(a,b;c;x) for complex parameters and real
// argument x < 1.  These are the only transcendental kernels the closed-form
// solver needs, so they are written for that regime and tested against
// independent routes rather than trying to be a general-purpose library.
#ifndef WSDIRAC_SPECFUN_HPP
#define WSDIRAC_SPECFUN_HPP

#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "wsdirac/errors.hpp"

namespace wsdirac {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

namespace detail {

// Lanczos approximation, g = 7, 9 terms.  Good to ~1e-14 relative over the
// right half plane; the reflection formula covers the rest.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczosCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline std::string describe(const char* head, Complex z) {
    std::ostringstream os;
    os << head << " at z = (" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

// True if z lies within tol (component-wise) of a non-positive integer.
inline bool near_nonpositive_integer(Complex z, double tol) {
    if (std::abs(z.imag()) > tol) return false;
    const double n = std::round(z.real());
    return n <= 0.5 && std::abs(z.real() - n) <= tol;
}

// True if z lies within tol of any integer.
inline bool near_integer(Complex z, double tol) {
    return std::abs(z.imag()) <= tol &&
           std::abs(z.real() - std::round(z.real())) <= tol;
}

// log(sin(pi z)) up to an irrelevant multiple of 2*pi*i.  Reduces the real
// part first so large |Re z| costs no precision, and switches to an
// exponential extraction for large |Im z| so nothing overflows.
inline Complex log_sin_pi(Complex z) {
    const double n = std::round(z.real());
    Complex w = z - n;                       // |Re w| <= 1/2
    Complex ls;
    if (std::abs(w.imag()) < 8.0) {
        ls = std::log(std::sin(kPi * w));
    } else {
        // sin(pi w) = -+ e^{-+ i pi w} (1 - e^{+- 2 i pi w}) / (2 i)
        const Complex ipw(-kPi * w.imag(), kPi * w.real()); // i*pi*w
        if (w.imag() > 0.0) {
            ls = -ipw + std::log(1.0 - std::exp(2.0 * ipw))
                 - std::log(2.0) + Complex(0.0, 0.5 * kPi);
        } else {
            ls = ipw + std::log(1.0 - std::exp(-2.0 * ipw))
                 - std::log(2.0) - Complex(0.0, 0.5 * kPi);
        }
    }
    if (std::fmod(std::abs(n), 2.0) == 1.0) ls += Complex(0.0, kPi); // (-1)^n
    return ls;
}

} // namespace detail

/// log Gamma(z) for complex z.  The branch is continuous on the right half
/// plane; through the reflection formula the imaginary part is only defined
/// modulo 2*pi*i, which is all downstream users (exp of sums) need.
/// Throws PoleError within 1e-12 of a non-positive integer.
inline Complex log_gamma(Complex z) {
    if (detail::near_nonpositive_integer(z, 1e-12))
        throw PoleError(detail::describe("log_gamma pole", z));
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(kPi) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    }
    const Complex zm1 = z - 1.0;
    Complex acc = detail::kLanczosCoef[0];
    for (int i = 1; i < 9; ++i) acc += detail::kLanczosCoef[i] / (zm1 + double(i));
    const Complex t = zm1 + detail::kLanczosG + 0.5;
    return 0.91893853320467274178 // log(sqrt(2 pi))
           + (zm1 + 0.5) * std::log(t) - t + std::log(acc);
}

/// Gamma(z) via exp(log_gamma).  Overflows long before log_gamma does, so the
/// ratio form below is preferred inside the solver.
inline Complex gamma(Complex z) {
    const Complex lg = log_gamma(z);
    if (lg.real() > 709.0)
        throw OverflowError(detail::describe("gamma overflow", z));
    return std::exp(lg);
}

/// prod Gamma(num_i) / prod Gamma(den_j), evaluated entirely in log space so
/// that balanced ratios of individually huge factors stay representable.
/// Throws PoleError if any argument sits on a pole, OverflowError if the
/// final ratio itself cannot be represented.
inline Complex gamma_ratio(std::initializer_list<Complex> num,
                           std::initializer_list<Complex> den) {
    Complex s = 0.0;
    for (Complex z : num) s += log_gamma(z);
    for (Complex z : den) s -= log_gamma(z);
    if (s.real() > 709.0)
        throw OverflowError("gamma_ratio overflow: log magnitude " +
                            std::to_string(s.real()));
    return std::exp(s);
}

namespace detail {

inline constexpr int kSeriesMaxTerms = 20000;

// Raw power series sum_k (a)_k (b)_k / ((c)_k k!) x^k.  Caller guarantees a
// regime where it converges (|x| <= ~0.55 in practice).
inline Complex hyp2f1_series(Complex a, Complex b, Complex c, double x) {
    Complex term = 1.0, sum = 1.0;
    for (int k = 0; k < kSeriesMaxTerms; ++k) {
        const double kk = k;
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * x;
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) return sum;
    }
    throw ConvergenceError("hyp2f1 series did not converge at x = " +
                           std::to_string(x));
}

// Connection formula about x = 1, valid for 0 < x < 1 when c-a-b is not an
// integer:
//   F(a,b;c;x) = G1 * F(a,b;a+b-c+1;1-x)
//              + G2 * (1-x)^{c-a-b} * F(c-a,c-b;c-a-b+1;1-x)
// Takes om = 1-x directly: callers can supply it to full precision even when
// x itself is the rounded result of a transformation.
// As gamma_ratio, but a pole in a denominator Gamma makes the whole ratio an
// exact zero (1/Gamma(-n) = 0) instead of an error.  Numerator poles still
// throw.
inline Complex gamma_ratio_or_zero(std::initializer_list<Complex> num,
                                   std::initializer_list<Complex> den) {
    for (Complex z : den)
        if (near_nonpositive_integer(z, 1e-12)) return 0.0;
    return gamma_ratio(num, den);
}

inline Complex hyp2f1_continuation_om(Complex a, Complex b, Complex c,
                                      double om) {
    const Complex cab = c - a - b;
    if (near_integer(cab, 1e-10))
        throw DegenerateError(describe("hyp2f1 connection degenerate, c-a-b", cab));
    const Complex g1 = gamma_ratio_or_zero({c, cab}, {c - a, c - b});
    const Complex g2 = gamma_ratio_or_zero({c, -cab}, {a, b});
    Complex sum = 0.0;
    if (g1 != 0.0) sum += g1 * hyp2f1_series(a, b, 1.0 - cab, om);
    if (g2 != 0.0)
        sum += g2 * std::exp(cab * std::log(om)) *
               hyp2f1_series(c - a, c - b, 1.0 + cab, om);
    return sum;
}

inline Complex hyp2f1_continuation(Complex a, Complex b, Complex c, double x) {
    return hyp2f1_continuation_om(a, b, c, 1.0 - x);
}

// n >= 0 if v is exactly the non-positive integer -n (2F1 terminates), else -1.
inline int terminating_order(Complex v) {
    if (v.imag() != 0.0) return -1;
    const double r = std::round(v.real());
    if (r > 0.0 || v.real() != r) return -1;
    return int(-r);
}

// Finite sum for polynomial cases; valid for every x.
inline Complex hyp2f1_poly(Complex a, Complex b, Complex c, double x, int n) {
    Complex term = 1.0, sum = 1.0;
    for (int k = 0; k < n; ++k) {
        const double kk = k;
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * x;
        sum += term;
    }
    return sum;
}

} // namespace detail

/// Gauss hypergeometric function with the complement om = 1-x supplied by
/// the caller.  The logistic region maps saturate at x = 1 in doubles long
/// before their tails decay, while 1-x has its own exact closed form; this
/// entry point lets such callers keep full precision (x as stored may even
/// round to exactly 1 as long as om > 0).
/// Strategy: direct series for |x| <= 0.5, the Pfaff transformation
/// x -> x/(x-1) for x < -0.5 (this also covers x -> -inf), and the x -> 1-x
/// connection formula for 0.5 < x < 1.  Relative accuracy ~1e-12 in the
/// parameter regimes the solver uses; the contract is 1e-10.
inline Complex hyp2f1_om(Complex a, Complex b, Complex c, double x, double om) {
    if (!(om > 0.0) || !std::isfinite(x))
        throw DomainError("hyp2f1 requires x < 1, got 1-x = " +
                          std::to_string(om));
    if (detail::near_nonpositive_integer(c, 1e-12))
        throw PoleError(detail::describe("hyp2f1 pole in c", c));
    if (x == 0.0) return 1.0;
    {
        // terminating series: exact finite sum regardless of x
        const int na = detail::terminating_order(a);
        const int nb = detail::terminating_order(b);
        if (na >= 0 || nb >= 0) {
            const int n = na < 0 ? nb : (nb < 0 ? na : std::min(na, nb));
            return detail::hyp2f1_poly(a, b, c, x, n);
        }
    }
    if (x < -0.5) {
        // Pfaff: (1-x)^{-a} F(a, c-b; c; u) with u = x/(x-1) in (1/3, 1).
        // 1-u = 1/om is formed from the exact complement so the continuation
        // sees it to full precision even when u rounds to within eps of 1.
        const double u = -x / om;
        const Complex pref = std::exp(-a * std::log(om));
        const int nb = detail::terminating_order(c - b);
        if (nb >= 0) return pref * detail::hyp2f1_poly(a, c - b, c, u, nb);
        if (u <= 0.5) return pref * detail::hyp2f1_series(a, c - b, c, u);
        return pref * detail::hyp2f1_continuation_om(a, c - b, c, 1.0 / om);
    }
    if (x <= 0.5) return detail::hyp2f1_series(a, b, c, x);
    return detail::hyp2f1_continuation_om(a, b, c, om);
}

/// Gauss hypergeometric function for complex parameters, real x < 1.
inline Complex hyp2f1(Complex a, Complex b, Complex c, double x) {
    if (!(x < 1.0))
        throw DomainError("hyp2f1 requires x < 1, got x = " + std::to_string(x));
    return hyp2f1_om(a, b, c, x, 1.0 - x);
}

/// d/dx 2F1(a,b;c;x) = (a b / c) 2F1(a+1,b+1;c+1;x).  Analytic, never finite
/// differences.
inline Complex hyp2f1_derivative_om(Complex a, Complex b, Complex c, double x,
                                    double om) {
    return a * b / c * hyp2f1_om(a + 1.0, b + 1.0, c + 1.0, x, om);
}

inline Complex hyp2f1_derivative(Complex a, Complex b, Complex c, double x) {
    return a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x);
}

} // namespace wsdirac

#endif
