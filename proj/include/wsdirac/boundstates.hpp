// Bound states of the smoothed square well: the quantization function F(E)
// built from connection coefficients, a scan-bracket-bisect spectrum solver
// on its real and imaginary parts, and the amplitude ratio linking the left
// and right eigenfunction branches.
#ifndef WSDIRAC_BOUNDSTATES_HPP
#define WSDIRAC_BOUNDSTATES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "wsdirac/errors.hpp"
#include "wsdirac/model.hpp"
#include "wsdirac/specfun.hpp"

namespace wsdirac {

/// Connection coefficients of the bound-state solutions about x = 0:
/// S and T continue the right-region solution, U and V the left one.
struct EigenCoefficients {
    Complex S, T, U, V;
};

inline EigenCoefficients eigen_coefficients(const BoundExponentSet& ex,
                                            double E) {
    const Complex ep = ex.epsilon, nu = ex.nu, la = ex.lambda;
    const Complex c0 = 1.0 + 2.0 * nu;
    EigenCoefficients c;
    c.S = detail::coef_ratio("S", E, {c0, 1.0 - 2.0 * ep},
                             {1.0 - ep + nu - la, 1.0 - ep + nu + la});
    c.T = detail::coef_ratio("T", E, {c0, -1.0 + 2.0 * ep},
                             {ep + nu + la, ep + nu - la});
    c.U = detail::coef_ratio("U", E, {c0, 1.0 + 2.0 * ep},
                             {1.0 + ep + nu + la, 1.0 + ep + nu - la});
    c.V = detail::coef_ratio("V", E, {c0, -1.0 - 2.0 * ep},
                             {-ep + nu + la, -ep + nu - la});
    return c;
}

/// Quantization function.  F(E) = S V / (T U) - e^{4 eps a L} (2eps-1)/(2eps+1);
/// eigenvalues are its complex zeros on the real E axis, so the solver tracks
/// Re F and Im F separately.  The Gamma ratio is evaluated as one balanced
/// log-space sum (Gamma(1+2nu) cancels), and 4*eps*a*L is purely imaginary
/// for real E so the exponential stays on the unit circle.
inline Complex f_eigen(double E, const PhysParams& p) {
    const BoundExponentSet ex = bound_exponents(E, p);
    const Complex ep = ex.epsilon, nu = ex.nu, la = ex.lambda;
    const Complex ratio = detail::coef_ratio(
        "SV/(TU)", E,
        {1.0 - 2.0 * ep, -1.0 - 2.0 * ep, 1.0 + ep + nu + la,
         1.0 + ep + nu - la, ep + nu + la, ep + nu - la},
        {1.0 - ep + nu - la, 1.0 - ep + nu + la, -ep + nu + la,
         -ep + nu - la, -1.0 + 2.0 * ep, 1.0 + 2.0 * ep});
    const Complex phase = std::exp(4.0 * ep * p.a * p.L);
    return ratio - phase * (2.0 * ep - 1.0) / (2.0 * ep + 1.0);
}

enum class EigenKind { regular, edge };

struct Eigenvalue {
    double E;
    double residual; ///< |F(E)| at the reported root
    EigenKind kind;
};

struct GridMeta {
    int n_grid = 0;
    double refine_tol = 0.0;
    double E_lo = 0.0, E_hi = 0.0;
    int re_roots = 0, im_roots = 0; ///< component roots found before pairing
    int unpaired = 0;               ///< component roots with no partner
    int skipped_nodes = 0;          ///< grid nodes refused by the closed form
};

struct Spectrum {
    std::vector<Eigenvalue> eigenvalues;
    GridMeta meta;
};

struct ScanSettings {
    int n_grid = 2000;
    double refine_tol = 1e-10;
};

namespace detail {

// Bisect f for a sign change inside [lo, hi] down to width tol.
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi, double flo, double tol) {
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Roots of one real component sampled on a grid (values may carry NaN for
// nodes the closed form refused; those cells are skipped).
inline std::vector<double> component_roots(
    const std::function<double(double)>& f, const std::vector<double>& grid,
    const std::vector<double>& vals, double tol) {
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double f0 = vals[i], f1 = vals[i + 1];
        if (std::isnan(f0) || std::isnan(f1)) continue;
        if (f0 == 0.0) {
            roots.push_back(grid[i]);
            continue;
        }
        if ((f0 < 0.0) != (f1 < 0.0))
            roots.push_back(bisect(f, grid[i], grid[i + 1], f0, tol));
    }
    return roots;
}

} // namespace detail

/// Scan (-W + delta, m0 - delta) for eigenvalues.  Re F and Im F are
/// bracketed independently and refined by bisection; only locations where
/// both components vanish together (within 10x the refinement tolerance)
/// are reported as eigenvalues.  Lone component roots are counted in the
/// metadata and dropped -- F is complex, so a single component crossing
/// zero is not an eigenvalue.
inline Spectrum spectrum(const PhysParams& p,
                         const ScanSettings& scan = ScanSettings{}) {
    validate(p);
    if (scan.n_grid < 500)
        throw DomainError("spectrum scan needs n_grid >= 500, got " +
                          std::to_string(scan.n_grid));
    if (!(scan.refine_tol > 0.0))
        throw DomainError("spectrum refine_tol must be positive");

    const double delta = 1e-6 * std::max(p.W, p.m0);
    const double lo = -p.W + delta, hi = p.m0 - delta;
    Spectrum out;
    out.meta.n_grid = scan.n_grid;
    out.meta.refine_tol = scan.refine_tol;
    out.meta.E_lo = lo;
    out.meta.E_hi = hi;
    if (!(lo < hi)) return out;

    std::vector<double> grid(scan.n_grid), re(scan.n_grid), im(scan.n_grid);
    const double step = (hi - lo) / (scan.n_grid - 1);
    for (int i = 0; i < scan.n_grid; ++i) {
        grid[i] = lo + step * i;
        try {
            const Complex f = f_eigen(grid[i], p);
            re[i] = f.real();
            im[i] = f.imag();
        } catch (const Error&) {
            re[i] = im[i] = std::numeric_limits<double>::quiet_NaN();
            ++out.meta.skipped_nodes;
        }
    }

    // Bisection refines each component to refine_tol/4 so that the paired
    // midpoint is stable to refine_tol under grid changes.
    const double bis_tol = 0.25 * scan.refine_tol;
    auto fre = [&](double E) { return f_eigen(E, p).real(); };
    auto fim = [&](double E) { return f_eigen(E, p).imag(); };
    std::vector<double> rre = detail::component_roots(fre, grid, re, bis_tol);
    std::vector<double> rim = detail::component_roots(fim, grid, im, bis_tol);
    out.meta.re_roots = int(rre.size());
    out.meta.im_roots = int(rim.size());

    const double pair_tol = 10.0 * scan.refine_tol;
    std::vector<bool> used(rim.size(), false);
    for (double r : rre) {
        int best = -1;
        double bestd = pair_tol;
        for (std::size_t j = 0; j < rim.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(r - rim[j]);
            if (d <= bestd) {
                bestd = d;
                best = int(j);
            }
        }
        if (best < 0) {
            ++out.meta.unpaired;
            continue;
        }
        used[best] = true;
        Eigenvalue ev;
        ev.E = 0.5 * (r + rim[best]);
        ev.residual = std::abs(f_eigen(ev.E, p));
        ev.kind = std::abs(ev.E + p.m0) < 1e-6 ? EigenKind::edge
                                               : EigenKind::regular;
        out.eigenvalues.push_back(ev);
    }
    for (bool u : used)
        if (!u) ++out.meta.unpaired;

    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
              [](const Eigenvalue& x, const Eigenvalue& y) { return x.E < y.E; });
    return out;
}

/// Amplitude ratio D'/A' between the right and left branches of the
/// eigenfunction.  Both printed forms are evaluated -- their equality is
/// precisely F(E) = 0 -- and the mean is returned, halving the residual
/// mismatch.  Throws NotAnEigenvalue if |F(E)| >= 1e-8.
inline Complex coefficient_ratio(double E, const PhysParams& p) {
    const Complex f = f_eigen(E, p);
    if (std::abs(f) >= 1e-8) {
        std::ostringstream os;
        os << "E = " << E << " is not an eigenvalue: |F(E)| = " << std::abs(f);
        throw NotAnEigenvalue(E, os.str());
    }
    const BoundExponentSet ex = bound_exponents(E, p);
    const EigenCoefficients c = eigen_coefficients(ex, E);
    const Complex ep = ex.epsilon;
    const Complex e2 = std::exp(2.0 * ep * p.a * p.L);
    const Complex r1 =
        c.T / c.V * (2.0 * ep - 1.0) / (2.0 * ep + 1.0) * e2;
    const Complex r2 = c.S / c.U / e2;
    return 0.5 * (r1 + r2);
}

} // namespace wsdirac

#endif
