// Closed-form scattering off the smoothed barrier: connection coefficients
// of the hypergeometric solutions, the constants fixed by matching left and
// right regions across the flat top, and the transmission / reflection
// probabilities derived from them.
#ifndef WSDIRAC_SCATTERING_HPP
#define WSDIRAC_SCATTERING_HPP

#include <cmath>
#include <sstream>
#include <vector>

#include "wsdirac/errors.hpp"
#include "wsdirac/model.hpp"
#include "wsdirac/specfun.hpp"

namespace wsdirac {

/// Coefficients of the plane-wave asymptotics of the two left-region basis
/// solutions (A,B for the y^mu solution, C,D for y^{1-mu}) and of the
/// x -> 1-x continuation of the right-region solution (M,N).  All are
/// balanced ratios of four Gamma values.
struct AsymptoticCoefficients {
    Complex A, B, C, D, M, N;
};

inline AsymptoticCoefficients asymptotic_coefficients(const ExponentSet& ex,
                                                      double E) {
    const Complex mu = ex.mu, nu = ex.nu, la = ex.lambda;
    AsymptoticCoefficients c;
    c.A = detail::coef_ratio("A", E, {2.0 * mu, 2.0 * nu},
                             {mu + nu - la, mu + nu + la});
    c.B = detail::coef_ratio("B", E, {2.0 * mu, -2.0 * nu},
                             {mu - nu - la, mu - nu + la});
    c.C = detail::coef_ratio("C", E, {2.0 - 2.0 * mu, 2.0 * nu},
                             {1.0 - mu + nu - la, 1.0 - mu + nu + la});
    c.D = detail::coef_ratio("D", E, {2.0 - 2.0 * mu, -2.0 * nu},
                             {1.0 - mu - nu - la, 1.0 - mu - nu + la});
    c.M = detail::coef_ratio("M", E, {1.0 - 2.0 * nu, 1.0 + 2.0 * mu},
                             {1.0 + mu - nu + la, 1.0 + mu - nu - la});
    c.N = detail::coef_ratio("N", E, {1.0 - 2.0 * nu, -1.0 - 2.0 * mu},
                             {-mu - nu - la, -mu - nu + la});
    return c;
}

/// Constants produced by matching the left-region solution
/// D1 y^mu (...) + D2 y^{1-mu} (...) onto the right-region transmitted wave
/// (unit amplitude, d1 = 1) across the plateau, plus the resulting incident
/// and reflected plane-wave amplitudes H and G at x -> -inf.
struct MatchConstants {
    Complex D1, D2;
    Complex G, H;
};

inline MatchConstants match_constants(const AsymptoticCoefficients& c,
                                      const ExponentSet& ex,
                                      const PhysParams& p) {
    const Complex mu = ex.mu;
    // mu is purely imaginary for real E, so i*pi*mu and 2*mu*a*L below are
    // purely real / imaginary respectively and both exponentials have exact
    // unit-magnitude structure; no overflow is possible.
    const Complex ipimu = Complex(0.0, kPi) * mu;
    const Complex eplus = std::exp(ipimu);   // e^{+i pi mu}
    const Complex eminus = std::exp(-ipimu); // e^{-i pi mu}
    const Complex e2mu = std::exp(2.0 * mu * p.a * p.L);
    const double eaL = std::exp(-p.a * p.L);

    MatchConstants m;
    const Complex one_m_2mu = 1.0 - 2.0 * mu;
    m.D1 = eminus / one_m_2mu * (c.M * one_m_2mu * e2mu + 2.0 * c.N * eaL);
    m.D2 = eplus / one_m_2mu * (c.N * (2.0 * mu + 1.0) / e2mu);
    m.G = m.D1 * c.A * eplus - m.D2 * c.C * eminus;
    m.H = m.D1 * c.B * eplus - m.D2 * c.D * eminus;
    return m;
}

/// Everything the closed form yields for one scattering energy.
struct ScatteringResult {
    double E;
    ExponentSet exponents;
    AsymptoticCoefficients coefficients;
    MatchConstants constants;
    double T;
    double R;
};

/// Full closed-form evaluation at energy E.  Requires |E| > m0 (propagating
/// asymptotics); throws DomainError otherwise and SingularEnergy inside the
/// guard bands around E = W, |E| = m0.
inline ScatteringResult scattering_result(double E, const PhysParams& p) {
    validate(p);
    if (std::abs(E) <= p.m0) {
        std::ostringstream os;
        os << "scattering requires |E| > m0; E = " << E << ", m0 = " << p.m0;
        throw DomainError(os.str());
    }
    ScatteringResult r;
    r.E = E;
    r.exponents = scattering_exponents(E, p);
    r.coefficients = asymptotic_coefficients(r.exponents, E);
    r.constants = match_constants(r.coefficients, r.exponents, p);
    const double k = r.exponents.k.real();
    const double h2 = std::norm(r.constants.H);
    const double g2 = std::norm(r.constants.G);
    r.T = 1.0 / h2;
    r.R = (E + k) / (E - k) * g2 / h2;
    return r;
}

inline double transmission(double E, const PhysParams& p) {
    return scattering_result(E, p).T;
}

inline double reflection(double E, const PhysParams& p) {
    return scattering_result(E, p).R;
}

/// One row of a sweep table.
struct SweepRow {
    double abscissa; ///< E for energy sweeps, W for barrier sweeps
    double T;
    double R;
    double unitarity_residual; ///< R + T - 1
};

enum class SweepKind { energy, barrier };

struct SweepConfig {
    SweepKind kind = SweepKind::energy;
    double from = 0.0;
    double to = 0.0;
    int n = 0;
    double fixed_energy = 0.0; ///< used by barrier sweeps
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<double> skipped; ///< abscissae refused (singular or sub-gap)
};

/// Uniform sweep of T, R over energy (fixed profile) or barrier height
/// (fixed energy).  Points that fall in a singular band or outside the
/// propagating domain are skipped and recorded, not fatal.  n == 0 or an
/// empty range produces an empty table.
inline SweepResult transmission_sweep(const SweepConfig& cfg,
                                      const PhysParams& p) {
    validate(p);
    SweepResult out;
    if (cfg.n <= 0) return out;
    const bool degenerate = cfg.n == 1 || cfg.to == cfg.from;
    const double step = degenerate ? 0.0 : (cfg.to - cfg.from) / (cfg.n - 1);
    const int n = degenerate ? 1 : cfg.n;
    for (int i = 0; i < n; ++i) {
        const double s = cfg.from + step * i;
        try {
            ScatteringResult r;
            if (cfg.kind == SweepKind::energy) {
                r = scattering_result(s, p);
            } else {
                PhysParams q = p;
                q.W = s;
                r = scattering_result(cfg.fixed_energy, q);
            }
            out.rows.push_back({s, r.T, r.R, r.R + r.T - 1.0});
        } catch (const SingularEnergy&) {
            out.skipped.push_back(s);
        } catch (const DomainError&) {
            out.skipped.push_back(s);
        }
    }
    return out;
}

} // namespace wsdirac

#endif
