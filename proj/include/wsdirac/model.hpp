// Problem definition: the smoothed double-step (Woods-Saxon) potential, the
// position-dependent mass profile tied to it, and the characteristic
// exponents mu, nu, lambda / epsilon, nu, lambda that parameterize the
// hypergeometric solutions.  Natural units hbar = c = 1 throughout.
#ifndef WSDIRAC_MODEL_HPP
#define WSDIRAC_MODEL_HPP

#include <cmath>
#include <sstream>
#include <string>

#include "wsdirac/errors.hpp"
#include "wsdirac/specfun.hpp"

namespace wsdirac {

/// Physical parameters of the profile.
///   W  : height (barrier) or depth (well) of the potential
///   a  : steepness of the walls, 1/a is the skin thickness
///   L  : half-width; the walls sit at x = -L and x = +L
///   m0 : asymptotic mass
struct PhysParams {
    double W;
    double a;
    double L;
    double m0;
};

/// Throws DomainError unless a > 0, L > 0, m0 > 0.
inline void validate(const PhysParams& p) {
    if (!(p.a > 0.0) || !(p.L > 0.0) || !(p.m0 > 0.0)) {
        std::ostringstream os;
        os << "PhysParams requires a, L, m0 > 0; got a = " << p.a
           << ", L = " << p.L << ", m0 = " << p.m0;
        throw DomainError(os.str());
    }
}

/// True when the flat-top assumption a*L >> 1 is marginal (a*L < 5).  The
/// closed-form matching drops O(e^{-aL}) terms, so results degrade smoothly
/// as a*L shrinks; callers should surface this to users but not abort.
inline bool shape_warning(const PhysParams& p) { return p.a * p.L < 5.0; }

/// Sign of the potential: barrier (+W plateau) for scattering, well (-W) for
/// bound states.  The mass profile is the same in both problems.
enum class PotentialSign { barrier, well };

/// Woods-Saxon double step.  Continuous at x = 0 by construction; the
/// x <= 0 / x > 0 split uses the same value at 0 from either branch.
inline double potential(double x, const PhysParams& p,
                        PotentialSign sign = PotentialSign::barrier) {
    const double v = (x <= 0.0)
        ? p.W / (std::exp(-p.a * (x + p.L)) + 1.0)
        : p.W / (std::exp(p.a * (x - p.L)) + 1.0);
    return sign == PotentialSign::barrier ? v : -v;
}

/// Position-dependent mass profile: m(x) = m0 - (m0/W) V_barrier(x), written
/// in its explicit exponential form so it does not divide by W.  Dips from
/// m0 far away to m0 e^{-aL}/(1+e^{-aL}) at the center; always positive.
inline double mass(double x, const PhysParams& p) {
    if (x <= 0.0) {
        const double u = std::exp(-p.a * (x + p.L));
        return p.m0 * u / (u + 1.0);
    }
    const double u = std::exp(p.a * (x - p.L));
    return p.m0 * u / (u + 1.0);
}

/// Residual of the algebraic constraint that makes the left-region equation
/// hypergeometric: with y = -e^{-a(x+L)} the left variable, the profile must
/// satisfy m(x(y)) = -m0 y / (1 - y).  Returns the mismatch normalized by
/// m0; it vanishes (to rounding) for y <= -e^{-aL}, i.e. x <= 0, which is
/// exactly the left region where that solution form is used.
inline double mass_constraint_residual(double y, const PhysParams& p) {
    if (!(y < 0.0))
        throw DomainError("left-region variable must be negative, got y = " +
                          std::to_string(y));
    const double x = -p.L - std::log(-y) / p.a;
    return (mass(x, p) + p.m0 * y / (1.0 - y)) / p.m0;
}

/// Half-width of the band around the kinematic singularities E = W and
/// |E| = m0 inside which closed-form coefficients are refused.
inline double singular_band(const PhysParams& p) {
    return 1e-9 * std::max(1.0, std::abs(p.W));
}

namespace detail {

// gamma_ratio with PoleError translated to SingularEnergy naming the
// coefficient, since a pole in a connection coefficient always traces back
// to a kinematic degeneracy of the energy.
inline Complex coef_ratio(const char* name, double E,
                          std::initializer_list<Complex> num,
                          std::initializer_list<Complex> den) {
    try {
        return gamma_ratio(num, den);
    } catch (const PoleError& e) {
        std::ostringstream os;
        os << "coefficient " << name << " degenerates at E = " << E << ": "
           << e.what();
        throw SingularEnergy(E, os.str());
    }
}

inline void check_scattering_energy(double E, const PhysParams& p) {
    const double band = singular_band(p);
    if (std::abs(E - p.W) <= band) {
        std::ostringstream os;
        os << "E = " << E << " coincides with the plateau height W = " << p.W
           << " (mu = 0)";
        throw SingularEnergy(E, os.str());
    }
    if (std::abs(std::abs(E) - p.m0) <= band) {
        std::ostringstream os;
        os << "E = " << E << " sits on the mass shell |E| = m0 = " << p.m0
           << " (nu = 0)";
        throw SingularEnergy(E, os.str());
    }
}

} // namespace detail

/// Characteristic exponents of the scattering problem (barrier).
///   mu = -i(E-W)/a, nu = i k / a with k = +sqrt(E^2 - m0^2),
///   lambda = i sqrt(W^2 - m0^2)/a.
/// k and nu are stored as complex so the sub-gap continuation |E| < m0
/// (k imaginary, nu real negative) is representable; the propagating case
/// has purely imaginary mu and nu, constructed with exact zero real parts.
struct ExponentSet {
    Complex mu;
    Complex nu;
    Complex lambda;
    Complex k;
};

inline ExponentSet scattering_exponents(double E, const PhysParams& p) {
    validate(p);
    detail::check_scattering_energy(E, p);
    ExponentSet ex;
    ex.mu = Complex(0.0, -(E - p.W) / p.a);
    const double disc = E * E - p.m0 * p.m0;
    if (disc > 0.0) {
        const double k = std::sqrt(disc);
        ex.k = Complex(k, 0.0);
        ex.nu = Complex(0.0, k / p.a);
    } else {
        const double kap = std::sqrt(-disc);
        ex.k = Complex(0.0, kap);
        ex.nu = Complex(-kap / p.a, 0.0);
    }
    const double wd = p.W * p.W - p.m0 * p.m0;
    ex.lambda = wd >= 0.0 ? Complex(0.0, std::sqrt(wd) / p.a)
                          : Complex(-std::sqrt(-wd) / p.a, 0.0);
    return ex;
}

/// Characteristic exponents of the bound problem (well of depth W):
///   epsilon = -i(E+W)/a, nu = sqrt(m0^2 - E^2)/a, same lambda.
/// nu is real positive for |E| < m0; for -W < E < -m0 (possible when
/// W > m0) it continues to i sqrt(E^2 - m0^2)/a.
struct BoundExponentSet {
    Complex epsilon;
    Complex nu;
    Complex lambda;
    double kappa; ///< sqrt(m0^2 - E^2) when real, else 0
};

inline BoundExponentSet bound_exponents(double E, const PhysParams& p) {
    validate(p);
    const double band = singular_band(p);
    // classify the degenerate boundaries before the open-interval check so
    // E = m0 or E = -W report what actually degenerates there
    if (std::abs(std::abs(E) - p.m0) <= band) {
        std::ostringstream os;
        os << "E = " << E << " sits on the mass shell |E| = m0 (nu = 0)";
        throw SingularEnergy(E, os.str());
    }
    if (std::abs(E + p.W) <= band) {
        std::ostringstream os;
        os << "E = " << E << " sits at the well bottom -W (epsilon = 0)";
        throw SingularEnergy(E, os.str());
    }
    if (E <= -p.W || E >= p.m0) {
        std::ostringstream os;
        os << "bound energy must lie in (-W, m0) = (" << -p.W << ", " << p.m0
           << "); got E = " << E;
        throw DomainError(os.str());
    }
    BoundExponentSet ex;
    ex.epsilon = Complex(0.0, -(E + p.W) / p.a);
    const double disc = p.m0 * p.m0 - E * E;
    if (disc > 0.0) {
        ex.kappa = std::sqrt(disc);
        ex.nu = Complex(ex.kappa / p.a, 0.0);
    } else {
        ex.kappa = 0.0;
        ex.nu = Complex(0.0, std::sqrt(-disc) / p.a);
    }
    const double wd = p.W * p.W - p.m0 * p.m0;
    ex.lambda = wd >= 0.0 ? Complex(0.0, std::sqrt(wd) / p.a)
                          : Complex(-std::sqrt(-wd) / p.a, 0.0);
    return ex;
}

/// Klein (supercritical) energy window (m0, W - m0), nonempty iff W > 2 m0.
struct KleinRange {
    double lo, hi;
    bool valid;
};

inline KleinRange klein_range(const PhysParams& p) {
    KleinRange r{p.m0, p.W - p.m0, p.W > 2.0 * p.m0};
    return r;
}

} // namespace wsdirac

#endif
