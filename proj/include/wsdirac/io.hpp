// Deterministic text output: CSV tables with 17 significant digits (exact
// round-trip for doubles), LF line endings, and a leading '#' provenance
// comment so files are self-describing.
#ifndef WSDIRAC_IO_HPP
#define WSDIRAC_IO_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "wsdirac/boundstates.hpp"
#include "wsdirac/scattering.hpp"
#include "wsdirac/wavefunction.hpp"

namespace wsdirac {

/// Shortest exact decimal form of v (printf %.17g).
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& sweep,
                            const std::string& provenance) {
    os << "# " << provenance << "\n";
    os << "abscissa,T,R,unitarity_residual\n";
    for (const SweepRow& r : sweep.rows)
        os << format_g17(r.abscissa) << ',' << format_g17(r.T) << ','
           << format_g17(r.R) << ',' << format_g17(r.unitarity_residual)
           << "\n";
}

inline void write_spectrum_csv(std::ostream& os, const Spectrum& sp,
                               const std::string& provenance) {
    os << "# " << provenance << "\n";
    os << "E,residual,kind\n";
    for (const Eigenvalue& ev : sp.eigenvalues)
        os << format_g17(ev.E) << ',' << format_g17(ev.residual) << ','
           << (ev.kind == EigenKind::edge ? "edge" : "regular") << "\n";
}

inline void write_wavefunction_csv(std::ostream& os,
                                   const std::vector<SpinorSample>& rows,
                                   const std::string& provenance) {
    os << "# " << provenance << "\n";
    os << "x,re_u1,im_u1,re_u2,im_u2,density,current\n";
    for (const SpinorSample& s : rows)
        os << format_g17(s.x) << ',' << format_g17(s.u1.real()) << ','
           << format_g17(s.u1.imag()) << ',' << format_g17(s.u2.real()) << ','
           << format_g17(s.u2.imag()) << ',' << format_g17(s.density) << ','
           << format_g17(s.current) << "\n";
}

} // namespace wsdirac

#endif
