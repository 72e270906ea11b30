// Command-line front end: transmission sweeps, bound spectra, wave-function
// tables, and a self-validation run, all as deterministic batch jobs.
//
// Exit codes: 0 success, 1 failed validation check, 2 configuration error,
// 3 numerical failure.  A JSON config file (--config) may supply any long
// option under its flag name with '-' replaced by '_'; explicit flags win.
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsdirac/wsdirac.hpp"

namespace {

using Json = nlohmann::json;
using namespace wsdirac;

struct CliError {
    int code;
    std::string msg;
};

Json load_config(const std::string& path) {
    if (path.empty()) return Json::object();
    std::ifstream in(path);
    if (!in) throw CliError{2, "cannot open config file: " + path};
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw CliError{2, "config file " + path + ": " + e.what()};
    }
    if (!j.is_object())
        throw CliError{2, "config file " + path + " must hold a JSON object"};
    return j;
}

std::string flag_name(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}

// Three-layer option resolution: explicit flag beats config file beats the
// built-in default already sitting in v.  Returns whether flag or config
// supplied a value.
template <class T>
bool overlay(const CLI::Option* opt, const Json& cfg, const std::string& key,
             T& v) {
    if (opt->count() > 0) return true;
    if (!cfg.contains(key)) return false;
    try {
        v = cfg.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw CliError{2, "config key '" + key + "': " + e.what()};
    }
    return true;
}

template <class T>
void require(const CLI::Option* opt, const Json& cfg, const std::string& key,
             T& v) {
    if (!overlay(opt, cfg, key, v))
        throw CliError{2, "missing required option " + flag_name(key)};
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw CliError{2, "cannot open output file: " + out_path};
    f << text;
}

// Shared physical-parameter options.  W is optional for barrier-height
// sweeps, where it is the abscissa.
struct ParamOpts {
    double w = 0.0, a = 0.0, l = 0.0, m0 = 0.0;
    std::string mass = "pdm";
    std::string config, out;
    CLI::Option *ow, *oa, *ol, *om0, *omass;

    void attach(CLI::App* app) {
        ow = app->add_option("--w", w, "plateau height W");
        oa = app->add_option("--a", a, "wall steepness a");
        ol = app->add_option("--l", l, "half-width L");
        om0 = app->add_option("--m0", m0, "asymptotic mass m0");
        omass = app->add_option("--mass", mass,
                                "mass profile: pdm (closed form) or "
                                "constant (numeric oracle)");
        app->add_option("--config", config, "JSON config file (flags win)");
        app->add_option("--out", out, "output file (default stdout)");
    }

    PhysParams resolve(const Json& cfg, bool need_w) {
        if (need_w)
            require(ow, cfg, "w", w);
        else
            overlay(ow, cfg, "w", w);
        require(oa, cfg, "a", a);
        require(ol, cfg, "l", l);
        require(om0, cfg, "m0", m0);
        overlay(omass, cfg, "mass", mass);
        if (mass != "pdm" && mass != "constant")
            throw CliError{2, "--mass must be pdm or constant, got " + mass};
        PhysParams p{need_w ? w : std::max(m0, 1.0), a, l, m0};
        try {
            validate(p);
        } catch (const DomainError& e) {
            throw CliError{2, e.what()};
        }
        if (need_w) p.W = w;
        if (shape_warning(p))
            std::cerr << "note: a*L = " << p.a * p.L
                      << " < 5; closed-form matching degrades for thick "
                         "walls\n";
        return p;
    }
};

std::string param_provenance(const PhysParams& p, const std::string& mass,
                             bool with_w = true) {
    std::ostringstream os;
    os << "mass=" << mass;
    if (with_w) os << " W=" << format_g17(p.W);
    os << " a=" << format_g17(p.a) << " L=" << format_g17(p.L)
       << " m0=" << format_g17(p.m0);
    return os.str();
}

// Constant-mass counterpart of transmission_sweep: same grid and the same
// skip-and-record contract, points evaluated by the integrating oracle.
SweepResult oracle_transmission_sweep(const SweepConfig& cfg,
                                      const PhysParams& p) {
    SweepResult out;
    if (cfg.n <= 0) return out;
    const bool degenerate = cfg.n == 1 || cfg.to == cfg.from;
    const double step = degenerate ? 0.0 : (cfg.to - cfg.from) / (cfg.n - 1);
    const int n = degenerate ? 1 : cfg.n;
    for (int i = 0; i < n; ++i) {
        const double s = cfg.from + step * i;
        try {
            PhysParams q = p;
            double E = s;
            if (cfg.kind == SweepKind::barrier) {
                q.W = s;
                E = cfg.fixed_energy;
            }
            const ProfileSpec prof =
                make_profile(q, PotentialSign::barrier, MassMode::constant);
            const OracleScattering r = oracle_scattering(E, prof);
            out.rows.push_back({s, r.T, r.R, r.R + r.T - 1.0});
        } catch (const DomainError&) {
            out.skipped.push_back(s);
        }
    }
    return out;
}

void report_skipped(const SweepResult& res) {
    if (res.skipped.empty()) return;
    std::cerr << "note: skipped " << res.skipped.size()
              << " singular or sub-gap abscissae:";
    for (double s : res.skipped) std::cerr << ' ' << format_g17(s);
    std::cerr << '\n';
}

int cmd_transmission(ParamOpts& po, std::string& sweep, double& e,
                     double& from, double& to, int& n, CLI::Option* osweep,
                     CLI::Option* oe, CLI::Option* ofrom, CLI::Option* oto,
                     CLI::Option* on) {
    const Json cfg = load_config(po.config);
    overlay(osweep, cfg, "sweep", sweep);
    if (sweep != "e" && sweep != "w")
        throw CliError{2, "--sweep must be e (energy) or w (barrier height)"};
    const bool energy = sweep == "e";

    const PhysParams p = po.resolve(cfg, energy);
    SweepConfig sc;
    sc.kind = energy ? SweepKind::energy : SweepKind::barrier;
    if (energy) {
        require(ofrom, cfg, "from", from);
        require(oto, cfg, "to", to);
    } else {
        require(oe, cfg, "e", e);
        sc.fixed_energy = e;
        // Default barrier range: the window E - m0 < W < E + m0 in which the
        // constant-mass coefficient has its transmission zero.
        from = e - p.m0;
        to = e + p.m0;
        overlay(ofrom, cfg, "from", from);
        overlay(oto, cfg, "to", to);
    }
    overlay(on, cfg, "n", n);
    if (n < 0) throw CliError{2, "--n must be >= 0"};
    if (from > to) std::swap(from, to);
    sc.from = from;
    sc.to = to;
    sc.n = n;

    const SweepResult res = po.mass == "pdm" ? transmission_sweep(sc, p)
                                             : oracle_transmission_sweep(sc, p);
    std::ostringstream os;
    std::ostringstream pv;
    pv << "wsdirac transmission sweep=" << sweep << ' '
       << param_provenance(p, po.mass, energy);
    if (!energy) pv << " e=" << format_g17(e);
    pv << " from=" << format_g17(from) << " to=" << format_g17(to)
       << " n=" << n;
    write_sweep_csv(os, res, pv.str());
    emit(po.out, os.str());
    report_skipped(res);
    return 0;
}

Spectrum run_spectrum(const PhysParams& p, const std::string& mass,
                      const ScanSettings& scan) {
    if (mass == "pdm") return spectrum(p, scan);
    const ProfileSpec prof =
        make_profile(p, PotentialSign::well, MassMode::constant);
    return oracle_spectrum(prof, -p.m0, p.m0, scan);
}

const char* kind_name(EigenKind k) {
    return k == EigenKind::edge ? "edge" : "regular";
}

int cmd_spectrum(ParamOpts& po, bool& as_json, int& n_grid,
                 double& refine_tol, CLI::Option* ongrid, CLI::Option* otol) {
    const Json cfg = load_config(po.config);
    const PhysParams p = po.resolve(cfg, true);
    ScanSettings scan;
    overlay(ongrid, cfg, "n_grid", n_grid);
    overlay(otol, cfg, "refine_tol", refine_tol);
    if (!as_json && cfg.contains("json")) as_json = cfg.at("json").get<bool>();
    scan.n_grid = n_grid;
    scan.refine_tol = refine_tol;

    const Spectrum sp = run_spectrum(p, po.mass, scan);
    std::ostringstream pv;
    pv << "wsdirac spectrum " << param_provenance(p, po.mass)
       << " n_grid=" << scan.n_grid
       << " refine_tol=" << format_g17(scan.refine_tol);

    std::ostringstream os;
    if (as_json) {
        Json j;
        j["command"] = "spectrum";
        j["params"] = {{"W", p.W}, {"a", p.a}, {"L", p.L}, {"m0", p.m0}};
        j["mass"] = po.mass;
        j["eigenvalues"] = Json::array();
        for (const Eigenvalue& ev : sp.eigenvalues)
            j["eigenvalues"].push_back({{"E", ev.E},
                                        {"residual", ev.residual},
                                        {"kind", kind_name(ev.kind)}});
        j["grid_meta"] = {{"n_grid", sp.meta.n_grid},
                          {"refine_tol", sp.meta.refine_tol},
                          {"E_lo", sp.meta.E_lo},
                          {"E_hi", sp.meta.E_hi},
                          {"re_roots", sp.meta.re_roots},
                          {"im_roots", sp.meta.im_roots},
                          {"unpaired", sp.meta.unpaired},
                          {"skipped_nodes", sp.meta.skipped_nodes}};
        os << j.dump(2) << '\n';
    } else {
        write_spectrum_csv(os, sp, pv.str());
    }
    emit(po.out, os.str());
    return 0;
}

int cmd_wavefunction(ParamOpts& po, std::string& kind, double& e, int& index,
                     double& x_from, double& x_to, int& n, CLI::Option* okind,
                     CLI::Option* oe, CLI::Option* oindex, CLI::Option* oxfrom,
                     CLI::Option* oxto, CLI::Option* on) {
    const Json cfg = load_config(po.config);
    overlay(okind, cfg, "kind", kind);
    if (kind != "bound" && kind != "scatter")
        throw CliError{2, "--kind must be bound or scatter"};
    const PhysParams p = po.resolve(cfg, true);
    const bool has_e = overlay(oe, cfg, "e", e);
    const bool has_index = overlay(oindex, cfg, "index", index);
    overlay(on, cfg, "n", n);
    if (n < 3) throw CliError{2, "--n must be >= 3"};

    double E = e;
    if (kind == "bound") {
        if (has_e && has_index)
            throw CliError{2, "--e and --index are mutually exclusive"};
        // Snap to the computed spectrum so rounded energies from a previous
        // spectrum run are accepted; anything farther than 1e-3 is rejected.
        const Spectrum sp = run_spectrum(p, po.mass, ScanSettings{});
        if (has_e) {
            const Eigenvalue* best = nullptr;
            for (const Eigenvalue& ev : sp.eigenvalues)
                if (!best || std::abs(ev.E - e) < std::abs(best->E - e))
                    best = &ev;
            if (!best || std::abs(best->E - e) > 1e-3)
                throw NotAnEigenvalue(e, "no eigenvalue within 1e-3 of the "
                                         "requested energy");
            E = best->E;
        } else {
            const int i = has_index ? index : 0;
            if (i < 0 || i >= int(sp.eigenvalues.size()))
                throw CliError{2, "--index " + std::to_string(i) +
                                      " out of range; spectrum has " +
                                      std::to_string(sp.eigenvalues.size()) +
                                      " states"};
            E = sp.eigenvalues[i].E;
        }
    } else if (!has_e) {
        throw CliError{2, "scatter mode needs --e"};
    }

    // Default span: wide enough that bound tails are negligible and
    // scattering rows reach the free region.  The oracle integrates inside
    // its own box; keep default tables within it.
    double span = p.L + 10.0 / p.a;
    if (kind == "bound" && std::abs(E) < p.m0)
        span = default_norm_grid(E, p).x_max;
    if (po.mass == "constant") span = std::min(span, p.L + 30.0 / p.a);
    if (!overlay(oxfrom, cfg, "x_from", x_from)) x_from = -span;
    if (!overlay(oxto, cfg, "x_to", x_to)) x_to = span;
    if (!(x_from < x_to)) throw CliError{2, "--x-from must be below --x-to"};

    std::vector<SpinorSample> rows;
    if (kind == "bound" && po.mass == "pdm") {
        BoundWave w(E, p);
        normalize_bound(w);
        rows.reserve(n);
        for (int i = 0; i < n; ++i)
            rows.push_back(w.sample(x_from + (x_to - x_from) * i / (n - 1)));
    } else if (kind == "bound") {
        const ProfileSpec prof =
            make_profile(p, PotentialSign::well, MassMode::constant);
        rows = oracle_bound_table(E, prof, x_from, x_to, n);
    } else if (po.mass == "pdm") {
        const ScatteringWave w(E, p);
        rows.reserve(n);
        for (int i = 0; i < n; ++i)
            rows.push_back(w.sample(x_from + (x_to - x_from) * i / (n - 1)));
    } else {
        const ProfileSpec prof =
            make_profile(p, PotentialSign::barrier, MassMode::constant);
        rows = oracle_scattering_table(E, prof, x_from, x_to, n);
    }

    std::ostringstream pv;
    pv << "wsdirac wavefunction kind=" << kind << ' '
       << param_provenance(p, po.mass) << " E=" << format_g17(E)
       << " x_from=" << format_g17(x_from) << " x_to=" << format_g17(x_to)
       << " n=" << n;
    std::ostringstream os;
    write_wavefunction_csv(os, rows, pv.str());
    emit(po.out, os.str());
    return 0;
}

struct CheckResult {
    std::string name;
    bool pass;
    double max_dev;
    double tol;
};

double rel_jump(Complex lo, Complex hi, double amp) {
    return std::abs(lo - hi) / amp;
}

int cmd_validate(ParamOpts& po, bool& as_json, double& tol_unitarity,
                 double& tol_oracle, CLI::Option* otu, CLI::Option* oto2) {
    const Json cfg = load_config(po.config);
    overlay(otu, cfg, "tol_unitarity", tol_unitarity);
    overlay(oto2, cfg, "tol_oracle", tol_oracle);
    if (!as_json && cfg.contains("json")) as_json = cfg.at("json").get<bool>();
    if (!(tol_unitarity > 0.0) || !(tol_oracle > 0.0))
        throw CliError{2, "tolerances must be positive"};

    const PhysParams well{2.0, 10.0, 2.0, 1.0};
    const PhysParams fig_low{1.2, 5.0, 10.0, 0.4};
    const PhysParams fig_high{4.2, 5.0, 10.0, 0.4};
    std::vector<CheckResult> checks;

    { // Closed-form spectrum against the reference values.
        const double ref[] = {-0.633251, -0.00806737, 0.605869};
        const Spectrum sp = spectrum(well);
        double dev = 0.0;
        bool ok = sp.eigenvalues.size() == 3;
        for (std::size_t i = 0; ok && i < 3; ++i) {
            ok = sp.eigenvalues[i].kind == EigenKind::regular;
            dev = std::max(dev, std::abs(sp.eigenvalues[i].E - ref[i]));
        }
        checks.push_back({"pdm_spectrum", ok && dev < 1e-4, dev, 1e-4});
    }
    { // Shooting oracle against the constant-mass reference values.
        const double ref[] = {-1.0, -0.759003, -0.273555, 0.271144, 0.788942};
        ScanSettings scan;
        scan.n_grid = 1200;
        const Spectrum sp = oracle_spectrum(
            make_profile(well, PotentialSign::well, MassMode::constant), -1.0,
            1.0, scan);
        double dev = 0.0;
        bool ok = sp.eigenvalues.size() == 5 &&
                  sp.eigenvalues.front().kind == EigenKind::edge;
        for (std::size_t i = 0; ok && i < 5; ++i)
            dev = std::max(dev, std::abs(sp.eigenvalues[i].E - ref[i]));
        checks.push_back({"constant_spectrum", ok && dev < 1e-3, dev, 1e-3});
    }
    { // Unitarity over both scattering parameter sets.
        double dev = 0.0;
        bool ok = true;
        for (const PhysParams& p : {fig_low, fig_high}) {
            const KleinRange kr = klein_range(p);
            SweepConfig sc;
            const double margin = 1e-3 * (kr.hi - kr.lo);
            sc.from = kr.lo + margin;
            sc.to = kr.hi - margin;
            sc.n = 200;
            const SweepResult res = transmission_sweep(sc, p);
            ok = ok && res.rows.size() == 200;
            for (const SweepRow& r : res.rows)
                dev = std::max(dev, std::abs(r.unitarity_residual));
        }
        checks.push_back(
            {"unitarity", ok && dev < tol_unitarity, dev, tol_unitarity});
    }
    { // Closed form against the integrating oracle, 50 energies per set.
        double dev = 0.0;
        for (const PhysParams& p : {fig_low, fig_high}) {
            const ProfileSpec prof =
                make_profile(p, PotentialSign::barrier, MassMode::pdm);
            const KleinRange kr = klein_range(p);
            for (int i = 1; i <= 50; ++i) {
                const double E = kr.lo + (kr.hi - kr.lo) * i / 51.0;
                dev = std::max(dev, std::abs(transmission(E, p) -
                                             oracle_scattering(E, prof).T));
            }
        }
        checks.push_back({"oracle_transmission", dev < tol_oracle, dev,
                          tol_oracle});
    }
    { // Matching fidelity at the center for every computed state.
        double dev = 0.0;
        const Spectrum sp = spectrum(well);
        for (const Eigenvalue& ev : sp.eigenvalues) {
            BoundWave w(ev.E, well);
            normalize_bound(w);
            const SpinorSample lo = w.sample(-1e-12);
            const SpinorSample hi = w.sample(1e-12);
            const double amp = std::sqrt(std::max(lo.density, hi.density));
            dev = std::max({dev, rel_jump(lo.u1, hi.u1, amp),
                            rel_jump(lo.u2, hi.u2, amp)});
        }
        const ScatteringWave w(2.0, fig_high);
        const SpinorSample lo = w.sample(-1e-12);
        const SpinorSample hi = w.sample(1e-12);
        const double amp = std::sqrt(std::max(lo.density, hi.density));
        dev = std::max({dev, rel_jump(lo.u1, hi.u1, amp),
                        rel_jump(lo.u2, hi.u2, amp)});
        checks.push_back({"matching", dev < 1e-7, dev, 1e-7});
    }

    bool all = true;
    for (const CheckResult& c : checks) all = all && c.pass;

    std::ostringstream os;
    if (as_json) {
        Json j;
        j["command"] = "validate";
        j["all_pass"] = all;
        j["checks"] = Json::array();
        for (const CheckResult& c : checks)
            j["checks"].push_back({{"name", c.name},
                                   {"pass", c.pass},
                                   {"max_dev", c.max_dev},
                                   {"tol", c.tol}});
        os << j.dump(2) << '\n';
    } else {
        for (const CheckResult& c : checks)
            os << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL")
               << " (max_dev=" << format_g17(c.max_dev)
               << ", tol=" << format_g17(c.tol) << ")\n";
        os << (all ? "all checks passed\n" : "validation FAILED\n");
    }
    emit(po.out, os.str());
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D Dirac scattering and bound states in a Woods-Saxon "
                 "potential with position-dependent mass (natural units, "
                 "hbar = c = 1)"};
    app.require_subcommand(1);
    int rc = 0;

    auto* t = app.add_subcommand(
        "transmission", "sweep T and R over energy or barrier height");
    ParamOpts tp;
    tp.attach(t);
    std::string t_sweep = "e";
    double t_e = 0.0, t_from = 0.0, t_to = 0.0;
    int t_n = 200;
    auto* ot_sweep = t->add_option("--sweep", t_sweep,
                                   "abscissa: e (energy) or w (barrier "
                                   "height)");
    auto* ot_e = t->add_option("--e", t_e, "fixed energy for --sweep w");
    auto* ot_from = t->add_option("--from", t_from, "sweep start");
    auto* ot_to = t->add_option("--to", t_to, "sweep end");
    auto* ot_n = t->add_option("--n", t_n, "number of grid points");
    t->callback([&] {
        rc = cmd_transmission(tp, t_sweep, t_e, t_from, t_to, t_n, ot_sweep,
                              ot_e, ot_from, ot_to, ot_n);
    });

    auto* s = app.add_subcommand("spectrum",
                                 "bound-state eigenvalues of the well");
    ParamOpts sp;
    sp.attach(s);
    bool s_json = false;
    int s_ngrid = 2000;
    double s_tol = 1e-10;
    s->add_flag("--json", s_json, "emit JSON instead of CSV");
    auto* os_ngrid = s->add_option("--n-grid", s_ngrid, "scan grid size");
    auto* os_tol = s->add_option("--refine-tol", s_tol,
                                 "bisection refinement tolerance");
    s->callback(
        [&] { rc = cmd_spectrum(sp, s_json, s_ngrid, s_tol, os_ngrid, os_tol); });

    auto* w = app.add_subcommand("wavefunction",
                                 "sampled spinor wave function table");
    ParamOpts wp;
    wp.attach(w);
    std::string w_kind = "bound";
    double w_e = 0.0, w_xfrom = 0.0, w_xto = 0.0;
    int w_index = 0, w_n = 501;
    auto* ow_kind = w->add_option("--kind", w_kind, "bound or scatter");
    auto* ow_e = w->add_option("--e", w_e, "energy (bound: snapped to the "
                                           "nearest eigenvalue)");
    auto* ow_index = w->add_option("--index", w_index,
                                   "bound-state index into the spectrum");
    auto* ow_xfrom = w->add_option("--x-from", w_xfrom, "table start");
    auto* ow_xto = w->add_option("--x-to", w_xto, "table end");
    auto* ow_n = w->add_option("--n", w_n, "number of sample points");
    w->callback([&] {
        rc = cmd_wavefunction(wp, w_kind, w_e, w_index, w_xfrom, w_xto, w_n,
                              ow_kind, ow_e, ow_index, ow_xfrom, ow_xto, ow_n);
    });

    auto* v = app.add_subcommand(
        "validate", "run the analytic-vs-oracle and unitarity self-checks");
    ParamOpts vp;
    vp.attach(v);
    bool v_json = false;
    double v_tu = 1e-8, v_to = 1e-6;
    v->add_flag("--json", v_json, "emit a JSON report");
    auto* ov_tu = v->add_option("--tol-unitarity", v_tu,
                                "bound on |R + T - 1|");
    auto* ov_to = v->add_option("--tol-oracle", v_to,
                                "bound on |T_closed_form - T_oracle|");
    v->callback(
        [&] { rc = cmd_validate(vp, v_json, v_tu, v_to, ov_tu, ov_to); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.msg << '\n';
        return e.code;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return rc;
}
