#include "wigbound/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "wigbound/error.hpp"
#include "wigbound/format.hpp"
#include "wigbound/region_json.hpp"

namespace wigbound {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::within: return "within";
    case Verdict::below_min: return "below_min";
    case Verdict::above_max: return "above_max";
    }
    return "?";
}

CheckReport check_quasiprobability(const WignerGrid& w, const Region& s, double noise_margin, const BoundsOptions& opts) {
    if (!(noise_margin >= 0.0)) throw Error("noise margin must be non-negative");
    CheckReport r;
    const Quasiprobability q = quasiprobability_checked(w, s);
    const SpectrumResult bounds = region_bounds(s, opts);
    r.q_value = q.value;
    r.truncated = q.truncated;
    r.lambda_min = bounds.lambda_min;
    r.lambda_max = bounds.lambda_max;
    r.method = bounds.method;
    r.area_bound = area(s) / std::numbers::pi;
    r.discretization_allowance = 2.0 * w.dq() * w.dp();
    r.noise_margin = noise_margin;
    r.margin = r.discretization_allowance + r.noise_margin;
    if (r.q_value < r.lambda_min - r.margin) {
        r.verdict = Verdict::below_min;
    } else if (r.q_value > r.lambda_max + r.margin) {
        r.verdict = Verdict::above_max;
    } else {
        r.verdict = Verdict::within;
    }
    return r;
}

nlohmann::json to_json(const CheckReport& r) {
    return {{"q_value", round9(r.q_value)},
            {"lambda_min", round9(r.lambda_min)},
            {"lambda_max", round9(r.lambda_max)},
            {"area_bound", round9(r.area_bound)},
            {"verdict", to_string(r.verdict)},
            {"margin", round9(r.margin)},
            {"discretization_allowance", round9(r.discretization_allowance)},
            {"noise_margin", round9(r.noise_margin)},
            {"method", to_string(r.method)},
            {"truncated", r.truncated}};
}

// ---------------------------------------------------------------- state specs

namespace {

struct StateTerm {
    double weight = 1.0;
    enum Kind { oscillator, coherent, csv } kind = oscillator;
    int n = 0;
    double q0 = 0.0, p0 = 0.0;
    std::string path;
};

StateTerm parse_term(std::string_view text) {
    const std::string s = trim(text);
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw Error("state spec '" + s + "': expected kind:args");
    const std::string kind = s.substr(0, colon);
    const std::string args = s.substr(colon + 1);
    StateTerm t;
    if (kind == "oscillator") {
        const double n = parse_double(args);
        if (n < 0 || n != std::floor(n) || n > 200) throw Error("state spec: oscillator index must be an integer in [0, 200]");
        t.kind = StateTerm::oscillator;
        t.n = static_cast<int>(n);
    } else if (kind == "coherent") {
        const auto parts = split(args, ',');
        if (parts.size() != 2) throw Error("state spec: coherent needs q0,p0");
        t.kind = StateTerm::coherent;
        t.q0 = parse_double(parts[0]);
        t.p0 = parse_double(parts[1]);
    } else if (kind == "csv") {
        if (args.empty()) throw Error("state spec: csv needs a path");
        t.kind = StateTerm::csv;
        t.path = args;
    } else {
        throw Error("state spec: unknown kind '" + kind + "'");
    }
    return t;
}

// "0.5*oscillator:0" or "0.5 oscillator:0"
StateTerm parse_weighted_term(std::string_view text) {
    const std::string s = trim(text);
    std::size_t cut = s.find('*');
    std::size_t skip = 1;
    if (cut == std::string::npos) {
        cut = s.find_first_of(" \t");
        if (cut == std::string::npos) throw Error("state spec: mixture term '" + s + "' needs a weight");
    }
    StateTerm t = parse_term(s.substr(cut + skip));
    t.weight = parse_double(s.substr(0, cut));
    return t;
}

WavefunctionGrid build(const StateTerm& t, const GridSpec& grid) {
    switch (t.kind) {
    case StateTerm::oscillator: return oscillator_state(t.n, grid);
    case StateTerm::coherent: return coherent_state(t.q0, t.p0, grid);
    case StateTerm::csv: {
        std::ifstream in(t.path);
        if (!in) throw Error("cannot open state file " + t.path);
        return normalize(read_state_csv(in));
    }
    }
    throw Error("state spec: unreachable");
}

} // namespace

Ensemble parse_state_spec(std::string_view spec, const GridSpec& base) {
    std::vector<StateTerm> terms;
    const std::string s = trim(spec);
    if (s.rfind("mix:", 0) == 0) {
        for (const std::string& part : split(std::string_view(s).substr(4), '+')) terms.push_back(parse_weighted_term(part));
    } else {
        terms.push_back(parse_term(s));
    }
    // widen the sampling grid on the same lattice until every coherent state fits
    GridSpec grid = base;
    for (const StateTerm& t : terms) {
        if (t.kind != StateTerm::coherent) continue;
        const double lo = t.q0 - 8.0;
        const double hi = t.q0 + 8.0;
        if (lo < grid.x0) {
            const auto extra = static_cast<std::size_t>(std::ceil((grid.x0 - lo) / grid.dx - 1e-9));
            grid.x0 -= static_cast<double>(extra) * grid.dx;
            grid.count += extra;
        }
        if (hi > grid.x_last()) {
            grid.count += static_cast<std::size_t>(std::ceil((hi - grid.x_last()) / grid.dx - 1e-9));
        }
    }
    std::vector<double> weights;
    std::vector<WavefunctionGrid> members;
    for (const StateTerm& t : terms) {
        weights.push_back(t.weight);
        members.push_back(build(t, grid));
    }
    return Ensemble(std::move(weights), std::move(members));
}

// ---------------------------------------------------------------- commands

namespace {

struct BoundsFlags {
    std::optional<std::size_t> grid_count;
    std::optional<double> window;
    std::optional<int> n_max;
    bool exact = false;
    bool numeric = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--grid-count", grid_count, "Nystrom grid points");
        cmd->add_option("--window", window, "Nystrom window half-width around the region's q-midpoint");
        cmd->add_option("--nmax", n_max, "oscillator index cutoff for closed-form envelopes");
        auto* ex = cmd->add_flag("--exact", exact, "require the closed-form spectrum");
        cmd->add_flag("--numeric", numeric, "force the Nystrom path")->excludes(ex);
    }

    BoundsOptions options() const {
        BoundsOptions o;
        o.grid_count = grid_count;
        o.window = window;
        o.n_max = n_max;
        if (exact) o.mode = BoundsMode::exact;
        if (numeric) o.mode = BoundsMode::numeric;
        return o;
    }
};

int cmd_bounds(const std::string& region_file, const BoundsFlags& flags, std::ostream& out, std::ostream& err) {
    const Region region = read_region_file(region_file);
    const SpectrumResult r = region_bounds(region, flags.options());
    out << "lambda_min=" << fmt9(r.lambda_min) << " lambda_max=" << fmt9(r.lambda_max)
        << " method=" << to_string(r.method) << '\n';
    if (r.method == Method::exact) {
        out << "n_min=" << *r.n_min << " n_max=" << *r.n_max;
        if (const auto radius = equivalent_disk_radius(region)) out << " equivalent_disk_radius=" << fmt9(*radius);
        out << '\n';
    } else {
        out << "residual=" << fmt9(r.residual) << '\n';
    }
    const double a = area(region);
    out << "area=" << fmt9(a) << " area_bound=" << fmt9(a / std::numbers::pi) << '\n';
    for (const std::string& w : r.warnings) err << "warning: " << w << '\n';
    return 0;
}

int cmd_curves(double a_min, double a_max, int steps, int n_max, std::ostream& out) {
    if (!(a_min >= 0.0) || !(a_max > a_min) || steps < 2 || n_max < 0)
        throw Error("curves: need 0 <= a_min < a_max, steps >= 2, nmax >= 0");
    out << "a";
    for (int n = 0; n <= n_max; ++n) out << "\tlambda_" << n;
    out << "\tlambda_min\tlambda_max\tn_min\n";
    for (int i = 0; i < steps; ++i) {
        const double a = (a_min * (steps - 1 - i) + a_max * i) / (steps - 1);
        out << fmt9(a);
        for (int n = 0; n <= n_max; ++n) out << '\t' << fmt9(disk_eigenvalue(n, a));
        const SpectrumResult env = disk_envelope(a);
        out << '\t' << fmt9(env.lambda_min) << '\t' << fmt9(env.lambda_max) << '\t' << *env.n_min << '\n';
    }
    return 0;
}

int cmd_check(const std::string& grid_file, const std::string& region_file, double noise_margin,
              const BoundsFlags& flags, std::ostream& out, std::ostream& err) {
    WignerGrid w;
    if (grid_file == "-") {
        w = read_wigner_csv(std::cin);
    } else {
        std::ifstream in(grid_file);
        if (!in) throw Error("cannot open grid file " + grid_file);
        w = read_wigner_csv(in);
    }
    const Region region = read_region_file(region_file);
    const CheckReport r = check_quasiprobability(w, region, noise_margin, flags.options());
    if (r.truncated) err << "warning: region extends past the grid; truncated where |W| < " << fmt9(kTailTolerance) << '\n';
    out << to_json(r).dump(2) << '\n';
    return r.verdict == Verdict::within ? 0 : 1;
}

struct WignerFlags {
    std::string spec;
    double qmin = -4.0, qmax = 4.0, dq = 0.05;
    double pmin = -4.0, pmax = 4.0, dp = 0.05;
    double xmin = -8.0, xmax = 8.0, dx = 0.01;
    std::string out = "-";
};

int cmd_wigner(const WignerFlags& f, std::ostream& out) {
    if (!(f.dx > 0.0) || !(f.xmax > f.xmin)) throw Error("wigner: need xmin < xmax and dx > 0");
    const auto count = static_cast<std::size_t>(std::floor((f.xmax - f.xmin) / f.dx + 0.5)) + 1;
    const Ensemble ens = parse_state_spec(f.spec, GridSpec{f.xmin, f.dx, count});
    const WignerGrid w = mixed_wigner(ens, arange(f.qmin, f.qmax, f.dq), arange(f.pmin, f.pmax, f.dp));
    if (f.out == "-") {
        write_wigner_csv(out, w);
    } else {
        std::ofstream file(f.out);
        if (!file) throw Error("cannot write " + f.out);
        write_wigner_csv(file, w);
        if (!file) throw Error("error writing " + f.out);
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Best-possible bounds on integrals of Wigner functions over phase-plane regions", "wigbound"};
    app.require_subcommand(1);

    std::string region_file;
    BoundsFlags bounds_flags;
    auto* bounds = app.add_subcommand("bounds", "extremal eigenvalues of a region's kernel");
    bounds->add_option("region", region_file, "region JSON file")->required();
    bounds_flags.attach(bounds);

    double a_min = 0.0, a_max = 3.0;
    int steps = 301, curve_nmax = 3;
    auto* curves = app.add_subcommand("curves", "disk eigenvalue curves and envelopes as TSV");
    curves->add_option("--a-min", a_min, "smallest radius");
    curves->add_option("--a-max", a_max, "largest radius");
    curves->add_option("--steps", steps, "number of radii");
    curves->add_option("--nmax", curve_nmax, "highest lambda_n column");

    std::string grid_file, check_region;
    double noise_margin = 0.0;
    BoundsFlags check_flags;
    auto* check = app.add_subcommand("check", "check a measured Wigner grid against the bounds");
    check->add_option("grid", grid_file, "Wigner grid CSV (q,p,w); '-' reads standard input")->required();
    check->add_option("region", check_region, "region JSON file")->required();
    check->add_option("--margin", noise_margin, "noise allowance added to the discretization margin");
    check_flags.attach(check);

    WignerFlags wf;
    auto* wigner = app.add_subcommand("wigner", "tabulate a Wigner function as CSV");
    wigner->add_option("state", wf.spec, "oscillator:N | coherent:Q0,P0 | csv:PATH | mix:W*SPEC+W*SPEC")->required();
    wigner->add_option("--qmin", wf.qmin);
    wigner->add_option("--qmax", wf.qmax);
    wigner->add_option("--dq", wf.dq);
    wigner->add_option("--pmin", wf.pmin);
    wigner->add_option("--pmax", wf.pmax);
    wigner->add_option("--dp", wf.dp);
    wigner->add_option("--xmin", wf.xmin, "wavefunction grid start");
    wigner->add_option("--xmax", wf.xmax, "wavefunction grid end");
    wigner->add_option("--dx", wf.dx, "wavefunction grid spacing");
    wigner->add_option("--out,-o", wf.out, "output file ('-' for standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*bounds) return cmd_bounds(region_file, bounds_flags, out, err);
        if (*curves) return cmd_curves(a_min, a_max, steps, curve_nmax, out);
        if (*check) return cmd_check(grid_file, check_region, noise_margin, check_flags, out, err);
        if (*wigner) return cmd_wigner(wf, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("wigbound");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace wigbound
