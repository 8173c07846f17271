#include "symkit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "symkit/error.hpp"
#include "symkit/examples.hpp"
#include "symkit/io.hpp"
#include "symkit/kernels.hpp"
#include "symkit/multiplier.hpp"
#include "symkit/plancherel.hpp"
#include "symkit/rootdata.hpp"

namespace symkit::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Divergence of an integral the caller asked to be finite, with its trace.
struct NotFinite : DivergenceError {
    NotFinite(const std::string& what, Json trace) : DivergenceError(what), trace(std::move(trace)) {}
    Json trace;
};

// ---- config file -----------------------------------------------------------

const std::map<std::string, std::set<std::string>>& config_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"space", {"family", "n", "d", "normalization", "descriptor"}},
        {"quadrature",
         {"abs_tol", "rel_tol", "max_intervals", "max_depth", "chamber_cutoff", "log_window", "split_t"}},
        {"output", {"format", "output"}},
        {"parameters", {}},  // any flag of the subcommand; checked by the parser
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::set<std::string> seen;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        const std::string where = path + ":" + std::to_string(lineno);
        if (t.front() == '[') {
            if (t.back() != ']') throw UsageError(where + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (!config_keys().count(section)) throw UsageError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw UsageError(where + ": expected key = value");
        if (section.empty()) throw UsageError(where + ": key outside a section");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const auto& allowed = config_keys().at(section);
        if (section != "parameters" && !allowed.count(key))
            throw UsageError(where + ": unknown key '" + key + "' in [" + section + "]");
        if (key == "config") throw UsageError(where + ": config files cannot include other config files");
        if (!seen.insert(key).second) throw UsageError(where + ": duplicate key '" + key + "'");
        out.emplace_back(key, value);
    }
    return out;
}

std::string flag_of(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}

bool flag_given(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Splices config values in after the subcommand name; flags on the command line win.
std::vector<std::string> apply_config(std::vector<std::string> args, const std::set<std::string>& commands) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a path");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (path.empty()) return args;
    const auto cmd = std::find_if(args.begin(), args.end(), [&](const std::string& a) { return commands.count(a); });
    if (cmd == args.end()) throw UsageError("--config needs a subcommand");
    std::vector<std::string> extra;
    for (const auto& [key, value] : read_config(path)) {
        const std::string flag = flag_of(key);
        if (flag_given(args, flag)) continue;
        extra.push_back(flag + "=" + value);
    }
    args.insert(cmd + 1, extra.begin(), extra.end());
    return args;
}

// ---- shared flags ----------------------------------------------------------

struct SpaceFlags {
    std::string family, normalization = "killing", descriptor;
    std::optional<int> n, d;

    void add(CLI::App* app) {
        app->add_option("--family", family, "sl_n_r | hyperbolic | complex_sl_n");
        app->add_option("--n", n, "n for sl_n_r and complex_sl_n");
        app->add_option("--d", d, "dimension of real hyperbolic space");
        app->add_option("--normalization", normalization, "killing | unit_curvature")->capture_default_str();
        app->add_option("--descriptor", descriptor, "JSON space descriptor (instead of --family)");
    }

    bool given() const { return !family.empty() || !descriptor.empty(); }

    SymmetricSpace build() const {
        if (!descriptor.empty()) {
            if (!family.empty() || n || d) throw UsageError("--descriptor excludes --family, --n and --d");
            std::ifstream in(descriptor);
            if (!in) throw UsageError("cannot read descriptor " + descriptor);
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw UsageError("descriptor is not valid JSON: " + std::string(e.what()));
            }
            return SymmetricSpace::from_json(doc);
        }
        if (family.empty()) throw UsageError("--family (or --descriptor) is required");
        const Family fam = parse_family(family);
        const Normalization norm = parse_normalization(normalization);
        if (fam == Family::hyperbolic) {
            if (n) throw UsageError("--n does not apply to hyperbolic; use --d");
            if (!d) throw UsageError("--d is required for family hyperbolic");
            return SymmetricSpace::build(fam, *d, norm);
        }
        if (fam == Family::custom) throw UsageError("custom spaces are read from --descriptor");
        if (d) throw UsageError("--d applies to hyperbolic only; use --n");
        if (!n) throw UsageError("--n is required for family " + family);
        return SymmetricSpace::build(fam, *n, norm);
    }
};

struct QuadFlags {
    QuadratureSpec q;
    void add(CLI::App* app) {
        app->add_option("--abs-tol", q.abs_tol, "absolute quadrature tolerance")->capture_default_str();
        app->add_option("--rel-tol", q.rel_tol, "relative quadrature tolerance")->capture_default_str();
        app->add_option("--max-intervals", q.max_intervals, "bisection budget")->capture_default_str();
        app->add_option("--max-depth", q.max_depth, "refinement levels")->capture_default_str();
        app->add_option("--chamber-cutoff", q.chamber_cutoff, "chamber radius bound")->capture_default_str();
        app->add_option("--log-window", q.log_window, "subordination window (e-folds)")->capture_default_str();
        app->add_option("--split-t", q.split_t, "subordination split point")->capture_default_str();
    }
    Json to_json() const {
        Json j;
        j["abs_tol"] = q.abs_tol;
        j["rel_tol"] = q.rel_tol;
        j["max_intervals"] = q.max_intervals;
        j["max_depth"] = q.max_depth;
        j["chamber_cutoff"] = q.chamber_cutoff;
        j["log_window"] = q.log_window;
        j["split_t"] = q.split_t;
        return j;
    }
};

struct OutFlags {
    std::string format = "json", output;
    void add(CLI::App* app) {
        app->add_option("--format", format, "json | csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
        app->add_option("--output", output, "output file (relative paths use $" + std::string(kOutputDirEnv) + ")");
    }
};

struct Result {
    Json json;
    std::optional<std::pair<std::vector<std::string>, std::vector<std::vector<double>>>> csv;
};

void merge(Json& into, const Json& from) {
    for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

Json context(const std::string& command, const QuadFlags* quad, const SymmetricSpace* space) {
    Json c;
    c["command"] = command;
    c["normalization"] = space ? to_string(space->normalization()) : "not_applicable";
    if (space) c["space"] = space->label();
    c["quadrature"] = quad ? quad->to_json() : Json("not_applicable");
    return c;
}

std::vector<double> default_radii(std::vector<double> radii) {
    if (!radii.empty()) return radii;
    for (int k = 0; k <= 10; ++k) radii.push_back(0.5 * k);
    return radii;
}

// ---- subcommands -----------------------------------------------------------

Result cmd_structure(const SpaceFlags& sf) {
    const SymmetricSpace space = sf.build();
    Result r;
    Json& j = r.json;
    j["space"] = space.to_json();
    j["label"] = space.label();
    j["rank"] = space.rank();
    j["dim_n"] = space.dim_n();
    j["dim_GK"] = space.dim_gk();
    j["dims"] = {space.rank(), space.dim_n(), space.dim_gk()};
    std::vector<int> mult;
    for (const auto& root : space.roots()) mult.push_back(root.multiplicity);
    j["multiplicities"] = mult;
    j["indivisible_count"] = space.root_system().indivisible_count();
    j["rho"] = std::vector<double>(space.rho().data(), space.rho().data() + space.rho().size());
    j["rho_norm_sq"] = space.rho_norm_sq();
    j["metric_scale"] = space.metric_scale();
    j["context"] = context("structure", nullptr, &space);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < space.roots().size(); ++i) {
        const auto& root = space.roots()[i];
        rows.push_back({static_cast<double>(i), static_cast<double>(root.multiplicity), root.indivisible ? 1.0 : 0.0,
                        space.dual_inner(root.vector, root.vector)});
    }
    r.csv = {{"root", "multiplicity", "indivisible", "norm_sq"}, rows};
    return r;
}

Result cmd_spectrum(const SpaceFlags& sf, const QuadFlags& qf, const std::vector<double>& radii_in,
                    const std::string& mode_name, std::optional<double> norm_s, bool require_finite) {
    const SymmetricSpace space = sf.build();
    qf.q.validate();
    const DensityMode mode = parse_density_mode(mode_name);
    const auto radii = default_radii(radii_in);
    Result r;
    Json& j = r.json;
    j["mode"] = to_string(resolve_mode(space, mode));
    Json rows = Json::array();
    std::vector<std::vector<double>> csv;
    for (const auto& row : density_table(space, radii, mode)) {
        rows.push_back({{"lambda_norm", row.lambda_norm}, {"density", row.density}});
        csv.push_back({row.lambda_norm, row.density});
    }
    j["density"] = rows;
    if (norm_s) {
        const SpectralNorm n = casimir_inverse_l2_norm(space, *norm_s, qf.q, mode);
        Json e;
        e["s"] = *norm_s;
        e["finite"] = n.finite();
        if (n.finite()) e["value"] = n.value();
        e["diagnostics"] = n.integral.diagnostics();
        if (require_finite && !n.finite())
            throw NotFinite("||Omega^{-s}||_2 diverges for s = " + io::format_number(*norm_s), e);
        j["casimir_inverse_l2"] = e;
    }
    j["context"] = context("spectrum", &qf, &space);
    r.csv = {{"lambda_norm", "density"}, csv};
    return r;
}

Result cmd_kernel(const SpaceFlags& sf, const QuadFlags& qf, const std::string& type, std::optional<double> t,
                  std::optional<double> s, const std::vector<double>& radii, const std::string& heat_mode) {
    const SymmetricSpace space = sf.build();
    qf.q.validate();
    if (radii.empty()) throw UsageError("--radii is required");
    Result r;
    Json& j = r.json;
    j["type"] = type;
    std::vector<KernelRow> rows;
    if (type == "heat") {
        if (!t) throw UsageError("--t is required for --type heat");
        if (s) throw UsageError("--s applies to --type bgr");
        const HeatMode mode = parse_heat_mode(heat_mode);
        j["t"] = *t;
        j["mode"] = to_string(mode);
        rows = tabulate_heat(space, *t, radii, mode, qf.q);
    } else {
        if (!s) throw UsageError("--s is required for --type bgr");
        if (t) throw UsageError("--t applies to --type heat");
        j["s"] = *s;
        rows = tabulate_bgr(space, *s, radii, qf.q);
    }
    Json arr = Json::array();
    std::vector<std::vector<double>> csv;
    for (const auto& row : rows) {
        arr.push_back({{"r", row.r}, {"value", row.value}});
        csv.push_back({row.r, row.value});
    }
    j["rows"] = arr;
    j["context"] = context("kernel", &qf, &space);
    r.csv = {{"r", "value"}, csv};
    return r;
}

Result cmd_lq_check(const SpaceFlags& sf, const QuadFlags& qf, std::optional<int> dim, double s, double q, bool verify,
                    const std::string& lq_mode, bool require_finite) {
    std::optional<SymmetricSpace> space;
    if (verify || sf.given()) {
        space = sf.build();
        if (dim && *dim != space->dim_gk())
            throw UsageError("--dim disagrees with the space (dim = " + std::to_string(space->dim_gk()) + ")");
        dim = space->dim_gk();
    }
    if (!dim) throw UsageError("--dim (or a space) is required");
    Result r;
    Json& j = r.json;
    j["admissible"] = lq_admissible(*dim, s, q);
    j["dim"] = *dim;
    j["s"] = s;
    j["q"] = q;
    j["threshold"] = lq_threshold(*dim, s);
    if (verify) {
        qf.q.validate();
        const LqNorm n = lq_norm_numeric(*space, s, q, qf.q, parse_lq_mode(lq_mode));
        if (require_finite && !n.finite())
            throw NotFinite("kappa_s is not in L^q", n.to_json());
        j["numeric"] = n.to_json();
        j["numeric_finite"] = n.finite();
    }
    j["context"] = context("lq-check", verify ? &qf : nullptr, space ? &*space : nullptr);
    r.csv = {{"dim", "s", "q", "admissible"}, {{static_cast<double>(*dim), s, q, lq_admissible(*dim, s, q) ? 1.0 : 0.0}}};
    return r;
}

Result cmd_region(int dim, double sg, const std::vector<double>& s_list, std::optional<double> p, bool plan) {
    if (s_list.empty()) throw UsageError("--s is required");
    if (plan && !p) throw UsageError("--plan needs --p");
    Result r;
    Json& j = r.json;
    j["dim"] = dim;
    j["sg"] = sg;
    std::vector<std::vector<double>> csv;
    Json entries = Json::array();
    for (double s : s_list) {
        check_sobolev_exponents(dim, sg, s);
        const PInterval iv = p_interval(sg, s);
        Json e;
        e["s"] = s;
        e["p_min"] = iv.p_min;
        e["p_max"] = iv.p_max;
        if (p) e["admissible"] = admissible(dim, sg, s, *p);
        if (plan) e["plan"] = interpolation_plan(dim, sg, s, *p).to_json();
        entries.push_back(e);
        csv.push_back({s, iv.p_min, iv.p_max});
    }
    if (entries.size() == 1) {
        for (auto it = entries[0].begin(); it != entries[0].end(); ++it) j[it.key()] = it.value();
    } else {
        j["region"] = entries;
    }
    if (p) j["p"] = *p;
    j["context"] = context("region", nullptr, nullptr);
    r.csv = {{"s", "p_min", "p_max"}, csv};
    return r;
}

Result cmd_constant(const SpaceFlags& sf, const QuadFlags& qf, const std::string& kind, double sg,
                    std::optional<double> s, std::optional<double> p, double sobolev_norm, const UserConstants& user) {
    const SymmetricSpace space = sf.build();
    qf.q.validate();
    Result r;
    if (kind == "l2") {
        if (s || p) throw UsageError("--kind l2 takes --sg and --sobolev-norm only");
        r.json["kind"] = "l2";
        r.json["sg"] = sg;
        r.json["sobolev_norm"] = sobolev_norm;
        r.json["bound"] = l2_sobolev_bound(space, sg, sobolev_norm, qf.q);
    } else {
        if (!s || !p) throw UsageError("--kind cgsp needs --s and --p");
        const ConstantBreakdown b = cgsp_estimate(space, sg, *s, *p, user, sobolev_norm, qf.q);
        r.json["kind"] = "cgsp";
        merge(r.json, b.to_json());
        std::vector<std::vector<double>> rows;
        for (const auto& f : b.factors) rows.push_back({f.base, f.exponent, f.value});
        r.csv = {{"base", "exponent", "value"}, rows};
    }
    r.json["context"] = context("constant", &qf, &space);
    return r;
}

struct ExampleFlags {
    std::string report;
    double margin = 1e-6;
    std::optional<double> sg, decay_rate, threshold_factor;
    double r0 = 0.5, inner_value = 1.0;
    std::vector<double> ladder = {20.0, 30.0, 40.0};
    std::vector<double> radii;
    std::string convention = "full_dimension";
    bool require_finite = false;
};

double resolve_rate(const ExampleFlags& ef, const SymmetricSpace& space, SgConvention conv) {
    if (ef.decay_rate && ef.threshold_factor) throw UsageError("give --decay-rate or --threshold-factor, not both");
    if (ef.decay_rate) return *ef.decay_rate;
    if (!ef.threshold_factor) throw UsageError("--decay-rate or --threshold-factor is required");
    if (!ef.sg) throw UsageError("--threshold-factor needs --sg");
    return *ef.threshold_factor * decay_threshold(space, *ef.sg, conv).value;
}

Result cmd_example(const SpaceFlags& sf, const QuadFlags& qf, const ExampleFlags& ef) {
    Result r;
    Json& j = r.json;
    j["report"] = ef.report;
    if (ef.report == "slnr") {
        if (!sf.n) throw UsageError("--n is required for --report slnr");
        if (sf.given() || sf.d) throw UsageError("--report slnr builds SL(n, R) itself; pass --n only");
        const ComparisonReport rep = slnr_report(*sf.n, ef.margin);
        merge(j, rep.to_json());
        j["context"] = context("example", nullptr, nullptr);
        j["context"]["normalization"] = "killing";
        r.csv = {ComparisonReport::csv_header(), {rep.csv_row()}};
        return r;
    }
    const SymmetricSpace space = sf.build();
    const SgConvention conv = parse_sg_convention(ef.convention);
    if (ef.report == "threshold") {
        if (!ef.sg) throw UsageError("--sg is required");
        merge(j, decay_threshold(space, *ef.sg, conv).to_json());
        j["context"] = context("example", nullptr, &space);
        return r;
    }
    const double A = resolve_rate(ef, space, conv);
    const SlowDecaySymbol f = slow_decay_symbol(space, A, Gluing{ef.r0, ef.inner_value});
    j["A"] = A;
    j["gluing"] = {{"r0", ef.r0}, {"inner_value", ef.inner_value}};
    if (ef.report == "symbol") {
        if (!ef.sg) throw UsageError("--sg is required");
        qf.q.validate();
        const SobolevNorm n = symbol_sobolev_norm(space, f, *ef.sg, qf.q, ef.ladder, conv);
        if (ef.require_finite && !n.finite())
            throw NotFinite("||D f||_{L^{2 S_G}} diverges", n.to_json());
        j["threshold"] = decay_threshold(space, *ef.sg, conv).to_json();
        j["sobolev_norm"] = n.to_json();
        if (n.finite())
            j["certificate"] = "finite Sobolev norm => the multiplier bound applies for |1/p - 1/2| < 1/(2 S_G)";
        j["context"] = context("example", &qf, &space);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < n.ladder.size(); ++i) rows.push_back({n.ladder[i], n.partial[i]});
        r.csv = {{"cutoff", "partial_integral"}, rows};
        return r;
    }
    if (ef.report == "profile") {
        const auto radii = ef.radii.empty() ? std::vector<double>{0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0} : ef.radii;
        Json arr = Json::array();
        std::vector<std::vector<double>> rows;
        for (const auto& row : symbol_profile(f, radii)) {
            arr.push_back({{"r", row.r}, {"f", row.f}, {"Df", row.Df}});
            rows.push_back({row.r, row.f, row.Df});
        }
        j["profile"] = arr;
        j["context"] = context("example", nullptr, &space);
        r.csv = {{"r", "f", "Df"}, rows};
        return r;
    }
    throw UsageError("unknown --report '" + ef.report + "' (slnr | threshold | symbol | profile)");
}

std::string resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
    }
    return p.string();
}

Json diagnostic(const std::string& kind, const std::string& message, const std::string& details = {}) {
    Json d;
    d["error"] = kind;
    d["message"] = message;
    if (!details.empty()) {
        try {
            d["diagnostics"] = Json::parse(details);
        } catch (const nlohmann::json::exception&) {
            d["diagnostics"] = details;
        }
    }
    return d;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"symkit: harmonic analysis on symmetric spaces G/K", "symkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    SpaceFlags sf;
    QuadFlags qf;
    OutFlags of;

    auto* structure = app.add_subcommand("structure", "Root data, rho and dimensions");
    sf.add(structure);
    of.add(structure);

    auto* spectrum = app.add_subcommand("spectrum", "Plancherel density table and ||Omega^{-s}||_2");
    std::vector<double> radii;
    std::string density_mode = "automatic";
    std::optional<double> norm_s;
    bool require_finite = false;
    sf.add(spectrum);
    qf.add(spectrum);
    of.add(spectrum);
    spectrum->add_option("--radii", radii, "comma-separated |lambda| values")->delimiter(',');
    spectrum->add_option("--mode", density_mode, "automatic | rank_one_closed_form | complex_polynomial | gk_product")
        ->capture_default_str();
    spectrum->add_option("--norm-s", norm_s, "also compute ||Omega^{-s}||_2");
    spectrum->add_flag("--require-finite", require_finite, "exit 1 when the norm diverges");

    auto* kernel = app.add_subcommand("kernel", "Heat and Bessel-Green-Riesz kernel tables");
    std::string kernel_type, heat_mode = "closed";
    std::optional<double> kt, ks;
    sf.add(kernel);
    qf.add(kernel);
    of.add(kernel);
    kernel->add_option("--type", kernel_type, "heat | bgr")->required()->check(CLI::IsMember({"heat", "bgr"}));
    kernel->add_option("--t", kt, "heat time");
    kernel->add_option("--s", ks, "BGR exponent");
    kernel->add_option("--radii", radii, "comma-separated distances")->delimiter(',');
    kernel->add_option("--mode", heat_mode, "closed | spectral (heat)")->capture_default_str();

    auto* lq = app.add_subcommand("lq-check", "L^q integrability of kappa_s");
    std::optional<int> lq_dim;
    double lq_s = 0.0, lq_q = 0.0;
    bool verify = false;
    std::string lq_mode = "automatic";
    sf.add(lq);
    qf.add(lq);
    of.add(lq);
    lq->add_option("--dim", lq_dim, "dim(G/K)");
    lq->add_option("--s", lq_s, "kernel exponent")->required();
    lq->add_option("--q", lq_q, "integrability exponent")->required();
    lq->add_flag("--verify", verify, "integrate |kappa_s|^q numerically (needs a space)");
    lq->add_option("--lq-mode", lq_mode, "automatic | exact | envelope")->capture_default_str();
    lq->add_flag("--require-finite", require_finite, "exit 1 when the integral diverges");

    auto* region = app.add_subcommand("region", "Admissible p-interval for (S_G, s)");
    int region_dim = 0;
    double region_sg = 0.0;
    std::vector<double> region_s;
    std::optional<double> region_p;
    bool region_plan = false;
    of.add(region);
    region->add_option("--dim", region_dim, "dim(G/K)")->required();
    region->add_option("--sg", region_sg, "S_G")->required();
    region->add_option("--s", region_s, "s (comma-separated for a region table)")->required()->delimiter(',');
    region->add_option("--p", region_p, "test this p");
    region->add_flag("--plan", region_plan, "include the interpolation plan for --p");

    auto* constant = app.add_subcommand("constant", "Explicit multiplier-norm constant with its factors");
    std::string kind = "cgsp";
    double c_sg = 0.0, sobolev_norm = 1.0;
    std::optional<double> c_s, c_p;
    UserConstants user;
    sf.add(constant);
    qf.add(constant);
    of.add(constant);
    constant->add_option("--kind", kind, "cgsp | l2")->capture_default_str()->check(CLI::IsMember({"cgsp", "l2"}));
    constant->add_option("--sg", c_sg, "S_G")->required();
    constant->add_option("--s", c_s, "s");
    constant->add_option("--p", c_p, "p");
    constant->add_option("--sobolev-norm", sobolev_norm, "||Omega^s m||_q (cgsp) or ||Omega^{S_G} m||_2 (l2)")
        ->capture_default_str();
    constant->add_option("--c-beta", user.c_beta, "override C_beta");
    constant->add_option("--c-prime-beta", user.c_prime_beta, "override C'_beta");
    constant->add_option("--alpha", user.alpha, "override the interpolation parameter alpha");

    auto* example = app.add_subcommand("example", "Slow-decay symbols and the SL(n, R) comparison");
    ExampleFlags ef;
    sf.add(example);
    qf.add(example);
    of.add(example);
    example->add_option("--report", ef.report, "slnr | threshold | symbol | profile")->required();
    example->add_option("--margin", ef.margin, "S_G = dim(G/K) + margin (slnr)")->capture_default_str();
    example->add_option("--sg", ef.sg, "S_G");
    example->add_option("--decay-rate", ef.decay_rate, "decay rate A");
    example->add_option("--threshold-factor", ef.threshold_factor, "A as a multiple of ||rho|| / S_G");
    example->add_option("--r0", ef.r0, "inner flat radius")->capture_default_str();
    example->add_option("--inner-value", ef.inner_value, "value on the inner ball")->capture_default_str();
    example->add_option("--ladder", ef.ladder, "chamber cutoff ladder")->delimiter(',');
    example->add_option("--radii", ef.radii, "profile radii")->delimiter(',');
    example->add_option("--convention", ef.convention, "full_dimension | quarter_dimension")->capture_default_str();
    example->add_flag("--require-finite", ef.require_finite, "exit 1 when the Sobolev norm diverges");

    std::set<std::string> commands;
    for (const auto* sub : app.get_subcommands([](CLI::App*) { return true; })) commands.insert(sub->get_name());

    std::vector<std::string> args;
    try {
        args = apply_config(args_in, commands);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* sub = nullptr;
        for (const auto* s : app.get_subcommands()) sub = s;
        err << (sub ? sub->help() : app.help());
        return 2;
    }

    try {
        Result res;
        const CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "structure") res = cmd_structure(sf);
        else if (name == "spectrum") res = cmd_spectrum(sf, qf, radii, density_mode, norm_s, require_finite);
        else if (name == "kernel") res = cmd_kernel(sf, qf, kernel_type, kt, ks, radii, heat_mode);
        else if (name == "lq-check") res = cmd_lq_check(sf, qf, lq_dim, lq_s, lq_q, verify, lq_mode, require_finite);
        else if (name == "region") res = cmd_region(region_dim, region_sg, region_s, region_p, region_plan);
        else if (name == "constant") res = cmd_constant(sf, qf, kind, c_sg, c_s, c_p, sobolev_norm, user);
        else res = cmd_example(sf, qf, ef);

        std::string text;
        if (of.format == "csv") {
            if (!res.csv) throw UsageError("this command has no CSV form; use --format json");
            text = io::write_csv(res.csv->first, res.csv->second);
        } else {
            text = io::dump_json(res.json);
        }
        if (!of.output.empty()) io::write_file(resolve_output(of.output), text);
        else out << text;
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotFinite& e) {
        Json d = diagnostic(e.kind(), e.what());
        d["diagnostics"] = e.trace;
        err << io::dump_json(d);
        return 1;
    } catch (const DivergenceError& e) {
        err << io::dump_json(diagnostic(e.kind(), e.what()));
        return 1;
    } catch (const ToleranceError& e) {
        err << io::dump_json(diagnostic(e.kind(), e.what(), e.diagnostics()));
        return 1;
    } catch (const ResolutionError& e) {
        err << io::dump_json(diagnostic(e.kind(), e.what()));
        return 1;
    } catch (const Error& e) {
        // construction, validation, domain, capability, precondition, region, singularity
        err << "error (" << e.kind() << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << io::dump_json(diagnostic("internal", e.what()));
        return 1;
    }
}

}  // namespace symkit::cli
