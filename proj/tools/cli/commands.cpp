#include "cli/commands.hpp"

#include "latgate/atomics.hpp"
#include "latgate/constants.hpp"
#include "latgate/ensemble.hpp"
#include "latgate/errors.hpp"
#include "latgate/gate.hpp"
#include "latgate/keyvalue.hpp"
#include "latgate/lattice.hpp"
#include "latgate/overlap.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace latgate::cli {

using nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

// Every number leaves the tool rounded to 9 significant digits.
ordered_json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::stod(format_sig9(x));
}

ordered_json quantity(double value, const char* unit, const char* formula) {
    return ordered_json{{"value", num(value)}, {"unit", unit}, {"formula", formula}};
}

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

// Canonical "key=value" list; hashed for provenance.
class Provenance {
public:
    void add(const std::string& key, const std::string& value) { items_[key] = value; }
    void add(const std::string& key, double value) { add(key, format_sig9(value)); }
    void set_seed(std::uint64_t seed) { seed_ = seed; }

    std::string hash() const {
        std::string canonical;
        for (const auto& [k, v] : items_) canonical += k + "=" + v + "\n";
        return "fnv1a64:" + hex64(fnv1a64(canonical));
    }
    ordered_json json() const {
        return ordered_json{{"tool", "latgate"}, {"version", LATGATE_VERSION}, {"config_hash", hash()}, {"seed", seed_}};
    }
    std::string comment_line() const {
        return "# latgate " + std::string(LATGATE_VERSION) + " schema_version=" + std::to_string(kSchemaVersion) +
               " config_hash=" + hash() + " seed=" + std::to_string(seed_) + "\n";
    }

private:
    std::map<std::string, std::string> items_;
    std::uint64_t seed_ = kDefaultSeed;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

KernelVariant parse_variant(const std::string& name) {
    static const std::map<std::string, KernelVariant> names{{"full", KernelVariant::full},
                                                            {"monopole_only", KernelVariant::monopole_only},
                                                            {"near_field_tensor", KernelVariant::near_field_tensor},
                                                            {"near_field", KernelVariant::near_field}};
    return names.at(name);
}

struct QuadFlags {
    int angular_order = QuadratureSpec{}.angular_order;
    double rel_tol = QuadratureSpec{}.rel_tol;
    std::size_t max_evaluations = QuadratureSpec{}.max_evaluations;

    void attach(CLI::App* app) {
        app->add_option("--angular-order", angular_order, "Gauss-Legendre nodes in cos(theta)")->capture_default_str();
        app->add_option("--rel-tol", rel_tol, "relative tolerance of the radial quadrature")->capture_default_str();
        app->add_option("--max-evaluations", max_evaluations, "kernel evaluation budget per integral")
            ->capture_default_str();
    }
    QuadratureSpec spec() const {
        QuadratureSpec q;
        q.angular_order = angular_order;
        q.rel_tol = rel_tol;
        q.max_evaluations = max_evaluations;
        q.validate();
        return q;
    }
    void record(Provenance& p) const {
        p.add("angular_order", std::to_string(angular_order));
        p.add("rel_tol", rel_tol);
        p.add("max_evaluations", std::to_string(max_evaluations));
    }
};

// ---------------------------------------------------------------- kappa

struct KappaFlags {
    double eta_perp = 0.0;
    double eta_par = 0.0;
    std::string variant = "full";
    QuadFlags quad;
};

std::string run_kappa(const KappaFlags& f, std::uint64_t seed) {
    Provenance prov;
    prov.set_seed(seed);
    prov.add("command", "kappa");
    prov.add("eta_perp", f.eta_perp);
    prov.add("eta_par", f.eta_par);
    prov.add("variant", f.variant);
    f.quad.record(prov);

    const TrapGeometry geom(f.eta_perp, f.eta_par);
    const DipoleExpectation e = mean_fg(geom, f.quad.spec(), parse_variant(f.variant));
    const double closed = kappa_approx_aligned(geom);
    const double k = e.kappa();

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["provenance"] = prov.json();
    j["command"] = "kappa";
    j["eta_perp"] = num(f.eta_perp);
    j["eta_par"] = num(f.eta_par);
    j["variant"] = f.variant;
    j["kappa"] = num(k);
    j["mean_f"] = num(e.mean_f);
    j["mean_g"] = num(e.mean_g);
    j["err_f"] = num(e.err_f);
    j["err_g"] = num(e.err_g);
    j["evaluations"] = e.evaluations;
    j["closed_form"] = ordered_json{{"kappa", num(closed)}, {"relative_difference", num((closed - k) / std::abs(k))}};
    return dump(j);
}

// ---------------------------------------------------------------- map

struct MapFlags {
    double perp_min = 0.05, perp_max = 0.25;
    double par_min = 0.05, par_max = 0.25;
    std::size_t perp_n = 21, par_n = 21;
    unsigned jobs = 1;
    QuadFlags quad;
};

std::string run_map(const MapFlags& f, std::uint64_t seed) {
    Provenance prov;
    prov.set_seed(seed);
    prov.add("command", "map");
    prov.add("eta_perp_min", f.perp_min);
    prov.add("eta_perp_max", f.perp_max);
    prov.add("eta_perp_n", std::to_string(f.perp_n));
    prov.add("eta_par_min", f.par_min);
    prov.add("eta_par_max", f.par_max);
    prov.add("eta_par_n", std::to_string(f.par_n));
    f.quad.record(prov);  // jobs is deliberately left out: it cannot change the output

    const auto perp = linear_grid(f.perp_min, f.perp_max, f.perp_n);
    const auto par = linear_grid(f.par_min, f.par_max, f.par_n);
    const KappaMap map = kappa_map(perp, par, f.quad.spec(), f.jobs);
    std::ostringstream os;
    os << prov.comment_line();
    map.write_csv(os);
    for (char c : map.converged) {
        if (!c) throw NonConvergence("map: at least one cell did not converge (written as nan)");
    }
    return os.str();
}

// ---------------------------------------------------------------- budget

ordered_json trap_json(const TrapParams& t) {
    ordered_json j;
    j["intensity"] = quantity(t.intensity, "W/m2", "input");
    j["detuning"] = quantity(t.detuning, "rad/s", "input");
    j["k_lattice"] = quantity(t.k_lattice, "rad/m", "(omega_res + detuning)/c unless given");
    j["well_depth"] = quantity(t.well_depth, "J", "4 * geometry_factor * hbar Gamma^2 (I/I_sat) / (8 Delta)");
    j["well_depth_over_h"] = quantity(t.well_depth / constants::h, "Hz", "well_depth / h");
    j["osc_freq"] = quantity(t.osc_freq, "Hz", "k_L sqrt(2 U0 / m) / 2pi");
    j["ground_rms"] = quantity(t.ground_rms, "m", "sqrt(hbar / (2 m omega))");
    j["lamb_dicke"] = quantity(t.lamb_dicke, "1", "k_L * ground_rms");
    j["scatter_rate"] = quantity(t.scatter_rate, "1/s", "(Gamma / Delta) (omega / 4)");
    return j;
}

std::string run_budget(const std::string& config_path, std::uint64_t seed) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + config_path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Provenance prov;
    prov.set_seed(seed);
    prov.add("command", "budget");
    prov.add("config", text);

    const KeyValueFile file = KeyValueFile::load(config_path);
    const BudgetInputs inputs = budget_inputs_from_keyvalues(file);
    const AtomSpecies& sp = inputs.species;
    const LatticeBeamConfig& b = inputs.beams;

    const TrapParams perp = trap_params(sp, b.intensity_perp, b.detuning_perp, b.k_perp, b.geometry_factor_perp);
    const TrapParams par = trap_params(sp, b.intensity_par, b.detuning_par, b.k_par, b.geometry_factor_par);
    const std::array<TrapParams, 3> axes{perp, perp, par};
    const double gamma_lat = total_lattice_scatter(axes);

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["provenance"] = prov.json();
    j["command"] = "budget";
    const double c_g = catalysis_clebsch_gordan(sp);
    j["species"] = ordered_json{{"name", sp.name},
                                {"source", inputs.species_source},
                                {"c_g", quantity(c_g, "1", "<F_up, 1; 1, 0 | F_max_excited, 1>")},
                                {"c_g4", quantity(std::pow(c_g, 4), "1", "c_g^4")}};
    j["axes"] = ordered_json{{"perp", trap_json(perp)}, {"par", trap_json(par)}};
    j["lattice_scatter"] = ordered_json{
        {"gamma_prime_lat", quantity(gamma_lat, "1/s", "2 * scatter_perp + scatter_par")},
        {"gamma_prime_lat_over_2pi", quantity(gamma_lat / constants::two_pi, "Hz", "gamma_prime_lat / 2pi")}};
    j["well_separation"] = ordered_json{
        {"polarization_angle", quantity(b.polarization_angle, "rad", "input")},
        {"separation", quantity(well_separation(b.polarization_angle, b.k_par), "m", "atan(tan(theta)/2) / k_par")}};

    if (file.contains("merge_duration") && par.trapped()) {
        const double t0 = file.quantity_or("merge_theta_start", Dimension::angle, constants::pi / 2);
        const double t1 = file.quantity_or("merge_theta_end", Dimension::angle, 0.0);
        const double duration = file.quantity("merge_duration", Dimension::time);
        const MergeSchedule m = merge_schedule(t0, t1, duration, par.osc_freq, par.ground_rms, b.k_par);
        j["merge"] = ordered_json{
            {"duration", quantity(duration, "s", "input")},
            {"max_speed", quantity(m.max_speed, "m/s", "max |d(dZ)/dt| over the raised-cosine ramp")},
            {"adiabaticity", quantity(m.adiabaticity, "1", "max_speed / (nu_par * z0)")},
            {"adiabatic", m.adiabatic}};
    } else {
        j["merge"] = nullptr;
    }

    double eta_perp = inputs.overlap_eta_perp > 0.0 ? inputs.overlap_eta_perp : perp.lamb_dicke;
    double eta_par = inputs.overlap_eta_par > 0.0 ? inputs.overlap_eta_par : par.lamb_dicke;
    const bool geometry_ok = eta_perp > 0.0 && eta_perp <= 1.0 && eta_par > 0.0 && eta_par <= 1.0;
    if (inputs.catalysis_vdd > 0.0 && geometry_ok) {
        const DipoleExpectation e = mean_fg(TrapGeometry(eta_perp, eta_par));
        const CatalysisField cat = catalysis_intensity(sp, std::pow(c_g, 4), e.mean_f, e.mean_g, inputs.catalysis_vdd);
        j["catalysis"] = ordered_json{
            {"eta_perp", num(eta_perp)},
            {"eta_par", num(eta_par)},
            {"mean_f", num(e.mean_f)},
            {"mean_g", num(e.mean_g)},
            {"v_dd_over_h", quantity(cat.v_dd / constants::h, "Hz", "-hbar Gamma' c_g^4 <f> / h")},
            {"scatter_rate", quantity(cat.scatter_rate, "1/s", "|V_dd| / (hbar c_g^4 |<f>|)")},
            {"saturation", quantity(cat.saturation, "1", "2 Gamma' / Gamma")},
            {"intensity", quantity(cat.intensity, "W/m2", "s * I_sat")},
            {"intensity_uW_per_cm2", quantity(cat.intensity * 1e2, "uW/cm2", "intensity")},
            {"superradiant_linewidth", quantity(cat.superradiant_linewidth, "1/s", "Gamma' c_g^4 (1 + <g>)")},
            {"superradiant_linewidth_over_2pi",
             quantity(cat.superradiant_linewidth / constants::two_pi, "Hz", "superradiant_linewidth / 2pi")},
            {"kappa", quantity(cat.kappa, "1", "V_dd / (hbar superradiant_linewidth)")}};
    } else {
        j["catalysis"] = nullptr;
    }
    return dump(j);
}

// ---------------------------------------------------------------- gate

struct GateFlags {
    double eta_perp = 0.1;
    double eta_par = 0.2;
    double vdd_khz = 5.0;
    double rabi_divisor = 10.0;
    double detuning = 0.0;
    double lone_scale = 1.0;
    bool ideal = false;

    void attach(CLI::App* app) {
        app->add_option("--eta-perp", eta_perp, "transverse Lamb-Dicke parameter")->capture_default_str();
        app->add_option("--eta-par", eta_par, "longitudinal Lamb-Dicke parameter")->capture_default_str();
        app->add_option("--vdd-khz", vdd_khz, "target |V_dd|/h of the catalysis field, kHz")->capture_default_str();
        app->add_option("--rabi-divisor", rabi_divisor, "Omega = |V_dd| / (divisor * hbar)")->capture_default_str();
        app->add_option("--detuning", detuning, "pulse detuning from the shifted line, rad/s")->capture_default_str();
        app->add_option("--lone-scatter-scale", lone_scale,
                        "scattering of a lone |1> atom in units of c_g^4 Gamma'")
            ->capture_default_str();
        app->add_flag("--ideal", ideal, "no scattering and a 1000x off-resonant control=0 sector");
    }
    void record(Provenance& p) const {
        p.add("eta_perp", eta_perp);
        p.add("eta_par", eta_par);
        p.add("vdd_khz", vdd_khz);
        p.add("rabi_divisor", rabi_divisor);
        p.add("detuning", detuning);
        p.add("lone_scatter_scale", lone_scale);
        p.add("ideal", ideal ? "1" : "0");
    }
};

struct GateSetup {
    OperatingPoint op;
    double gamma_prime = 0.0;
    double c_g = 0.0;
    DipoleExpectation means;
};

GateSetup build_gate(const GateFlags& f) {
    GateSetup s;
    const AtomSpecies sp = cesium_d2();
    s.c_g = catalysis_clebsch_gordan(sp);
    s.means = mean_fg(TrapGeometry(f.eta_perp, f.eta_par));
    const CatalysisField cat =
        catalysis_intensity(sp, std::pow(s.c_g, 4), s.means.mean_f, s.means.mean_g, f.vdd_khz * 1e3 * constants::h);
    s.gamma_prime = cat.scatter_rate;
    if (f.ideal) {
        s.op = make_operating_point(s.gamma_prime, s.c_g, s.means.mean_f, s.means.mean_g, 1000.0);
        s.op.env.gamma_dd = s.op.env.gamma_single = s.op.env.gamma_lone = 0.0;
    } else {
        s.op = make_operating_point(s.gamma_prime, s.c_g, s.means.mean_f, s.means.mean_g, f.rabi_divisor);
        s.op.env.gamma_lone = f.lone_scale * s.op.env.gamma_single;
    }
    s.op.pulse.detuning = f.detuning;
    s.op.env.validate();
    return s;
}

ordered_json operating_point_json(const GateSetup& s) {
    const GateEnvironment& env = s.op.env;
    return ordered_json{{"gamma_prime", num(s.gamma_prime)},
                        {"c_g", num(s.c_g)},
                        {"mean_f", num(s.means.mean_f)},
                        {"mean_g", num(s.means.mean_g)},
                        {"kappa", num(s.means.kappa())},
                        {"v_dd_over_h", num(env.v_dd / constants::h)},
                        {"gamma_single", num(env.gamma_single)},
                        {"gamma_dd", num(env.gamma_dd)},
                        {"gamma_lone", num(env.gamma_lone)},
                        {"rabi", num(s.op.pulse.rabi)},
                        {"detuning_from_shifted", num(s.op.pulse.detuning)},
                        {"duration", num(s.op.pulse.duration)}};
}

ordered_json populations_json(const std::array<double, kBasisSize>& p) {
    ordered_json j = ordered_json::object();
    for (int o = 0; o < kBasisSize; ++o) j[basis_label(o)] = num(p[static_cast<std::size_t>(o)]);
    return j;
}

std::string run_gate(const GateFlags& f, std::uint64_t seed) {
    Provenance prov;
    prov.set_seed(seed);
    prov.add("command", "gate");
    f.record(prov);
    const GateSetup s = build_gate(f);
    const TruthTable t = truth_table(s.op.env, s.op.pulse);

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["provenance"] = prov.json();
    j["command"] = "gate";
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < kBasisSize; ++i) {
        rows.push_back(ordered_json{{"input", basis_label(i)},
                                    {"populations", populations_json(t.populations[static_cast<std::size_t>(i)])},
                                    {"leaked", num(t.leaked[static_cast<std::size_t>(i)])},
                                    {"fidelity", num(t.row_fidelity(i))}});
    }
    j["rows"] = rows;
    j["mean_fidelity"] = num(t.mean_fidelity());
    j["operating_point"] = operating_point_json(s);
    return dump(j);
}

// ---------------------------------------------------------------- ensemble

struct EnsembleFlags {
    GateFlags gate;
    std::string input = "10";
    double fill = 0.6;
    std::size_t sites = 100000;
    std::string csv_path;
};

ordered_json stage_json(const MeasurementStage& m) {
    std::array<double, kBasisSize> frac{};
    for (int y = 0; y < kBasisSize; ++y) {
        frac[static_cast<std::size_t>(y)] =
            m.units ? static_cast<double>(m.counts[static_cast<std::size_t>(y)]) / static_cast<double>(m.units) : 0.0;
    }
    return ordered_json{{"stage", stage_name(m.stage)},
                        {"input", basis_label(m.input)},
                        {"populations", populations_json(frac)},
                        {"leaked", num(m.units ? static_cast<double>(m.leaked) / static_cast<double>(m.units) : 0.0)},
                        {"flushed", m.flushed},
                        {"n", m.units},
                        {"atoms", m.atoms}};
}

std::string run_ensemble(const EnsembleFlags& f, std::uint64_t seed) {
    Provenance prov;
    prov.set_seed(seed);
    prov.add("command", "ensemble");
    f.gate.record(prov);
    prov.add("input", f.input);
    prov.add("fill", f.fill);
    prov.add("sites", std::to_string(f.sites));

    const int input = parse_basis_label(f.input);
    const GateSetup s = build_gate(f.gate);
    const TruthTable table = truth_table(s.op.env, s.op.pulse);
    const LatticeFill fill = simulate_fill(f.sites, f.fill, seed);
    const std::vector<MeasurementStage> stages{
        run_stage(fill, table, input, StageKind::paired_and_unpaired, seed),
        run_stage(remove_pairs(fill), table, input, StageKind::unpaired_only, seed),
        run_stage(fill, table, input, StageKind::double_gate_with_flush, seed)};
    if (!f.csv_path.empty()) {
        std::ostringstream csv;
        csv << prov.comment_line();
        write_stage_csv(csv, stages);
        emit(csv.str(), f.csv_path, csv);
    }
    const CorrectedRow row = background_subtract(stages[0], stages[1], stages[2]);

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["provenance"] = prov.json();
    j["command"] = "ensemble";
    ordered_json st = ordered_json::array();
    for (const auto& m : stages) st.push_back(stage_json(m));
    j["stages"] = st;
    ordered_json err = ordered_json::object();
    for (int y = 0; y < kBasisSize; ++y) err[basis_label(y)] = num(row.std_error[static_cast<std::size_t>(y)]);
    j["corrected"] = ordered_json{{"input", basis_label(row.input)},
                                  {"populations", populations_json(row.probability)},
                                  {"std_error", err},
                                  {"leak", num(row.leak)},
                                  {"pair_survival", num(row.pair_survival)},
                                  {"apparent_fidelity", num(row.apparent_fidelity)},
                                  {"corrected_fidelity", num(row.corrected_fidelity)},
                                  {"pairs", row.pairs}};
    j["direct_row"] = ordered_json{{"populations", populations_json(table.populations[static_cast<std::size_t>(input)])},
                                   {"leaked", num(table.leaked[static_cast<std::size_t>(input)])}};
    return dump(j);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"latgate: dipole-dipole gate analysis for optical-lattice atom pairs", "latgate"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    app.add_option("--out", out_path, "write the result here instead of stdout");
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.set_version_flag("--version", LATGATE_VERSION);

    KappaFlags kf;
    CLI::App* kappa_cmd = app.add_subcommand("kappa", "figure of merit at one trap geometry");
    kappa_cmd->add_option("--eta-perp", kf.eta_perp, "transverse Lamb-Dicke parameter")->required();
    kappa_cmd->add_option("--eta-par", kf.eta_par, "longitudinal Lamb-Dicke parameter")->required();
    kappa_cmd->add_option("--variant", kf.variant, "kernel terms kept")
        ->check(CLI::IsMember({"full", "monopole_only", "near_field_tensor", "near_field"}))
        ->capture_default_str();
    kf.quad.attach(kappa_cmd);

    MapFlags mf;
    CLI::App* map_cmd = app.add_subcommand("map", "kappa over a grid of Lamb-Dicke parameters (CSV)");
    map_cmd->add_option("--eta-perp-min", mf.perp_min)->capture_default_str();
    map_cmd->add_option("--eta-perp-max", mf.perp_max)->capture_default_str();
    map_cmd->add_option("--eta-perp-n", mf.perp_n)->capture_default_str();
    map_cmd->add_option("--eta-par-min", mf.par_min)->capture_default_str();
    map_cmd->add_option("--eta-par-max", mf.par_max)->capture_default_str();
    map_cmd->add_option("--eta-par-n", mf.par_n)->capture_default_str();
    map_cmd->add_option("--jobs", mf.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    mf.quad.attach(map_cmd);

    std::string config_path;
    CLI::App* budget_cmd = app.add_subcommand("budget", "trap and catalysis parameter budget (JSON)");
    budget_cmd->add_option("--config", config_path, "lattice configuration file")->required()->check(CLI::ExistingFile);

    GateFlags gf;
    CLI::App* gate_cmd = app.add_subcommand("gate", "C-NOT truth table at an operating point (JSON)");
    gf.attach(gate_cmd);

    EnsembleFlags ef;
    CLI::App* ens_cmd = app.add_subcommand("ensemble", "randomly filled lattice readout with background subtraction");
    ef.gate.attach(ens_cmd);
    ens_cmd->add_option("--input", ef.input, "prepared two-qubit state")
        ->check(CLI::IsMember({"00", "01", "10", "11"}))
        ->capture_default_str();
    ens_cmd->add_option("--fill", ef.fill, "per-well occupation probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    ens_cmd->add_option("--sites", ef.sites, "number of well pairs")->capture_default_str();
    ens_cmd->add_option("--csv", ef.csv_path, "also write the stage table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        std::string text;
        if (kappa_cmd->parsed()) text = run_kappa(kf, seed);
        else if (map_cmd->parsed()) text = run_map(mf, seed);
        else if (budget_cmd->parsed()) text = run_budget(config_path, seed);
        else if (gate_cmd->parsed()) text = run_gate(gf, seed);
        else if (ens_cmd->parsed()) text = run_ensemble(ef, seed);
        emit(text, out_path, out);
        return kSuccess;
    } catch (const NonConvergence& e) {
        err << "latgate: non-convergence: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const NonIdentifiable& e) {
        err << "latgate: non-identifiable: " << e.what() << "\n";
        return kNonIdentifiable;
    } catch (const std::invalid_argument& e) {
        err << "latgate: invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "latgate: invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "latgate: " << e.what() << "\n";
        return kFailure;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("latgate");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace latgate::cli
