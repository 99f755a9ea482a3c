// Copyright 2026 The holosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holosim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "holosim/holonomy.hpp"
#include "holosim/kernels.hpp"

namespace holosim {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char *kSchema = "holo-sim/1";

struct Subinfo {
    Subcommand sub;
    const char *name;
};
constexpr Subinfo kSubs[] = {
    {Subcommand::GateZ, "gate-z"},
    {Subcommand::GateX, "gate-x"},
    {Subcommand::GateCZ, "gate-cz"},
    {Subcommand::LzScan, "lz-scan"},
    {Subcommand::Fidelity, "fidelity"},
    {Subcommand::LoopDump, "loop-dump"},
};

std::vector<std::string> junction_labels(BlockKind kind) {
    switch (kind) {
        case BlockKind::Z:
            return {"J1", "J2"};
        case BlockKind::X:
            return {"J1", "J2", "J3"};
        case BlockKind::CZ:
            return {"J1", "J2", "J1'", "J2'"};
        case BlockKind::Prototype:
            break;
    }
    return {};
}

std::optional<BlockKind> parse_block(const std::string &s) {
    for (BlockKind k : {BlockKind::Z, BlockKind::X, BlockKind::CZ}) {
        if (s == block_kind_name(k) || s + "_BLOCK" == block_kind_name(k)) {
            return k;
        }
    }
    return std::nullopt;
}

std::string default_shape(BlockKind kind) {
    switch (kind) {
        case BlockKind::X:
            return "X_PATH";
        case BlockKind::CZ:
            return "CZ_RECT";
        default:
            return "Z_RECT";
    }
}

/// Collects every problem instead of stopping at the first.
class Reader {
   public:
    std::vector<std::string> errors;

    void error(std::string msg) {
        errors.push_back(std::move(msg));
    }

    void allow_keys(const Json &obj, const std::string &where, std::initializer_list<const char *> keys) {
        if (!obj.is_object()) {
            return;
        }
        std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto &[k, v] : obj.items()) {
            if (!ok.count(k)) {
                error(where + ": unknown key '" + k + "'");
            }
        }
    }

    std::optional<double> number(const Json &obj, const std::string &key, const std::string &where) {
        if (!obj.is_object() || !obj.contains(key)) {
            return std::nullopt;
        }
        const Json &v = obj.at(key);
        if (!v.is_number()) {
            error(where + "." + key + " must be a number");
            return std::nullopt;
        }
        double d = v.get<double>();
        if (!std::isfinite(d)) {
            error(where + "." + key + " must be finite");
            return std::nullopt;
        }
        return d;
    }

    std::optional<std::string> string(const Json &obj, const std::string &key, const std::string &where) {
        if (!obj.is_object() || !obj.contains(key)) {
            return std::nullopt;
        }
        const Json &v = obj.at(key);
        if (!v.is_string()) {
            error(where + "." + key + " must be a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    std::vector<double> numbers(const Json &obj, const std::string &key, const std::string &where) {
        std::vector<double> out;
        if (!obj.is_object() || !obj.contains(key)) {
            return out;
        }
        const Json &v = obj.at(key);
        if (v.is_number()) {
            out.push_back(v.get<double>());
            return out;
        }
        if (!v.is_array()) {
            error(where + "." + key + " must be a number or an array of numbers");
            return out;
        }
        for (const auto &e : v) {
            if (!e.is_number()) {
                error(where + "." + key + " must contain only numbers");
                return {};
            }
            out.push_back(e.get<double>());
        }
        return out;
    }

    const Json *object(const Json &obj, const std::string &key, const std::string &where) {
        if (!obj.is_object() || !obj.contains(key)) {
            return nullptr;
        }
        const Json &v = obj.at(key);
        if (!v.is_object()) {
            error(where + "." + key + " must be an object");
            return nullptr;
        }
        return &v;
    }
};

Json cjson(cplx z) {
    return Json::array({z.real(), z.imag()});
}

Json matrix_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(cjson(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::optional<CMatrix> matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        return std::nullopt;
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            return std::nullopt;
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json &z = row[static_cast<std::size_t>(c)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                return std::nullopt;
            }
            m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

Json controls_json(const ControlSettings &c) {
    Json j = Json::object();
    Json phis = Json::object();
    for (const auto &[k, v] : c.phis) {
        phis[k] = v;
    }
    j["phis"] = std::move(phis);
    j["h"] = c.h;
    return j;
}

Json conventions_json() {
    Json j = Json::object();
    j["sigma_z"] = "|0><0| - |1><1|";
    j["basis_order"] = "first listed box is the most significant bit";
    j["complex"] = "[re, im]";
    j["matrices"] = "row-major, rows of [re, im] pairs";
    j["global_phase"] = "gates rephased so the (0,0) entry is real and non-negative";
    j["distance"] = "min over phase of the Frobenius distance";
    j["units"] = "energies in E_J, times in hbar/E_J";
    j["eta"] =
        "absolute rate with max_t |dH/dt| = eta * Delta; Delta is the minimal gap of the computational band inside "
        "its charge sectors; eta_over_gap = eta / Delta; total time T = max_s |dH/ds| / (eta * Delta)";
    return j;
}

Json metadata_json(const Scenario &s, const ParameterLoop *loop) {
    Json j = Json::object();
    j["conventions"] = conventions_json();
    j["kernels"] = kernels::isa_name(kernels::active().isa);
    if (loop != nullptr) {
        Json l = Json::object();
        l["name"] = loop->name();
        l["orientation"] = loop->orientation();
        l["segments"] = loop->segments().size();
        l["samples"] = loop->total_samples();
        j["loop"] = std::move(l);
    }
    j["schedule_profile"] = ramp_profile_name(s.schedule.profile);
    j["dt_max"] = s.schedule.dt_max;
    if (s.scramble_seed) {
        j["scramble_seed"] = *s.scramble_seed;
    } else {
        j["scramble_seed"] = nullptr;
    }
    return j;
}

Encoding encoding_for(const Scenario &s) {
    if (s.block == BlockKind::CZ) {
        return Encoding::cz_single_box();
    }
    if (s.encoding == "two-box") {
        return Encoding::two_box();
    }
    return Encoding::z_single_box();
}

double closed_form_z(const Scenario &s) {
    const auto &j = s.junctions.at(s.labels.second);
    return berry_phase_z(j.gamma, s.corners.phi1_star, s.corners.phi2_star);
}

/// eta values in descending order, from whichever form the schedule was given in.
std::vector<double> resolve_etas(const Scenario &s, const LoopProfile &lp) {
    std::vector<double> out;
    for (double r : s.eta_over_gap) {
        out.push_back(r * lp.gap);
    }
    for (double e : s.etas) {
        out.push_back(e);
    }
    if (s.tau_op) {
        out.push_back(lp.max_slope / (*s.tau_op * lp.gap));
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Schedule schedule_for(const LoopProfile &lp, double eta, const ScheduleOptions &options, std::size_t segments) {
    Schedule s;
    s.profile = options.profile;
    s.segments = segments;
    s.eta = eta;
    s.gap = lp.gap;
    s.max_slope = lp.max_slope;
    s.total_time = lp.max_slope / (eta * lp.gap);
    s.time_steps = std::max(options.min_steps, static_cast<int>(std::ceil(s.total_time / options.dt_max)));
    return s;
}

Json distance_entry(const std::string &a, const std::string &b, const CMatrix &u, const CMatrix &v) {
    Json j = Json::object();
    j["a"] = a;
    j["b"] = b;
    j["distance"] = phase_stripped_distance(u, v);
    return j;
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

RunOutput run_gate(Subcommand sub, const Scenario &s) {
    BlockLayout layout = scenario_layout(s);
    ParameterLoop loop = scenario_loop(s);
    BlockModel model(layout);
    const ControlSettings start = loop.at(0);
    const double energy = computational_energy(layout.kind, start.h);
    const Encoding enc = encoding_for(s);

    HolonomyOptions hopt;
    hopt.scramble_seed = s.scramble_seed;
    HolonomyResult hol = loop_holonomy(layout, loop, energy, hopt);
    if (hol.unitarity_defect > 1e-6) {
        throw NumericalError("holonomy is far from unitary (defect " + fmt(hol.unitarity_defect) + ")");
    }
    LogicalGate wl = extract_logical(hol, enc);

    Json doc = Json::object();
    doc["schema"] = kSchema;
    doc["subcommand"] = subcommand_name(sub);
    doc["scenario"] = Json::parse(scenario_json(s, sub));
    doc["metadata"] = metadata_json(s, &loop);

    Json closed = Json::object();
    CMatrix ideal;
    if (sub == Subcommand::GateX) {
        RotationAngles ra = rotation_angle_x(s.corners.phi1_star, s.junctions.at("J3"));
        closed["phi"] = ra.phi;
        closed["phi_prime"] = ra.phi_prime;
        closed["form"] = "U_Z(phi')^H U_X(phi) U_Z(phi')";
        ideal = ideal_gate(GateLabel::UZ, ra.phi_prime).matrix.adjoint() * ideal_gate(GateLabel::UX, ra.phi).matrix *
                ideal_gate(GateLabel::UZ, ra.phi_prime).matrix;
    } else {
        double phi_b = closed_form_z(s);
        closed["phi_B"] = phi_b;
        if (sub == Subcommand::GateCZ) {
            closed["form"] = "diag(1, 1, e^{i phi_B}, 1)";
            closed["assumes"] = "|J1'| = |J2'| at the parked fluxes";
            ideal = ideal_gate(GateLabel::UCZ, phi_b).matrix;
        } else {
            closed["form"] = "diag(1, e^{i phi_B})";
            ideal = ideal_gate(GateLabel::UZ, phi_b).matrix;
        }
    }
    ideal = canonical_phase(ideal);
    closed["gate"] = matrix_json(ideal);
    doc["closed_form"] = std::move(closed);

    Json w = Json::object();
    w["gate"] = matrix_json(wl.matrix);
    w["subspace_dim"] = hol.subspace_dim;
    w["band_dim"] = hol.band_dim;
    w["min_gap"] = hol.min_gap;
    w["samples"] = hol.samples;
    w["discretization_error_estimate"] = hol.discretization_error_estimate;
    w["unitarity_defect"] = hol.unitarity_defect;
    doc["wilson_loop"] = std::move(w);

    Json dists = Json::array();
    dists.push_back(distance_entry("wilson_loop", "closed_form", wl.matrix, ideal));

    Json dyn = Json::array();
    std::ostringstream csv;
    csv << "method,eta,eta_over_gap,total_time,steps,leakage,max_norm_error,distance_to_closed_form\n";
    csv << "closed_form,,,,,,," << 0 << "\n";
    csv << "wilson_loop,,,,,,," << fmt(phase_stripped_distance(wl.matrix, ideal)) << "\n";
    if (!s.eta_over_gap.empty() || !s.etas.empty() || s.tau_op) {
        LoopProfile lp = measure_loop(layout, loop, hol.gauge_anchor, s.schedule);
        std::size_t i = 0;
        for (double eta : resolve_etas(s, lp)) {
            Schedule sch = schedule_for(lp, eta, s.schedule, loop.segments().size());
            GateEstimate g = adiabatic_gate(layout, loop, sch, hol.gauge_anchor);
            LogicalGate lg = extract_logical(g.unitary, g.anchor.vectors, enc);
            Json e = Json::object();
            e["eta"] = eta;
            e["eta_over_gap"] = eta / lp.gap;
            e["total_time"] = sch.total_time;
            e["steps"] = sch.time_steps;
            e["gate"] = matrix_json(lg.matrix);
            e["leakage"] = g.leakage;
            e["max_norm_error"] = g.max_norm_error;
            e["dynamic_phase"] = g.dynamic_phase;
            dyn.push_back(std::move(e));
            const std::string tag = "dynamics[" + std::to_string(i) + "]";
            dists.push_back(distance_entry(tag, "closed_form", lg.matrix, ideal));
            dists.push_back(distance_entry(tag, "wilson_loop", lg.matrix, wl.matrix));
            csv << "dynamics," << fmt(eta) << "," << fmt(eta / lp.gap) << "," << fmt(sch.total_time) << "," << sch.time_steps
                << "," << fmt(g.leakage) << "," << fmt(g.max_norm_error) << "," << fmt(phase_stripped_distance(lg.matrix, ideal))
                << "\n";
            ++i;
        }
    }
    doc["dynamics"] = std::move(dyn);
    doc["distances"] = std::move(dists);
    return {doc.dump(2) + "\n", csv.str()};
}

RunOutput run_lz(const Scenario &s) {
    BlockLayout layout = scenario_layout(s);
    ParameterLoop loop = scenario_loop(s);
    BlockModel model(layout);
    SubspaceBasis anchor = default_anchor(model, loop.at(0));
    LoopProfile lp = measure_loop(layout, loop, anchor, s.schedule);
    std::vector<double> etas = resolve_etas(s, lp);
    LzScan scan = landau_zener_scan(layout, loop, etas, s.schedule, anchor);

    Json doc = Json::object();
    doc["schema"] = kSchema;
    doc["subcommand"] = subcommand_name(Subcommand::LzScan);
    doc["scenario"] = Json::parse(scenario_json(s, Subcommand::LzScan));
    doc["metadata"] = metadata_json(s, &loop);
    doc["gap"] = scan.gap;
    doc["max_slope"] = lp.max_slope;
    doc["leakage_floor"] = kLeakageFloor;
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "eta,eta_over_gap,inverse_eta,total_time,steps,leakage,ln_leakage,in_fit,lz_formula\n";
    for (const auto &r : scan.rows) {
        Json j = Json::object();
        j["eta"] = r.eta;
        j["eta_over_gap"] = r.eta_over_gap;
        j["inverse_eta"] = 1 / r.eta;
        j["total_time"] = r.total_time;
        j["steps"] = r.steps;
        j["leakage"] = r.leakage;
        if (r.leakage > 0) {
            j["ln_leakage"] = std::log(r.leakage);
        } else {
            j["ln_leakage"] = nullptr;
        }
        j["in_fit"] = r.in_fit;
        j["lz_formula"] = lz_probability(scan.gap, r.eta);
        csv << fmt(r.eta) << "," << fmt(r.eta_over_gap) << "," << fmt(1 / r.eta) << "," << fmt(r.total_time) << "," << r.steps
            << "," << fmt(r.leakage) << "," << (r.leakage > 0 ? fmt(std::log(r.leakage)) : "") << ","
            << (r.in_fit ? "1" : "0") << "," << fmt(lz_probability(scan.gap, r.eta)) << "\n";
        rows.push_back(std::move(j));
    }
    doc["rows"] = std::move(rows);
    Json fit = Json::object();
    fit["x"] = "1/eta";
    fit["y"] = "ln(leakage)";
    fit["points"] = scan.fit_points;
    if (scan.fit_points >= 2) {
        fit["slope"] = scan.slope;
        fit["intercept"] = scan.intercept;
        fit["r_squared"] = scan.r_squared;
    } else {
        fit["slope"] = nullptr;
        fit["intercept"] = nullptr;
        fit["r_squared"] = nullptr;
    }
    doc["fit"] = std::move(fit);
    return {doc.dump(2) + "\n", csv.str()};
}

RunOutput run_fidelity(const Scenario &s) {
    Json doc = Json::object();
    doc["schema"] = kSchema;
    doc["subcommand"] = subcommand_name(Subcommand::Fidelity);
    doc["scenario"] = Json::parse(scenario_json(s, Subcommand::Fidelity));
    doc["metadata"] = metadata_json(s, nullptr);

    ChannelProbabilities ch = channel_probabilities(s.budget);
    Json c = Json::object();
    c["p_lz"] = ch.p_lz;
    c["p_qp"] = ch.p_qp;
    c["p_total"] = ch.p_total;
    c["combination"] = "p_total = p_lz + p_qp (clamped to 1)";
    c["qp_exponent"] = quasiparticle_exponent(s.budget);
    doc["channels"] = std::move(c);

    const double p = s.budget_p.value_or(ch.p_total);
    const double dphi = s.budget_delta_phi.value_or(phase_error(s.budget.delta_e, s.budget.tau_op));
    Json b = Json::object();
    b["p"] = p;
    b["p_source"] = s.budget_p ? "budget.p" : "channels.p_total";
    b["delta_phi"] = dphi;
    b["delta_phi_source"] = s.budget_delta_phi ? "budget.delta_phi" : "delta_e * tau_op";
    b["fidelity"] = fidelity(p, dphi);
    b["fidelity_lz_only"] = fidelity(ch.p_lz, dphi);
    b["quoted_reference"] = kQuotedFidelity;
    doc["budget_result"] = std::move(b);

    AdiabaticWindow w = adiabatic_window(s.budget.delta, s.budget.delta_e);
    Json win = Json::object();
    win["tau_min"] = w.tau_min;
    win["tau_max"] = w.tau_max;
    win["empty"] = w.empty;
    win["contains_tau_op"] = w.contains(s.budget.tau_op);
    doc["adiabatic_window"] = std::move(win);

    std::ostringstream csv;
    csv << "p,delta_phi,fidelity\n";
    csv << fmt(p) << "," << fmt(dphi) << "," << fmt(fidelity(p, dphi)) << "\n";
    Json grid = Json::array();
    for (double gp : s.grid_p) {
        for (double gd : s.grid_delta_phi) {
            Json e = Json::object();
            e["p"] = gp;
            e["delta_phi"] = gd;
            e["fidelity"] = fidelity(gp, gd);
            grid.push_back(std::move(e));
            csv << fmt(gp) << "," << fmt(gd) << "," << fmt(fidelity(gp, gd)) << "\n";
        }
    }
    doc["grid"] = std::move(grid);
    Json warnings = Json::array();
    for (const auto &m : s.budget.check()) {
        warnings.push_back(m);
    }
    doc["warnings"] = std::move(warnings);
    return {doc.dump(2) + "\n", csv.str()};
}

RunOutput run_dump(const Scenario &s) {
    BlockLayout layout = scenario_layout(s);
    ParameterLoop loop = scenario_loop(s);
    Json doc = Json::object();
    doc["schema"] = kSchema;
    doc["subcommand"] = subcommand_name(Subcommand::LoopDump);
    doc["scenario"] = Json::parse(scenario_json(s, Subcommand::LoopDump));
    doc["metadata"] = metadata_json(s, &loop);
    auto pts = loop.sample_points();
    std::vector<std::string> names;
    for (const auto &[k, v] : pts.front().phis) {
        names.push_back(k);
    }
    std::ostringstream csv;
    csv << "index,s";
    for (const auto &n : names) {
        csv << "," << n;
    }
    csv << ",h\n";
    Json rows = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double sp = static_cast<double>(i) / static_cast<double>(pts.size() - 1);
        Json r = Json::object();
        r["index"] = i;
        r["s"] = sp;
        r["controls"] = controls_json(pts[i]);
        rows.push_back(std::move(r));
        csv << i << "," << fmt(sp);
        for (const auto &n : names) {
            csv << "," << fmt(pts[i].phis.at(n));
        }
        csv << "," << fmt(pts[i].h) << "\n";
    }
    doc["points"] = std::move(rows);
    return {doc.dump(2) + "\n", csv.str()};
}

void parse_junctions(Reader &rd, const Json &root, Scenario &s) {
    const std::vector<std::string> labels = junction_labels(s.block);
    for (const auto &l : labels) {
        s.junctions[l] = JunctionParams{};
    }
    const Json *js = rd.object(root, "junctions", "scenario");
    if (js == nullptr) {
        return;
    }
    for (const auto &[k, v] : js->items()) {
        if (std::find(labels.begin(), labels.end(), k) == labels.end()) {
            rd.error("junctions: '" + k + "' is not a junction of the " + std::string(block_kind_name(s.block)) + " block");
            continue;
        }
        if (!v.is_object()) {
            rd.error("junctions." + k + " must be an object");
            continue;
        }
        rd.allow_keys(v, "junctions." + k, {"e_j", "gamma"});
        JunctionParams p;
        p.e_j = rd.number(v, "e_j", "junctions." + k).value_or(1.0);
        p.gamma = rd.number(v, "gamma", "junctions." + k).value_or(1.0);
        try {
            validate(p);
        } catch (const std::exception &e) {
            rd.error("junctions." + k + ": " + e.what());
        }
        s.junctions[k] = p;
    }
}

}  // namespace

const char *subcommand_name(Subcommand sub) {
    for (const auto &i : kSubs) {
        if (i.sub == sub) {
            return i.name;
        }
    }
    return "?";
}

std::optional<Subcommand> parse_subcommand(std::string_view name) {
    for (const auto &i : kSubs) {
        if (name == i.name) {
            return i.sub;
        }
    }
    return std::nullopt;
}

Scenario parse_scenario(std::string_view text, Subcommand sub) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const std::exception &e) {
        throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ValidationError("scenario must be a JSON object");
    }
    Reader rd;
    Scenario s;
    rd.allow_keys(root, "scenario",
                  {"units", "block", "encoding", "junctions", "bias", "coupling_e_c", "parked", "loop", "schedule",
                   "scramble_seed", "budget", "grid", "comment"});

    auto units = rd.string(root, "units", "scenario");
    if (!units) {
        rd.error("scenario.units is required (supported: \"E_J\")");
    } else if (*units != "E_J") {
        rd.error("scenario.units '" + *units + "' is not supported (supported: \"E_J\")");
    } else {
        s.units = *units;
    }

    // block and encoding
    auto enc = rd.string(root, "encoding", "scenario");
    auto block = rd.string(root, "block", "scenario");
    std::optional<BlockKind> bk;
    if (block) {
        bk = parse_block(*block);
        if (!bk) {
            rd.error("scenario.block '" + *block + "' must be one of Z, X, CZ");
        }
    }
    switch (sub) {
        case Subcommand::GateZ:
            s.encoding = enc.value_or("single-box");
            if (s.encoding != "single-box" && s.encoding != "two-box") {
                rd.error("gate-z: encoding must be \"single-box\" or \"two-box\"");
            }
            s.block = s.encoding == "two-box" ? BlockKind::X : BlockKind::Z;
            if (bk && *bk != s.block) {
                rd.error("gate-z with the " + s.encoding + " encoding runs on the " + block_kind_name(s.block) + " block");
            }
            break;
        case Subcommand::GateX:
            s.encoding = enc.value_or("two-box");
            if (s.encoding != "two-box") {
                rd.error("gate-x requires the two-box encoding");
            }
            s.block = BlockKind::X;
            if (bk && *bk != BlockKind::X) {
                rd.error("gate-x runs on the X block");
            }
            break;
        case Subcommand::GateCZ:
            s.encoding = enc.value_or("single-box");
            if (s.encoding != "single-box") {
                rd.error("gate-cz supports the single-box encoding only");
            }
            s.block = BlockKind::CZ;
            if (bk && *bk != BlockKind::CZ) {
                rd.error("gate-cz runs on the CZ block");
            }
            break;
        case Subcommand::LzScan:
        case Subcommand::LoopDump:
            if (!block) {
                rd.error(std::string(subcommand_name(sub)) + ": scenario.block is required");
            }
            s.block = bk.value_or(BlockKind::Z);
            s.encoding = enc.value_or(s.block == BlockKind::X ? "two-box" : "single-box");
            break;
        case Subcommand::Fidelity:
            s.block = bk.value_or(BlockKind::Z);
            s.encoding = enc.value_or("single-box");
            break;
    }

    if (sub != Subcommand::Fidelity) {
        parse_junctions(rd, root, s);

        // bias
        const Json *bias = rd.object(root, "bias", "scenario");
        if (bias != nullptr) {
            rd.allow_keys(*bias, "bias", {"h", "n_g", "e_c"});
            auto h = rd.number(*bias, "h", "bias");
            auto ng = rd.number(*bias, "n_g", "bias");
            auto ec = rd.number(*bias, "e_c", "bias");
            if (h && (ng || ec)) {
                rd.error("bias: give either h or (n_g, e_c), not both");
            } else if (ng || ec) {
                if (!ng || !ec) {
                    rd.error("bias: n_g and e_c must be given together");
                } else if (!(*ec > 0)) {
                    rd.error("bias.e_c must be > 0");
                } else {
                    s.base = ControlSettings::from_gate_charge({}, *ng, *ec);
                }
            } else if (h) {
                s.base.h = *h;
            }
        }

        if (s.block == BlockKind::CZ) {
            auto ec = rd.number(root, "coupling_e_c", "scenario");
            if (!ec) {
                rd.error("gate-cz: scenario.coupling_e_c (charging energy of the coupling) is required");
            } else if (!(*ec > 0)) {
                rd.error("scenario.coupling_e_c must be > 0");
            } else {
                s.coupling_e_c = *ec;
            }
        } else if (root.contains("coupling_e_c")) {
            rd.error("scenario.coupling_e_c only applies to the CZ block");
        }

        for (const auto &l : junction_labels(s.block)) {
            s.base.phis[l] = 0;
        }
        const bool two_box_z = sub == Subcommand::GateZ && s.encoding == "two-box";
        if (two_box_z) {
            s.base.phis["J2"] = kHalfPi;
        }
        if (const Json *parked = rd.object(root, "parked", "scenario")) {
            for (const auto &[k, v] : parked->items()) {
                if (!s.base.phis.count(k)) {
                    rd.error("parked: '" + k + "' is not a junction of the block");
                } else if (!v.is_number()) {
                    rd.error("parked." + k + " must be a number");
                } else {
                    s.base.phis[k] = v.get<double>();
                }
            }
        }

        // loop
        s.loop_shape = default_shape(s.block);
        if (two_box_z) {
            s.labels = {"J1", "J3"};
        }
        if (const Json *lp = rd.object(root, "loop", "scenario")) {
            rd.allow_keys(*lp, "loop", {"shape", "phi1_star", "phi2_star", "phi_star", "samples", "labels", "vertices"});
            if (auto shape = rd.string(*lp, "shape", "loop")) {
                if (*shape != "Z_RECT" && *shape != "X_PATH" && *shape != "CZ_RECT" && *shape != "explicit") {
                    rd.error("loop.shape '" + *shape + "' must be Z_RECT, X_PATH, CZ_RECT or explicit");
                } else {
                    s.loop_shape = *shape;
                }
            }
            if (auto ps = rd.number(*lp, "phi_star", "loop")) {
                s.corners.phi1_star = s.corners.phi2_star = *ps;
            }
            if (auto p1 = rd.number(*lp, "phi1_star", "loop")) {
                s.corners.phi1_star = *p1;
            }
            if (auto p2 = rd.number(*lp, "phi2_star", "loop")) {
                s.corners.phi2_star = *p2;
            }
            if (auto n = rd.number(*lp, "samples", "loop")) {
                if (*n != std::floor(*n) || *n < 1 || *n > 1e8) {
                    rd.error("loop.samples must be a positive integer");
                } else {
                    s.samples = static_cast<int>(*n);
                }
            }
            if (lp->contains("labels")) {
                const Json &l = lp->at("labels");
                if (!l.is_array() || l.size() != 2 || !l[0].is_string() || !l[1].is_string()) {
                    rd.error("loop.labels must be a pair of junction labels");
                } else {
                    s.labels = {l[0].get<std::string>(), l[1].get<std::string>()};
                }
            }
            if (lp->contains("vertices")) {
                const Json &v = lp->at("vertices");
                if (!v.is_array()) {
                    rd.error("loop.vertices must be an array of {junction: flux} objects");
                } else {
                    for (const auto &pt : v) {
                        std::map<std::string, double> m;
                        if (!pt.is_object()) {
                            rd.error("loop.vertices entries must be objects");
                            break;
                        }
                        for (const auto &[k, x] : pt.items()) {
                            if (!s.base.phis.count(k)) {
                                rd.error("loop.vertices: '" + k + "' is not a junction of the block");
                            } else if (!x.is_number()) {
                                rd.error("loop.vertices." + k + " must be a number");
                            } else {
                                m[k] = x.get<double>();
                            }
                        }
                        s.vertices.push_back(std::move(m));
                    }
                }
            }
        }
        for (const auto &l : {s.labels.first, s.labels.second}) {
            if (!s.base.phis.count(l)) {
                rd.error("loop.labels: '" + l + "' is not a junction of the block");
            }
        }
        if (s.loop_shape == "explicit") {
            if (s.vertices.size() < 3) {
                rd.error("explicit loops need at least 3 vertices");
            }
        } else {
            if (!s.vertices.empty()) {
                rd.error("loop.vertices only apply to the explicit shape");
            }
            for (double v : {s.corners.phi1_star, s.corners.phi2_star}) {
                if (!(v >= 0 && v <= kHalfPi)) {
                    rd.error("loop corner angles must lie in [0, pi/2]");
                    break;
                }
            }
            if (s.samples < 64) {
                rd.error("standard loops need at least 64 samples");
            }
            const std::string expect = default_shape(s.block);
            if (s.loop_shape != expect && !(s.block == BlockKind::X && s.loop_shape == "Z_RECT")) {
                rd.error("loop.shape " + s.loop_shape + " does not fit the " + block_kind_name(s.block) + " block");
            }
        }
        if (sub == Subcommand::GateX) {
            if (s.loop_shape != "X_PATH") {
                rd.error("gate-x needs the X_PATH loop");
            }
            if (s.corners.phi1_star != s.corners.phi2_star) {
                rd.error("gate-x: the closed form needs phi1_star == phi2_star");
            }
            if (s.junctions["J3"].gamma == 1) {
                rd.error("gate-x: J3 needs gamma != 1 for a non-trivial rotation angle");
            }
        }
        if ((sub == Subcommand::GateZ || sub == Subcommand::GateCZ) && s.loop_shape == "explicit") {
            rd.error(std::string(subcommand_name(sub)) + ": the closed-form comparison needs the standard rectangle");
        }
    }

    // schedule
    if (const Json *sc = rd.object(root, "schedule", "scenario")) {
        rd.allow_keys(*sc, "schedule", {"eta_over_gap", "etas", "tau_op", "dt_max", "profile", "min_steps"});
        s.eta_over_gap = rd.numbers(*sc, "eta_over_gap", "schedule");
        s.etas = rd.numbers(*sc, "etas", "schedule");
        s.tau_op = rd.number(*sc, "tau_op", "schedule");
        for (double v : s.eta_over_gap) {
            if (!(v > 0)) {
                rd.error("schedule.eta_over_gap values must be > 0");
                break;
            }
        }
        for (double v : s.etas) {
            if (!(v > 0)) {
                rd.error("schedule.etas values must be > 0");
                break;
            }
        }
        if (s.tau_op && !(*s.tau_op > 0)) {
            rd.error("schedule.tau_op must be > 0");
        }
        if (auto dt = rd.number(*sc, "dt_max", "schedule")) {
            if (!(*dt > 0)) {
                rd.error("schedule.dt_max must be > 0");
            } else {
                s.schedule.dt_max = *dt;
            }
        }
        if (auto ms = rd.number(*sc, "min_steps", "schedule")) {
            if (*ms != std::floor(*ms) || *ms < 1 || *ms > 1e9) {
                rd.error("schedule.min_steps must be a positive integer");
            } else {
                s.schedule.min_steps = static_cast<int>(*ms);
            }
        }
        if (auto pr = rd.string(*sc, "profile", "schedule")) {
            try {
                s.schedule.profile = parse_ramp_profile(*pr);
            } catch (const std::exception &e) {
                rd.error(std::string("schedule.profile: ") + e.what());
            }
        }
    }
    if (sub == Subcommand::LzScan && s.eta_over_gap.empty() && s.etas.empty() && !s.tau_op) {
        rd.error("lz-scan: schedule needs eta_over_gap, etas or tau_op");
    }

    if (root.contains("scramble_seed")) {
        const Json &v = root.at("scramble_seed");
        if (!v.is_number_unsigned()) {
            rd.error("scenario.scramble_seed must be a non-negative integer");
        } else {
            s.scramble_seed = v.get<std::uint64_t>();
        }
    }

    // budget
    if (const Json *b = rd.object(root, "budget", "scenario")) {
        rd.allow_keys(*b, "budget",
                      {"delta", "eta", "tau_op", "delta_e", "delta_s", "e_c", "temperature", "qp_prefactor", "p",
                       "delta_phi"});
        ErrorBudget &eb = s.budget;
        eb.delta = rd.number(*b, "delta", "budget").value_or(eb.delta);
        eb.tau_op = rd.number(*b, "tau_op", "budget").value_or(eb.tau_op);
        eb.eta = rd.number(*b, "eta", "budget").value_or(1 / eb.tau_op);
        eb.delta_e = rd.number(*b, "delta_e", "budget").value_or(eb.delta_e);
        eb.delta_s = rd.number(*b, "delta_s", "budget").value_or(eb.delta_s);
        eb.e_c = rd.number(*b, "e_c", "budget").value_or(eb.e_c);
        eb.temperature = rd.number(*b, "temperature", "budget").value_or(eb.temperature);
        eb.qp_prefactor = rd.number(*b, "qp_prefactor", "budget").value_or(eb.qp_prefactor);
        s.budget_p = rd.number(*b, "p", "budget");
        s.budget_delta_phi = rd.number(*b, "delta_phi", "budget");
        if (s.budget_p && !(*s.budget_p >= 0 && *s.budget_p <= 1)) {
            rd.error("budget.p must lie in [0, 1]");
        }
    } else {
        s.budget.eta = 1 / s.budget.tau_op;
    }
    for (const auto &m : s.budget.check()) {
        if (m.rfind("warning", 0) != 0) {
            rd.error("budget." + m);
        }
    }
    if (const Json *g = rd.object(root, "grid", "scenario")) {
        rd.allow_keys(*g, "grid", {"p", "delta_phi"});
        s.grid_p = rd.numbers(*g, "p", "grid");
        s.grid_delta_phi = rd.numbers(*g, "delta_phi", "grid");
        for (double p : s.grid_p) {
            if (!(p >= 0 && p <= 1)) {
                rd.error("grid.p values must lie in [0, 1]");
                break;
            }
        }
        if (s.grid_p.empty() != s.grid_delta_phi.empty()) {
            rd.error("grid needs both p and delta_phi");
        }
    }

    // module-level preconditions on the assembled model
    if (rd.errors.empty() && sub != Subcommand::Fidelity) {
        try {
            BlockLayout layout = scenario_layout(s);
            layout.validate();
            ParameterLoop loop = scenario_loop(s);
            loop.validate(layout);
        } catch (const std::exception &e) {
            rd.error(e.what());
        }
    }

    if (!rd.errors.empty()) {
        std::string msg = std::to_string(rd.errors.size()) + " validation error(s):";
        for (const auto &e : rd.errors) {
            msg += "\n  - " + e;
        }
        throw ValidationError(msg);
    }
    return s;
}

std::string scenario_json(const Scenario &s, Subcommand sub) {
    Json j = Json::object();
    j["units"] = s.units;
    j["block"] = block_kind_name(s.block);
    j["encoding"] = s.encoding;
    if (sub != Subcommand::Fidelity) {
        Json js = Json::object();
        for (const auto &[k, p] : s.junctions) {
            js[k] = Json{{"e_j", p.e_j}, {"gamma", p.gamma}};
        }
        j["junctions"] = std::move(js);
        j["bias"] = Json{{"h", s.base.h}};
        if (s.coupling_e_c) {
            j["coupling_e_c"] = *s.coupling_e_c;
        }
        Json parked = Json::object();
        for (const auto &[k, v] : s.base.phis) {
            parked[k] = v;
        }
        j["parked"] = std::move(parked);
        Json lp = Json::object();
        lp["shape"] = s.loop_shape;
        lp["samples"] = s.samples;
        lp["labels"] = Json::array({s.labels.first, s.labels.second});
        if (s.loop_shape == "explicit") {
            Json vs = Json::array();
            for (const auto &v : s.vertices) {
                Json o = Json::object();
                for (const auto &[k, x] : v) {
                    o[k] = x;
                }
                vs.push_back(std::move(o));
            }
            lp["vertices"] = std::move(vs);
        } else {
            lp["phi1_star"] = s.corners.phi1_star;
            lp["phi2_star"] = s.corners.phi2_star;
        }
        j["loop"] = std::move(lp);
    }
    Json sc = Json::object();
    sc["eta_over_gap"] = s.eta_over_gap;
    sc["etas"] = s.etas;
    if (s.tau_op) {
        sc["tau_op"] = *s.tau_op;
    }
    sc["dt_max"] = s.schedule.dt_max;
    sc["min_steps"] = s.schedule.min_steps;
    sc["profile"] = ramp_profile_name(s.schedule.profile);
    j["schedule"] = std::move(sc);
    if (s.scramble_seed) {
        j["scramble_seed"] = *s.scramble_seed;
    }
    Json b = Json::object();
    b["delta"] = s.budget.delta;
    b["eta"] = s.budget.eta;
    b["tau_op"] = s.budget.tau_op;
    b["delta_e"] = s.budget.delta_e;
    b["delta_s"] = s.budget.delta_s;
    b["e_c"] = s.budget.e_c;
    b["temperature"] = s.budget.temperature;
    b["qp_prefactor"] = s.budget.qp_prefactor;
    if (s.budget_p) {
        b["p"] = *s.budget_p;
    }
    if (s.budget_delta_phi) {
        b["delta_phi"] = *s.budget_delta_phi;
    }
    j["budget"] = std::move(b);
    if (!s.grid_p.empty()) {
        j["grid"] = Json{{"p", s.grid_p}, {"delta_phi", s.grid_delta_phi}};
    }
    return j.dump();
}

BlockLayout scenario_layout(const Scenario &s) {
    auto jp = [&](const char *l) {
        auto it = s.junctions.find(l);
        return it == s.junctions.end() ? JunctionParams{} : it->second;
    };
    switch (s.block) {
        case BlockKind::Z:
            return BlockLayout::z_block(jp("J1"), jp("J2"));
        case BlockKind::X:
            return BlockLayout::x_block(jp("J1"), jp("J2"), jp("J3"));
        case BlockKind::CZ:
            return BlockLayout::cz_block(jp("J1"), jp("J2"), jp("J1'"), jp("J2'"), s.coupling_e_c.value_or(0.0));
        case BlockKind::Prototype:
            break;
    }
    throw ValidationError("scenarios support the Z, X and CZ blocks");
}

ParameterLoop scenario_loop(const Scenario &s) {
    if (s.loop_shape == "explicit") {
        std::vector<LoopSegment> segs;
        const int n = static_cast<int>(s.vertices.size()) - 1;
        const int per = std::max(1, s.samples / std::max(1, n));
        for (int i = 0; i < n; ++i) {
            ControlSettings a = s.base;
            ControlSettings b = s.base;
            for (const auto &[k, v] : s.vertices[static_cast<std::size_t>(i)]) {
                a.phis[k] = v;
            }
            for (const auto &[k, v] : s.vertices[static_cast<std::size_t>(i) + 1]) {
                b.phis[k] = v;
            }
            segs.push_back({a, b, Interp::Flux, per});
        }
        return ParameterLoop(std::move(segs), "explicit", "vertices in listed order");
    }
    LoopKind kind = s.loop_shape == "X_PATH" ? LoopKind::XPath : s.loop_shape == "CZ_RECT" ? LoopKind::CZRect : LoopKind::ZRect;
    return standard_loop(kind, s.corners, s.samples, s.base, s.labels);
}

RunOutput run_scenario(Subcommand sub, const Scenario &scenario) {
    switch (sub) {
        case Subcommand::GateZ:
        case Subcommand::GateX:
        case Subcommand::GateCZ:
            return run_gate(sub, scenario);
        case Subcommand::LzScan:
            return run_lz(scenario);
        case Subcommand::Fidelity:
            return run_fidelity(scenario);
        case Subcommand::LoopDump:
            return run_dump(scenario);
    }
    throw ValidationError("unknown subcommand");
}

std::vector<std::string> validate_result(std::string_view json_text, Subcommand sub, const Scenario &scenario) {
    std::vector<std::string> out;
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const std::exception &e) {
        out.push_back(std::string("result is not valid JSON: ") + e.what());
        return out;
    }
    auto need = [&](const char *key) {
        if (!doc.contains(key)) {
            out.push_back(std::string("missing key '") + key + "'");
            return false;
        }
        return true;
    };
    if (need("schema") && doc["schema"] != kSchema) {
        out.push_back("schema is not " + std::string(kSchema));
    }
    if (need("subcommand") && doc["subcommand"] != subcommand_name(sub)) {
        out.push_back("subcommand mismatch");
    }
    if (need("scenario")) {
        if (doc["scenario"].dump() != Json::parse(scenario_json(scenario, sub)).dump()) {
            out.push_back("echoed scenario differs from the emitting scenario");
        }
        try {
            Scenario again = parse_scenario(doc["scenario"].dump(), sub);
            if (scenario_json(again, sub) != scenario_json(scenario, sub)) {
                out.push_back("echoed scenario does not re-parse to the same scenario");
            }
        } catch (const std::exception &e) {
            out.push_back(std::string("echoed scenario fails validation: ") + e.what());
        }
    }
    need("metadata");
    auto check_gate = [&](const Json &g, const std::string &where, Eigen::Index dim) {
        auto m = matrix_from_json(g);
        if (!m) {
            out.push_back(where + " is not a matrix of [re, im] pairs");
            return;
        }
        if (m->rows() != dim || m->cols() != dim) {
            out.push_back(where + " has the wrong shape");
            return;
        }
        if ((m->adjoint() * *m - CMatrix::Identity(dim, dim)).norm() > 1e-6) {
            out.push_back(where + " is not unitary");
        }
    };
    switch (sub) {
        case Subcommand::GateZ:
        case Subcommand::GateX:
        case Subcommand::GateCZ: {
            const Eigen::Index dim = sub == Subcommand::GateCZ ? 4 : 2;
            if (need("closed_form") && doc["closed_form"].contains("gate")) {
                check_gate(doc["closed_form"]["gate"], "closed_form.gate", dim);
            }
            if (need("wilson_loop")) {
                check_gate(doc["wilson_loop"]["gate"], "wilson_loop.gate", dim);
            }
            if (need("dynamics")) {
                for (std::size_t i = 0; i < doc["dynamics"].size(); ++i) {
                    const Json &d = doc["dynamics"][i];
                    if (!d.contains("gate")) {
                        out.push_back("dynamics entry without a gate");
                        continue;
                    }
                    auto m = matrix_from_json(d["gate"]);
                    if (!m || m->rows() != dim || m->cols() != dim) {
                        out.push_back("dynamics[" + std::to_string(i) + "].gate has the wrong shape");
                    }
                }
            }
            if (need("distances")) {
                for (const auto &d : doc["distances"]) {
                    if (!d.contains("distance") || !d["distance"].is_number() || d["distance"].get<double>() < 0) {
                        out.push_back("distance entries need a non-negative distance");
                        break;
                    }
                }
            }
            break;
        }
        case Subcommand::LzScan:
            if (need("rows")) {
                double prev = std::numeric_limits<double>::infinity();
                for (const auto &r : doc["rows"]) {
                    if (!r.contains("eta") || !r.contains("leakage")) {
                        out.push_back("lz-scan rows need eta and leakage");
                        break;
                    }
                    double eta = r["eta"].get<double>();
                    if (!(eta < prev)) {
                        out.push_back("lz-scan rows are not sorted by descending eta");
                    }
                    prev = eta;
                    double leak = r["leakage"].get<double>();
                    if (!(leak >= 0 && leak <= 1)) {
                        out.push_back("leakage outside [0, 1]");
                    }
                }
            }
            need("fit");
            break;
        case Subcommand::Fidelity:
            if (need("budget_result")) {
                double f = doc["budget_result"].value("fidelity", -1.0);
                if (!(f >= 0 && f <= 1)) {
                    out.push_back("fidelity outside [0, 1]");
                }
            }
            need("channels");
            break;
        case Subcommand::LoopDump:
            if (need("points") && doc["points"].size() < 2) {
                out.push_back("loop-dump needs at least two points");
            }
            break;
    }
    return out;
}

}  // namespace holosim
