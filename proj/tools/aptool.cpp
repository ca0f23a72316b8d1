// aptool: command-line front door for the Folner-geometry / quasi-tiling /
// repetitivity / spectral toolkit. One command per process; outputs are
// byte-identical for identical (config, seed).

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "aperiodic/averages.hpp"
#include "aperiodic/coloring.hpp"
#include "aperiodic/group.hpp"
#include "aperiodic/heisenberg.hpp"
#include "aperiodic/io.hpp"
#include "aperiodic/patch.hpp"
#include "aperiodic/quasi_tiling.hpp"
#include "aperiodic/repetitivity.hpp"
#include "aperiodic/spectral.hpp"
#include "aperiodic/weights.hpp"

namespace {

using aperiodic::Coloring;
using aperiodic::Elem;
using aperiodic::FolnerSchedule;
using aperiodic::Group;
using aperiodic::Region;
using nlohmann::json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    std::size_t cap_elements = Group::kDefaultElementCap;
    std::string out = "-";
};

std::filesystem::path schema_dir() {
    // Schemas live next to the binary's source tree root; fall back to cwd.
    for (const auto& base : {std::filesystem::path(APTOOL_SCHEMA_DIR), std::filesystem::path("schemas")}) {
        if (std::filesystem::exists(base)) return base;
    }
    return std::filesystem::path("schemas");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw aperiodic::SchemaError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw aperiodic::SchemaError("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

void validate_with_shipped_schema(const json& value, const std::string& schema_name) {
    const auto path = schema_dir() / schema_name;
    if (!std::filesystem::exists(path)) return; // schemas are optional at runtime
    aperiodic::validate_against_schema(value, load_json_file(path.string()));
}

/// All output is buffered and written in one shot; a failing run leaves no
/// partial files behind.
void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out, std::ios::binary | std::ios::trunc);
    if (!out) throw aperiodic::DomainError("cannot write '" + g.out + "'");
    out << text;
}

void emit_secondary(const GlobalOpts& g, const std::string& suffix, const std::string& text) {
    if (g.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out + suffix, std::ios::binary | std::ios::trunc);
    if (!out) throw aperiodic::DomainError("cannot write '" + g.out + suffix + "'");
    out << text;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    if (text.empty()) return out;
    // "lo:hi" expands to the inclusive range; otherwise comma separated.
    const auto colon = text.find(':');
    if (colon != std::string::npos && text.find(',') == std::string::npos) {
        const std::int64_t lo = std::stoll(text.substr(0, colon));
        const std::int64_t hi = std::stoll(text.substr(colon + 1));
        for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    return out;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<std::string> parse_string_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

Region z_window(std::int64_t length) {
    std::vector<Elem> elems;
    for (std::int64_t i = 0; i < length; ++i) elems.push_back(aperiodic::elem(i));
    return Region(std::move(elems));
}

// ---------------------------------------------------------------------------
// Parameter blocks, shared between flags and --config files.
// ---------------------------------------------------------------------------

Coloring coloring_from_params(const json& p, std::size_t cap) {
    const std::string spec = p.value("coloring", "fibonacci");
    std::vector<std::string> alphabet =
        parse_string_list(p.value("alphabet", std::string("a,b")));
    std::vector<double> iota = parse_real_list(p.value("iota", std::string("1,2")));
    if (spec == "fibonacci" || spec == "thue_morse") {
        const auto length = p.value("length", std::int64_t{10000});
        if (static_cast<std::size_t>(length) > cap)
            throw aperiodic::ResourceError("coloring window exceeds the element cap");
        return spec == "fibonacci"
                   ? aperiodic::make_fibonacci_coloring(static_cast<std::size_t>(length), iota)
                   : aperiodic::make_thue_morse_coloring(static_cast<std::size_t>(length), iota);
    }
    const Group g = aperiodic::group_from_name(p.value("group", std::string("z1")));
    if (spec == "constant") {
        Region window = g.kind() == aperiodic::GroupKind::ZD && g.dim() == 1 && p.contains("length")
                            ? z_window(p.value("length", std::int64_t{1000}))
                            : g.word_ball(p.value("window_radius", std::int64_t{6}),
                                          g.identity(), cap);
        if (alphabet.empty()) throw aperiodic::SchemaError("constant coloring needs an alphabet");
        return aperiodic::make_constant_coloring(g, window, alphabet, iota, 0);
    }
    if (spec == "periodic") {
        const auto periods = parse_int_list(p.value("periods", std::string("2")));
        const auto pattern64 = parse_int_list(p.value("pattern", std::string("0,1")));
        std::vector<int> pattern;
        for (auto v : pattern64) pattern.push_back(static_cast<int>(v));
        Region window = g.dim() == 1 && p.contains("length")
                            ? z_window(p.value("length", std::int64_t{1000}))
                            : g.word_ball(p.value("window_radius", std::int64_t{6}),
                                          g.identity(), cap);
        return aperiodic::make_periodic_coloring(g, window, periods, pattern, alphabet, iota);
    }
    if (spec == "explicit") {
        const json file = load_json_file(p.at("coloring_file").get<std::string>());
        validate_with_shipped_schema(file, "coloring.schema.json");
        return aperiodic::coloring_from_json(file);
    }
    throw aperiodic::SchemaError("unknown coloring spec '" + spec + "'");
}

FolnerSchedule schedule_from_params(const Group& g, const json& p, std::size_t cap) {
    const std::string kind = p.value("schedule", std::string("balls"));
    if (kind == "balls")
        return FolnerSchedule::word_balls(g, parse_int_list(p.value("radii", std::string("1:12"))),
                                          cap);
    if (kind == "intervals")
        return FolnerSchedule::centered_intervals(
            g, parse_int_list(p.value("sizes", std::string("100,200,400"))));
    if (kind == "prefixes")
        return FolnerSchedule::prefix_intervals(
            g, parse_int_list(p.value("sizes", std::string("100,200,400"))));
    throw aperiodic::SchemaError("unknown schedule '" + kind + "'");
}

aperiodic::HoppingOperator operator_from_params(const Coloring& c, const json& p) {
    const Group& g = c.group();
    json spec;
    if (p.contains("operator_file")) {
        spec = load_json_file(p.at("operator_file").get<std::string>());
        validate_with_shipped_schema(spec, "operator.schema.json");
    } else {
        spec["kind"] = p.value("operator", std::string("adjacency"));
        spec["params"] = json::object();
        if (p.contains("hopping")) spec["params"]["hopping"] = p.at("hopping");
        if (p.contains("coupling")) spec["params"]["coupling"] = p.at("coupling");
    }
    const std::string kind = spec.at("kind").get<std::string>();
    const json params = spec.value("params", json::object());
    aperiodic::HoppingOperator H;
    if (kind == "table") {
        std::vector<aperiodic::TableKernelEntry> entries;
        const int fiber = spec.value("fiber_dim", 1);
        for (const auto& row : spec.at("entries")) {
            aperiodic::TableKernelEntry e;
            const auto rel = row.at("rel").get<std::vector<std::int64_t>>();
            for (std::size_t i = 0; i < rel.size() && i < 3; ++i) e.rel.c[i] = rel[i];
            for (const auto& sym : row.at("colors_g"))
                e.colors_g.push_back(c.symbol_index(sym.get<std::string>()));
            for (const auto& sym : row.at("colors_h"))
                e.colors_h.push_back(c.symbol_index(sym.get<std::string>()));
            if (row.contains("value")) {
                e.block = {row.at("value").get<double>()};
            } else {
                e.block = row.at("block").get<std::vector<double>>();
            }
            entries.push_back(std::move(e));
        }
        return aperiodic::make_table_operator(g, spec.value("M", 2), spec.value("N", 1), fiber,
                                              std::move(entries));
    }
    if (kind == "adjacency") {
        H = aperiodic::make_adjacency_operator(g, params.value("hopping", 1.0));
    } else if (kind == "potential") {
        H = aperiodic::make_potential_operator(g, params.value("coupling", 1.0));
    } else if (kind == "schrodinger") {
        H = aperiodic::make_schrodinger_operator(g, params.value("hopping", 1.0),
                                                 params.value("coupling", 1.0));
    } else {
        throw aperiodic::SchemaError("unknown operator kind '" + kind + "'");
    }
    if (spec.contains("M")) H.hop_range = spec.at("M").get<int>();
    if (spec.contains("N")) H.invariance_radius = spec.at("N").get<int>();
    if (spec.contains("fiber_dim") && spec.at("fiber_dim").get<int>() != 1)
        throw aperiodic::SchemaError("built-in operators have fiber dimension 1");
    return H;
}

aperiodic::WeightFunction weight_from_params(const Coloring& c, const json& p) {
    const std::string kind = p.value("weight", std::string("wf-letter"));
    if (kind == "count") return aperiodic::weight_count(c);
    if (kind == "wf-letter")
        return aperiodic::weight_wf(
            aperiodic::letter_indicator(c, p.value("letter", std::string("a"))));
    throw aperiodic::SchemaError("unknown weight '" + kind + "' (use wf-letter or count)");
}

void stamp_meta(aperiodic::CsvWriter& csv, const json& config) {
    csv.add_meta("tool_version", aperiodic::kToolVersion);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(aperiodic::config_hash(config)));
    csv.add_meta("config_hash", buf);
}

// The hashed identity of a run is (command, params, seed). Worker counts and
// resource caps steer execution but never the result, so they stay out.
json base_config(const std::string& command, const json& params, const GlobalOpts& g) {
    json config;
    config["command"] = command;
    config["params"] = params;
    if (g.seed_set) config["seed"] = g.seed;
    return config;
}

// ---------------------------------------------------------------------------
// Command bodies. Each takes the parameter JSON (from flags or config file).
// ---------------------------------------------------------------------------

void run_ball(const json& p, const GlobalOpts& g) {
    const Group grp = aperiodic::group_from_name(p.value("group", std::string("z1")));
    const auto center_coords = parse_int_list(p.value("center", std::string("0")));
    Elem center{};
    for (std::size_t i = 0; i < center_coords.size() && i < 3; ++i) center.c[i] = center_coords[i];
    const Region ball =
        grp.word_ball(p.value("radius", std::int64_t{2}), center, g.cap_elements);
    json out;
    out["group"] = grp.name();
    out["radius"] = p.value("radius", std::int64_t{2});
    out["size"] = ball.size();
    out["elements"] = aperiodic::region_to_json(ball, grp.dim());
    out["config_hash"] = aperiodic::config_hash(base_config("ball", p, g));
    out["tool_version"] = aperiodic::kToolVersion;
    emit(g, out.dump(2) + "\n");
}

void run_boundary(const json& p, const GlobalOpts& g) {
    const Group grp = aperiodic::group_from_name(p.value("group", std::string("z1")));
    const Region K = grp.word_ball(p.value("k_radius", std::int64_t{1}), grp.identity(),
                                   g.cap_elements);
    const Region T = grp.word_ball(p.value("t_radius", std::int64_t{8}), grp.identity(),
                                   g.cap_elements);
    const bool left = p.value("side", std::string("left")) == "left";
    const Region b = left ? aperiodic::left_boundary(grp, K, T)
                          : aperiodic::right_boundary(grp, K, T);
    json out;
    out["group"] = grp.name();
    out["side"] = left ? "left" : "right";
    out["size"] = b.size();
    out["elements"] = aperiodic::region_to_json(b, grp.dim());
    out["config_hash"] = aperiodic::config_hash(base_config("boundary", p, g));
    out["tool_version"] = aperiodic::kToolVersion;
    emit(g, out.dump(2) + "\n");
}

void run_defect(const json& p, const GlobalOpts& g) {
    const Group grp = aperiodic::group_from_name(p.value("group", std::string("z1")));
    const Region K = grp.word_ball(p.value("k_radius", std::int64_t{1}), grp.identity(),
                                   g.cap_elements);
    const bool left = p.value("side", std::string("left")) == "left";
    aperiodic::CsvWriter csv({"radius", "set_size", "boundary_size", "defect"});
    for (auto r : parse_int_list(p.value("radii", std::string("1:10")))) {
        const Region T = grp.word_ball(r, grp.identity(), g.cap_elements);
        const Region b = left ? aperiodic::left_boundary(grp, K, T)
                              : aperiodic::right_boundary(grp, K, T);
        csv.add_row({aperiodic::CsvWriter::num(r), aperiodic::CsvWriter::num((std::int64_t)T.size()),
                     aperiodic::CsvWriter::num((std::int64_t)b.size()),
                     aperiodic::CsvWriter::num(static_cast<double>(b.size()) /
                                               static_cast<double>(T.size()))});
    }
    stamp_meta(csv, base_config("defect", p, g));
    emit(g, csv.str());
}

void run_tile(const json& p, const GlobalOpts& g) {
    const Group grp = aperiodic::group_from_name(p.value("group", std::string("z1")));
    const double eps = p.value("epsilon", 0.09);
    const FolnerSchedule sched = schedule_from_params(grp, p, g.cap_elements);
    std::optional<double> target;
    if (p.contains("chain_defect")) target = p.at("chain_defect").get<double>();
    const aperiodic::PrototileSet proto =
        aperiodic::select_prototiles(sched, eps, p.value("n", std::size_t{1}), target);
    const Region A =
        grp.word_ball(p.value("region_radius", std::int64_t{100}), grp.identity(), g.cap_elements);
    const aperiodic::QuasiTiling tiling = aperiodic::quasi_tile(A, proto, grp);
    json out = aperiodic::tiling_to_json(tiling, grp.dim());
    out["config_hash"] = aperiodic::config_hash(base_config("tile", p, g));
    out["tool_version"] = aperiodic::kToolVersion;
    validate_with_shipped_schema(out, "tiling.schema.json");
    emit(g, out.dump(2) + "\n");
}

void run_repetitivity(const json& p, const GlobalOpts& g) {
    const Coloring c = coloring_from_params(p, g.cap_elements);
    const FolnerSchedule sched = schedule_from_params(c.group(), p, g.cap_elements);
    const double delta = p.value("delta", 0.0);
    const auto m_max = p.value("m_max", std::size_t{6});
    const auto report = aperiodic::repetitivity_portion(c, sched, delta, m_max);

    aperiodic::CsvWriter csv({"m", "R", "ratio", "certified"});
    for (const auto& e : report.entries) {
        csv.add_row({aperiodic::CsvWriter::num((std::int64_t)e.m),
                     e.certified ? aperiodic::CsvWriter::num((std::int64_t)*e.index)
                                 : std::string("UNCERTIFIED"),
                     e.certified ? aperiodic::CsvWriter::num(e.ratio) : std::string(""),
                     e.certified ? "1" : "0"});
    }
    const json config = base_config("repetitivity", p, g);
    stamp_meta(csv, config);
    csv.add_meta("window_size", aperiodic::CsvWriter::num((std::int64_t)report.window_size));
    emit(g, csv.str());

    json summary;
    summary["delta"] = report.delta;
    summary["zeta"] = report.zeta;
    summary["tempered_evidence"] = report.tempered_evidence;
    summary["window_size"] = report.window_size;
    std::size_t certified_to = 0;
    for (const auto& e : report.entries)
        if (e.certified && e.m == certified_to + 1) certified_to = e.m;
    summary["certified_radius"] = certified_to;
    summary["config_hash"] = aperiodic::config_hash(config);
    summary["tool_version"] = aperiodic::kToolVersion;
    emit_secondary(g, ".summary.json", summary.dump(2) + "\n");
}

void run_frequency(const json& p, const GlobalOpts& g) {
    const Coloring c = coloring_from_params(p, g.cap_elements);
    const FolnerSchedule sched = schedule_from_params(c.group(), p, g.cap_elements);
    const auto m = p.value("m", sched.length());
    const std::string letter = p.value("letter", std::string("a"));
    aperiodic::Patch patch;
    if (p.contains("word") && c.group().kind() == aperiodic::GroupKind::ZD && c.group().dim() == 1) {
        // Consecutive word pattern "ab..." anchored at 0.
        const std::string word = p.at("word").get<std::string>();
        std::vector<Elem> cells;
        for (std::size_t i = 0; i < word.size(); ++i) cells.push_back(aperiodic::elem((std::int64_t)i));
        patch.support = Region(cells);
        for (std::size_t i = 0; i < word.size(); ++i)
            patch.points.emplace_back(aperiodic::elem((std::int64_t)i),
                                      c.iota()[(std::size_t)c.symbol_index(std::string(1, word[i]))]);
    } else {
        patch.support = Region({Elem{}});
        patch.points.emplace_back(Elem{}, c.iota()[(std::size_t)c.symbol_index(letter)]);
    }
    const double freq = aperiodic::pattern_frequency(c, patch, sched, m);
    aperiodic::CsvWriter csv({"m", "volume", "frequency"});
    csv.add_row({aperiodic::CsvWriter::num((std::int64_t)m),
                 aperiodic::CsvWriter::num((std::int64_t)sched.measure(m)),
                 aperiodic::CsvWriter::num(freq)});
    stamp_meta(csv, base_config("frequency", p, g));
    csv.add_meta("window_size", aperiodic::CsvWriter::num((std::int64_t)c.window().size()));
    emit(g, csv.str());
}

void run_density(const json& p, const GlobalOpts& g) {
    const Coloring c = coloring_from_params(p, g.cap_elements);
    const FolnerSchedule sched = schedule_from_params(c.group(), p, g.cap_elements);
    const auto rows = aperiodic::banach_density(c, sched, p.value("m_max", sched.length()));
    aperiodic::CsvWriter csv({"m", "upper", "lower", "gap", "translates"});
    for (const auto& r : rows) {
        csv.add_row({aperiodic::CsvWriter::num((std::int64_t)r.m),
                     aperiodic::CsvWriter::num(r.upper), aperiodic::CsvWriter::num(r.lower),
                     aperiodic::CsvWriter::num(r.gap()),
                     aperiodic::CsvWriter::num((std::int64_t)r.translates)});
    }
    stamp_meta(csv, base_config("density", p, g));
    csv.add_meta("window_size", aperiodic::CsvWriter::num((std::int64_t)c.window().size()));
    emit(g, csv.str());
}

void run_axioms(const json& p, const GlobalOpts& g) {
    if (!g.seed_set) throw aperiodic::SchemaError("axioms: --seed is mandatory");
    const Coloring c = coloring_from_params(p, g.cap_elements);
    const aperiodic::WeightFunction w = weight_from_params(c, p);
    const auto report = aperiodic::test_axioms(w, c, p.value("trials", std::size_t{1000}), g.seed);
    aperiodic::CsvWriter csv({"axiom", "trials", "measured", "declared", "pass"});
    for (const auto& row : report.rows) {
        csv.add_row({row.axiom, aperiodic::CsvWriter::num((std::int64_t)row.trials),
                     aperiodic::CsvWriter::num(row.measured),
                     aperiodic::CsvWriter::num(row.declared), row.pass ? "1" : "0"});
    }
    stamp_meta(csv, base_config("axioms", p, g));
    csv.add_meta("rng", aperiodic::SplitMix64::algorithm);
    csv.add_meta("weight", w.name);
    emit(g, csv.str());
}

void run_converge(const json& p, const GlobalOpts& g) {
    const Coloring c = coloring_from_params(p, g.cap_elements);
    const FolnerSchedule sched = schedule_from_params(c.group(), p, g.cap_elements);
    const aperiodic::WeightFunction w = weight_from_params(c, p);
    const aperiodic::HullPoint x{&c, c.group().identity()};
    const auto report =
        aperiodic::convergence_experiment(w, x, sched, p.value("m_max", sched.length()));
    aperiodic::CsvWriter csv({"m", "sup", "inf", "spread", "translates"});
    for (const auto& r : report.rows) {
        csv.add_row({aperiodic::CsvWriter::num((std::int64_t)r.m), aperiodic::CsvWriter::num(r.sup),
                     aperiodic::CsvWriter::num(r.inf), aperiodic::CsvWriter::num(r.spread),
                     aperiodic::CsvWriter::num((std::int64_t)r.translates)});
    }
    stamp_meta(csv, base_config("converge", p, g));
    csv.add_meta("i_w", aperiodic::CsvWriter::num(report.i_w));
    csv.add_meta("error_bar", aperiodic::CsvWriter::num(report.error_bar));
    csv.add_meta("cauchy", report.cauchy ? "1" : "0");
    csv.add_meta("weight", w.name);
    emit(g, csv.str());
}

void run_ids(const json& p, const GlobalOpts& g) {
    const Coloring c = coloring_from_params(p, g.cap_elements);
    const FolnerSchedule sched = schedule_from_params(c.group(), p, g.cap_elements);
    const aperiodic::HoppingOperator H = operator_from_params(c, p);
    std::vector<std::size_t> m_list;
    for (auto m : parse_int_list(p.value("m", std::string("4,8")))) {
        bool found = false;
        if (sched.is_word_balls()) {
            for (std::size_t i = 1; i <= sched.length(); ++i)
                if (sched.radius(i) == m) {
                    m_list.push_back(i);
                    found = true;
                    break;
                }
        }
        if (!found) m_list.push_back(static_cast<std::size_t>(m));
    }
    const std::function<double(double)> oracle = aperiodic::z_adjacency_ids;
    const bool use_oracle = p.value("oracle", std::string()) == "z-adjacency";
    const auto report = aperiodic::ids_convergence(H, c, sched, m_list,
                                                   use_oracle ? &oracle : nullptr, g.threads);
    aperiodic::CsvWriter csv({"m", "F_size", "interior_size", "sup_dist_prev", "sup_dist_oracle"});
    for (const auto& r : report.rows) {
        csv.add_row({aperiodic::CsvWriter::num((std::int64_t)r.m),
                     aperiodic::CsvWriter::num((std::int64_t)r.f_size),
                     aperiodic::CsvWriter::num((std::int64_t)r.interior_size),
                     aperiodic::CsvWriter::num(r.dist_prev),
                     r.dist_oracle ? aperiodic::CsvWriter::num(*r.dist_oracle) : std::string("")});
    }
    stamp_meta(csv, base_config("ids", p, g));
    csv.add_meta("operator", H.name);
    emit(g, csv.str());
}

void run_heis_volume(const json& p, const GlobalOpts& g) {
    if (!g.seed_set) throw aperiodic::SchemaError("heis-volume: --seed is mandatory");
    const double radius = p.value("radius", 1.0);
    const auto samples = p.value("samples", std::uint64_t{1000000});
    const auto res = aperiodic::mc_ball_volume(radius, samples, g.seed, g.threads);
    const double exact = aperiodic::exact_ball_volume(radius);
    aperiodic::CsvWriter csv({"R", "exact", "estimate", "stderr", "rel_err"});
    csv.add_row({aperiodic::CsvWriter::num(radius), aperiodic::CsvWriter::num(exact),
                 aperiodic::CsvWriter::num(res.estimate),
                 aperiodic::CsvWriter::num(res.standard_error),
                 aperiodic::CsvWriter::num(exact == 0.0 ? 0.0
                                                        : std::fabs(res.estimate - exact) / exact)});
    stamp_meta(csv, base_config("heis-volume", p, g));
    csv.add_meta("rng", res.rng_algorithm);
    csv.add_meta("samples", aperiodic::CsvWriter::num((std::int64_t)samples));
    emit(g, csv.str());
}

void dispatch(const std::string& command, const json& params, const GlobalOpts& g) {
    if (command == "ball") return run_ball(params, g);
    if (command == "boundary") return run_boundary(params, g);
    if (command == "defect") return run_defect(params, g);
    if (command == "tile") return run_tile(params, g);
    if (command == "repetitivity") return run_repetitivity(params, g);
    if (command == "frequency") return run_frequency(params, g);
    if (command == "density") return run_density(params, g);
    if (command == "axioms") return run_axioms(params, g);
    if (command == "converge") return run_converge(params, g);
    if (command == "ids") return run_ids(params, g);
    if (command == "heis-volume") return run_heis_volume(params, g);
    throw aperiodic::SchemaError("unknown command '" + command + "'");
}

// Flag plumbing: every subcommand assembles the same params JSON that a
// --config file would carry, so hashes and behavior agree between the two.
struct FlagBag {
    std::string group = "z1";
    std::string coloring = "fibonacci";
    std::string alphabet = "a,b";
    std::string iota = "1,2";
    std::string coloring_file;
    std::string periods = "2";
    std::string pattern = "0,1";
    std::int64_t length = 10000;
    std::int64_t window_radius = 6;
    std::string schedule = "balls";
    std::string radii = "1:12";
    std::string sizes = "100,200,400";
    std::string side = "left";
    std::string letter = "a";
    std::string word;
    std::string weight = "wf-letter";
    std::string op = "adjacency";
    std::string operator_file;
    std::string oracle;
    std::string m_text = "4,8";
    std::string center = "0";
    std::int64_t radius = 2;
    std::int64_t k_radius = 1;
    std::int64_t t_radius = 8;
    std::int64_t region_radius = 100;
    double epsilon = 0.09;
    double delta = 0.0;
    double chain_defect = -1.0;
    double heis_radius = 1.0;
    double hopping = 1.0;
    double coupling = 1.0;
    std::uint64_t samples = 1000000;
    std::size_t m_max = 6;
    std::size_t m_single = 0;
    std::size_t trials = 1000;
    std::size_t n = 1;
};

void add_coloring_flags(CLI::App* cmd, FlagBag& f) {
    cmd->add_option("--group", f.group, "group model: z1, z2, z3, heis3z");
    cmd->add_option("--coloring", f.coloring,
                    "constant | periodic | fibonacci | thue_morse | explicit");
    cmd->add_option("--alphabet", f.alphabet, "comma-separated symbols");
    cmd->add_option("--iota", f.iota, "comma-separated weights per symbol");
    cmd->add_option("--length", f.length, "window length on Z");
    cmd->add_option("--window-radius", f.window_radius, "ball window radius (non-Z groups)");
    cmd->add_option("--periods", f.periods, "periods per coordinate (periodic)");
    cmd->add_option("--pattern", f.pattern, "symbol indices of one period (periodic)");
    cmd->add_option("--coloring-file", f.coloring_file, "explicit coloring JSON");
}

void add_schedule_flags(CLI::App* cmd, FlagBag& f) {
    cmd->add_option("--schedule", f.schedule, "balls | intervals | prefixes");
    cmd->add_option("--radii", f.radii, "ball radii: lo:hi or comma list");
    cmd->add_option("--sizes", f.sizes, "interval sizes (Z), comma list");
}

json coloring_params(const FlagBag& f, const CLI::App* cmd) {
    json p;
    p["group"] = f.group;
    p["coloring"] = f.coloring;
    p["alphabet"] = f.alphabet;
    p["iota"] = f.iota;
    // Window choice: an explicit --length wins; otherwise ball windows for the
    // constant/periodic specs, substitution prefixes keep their default.
    if (cmd->count("--length") > 0 || f.coloring == "fibonacci" || f.coloring == "thue_morse")
        p["length"] = f.length;
    p["window_radius"] = f.window_radius;
    if (f.coloring == "periodic") {
        p["periods"] = f.periods;
        p["pattern"] = f.pattern;
    }
    if (!f.coloring_file.empty()) p["coloring_file"] = f.coloring_file;
    return p;
}

json schedule_params(const FlagBag& f, json p) {
    p["schedule"] = f.schedule;
    if (f.schedule == "balls") p["radii"] = f.radii;
    if (f.schedule == "intervals" || f.schedule == "prefixes") p["sizes"] = f.sizes;
    return p;
}

} // namespace


int main(int argc, char** argv) {
    CLI::App app{"Folner geometry, quasi-tilings, repetitivity and IDS experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed (mandatory for stochastic runs)");
    app.add_option("--threads", g.threads, "worker cap; never changes results");
    app.add_option("--cap-elements", g.cap_elements, "global element cap");
    app.add_option("--out", g.out, "output path ('-' = stdout)");

    FlagBag f;

    auto* ball = app.add_subcommand("ball", "word ball enumeration");
    ball->add_option("--group", f.group);
    ball->add_option("--radius", f.radius);
    ball->add_option("--center", f.center, "comma coordinates");

    auto* boundary = app.add_subcommand("boundary", "K-boundary of a ball");
    boundary->add_option("--group", f.group);
    boundary->add_option("--side", f.side, "left | right");
    boundary->add_option("--k-radius", f.k_radius);
    boundary->add_option("--t-radius", f.t_radius);

    auto* defect = app.add_subcommand("defect", "Folner defect table over radii");
    defect->add_option("--group", f.group);
    defect->add_option("--side", f.side);
    defect->add_option("--k-radius", f.k_radius);
    defect->add_option("--radii", f.radii);

    auto* tile = app.add_subcommand("tile", "epsilon-quasi-tiling with verification");
    tile->add_option("--group", f.group);
    tile->add_option("--epsilon", f.epsilon);
    tile->add_option("--region-radius", f.region_radius, "A = ball of this radius");
    tile->add_option("--n", f.n, "base index into the schedule");
    tile->add_option("--chain-defect", f.chain_defect,
                     "prototile chain defect target (default: paper-faithful (eps/16)^2)");
    add_schedule_flags(tile, f);

    auto* rep = app.add_subcommand("repetitivity", "repetitivity index / portion report");
    add_coloring_flags(rep, f);
    add_schedule_flags(rep, f);
    rep->add_option("--delta", f.delta);
    rep->add_option("--m-max", f.m_max);

    auto* freq = app.add_subcommand("frequency", "pattern frequency");
    add_coloring_flags(freq, f);
    add_schedule_flags(freq, f);
    freq->add_option("--m", f.m_single, "schedule index (default: last)");
    freq->add_option("--letter", f.letter);
    freq->add_option("--word", f.word, "consecutive word pattern on Z");

    auto* dens = app.add_subcommand("density", "upper/lower Banach density rows");
    add_coloring_flags(dens, f);
    add_schedule_flags(dens, f);
    dens->add_option("--m-max", f.m_max);

    auto* ax = app.add_subcommand("axioms", "weight-function axiom battery");
    add_coloring_flags(ax, f);
    ax->add_option("--weight", f.weight, "wf-letter | count");
    ax->add_option("--letter", f.letter);
    ax->add_option("--trials", f.trials);

    auto* conv = app.add_subcommand("converge", "envelope convergence experiment");
    add_coloring_flags(conv, f);
    add_schedule_flags(conv, f);
    conv->add_option("--weight", f.weight);
    conv->add_option("--letter", f.letter);
    conv->add_option("--m-max", f.m_max);

    auto* ids = app.add_subcommand("ids", "finite-volume IDS approximants");
    add_coloring_flags(ids, f);
    add_schedule_flags(ids, f);
    ids->add_option("--operator", f.op, "adjacency | potential | schrodinger");
    ids->add_option("--operator-file", f.operator_file, "operator spec JSON");
    ids->add_option("--hopping", f.hopping);
    ids->add_option("--coupling", f.coupling);
    ids->add_option("--m", f.m_text, "radii (ball schedules) or indices, comma list");
    ids->add_option("--oracle", f.oracle, "z-adjacency for the closed-form column");

    auto* heis = app.add_subcommand("heis-volume", "Cygan-Koranyi ball volume Monte Carlo");
    heis->add_option("--radius", f.heis_radius);
    heis->add_option("--samples", f.samples);

    auto* runcfg = app.add_subcommand("run", "execute a JSON experiment config");
    std::string config_path;
    runcfg->add_option("--config", config_path, "config JSON path")->required();

    try {
        app.parse(argc, argv);
        g.seed_set = seed_opt->count() > 0;

        if (runcfg->parsed()) {
            const json config = load_json_file(config_path);
            validate_with_shipped_schema(config, "config.schema.json");
            if (config.contains("seed")) {
                g.seed = config.at("seed").get<std::uint64_t>();
                g.seed_set = true;
            }
            if (config.contains("threads")) g.threads = config.at("threads").get<int>();
            if (config.contains("cap_elements"))
                g.cap_elements = config.at("cap_elements").get<std::size_t>();
            dispatch(config.at("command").get<std::string>(),
                     config.value("params", json::object()), g);
            return 0;
        }

        json p;
        std::string command;
        if (ball->parsed()) {
            command = "ball";
            p["group"] = f.group;
            p["radius"] = f.radius;
            p["center"] = f.center;
        } else if (boundary->parsed()) {
            command = "boundary";
            p["group"] = f.group;
            p["side"] = f.side;
            p["k_radius"] = f.k_radius;
            p["t_radius"] = f.t_radius;
        } else if (defect->parsed()) {
            command = "defect";
            p["group"] = f.group;
            p["side"] = f.side;
            p["k_radius"] = f.k_radius;
            p["radii"] = f.radii;
        } else if (tile->parsed()) {
            command = "tile";
            p["group"] = f.group;
            p["epsilon"] = f.epsilon;
            p["region_radius"] = f.region_radius;
            p["n"] = f.n;
            if (f.chain_defect >= 0.0) p["chain_defect"] = f.chain_defect;
            p = schedule_params(f, p);
        } else if (rep->parsed()) {
            command = "repetitivity";
            p = schedule_params(f, coloring_params(f, rep));
            p["delta"] = f.delta;
            p["m_max"] = f.m_max;
        } else if (freq->parsed()) {
            command = "frequency";
            p = schedule_params(f, coloring_params(f, freq));
            if (f.m_single > 0) p["m"] = f.m_single;
            p["letter"] = f.letter;
            if (!f.word.empty()) p["word"] = f.word;
        } else if (dens->parsed()) {
            command = "density";
            p = schedule_params(f, coloring_params(f, dens));
            p["m_max"] = f.m_max;
        } else if (ax->parsed()) {
            command = "axioms";
            p = coloring_params(f, ax);
            p["weight"] = f.weight;
            p["letter"] = f.letter;
            p["trials"] = f.trials;
        } else if (conv->parsed()) {
            command = "converge";
            p = schedule_params(f, coloring_params(f, conv));
            p["weight"] = f.weight;
            p["letter"] = f.letter;
            p["m_max"] = f.m_max;
        } else if (ids->parsed()) {
            command = "ids";
            p = schedule_params(f, coloring_params(f, ids));
            p["operator"] = f.op;
            if (!f.operator_file.empty()) p["operator_file"] = f.operator_file;
            p["hopping"] = f.hopping;
            p["coupling"] = f.coupling;
            p["m"] = f.m_text;
            if (!f.oracle.empty()) p["oracle"] = f.oracle;
        } else if (heis->parsed()) {
            command = "heis-volume";
            p["radius"] = f.heis_radius;
            p["samples"] = f.samples;
        }
        dispatch(command, p, g);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    } catch (const aperiodic::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const aperiodic::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const aperiodic::VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
