#include "aperiodic/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace aperiodic {

using nlohmann::json;

json region_to_json(const Region& r, int dim) {
    json arr = json::array();
    for (const auto& e : r.elems()) {
        json tuple = json::array();
        for (int i = 0; i < dim; ++i) tuple.push_back(e.c[static_cast<std::size_t>(i)]);
        arr.push_back(std::move(tuple));
    }
    return arr;
}

Region region_from_json(const json& j) {
    if (!j.is_array()) throw SchemaError("region: expected an array of coordinate tuples");
    std::vector<Elem> elems;
    elems.reserve(j.size());
    for (const auto& tuple : j) {
        if (!tuple.is_array() || tuple.empty() || tuple.size() > 3)
            throw SchemaError("region: coordinate tuples must have 1..3 entries");
        Elem e{};
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (!tuple[i].is_number_integer()) throw SchemaError("region: integer coordinates only");
            e.c[i] = tuple[i].get<std::int64_t>();
        }
        elems.push_back(e);
    }
    return Region(std::move(elems));
}

Group group_from_name(const std::string& name) {
    if (name == "z1" || name == "z") return Group::zd(1);
    if (name == "z2") return Group::zd(2);
    if (name == "z3") return Group::zd(3);
    if (name == "heis3z" || name == "h3") return Group::heis3z();
    throw SchemaError("unknown group '" + name + "' (use z1, z2, z3, heis3z)");
}

json coloring_to_json(const Coloring& c) {
    json j;
    j["group"] = c.group().name();
    j["window"] = region_to_json(c.window(), c.group().dim());
    j["alphabet"] = c.alphabet();
    json iota = json::object();
    for (std::size_t i = 0; i < c.alphabet().size(); ++i) iota[c.alphabet()[i]] = c.iota()[i];
    j["iota"] = std::move(iota);
    json cells = json::array();
    for (const auto& e : c.window().elems()) {
        json cell = json::array();
        for (int i = 0; i < c.group().dim(); ++i) cell.push_back(e.c[static_cast<std::size_t>(i)]);
        cell.push_back(c.alphabet()[static_cast<std::size_t>(*c.symbol_at(e))]);
        cells.push_back(std::move(cell));
    }
    j["cells"] = std::move(cells);
    j["generator_spec"] = c.generator_spec();
    return j;
}

Coloring coloring_from_json(const json& j) {
    for (const auto& key : {"group", "alphabet", "iota", "cells"})
        if (!j.contains(key)) throw SchemaError(std::string("coloring: missing '") + key + "'");
    Group g = group_from_name(j.at("group").get<std::string>());
    std::vector<std::string> alphabet = j.at("alphabet").get<std::vector<std::string>>();
    std::vector<double> iota;
    for (const auto& name : alphabet) {
        if (!j.at("iota").contains(name))
            throw SchemaError("coloring: iota missing symbol '" + name + "'");
        iota.push_back(j.at("iota").at(name).get<double>());
    }
    auto symbol_id = [&alphabet](const std::string& s) {
        for (std::size_t i = 0; i < alphabet.size(); ++i)
            if (alphabet[i] == s) return static_cast<int>(i);
        throw SchemaError("coloring: cell uses unknown symbol '" + s + "'");
    };
    std::vector<std::pair<Elem, int>> cells;
    for (const auto& cell : j.at("cells")) {
        if (!cell.is_array() || cell.size() != static_cast<std::size_t>(g.dim()) + 1)
            throw SchemaError("coloring: each cell is [coords..., symbol]");
        Elem e{};
        for (int i = 0; i < g.dim(); ++i)
            e.c[static_cast<std::size_t>(i)] = cell[static_cast<std::size_t>(i)].get<std::int64_t>();
        cells.emplace_back(e, symbol_id(cell[static_cast<std::size_t>(g.dim())].get<std::string>()));
    }
    return make_explicit_coloring(g, std::move(cells), std::move(alphabet), std::move(iota));
}

json patch_to_json(const Patch& p, int dim) {
    json j;
    j["support"] = region_to_json(p.support, dim);
    json points = json::array();
    for (const auto& [e, w] : p.points) {
        json row = json::array();
        for (int i = 0; i < dim; ++i) row.push_back(e.c[static_cast<std::size_t>(i)]);
        row.push_back(w);
        points.push_back(std::move(row));
    }
    j["points"] = std::move(points);
    json anchor = json::array();
    for (int i = 0; i < dim; ++i) anchor.push_back(p.anchor.c[static_cast<std::size_t>(i)]);
    j["anchor"] = std::move(anchor);
    return j;
}

Patch patch_from_json(const json& j) {
    Patch p;
    p.support = region_from_json(j.at("support"));
    for (const auto& row : j.at("points")) {
        if (!row.is_array() || row.size() < 2) throw SchemaError("patch: points are [coords..., weight]");
        Elem e{};
        for (std::size_t i = 0; i + 1 < row.size() && i < 3; ++i)
            e.c[i] = row[i].get<std::int64_t>();
        p.points.emplace_back(e, row.back().get<double>());
    }
    std::sort(p.points.begin(), p.points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (j.contains("anchor")) {
        const auto anchor = j.at("anchor").get<std::vector<std::int64_t>>();
        for (std::size_t i = 0; i < anchor.size() && i < 3; ++i) p.anchor.c[i] = anchor[i];
    }
    return p;
}

json tiling_to_json(const QuasiTiling& t, int dim) {
    json j;
    j["epsilon"] = t.epsilon;
    j["n_eps"] = t.prototiles.n_eps;
    json tiles = json::array();
    for (const auto& tile : t.prototiles.tiles) tiles.push_back(region_to_json(tile, dim));
    j["tiles"] = std::move(tiles);
    json centers = json::array();
    json trimmed = json::array();
    for (const auto& per_type : t.by_type) {
        json c_arr = json::array();
        json t_arr = json::array();
        for (const auto& placed : per_type) {
            json center = json::array();
            for (int i = 0; i < dim; ++i) center.push_back(placed.center.c[static_cast<std::size_t>(i)]);
            c_arr.push_back(std::move(center));
            t_arr.push_back(region_to_json(placed.trimmed, dim));
        }
        centers.push_back(std::move(c_arr));
        trimmed.push_back(std::move(t_arr));
    }
    j["centers"] = std::move(centers);
    j["trimmed"] = std::move(trimmed);
    json report;
    report["t1"] = t.report.t1;
    report["t2"] = t.report.t2;
    report["t3"] = t.report.t3;
    report["t4"] = t.report.t4;
    report["coverage"] = t.report.coverage;
    report["region_defects"] = t.report.region_defects;
    report["region_defect_nn_inv"] = t.report.region_defect_nn_inv;
    report["min_trim_fraction"] = t.report.min_trim_fraction;
    report["trim_fractions"] = t.report.trim_fractions;
    j["report"] = std::move(report);
    return j;
}

std::uint64_t config_hash(const json& config) {
    const std::string dump = config.dump(); // nlohmann keeps object keys sorted
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

bool type_matches(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

} // namespace

void validate_against_schema(const json& value, const json& schema, const std::string& path) {
    if (schema.contains("type")) {
        const auto type = schema.at("type").get<std::string>();
        if (!type_matches(value, type))
            throw SchemaError(path + ": expected " + type);
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& option : schema.at("enum"))
            if (option == value) found = true;
        if (!found) throw SchemaError(path + ": value not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema.at("required"))
                if (!value.contains(key.get<std::string>()))
                    throw SchemaError(path + ": missing required key '" +
                                      key.get<std::string>() + "'");
        }
        const json props = schema.value("properties", json::object());
        if (schema.value("additionalProperties", true) == false) {
            for (const auto& [key, sub] : value.items())
                if (!props.contains(key))
                    throw SchemaError(path + ": unknown key '" + key + "'");
        }
        for (const auto& [key, sub_schema] : props.items())
            if (value.contains(key))
                validate_against_schema(value.at(key), sub_schema, path + "." + key);
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i)
            validate_against_schema(value[i], schema.at("items"),
                                    path + "[" + std::to_string(i) + "]");
    }
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) throw DomainError("CsvWriter: column count mismatch");
    rows_.push_back(cells);
}

void CsvWriter::add_meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string CsvWriter::num(std::int64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%" PRId64, v);
    return buf;
}

std::string CsvWriter::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    for (const auto& [key, value] : meta_) out << "# " << key << "=" << value << "\n";
    return out.str();
}

} // namespace aperiodic
