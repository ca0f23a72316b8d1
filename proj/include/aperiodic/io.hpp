#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "aperiodic/coloring.hpp"
#include "aperiodic/group.hpp"
#include "aperiodic/patch.hpp"
#include "aperiodic/quasi_tiling.hpp"

namespace aperiodic {

inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json region_to_json(const Region& r, int dim);
Region region_from_json(const nlohmann::json& j);

nlohmann::json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const nlohmann::json& j);

nlohmann::json patch_to_json(const Patch& p, int dim);
Patch patch_from_json(const nlohmann::json& j);

nlohmann::json tiling_to_json(const QuasiTiling& t, int dim);

Group group_from_name(const std::string& name);

/// FNV-1a over the canonical (sorted-key, compact) dump of a JSON value.
std::uint64_t config_hash(const nlohmann::json& config);

/// Structural validation against the tiny JSON-schema subset shipped under
/// schemas/: type, required, properties, items, enum, additionalProperties.
/// Throws SchemaError with a path-qualified message.
void validate_against_schema(const nlohmann::json& value, const nlohmann::json& schema,
                             const std::string& path = "$");

/// CSV emitter: header row, data rows, then a trailing metadata comment
/// block. Numbers are rendered with up to 12 significant digits so repeated
/// runs are byte-identical.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& cells);
    void add_meta(const std::string& key, const std::string& value);
    std::string str() const;

    static std::string num(double v);
    static std::string num(std::int64_t v);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

} // namespace aperiodic
