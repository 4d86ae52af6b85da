#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "solv/magma.hpp"

namespace solv {

/// Instance object: {"name": str (optional), "size": n, "table": [[...] x n] x n}.
nlohmann::json instance_to_json(const TableMagma& magma);

/// Strict parse: dimensions, integer entries and ranges are all checked.
/// Throws std::invalid_argument with a message naming the offending field.
TableMagma instance_from_json(const nlohmann::json& doc);

TableMagma read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const TableMagma& magma);

}  // namespace solv
