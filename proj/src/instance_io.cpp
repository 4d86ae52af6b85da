#include "solv/instance_io.hpp"

#include <fstream>
#include <stdexcept>

namespace solv {

using nlohmann::json;

json instance_to_json(const TableMagma& magma) {
  const std::size_t n = magma.size();
  json rows = json::array();
  for (std::size_t g = 0; g < n; ++g) {
    json row = json::array();
    for (std::size_t h = 0; h < n; ++h) {
      row.push_back(magma.at(static_cast<ElementId>(g), static_cast<ElementId>(h)));
    }
    rows.push_back(std::move(row));
  }
  json doc;
  if (!magma.name().empty()) {
    doc["name"] = magma.name();
  }
  doc["size"] = n;
  doc["table"] = std::move(rows);
  return doc;
}

TableMagma instance_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("instance: expected a JSON object");
  }
  if (!doc.contains("size") || !doc["size"].is_number_integer()) {
    throw std::invalid_argument("instance: field 'size' must be an integer");
  }
  const auto size = doc["size"].get<long long>();
  if (size < 1) {
    throw std::invalid_argument("instance: 'size' must be at least 1");
  }
  if (!doc.contains("table") || !doc["table"].is_array()) {
    throw std::invalid_argument("instance: field 'table' must be a list of rows");
  }
  const auto n = static_cast<std::size_t>(size);
  const json& table = doc["table"];
  if (table.size() != n) {
    throw std::invalid_argument("instance: 'table' has " + std::to_string(table.size()) +
                                " rows, expected " + std::to_string(n));
  }
  std::vector<ElementId> cells;
  cells.reserve(n * n);
  for (std::size_t g = 0; g < n; ++g) {
    const json& row = table[g];
    if (!row.is_array() || row.size() != n) {
      throw std::invalid_argument("instance: row " + std::to_string(g) + " must have " +
                                  std::to_string(n) + " entries");
    }
    for (std::size_t h = 0; h < n; ++h) {
      if (!row[h].is_number_integer()) {
        throw std::invalid_argument("instance: entry (" + std::to_string(g) + "," +
                                    std::to_string(h) + ") is not an integer");
      }
      const auto value = row[h].get<long long>();
      if (value < 0 || value >= size) {
        throw std::invalid_argument("instance: entry (" + std::to_string(g) + "," +
                                    std::to_string(h) + ") = " + std::to_string(value) +
                                    " is out of range");
      }
      cells.push_back(static_cast<ElementId>(value));
    }
  }
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      throw std::invalid_argument("instance: 'name' must be a string");
    }
    name = doc["name"].get<std::string>();
  }
  return TableMagma(n, std::move(cells), std::move(name));
}

TableMagma read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open instance file " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("instance file " + path.string() + ": " + e.what());
  }
  return instance_from_json(doc);
}

void write_instance(const std::filesystem::path& path, const TableMagma& magma) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write instance file " + path.string());
  }
  out << instance_to_json(magma).dump() << '\n';
}

}  // namespace solv
