#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "restopo/errors.hpp"
#include "restopo/grid_io.hpp"
#include "restopo/persistence.hpp"

namespace restopo {

/// Diagram JSON layout: {"q":0,"points":[[b,d],...],"essential":[b,...]}.
/// Essential classes live in their own array precisely so that no infinity
/// has to be serialized.
inline nlohmann::json diagram_to_json(const PersistenceDiagram& d) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : d.points) points.push_back({p[0], p[1]});
  nlohmann::json essential = nlohmann::json::array();
  for (const double b : d.essential) essential.push_back(b);
  return nlohmann::json{{"q", d.q}, {"points", std::move(points)},
                        {"essential", std::move(essential)}};
}

inline PersistenceDiagram diagram_from_json(const nlohmann::json& j) {
  PersistenceDiagram d;
  try {
    d.q = j.at("q").get<int>();
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 2)
        throw parse_error("diagram point is not a [birth, death] pair");
      const double b = p[0].get<double>(), dd = p[1].get<double>();
      if (!std::isfinite(b) || !std::isfinite(dd))
        throw parse_error("non-finite diagram point");
      if (!(b < dd))
        throw parse_error("diagram point with birth " + std::to_string(b) +
                          " not below death " + std::to_string(dd));
      d.points.push_back({b, dd});
    }
    if (j.contains("essential"))
      for (const auto& b : j.at("essential")) {
        const double v = b.get<double>();
        if (!std::isfinite(v)) throw parse_error("non-finite essential birth");
        d.essential.push_back(v);
      }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bad diagram JSON: ") + e.what());
  }
  detail::sort_diagram(d);
  return d;
}

inline void write_diagram(const std::filesystem::path& path,
                          const PersistenceDiagram& d) {
  detail::write_file_atomic(path, diagram_to_json(d).dump(2) + "\n");
}

inline PersistenceDiagram read_diagram(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("'" + path.string() + "': " + e.what());
  }
  return diagram_from_json(j);
}

}  // namespace restopo
