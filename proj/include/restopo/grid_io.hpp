#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "restopo/errors.hpp"
#include "restopo/grid.hpp"

namespace restopo {

namespace detail {

inline uint64_t to_le(uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xff);
  return r;
}

inline uint32_t to_le(uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  uint32_t r = 0;
  for (int i = 0; i < 4; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xff);
  return r;
}

inline void put_u32(std::string& buf, uint32_t v) {
  v = to_le(v);
  buf.append(reinterpret_cast<const char*>(&v), 4);
}

inline void put_f64(std::string& buf, double d) {
  uint64_t v;
  std::memcpy(&v, &d, 8);
  v = to_le(v);
  buf.append(reinterpret_cast<const char*>(&v), 8);
}

inline uint32_t get_u32(const char* p) {
  uint32_t v;
  std::memcpy(&v, p, 4);
  return to_le(v);
}

inline double get_f64(const char* p) {
  uint64_t v;
  std::memcpy(&v, p, 8);
  v = to_le(v);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

/// Writes content to path via a sibling temp file and rename, so readers
/// never observe a half-written file.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) throw io_error("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    throw io_error("cannot move '" + tmp.string() + "' to '" + path.string() +
                   "': " + ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw io_error("read failure on '" + path.string() + "'");
  return std::move(ss).str();
}

}  // namespace detail

/// Geometry sidecar stored next to a GSLIB file as <path>.json. The GSLIB
/// body is a bare value list, so the grid shape has to travel separately.
inline nlohmann::json geometry_to_json(const GridGeometry& g, ValueKind kind) {
  return nlohmann::json{
      {"nx", g.nx()}, {"ny", g.ny()}, {"nz", g.nz()},
      {"dx", g.dx()}, {"dy", g.dy()}, {"dz", g.dz()},
      {"x0", g.origin().x}, {"y0", g.origin().y}, {"z0", g.origin().z},
      {"kind", to_string(kind)}};
}

inline std::pair<GridGeometry, ValueKind> geometry_from_json(
    const nlohmann::json& j) {
  try {
    GridGeometry g(j.at("nx").get<int>(), j.at("ny").get<int>(),
                   j.at("nz").get<int>(), j.at("dx").get<double>(),
                   j.at("dy").get<double>(), j.at("dz").get<double>(),
                   j.value("x0", 0.0), j.value("y0", 0.0), j.value("z0", 0.0));
    return {g, value_kind_from_string(j.value("kind", "z"))};
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bad geometry sidecar: ") + e.what());
  }
}

/// Writes GSLIB ASCII (title, variable count, variable name, one value per
/// line, x-fastest) plus the geometry sidecar <path>.json.
inline void write_gslib(const std::filesystem::path& path,
                        const ScalarField& field) {
  const auto& g = field.geometry();
  std::ostringstream body;
  body << "restopo " << to_string(field.kind()) << " field " << g.shape_string()
       << "\n1\n" << to_string(field.kind()) << "\n";
  body << std::setprecision(17);
  for (double v : field.values()) body << v << "\n";
  detail::write_file_atomic(path, std::move(body).str());
  detail::write_file_atomic(path.string() + ".json",
                            geometry_to_json(g, field.kind()).dump(2) + "\n");
}

/// Reads a GSLIB file written by write_gslib (or any single-variable GSLIB
/// file with a matching sidecar).
inline ScalarField read_gslib(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  const fs::path sidecar = path.string() + ".json";
  if (!fs::exists(sidecar))
    throw io_error("missing geometry sidecar '" + sidecar.string() +
                   "' (GSLIB files carry no grid shape)");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(sidecar));
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("sidecar '" + sidecar.string() + "': " + e.what());
  }
  auto [geom, kind] = geometry_from_json(j);

  std::istringstream in(detail::read_file(path));
  std::string title, varname;
  int nvar = 0;
  if (!std::getline(in, title))
    throw parse_error("'" + path.string() + "': empty file");
  if (!(in >> nvar))
    throw parse_error("'" + path.string() + "': missing variable count");
  if (nvar != 1)
    throw parse_error("'" + path.string() + "': expected 1 variable, got " +
                      std::to_string(nvar));
  in >> varname;
  std::vector<double> values;
  values.reserve(size_t(geom.cell_count()));
  double v;
  while (in >> v) values.push_back(v);
  if (int64_t(values.size()) != geom.cell_count())
    throw parse_error("'" + path.string() + "': " +
                      std::to_string(values.size()) + " values for a " +
                      geom.shape_string() + " grid");
  return ScalarField(geom, std::move(values), kind);
}

inline constexpr char kRawMagic[8] = {'R', 'T', 'G', 'R', 'I', 'D', '0', '1'};
inline constexpr size_t kRawHeaderSize = 72;

/// Raw binary layout: 72-byte header (magic "RTGRID01", u32 nx ny nz kind,
/// f64 dx dy dz x0 y0 z0, all little-endian) followed by the cell values as
/// little-endian f64, x-fastest.
inline void write_raw(const std::filesystem::path& path,
                      const ScalarField& field) {
  const auto& g = field.geometry();
  std::string buf;
  buf.reserve(kRawHeaderSize + size_t(g.cell_count()) * 8);
  buf.append(kRawMagic, 8);
  detail::put_u32(buf, uint32_t(g.nx()));
  detail::put_u32(buf, uint32_t(g.ny()));
  detail::put_u32(buf, uint32_t(g.nz()));
  detail::put_u32(buf, uint32_t(field.kind()));
  detail::put_f64(buf, g.dx());
  detail::put_f64(buf, g.dy());
  detail::put_f64(buf, g.dz());
  detail::put_f64(buf, g.origin().x);
  detail::put_f64(buf, g.origin().y);
  detail::put_f64(buf, g.origin().z);
  for (double v : field.values()) detail::put_f64(buf, v);
  detail::write_file_atomic(path, buf);
}

inline ScalarField read_raw(const std::filesystem::path& path) {
  const std::string buf = detail::read_file(path);
  if (buf.size() < kRawHeaderSize)
    throw parse_error("'" + path.string() + "': truncated header");
  if (std::memcmp(buf.data(), kRawMagic, 8) != 0)
    throw parse_error("'" + path.string() + "': bad magic (not a raw grid)");
  const char* p = buf.data();
  const uint32_t nx = detail::get_u32(p + 8);
  const uint32_t ny = detail::get_u32(p + 12);
  const uint32_t nz = detail::get_u32(p + 16);
  const uint32_t kind_raw = detail::get_u32(p + 20);
  if (kind_raw > 2)
    throw parse_error("'" + path.string() + "': unknown value-kind tag " +
                      std::to_string(kind_raw));
  if (nx == 0 || ny == 0 || nz == 0 || nx > (1u << 24) || ny > (1u << 24) ||
      nz > (1u << 24))
    throw parse_error("'" + path.string() + "': implausible grid shape");
  GridGeometry geom(int(nx), int(ny), int(nz), detail::get_f64(p + 24),
                    detail::get_f64(p + 32), detail::get_f64(p + 40),
                    detail::get_f64(p + 48), detail::get_f64(p + 56),
                    detail::get_f64(p + 64));
  const size_t expect = kRawHeaderSize + size_t(geom.cell_count()) * 8;
  if (buf.size() != expect)
    throw parse_error("'" + path.string() + "': payload is " +
                      std::to_string(buf.size() - kRawHeaderSize) +
                      " bytes, expected " +
                      std::to_string(expect - kRawHeaderSize));
  std::vector<double> values(size_t(geom.cell_count()));
  for (size_t i = 0; i < values.size(); ++i)
    values[i] = detail::get_f64(p + kRawHeaderSize + i * 8);
  return ScalarField(geom, std::move(values), ValueKind(kind_raw));
}

/// Dispatches on extension: ".raw"/".bin" binary, anything else GSLIB.
inline ScalarField read_field(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".raw" || ext == ".bin") return read_raw(path);
  return read_gslib(path);
}

inline void write_field(const std::filesystem::path& path,
                        const ScalarField& field) {
  const auto ext = path.extension().string();
  if (ext == ".raw" || ext == ".bin")
    write_raw(path, field);
  else
    write_gslib(path, field);
}

}  // namespace restopo
