// restopo command-line tool: simulate reservoirs, compute Betti tables,
// persistence diagrams, bottleneck distances, and weighted-Betti reports.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "restopo/restopo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------- helpers

/// Threshold list syntax: "a..b:s" (inclusive arithmetic sweep), a comma
/// list "0.2,0.5", or a single value.
std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> out;
  const auto range_sep = text.find("..");
  if (range_sep != std::string::npos) {
    const auto step_sep = text.find(':', range_sep);
    if (step_sep == std::string::npos)
      throw restopo::config_error("--alphas range needs ':step' (got '" + text +
                                  "')");
    try {
      const double a = std::stod(text.substr(0, range_sep));
      const double b = std::stod(text.substr(range_sep + 2, step_sep - range_sep - 2));
      const double s = std::stod(text.substr(step_sep + 1));
      if (!(s > 0.0) || b < a)
        throw restopo::config_error("--alphas range must ascend with step > 0");
      for (int i = 0;; ++i) {
        const double v = a + i * s;
        if (v > b + 1e-9) break;
        out.push_back(std::min(v, b));
      }
    } catch (const std::invalid_argument&) {
      throw restopo::config_error("cannot parse --alphas '" + text + "'");
    }
  } else {
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        out.push_back(std::stod(tok));
      } catch (const std::invalid_argument&) {
        throw restopo::config_error("cannot parse alpha value '" + tok + "'");
      }
    }
  }
  if (out.empty()) throw restopo::config_error("--alphas produced no values");
  for (size_t i = 0; i + 1 < out.size(); ++i)
    if (!(out[i] < out[i + 1]))
      throw restopo::config_error("--alphas values must be strictly increasing");
  return out;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

/// Field loader that also accepts raw-GL fields when calibration bounds are
/// supplied and refuses non-alpha fields otherwise.
restopo::ScalarField load_alpha_field(const std::string& path, double gl_min,
                                      double gl_max, bool have_calibration) {
  restopo::ScalarField f = restopo::read_field(path);
  if (f.kind() == restopo::ValueKind::alpha) return f;
  if (f.kind() == restopo::ValueKind::raw_gl && have_calibration)
    return restopo::normalize_gl(f, gl_min, gl_max).field;
  if (f.kind() == restopo::ValueKind::raw_gl)
    throw restopo::config_error(
        "'" + path + "' holds raw GL values; pass --gl-min and --gl-max to "
        "normalize them");
  throw restopo::config_error(
      "'" + path + "' holds z values; re-run the simulation with the "
      "gaussian_cdf transform or normalize externally");
}

struct Calibration {
  bool have = false;
  double gl_min = 0.0;
  double gl_max = 1.0;
};

Calibration read_calibration(const CLI::App* cmd) {
  const bool has_min = !cmd->get_option("--gl-min")->empty();
  const bool has_max = !cmd->get_option("--gl-max")->empty();
  if (has_min != has_max)
    throw restopo::config_error("--gl-min and --gl-max must be given together");
  Calibration cal;
  cal.have = has_min;
  if (cal.have) {
    cal.gl_min = cmd->get_option("--gl-min")->as<double>();
    cal.gl_max = cmd->get_option("--gl-max")->as<double>();
  }
  return cal;
}

std::vector<restopo::ConditioningPoint> read_conditioning_csv(
    const std::string& path, const restopo::GridGeometry& g) {
  std::istringstream in(restopo::detail::read_file(path));
  std::vector<restopo::ConditioningPoint> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.find_first_not_of("kxyzvalue ,\t\r") == std::string::npos)
      continue;  // header row
    std::istringstream row(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(row, tok, ',')) cols.push_back(tok);
    if (cols.size() != 4)
      throw restopo::parse_error("'" + path + "' line " + std::to_string(lineno) +
                                 ": expected kx,ky,kz,value");
    try {
      restopo::ConditioningPoint p;
      p.ix = std::stoi(cols[0]) - 1;  // file indices are 1-based
      p.iy = std::stoi(cols[1]) - 1;
      p.iz = std::stoi(cols[2]) - 1;
      p.value = std::stod(cols[3]);
      pts.push_back(p);
    } catch (const std::exception&) {
      throw restopo::parse_error("'" + path + "' line " + std::to_string(lineno) +
                                 ": malformed number");
    }
  }
  for (const auto& p : pts)
    if (!g.in_grid(p.ix, p.iy, p.iz))
      throw restopo::config_error("conditioning point outside the " +
                                  g.shape_string() + " grid");
  return pts;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(CLI::App& app) {
  auto* cmd = app.get_subcommand("simulate");
  const int nx = cmd->get_option("--nx")->as<int>();
  const int ny = cmd->get_option("--ny")->as<int>();
  const int nz = cmd->get_option("--nz")->as<int>();
  const double dx = cmd->get_option("--dx")->as<double>();
  const double dy = cmd->get_option("--dy")->as<double>();
  const double dz = cmd->get_option("--dz")->as<double>();
  const std::string model = cmd->get_option("--variogram")->as<std::string>();
  const double range = cmd->get_option("--range")->as<double>();
  const double sill = cmd->get_option("--sill")->as<double>();
  const double mean = cmd->get_option("--mean")->as<double>();
  const std::string mode = cmd->get_option("--kriging")->as<std::string>();
  const int max_points = cmd->get_option("--max-points")->as<int>();
  const double radius = cmd->get_option("--search-radius")->as<double>();
  const std::string transform = cmd->get_option("--transform")->as<std::string>();
  std::vector<uint64_t> seeds{1};
  if (!cmd->get_option("--seed")->empty())
    seeds = cmd->get_option("--seed")->as<std::vector<uint64_t>>();
  const std::string cond_path = cmd->get_option("--conditioning")->as<std::string>();
  const std::string out = cmd->get_option("--out")->as<std::string>();

  restopo::GridGeometry geom(nx, ny, nz, dx, dy, dz);
  restopo::SgsConfig cfg;
  cfg.variogram = {restopo::variogram_model_from_string(model), sill, range};
  cfg.mode = restopo::kriging_mode_from_string(mode);
  cfg.mean = mean;
  cfg.max_points = max_points;
  cfg.search_radius = radius;
  cfg.transform = restopo::marginal_transform_from_string(transform);
  if (!cond_path.empty()) cfg.conditioning = read_conditioning_csv(cond_path, geom);
  if (seeds.empty()) seeds.push_back(1);
  cfg.validate(geom);

  for (const uint64_t seed : seeds) {
    cfg.seed = seed;
    restopo::Stopwatch watch;
    const restopo::ScalarField field = restopo::simulate_sgs(geom, cfg);
    fs::path path = out;
    if (seeds.size() > 1) {
      fs::path p(out);
      path = p.parent_path() /
             (p.stem().string() + "-s" + std::to_string(seed) + p.extension().string());
    }
    restopo::write_field(path, field);

    restopo::RunManifest man;
    man.command = "simulate";
    man.config = {{"nx", nx}, {"ny", ny}, {"nz", nz},
                  {"dx", dx}, {"dy", dy}, {"dz", dz},
                  {"variogram", model}, {"range", range}, {"sill", sill},
                  {"mean", mean}, {"kriging", mode},
                  {"max_points", max_points}, {"search_radius", radius},
                  {"transform", transform},
                  {"conditioning", cond_path}};
    man.seeds = {seed};
    if (!cond_path.empty()) man.inputs.push_back(cond_path);
    man.outputs.push_back(path.string());
    man.wall_seconds = watch.seconds();
    restopo::write_manifest(path, man);
  }
  return 0;
}

// ---------------------------------------------------------------- betti

int cmd_betti(CLI::App& app) {
  auto* cmd = app.get_subcommand("betti");
  const std::string in = cmd->get_option("--in")->as<std::string>();
  const std::string alphas_text = cmd->get_option("--alphas")->as<std::string>();
  const std::string out = cmd->get_option("--out")->as<std::string>();
  const int background = cmd->get_option("--background")->as<int>();
  const Calibration cal = read_calibration(cmd);

  restopo::Connectivity conn;
  switch (background) {
    case 6: conn = restopo::Connectivity::face6; break;
    case 18: conn = restopo::Connectivity::edge18; break;
    case 26: conn = restopo::Connectivity::vertex26; break;
    default:
      throw restopo::config_error("--background must be 6, 18 or 26");
  }

  restopo::Stopwatch watch;
  const restopo::ScalarField field =
      load_alpha_field(in, cal.gl_min, cal.gl_max, cal.have);
  const std::vector<double> alphas = parse_alphas(alphas_text);

  std::vector<restopo::BettiSummary> rows(alphas.size());
  restopo::parallel_for(int64_t(alphas.size()), [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i)
      rows[size_t(i)] =
          restopo::betti_numbers(restopo::excursion_set(field, alphas[size_t(i)]), conn);
  });

  std::ostringstream csv;
  csv << "alpha,b0,b1,b2,chi,volume,b0w,b1w,b2w\n";
  for (size_t i = 0; i < alphas.size(); ++i) {
    const auto& r = rows[i];
    csv << format_double(alphas[i]) << "," << r.b0 << "," << r.b1 << ","
        << r.b2 << "," << r.chi << "," << r.volume << ","
        << format_double(r.b0w) << "," << format_double(r.b1w) << ","
        << format_double(r.b2w) << "\n";
  }

  if (out.empty()) {
    std::cout << csv.str();
  } else {
    restopo::detail::write_file_atomic(out, csv.str());
    restopo::RunManifest man;
    man.command = "betti";
    man.config = {{"alphas", alphas_text}, {"background", background}};
    man.inputs.push_back(in);
    man.outputs.push_back(out);
    man.wall_seconds = watch.seconds();
    restopo::write_manifest(out, man);
  }
  return 0;
}

// ---------------------------------------------------------------- persist

int cmd_persist(CLI::App& app) {
  auto* cmd = app.get_subcommand("persist");
  const std::string in = cmd->get_option("--in")->as<std::string>();
  const double step = cmd->get_option("--step")->as<double>();
  const int q = cmd->get_option("--q")->as<int>();
  const std::string method = cmd->get_option("--method")->as<std::string>();
  const bool distinct = cmd->get_option("--distinct")->count() > 0;
  const std::string out = cmd->get_option("--out")->as<std::string>();
  const Calibration cal = read_calibration(cmd);

  restopo::Stopwatch watch;
  restopo::ScalarField field =
      load_alpha_field(in, cal.gl_min, cal.gl_max, cal.have);
  restopo::Filtration filt =
      distinct ? restopo::Filtration::distinct_values(std::move(field))
               : restopo::Filtration::fixed_step(std::move(field), step);

  restopo::PersistenceDiagram diagram;
  if (method == "q0" || (method == "auto" && q == 0)) {
    if (q != 0)
      throw restopo::config_error("--method q0 only computes dimension 0");
    diagram = restopo::persistence_q0(filt);
  } else {
    diagram = restopo::persistence_matrix(filt, q);
  }

  if (out.empty()) {
    std::cout << restopo::diagram_to_json(diagram).dump(2) << "\n";
  } else {
    restopo::write_diagram(out, diagram);
    restopo::RunManifest man;
    man.command = "persist";
    man.config = {{"step", step}, {"q", q}, {"method", method},
                  {"distinct", distinct}};
    man.inputs.push_back(in);
    man.outputs.push_back(out);
    man.wall_seconds = watch.seconds();
    restopo::write_manifest(out, man);
  }
  return 0;
}

// ---------------------------------------------------------------- bottleneck

int cmd_bottleneck(CLI::App& app) {
  auto* cmd = app.get_subcommand("bottleneck");
  const std::string a_path = cmd->get_option("--a")->as<std::string>();
  const std::string b_path = cmd->get_option("--b")->as<std::string>();
  const std::string matrix_dir = cmd->get_option("--matrix")->as<std::string>();
  const std::string norm_text = cmd->get_option("--norm")->as<std::string>();
  const std::string out = cmd->get_option("--out")->as<std::string>();
  const restopo::PlaneNorm norm = restopo::plane_norm_from_string(norm_text);

  if (matrix_dir.empty()) {
    if (a_path.empty() || b_path.empty())
      throw CLI::ValidationError("bottleneck",
                                 "need either --a and --b, or --matrix DIR");
    const auto U = restopo::read_diagram(a_path);
    const auto V = restopo::read_diagram(b_path);
    std::cout << format_double(restopo::bottleneck_distance(U, V, norm)) << "\n";
    return 0;
  }

  restopo::Stopwatch watch;
  std::vector<std::string> labels;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(matrix_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    if (entry.path().string().ends_with(".manifest.json")) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.size() < 2)
    throw restopo::config_error("--matrix needs at least two diagram files in '" +
                                matrix_dir + "'");
  std::vector<restopo::PersistenceDiagram> diagrams;
  for (const auto& f : files) {
    labels.push_back(f.stem().string());
    diagrams.push_back(restopo::read_diagram(f));
  }

  const size_t n = diagrams.size();
  std::vector<double> dist(n * n, 0.0);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::exception_ptr failure;
  std::mutex failure_mutex;
  restopo::parallel_for(int64_t(pairs.size()), [&](int64_t lo, int64_t hi) {
    for (int64_t k = lo; k < hi; ++k) {
      try {
        const auto [i, j] = pairs[size_t(k)];
        const double d =
            restopo::bottleneck_distance(diagrams[i], diagrams[j], norm);
        dist[i * n + j] = dist[j * n + i] = d;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  });
  if (failure) std::rethrow_exception(failure);

  std::ostringstream csv;
  csv << "label";
  for (const auto& l : labels) csv << "," << l;
  csv << "\n";
  for (size_t i = 0; i < n; ++i) {
    csv << labels[i];
    for (size_t j = 0; j < n; ++j) csv << "," << format_double(dist[i * n + j]);
    csv << "\n";
  }

  if (out.empty()) {
    std::cout << csv.str();
  } else {
    restopo::detail::write_file_atomic(out, csv.str());
    restopo::RunManifest man;
    man.command = "bottleneck";
    man.config = {{"norm", norm_text}, {"matrix", matrix_dir}};
    for (const auto& f : files) man.inputs.push_back(f.string());
    man.outputs.push_back(out);
    man.wall_seconds = watch.seconds();
    restopo::write_manifest(out, man);
  }
  return 0;
}

// ---------------------------------------------------------------- report

int cmd_report(CLI::App& app) {
  auto* cmd = app.get_subcommand("report");
  const auto inputs = cmd->get_option("--in")->as<std::vector<std::string>>();
  const std::string alphas_text = cmd->get_option("--alphas")->as<std::string>();
  const std::string out = cmd->get_option("--out")->as<std::string>();
  const Calibration cal = read_calibration(cmd);

  restopo::Stopwatch watch;
  const std::vector<double> alphas = parse_alphas(alphas_text);

  std::ostringstream csv;
  csv << "field,alpha,volume,b0w,b1w,b2w\n";
  json summary = json::array();
  for (const auto& path : inputs) {
    const restopo::ScalarField field =
        load_alpha_field(path, cal.gl_min, cal.gl_max, cal.have);
    std::vector<restopo::BettiSummary> rows(alphas.size());
    restopo::parallel_for(int64_t(alphas.size()), [&](int64_t lo, int64_t hi) {
      for (int64_t i = lo; i < hi; ++i)
        rows[size_t(i)] =
            restopo::betti_numbers(restopo::excursion_set(field, alphas[size_t(i)]));
    });
    double max_b0w = 0, max_b1w = 0, max_b2w = 0;
    const std::string label = fs::path(path).stem().string();
    for (size_t i = 0; i < alphas.size(); ++i) {
      const auto& r = rows[i];
      csv << label << "," << format_double(alphas[i]) << "," << r.volume << ","
          << format_double(r.b0w) << "," << format_double(r.b1w) << ","
          << format_double(r.b2w) << "\n";
      max_b0w = std::max(max_b0w, r.b0w);
      max_b1w = std::max(max_b1w, r.b1w);
      max_b2w = std::max(max_b2w, r.b2w);
    }
    summary.push_back({{"field", label}, {"path", path},
                       {"max_b0w", max_b0w}, {"max_b1w", max_b1w},
                       {"max_b2w", max_b2w}});
  }

  const std::string csv_path = out + ".csv";
  const std::string json_path = out + ".json";
  restopo::detail::write_file_atomic(csv_path, csv.str());
  restopo::detail::write_file_atomic(
      json_path, json{{"alphas", alphas}, {"fields", summary}}.dump(2) + "\n");

  restopo::RunManifest man;
  man.command = "report";
  man.config = {{"alphas", alphas_text}};
  man.inputs = inputs;
  man.outputs = {csv_path, json_path};
  man.wall_seconds = watch.seconds();
  restopo::write_manifest(csv_path, man);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reservoir topology toolkit: SGS realizations, excursion-set "
               "Betti numbers, persistence diagrams, bottleneck distances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", restopo::kVersion);

  auto* sim = app.add_subcommand("simulate",
                                 "Generate a sequential-Gaussian-simulation field");
  sim->add_option("--nx", "cells in x")->required()->check(CLI::PositiveNumber);
  sim->add_option("--ny", "cells in y")->required()->check(CLI::PositiveNumber);
  sim->add_option("--nz", "cells in z")->required()->check(CLI::PositiveNumber);
  sim->add_option("--dx", "spacing x (m)")->default_val(1.0);
  sim->add_option("--dy", "spacing y (m)")->default_val(1.0);
  sim->add_option("--dz", "spacing z (m)")->default_val(1.0);
  sim->add_option("--variogram", "exp or gauss")->default_val("exp");
  sim->add_option("--range", "variogram range R (m)")->required();
  sim->add_option("--sill", "variogram sill C(0)")->default_val(1.0);
  sim->add_option("--mean", "stationary mean (z domain)")->default_val(0.0);
  sim->add_option("--kriging", "ordinary or simple")->default_val("ordinary");
  sim->add_option("--max-points", "nearest known cells per estimate")->default_val(16);
  sim->add_option("--search-radius", "meters; 0 means 2R")->default_val(0.0);
  sim->add_option("--transform", "gaussian_cdf or none")->default_val("gaussian_cdf");
  sim->add_option("--seed", "RNG seed(s); several seeds write one realization "
                            "each")
      ->expected(1, -1)
      ->allow_extra_args();
  sim->add_option("--conditioning", "CSV kx,ky,kz,value with 1-based indices")
      ->default_val("");
  sim->add_option("--out", "output field path (.raw/.bin binary, else GSLIB)")
      ->required();

  auto* bet = app.add_subcommand("betti", "Betti/Euler table over thresholds");
  bet->add_option("--in", "input field")->required();
  bet->add_option("--alphas", "sweep 'a..b:s', list 'x,y', or single value")
      ->default_val("0.1..0.9:0.1");
  bet->add_option("--background", "complement connectivity: 6, 18 or 26")
      ->default_val(18);
  bet->add_option("--gl-min", "GL calibration lower bound");
  bet->add_option("--gl-max", "GL calibration upper bound");
  bet->add_option("--out", "CSV path (stdout when omitted)")->default_val("");

  auto* per = app.add_subcommand("persist", "Persistence diagram of the "
                                            "excursion filtration");
  per->add_option("--in", "input field")->required();
  per->add_option("--step", "threshold step over [0,1]")->default_val(0.01);
  per->add_option("--q", "homology dimension 0..2")->default_val(0);
  per->add_option("--method", "auto, q0 or matrix")->default_val("auto");
  per->add_flag("--distinct", "thresholds at distinct field values instead of "
                              "the fixed grid");
  per->add_option("--gl-min", "GL calibration lower bound");
  per->add_option("--gl-max", "GL calibration upper bound");
  per->add_option("--out", "diagram JSON path (stdout when omitted)")
      ->default_val("");

  auto* bot = app.add_subcommand("bottleneck", "Bottleneck distance between "
                                               "diagrams");
  bot->add_option("--a", "first diagram JSON")->default_val("");
  bot->add_option("--b", "second diagram JSON")->default_val("");
  bot->add_option("--matrix", "directory of diagram JSONs for the all-pairs "
                              "matrix")->default_val("");
  bot->add_option("--norm", "plane norm: l1 or linf")->default_val("l1");
  bot->add_option("--out", "matrix CSV path (stdout when omitted)")
      ->default_val("");

  auto* rep = app.add_subcommand("report", "Weighted-Betti scatter data for "
                                           "one or more fields");
  rep->add_option("--in", "input fields")
      ->required()
      ->expected(1, -1)
      ->allow_extra_args();
  rep->add_option("--alphas", "sweep 'a..b:s', list 'x,y', or single value")
      ->default_val("0.1..0.9:0.1");
  rep->add_option("--gl-min", "GL calibration lower bound");
  rep->add_option("--gl-max", "GL calibration upper bound");
  rep->add_option("--out", "output prefix; writes <prefix>.csv and "
                           "<prefix>.json")->required();

  try {
    app.parse(argc, argv);
    if (app.got_subcommand("simulate")) return cmd_simulate(app);
    if (app.got_subcommand("betti")) return cmd_betti(app);
    if (app.got_subcommand("persist")) return cmd_persist(app);
    if (app.got_subcommand("bottleneck")) return cmd_bottleneck(app);
    if (app.got_subcommand("report")) return cmd_report(app);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const restopo::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
