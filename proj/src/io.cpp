#include "nimt/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nimt {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: " + path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) config_error(path + "." + key, "unknown key");
  }
}

double require_range(double v, double lo, double hi, const std::string& path) {
  if (!(v >= lo) || !(v <= hi)) {
    config_error(path, "value " + std::to_string(v) + " out of range [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

GridFunction load_image_checked(const json& j, const std::string& path) {
  if (!j.is_string()) config_error(path, "expected a file path string");
  const std::string file = j.get<std::string>();
  if (!std::filesystem::exists(file)) {
    config_error(path, "file does not exist: " + file);
  }
  return load_grayscale_image(file);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");
  reject_unknown(root, "config",
                 {"seed", "scenario", "kernel", "teacher", "output_dir", "assertions"});

  RunConfig cfg;

  if (!root.contains("seed")) config_error("seed", "required key missing");
  if (!root["seed"].is_number_integer()) config_error("seed", "must be an integer");
  cfg.seed = root["seed"].get<std::uint64_t>();

  if (!root.contains("scenario") || !root["scenario"].is_object()) {
    config_error("scenario", "required object missing");
  }
  const json& sc = root["scenario"];
  reject_unknown(sc, "scenario",
                 {"name", "eta", "epsilon", "max_iters", "target_image",
                  "init_image", "paraboloid_sign"});
  if (!sc.contains("name") || !sc["name"].is_string()) {
    config_error("scenario.name", "required string missing");
  }
  cfg.scenario_name = sc["name"].get<std::string>();
  if (sc.contains("eta")) {
    cfg.overrides.eta = sc["eta"].get<double>();
    if (!(*cfg.overrides.eta > 0.0)) config_error("scenario.eta", "must be positive");
  }
  if (sc.contains("epsilon")) {
    cfg.overrides.epsilon = sc["epsilon"].get<double>();
    if (!(*cfg.overrides.epsilon > 0.0)) config_error("scenario.epsilon", "must be positive");
  }
  if (sc.contains("max_iters")) {
    cfg.overrides.max_iters = sc["max_iters"].get<int>();
    if (*cfg.overrides.max_iters < 0) config_error("scenario.max_iters", "must be nonnegative");
  }
  if (sc.contains("target_image")) {
    cfg.overrides.target_image = load_image_checked(sc["target_image"], "scenario.target_image");
  }
  if (sc.contains("init_image")) {
    cfg.overrides.init_image = load_image_checked(sc["init_image"], "scenario.init_image");
  }
  if (sc.contains("paraboloid_sign")) {
    const double s = sc["paraboloid_sign"].get<double>();
    if (s != 1.0 && s != -1.0) config_error("scenario.paraboloid_sign", "must be 1 or -1");
    cfg.overrides.paraboloid_sign = s;
  }

  if (root.contains("kernel")) {
    const json& k = root["kernel"];
    if (!k.is_object()) config_error("kernel", "must be an object");
    reject_unknown(k, "kernel", {"kind", "rbf_scale"});
    if (k.contains("kind")) {
      const std::string kind = k["kind"].get<std::string>();
      const bool wants_linear = cfg.scenario_name == "linear_compare";
      if (kind == "rbf") {
        if (wants_linear) config_error("kernel.kind", "linear_compare uses a linear kernel");
      } else if (kind == "linear") {
        if (!wants_linear) config_error("kernel.kind", "only linear_compare uses a linear kernel");
      } else {
        config_error("kernel.kind", "must be 'rbf' or 'linear'");
      }
    }
    if (k.contains("rbf_scale")) {
      const double s = k["rbf_scale"].get<double>();
      if (!(s > 0.0)) config_error("kernel.rbf_scale", "must be positive");
      cfg.overrides.rbf_scale = s;
    }
  }

  cfg.teacher.seed = cfg.seed;
  if (root.contains("teacher")) {
    const json& t = root["teacher"];
    if (!t.is_object()) config_error("teacher", "must be an object");
    reject_unknown(t, "teacher", {"kind", "k", "pool", "alt"});
    if (t.contains("kind")) {
      const std::string kind = t["kind"].get<std::string>();
      if (kind == "rft") {
        cfg.teacher.kind = TeacherPolicy::Kind::Rft;
      } else if (kind == "gft") {
        cfg.teacher.kind = TeacherPolicy::Kind::Gft;
      } else {
        config_error("teacher.kind", "must be 'rft' or 'gft'");
      }
    }
    if (t.contains("k")) {
      const json& k = t["k"];
      if (k.is_number_integer()) {
        const int n = k.get<int>();
        if (n < 1) config_error("teacher.k", "integer pack size must be >= 1");
        cfg.teacher.k = PackSize::count(n);
      } else if (k.is_number_float()) {
        const double r = k.get<double>();
        require_range(r, 0.0, 1.0, "teacher.k");
        if (r == 0.0) config_error("teacher.k", "ratio must be positive");
        cfg.teacher.k = PackSize::ratio(r);
      } else {
        config_error("teacher.k", "must be an integer count or a ratio");
      }
    }
    if (t.contains("pool")) {
      const json& p = t["pool"];
      if (!p.is_object()) config_error("teacher.pool", "must be an object");
      reject_unknown(p, "teacher.pool", {"ratio", "indices"});
      if (p.contains("ratio") && p.contains("indices")) {
        config_error("teacher.pool", "ratio and indices are mutually exclusive");
      }
      if (p.contains("ratio")) {
        const double r = p["ratio"].get<double>();
        require_range(r, 0.0, 1.0, "teacher.pool.ratio");
        if (r == 0.0) config_error("teacher.pool.ratio", "must be positive");
        cfg.teacher.pool_ratio = r;
      } else if (p.contains("indices")) {
        cfg.teacher.pool_indices = p["indices"].get<std::vector<std::size_t>>();
      } else {
        config_error("teacher.pool", "needs ratio or indices");
      }
    }
    if (t.contains("alt")) {
      const json& a = t["alt"];
      if (!a.is_object()) config_error("teacher.alt", "must be an object");
      reject_unknown(a, "teacher.alt", {"prob", "image"});
      if (!a.contains("prob")) config_error("teacher.alt.prob", "required key missing");
      cfg.alt_prob = require_range(a["prob"].get<double>(), 0.0, 1.0, "teacher.alt.prob");
      if (!a.contains("image")) config_error("teacher.alt.image", "required key missing");
      cfg.alt_image = load_image_checked(a["image"], "teacher.alt.image");
    }
  }

  if (root.contains("output_dir")) {
    cfg.output_dir = root["output_dir"].get<std::string>();
  }
  if (root.contains("assertions")) {
    const json& a = root["assertions"];
    if (!a.is_object()) config_error("assertions", "must be an object");
    reject_unknown(a, "assertions", {"lemma_descent", "theorem1"});
    if (a.contains("lemma_descent")) cfg.assert_descent = a["lemma_descent"].get<bool>();
    if (a.contains("theorem1")) cfg.assert_theorem1 = a["theorem1"].get<bool>();
  }
  return cfg;
}

namespace {

[[noreturn]] void ingest_error(const std::string& path, std::size_t pos,
                               const std::string& what) {
  throw std::runtime_error("image " + path + " (offset " + std::to_string(pos) +
                           "): " + what);
}

GridFunction load_pgm(const std::string& path, std::ifstream& in) {
  std::string magic;
  in >> magic;
  const bool ascii = magic == "P2";
  if (!ascii && magic != "P5") {
    ingest_error(path, 0, "unsupported magic '" + magic + "'");
  }
  auto next_token = [&]() -> long {
    // header tokens with '#' comments
    while (true) {
      int c = in.peek();
      if (c == EOF) ingest_error(path, static_cast<std::size_t>(in.tellg()), "truncated header");
      if (std::isspace(c)) {
        in.get();
      } else if (c == '#') {
        std::string line;
        std::getline(in, line);
      } else {
        break;
      }
    }
    long v;
    if (!(in >> v)) ingest_error(path, static_cast<std::size_t>(in.tellg()), "malformed header token");
    return v;
  };
  const long w = next_token();
  const long h = next_token();
  const long maxval = next_token();
  if (w <= 0 || h <= 0) ingest_error(path, static_cast<std::size_t>(in.tellg()), "nonpositive dimensions");
  if (maxval <= 0) ingest_error(path, static_cast<std::size_t>(in.tellg()), "maxval must be positive");

  GridFunction g{static_cast<std::size_t>(h), static_cast<std::size_t>(w),
                 std::vector<double>(static_cast<std::size_t>(w * h))};
  if (ascii) {
    for (auto& v : g.values) {
      long raw;
      if (!(in >> raw)) ingest_error(path, static_cast<std::size_t>(in.tellg()), "truncated pixel data");
      v = static_cast<double>(raw) / static_cast<double>(maxval);
    }
  } else {
    in.get();  // single whitespace after maxval
    if (maxval > 255) ingest_error(path, static_cast<std::size_t>(in.tellg()), "16-bit P5 not supported");
    std::vector<unsigned char> raw(g.values.size());
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<long>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
      ingest_error(path, static_cast<std::size_t>(in.tellg()), "truncated pixel data");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
      g.values[i] = static_cast<double>(raw[i]) / static_cast<double>(maxval);
    }
  }
  return g;
}

GridFunction load_csv_grid(const std::string& path, std::ifstream& in) {
  GridFunction g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t cols = 0;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        ingest_error(path, lineno, "line " + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
      if (!(v >= 0.0) || !(v <= 1.0)) {
        ingest_error(path, lineno, "line " + std::to_string(lineno) + ": CSV value outside [0,1]");
      }
      g.values.push_back(v);
      ++cols;
    }
    if (g.cols == 0) {
      g.cols = cols;
    } else if (cols != g.cols) {
      ingest_error(path, lineno, "line " + std::to_string(lineno) + ": ragged row (" +
                                     std::to_string(cols) + " vs " + std::to_string(g.cols) + ")");
    }
    ++g.rows;
  }
  if (g.rows == 0) ingest_error(path, 0, "empty CSV grid");
  return g;
}

}  // namespace

GridFunction load_grayscale_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("image " + path + ": cannot open");
  const int c0 = in.peek();
  if (c0 == 'P') return load_pgm(path, in);
  return load_csv_grid(path, in);
}

namespace {

constexpr const char* kLogHeader =
    "t,x,y,S_star,S_rand,gamma,psi,M,Lbar,descent_lhs,descent_rhs,bound_rhs";

std::string serialize_examples_x(const std::vector<TeachingExample>& ex) {
  std::string out;
  for (std::size_t j = 0; j < ex.size(); ++j) {
    if (j) out += '|';
    for (std::size_t d = 0; d < ex[j].x.size(); ++d) {
      if (d) out += ';';
      out += fmt17(ex[j].x[d]);
    }
  }
  return out;
}

std::string serialize_examples_y(const std::vector<TeachingExample>& ex) {
  std::string out;
  for (std::size_t j = 0; j < ex.size(); ++j) {
    if (j) out += '|';
    out += fmt17(ex[j].y);
  }
  return out;
}

void write_rows(std::ofstream& out, const std::vector<IterationRecord>& records) {
  out << kLogHeader << '\n';
  for (const auto& r : records) {
    out << r.t << ',' << serialize_examples_x(r.selected) << ','
        << serialize_examples_y(r.selected) << ',' << fmt17(r.S_star) << ','
        << fmt17(r.S_rand) << ',' << fmt17(r.gamma) << ',' << fmt17(r.psi)
        << ',' << fmt17(r.M) << ',' << fmt17(r.Lbar) << ','
        << fmt17(r.descent_lhs) << ',' << fmt17(r.descent_rhs) << ','
        << fmt17(r.bound_rhs) << '\n';
  }
}

}  // namespace

void write_iteration_log(const std::vector<IterationRecord>& records,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("log " + path + ": cannot open for writing");
  write_rows(out, records);
  if (!out) throw std::runtime_error("log " + path + ": write failure");
}

void write_session_log(const SessionLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("log " + path + ": cannot open for writing");
  write_rows(out, log.records);
  out << "# converged=" << (log.converged ? 1 : 0)
      << " iterations=" << log.teaching_dimension
      << " final_M=" << fmt17(log.final_m) << '\n';
  if (!out) throw std::runtime_error("log " + path + ": write failure");
}

std::vector<IterationRecord> read_iteration_log(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("log " + path + ": cannot open");
  std::string line;
  if (!std::getline(in, line) || line != kLogHeader) {
    throw std::runtime_error("log " + path + ": bad or missing header");
  }
  std::vector<IterationRecord> records;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 12) {
      throw std::runtime_error("log " + path + ": malformed row: " + line);
    }
    IterationRecord r;
    r.t = std::stoi(cells[0]);
    // x and y columns: examples '|'-separated, coordinates ';'-separated
    std::vector<Point> xs;
    {
      std::stringstream xss(cells[1]);
      std::string exs;
      while (std::getline(xss, exs, '|')) {
        Point p;
        std::stringstream css(exs);
        std::string coord;
        while (std::getline(css, coord, ';')) p.push_back(std::strtod(coord.c_str(), nullptr));
        xs.push_back(std::move(p));
      }
    }
    {
      std::stringstream yss(cells[2]);
      std::string ys;
      std::size_t j = 0;
      while (std::getline(yss, ys, '|')) {
        if (j >= xs.size()) throw std::runtime_error("log " + path + ": x/y count mismatch");
        r.selected.push_back({xs[j], std::strtod(ys.c_str(), nullptr)});
        ++j;
      }
      if (j != xs.size()) throw std::runtime_error("log " + path + ": x/y count mismatch");
    }
    r.S_star = std::strtod(cells[3].c_str(), nullptr);
    r.S_rand = std::strtod(cells[4].c_str(), nullptr);
    r.gamma = std::strtod(cells[5].c_str(), nullptr);
    r.psi = std::strtod(cells[6].c_str(), nullptr);
    r.M = std::strtod(cells[7].c_str(), nullptr);
    r.Lbar = std::strtod(cells[8].c_str(), nullptr);
    r.descent_lhs = std::strtod(cells[9].c_str(), nullptr);
    r.descent_rhs = std::strtod(cells[10].c_str(), nullptr);
    r.bound_rhs = std::strtod(cells[11].c_str(), nullptr);
    records.push_back(std::move(r));
  }
  return records;
}

SessionConfig build_session(const RunConfig& config) {
  Scenario scenario = make_scenario(config.scenario_name, config.overrides);
  TeacherPolicy policy = config.teacher;
  policy.seed = config.seed;
  if (config.alt_image) {
    RkhsFunction alt = make_target(BaseFunction{*config.alt_image},
                                   scenario.target.kernel());
    policy.alt = AltTeaching{config.alt_prob.value_or(0.0), std::move(alt)};
  }
  return session_from_scenario(scenario, std::move(policy),
                               config.assert_descent, config.assert_theorem1);
}

}  // namespace nimt
