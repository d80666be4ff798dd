#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "motwave/numeric_io.hpp"

namespace motwave::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double need_double(const std::string& key, const std::string& value) {
  auto v = parse_double(value);
  if (!v) throw config_error("config key '" + key + "': not a number: '" + value + "'");
  return *v;
}

int need_int(const std::string& key, const std::string& value) {
  auto v = parse_int(value);
  if (!v) throw config_error("config key '" + key + "': not an integer: '" + value + "'");
  return static_cast<int>(*v);
}

}  // namespace

std::vector<int> parse_sweep_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto v = parse_int(trim(item));
    if (!v || *v < 2) throw config_error("sweep: expected comma-separated folds >= 2, got '" + item + "'");
    out.push_back(static_cast<int>(*v));
  }
  if (out.empty()) throw config_error("sweep: empty list");
  return out;
}

void RunConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "xi") params.xi = need_double(key, value);
    else if (key == "k_d") params.k_d = need_double(key, value);
    else if (key == "v_p") params.v_p = need_double(key, value);
    else if (key == "gamma") params.gamma = need_double(key, value);
    else if (key == "R0") params.R0 = need_double(key, value);
    else if (key == "beta") beta = need_double(key, value);
    else if (key == "m") m = need_int(key, value);
    else if (key == "m_max") m_max = need_int(key, value);
    else if (key == "modes") modes = need_int(key, value);
    else if (key == "grid") grid = need_int(key, value);
    else if (key == "s_max") s_max = need_double(key, value);
    else if (key == "ds") ds = need_double(key, value);
    else if (key == "tol") tol = need_double(key, value);
    else if (key == "out") out_dir = value;
    else if (key == "format") format = value;
    else if (key == "sweep") sweep = parse_sweep_list(value);
    else throw config_error("unknown config key '" + key + "' (line " + std::to_string(lineno) + ")");
  }
}

void RunConfig::check() const {
  if (format != "csv" && format != "json")
    throw config_error("format must be 'csv' or 'json', got '" + format + "'");
  if (!Grid::valid_size(grid))
    throw config_error("grid must be a power of two >= 16, got " + std::to_string(grid));
  if (!(tol > 0.0)) throw config_error("tol must be > 0");
  if (modes < 0) throw config_error("modes must be >= 0");
}

}  // namespace motwave::cli
