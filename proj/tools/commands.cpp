#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "motwave/continuation.hpp"
#include "motwave/errors.hpp"
#include "motwave/functional.hpp"
#include "motwave/geometry.hpp"
#include "motwave/linear_analysis.hpp"
#include "motwave/numeric_io.hpp"

namespace motwave::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int default_modes(const RunConfig& cfg, int fallback) {
  return cfg.modes > 0 ? cfg.modes : fallback;
}

}  // namespace

int cmd_dispersion(const RunConfig& cfg) {
  cfg.check();
  cfg.params.validate();
  if (!cfg.params.rest_state_compatible())
    throw config_error("rest-state compatibility violated: k_d * R0 must equal 2 * v_p");
  if (cfg.m_max < 2) throw config_error("m_max must be >= 2");

  std::ostringstream csv;
  csv << "m,growth_rate,marginal\n";
  for (int m = 0; m <= cfg.m_max; ++m) {
    const double rate = growth_rate(m, cfg.params);
    const double marginal = (m >= 2) ? bifurcation_beta(m) : std::nan("");
    csv << m << ',' << format_sig17(rate) << ',' << format_sig17(marginal) << '\n';
  }
  write_file(fs::path(cfg.out_dir) / "dispersion.csv", csv.str());

  const std::vector<int> unstable = unstable_modes(cfg.params, cfg.m_max);
  std::cout << "unstable modes: {";
  for (size_t i = 0; i < unstable.size(); ++i) std::cout << (i ? ", " : "") << unstable[i];
  std::cout << "}\n";

  if (cfg.format == "json") {
    json rows = json::array();
    for (int m = 0; m <= cfg.m_max; ++m) {
      json row{{"m", m}, {"growth_rate", growth_rate(m, cfg.params)}};
      if (m >= 2) row["marginal"] = bifurcation_beta(m);
      rows.push_back(row);
    }
    write_file(fs::path(cfg.out_dir) / "dispersion.json", json{{"rows", rows}}.dump(2) + "\n");
  }
  return exit_ok;
}

int cmd_bifurcation_points(const RunConfig& cfg) {
  cfg.check();
  const int m_min = cfg.m;
  if (m_min < 2 || cfg.m_max < m_min)
    throw config_error("need 2 <= m <= m_max for bifurcation-points");

  const int modes = default_modes(cfg, 64);
  const Grid grid(cfg.grid);

  std::ostringstream csv;
  csv << "m,beta_m,transversality_coeff,kernel_dim\n";
  for (int m = m_min; m <= cfg.m_max; ++m) {
    const SpectralReport rep = kernel_analysis(bifurcation_beta(m), modes, grid);
    csv << m << ',' << format_sig17(bifurcation_beta(m)) << ','
        << format_sig17(transversality_coefficient(m)) << ',' << rep.kernel_dim << '\n';
  }
  write_file(fs::path(cfg.out_dir) / "bifurcation_points.csv", csv.str());
  return exit_ok;
}

namespace {

json point_to_json(const Branch& branch, const BranchPoint& bp) {
  json coeffs = json::object();
  for (int n : branch.config.modes())
    coeffs[std::to_string(n)] = bp.point.shape.coeff(n);
  return json{{"s", bp.s},
              {"beta", bp.point.beta},
              {"V", bp.point.V},
              {"mu", bp.point.shape.mu},
              {"coefficients", coeffs},
              {"residual_newton", bp.point.residual_norm},
              {"residual_verify", bp.residual_verify},
              {"iters", bp.newton_iters}};
}

std::string branch_json(const Branch& branch, const VerifyReport& verify) {
  const auto& c = branch.config;
  json meta{{"m", c.m},
            {"M", c.M},
            {"N", c.N},
            {"s_max", c.s_max},
            {"ds", c.ds},
            {"newton_tol", c.newton_tol},
            {"newton_max_iter", c.newton_max_iter},
            {"completed", branch.completed},
            {"stop_reason", branch.stop_reason},
            {"failed_at", branch.failed_at >= 0.0 ? json(branch.failed_at) : json(nullptr)},
            {"max_residual_verify", verify.max_discrepancy}};
  json points = json::array();
  for (const auto& bp : branch.points) points.push_back(point_to_json(branch, bp));
  return json{{"metadata", meta}, {"points", points}}.dump(2) + "\n";
}

// One fold: continuation, verification, exports. Returns the exit code;
// human-readable summary goes to `log` so sweep runs can serialize output.
int run_single_branch(const RunConfig& cfg, int fold, std::ostream& log, std::ostream& err) {
  ContinuationConfig cc;
  cc.m = fold;
  cc.M = default_modes(cfg, 48);
  cc.N = cfg.grid;
  cc.s_max = cfg.s_max;
  cc.ds = cfg.ds;
  cc.newton_tol = cfg.tol;
  cc.validate();

  Branch branch = continue_branch(cc);
  const VerifyReport verify = verify_branch(branch, Grid(2 * cc.N));

  const fs::path out(cfg.out_dir);
  {
    std::ostringstream csv;
    write_branch_csv(csv, branch);
    write_file(out / ("branch_m" + std::to_string(fold) + ".csv"), csv.str());
  }
  write_file(out / ("branch_m" + std::to_string(fold) + ".json"), branch_json(branch, verify));

  // Shape exports at a few amplitudes spread over the computed range.
  if (!branch.points.empty()) {
    const double s_top = branch.points.back().s;
    std::set<size_t> picks;
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
      const double target = frac * s_top;
      size_t best = 0;
      for (size_t i = 1; i < branch.points.size(); ++i)
        if (std::abs(branch.points[i].s - target) < std::abs(branch.points[best].s - target))
          best = i;
      picks.insert(best);
    }
    const Grid grid(cc.N);
    for (size_t i : picks) {
      const auto& bp = branch.points[i];
      const BoundaryCurve curve = synthesize_boundary(bp.point.shape, grid);
      std::ostringstream csv;
      write_shape_csv(csv, curve, curvature(curve));
      write_file(out / ("shape_m" + std::to_string(fold) + "_s" + format_shortest(bp.s) + ".csv"),
                 csv.str());
    }
  }

  if (!branch.completed) {
    err << "branch m=" << fold << ": stopped at s = " << format_shortest(branch.failed_at)
        << " (" << branch.stop_reason << ")\n";
    return exit_solver;
  }
  bool tol_ok = verify.max_discrepancy <= verify_residual_contract;
  for (const auto& bp : branch.points) tol_ok = tol_ok && bp.point.residual_norm <= cc.newton_tol;
  if (!tol_ok) {
    err << "branch m=" << fold << ": residual contract breached\n";
    return exit_tolerance;
  }
  log << "branch m=" << fold << ": " << branch.points.size() << " points, reached s = "
      << format_shortest(branch.points.back().s) << ", max verify residual "
      << format_shortest(verify.max_discrepancy) << '\n';
  return exit_ok;
}

}  // namespace

int cmd_branch(const RunConfig& cfg) {
  cfg.check();
  std::vector<int> folds = cfg.sweep.empty() ? std::vector<int>{cfg.m} : cfg.sweep;

  if (folds.size() == 1) return run_single_branch(cfg, folds[0], std::cout, std::cerr);

  // Independent folds run concurrently; files are disjoint and the console
  // summaries are buffered per fold, so output order does not depend on the
  // schedule.
  struct TaskResult {
    int code;
    std::string log, err;
  };
  std::vector<std::future<TaskResult>> tasks;
  tasks.reserve(folds.size());
  for (int fold : folds)
    tasks.push_back(std::async(std::launch::async, [&cfg, fold] {
      std::ostringstream log, err;
      const int code = run_single_branch(cfg, fold, log, err);
      return TaskResult{code, log.str(), err.str()};
    }));
  int worst = exit_ok;
  for (auto& t : tasks) {
    const TaskResult r = t.get();
    std::cout << r.log;
    std::cerr << r.err;
    worst = std::max(worst, r.code);
  }
  return worst;
}

int cmd_residual(const RunConfig& cfg, const std::string& point_file) {
  cfg.check();

  std::ifstream in(point_file);
  if (!in) throw config_error("cannot open point file: " + point_file);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("point file is not valid JSON: ") + e.what());
  }

  static const std::set<std::string> allowed{"beta", "V", "mu", "coefficients"};
  for (const auto& [key, _] : doc.items())
    if (!allowed.count(key)) throw config_error("point file: unknown key '" + key + "'");
  if (!doc.contains("beta") || !doc["beta"].is_number())
    throw config_error("point file: key 'beta' missing or not a number");

  SolutionPoint point;
  point.beta = doc["beta"].get<double>();
  if (doc.contains("V")) {
    if (!doc["V"].is_number()) throw config_error("point file: key 'V' must be a number");
    point.V = doc["V"].get<double>();
  }
  if (doc.contains("mu")) {
    if (!doc["mu"].is_number()) throw config_error("point file: key 'mu' must be a number");
    point.shape.mu = doc["mu"].get<double>();
  }
  if (doc.contains("coefficients")) {
    if (!doc["coefficients"].is_object())
      throw config_error("point file: key 'coefficients' must be an index->value object");
    for (const auto& [key, value] : doc["coefficients"].items()) {
      const auto idx = parse_int(key);
      if (!idx || *idx < 2)
        throw config_error("point file: coefficient index '" + key + "' must be an integer >= 2");
      if (!value.is_number())
        throw config_error("point file: coefficient '" + key + "' must be a number");
      point.shape.set_coeff(static_cast<int>(*idx), value.get<double>());
    }
  }
  if (!point.shape.is_admissible())
    throw config_error("point file: shape outside the admissible ball");

  const Grid grid(cfg.grid);
  const CosineSeries res = evaluate_residual(point.beta, point.V, point.shape, grid);

  const int show = std::min(default_modes(cfg, 64), res.max_mode());
  for (int k = 0; k <= show; ++k)
    std::cout << "F[" << k << "] = " << format_sig17(res.coeff(k)) << '\n';
  const double sup = res.sup_norm();
  std::cout << "sup_norm = " << format_sig17(sup) << '\n';
  return sup <= cfg.tol ? exit_ok : exit_tolerance;
}

int cmd_linearize(const RunConfig& cfg) {
  cfg.check();
  const double beta = cfg.beta ? *cfg.beta : bifurcation_beta(cfg.m);
  const int modes = default_modes(cfg, 64);
  const Grid grid(cfg.grid);

  SolutionPoint trivial;
  trivial.beta = beta;
  const JacobianMatrix jac = residual_jacobian(trivial, grid, modes, fold_modes(1, modes));

  std::ostringstream csv;
  csv << "mode,dF_dbeta,dF_dmu,dF_dV";
  for (int n : jac.shape_modes) csv << ",dF_da" << n;
  csv << '\n';
  for (int r = 0; r <= jac.row_max; ++r) {
    csv << r << ',' << format_sig17(jac.beta_col[r]) << ','
        << format_sig17(jac.cols(r, JacobianMatrix::col_mu)) << ','
        << format_sig17(jac.cols(r, JacobianMatrix::col_V));
    for (size_t i = 0; i < jac.shape_modes.size(); ++i)
      csv << ',' << format_sig17(jac.cols(r, 2 + static_cast<Eigen::Index>(i)));
    csv << '\n';
  }
  write_file(fs::path(cfg.out_dir) / "linearization.csv", csv.str());
  std::cout << "linearization at beta = " << format_shortest(beta) << " written ("
            << (jac.row_max + 1) << " rows)\n";
  return exit_ok;
}

}  // namespace motwave::cli
