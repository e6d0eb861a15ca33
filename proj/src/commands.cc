#include "adt/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>

#include "adt/binary_outcome.h"
#include "adt/error.h"
#include "adt/failure_time.h"
#include "adt/fisher.h"
#include "adt/parallel.h"
#include "adt/report.h"

namespace adt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string point_label(const Point2& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "w_%.4f_%.4f", p.x1, p.x2);
  return buf;
}

std::string marginal_label(int l, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "m%d_%.4f", l, x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

std::filesystem::path output_dir(const ScenarioConfig& cfg, const std::string& override_dir) {
  const std::string dir = override_dir.empty() ? cfg.output_directory : override_dir;
  if (dir.empty()) return {};
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

bool ScenarioResult::certified() const {
  if (!joint.certified) return false;
  if (quantile) {
    if (!quantile->marginal[0].certified || !quantile->marginal[1].certified) return false;
    if (!(quantile->product_gap <= config.optimizer.tolerance)) return false;
  }
  return true;
}

CandidateSet build_candidates(const ScenarioConfig& cfg) {
  const Grid grid(cfg.grid_increment);
  const std::vector<Point2> points = grid.points();
  const BivariateModel model = cfg.bivariate_model();
  std::vector<Eigen::MatrixXd> elemental(points.size());
  std::vector<char> keep(points.size(), 1);

  switch (cfg.model) {
    case ModelKind::Independent:
      parallel_for(points.size(), [&](std::size_t i) {
        elemental[i] = info_independent(model, points[i].x1, points[i].x2);
      });
      break;
    case ModelKind::Copula: {
      const CopulaInfoEngine engine(model, cfg.copula_spec(), cfg.quadrature_rule());
      const std::vector<double>& axis = grid.axis();
      std::vector<AxisTable> a1(axis.size()), a2(axis.size());
      parallel_for(2 * axis.size(), [&](std::size_t k) {
        if (k < axis.size()) a1[k] = engine.axis(0, axis[k]);
        else a2[k - axis.size()] = engine.axis(1, axis[k - axis.size()]);
      });
      const std::size_t n = axis.size();
      parallel_for(points.size(), [&](std::size_t i) {
        elemental[i] = engine.info(points[i].x1, points[i].x2, a1[i / n], a2[i % n]);
      });
      break;
    }
    case ModelKind::Binary: {
      const BinaryScenario sc = cfg.binary_scenario();
      parallel_for(points.size(), [&](std::size_t i) {
        try {
          elemental[i] = info_binary(sc, points[i].x1, points[i].x2);
        } catch (const DegenerateCellError&) {
          keep[i] = 0;
        }
      });
      break;
    }
  }
  CandidateSet out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!keep[i]) continue;
    out.points.push_back(points[i]);
    out.elemental.push_back(std::move(elemental[i]));
  }
  if (out.points.empty()) throw NumericError("no grid point has a usable information matrix");
  return out;
}

Criterion scenario_criterion(const ScenarioConfig& cfg) {
  switch (cfg.criterion) {
    case CriterionKind::D:
      return Criterion::d_optimal();
    case CriterionKind::CQuantile:
      return Criterion::c_optimal(c_vector(cfg.bivariate_model(), cfg.use));
    case CriterionKind::CP11:
      return Criterion::c_optimal(p11_use_gradient(cfg.binary_scenario(), cfg.use));
  }
  throw ValidationError("unknown criterion");
}

ScenarioResult solve(const ScenarioConfig& cfg) {
  validate(cfg);
  ScenarioResult r;
  r.config = cfg;
  r.criterion = scenario_criterion(cfg);
  if (r.criterion.kind == Criterion::Kind::C) r.c = Eigen::Vector4d(r.criterion.c);
  r.candidates = build_candidates(cfg);
  r.joint = optimize_design(r.candidates.points, r.candidates.elemental, r.criterion,
                            cfg.grid_increment, cfg.optimizer);

  if (cfg.criterion == CriterionKind::CQuantile) {
    const BivariateModel model = cfg.bivariate_model();
    QuantileResult q;
    q.t_alpha = failure_quantile(model, cfg.use);
    const Grid grid(cfg.grid_increment);
    std::array<MarginalDesign, 2> optimal;
    for (std::size_t l = 0; l < 2; ++l) {
      std::vector<Eigen::MatrixXd> el;
      for (double x : grid.axis()) el.emplace_back(marginal_info(model.components[l], model.plan, x));
      const Eigen::Vector2d cl((*r.c)(2 * l), (*r.c)(2 * l + 1));
      q.marginal[l] = optimize_design(grid.axis(), el, Criterion::c_optimal(cl), cfg.grid_increment,
                                      cfg.optimizer);
      q.elfving[l] = cfg.use.x_u[l] < 0.0
                         ? elfving_marginal_weight(model.components[l], model.plan, cfg.use.x_u[l])
                         : kNaN;
      optimal[l] = q.marginal[l].design;
    }
    q.product = product_design(optimal[0], optimal[1]);
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (std::size_t i = 0; i < q.product.support.size(); ++i) {
      m += q.product.weights[i] *
           info_independent(model, q.product.support[i].x1, q.product.support[i].x2);
    }
    q.product_criterion = c_criterion(m, *r.c);
    try {
      q.product_gap = equivalence_gap(r.candidates.elemental, r.criterion, m);
    } catch (const ValidationError&) {
      q.product_gap = std::numeric_limits<double>::infinity();
    }
    r.quantile = std::move(q);
  }
  return r;
}

SweepTable sweep_scenario(const ScenarioConfig& cfg, const std::string& parameter, double from,
                          double to, int steps) {
  const ScenarioResult nominal = solve(cfg);
  std::vector<std::map<std::string, double>> data;
  SweepTable table;
  table.parameter = parameter;
  std::map<Point2, int> joint_points;
  std::map<std::pair<int, double>, int> marginal_points;

  const auto rows = sweep(from, to, steps, [&](double value) {
    ScenarioConfig c = cfg;
    set_parameter(c, parameter, value);
    const ScenarioResult r = solve(c);
    std::map<std::string, double> row;
    row["criterion"] = r.joint.criterion;
    row["gap"] = r.joint.gap;
    row["certified"] = r.certified() ? 1.0 : 0.0;
    std::map<Point2, std::size_t> index;
    for (std::size_t i = 0; i < r.candidates.points.size(); ++i) index[r.candidates.points[i]] = i;
    const ElementalFn<Point2> elemental = [&](const Point2& p) {
      const auto it = index.find(p);
      if (it == index.end()) throw NumericError("nominal support point is not a candidate");
      return r.candidates.elemental[it->second];
    };
    row["eff_nominal"] = efficiency(nominal.joint.design, r.joint.design, r.criterion, elemental);
    for (std::size_t i = 0; i < r.joint.design.support.size(); ++i) {
      joint_points[r.joint.design.support[i]] = 0;
      row[point_label(r.joint.design.support[i])] = r.joint.design.weights[i];
    }
    if (r.quantile) {
      for (int l = 0; l < 2; ++l) {
        const MarginalDesign& d = r.quantile->marginal[static_cast<std::size_t>(l)].design;
        for (std::size_t i = 0; i < d.support.size(); ++i) {
          marginal_points[{l + 1, d.support[i]}] = 0;
          row[marginal_label(l + 1, d.support[i])] = d.weights[i];
        }
      }
    }
    data.push_back(std::move(row));
    return SweepRow{};
  });

  table.columns = {"criterion", "gap", "certified", "eff_nominal"};
  for (const auto& [p, unused] : joint_points) table.columns.push_back(point_label(p));
  for (const auto& [key, unused] : marginal_points) {
    table.columns.push_back(marginal_label(key.first, key.second));
  }
  std::size_t next = 0;
  for (const SweepRow& row : rows) {
    table.values.push_back(row.value);
    std::vector<double> cells(table.columns.size(), kNaN);
    if (row.error.empty()) {
      const auto& d = data[next++];
      for (std::size_t j = 0; j < table.columns.size(); ++j) {
        const auto it = d.find(table.columns[j]);
        if (it != d.end()) cells[j] = it->second;
        else if (j >= 4) cells[j] = 0.0;  // weight columns: absent point has weight 0
      }
      table.status.push_back("ok");
    } else {
      table.status.push_back(row.error);
    }
    table.cells.push_back(std::move(cells));
  }
  return table;
}

int run_command(const std::string& path, const std::string& output_override, std::ostream& out,
                std::ostream& err) {
  try {
    const ScenarioConfig cfg = load_scenario(path);
    const ScenarioResult r = solve(cfg);
    const std::string report = design_report(r);
    out << report;
    const auto dir = output_dir(cfg, output_override);
    if (!dir.empty()) {
      write_file(dir / "design.txt", report);
      write_file(dir / "manifest.txt", manifest(cfg, "run"));
    }
    if (!r.certified()) {
      err << "warning: design not certified (equivalence gap above tolerance)\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int validate_command(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const ScenarioConfig cfg = load_scenario(path);
    out << "OK\n" << resolved_yaml(cfg);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int sweep_command(const std::string& path, const std::string& parameter, double from, double to,
                  int steps, const std::string& output_override, std::ostream& out,
                  std::ostream& err) {
  try {
    const ScenarioConfig cfg = load_scenario(path);
    {
      ScenarioConfig probe = cfg;
      set_parameter(probe, parameter, from);
    }
    const SweepTable table = sweep_scenario(cfg, parameter, from, to, steps);
    const std::string csv = sweep_csv(cfg, table);
    out << csv;
    const auto dir = output_dir(cfg, output_override);
    if (!dir.empty()) {
      write_file(dir / ("sweep_" + parameter + ".csv"), csv);
      write_file(dir / ("manifest_sweep_" + parameter + ".txt"), manifest(cfg, "sweep"));
    }
    bool all_ok = true;
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      if (table.status[i] != "ok" || table.cells[i][2] != 1.0) all_ok = false;
    }
    if (!all_ok) {
      err << "warning: some sweep rows failed or are not certified\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace adt
