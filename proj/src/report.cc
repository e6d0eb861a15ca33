#include "adt/report.h"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace adt {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

template <class Point>
void optimizer_footer(std::ostringstream& os, const OptimizedDesign<Point>& r) {
  os << "criterion_value: " << fmt("%.10e", r.criterion) << "\n";
  os << "equivalence_gap: " << fmt("%.3e", r.gap) << "\n";
  os << "iterations: " << r.iterations << "\n";
  os << "merged: " << r.merged << "\n";
  os << "certified: " << yes_no(r.certified) << "\n";
}

void joint_table(std::ostringstream& os, const Design& d) {
  os << "x1      x2      weight\n";
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    os << fmt("%.4f", d.support[i].x1) << "  " << fmt("%.4f", d.support[i].x2) << "  "
       << fmt("%.6f", d.weights[i]) << "\n";
  }
}

void marginal_table(std::ostringstream& os, const MarginalDesign& d) {
  os << "x       weight\n";
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    os << fmt("%.4f", d.support[i]) << "  " << fmt("%.6f", d.weights[i]) << "\n";
  }
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += (ch == '\n' ? ' ' : ch);
  }
  return out + "\"";
}

}  // namespace

std::string design_report(const ScenarioResult& r) {
  const ScenarioConfig& cfg = r.config;
  std::ostringstream os;
  os << "# adt-designer design v1\n";
  os << "scenario: " << cfg.name << "\n";
  os << "model: " << to_string(cfg.model) << "\n";
  os << "copula: " << cfg.copula_spec().describe() << "\n";
  os << "criterion: " << to_string(cfg.criterion) << "\n";
  os << "grid_increment: " << fmt("%.6f", cfg.grid_increment) << "\n";
  if (r.quantile) os << "t_alpha: " << fmt("%.8f", r.quantile->t_alpha) << "\n";
  if (r.c) {
    os << "c_vector:";
    for (Eigen::Index i = 0; i < r.c->size(); ++i) os << " " << fmt("%.10e", (*r.c)(i));
    os << "\n";
  }
  os << "\n[joint]\n";
  joint_table(os, r.joint.design);
  optimizer_footer(os, r.joint);
  if (r.quantile) {
    const QuantileResult& q = *r.quantile;
    for (std::size_t l = 0; l < 2; ++l) {
      os << "\n[marginal " << l + 1 << "]\n";
      marginal_table(os, q.marginal[l].design);
      optimizer_footer(os, q.marginal[l]);
      os << "elfving_weight_at_0: " << fmt("%.6f", q.elfving[l]) << "\n";
    }
    os << "\n[product]\n";
    joint_table(os, q.product);
    os << "criterion_value: " << fmt("%.10e", q.product_criterion) << "\n";
    os << "equivalence_gap: " << fmt("%.3e", q.product_gap) << "\n";
  }
  os << "\nstatus: " << (r.certified() ? "certified" : "uncertified") << "\n";
  return os.str();
}

std::string manifest(const ScenarioConfig& cfg, const std::string& command) {
  std::ostringstream os;
  os << "# adt-designer manifest v1\n";
  os << "program: adt-designer " << kProgramVersion << "\n";
  os << "command: " << command << "\n";
  os << "eigen: " << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "."
     << EIGEN_MINOR_VERSION << "\n";
  os << "compiler: " << __VERSION__ << "\n";
  os << "config:\n";
  std::istringstream yaml(resolved_yaml(cfg));
  for (std::string line; std::getline(yaml, line);) os << "  " << line << "\n";
  return os.str();
}

std::string sweep_csv(const ScenarioConfig& cfg, const SweepTable& t) {
  std::ostringstream os;
  os << "# adt-designer sweep v1\n";
  os << "# scenario=" << cfg.name << " parameter=" << t.parameter
     << " criterion=" << to_string(cfg.criterion) << "\n";
  os << "value,status";
  for (const auto& c : t.columns) os << "," << c;
  os << "\n";
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    os << fmt("%.6f", t.values[i]) << "," << (t.status[i] == "ok" ? "ok" : csv_quote(t.status[i]));
    for (double v : t.cells[i]) {
      os << ",";
      if (!std::isnan(v)) os << fmt("%.6e", v);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace adt
