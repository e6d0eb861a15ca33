#include "adt/scenario.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "adt/error.h"

namespace adt {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& msg) {
  throw ValidationError("field '" + field + "': " + msg);
}

void reject_unknown(const YAML::Node& node, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      field_error(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

template <class T>
T scalar(const YAML::Node& node, const std::string& field) {
  if (!node || !node.IsScalar()) field_error(field, "expected a scalar value");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    field_error(field, "cannot parse '" + node.Scalar() + "'");
  }
}

double real(const YAML::Node& node, const std::string& field) {
  const double v = scalar<double>(node, field);
  if (!std::isfinite(v)) field_error(field, "must be finite");
  return v;
}

std::array<double, 2> pair(const YAML::Node& node, const std::string& field) {
  if (!node || !node.IsSequence() || node.size() != 2) {
    field_error(field, "expected a list of two numbers");
  }
  return {real(node[0], field + "[0]"), real(node[1], field + "[1]")};
}

template <class F>
void with_field(const std::string& field, F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    field_error(field, e.what());
  } catch (const DomainError& e) {
    field_error(field, e.what());
  }
}

// Shortest text that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Independent: return "independent";
    case ModelKind::Copula: return "copula";
    case ModelKind::Binary: return "binary";
  }
  return "?";
}

std::string to_string(CriterionKind k) {
  switch (k) {
    case CriterionKind::D: return "D";
    case CriterionKind::CQuantile: return "c-quantile";
    case CriterionKind::CP11: return "c-p11";
  }
  return "?";
}

BivariateModel ScenarioConfig::bivariate_model() const {
  return BivariateModel{components, TimePlan(times)};
}

CopulaSpec ScenarioConfig::copula_spec() const {
  if (copula.family == "frank") return CopulaSpec::frank(copula.parameter);
  if (copula.family == "gaussian") return CopulaSpec::gaussian(copula.parameter);
  return CopulaSpec::independence();
}

QuadratureRule ScenarioConfig::quadrature_rule() const {
  return QuadratureRule(quadrature_nodes, quadrature_panels);
}

BinaryScenario ScenarioConfig::binary_scenario() const {
  return BinaryScenario{bivariate_model(), copula_spec(), use.thresholds};
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.name.empty()) field_error("name", "must not be empty");
  for (std::size_t l = 0; l < 2; ++l) {
    with_field("components[" + std::to_string(l) + "]", [&] { cfg.components[l].validate(); });
  }
  with_field("times", [&] { TimePlan plan(cfg.times); });
  with_field("copula", [&] { (void)cfg.copula_spec(); });
  if (cfg.copula.family != "independence" && cfg.copula.family != "frank" &&
      cfg.copula.family != "gaussian") {
    field_error("copula.family", "must be independence, frank or gaussian");
  }
  with_field("grid.increment", [&] { Grid g(cfg.grid_increment); });
  with_field("quadrature", [&] { (void)cfg.quadrature_rule(); });
  const OptimizerOptions& o = cfg.optimizer;
  if (!(o.tolerance > 0.0)) field_error("optimizer.tolerance", "must be positive");
  if (o.max_iterations < 1) field_error("optimizer.max_iterations", "must be at least 1");
  if (!(o.prune_threshold >= 0.0 && o.prune_threshold < 1.0)) {
    field_error("optimizer.prune_threshold", "must lie in [0, 1)");
  }
  if (!(o.merge_threshold >= 0.0 && o.merge_threshold < 1.0)) {
    field_error("optimizer.merge_threshold", "must lie in [0, 1)");
  }

  switch (cfg.model) {
    case ModelKind::Independent:
      if (cfg.copula.family != "independence") {
        field_error("copula", "the independent model takes no copula");
      }
      if (cfg.criterion == CriterionKind::CP11) {
        field_error("criterion", "c-p11 requires the binary model");
      }
      break;
    case ModelKind::Copula:
      if (cfg.criterion != CriterionKind::D) {
        field_error("criterion", "the copula model supports the D-criterion only");
      }
      break;
    case ModelKind::Binary:
      if (cfg.times.size() != 1) {
        field_error("times", "the binary model requires exactly one time point (k = 1), got k = " +
                                 std::to_string(cfg.times.size()));
      }
      if (cfg.criterion == CriterionKind::CQuantile) {
        field_error("criterion", "c-quantile requires the independent model");
      }
      with_field("use.thresholds", [&] { cfg.binary_scenario().validate(); });
      break;
  }
  if (cfg.criterion == CriterionKind::CQuantile) {
    with_field("use", [&] { cfg.use.validate(); });
    for (std::size_t l = 0; l < 2; ++l) {
      if (!(cfg.use.thresholds[l] > 0.0)) {
        field_error("use.thresholds", "must be positive for the failure-time quantile");
      }
    }
  }
}

ScenarioConfig parse_scenario(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ValidationError(std::string("scenario is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ValidationError("scenario must be a mapping");
  reject_unknown(root, "", {"name", "model", "components", "times", "copula", "criterion", "use",
                            "grid", "optimizer", "quadrature", "output"});

  ScenarioConfig cfg;
  cfg.name = scalar<std::string>(root["name"], "name");

  const std::string model = scalar<std::string>(root["model"], "model");
  if (model == "independent") cfg.model = ModelKind::Independent;
  else if (model == "copula") cfg.model = ModelKind::Copula;
  else if (model == "binary") cfg.model = ModelKind::Binary;
  else field_error("model", "must be independent, copula or binary");

  const YAML::Node comps = root["components"];
  if (!comps || !comps.IsSequence() || comps.size() != 2) {
    field_error("components", "expected a list of two components");
  }
  for (std::size_t l = 0; l < 2; ++l) {
    const std::string where = "components[" + std::to_string(l) + "]";
    const YAML::Node c = comps[l];
    if (!c.IsMap()) field_error(where, "expected a mapping");
    reject_unknown(c, where, {"intercept", "slope", "scale"});
    cfg.components[l].intercept = real(c["intercept"], where + ".intercept");
    cfg.components[l].slope = real(c["slope"], where + ".slope");
    cfg.components[l].scale = real(c["scale"], where + ".scale");
  }

  const YAML::Node times = root["times"];
  if (!times || !times.IsSequence() || times.size() == 0) {
    field_error("times", "expected a nonempty list of time points");
  }
  for (std::size_t j = 0; j < times.size(); ++j) {
    cfg.times.push_back(real(times[j], "times[" + std::to_string(j) + "]"));
  }

  if (const YAML::Node cop = root["copula"]) {
    if (!cop.IsMap()) field_error("copula", "expected a mapping");
    reject_unknown(cop, "copula", {"family", "kappa", "rho"});
    cfg.copula.family = scalar<std::string>(cop["family"], "copula.family");
    if (cfg.copula.family == "frank") {
      if (cop["rho"]) field_error("copula.rho", "not a Frank parameter");
      cfg.copula.parameter = real(cop["kappa"], "copula.kappa");
    } else if (cfg.copula.family == "gaussian") {
      if (cop["kappa"]) field_error("copula.kappa", "not a Gaussian parameter");
      cfg.copula.parameter = real(cop["rho"], "copula.rho");
    } else if (cfg.copula.family == "independence") {
      if (cop["kappa"] || cop["rho"]) field_error("copula", "independence takes no parameter");
    } else {
      field_error("copula.family", "must be independence, frank or gaussian");
    }
  } else if (cfg.model != ModelKind::Independent) {
    field_error("copula", "required for the " + model + " model");
  }

  const std::string crit = scalar<std::string>(root["criterion"], "criterion");
  if (crit == "D") cfg.criterion = CriterionKind::D;
  else if (crit == "c-quantile") cfg.criterion = CriterionKind::CQuantile;
  else if (crit == "c-p11") cfg.criterion = CriterionKind::CP11;
  else field_error("criterion", "must be D, c-quantile or c-p11");

  const bool needs_x_u = cfg.criterion != CriterionKind::D;
  const bool needs_thresholds = needs_x_u || cfg.model == ModelKind::Binary;
  if (const YAML::Node use = root["use"]) {
    if (!use.IsMap()) field_error("use", "expected a mapping");
    reject_unknown(use, "use", {"x_u", "thresholds", "alpha"});
    if (use["x_u"]) cfg.use.x_u = pair(use["x_u"], "use.x_u");
    else if (needs_x_u) field_error("use.x_u", "required for criterion " + crit);
    if (use["thresholds"]) cfg.use.thresholds = pair(use["thresholds"], "use.thresholds");
    else if (needs_thresholds) field_error("use.thresholds", "required");
    if (use["alpha"]) cfg.use.alpha = real(use["alpha"], "use.alpha");
  } else if (needs_thresholds) {
    field_error("use", "required for this model and criterion");
  }

  if (const YAML::Node g = root["grid"]) {
    reject_unknown(g, "grid", {"increment"});
    if (g["increment"]) cfg.grid_increment = real(g["increment"], "grid.increment");
  }
  if (const YAML::Node o = root["optimizer"]) {
    reject_unknown(o, "optimizer",
                   {"tolerance", "max_iterations", "prune_threshold", "merge_threshold"});
    if (o["tolerance"]) cfg.optimizer.tolerance = real(o["tolerance"], "optimizer.tolerance");
    if (o["max_iterations"]) {
      cfg.optimizer.max_iterations = scalar<int>(o["max_iterations"], "optimizer.max_iterations");
    }
    if (o["prune_threshold"]) {
      cfg.optimizer.prune_threshold = real(o["prune_threshold"], "optimizer.prune_threshold");
    }
    if (o["merge_threshold"]) {
      cfg.optimizer.merge_threshold = real(o["merge_threshold"], "optimizer.merge_threshold");
    }
  }
  if (const YAML::Node q = root["quadrature"]) {
    reject_unknown(q, "quadrature", {"nodes", "panels"});
    if (q["nodes"]) cfg.quadrature_nodes = scalar<int>(q["nodes"], "quadrature.nodes");
    if (q["panels"]) cfg.quadrature_panels = scalar<int>(q["panels"], "quadrature.panels");
  }
  if (const YAML::Node out = root["output"]) {
    reject_unknown(out, "output", {"directory"});
    if (out["directory"]) {
      cfg.output_directory = scalar<std::string>(out["directory"], "output.directory");
    }
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  if (path.empty()) throw ValidationError("no scenario path given");
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string resolved_yaml(const ScenarioConfig& cfg) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "name" << YAML::Value << cfg.name;
  e << YAML::Key << "model" << YAML::Value << to_string(cfg.model);
  e << YAML::Key << "components" << YAML::Value << YAML::BeginSeq;
  for (const auto& c : cfg.components) {
    e << YAML::Flow << YAML::BeginMap;
    e << YAML::Key << "intercept" << YAML::Value << format_double(c.intercept);
    e << YAML::Key << "slope" << YAML::Value << format_double(c.slope);
    e << YAML::Key << "scale" << YAML::Value << format_double(c.scale);
    e << YAML::EndMap;
  }
  e << YAML::EndSeq;
  e << YAML::Key << "times" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double t : cfg.times) e << format_double(t);
  e << YAML::EndSeq;
  e << YAML::Key << "copula" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "family" << YAML::Value << cfg.copula.family;
  if (cfg.copula.family == "frank") {
    e << YAML::Key << "kappa" << YAML::Value << format_double(cfg.copula.parameter);
  } else if (cfg.copula.family == "gaussian") {
    e << YAML::Key << "rho" << YAML::Value << format_double(cfg.copula.parameter);
  }
  e << YAML::EndMap;
  e << YAML::Key << "criterion" << YAML::Value << to_string(cfg.criterion);
  e << YAML::Key << "use" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "x_u" << YAML::Value << YAML::Flow << YAML::BeginSeq
    << format_double(cfg.use.x_u[0]) << format_double(cfg.use.x_u[1]) << YAML::EndSeq;
  e << YAML::Key << "thresholds" << YAML::Value << YAML::Flow << YAML::BeginSeq
    << format_double(cfg.use.thresholds[0]) << format_double(cfg.use.thresholds[1])
    << YAML::EndSeq;
  e << YAML::Key << "alpha" << YAML::Value << format_double(cfg.use.alpha);
  e << YAML::EndMap;
  e << YAML::Key << "grid" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key
    << "increment" << YAML::Value << format_double(cfg.grid_increment) << YAML::EndMap;
  e << YAML::Key << "optimizer" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "tolerance" << YAML::Value << format_double(cfg.optimizer.tolerance);
  e << YAML::Key << "max_iterations" << YAML::Value << cfg.optimizer.max_iterations;
  e << YAML::Key << "prune_threshold" << YAML::Value
    << format_double(cfg.optimizer.prune_threshold);
  e << YAML::Key << "merge_threshold" << YAML::Value
    << format_double(cfg.optimizer.merge_threshold);
  e << YAML::EndMap;
  e << YAML::Key << "quadrature" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "nodes" << YAML::Value << cfg.quadrature_nodes;
  e << YAML::Key << "panels" << YAML::Value << cfg.quadrature_panels;
  e << YAML::EndMap;
  e << YAML::Key << "output" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key
    << "directory" << YAML::Value << cfg.output_directory << YAML::EndMap;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names = {"x_u1", "x_u2", "alpha", "z1",
                                                 "z2",   "kappa", "rho"};
  return names;
}

void set_parameter(ScenarioConfig& cfg, const std::string& name, double value) {
  if (name == "x_u1") {
    cfg.use.x_u[0] = value;
  } else if (name == "x_u2") {
    cfg.use.x_u[1] = value;
  } else if (name == "alpha") {
    cfg.use.alpha = value;
  } else if (name == "z1") {
    cfg.use.thresholds[0] = value;
  } else if (name == "z2") {
    cfg.use.thresholds[1] = value;
  } else if (name == "kappa" || name == "rho") {
    const std::string family = name == "kappa" ? "frank" : "gaussian";
    if (cfg.copula.family != family) {
      throw ValidationError("parameter '" + name + "' requires a " + family + " copula");
    }
    cfg.copula.parameter = value;
  } else {
    throw ValidationError("unknown sweep parameter '" + name + "'");
  }
  validate(cfg);
}

}  // namespace adt
