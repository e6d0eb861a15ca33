#pragma once

/// @file scenario.h
/// Scenario files: one experiment description per file (YAML).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "adt/binary_outcome.h"
#include "adt/copula.h"
#include "adt/design.h"
#include "adt/failure_time.h"
#include "adt/gamma_marginal.h"
#include "adt/quadrature.h"

namespace adt {

enum class ModelKind { Independent, Copula, Binary };
enum class CriterionKind { D, CQuantile, CP11 };

std::string to_string(ModelKind k);
std::string to_string(CriterionKind k);

struct CopulaConfig {
  std::string family = "independence";  ///< independence | frank | gaussian
  double parameter = 0.0;               ///< kappa or rho
};

struct ScenarioConfig {
  std::string name;
  ModelKind model = ModelKind::Independent;
  std::array<MarginalParams, 2> components{};
  std::vector<double> times;
  CopulaConfig copula;
  CriterionKind criterion = CriterionKind::D;
  UseConditions use{};
  double grid_increment = 0.05;
  OptimizerOptions optimizer{};
  int quadrature_nodes = 48;
  int quadrature_panels = 2;
  std::string output_directory;  ///< empty: no files written

  BivariateModel bivariate_model() const;
  CopulaSpec copula_spec() const;
  QuadratureRule quadrature_rule() const;
  BinaryScenario binary_scenario() const;
};

/// Parses and validates a scenario.
/// @throws ValidationError with the offending field in the message.
ScenarioConfig parse_scenario(const std::string& yaml_text);
ScenarioConfig load_scenario(const std::string& path);

/// Cross-field checks (also run by parse_scenario).
void validate(const ScenarioConfig& cfg);

/// Resolved configuration, every default spelled out, as YAML.
std::string resolved_yaml(const ScenarioConfig& cfg);

/// Names accepted by set_parameter.
const std::vector<std::string>& sweepable_parameters();

/// Overrides one scalar: x_u1, x_u2, alpha, z1, z2, kappa, rho.
/// @throws ValidationError for an unknown name or one that does not apply.
void set_parameter(ScenarioConfig& cfg, const std::string& name, double value);

}  // namespace adt
