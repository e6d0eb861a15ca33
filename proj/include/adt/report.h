#pragma once

/// @file report.h
/// Plain-text design reports, run manifests and sweep CSV files. The formats
/// are fixed and versioned; see docs/formats.md.

#include <string>

#include "adt/commands.h"

namespace adt {

inline constexpr const char* kProgramVersion = "1.0.0";

std::string design_report(const ScenarioResult& result);
std::string manifest(const ScenarioConfig& cfg, const std::string& command);
std::string sweep_csv(const ScenarioConfig& cfg, const SweepTable& table);

}  // namespace adt
