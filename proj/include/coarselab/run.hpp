#pragma once

#include <optional>
#include <string>

#include "coarselab/json_io.hpp"

namespace coarselab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Parsed experiment configuration: group, optional generator system and
/// window, seed, and command parameters.
struct ResolvedConfig {
  json echo;  // the effective config embedded in every report
  GroupSpec spec;
  std::optional<GeneratorSystem> sys;
  std::optional<Window> window;
  std::uint64_t seed = 0;
  json params = json::object();

  const GeneratorSystem& need_sys() const;
  const Window& need_window() const;
  std::uint32_t param_u32(const char* name, std::optional<std::uint32_t> fallback = {}) const;
  std::uint64_t param_u64(const char* name, std::uint64_t fallback) const;
  json param(const char* name) const;  // null when absent
};

ResolvedConfig resolve_config(const json& config);

struct RunOutcome {
  json report;        // full envelope: command, config, duration_ms, payload, …
  int exit_code = 0;  // 0 success, 1 verdict failure
  std::optional<std::string> csv;  // tabular twin when the command produces one
};

/// Dispatches a subcommand. The payload inside the report is deterministic
/// for a fixed config (wall-clock duration lives outside it).
RunOutcome run_command(const std::string& command, const json& config);

}  // namespace coarselab
