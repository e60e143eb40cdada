#pragma once

// The `gda` command implementations, separate from argument parsing.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gda/io.hpp"

namespace gda {

struct CommandInputs {
  /// Spec file path or bundled sample name; empty means every bundled sample (verify only).
  std::string algebra;
  /// Path of a matrix JSON file (bruhat, det, nrd).
  std::string matrix;
  std::optional<std::size_t> n;
  /// JSON list of shift vectors.
  std::optional<std::string> shifts;
  /// JSON shift vector delta for the shifts (0, delta, ..., (n-1) delta).
  std::optional<std::string> shift_spec;
  std::string suite = "all";
  std::uint64_t seed = 42;
  std::size_t samples = 20;
  std::uint64_t budget = 10'000'000;
  bool oracle = true;
};

struct RunReport {
  std::string command;
  std::string inputs_digest;
  Json outputs = Json::object();
  double seconds = 0;
  std::vector<std::string> warnings;
  int exit_code = 0;
};

/// Timings are omitted when include_timings is false, leaving a deterministic document.
Json to_json(const RunReport& r, bool include_timings = true);

std::string sha256_hex(const std::string& data);

RunReport cmd_bruhat(const CommandInputs& in);
RunReport cmd_det(const CommandInputs& in);
RunReport cmd_nrd(const CommandInputs& in);
RunReport cmd_sk(const CommandInputs& in);
RunReport cmd_verify(const CommandInputs& in);

/// Dispatches by name. A gda::Error becomes a report with an "error" output and
/// exit code 1 (domain errors) or 2 (parse and validation errors).
RunReport run_command(const std::string& command, const CommandInputs& in);

}  // namespace gda
