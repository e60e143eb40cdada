#pragma once

// Property suites and oracle cross-checks behind `gda verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "gda/io.hpp"

namespace gda {

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Random samples per (algebra, matrix size) and property.
  std::size_t samples = 20;
  std::uint64_t budget = 10'000'000;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  std::vector<std::string> messages;

  bool passed() const { return failures == 0; }
};

/// bruhat, det, kernel, nrd, sk, exactseq.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Raises ValidationError on an unknown name.
std::vector<SuiteResult> run_suites(const std::string& suite, const std::vector<AlgebraInstance>& algebras,
                                    const VerifyOptions& opt);

Json to_json(const SuiteResult& r);

}  // namespace gda
