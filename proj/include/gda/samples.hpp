#pragma once

// Algebra specs from fixtures/, compiled into the binary.

#include <string>
#include <vector>

#include "gda/io.hpp"

namespace gda {

std::vector<std::string> sample_names();
/// Raises ValidationError for unknown names.
const std::string& sample_text(const std::string& name);
AlgebraInstance load_sample(const std::string& name);
/// A path to a spec file, or the name of a bundled sample (with or without .toml).
AlgebraInstance load_algebra(const std::string& path_or_name);

}  // namespace gda
