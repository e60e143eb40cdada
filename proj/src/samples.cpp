#include "gda/samples.hpp"

#include <filesystem>
#include <map>

#include "gda/error.hpp"

namespace gda {

namespace detail {
// Generated from fixtures/*.toml at configure time.
const std::map<std::string, std::string>& embedded_samples();
}  // namespace detail

std::vector<std::string> sample_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : detail::embedded_samples()) names.push_back(name);
  return names;
}

const std::string& sample_text(const std::string& name) {
  const auto& all = detail::embedded_samples();
  auto it = all.find(name);
  if (it == all.end()) raise(ErrorCode::ValidationError, "unknown sample algebra '" + name + "'");
  return it->second;
}

AlgebraInstance load_sample(const std::string& name) {
  return parse_algebra_spec(sample_text(name), name + ".toml");
}

AlgebraInstance load_algebra(const std::string& path_or_name) {
  if (std::filesystem::exists(path_or_name)) return load_algebra_spec(path_or_name);
  std::string stem = std::filesystem::path(path_or_name).stem().string();
  if (detail::embedded_samples().count(stem)) return load_sample(stem);
  raise(ErrorCode::ValidationError, "no such spec file or bundled sample: " + path_or_name);
}

}  // namespace gda
