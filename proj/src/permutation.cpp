#include "gda/permutation.hpp"

#include "gda/error.hpp"

namespace gda {

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x]) raise(ErrorCode::ValidationError, "not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = i;
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(size());
  for (std::size_t i = 0; i < size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& q) const {
  std::vector<std::size_t> r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = images_[q.images_[i]];
  return Permutation(std::move(r));
}

std::size_t Permutation::inversions() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (images_[i] > images_[j]) ++count;
  return count;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  std::vector<bool> seen(size(), false);
  for (std::size_t i = 0; i < size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      if (j != i) out += " ";
      out += std::to_string(j + 1);
      seen[j] = true;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

}  // namespace gda
