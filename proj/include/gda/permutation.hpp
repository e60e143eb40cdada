#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gda {

/// A permutation of {0..n-1}, stored by images: i -> p(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }

  Permutation inverse() const;
  /// (p * q)(i) = p(q(i)).
  Permutation operator*(const Permutation& q) const;
  std::size_t inversions() const;
  int sign() const { return inversions() % 2 ? -1 : 1; }
  bool is_identity() const;

  /// 1-based cycle notation, fixed points omitted; "()" for the identity.
  std::string to_cycle_string() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> images_;
};

}  // namespace gda
