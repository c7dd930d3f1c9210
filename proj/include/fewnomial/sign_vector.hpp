#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fewnomial {

/// Element of {+1,-1}^N modulo global negation. The stored representative
/// always starts with +1.
class SignVector {
 public:
  SignVector() = default;

  /// Canonicalizes `signs` (each entry must be +1 or -1).
  explicit SignVector(std::vector<std::int8_t> signs);

  /// Signs of `values` (zero counts as +1), then canonicalized.
  static SignVector of(std::span<const double> values);

  /// Accepts "+--++", "(1,-1,-1,1,1)" and "1,-1,-1,1,1". Throws
  /// InvalidArgument on anything else.
  static SignVector parse(std::string_view text);

  /// The 2^(length-1) canonical classes in lexicographic order of the
  /// "+-" rendering ('+' before '-').
  static std::vector<SignVector> all(int length);

  int size() const { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[static_cast<std::size_t>(i)]; }
  const std::vector<std::int8_t>& signs() const { return signs_; }

  /// Restriction to the given coordinates, re-canonicalized.
  SignVector restrict_to(const std::vector<int>& indices) const;

  /// Matches `raw` (not necessarily canonical) up to global negation.
  bool matches(std::span<const std::int8_t> raw) const;

  std::string str() const;

  auto operator<=>(const SignVector&) const = default;

 private:
  std::vector<std::int8_t> signs_;
};

}  // namespace fewnomial
