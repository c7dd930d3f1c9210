#include "fewnomial/sign_vector.hpp"

#include <cctype>

#include "fewnomial/errors.hpp"

namespace fewnomial {

SignVector::SignVector(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {
  for (std::int8_t s : signs_) {
    if (s != 1 && s != -1) throw InvalidArgument("sign entries must be +1 or -1");
  }
  if (!signs_.empty() && signs_.front() < 0) {
    for (std::int8_t& s : signs_) s = static_cast<std::int8_t>(-s);
  }
}

SignVector SignVector::of(std::span<const double> values) {
  std::vector<std::int8_t> signs;
  signs.reserve(values.size());
  for (double v : values) signs.push_back(v < 0 ? -1 : 1);
  return SignVector(std::move(signs));
}

SignVector SignVector::parse(std::string_view text) {
  std::vector<std::int8_t> signs;
  const bool symbolic = text.find_first_of("0123456789") == std::string_view::npos;
  if (symbolic) {
    for (char ch : text) {
      if (ch == '+') {
        signs.push_back(1);
      } else if (ch == '-') {
        signs.push_back(-1);
      } else if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '(' && ch != ')') {
        throw InvalidArgument("cannot parse sign vector '" + std::string(text) + "'");
      }
    }
  } else {
    std::string token;
    auto flush = [&]() {
      if (token.empty()) return;
      if (token == "1" || token == "+1") {
        signs.push_back(1);
      } else if (token == "-1") {
        signs.push_back(-1);
      } else {
        throw InvalidArgument("cannot parse sign entry '" + token + "'");
      }
      token.clear();
    };
    for (char ch : text) {
      if (ch == ',' || ch == '(' || ch == ')' || std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else {
        token.push_back(ch);
      }
    }
    flush();
  }
  if (signs.empty()) throw InvalidArgument("empty sign vector");
  return SignVector(std::move(signs));
}

std::vector<SignVector> SignVector::all(int length) {
  std::vector<SignVector> out;
  if (length <= 0) return out;
  const std::uint64_t count = std::uint64_t{1} << (length - 1);
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::int8_t> signs(static_cast<std::size_t>(length), 1);
    for (int bit = 0; bit < length - 1; ++bit) {
      // Highest bit drives the second coordinate so the order is lexicographic.
      if ((code >> (length - 2 - bit)) & 1u) signs[static_cast<std::size_t>(bit + 1)] = -1;
    }
    out.emplace_back(std::move(signs));
  }
  return out;
}

SignVector SignVector::restrict_to(const std::vector<int>& indices) const {
  std::vector<std::int8_t> signs;
  signs.reserve(indices.size());
  for (int i : indices) signs.push_back(signs_[static_cast<std::size_t>(i)]);
  return SignVector(std::move(signs));
}

bool SignVector::matches(std::span<const std::int8_t> raw) const {
  if (raw.size() != signs_.size()) return false;
  if (raw.empty()) return true;
  const int flip = raw.front() < 0 ? -1 : 1;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] * flip != signs_[i]) return false;
  }
  return true;
}

std::string SignVector::str() const {
  std::string out;
  out.reserve(signs_.size());
  for (std::int8_t s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

}  // namespace fewnomial
