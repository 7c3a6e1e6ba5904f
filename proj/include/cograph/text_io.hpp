#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cograph/error.hpp"

namespace cograph::text {

// Yields the whitespace-separated tokens of each data line, skipping blank
// lines and lines whose first non-blank character is '#'.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string tok; ss >> tok;) tokens.push_back(std::move(tok));
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return tokens;
    }
    return std::nullopt;
  }

  std::size_t line() const noexcept { return line_; }

  // Next data line; running out of input is an error.
  std::vector<std::string> expect(const std::string& what) {
    auto tokens = next();
    if (!tokens) throw ParseError(line_, "unexpected end of input, expected " + what);
    return std::move(*tokens);
  }

  void expect_end() {
    if (next()) throw ParseError(line_, "unexpected trailing data");
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

inline std::int64_t parse_int(std::string_view tok, std::size_t line, const std::string& what) {
  std::int64_t value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "expected integer " + what + ", got '" + std::string(tok) + "'");
  }
  return value;
}

inline std::int64_t parse_count(std::string_view tok, std::size_t line, const std::string& what) {
  const std::int64_t v = parse_int(tok, line, what);
  if (v < 0) throw ParseError(line, what + " must be non-negative, got " + std::to_string(v));
  return v;
}

inline void expect_arity(const std::vector<std::string>& tokens, std::size_t arity,
                         std::size_t line, const std::string& what) {
  if (tokens.size() != arity) {
    throw ParseError(line, "expected " + what + " (" + std::to_string(arity) + " tokens), got " +
                               std::to_string(tokens.size()) + " tokens");
  }
}

}  // namespace cograph::text
