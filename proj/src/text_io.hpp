#pragma once

// Line-oriented reader shared by the text formats. '#' starts a comment that
// runs to the end of the line; blank lines are skipped.

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ebc/errors.hpp"

namespace ebc::detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line split into whitespace-separated tokens; empty vector
  // at end of input.
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::vector<std::string> tokens;
      for (std::string t; ls >> t;) tokens.push_back(std::move(t));
      if (!tokens.empty()) return tokens;
    }
    return {};
  }

  std::vector<std::string> expect(const char* what) {
    auto t = next();
    if (t.empty()) fail(std::string("unexpected end of input, expected ") + what);
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line_no_) + ": " + msg);
  }

  template <class T>
  T number(std::string_view s) const {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad number '" + std::string(s) + "'");
    return v;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace ebc::detail
