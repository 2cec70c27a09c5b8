#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace enconv {

/// Positioned failure while reading a dictionary, rule pack or UNL document.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string origin, std::size_t line, std::size_t column,
             std::string element, const std::string& detail = {})
      : std::runtime_error(format(origin, line, column, element, detail)),
        origin_(std::move(origin)),
        line_(line),
        column_(column),
        element_(std::move(element)) {}

  const std::string& origin() const noexcept { return origin_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  // Name of the grammar element that failed, e.g. "closing ']'".
  const std::string& element() const noexcept { return element_; }

 private:
  static std::string format(const std::string& origin, std::size_t line,
                            std::size_t column, const std::string& element,
                            const std::string& detail) {
    std::string msg = origin + ":" + std::to_string(line) + ":" +
                      std::to_string(column) + ": " + element;
    if (!detail.empty()) msg += " (" + detail + ")";
    return msg;
  }

  std::string origin_;
  std::size_t line_;
  std::size_t column_;
  std::string element_;
};

}  // namespace enconv
