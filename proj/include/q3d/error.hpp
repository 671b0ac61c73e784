#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace q3d {

// Thrown when a caller passes a value outside an operation's domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Coverage stratification is only defined for n >= 4.
class UnsupportedBoard : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured memory/time/node cap was exceeded. Carries whatever bounds
// were known at the time, when the caller has them.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what, std::int64_t lower = -1,
                         std::int64_t upper = -1)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}

  std::int64_t lower() const noexcept { return lower_; }
  std::int64_t upper() const noexcept { return upper_; }

 private:
  std::int64_t lower_;
  std::int64_t upper_;
};

// Malformed input file. `where` is a line number or a JSON path.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& msg)
      : std::runtime_error(where + ": " + msg), where_(where) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace q3d
