#pragma once

#include <stdexcept>
#include <string>

namespace mixdet {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonStochasticRow : Error { using Error::Error; };
struct OutOfRangeEntry : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct EmptyCell : Error { using Error::Error; };
struct ZeroInitialWeight : Error { using Error::Error; };
struct TooManyDetectors : Error { using Error::Error; };
struct GammaOutOfRange : Error { using Error::Error; };
struct UnknownAttack : Error { using Error::Error; };
struct DuplicateRecord : Error { using Error::Error; };
struct EmptyClass : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& where, std::size_t line, const std::string& reason)
      : Error(where + ":" + std::to_string(line) + ": " + reason), line_number(line) {}
  explicit ParseError(const std::string& reason) : Error(reason), line_number(0) {}
  std::size_t line_number;
};

}  // namespace mixdet
