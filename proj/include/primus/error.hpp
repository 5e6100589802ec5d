#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace primus {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct RankMismatch : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

/// A hypothesis configuration the implemented criterion does not cover.
struct UnsupportedConfiguration : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

/// A supplied or constructed certificate failed exact re-verification.
struct InvalidWitness : Error {
  using Error::Error;
};

}  // namespace primus
