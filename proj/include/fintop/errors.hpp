#pragma once

#include <stdexcept>
#include <string>

namespace fintop {

/// Malformed or unreadable input (bad JSON, wrong keys, unknown ids).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A value has the wrong shape for an operation (e.g. ambient is not a
/// tagged product, arrow does not land in the expected carrier).
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// A stated precondition does not hold (e.g. slice condition violated).
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration exceeded its configured cap. Carries the offending
/// object so callers can report it.
struct ResourceCapError : std::runtime_error {
  std::string offending;
  ResourceCapError(const std::string& what, std::string offending_object)
      : std::runtime_error(what), offending(std::move(offending_object)) {}
};

}  // namespace fintop
