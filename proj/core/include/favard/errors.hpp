#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace favard {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gauge fails validation or cannot be evaluated at the requested depth.
struct GaugeError : Error {
  using Error::Error;
};

/// Line passes too close to a dyadic grid vertex for the requested depth.
struct VertexError : Error {
  VertexError(const std::string& msg, double suggested)
      : Error(msg), suggested_offset(suggested) {}
  double suggested_offset;
};

/// An eager build (or a lazy trial) would exceed its node budget.
struct BudgetError : Error {
  BudgetError(const std::string& msg, int level) : Error(msg), offending_level(level) {}
  int offending_level;
};

}  // namespace favard
