#pragma once

#include <stdexcept>

namespace parsemend {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller handed in data that violates a stated precondition (invalid tree,
/// non-adjacent spans, out-of-range candidate index, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Misuse of the discourse store's freeze protocol (querying an unfrozen
/// store, ingesting into a frozen one, duplicate sentence ids).
struct StoreError : Error {
  using Error::Error;
};

/// File and format problems; message carries the location when known.
struct IoError : Error {
  using Error::Error;
};

}  // namespace parsemend
