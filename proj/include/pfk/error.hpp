#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pfk {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (unknown ids, dimension mismatch, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A checked property failed; `witness` names the offending data.
class Rejected : public Error {
 public:
  Rejected(const std::string& what, std::vector<std::string> witness)
      : Error(what), witness_(std::move(witness)) {}

  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::string> witness_;
};

/// The carrier topology does not support the requested construction, e.g.
/// the closure of a subspace is not a subspace.
class UnsupportedCarrier : public Rejected {
 public:
  using Rejected::Rejected;
};

/// An enumeration or scan would exceed its configured budget.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same fact disagreed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

enum class Verdict { pass, fail, unverified };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unverified: return "unverified";
  }
  return "?";
}

/// Budgets for exhaustive scans. Scans that would exceed a budget either fall
/// back to an equivalent finitary check or report `Verdict::unverified`.
struct Limits {
  /// Number of (element, subset) evaluations allowed in subset scans.
  std::uint64_t subset_scan = std::uint64_t{1} << 20;
  /// Upper bound on materialized families (opens, subspaces, maps, ...).
  std::uint64_t enumeration = std::uint64_t{1} << 20;
};

}  // namespace pfk
