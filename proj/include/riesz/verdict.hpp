#pragma once

#include "riesz/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riesz {

enum class Status { pass, fail, inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

/// One observed quantity of a trace: "n" or "m,n" plus its exact value.
struct TracePoint {
  std::string index;
  Rational value;
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// Outcome of a convergence check or identity audit. A failing verdict always
/// names the offending point.
struct Verdict {
  Status status = Status::inconclusive;
  std::optional<TracePoint> witness;
  std::string detail;
  Rational threshold = 0;
  bool squared = false;  // values are squared l2 norms
  std::vector<TracePoint> trace_tail;

  bool passed() const { return status == Status::pass; }
};

}  // namespace riesz
