#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "pi01/interval.hpp"

namespace pi01 {

enum class Outcome { Holds, Fails, Undecided };

std::string outcome_name(Outcome o);  // "holds" | "fails" | "undecided"
Outcome parse_outcome(const std::string& s);

// Result of a certified comparison lhs < rhs (strict).
struct Verdict {
  Outcome outcome = Outcome::Undecided;
  Interval lhs;
  Interval rhs;
  Interval gap;  // rhs - lhs
  int precision_used = 0;
  std::optional<std::string> certificate;  // set on Fails where a module provides one
};

// Holds iff hi(lhs) < lo(rhs); Fails iff lo(lhs) > hi(rhs); else Undecided.
Verdict decide_less(const Interval& lhs, const Interval& rhs, Precision p);

// Evaluates (lhs, rhs) at each precision of the policy until decided.
// CapacityError from the evaluator stops escalation with Undecided.
using SidesAt = std::function<std::pair<Interval, Interval>(Precision)>;
Verdict certify_less(const PrecisionPolicy& policy, const SidesAt& sides);

}  // namespace pi01
