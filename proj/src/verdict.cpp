#include "pi01/verdict.hpp"

#include "pi01/errors.hpp"

namespace pi01 {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return "holds";
    case Outcome::Fails:
      return "fails";
    case Outcome::Undecided:
      break;
  }
  return "undecided";
}

Outcome parse_outcome(const std::string& s) {
  if (s == "holds") return Outcome::Holds;
  if (s == "fails") return Outcome::Fails;
  if (s == "undecided") return Outcome::Undecided;
  throw FormatError("unknown verdict '" + s + "'");
}

Verdict decide_less(const Interval& lhs, const Interval& rhs, Precision p) {
  Verdict v;
  v.lhs = lhs;
  v.rhs = rhs;
  v.gap = sub(rhs, lhs, p);
  v.precision_used = p.bits();
  if (lhs.hi() < rhs.lo())
    v.outcome = Outcome::Holds;
  else if (lhs.lo() > rhs.hi())
    v.outcome = Outcome::Fails;
  return v;
}

Verdict certify_less(const PrecisionPolicy& policy, const SidesAt& sides) {
  Verdict last;
  for (int bits : policy.schedule()) {
    Precision p(bits);
    std::pair<Interval, Interval> s;
    try {
      s = sides(p);
    } catch (const CapacityError&) {
      break;
    }
    last = decide_less(s.first, s.second, p);
    if (last.outcome != Outcome::Undecided) break;
  }
  return last;
}

}  // namespace pi01
