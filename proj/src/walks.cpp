#include "ordlab/walks.hpp"

#include "ordlab/errors.hpp"

namespace ordlab {

std::string Rho0Code::str() const {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(entries[i]);
  }
  return out;
}

WalkResult walk_with_code(const CSequence& c, const Ordinal& alpha, const Ordinal& beta) {
  if (!(alpha <= beta))
    throw Error(ErrorKind::PreconditionFailed,
                "walk requires alpha <= beta, got " + alpha.str() + " > " + beta.str());
  WalkResult out;
  Ordinal current = beta;
  out.walk.steps.push_back(current);
  while (!(current == alpha)) {
    MinAbove next = min_above(c, current, alpha);
    if (!(next.value < current))
      throw Error(ErrorKind::BudgetExceeded,
                  "walk step " + next.value.str() + " does not descend below " + current.str());
    out.walk.steps.push_back(next.value);
    out.code.entries.push_back(next.position);
    current = next.value;
  }
  return out;
}

Walk walk(const CSequence& c, const Ordinal& alpha, const Ordinal& beta) {
  return walk_with_code(c, alpha, beta).walk;
}

Rho0Code rho0(const CSequence& c, const Ordinal& alpha, const Ordinal& beta) {
  return walk_with_code(c, alpha, beta).code;
}

}  // namespace ordlab
