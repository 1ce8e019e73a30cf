#pragma once

#include <string>
#include <vector>

namespace ahp {

/// One adjustment the pipeline made to its inputs or outputs (clipping,
/// missing-data handling, zero flooring, tie-breaks, consistency warnings).
struct Decision {
  std::string kind;
  std::string subject;
  std::string detail;

  bool operator==(const Decision&) const = default;
};

using DecisionLog = std::vector<Decision>;

inline void note(DecisionLog* log, std::string kind, std::string subject, std::string detail) {
  if (log) log->push_back({std::move(kind), std::move(subject), std::move(detail)});
}

}  // namespace ahp
