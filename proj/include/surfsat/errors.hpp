#pragma once

#include <stdexcept>
#include <string>

namespace surfsat {

/// Input data that contradicts a theorem about surfaces (for example three
/// pairwise disjoint false fibres). Distinct from malformed input, which
/// raises std::invalid_argument.
class inconsistent_data : public std::runtime_error {
 public:
  explicit inconsistent_data(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an analysis that needs a saturated surface gets one that is not.
class not_saturated : public std::logic_error {
 public:
  explicit not_saturated(const std::string& what) : std::logic_error(what) {}
};

}  // namespace surfsat
