#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parsemend/rational.hpp"

namespace parsemend {

/// Pipeline knobs. Defaults: unwindowed, similar matches discounted to 1/2,
/// retagging needs 3 occurrences with 4/5 dominance, heuristic fallback on,
/// 8 sample areas per window size.
struct PipelineConfig {
  std::optional<int> window;          // symmetric sentence window; none = whole document
  Rational similar_discount{1, 2};    // in [0,1]; weight of Synonym evidence when scoring
  int retag_min_count = 3;            // >= 1
  Rational retag_pos_ratio{4, 5};     // in (1/2, 1]
  bool fallback = true;               // heuristic joining when discourse evidence runs out
  int samples_per_window = 8;         // >= 1

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Range violations as human-readable messages; empty means valid.
std::vector<std::string> validate(const PipelineConfig& config);

}  // namespace parsemend
