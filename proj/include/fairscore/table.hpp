// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "fairscore/serialize.hpp"

namespace fairscore {

// Neutral predictions: what each initial score level becomes under one or
// more fitted transforms, one column per (transform, group).
struct NeutralTable {
  struct Column {
    std::string transform;  // supplied name, e.g. the file stem
    std::string group;
    std::vector<double> values;  // one per level
  };
  std::vector<double> levels;
  std::vector<Column> columns;
};

// Levels must lie in [0,1] (DomainError otherwise) and the list must be
// non-empty. Columns follow supplied transform order, groups sorted
// within each transform.
NeutralTable neutral_prediction_table(
    const std::vector<std::pair<std::string, AnyTransform>>& transforms,
    const std::vector<double>& levels);

// Fixed-width text rendering with all entries as percentages with two
// decimals, the formatting used for published premium tables.
std::string format_neutral_table(const NeutralTable& table);

// Same cells as CSV; header `initial,<transform>:<group>,...`.
std::string neutral_table_csv(const NeutralTable& table);

}  // namespace fairscore
