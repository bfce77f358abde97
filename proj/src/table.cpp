// SPDX-License-Identifier: Apache-2.0
#include "fairscore/table.hpp"

#include <algorithm>
#include <cstdio>

namespace fairscore {

namespace {

std::string percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", value * 100.0);
  return buf;
}

}  // namespace

NeutralTable neutral_prediction_table(
    const std::vector<std::pair<std::string, AnyTransform>>& transforms,
    const std::vector<double>& levels) {
  if (levels.empty()) {
    throw ValidationError("neutral table needs at least one level");
  }
  if (transforms.empty()) {
    throw ValidationError("neutral table needs at least one transform");
  }
  for (double level : levels) {
    if (!(level >= 0.0 && level <= 1.0)) {
      throw DomainError("level " + std::to_string(level) +
                        " is outside [0,1]");
    }
  }
  NeutralTable table;
  table.levels = levels;
  for (const auto& [name, transform] : transforms) {
    for (const auto& group : transform_labels(transform)) {
      NeutralTable::Column col;
      col.transform = name;
      col.group = group;
      for (double level : levels) {
        col.values.push_back(apply_transform(transform, level, group).value);
      }
      table.columns.push_back(std::move(col));
    }
  }
  return table;
}

std::string format_neutral_table(const NeutralTable& table) {
  std::vector<std::string> headers{"initial"};
  const bool one_transform =
      std::all_of(table.columns.begin(), table.columns.end(),
                  [&](const NeutralTable::Column& c) {
                    return c.transform == table.columns.front().transform;
                  });
  for (const auto& col : table.columns) {
    headers.push_back(one_transform ? col.group
                                    : col.transform + ":" + col.group);
  }

  std::vector<std::vector<std::string>> cells;
  for (std::size_t r = 0; r < table.levels.size(); ++r) {
    std::vector<std::string> row{percent(table.levels[r])};
    for (const auto& col : table.columns) {
      row.push_back(percent(col.values[r]));
    }
    cells.push_back(std::move(row));
  }

  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    width[c] = headers[c].size();
    for (const auto& row : cells) {
      width[c] = std::max(width[c], row[c].size());
    }
  }

  std::string out;
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) {
        out += "  ";
      }
      out += row[c];
      out.append(width[c] - row[c].size(), ' ');
    }
    while (!out.empty() && out.back() == ' ') {
      out.pop_back();
    }
    out.push_back('\n');
  };
  emit_row(headers);
  for (const auto& row : cells) {
    emit_row(row);
  }
  return out;
}

std::string neutral_table_csv(const NeutralTable& table) {
  std::string out = "initial";
  for (const auto& col : table.columns) {
    out += "," + col.transform + ":" + col.group;
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < table.levels.size(); ++r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", table.levels[r] * 100.0);
    out += buf;
    for (const auto& col : table.columns) {
      std::snprintf(buf, sizeof(buf), "%.2f", col.values[r] * 100.0);
      out += ",";
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace fairscore
