// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fairscore/empirical.hpp"
#include "fairscore/errors.hpp"

namespace fairscore {

// A parsed score CSV. Cells are kept as the original text so a table can
// be written back byte-for-byte; typed views are built on demand.
//
// Required columns: `id`, `score`, `group`. Optional: `outcome` (0/1,
// empty cell allowed) and further score columns named `score_<model>`.
// Every score column must parse as a decimal in [0,1] in every row.
struct ScoreTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool has_column(const std::string& name) const noexcept;

  // Throws ValidationError for a column not in the header.
  std::size_t column_index(const std::string& name) const;

  // "score" plus every "score_<model>" column, in header order.
  std::vector<std::string> score_columns() const;

  // Typed view with the chosen column as the score. Outcomes are attached
  // when an `outcome` column exists and every cell is filled.
  GroupedScores to_grouped(const std::string& score_column = "score") const;

  // Appends a column; throws ValidationError on a duplicate name or a
  // size mismatch.
  void append_column(const std::string& name, std::vector<std::string> cells);
};

// Parses and validates CSV text. Quoted fields follow the usual CSV
// rules (doubled quotes escape, newlines allowed inside quotes). Errors
// carry 1-based line numbers; a missing required column is reported by
// name.
ScoreTable parse_score_table(const std::string& text);

ScoreTable load_score_table(const std::filesystem::path& path);

// Serializes with minimal quoting: a cell is quoted only when it contains
// a comma, a quote, or a newline. Lines end with '\n', including the last.
std::string write_score_table(const ScoreTable& table);

void save_score_table(const ScoreTable& table,
                      const std::filesystem::path& path);

}  // namespace fairscore
