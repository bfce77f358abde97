// SPDX-License-Identifier: Apache-2.0
#include "fairscore/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace fairscore {

namespace {

struct RawRow {
  std::vector<std::string> cells;
  std::size_t line = 0;  // 1-based line where the row starts
};

// Splits CSV text into rows of cells. Supports quoted cells with doubled
// quote escapes and embedded newlines; rejects stray quotes.
std::vector<RawRow> tokenize(const std::string& text) {
  std::vector<RawRow> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    RawRow row;
    row.line = line;
    bool row_done = false;
    while (!row_done) {
      std::string cell;
      if (i < n && text[i] == '"') {
        ++i;
        bool closed = false;
        while (i < n) {
          if (text[i] == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              cell.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            closed = true;
            break;
          }
          if (text[i] == '\n') {
            ++line;
          }
          cell.push_back(text[i]);
          ++i;
        }
        if (!closed) {
          throw CsvError("unterminated quoted cell", row.line);
        }
        if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw CsvError("unexpected character after closing quote", line);
        }
      } else {
        while (i < n && text[i] != ',' && text[i] != '\n' &&
               text[i] != '\r') {
          if (text[i] == '"') {
            throw CsvError("stray quote inside unquoted cell", line);
          }
          cell.push_back(text[i]);
          ++i;
        }
      }
      row.cells.push_back(std::move(cell));
      if (i >= n) {
        row_done = true;
      } else if (text[i] == ',') {
        ++i;
      } else {
        if (text[i] == '\r') {
          ++i;
          if (i < n && text[i] == '\n') {
            ++i;
          }
        } else {
          ++i;  // '\n'
        }
        ++line;
        row_done = true;
      }
    }
    // A lone trailing newline does not add an empty row.
    if (!(i >= n && row.cells.size() == 1 && row.cells[0].empty())) {
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

bool is_score_column(const std::string& name) {
  return name == "score" || name.rfind("score_", 0) == 0;
}

double parse_unit_score(const std::string& cell, const std::string& column,
                        std::size_t line) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || cell.empty()) {
    throw CsvError("column '" + column + "' has non-numeric value '" + cell +
                       "'",
                   line);
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw CsvError("column '" + column + "' value " + cell +
                       " is outside [0,1]",
                   line);
  }
  return value;
}

}  // namespace

bool ScoreTable::has_column(const std::string& name) const noexcept {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::size_t ScoreTable::column_index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw ValidationError("no column named '" + name + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<std::string> ScoreTable::score_columns() const {
  std::vector<std::string> out;
  for (const auto& c : columns) {
    if (is_score_column(c)) {
      out.push_back(c);
    }
  }
  return out;
}

GroupedScores ScoreTable::to_grouped(const std::string& score_column) const {
  const std::size_t id_col = column_index("id");
  const std::size_t score_col = column_index(score_column);
  const std::size_t group_col = column_index("group");
  const bool with_outcome = has_column("outcome");
  const std::size_t outcome_col = with_outcome ? column_index("outcome") : 0;

  std::vector<ScoreRecord> records;
  records.reserve(rows.size());
  for (const auto& row : rows) {
    ScoreRecord r;
    r.id = row[id_col];
    r.group = row[group_col];
    const std::string& cell = row[score_col];
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(),
                                     r.score);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw ValidationError("column '" + score_column +
                            "' has non-numeric value '" + cell + "'");
    }
    if (with_outcome && !row[outcome_col].empty()) {
      if (row[outcome_col] != "0" && row[outcome_col] != "1") {
        throw ValidationError("column 'outcome' must be 0 or 1, got '" +
                              row[outcome_col] + "'");
      }
      r.outcome = row[outcome_col] == "1" ? 1 : 0;
    }
    records.push_back(std::move(r));
  }
  return GroupedScores(std::move(records));
}

void ScoreTable::append_column(const std::string& name,
                               std::vector<std::string> cells) {
  if (has_column(name)) {
    throw ValidationError("column '" + name + "' already exists");
  }
  if (cells.size() != rows.size()) {
    throw ValidationError("column '" + name + "' has " +
                          std::to_string(cells.size()) + " cells for " +
                          std::to_string(rows.size()) + " rows");
  }
  columns.push_back(name);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].push_back(std::move(cells[i]));
  }
}

ScoreTable parse_score_table(const std::string& text) {
  auto raw = tokenize(text);
  if (raw.empty()) {
    throw CsvError("empty file, expected a header row", 1);
  }
  ScoreTable table;
  table.columns = raw.front().cells;
  {
    std::set<std::string> seen;
    for (const auto& c : table.columns) {
      if (c.empty()) {
        throw CsvError("header has an empty column name", raw.front().line);
      }
      if (!seen.insert(c).second) {
        throw CsvError("duplicate column '" + c + "'", raw.front().line);
      }
    }
  }
  for (const char* required : {"id", "score", "group"}) {
    if (!table.has_column(required)) {
      throw CsvError("missing required column '" + std::string(required) +
                         "'",
                     raw.front().line);
    }
  }

  const std::size_t width = table.columns.size();
  for (std::size_t r = 1; r < raw.size(); ++r) {
    if (raw[r].cells.size() != width) {
      throw CsvError("row has " + std::to_string(raw[r].cells.size()) +
                         " cells, expected " + std::to_string(width),
                     raw[r].line);
    }
    table.rows.push_back(std::move(raw[r].cells));
  }

  const std::size_t id_col = table.column_index("id");
  const std::size_t group_col = table.column_index("group");
  std::set<std::string> ids;
  std::vector<std::size_t> score_cols;
  for (std::size_t c = 0; c < width; ++c) {
    if (is_score_column(table.columns[c])) {
      score_cols.push_back(c);
    }
  }
  const bool with_outcome = table.has_column("outcome");
  const std::size_t outcome_col =
      with_outcome ? table.column_index("outcome") : 0;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t line = raw[r + 1].line;
    const auto& row = table.rows[r];
    if (row[id_col].empty()) {
      throw CsvError("empty id", line);
    }
    if (!ids.insert(row[id_col]).second) {
      throw CsvError("duplicate id '" + row[id_col] + "'", line);
    }
    if (row[group_col].empty()) {
      throw CsvError("empty group label", line);
    }
    for (std::size_t c : score_cols) {
      parse_unit_score(row[c], table.columns[c], line);
    }
    if (with_outcome && !row[outcome_col].empty() &&
        row[outcome_col] != "0" && row[outcome_col] != "1") {
      throw CsvError("column 'outcome' must be 0 or 1, got '" +
                         row[outcome_col] + "'",
                     line);
    }
  }
  return table;
}

ScoreTable load_score_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_score_table(buf.str());
}

std::string write_score_table(const ScoreTable& table) {
  auto emit_cell = [](std::string& out, const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") != std::string::npos) {
      out.push_back('"');
      for (char ch : cell) {
        if (ch == '"') {
          out.push_back('"');
        }
        out.push_back(ch);
      }
      out.push_back('"');
    } else {
      out += cell;
    }
  };
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) {
      out.push_back(',');
    }
    emit_cell(out, table.columns[c]);
  }
  out.push_back('\n');
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) {
        out.push_back(',');
      }
      emit_cell(out, row[c]);
    }
    out.push_back('\n');
  }
  return out;
}

void save_score_table(const ScoreTable& table,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << write_score_table(table);
}

}  // namespace fairscore
