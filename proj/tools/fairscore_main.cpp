// SPDX-License-Identifier: Apache-2.0
//
// fairscore: measure group discrimination in predictive scores and
// mitigate it by transporting group score distributions to their
// common barycenter (or by proportional mean scaling).

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairscore/barycenter.hpp"
#include "fairscore/csv.hpp"
#include "fairscore/divergence.hpp"
#include "fairscore/empirical.hpp"
#include "fairscore/errors.hpp"
#include "fairscore/fairness.hpp"
#include "fairscore/numeric.hpp"
#include "fairscore/serialize.hpp"
#include "fairscore/svg.hpp"
#include "fairscore/synth.hpp"
#include "fairscore/table.hpp"

namespace fs = std::filesystem;
using namespace fairscore;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw ValidationError("cannot create directory '" + dir.string() +
                          "': " + ec.message());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}

std::string sanitize(const std::string& label) {
  std::string out;
  for (char ch : label) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '-' || ch == '_';
    out.push_back(ok ? ch : '_');
  }
  return out;
}

std::string opt_str(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : "inf";
}

void append_block_text(std::string& out, const MetricsBlock& b,
                       const char* name) {
  out += std::string("  ") + name + "\n";
  out += "    overall mean: " + format_double(b.overall_mean) + "\n";
  out += "    weak DP gap: " + format_double(b.weak_gap) + "\n";
  out += "    groups\n";
  for (const auto& [label, st] : b.groups) {
    out += "      " + label + ": count " + std::to_string(st.count) +
           ", mean " + format_double(st.mean) + "\n";
  }
  for (const auto& p : b.pairs) {
    out += "    " + p.a + " vs " + p.b + ": W1 " + format_double(p.w1) +
           ", W2 " + format_double(p.w2) + ", TV " + format_double(p.tv) +
           ", JS " + format_double(p.js) + ", KL(" + p.a + "||" + p.b +
           ") " + opt_str(p.kl_ab) + ", KL(" + p.b + "||" + p.a + ") " +
           opt_str(p.kl_ba) + "\n";
  }
  if (b.balance.has_value()) {
    const BalanceResult& r = *b.balance;
    out += "    balance: mean score " + format_double(r.mean_score) +
           " vs outcome " + format_double(r.mean_outcome) + ", gap " +
           format_double(r.gap) + ", " +
           (r.balanced ? "balanced" : "NOT balanced") + "\n";
  }
}

std::string report_text(const FairnessReport& report) {
  std::string out = "fairness report\n";
  out += "bins: " + std::to_string(report.bin_edges.size() - 1) + " on [" +
         format_double(report.bin_edges.front()) + ", " +
         format_double(report.bin_edges.back()) + "]\n";
  out += "balance tolerance: " + format_double(report.balance_tolerance) +
         "\n";
  for (const auto& m : report.models) {
    out += "\nmodel " + m.model + "\n";
    append_block_text(out, m.before, "before");
    if (m.after.has_value()) {
      append_block_text(out, *m.after, "after");
    }
  }
  return out;
}

int run_report(const std::string& input, const std::string& mitigated,
               int bins, double tolerance, const std::string& out_dir) {
  const ScoreTable table = load_score_table(input);
  std::optional<ScoreTable> mit;
  if (!mitigated.empty()) {
    mit = load_score_table(mitigated);
  }
  const auto edges = uniform_edges(static_cast<std::size_t>(bins), 0.0, 1.0);

  FairnessReport report;
  report.bin_edges = edges;
  report.balance_tolerance = tolerance;
  for (const auto& column : table.score_columns()) {
    // Columns named <model>_fair hold mitigated values of <model>, not a
    // model of their own.
    if (column.size() > 5 &&
        column.compare(column.size() - 5, 5, "_fair") == 0) {
      continue;
    }
    const std::string fair_column = column + "_fair";
    const GroupedScores raw = table.to_grouped(column);
    std::optional<GroupedScores> after;
    if (mit.has_value()) {
      after = mit->to_grouped(mit->has_column(fair_column) ? fair_column
                                                           : column);
    } else if (table.has_column(fair_column)) {
      after = table.to_grouped(fair_column);
    }
    report.models.push_back(
        build_model_report(column, raw, after.has_value() ? &*after : nullptr,
                           edges, tolerance));
  }

  ensure_dir(out_dir);
  save_json_file(to_json(report), fs::path(out_dir) / "report.json");
  std::cout << "wrote " << (fs::path(out_dir) / "report.json").string()
            << "\n";
  write_text(fs::path(out_dir) / "report.txt", report_text(report));
  return 0;
}

int run_fit(const std::string& input, const std::string& kind,
            const std::string& out_dir) {
  const GroupedScores data = load_score_table(input).to_grouped();
  nlohmann::json doc;
  if (kind == "scaling") {
    doc = to_json(fit_scaling(data));
  } else {
    const BarycenterTransform t = fit_barycenter(data);
    if (t.warning().has_value()) {
      std::cerr << "warning: " << *t.warning() << "\n";
    }
    doc = to_json(t);
  }
  ensure_dir(out_dir);
  save_json_file(doc, fs::path(out_dir) / "transform.json");
  std::cout << "wrote " << (fs::path(out_dir) / "transform.json").string()
            << "\n";
  return 0;
}

int run_apply(const std::string& input, const std::string& transform_file,
              const std::string& out_dir) {
  ScoreTable table = load_score_table(input);
  const AnyTransform transform =
      transform_from_json(load_json_file(transform_file));

  const std::size_t score_col = table.column_index("score");
  const std::size_t group_col = table.column_index("group");
  std::vector<std::string> fair;
  fair.reserve(table.rows.size());
  std::size_t clamped = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string& cell = table.rows[r][score_col];
    double score = 0.0;
    std::from_chars(cell.data(), cell.data() + cell.size(), score);
    try {
      const ScaledScore s =
          apply_transform(transform, score, table.rows[r][group_col]);
      if (s.clamped) {
        ++clamped;
      }
      fair.push_back(format_double(s.value));
    } catch (const UnknownGroupError& e) {
      throw ValidationError("row " + std::to_string(r + 1) + ": " + e.what());
    }
  }
  table.append_column("score_fair", std::move(fair));
  if (clamped > 0) {
    std::cerr << "warning: " << clamped << " score(s) clamped to [0,1]\n";
  }
  ensure_dir(out_dir);
  const fs::path out_path = fs::path(out_dir) / "applied.csv";
  save_score_table(table, out_path);
  std::cout << "wrote " << out_path.string() << "\n";
  return 0;
}

int run_table(const std::vector<std::string>& transform_files,
              const std::vector<double>& levels,
              const std::string& out_dir) {
  std::vector<std::pair<std::string, AnyTransform>> transforms;
  for (const auto& file : transform_files) {
    transforms.emplace_back(fs::path(file).stem().string(),
                            transform_from_json(load_json_file(file)));
  }
  const NeutralTable table = neutral_prediction_table(transforms, levels);
  const std::string text = format_neutral_table(table);
  std::cout << text;
  ensure_dir(out_dir);
  write_text(fs::path(out_dir) / "table.txt", text);
  write_text(fs::path(out_dir) / "table.csv", neutral_table_csv(table));
  return 0;
}

int run_plot(const std::string& input, const std::string& mitigated,
             int bins, const std::string& out_dir) {
  const auto edges = uniform_edges(static_cast<std::size_t>(bins), 0.0, 1.0);
  ensure_dir(out_dir);

  auto emit = [&](const ScoreTable& table, const std::string& column,
                  const std::string& suffix) {
    const GroupPartition parts =
        partition_by_group(table.to_grouped(column));
    std::vector<std::string> labels;
    for (const auto& [label, dist] : parts.distributions) {
      labels.push_back(label);
      write_text(fs::path(out_dir) /
                     ("density_" + sanitize(label) + suffix + ".svg"),
                 density_plot_svg(bin_scores(dist, edges), label));
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        write_text(fs::path(out_dir) / ("qq_" + sanitize(labels[i]) + "_" +
                                        sanitize(labels[j]) + suffix +
                                        ".svg"),
                   qq_plot_svg(parts.distributions.at(labels[i]),
                               parts.distributions.at(labels[j]), labels[i],
                               labels[j]));
      }
    }
  };

  emit(load_score_table(input), "score", "");
  if (!mitigated.empty()) {
    const ScoreTable mit = load_score_table(mitigated);
    emit(mit, mit.has_column("score_fair") ? "score_fair" : "score",
         "_mitigated");
  }
  return 0;
}

int run_synth(std::uint64_t seed, const std::string& groups_spec,
              double shape_a, double shape_b, const std::string& out_dir) {
  SynthConfig config;
  config.seed = seed;
  std::size_t start = 0;
  while (start <= groups_spec.size()) {
    std::size_t end = groups_spec.find(',', start);
    if (end == std::string::npos) {
      end = groups_spec.size();
    }
    const std::string item = groups_spec.substr(start, end - start);
    start = end + 1;
    if (item.empty()) {
      continue;
    }
    const std::size_t c1 = item.find(':');
    const std::size_t c2 = c1 == std::string::npos
                               ? std::string::npos
                               : item.find(':', c1 + 1);
    if (c2 == std::string::npos) {
      throw ValidationError("group spec '" + item +
                            "' is not label:count:mean");
    }
    SynthGroupSpec g;
    g.label = item.substr(0, c1);
    const std::string count_s = item.substr(c1 + 1, c2 - c1 - 1);
    const std::string mean_s = item.substr(c2 + 1);
    auto cres = std::from_chars(count_s.data(),
                                count_s.data() + count_s.size(), g.count);
    auto mres = std::from_chars(mean_s.data(),
                                mean_s.data() + mean_s.size(),
                                g.target_mean);
    if (cres.ec != std::errc() ||
        cres.ptr != count_s.data() + count_s.size() ||
        mres.ec != std::errc() ||
        mres.ptr != mean_s.data() + mean_s.size()) {
      throw ValidationError("group spec '" + item +
                            "' is not label:count:mean");
    }
    g.shape_a = shape_a;
    g.shape_b = shape_b;
    config.groups.push_back(std::move(g));
  }
  const ScoreTable table = generate_synthetic(config);
  ensure_dir(out_dir);
  const fs::path out_path = fs::path(out_dir) / "synthetic.csv";
  save_score_table(table, out_path);
  std::cout << "wrote " << out_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantify group discrimination in predictive scores and mitigate it "
      "with barycenter or scaling transforms."};
  app.require_subcommand(1);

  std::string input;
  std::string mitigated;
  std::string out_dir = ".";
  std::string transform_kind = "barycenter";
  std::string transform_file;
  std::vector<std::string> transform_files;
  std::vector<double> levels{0.05, 0.10, 0.20};
  int bins = 20;
  double tolerance = 0.01;
  std::uint64_t seed = 42;
  std::string groups_spec = "A:10000:0.0894,B:10000:0.0820";
  double shape_a = 2.0;
  double shape_b = 5.0;

  auto* report = app.add_subcommand(
      "report", "Fairness diagnostics for a score table");
  report->add_option("--input", input, "Score CSV")->required();
  report->add_option("--mitigated", mitigated,
                     "Mitigated score CSV; <model>_fair columns are used "
                     "when present");
  report->add_option("--bins", bins, "Histogram bins on [0,1]")
      ->check(CLI::Range(2, 1000000));
  report->add_option("--tolerance", tolerance, "Relative balance tolerance");
  report->add_option("--out", out_dir, "Output directory");

  auto* fit = app.add_subcommand("fit", "Fit a mitigation transform");
  fit->add_option("--input", input, "Score CSV")->required();
  fit->add_option("--transform", transform_kind, "Transform kind")
      ->check(CLI::IsMember({"scaling", "barycenter"}));
  fit->add_option("--out", out_dir, "Output directory");

  auto* apply = app.add_subcommand(
      "apply", "Apply a fitted transform, appending score_fair");
  apply->add_option("--input", input, "Score CSV")->required();
  apply->add_option("--transform-file", transform_file,
                    "Fitted transform JSON")
      ->required();
  apply->add_option("--out", out_dir, "Output directory");

  auto* table_cmd = app.add_subcommand(
      "table", "Neutral predictions at given initial score levels");
  table_cmd
      ->add_option("--transform-file", transform_files,
                   "Fitted transform JSON (repeatable)")
      ->required();
  table_cmd->add_option("--levels", levels, "Initial score levels")
      ->delimiter(',');
  table_cmd->add_option("--out", out_dir, "Output directory");

  auto* plot = app.add_subcommand(
      "plot", "Q-Q matching and density SVG plots");
  plot->add_option("--input", input, "Score CSV")->required();
  plot->add_option("--mitigated", mitigated, "Mitigated score CSV");
  plot->add_option("--bins", bins, "Histogram bins on [0,1]")
      ->check(CLI::Range(2, 1000000));
  plot->add_option("--out", out_dir, "Output directory");

  auto* synth = app.add_subcommand(
      "synth", "Generate a deterministic synthetic score table");
  synth->add_option("--seed", seed, "Random seed");
  synth->add_option("--groups", groups_spec,
                    "Comma-separated label:count:mean triples");
  synth->add_option("--shape-a", shape_a, "Kumaraswamy shape a");
  synth->add_option("--shape-b", shape_b, "Kumaraswamy shape b");
  synth->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (report->parsed()) {
      return run_report(input, mitigated, bins, tolerance, out_dir);
    }
    if (fit->parsed()) {
      return run_fit(input, transform_kind, out_dir);
    }
    if (apply->parsed()) {
      return run_apply(input, transform_file, out_dir);
    }
    if (table_cmd->parsed()) {
      return run_table(transform_files, levels, out_dir);
    }
    if (plot->parsed()) {
      return run_plot(input, mitigated, bins, out_dir);
    }
    if (synth->parsed()) {
      return run_synth(seed, groups_spec, shape_a, shape_b, out_dir);
    }
  } catch (const CsvError& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
