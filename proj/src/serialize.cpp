// SPDX-License-Identifier: Apache-2.0
#include "fairscore/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <utility>

namespace fairscore {

namespace {

using nlohmann::json;

void require_schema(const json& j, const char* schema) {
  if (!j.is_object() || j.value("schema", "") != schema) {
    throw ValidationError(std::string("expected a '") + schema +
                          "' document");
  }
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw ValidationError(std::string("missing field '") + name + "'");
  }
  return *it;
}

double number(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number()) {
    throw ValidationError(std::string("field '") + name +
                          "' must be a number");
  }
  return v.get<double>();
}

std::vector<double> number_array(const json& v, const char* name) {
  if (!v.is_array()) {
    throw ValidationError(std::string("field '") + name +
                          "' must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) {
      throw ValidationError(std::string("field '") + name +
                            "' must hold numbers only");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

// JSON has no infinity; absent KL values round-trip as null.
json opt_to_json(const std::optional<double>& v) {
  return v.has_value() ? json(*v) : json(nullptr);
}

std::optional<double> opt_from_json(const json& v) {
  if (v.is_null()) {
    return std::nullopt;
  }
  if (!v.is_number()) {
    throw ValidationError("expected a number or null");
  }
  return v.get<double>();
}

json block_to_json(const MetricsBlock& b) {
  json groups = json::object();
  for (const auto& [label, st] : b.groups) {
    groups[label] = {{"count", st.count}, {"mean", st.mean}};
  }
  json densities = json::object();
  for (const auto& [label, masses] : b.densities) {
    densities[label] = masses;
  }
  json pairs = json::array();
  for (const auto& p : b.pairs) {
    pairs.push_back({{"a", p.a},
                     {"b", p.b},
                     {"w1", p.w1},
                     {"w2", p.w2},
                     {"tv", p.tv},
                     {"js", p.js},
                     {"kl_ab", opt_to_json(p.kl_ab)},
                     {"kl_ba", opt_to_json(p.kl_ba)},
                     {"kl_finite",
                      p.kl_ab.has_value() && p.kl_ba.has_value()}});
  }
  json out = {{"groups", std::move(groups)},
              {"overall_mean", b.overall_mean},
              {"weak_dp_gap", b.weak_gap},
              {"pairs", std::move(pairs)},
              {"densities", std::move(densities)}};
  if (b.balance.has_value()) {
    const BalanceResult& r = *b.balance;
    out["balance"] = {{"mean_score", r.mean_score},
                      {"mean_outcome", r.mean_outcome},
                      {"gap", r.gap},
                      {"relative_gap",
                       std::isfinite(r.relative_gap) ? json(r.relative_gap)
                                                     : json(nullptr)},
                      {"balanced", r.balanced}};
  }
  return out;
}

MetricsBlock block_from_json(const json& j) {
  MetricsBlock b;
  for (const auto& [label, st] : field(j, "groups").items()) {
    GroupStats gs;
    gs.count = field(st, "count").get<std::size_t>();
    gs.mean = number(st, "mean");
    b.groups[label] = gs;
  }
  b.overall_mean = number(j, "overall_mean");
  b.weak_gap = number(j, "weak_dp_gap");
  for (const auto& [label, masses] : field(j, "densities").items()) {
    b.densities[label] = number_array(masses, "densities");
  }
  for (const auto& p : field(j, "pairs")) {
    PairDistances pd;
    pd.a = field(p, "a").get<std::string>();
    pd.b = field(p, "b").get<std::string>();
    pd.w1 = number(p, "w1");
    pd.w2 = number(p, "w2");
    pd.tv = number(p, "tv");
    pd.js = number(p, "js");
    pd.kl_ab = opt_from_json(field(p, "kl_ab"));
    pd.kl_ba = opt_from_json(field(p, "kl_ba"));
    b.pairs.push_back(std::move(pd));
  }
  if (j.contains("balance")) {
    const json& r = j.at("balance");
    BalanceResult br;
    br.mean_score = number(r, "mean_score");
    br.mean_outcome = number(r, "mean_outcome");
    br.gap = number(r, "gap");
    const json& rel = field(r, "relative_gap");
    br.relative_gap = rel.is_null()
                          ? std::numeric_limits<double>::infinity()
                          : rel.get<double>();
    br.balanced = field(r, "balanced").get<bool>();
    b.balance = br;
  }
  return b;
}

}  // namespace

json to_json(const ScalingTransform& t) {
  json groups = json::object();
  for (const auto& [label, m] : t.group_means()) {
    groups[label] = {{"mean", m}, {"factor", t.factors().at(label)}};
  }
  return {{"schema", kTransformSchema},
          {"kind", "scaling"},
          {"overall_mean", t.overall_mean()},
          {"groups", std::move(groups)}};
}

json to_json(const BarycenterTransform& t) {
  json groups = json::object();
  for (const auto& [label, dist] : t.groups()) {
    groups[label] = {{"weight", t.weights().at(label)},
                     {"scores", dist.values()}};
  }
  json out = {{"schema", kTransformSchema},
              {"kind", "barycenter"},
              {"groups", std::move(groups)}};
  if (t.warning().has_value()) {
    out["warning"] = *t.warning();
  }
  return out;
}

json to_json(const TransportMap& map) {
  return {{"schema", kTransportMapSchema},
          {"source", map.source().values()},
          {"target", map.target().values()}};
}

json to_json(const FairnessReport& report) {
  json models = json::array();
  for (const auto& m : report.models) {
    json entry = {{"model", m.model}, {"before", block_to_json(m.before)}};
    if (m.after.has_value()) {
      entry["after"] = block_to_json(*m.after);
    }
    models.push_back(std::move(entry));
  }
  return {{"schema", kReportSchema},
          {"bin_edges", report.bin_edges},
          {"balance_tolerance", report.balance_tolerance},
          {"models", std::move(models)}};
}

ScalingTransform scaling_from_json(const json& j) {
  require_schema(j, kTransformSchema);
  if (j.value("kind", "") != "scaling") {
    throw ValidationError("not a scaling transform");
  }
  std::map<std::string, double> means;
  for (const auto& [label, g] : field(j, "groups").items()) {
    means[label] = number(g, "mean");
  }
  return ScalingTransform(number(j, "overall_mean"), std::move(means));
}

BarycenterTransform barycenter_from_json(const json& j) {
  require_schema(j, kTransformSchema);
  if (j.value("kind", "") != "barycenter") {
    throw ValidationError("not a barycenter transform");
  }
  std::map<std::string, EmpiricalDistribution> groups;
  std::map<std::string, double> weights;
  for (const auto& [label, g] : field(j, "groups").items()) {
    weights[label] = number(g, "weight");
    groups.emplace(label, EmpiricalDistribution(
                              number_array(field(g, "scores"), "scores")));
  }
  BarycenterTransform t(std::move(groups), std::move(weights));
  if (j.contains("warning")) {
    t.set_warning(j.at("warning").get<std::string>());
  }
  return t;
}

TransportMap transport_map_from_json(const json& j) {
  require_schema(j, kTransportMapSchema);
  return TransportMap(
      EmpiricalDistribution(number_array(field(j, "source"), "source")),
      EmpiricalDistribution(number_array(field(j, "target"), "target")));
}

FairnessReport report_from_json(const json& j) {
  require_schema(j, kReportSchema);
  FairnessReport report;
  report.bin_edges = number_array(field(j, "bin_edges"), "bin_edges");
  report.balance_tolerance = number(j, "balance_tolerance");
  for (const auto& m : field(j, "models")) {
    ModelReport mr;
    mr.model = field(m, "model").get<std::string>();
    mr.before = block_from_json(field(m, "before"));
    if (m.contains("after")) {
      mr.after = block_from_json(m.at("after"));
    }
    report.models.push_back(std::move(mr));
  }
  return report;
}

AnyTransform transform_from_json(const json& j) {
  require_schema(j, kTransformSchema);
  const std::string kind = j.value("kind", "");
  if (kind == "scaling") {
    return scaling_from_json(j);
  }
  if (kind == "barycenter") {
    return barycenter_from_json(j);
  }
  throw ValidationError("unknown transform kind '" + kind + "'");
}

ScaledScore apply_transform(const AnyTransform& t, double score,
                            const std::string& group) {
  if (const auto* s = std::get_if<ScalingTransform>(&t)) {
    return s->apply(score, group);
  }
  const auto& b = std::get<BarycenterTransform>(t);
  return ScaledScore{b.apply(score, group), false};
}

std::vector<std::string> transform_labels(const AnyTransform& t) {
  if (const auto* s = std::get_if<ScalingTransform>(&t)) {
    std::vector<std::string> out;
    for (const auto& [label, m] : s->group_means()) {
      out.push_back(label);
    }
    return out;
  }
  return std::get<BarycenterTransform>(t).labels();
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open '" + path.string() + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in '" + path.string() +
                          "': " + e.what());
  }
}

void save_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  out << dump_json(j);
}

}  // namespace fairscore
