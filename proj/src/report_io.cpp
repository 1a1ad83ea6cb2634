#include "faultscale/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

namespace faultscale {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

namespace {

constexpr const char* kReportHeader =
    "fault,family,size,slo,policy,seed,dimension,error_ratio_pct,"
    "classification,cost_normal_usd,cost_abnormal_usd,cost_delta_usd,risk_flag";

std::string ratio_cell(const std::optional<double>& ratio) {
  return ratio ? format_double(*ratio) : "n/a";
}

std::string classification_cell(const std::optional<Classification>& c) {
  return c ? std::string(to_string(*c)) : "n/a";
}

std::string row_prefix(const ExperimentReport& r) {
  std::string out;
  out += to_string(r.fault);
  out += "," + r.family + "," + r.size + "," + r.slo_name + ",";
  out += to_string(r.policy);
  out += "," + std::to_string(r.seed);
  return out;
}

}  // namespace

std::string report_csv(const std::vector<ExperimentReport>& reports) {
  std::string out = kReportHeader;
  out += "\n";
  for (const auto& r : reports) {
    out += row_prefix(r);
    out += "," + r.dimension;
    out += "," + ratio_cell(r.error_ratio_pct);
    out += "," + classification_cell(r.classification);
    out += "," + format_double(r.cost_normal);
    out += "," + format_double(r.cost_abnormal);
    out += "," + format_double(r.cost_delta);
    out += r.risk_flag ? ",1" : ",0";
    out += "\n";
  }
  return out;
}

namespace {

nlohmann::ordered_json config_meta(const MatrixConfig& config) {
  nlohmann::ordered_json meta;
  meta["catalog_entries"] = config.catalog.entries.size();
  nlohmann::ordered_json workload;
  for (ResourceKind kind : kResourceKinds) {
    workload["mean_" + std::string(to_string(kind))] = config.profile.mean[kind];
    workload["volatility_" + std::string(to_string(kind))] =
        config.profile.volatility[kind];
  }
  workload["mean_reversion_per_s"] = config.profile.mean_reversion_per_s;
  workload["latency_mean_ms"] = config.profile.latency_mean_ms;
  workload["latency_volatility_ms"] = config.profile.latency_volatility_ms;
  workload["duration_s"] = config.profile.duration_s;
  workload["sample_interval_s"] = config.profile.sample_interval_s;
  meta["workload"] = workload;

  nlohmann::ordered_json faults;
  for (FaultKind kind : config.faults) {
    nlohmann::ordered_json params;
    for (const auto& [key, value] : config.params_for(kind)) params[key] = value;
    faults[std::string(to_string(kind))] = params;
  }
  meta["fault_params"] = faults;
  meta["fault_window"] = {{"start_s", config.fault_window.start},
                          {"duration_s", config.fault_window.duration}};
  meta["decision_window"] =
      config.decision_window == DecisionWindow::FaultWindow ? "fault" : "full";
  meta["eq1_interpretation"] =
      config.sizing_rule == VerticalSizingRule::Literal ? "literal" : "headroom";
  meta["per_minute_bucketing"] = config.per_minute_bucketing;
  meta["current_replicas"] = config.current_replicas;
  meta["min_replicas"] = config.min_replicas;
  if (config.max_replicas) meta["max_replicas"] = *config.max_replicas;
  meta["hours_per_month"] = config.hours_per_month;
  meta["classify_tolerance_pct"] = config.classify_tolerance_pct;
  meta["seeds"] = config.seeds;
  if (config.trigger.enabled) {
    meta["trigger"] = {{"mode", config.trigger.mode == TriggerMode::All ? "all" : "any"},
                       {"thresholds", config.trigger.thresholds}};
  }
  // calibration disclaimer: these outputs depend on the synthetic workload
  // and distortion parameters above, not on any measured cloud traces
  meta["calibrated_synthetic_run"] = true;
  return meta;
}

}  // namespace

std::string report_json(const std::vector<ExperimentReport>& reports,
                        const MatrixConfig& config) {
  nlohmann::ordered_json doc;
  doc["meta"] = config_meta(config);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json row;
    row["fault"] = std::string(to_string(r.fault));
    row["family"] = r.family;
    row["size"] = r.size;
    row["slo"] = r.slo_name;
    row["policy"] = std::string(to_string(r.policy));
    row["seed"] = r.seed;
    row["dimension"] = r.dimension;
    if (r.error_ratio_pct) {
      row["error_ratio_pct"] = *r.error_ratio_pct;
    } else {
      row["error_ratio_pct"] = nullptr;
    }
    row["classification"] = classification_cell(r.classification);
    row["cost_normal_usd"] = r.cost_normal;
    row["cost_abnormal_usd"] = r.cost_abnormal;
    row["cost_delta_usd"] = r.cost_delta;
    row["risk_flag"] = r.risk_flag;
    if (r.error) row["error"] = *r.error;
    rows.push_back(std::move(row));
  }
  doc["reports"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string fig2_vertical_csv(const std::vector<ExperimentReport>& reports) {
  std::string out = "slo,fault,family,size,seed,dimension,error_ratio_pct\n";
  for (const auto& r : reports) {
    if (r.policy != Policy::Vertical || r.error) continue;
    for (const auto& dim : r.ratios) {
      out += r.slo_name;
      out += ",";
      out += to_string(r.fault);
      out += "," + r.family + "," + r.size + "," + std::to_string(r.seed);
      out += "," + dim.dimension;
      out += "," + ratio_cell(dim.ratio_pct);
      out += "\n";
    }
  }
  return out;
}

std::string fig3_horizontal_csv(const std::vector<ExperimentReport>& reports) {
  std::string out = "slo,fault,family,size,seed,error_ratio_pct\n";
  for (const auto& r : reports) {
    if (r.policy != Policy::Horizontal || r.error) continue;
    out += r.slo_name;
    out += ",";
    out += to_string(r.fault);
    out += "," + r.family + "," + r.size + "," + std::to_string(r.seed);
    out += "," + ratio_cell(r.error_ratio_pct);
    out += "\n";
  }
  return out;
}

std::string fig4_cost_csv(const std::vector<ExperimentReport>& reports) {
  std::string out =
      "policy,slo,fault,family,size,seed,cost_normal_usd,cost_abnormal_usd,"
      "cost_delta_usd,risk_flag\n";
  for (const auto& r : reports) {
    if (r.error) continue;
    out += to_string(r.policy);
    out += "," + r.slo_name + ",";
    out += to_string(r.fault);
    out += "," + r.family + "," + r.size + "," + std::to_string(r.seed);
    out += "," + format_double(r.cost_normal);
    out += "," + format_double(r.cost_abnormal);
    out += "," + format_double(r.cost_delta);
    out += r.risk_flag ? ",1" : ",0";
    out += "\n";
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

std::string merge_report_csvs(const std::vector<std::string>& documents,
                              bool aggregate) {
  if (documents.empty()) throw std::invalid_argument("no report files to merge");
  CsvTable merged;
  for (const auto& doc : documents) {
    CsvTable table = parse_csv(doc);
    if (merged.header.empty()) {
      merged.header = table.header;
    } else if (merged.header != table.header) {
      throw std::invalid_argument("report headers do not match");
    }
    for (auto& row : table.rows) merged.rows.push_back(std::move(row));
  }
  std::stable_sort(merged.rows.begin(), merged.rows.end());

  if (!aggregate) {
    std::string out;
    for (std::size_t i = 0; i < merged.header.size(); ++i) {
      if (i) out += ",";
      out += merged.header[i];
    }
    out += "\n";
    for (const auto& row : merged.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ",";
        out += row[i];
      }
      out += "\n";
    }
    return out;
  }

  // group across seeds: key = fault,family,size,slo,policy,dimension
  auto col = [&](const std::string& name) {
    auto it = std::find(merged.header.begin(), merged.header.end(), name);
    if (it == merged.header.end()) {
      throw std::invalid_argument("report column missing: " + name);
    }
    return static_cast<std::size_t>(it - merged.header.begin());
  };
  const std::size_t c_fault = col("fault"), c_family = col("family"),
                    c_size = col("size"), c_slo = col("slo"),
                    c_policy = col("policy"), c_dim = col("dimension"),
                    c_ratio = col("error_ratio_pct"),
                    c_delta = col("cost_delta_usd");

  struct Stats {
    std::size_t n = 0;
    std::vector<double> ratios;
    std::vector<double> deltas;
  };
  std::map<std::vector<std::string>, Stats> groups;
  for (const auto& row : merged.rows) {
    std::vector<std::string> key = {row[c_fault], row[c_family], row[c_size],
                                    row[c_slo],   row[c_policy], row[c_dim]};
    Stats& s = groups[key];
    s.n += 1;
    if (row[c_ratio] != "n/a") s.ratios.push_back(std::stod(row[c_ratio]));
    s.deltas.push_back(std::stod(row[c_delta]));
  }

  std::string out =
      "fault,family,size,slo,policy,dimension,n,error_ratio_pct_mean,"
      "error_ratio_pct_min,error_ratio_pct_max,cost_delta_usd_mean,"
      "cost_delta_usd_min,cost_delta_usd_max\n";
  auto emit_stats = [](std::string& dst, const std::vector<double>& v) {
    if (v.empty()) {
      dst += ",n/a,n/a,n/a";
      return;
    }
    double sum = 0.0;
    for (double x : v) sum += x;
    dst += "," + format_double(sum / static_cast<double>(v.size()));
    dst += "," + format_double(*std::min_element(v.begin(), v.end()));
    dst += "," + format_double(*std::max_element(v.begin(), v.end()));
  };
  for (const auto& [key, stats] : groups) {
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) out += ",";
      out += key[i];
    }
    out += "," + std::to_string(stats.n);
    emit_stats(out, stats.ratios);
    emit_stats(out, stats.deltas);
    out += "\n";
  }
  return out;
}

}  // namespace faultscale
