#ifndef FAULTSCALE_REPORT_IO_HPP
#define FAULTSCALE_REPORT_IO_HPP

#include <string>
#include <vector>

#include "faultscale/analysis.hpp"

namespace faultscale {

/// fault,family,size,slo,policy,seed,dimension,error_ratio_pct,
/// classification,cost_normal_usd,cost_abnormal_usd,cost_delta_usd,risk_flag
std::string report_csv(const std::vector<ExperimentReport>& reports);

/// JSON mirror of the CSV rows plus the calibration metadata of the run.
std::string report_json(const std::vector<ExperimentReport>& reports,
                        const MatrixConfig& config);

/// Plot-data tables shaped like the result figures' axes.
std::string fig2_vertical_csv(const std::vector<ExperimentReport>& reports);
std::string fig3_horizontal_csv(const std::vector<ExperimentReport>& reports);
std::string fig4_cost_csv(const std::vector<ExperimentReport>& reports);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);

/// Concatenates report CSVs (headers must match) and sorts rows by scenario
/// id. With aggregate, groups rows across seeds and emits
/// count/mean/min/max of error_ratio_pct and cost_delta_usd per group.
std::string merge_report_csvs(const std::vector<std::string>& documents,
                              bool aggregate);

/// Number formatting used in every CSV/JSON we emit (deterministic output).
std::string format_double(double value);

}  // namespace faultscale

#endif
