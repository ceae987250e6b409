#pragma once

#include <string>

#include "dnnbound/bracket.hpp"

namespace dnnbound {

/// One solve, serialized as a single JSON object per line with a fixed
/// field order. Non-finite interval endpoints serialize as null.
struct ResultRecord {
  std::string schema = "dnnbound.result.v1";
  std::string instance;
  std::string method;
  double lambda = 0;
  double rho = 0;
  double delta = 0;
  double eps = 0;
  double lb_valid = 0;
  double y_final = 0;
  double interval_lb = 0;
  double interval_ub = 0;
  int outer_iters = 0;
  long total_apg_iters = 0;
  std::string status;
  double wall_time_sec = 0;
};

std::string method_name(Method m);
std::string status_name(SolveStatus s);
std::string mode_name(ProbeMode m);

ResultRecord make_result_record(const std::string& instance, Method method,
                                const LagrangianCop& cop,
                                const BracketParams& params,
                                const BracketResult& result);

std::string write_result(const ResultRecord& rec);
ResultRecord parse_result(const std::string& line);

/// Per-outer-iteration trace line ("dnnbound.trace.v1").
std::string write_trace_line(const TraceRecord& rec);
TraceRecord parse_trace_line(const std::string& line);

}  // namespace dnnbound
