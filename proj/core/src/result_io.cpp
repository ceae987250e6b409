#include "dnnbound/result_io.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace dnnbound {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double number_or(const ordered_json& j, const char* key, double fallback) {
  const auto& v = j.at(key);
  if (v.is_null()) return fallback;
  return v.get<double>();
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Bp: return "bp";
    case Method::Newton: return "newton";
    case Method::Secant: return "secant";
  }
  throw std::logic_error("method_name: unknown method");
}

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxOuterReached: return "max_outer";
    case SolveStatus::TimeLimit: return "time_limit";
  }
  throw std::logic_error("status_name: unknown status");
}

std::string mode_name(ProbeMode m) {
  switch (m) {
    case ProbeMode::Secant: return "secant";
    case ProbeMode::Bisection: return "bisection";
    case ProbeMode::Newton: return "newton";
  }
  throw std::logic_error("mode_name: unknown mode");
}

namespace {

ProbeMode mode_from_name(const std::string& s) {
  if (s == "secant") return ProbeMode::Secant;
  if (s == "bisection") return ProbeMode::Bisection;
  if (s == "newton") return ProbeMode::Newton;
  throw std::invalid_argument("unknown probe mode: " + s);
}

}  // namespace

ResultRecord make_result_record(const std::string& instance, Method method,
                                const LagrangianCop& cop,
                                const BracketParams& params,
                                const BracketResult& result) {
  ResultRecord rec;
  rec.instance = instance;
  rec.method = method_name(method);
  rec.lambda = cop.lambda;
  rec.rho = cop.rho;
  rec.delta = params.delta;
  rec.eps = params.eps;
  rec.lb_valid = result.lb_valid;
  rec.y_final = result.y_final;
  rec.interval_lb = result.interval_lb;
  rec.interval_ub = result.interval_ub;
  rec.outer_iters = result.outer_iters;
  rec.total_apg_iters = result.total_apg_iters;
  rec.status = status_name(result.status);
  rec.wall_time_sec = result.wall_time_sec;
  return rec;
}

std::string write_result(const ResultRecord& rec) {
  ordered_json j;
  j["schema"] = rec.schema;
  j["instance"] = rec.instance;
  j["method"] = rec.method;
  j["lambda"] = rec.lambda;
  j["rho"] = rec.rho;
  j["delta"] = rec.delta;
  j["eps"] = rec.eps;
  j["lb_valid"] = rec.lb_valid;
  j["y_final"] = rec.y_final;
  j["interval"] = ordered_json::array(
      {finite_or_null(rec.interval_lb), finite_or_null(rec.interval_ub)});
  j["outer_iters"] = rec.outer_iters;
  j["total_apg_iters"] = rec.total_apg_iters;
  j["status"] = rec.status;
  j["wall_time_sec"] = rec.wall_time_sec;
  return j.dump();
}

ResultRecord parse_result(const std::string& line) {
  const ordered_json j = ordered_json::parse(line);
  if (j.at("schema").get<std::string>() != "dnnbound.result.v1") {
    throw std::invalid_argument("parse_result: unexpected schema " +
                                j.at("schema").get<std::string>());
  }
  ResultRecord rec;
  rec.schema = j.at("schema").get<std::string>();
  rec.instance = j.at("instance").get<std::string>();
  rec.method = j.at("method").get<std::string>();
  rec.lambda = j.at("lambda").get<double>();
  rec.rho = j.at("rho").get<double>();
  rec.delta = j.at("delta").get<double>();
  rec.eps = j.at("eps").get<double>();
  rec.lb_valid = j.at("lb_valid").get<double>();
  rec.y_final = j.at("y_final").get<double>();
  const auto& interval = j.at("interval");
  if (!interval.is_array() || interval.size() != 2) {
    throw std::invalid_argument("parse_result: interval must be a pair");
  }
  rec.interval_lb = interval[0].is_null()
                        ? -std::numeric_limits<double>::infinity()
                        : interval[0].get<double>();
  rec.interval_ub = interval[1].is_null()
                        ? std::numeric_limits<double>::infinity()
                        : interval[1].get<double>();
  rec.outer_iters = j.at("outer_iters").get<int>();
  rec.total_apg_iters = j.at("total_apg_iters").get<long>();
  rec.status = j.at("status").get<std::string>();
  rec.wall_time_sec = j.at("wall_time_sec").get<double>();
  return rec;
}

std::string write_trace_line(const TraceRecord& rec) {
  ordered_json j;
  j["schema"] = "dnnbound.trace.v1";
  j["k"] = rec.k;
  j["y"] = rec.y;
  j["g"] = rec.g;
  j["lb"] = finite_or_null(rec.lb_certified);
  j["lb_probe"] = finite_or_null(rec.lb_probe);
  j["apg_iters"] = rec.apg_iters;
  j["mode"] = mode_name(rec.mode);
  j["zero_x"] = rec.zero_x;
  j["inner_converged"] = rec.inner_converged;
  return j.dump();
}

TraceRecord parse_trace_line(const std::string& line) {
  const ordered_json j = ordered_json::parse(line);
  if (j.at("schema").get<std::string>() != "dnnbound.trace.v1") {
    throw std::invalid_argument("parse_trace_line: unexpected schema");
  }
  TraceRecord rec;
  rec.k = j.at("k").get<int>();
  rec.y = j.at("y").get<double>();
  rec.g = j.at("g").get<double>();
  rec.lb_certified =
      number_or(j, "lb", -std::numeric_limits<double>::infinity());
  rec.lb_probe =
      number_or(j, "lb_probe", -std::numeric_limits<double>::infinity());
  rec.apg_iters = j.at("apg_iters").get<int>();
  rec.mode = mode_from_name(j.at("mode").get<std::string>());
  rec.zero_x = j.at("zero_x").get<bool>();
  rec.inner_converged = j.at("inner_converged").get<bool>();
  return rec;
}

}  // namespace dnnbound
