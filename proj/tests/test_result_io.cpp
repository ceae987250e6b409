#include <limits>

#include <doctest.h>

#include "dnnbound/result_io.hpp"

using namespace dnnbound;

TEST_SUITE_BEGIN("result_io");

namespace {

ResultRecord sample_record() {
  ResultRecord rec;
  rec.instance = "bqp100-1";
  rec.method = "secant";
  rec.lambda = 10000.0;
  rec.rho = 201.0;
  rec.delta = 1e-4;
  rec.eps = 1e-12;
  rec.lb_valid = -8036.25;
  rec.y_final = -8036.1;
  rec.interval_lb = -8037.0;
  rec.interval_ub = -8036.0;
  rec.outer_iters = 14;
  rec.total_apg_iters = 14980;
  rec.status = "converged";
  rec.wall_time_sec = 110.5;
  return rec;
}

}  // namespace

TEST_CASE("result record round trip") {
  const ResultRecord rec = sample_record();
  const std::string line = write_result(rec);
  const ResultRecord back = parse_result(line);
  CHECK(back.schema == rec.schema);
  CHECK(back.instance == rec.instance);
  CHECK(back.method == rec.method);
  CHECK(back.lambda == rec.lambda);
  CHECK(back.rho == rec.rho);
  CHECK(back.delta == rec.delta);
  CHECK(back.eps == rec.eps);
  CHECK(back.lb_valid == rec.lb_valid);
  CHECK(back.y_final == rec.y_final);
  CHECK(back.interval_lb == rec.interval_lb);
  CHECK(back.interval_ub == rec.interval_ub);
  CHECK(back.outer_iters == rec.outer_iters);
  CHECK(back.total_apg_iters == rec.total_apg_iters);
  CHECK(back.status == rec.status);
  CHECK(back.wall_time_sec == rec.wall_time_sec);
}

TEST_CASE("field order is pinned") {
  const std::string line = write_result(sample_record());
  const char* keys[] = {"\"schema\"",     "\"instance\"",   "\"method\"",
                        "\"lambda\"",     "\"rho\"",        "\"delta\"",
                        "\"eps\"",        "\"lb_valid\"",   "\"y_final\"",
                        "\"interval\"",   "\"outer_iters\"",
                        "\"total_apg_iters\"", "\"status\"",
                        "\"wall_time_sec\""};
  std::size_t pos = 0;
  for (const char* key : keys) {
    const std::size_t found = line.find(key, pos);
    REQUIRE(found != std::string::npos);
    pos = found;
  }
}

TEST_CASE("non-finite interval endpoints serialize as null") {
  ResultRecord rec = sample_record();
  rec.interval_lb = -std::numeric_limits<double>::infinity();
  const std::string line = write_result(rec);
  CHECK(line.find("null") != std::string::npos);
  const ResultRecord back = parse_result(line);
  CHECK(back.interval_lb == -std::numeric_limits<double>::infinity());
  CHECK(back.interval_ub == rec.interval_ub);
}

TEST_CASE("schema mismatch is rejected") {
  std::string line = write_result(sample_record());
  const auto pos = line.find("dnnbound.result.v1");
  line.replace(pos, 18, "dnnbound.result.v9");
  CHECK_THROWS(parse_result(line));
}

TEST_CASE("trace line round trip") {
  TraceRecord rec;
  rec.k = 3;
  rec.y = -12.5;
  rec.g = 0.25;
  rec.lb_certified = -14.0;
  rec.lb_probe = -14.5;
  rec.apg_iters = 812;
  rec.mode = ProbeMode::Bisection;
  rec.zero_x = false;
  rec.inner_converged = true;
  const TraceRecord back = parse_trace_line(write_trace_line(rec));
  CHECK(back.k == rec.k);
  CHECK(back.y == rec.y);
  CHECK(back.g == rec.g);
  CHECK(back.lb_certified == rec.lb_certified);
  CHECK(back.lb_probe == rec.lb_probe);
  CHECK(back.apg_iters == rec.apg_iters);
  CHECK(back.mode == rec.mode);
  CHECK(back.zero_x == rec.zero_x);
  CHECK(back.inner_converged == rec.inner_converged);
}

TEST_SUITE_END();
