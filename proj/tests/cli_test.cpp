// Integration checks of the dnnbound executable: exit codes, determinism,
// trace emission, oracle agreement. Invoked by ctest with the binary path as
// the only argument.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dnnbound/instance_io.hpp"
#include "dnnbound/result_io.hpp"
#include "dnnbound/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    r.exit_code = -1;
    return r;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.output.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string strip_timing(const std::string& line) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(line);
  j.erase("wall_time_sec");
  return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: dnnbound_cli_test <path-to-dnnbound>\n";
    return 1;
  }
  const std::string bin = argv[1];
  const fs::path work = fs::temp_directory_path() / "dnnbound_cli_test";
  fs::create_directories(work);

  // usage errors exit with 2
  expect(run(bin).exit_code == 2, "no subcommand is a usage error");
  expect(run(bin + " solve-bqp --bogus-flag").exit_code == 2,
         "unknown flag is a usage error");
  expect(run(bin + " solve-bqp").exit_code == 2,
         "missing instance is a usage error");
  expect(run(bin + " --help").exit_code == 0, "--help exits cleanly");

  // parse errors exit with 3
  const fs::path broken = work / "broken.sparse";
  std::ofstream(broken) << "2 2\n1 2 5\n";
  expect(run(bin + " solve-bqp " + broken.string()).exit_code == 3,
         "truncated instance is a parse error");

  // a tiny random instance solves, emits one result line, exit 0
  const std::string solve_cmd =
      bin + " solve-bqp --random-r 5 --seed 9 --delta 1e-3";
  const RunResult first = run(solve_cmd);
  expect(first.exit_code == 0, "random solve succeeds");
  dnnbound::ResultRecord rec;
  bool parsed = true;
  try {
    rec = dnnbound::parse_result(first.output);
  } catch (const std::exception& e) {
    parsed = false;
    expect(false, std::string("result line parses: ") + e.what());
  }
  if (parsed) {
    expect(rec.method == "secant", "default method is secant");
    expect(rec.lambda == 10000.0, "default lambda is 10000");
    expect(rec.status == "converged", "status is converged");
  }

  // determinism: identical records modulo the timing field
  const RunResult second = run(solve_cmd);
  expect(second.exit_code == 0, "repeat solve succeeds");
  expect(strip_timing(first.output) == strip_timing(second.output),
         "same seed and flags give a byte-identical record modulo timing");

  // certified bound does not exceed the brute-force optimum
  const RunResult oracle = run(bin + " oracle --random-bqp 5 --seed 9");
  expect(oracle.exit_code == 0, "oracle runs");
  if (oracle.exit_code == 0 && parsed) {
    const auto j = nlohmann::json::parse(oracle.output);
    expect(rec.lb_valid <= j.at("optimum").get<double>() + 1e-6,
           "lb_valid <= brute-force optimum");
  }

  // trace sidecar has one line per outer iteration
  const fs::path trace_path = work / "trace.jsonl";
  const fs::path out_path = work / "result.jsonl";
  const RunResult traced =
      run(bin + " solve-bqp --random-r 4 --seed 3 --delta 1e-3 --trace-out " +
          trace_path.string() + " --out " + out_path.string());
  expect(traced.exit_code == 0, "traced solve succeeds");
  {
    std::ifstream res_in(out_path);
    std::string res_line;
    std::getline(res_in, res_line);
    const dnnbound::ResultRecord res = dnnbound::parse_result(res_line);
    std::ifstream tr_in(trace_path);
    int count = 0;
    std::string line;
    while (std::getline(tr_in, line)) {
      if (!line.empty()) {
        dnnbound::parse_trace_line(line);
        ++count;
      }
    }
    expect(count == res.outer_iters, "trace length equals outer iterations");
  }

  // time limit produces the partial exit code
  const RunResult limited =
      run(bin + " solve-bqp --random-r 6 --seed 4 --time-limit 0");
  expect(limited.exit_code == 4, "time limit exits with 4");

  // a QAP toy instance round-trips through solve-qap
  const fs::path qap_path = work / "toy.dat";
  std::ofstream(qap_path) << "2 0 1 1 0 0 3 3 0";
  const RunResult qap = run(bin + " solve-qap " + qap_path.string());
  expect(qap.exit_code == 0, "toy qap solves");
  if (qap.exit_code == 0) {
    const dnnbound::ResultRecord qrec = dnnbound::parse_result(qap.output);
    expect(qrec.lb_valid <= 6.0 + 1e-6, "qap bound below the optimum 6");
  }

  // bench with a manifest, two workers
  const fs::path inst_a = work / "a.sparse";
  std::ofstream(inst_a) << dnnbound::write_biqmac(
      dnnbound::random_bqop_matrix(4, 11));
  const fs::path inst_b = work / "b.sparse";
  std::ofstream(inst_b) << dnnbound::write_biqmac(
      dnnbound::random_bqop_matrix(4, 12));
  const fs::path manifest = work / "manifest.jsonl";
  std::ofstream(manifest) << "{\"type\":\"bqp\",\"path\":\"" +
                                 inst_a.string() + "\"}\n" +
                                 "{\"type\":\"bqp\",\"path\":\"" +
                                 inst_b.string() + "\"}\n";
  const RunResult bench =
      run(bin + " bench " + manifest.string() + " --jobs 2 --delta 1e-3");
  expect(bench.exit_code == 0, "bench succeeds");
  {
    std::istringstream lines(bench.output);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
      if (!line.empty()) {
        dnnbound::parse_result(line);
        ++count;
      }
    }
    expect(count == 2, "bench emits one line per manifest entry");
  }

  fs::remove_all(work);
  if (failures == 0) {
    std::cout << "cli integration: all checks passed\n";
    return 0;
  }
  std::cerr << failures << " cli checks failed\n";
  return 1;
}
