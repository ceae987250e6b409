#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnnbound/bracket.hpp"
#include "dnnbound/instance_io.hpp"
#include "dnnbound/oracle.hpp"
#include "dnnbound/result_io.hpp"
#include "dnnbound/synthetic.hpp"

namespace {

using namespace dnnbound;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitPartial = 4;
constexpr int kExitNumerical = 5;

struct SolveOptions {
  std::string method = "secant";
  double lambda = 10000.0;
  std::string rho = "auto";
  double delta = 1e-4;
  double eps = 1e-12;
  double tol = 1e-12;
  int max_apg_iter = 20000;
  double alpha = 0.9;
  std::optional<double> y0;
  std::optional<double> y1;
  std::optional<double> time_limit;
  bool trace = false;
  std::string trace_out;
  std::string out;
};

void add_solver_flags(CLI::App* cmd, SolveOptions* opt) {
  cmd->add_option("--method", opt->method, "bracketing method")
     ->check(CLI::IsMember({"bp", "newton", "secant"}))
     ->capture_default_str();
  cmd->add_option("--lambda", opt->lambda, "penalty multiplier")
     ->capture_default_str();
  cmd->add_option("--rho", opt->rho, "trace bound ('auto' or a number)")
     ->capture_default_str();
  cmd->add_option("--delta", opt->delta, "target bracket width")
     ->capture_default_str();
  cmd->add_option("--eps", opt->eps, "zero threshold on ||X||")
     ->capture_default_str();
  cmd->add_option("--tol", opt->tol, "KKT residual tolerance")
     ->capture_default_str();
  cmd->add_option("--max-apg-iter", opt->max_apg_iter,
                  "inner iteration budget per probe")
     ->capture_default_str();
  cmd->add_option("--alpha", opt->alpha, "secant damping factor in (0,1]")
     ->capture_default_str();
  cmd->add_option("--y0", opt->y0, "starting point (default: feasible objective)");
  cmd->add_option("--y1", opt->y1, "second secant point");
  cmd->add_option("--time-limit", opt->time_limit, "wall-clock limit in seconds");
  cmd->add_flag("--trace", opt->trace, "emit one trace line per outer iteration");
  cmd->add_option("--trace-out", opt->trace_out,
                  "sidecar file for trace lines (default stderr)");
  cmd->add_option("--out", opt->out, "result file (default stdout)");
}

Method parse_method(const std::string& name) {
  if (name == "bp") return Method::Bp;
  if (name == "newton") return Method::Newton;
  return Method::Secant;
}

BracketParams make_params(const SolveOptions& opt) {
  BracketParams p;
  p.delta = opt.delta;
  p.eps = opt.eps;
  p.alpha = opt.alpha;
  p.y0 = opt.y0;
  p.y1 = opt.y1;
  p.max_outer = 60;
  p.apg.tol = opt.tol;
  p.apg.eps = opt.eps;
  p.apg.max_iter = opt.max_apg_iter;
  p.time_limit_sec = opt.time_limit;
  return p;
}

std::optional<double> parse_rho(const std::string& rho) {
  if (rho == "auto") return std::nullopt;
  return std::stod(rho);
}

BracketResult dispatch(Method method, const LagrangianCop& cop,
                       const BracketParams& params) {
  switch (method) {
    case Method::Bp: {
      double ub0;
      if (params.y0) {
        ub0 = *params.y0;
      } else if (cop.source.feasible_objective) {
        ub0 = *cop.source.feasible_objective;
      } else {
        throw std::invalid_argument("bp: no starting upper point; pass --y0");
      }
      return bp_solve(cop, params,
                      -std::numeric_limits<double>::infinity(), ub0);
    }
    case Method::Newton:
      return newton_solve(cop, params);
    case Method::Secant:
      return secant_solve(cop, params);
  }
  throw std::logic_error("unknown method");
}

void emit_trace(const BracketResult& result, const SolveOptions& opt) {
  if (!opt.trace && opt.trace_out.empty()) return;
  std::ofstream file;
  std::ostream* sink = &std::cerr;
  if (!opt.trace_out.empty()) {
    file.open(opt.trace_out);
    if (!file) throw std::runtime_error("cannot open " + opt.trace_out);
    sink = &file;
  }
  for (const auto& rec : result.trace) {
    *sink << write_trace_line(rec) << "\n";
  }
}

int emit_result(const ResultRecord& rec, const std::string& out_path) {
  const std::string line = write_result(rec);
  if (out_path.empty()) {
    std::cout << line << "\n";
  } else {
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error("cannot open " + out_path);
    file << line << "\n";
  }
  return kExitOk;
}

int finish_solve(const std::string& instance, Method method,
                 const LagrangianCop& cop, const BracketParams& params,
                 const BracketResult& result, const SolveOptions& opt) {
  emit_trace(result, opt);
  const ResultRecord rec =
      make_result_record(instance, method, cop, params, result);
  emit_result(rec, opt.out);
  return result.status == SolveStatus::Converged ? kExitOk : kExitPartial;
}

struct BqpArgs {
  std::string file;
  int random_r = 0;
  std::uint64_t seed = 0;
  bool no_negate = false;
  SolveOptions opt;
};

int run_solve_bqp(const BqpArgs& args) {
  Eigen::MatrixXd f;
  std::string name;
  if (args.random_r > 0) {
    f = random_bqop_matrix(args.random_r, args.seed);
    name = "random-bqp-r" + std::to_string(args.random_r) + "-seed" +
           std::to_string(args.seed);
  } else {
    f = load_biqmac_file(args.file).F;
    name = std::filesystem::path(args.file).filename().string();
  }
  const QopModel q = build_bqop(f, !args.no_negate);
  const DnnCop dnn = build_dnn(q);
  const LagrangianCop cop =
      lagrangian(dnn, args.opt.lambda, parse_rho(args.opt.rho));
  const BracketParams params = make_params(args.opt);
  const Method method = parse_method(args.opt.method);
  const BracketResult result = dispatch(method, cop, params);
  return finish_solve(name, method, cop, params, result, args.opt);
}

struct QapArgs {
  std::string file;
  int random_r = 0;
  std::uint64_t seed = 0;
  bool tight_rho = false;
  SolveOptions opt;
};

int run_solve_qap(const QapArgs& args) {
  Eigen::MatrixXd a, b;
  std::string name;
  if (args.random_r > 0) {
    std::tie(a, b) = random_qap_pair(args.random_r, args.seed);
    name = "random-qap-r" + std::to_string(args.random_r) + "-seed" +
           std::to_string(args.seed);
  } else {
    const QaplibInstance inst = load_qaplib_file(args.file);
    a = inst.A;
    b = inst.B;
    name = std::filesystem::path(args.file).filename().string();
  }
  const QopModel q = build_qap(a, b);
  const DnnCop dnn = build_dnn(q);
  std::optional<double> rho = parse_rho(args.opt.rho);
  if (args.tight_rho) rho = qap_tight_rho(static_cast<int>(a.rows()));
  const LagrangianCop cop = lagrangian(dnn, args.opt.lambda, rho);
  const BracketParams params = make_params(args.opt);
  const Method method = parse_method(args.opt.method);
  const BracketResult result = dispatch(method, cop, params);
  return finish_solve(name, method, cop, params, result, args.opt);
}

struct OracleArgs {
  std::string bqp_file;
  std::string qap_file;
  int random_bqp = 0;
  int random_qap = 0;
  std::uint64_t seed = 0;
  bool no_negate = false;
  std::string out;
};

int run_oracle(const OracleArgs& args) {
  nlohmann::ordered_json j;
  if (!args.bqp_file.empty() || args.random_bqp > 0) {
    Eigen::MatrixXd f;
    std::string name;
    if (args.random_bqp > 0) {
      f = random_bqop_matrix(args.random_bqp, args.seed);
      name = "random-bqp-r" + std::to_string(args.random_bqp) + "-seed" +
             std::to_string(args.seed);
    } else {
      f = load_biqmac_file(args.bqp_file).F;
      name = std::filesystem::path(args.bqp_file).filename().string();
    }
    if (!args.no_negate) f = -f;  // match the solver's minimization convention
    const BqopOptimum opt = brute_bqop(f);
    j["schema"] = "dnnbound.oracle.v1";
    j["instance"] = name;
    j["type"] = "bqp";
    j["optimum"] = opt.value;
    j["argmin"] = opt.argmin;
  } else if (!args.qap_file.empty() || args.random_qap > 0) {
    Eigen::MatrixXd a, b;
    std::string name;
    if (args.random_qap > 0) {
      std::tie(a, b) = random_qap_pair(args.random_qap, args.seed);
      name = "random-qap-r" + std::to_string(args.random_qap) + "-seed" +
             std::to_string(args.seed);
    } else {
      const QaplibInstance inst = load_qaplib_file(args.qap_file);
      a = inst.A;
      b = inst.B;
      name = std::filesystem::path(args.qap_file).filename().string();
    }
    const QapOptimum opt = brute_qap(a, b);
    j["schema"] = "dnnbound.oracle.v1";
    j["instance"] = name;
    j["type"] = "qap";
    j["optimum"] = opt.value;
    j["perm"] = opt.perm;
  } else {
    throw std::invalid_argument(
        "oracle: pass one of --bqp/--qap/--random-bqp/--random-qap");
  }
  if (args.out.empty()) {
    std::cout << j.dump() << "\n";
  } else {
    std::ofstream file(args.out);
    if (!file) throw std::runtime_error("cannot open " + args.out);
    file << j.dump() << "\n";
  }
  return kExitOk;
}

struct BenchArgs {
  std::string manifest;
  int jobs = 1;
  SolveOptions opt;
};

struct BenchEntry {
  std::string type;
  std::string path;
};

int run_bench(const BenchArgs& args) {
  std::vector<BenchEntry> entries;
  {
    std::ifstream in(args.manifest);
    if (!in) throw std::runtime_error("cannot open manifest " + args.manifest);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("manifest: " + std::string(e.what()), line_no);
      }
      BenchEntry entry;
      entry.type = j.at("type").get<std::string>();
      entry.path = j.at("path").get<std::string>();
      if (entry.type != "bqp" && entry.type != "qap") {
        throw ParseError("manifest: unknown type " + entry.type, line_no);
      }
      entries.push_back(std::move(entry));
    }
  }

  std::vector<std::string> lines(entries.size());
  std::vector<int> codes(entries.size(), kExitOk);
  std::atomic<std::size_t> next{0};
  const int jobs = std::max(1, args.jobs);

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      const BenchEntry& e = entries[i];
      try {
        const Method method = parse_method(args.opt.method);
        LagrangianCop cop = [&] {
          if (e.type == "bqp") {
            const QopModel q = build_bqop(load_biqmac_file(e.path).F, true);
            return lagrangian(build_dnn(q), args.opt.lambda,
                              parse_rho(args.opt.rho));
          }
          const QaplibInstance inst = load_qaplib_file(e.path);
          const QopModel q = build_qap(inst.A, inst.B);
          return lagrangian(build_dnn(q), args.opt.lambda,
                            parse_rho(args.opt.rho));
        }();
        const BracketParams params = make_params(args.opt);
        const BracketResult result = dispatch(method, cop, params);
        const ResultRecord rec = make_result_record(
            std::filesystem::path(e.path).filename().string(), method, cop,
            params, result);
        lines[i] = write_result(rec);
        if (result.status != SolveStatus::Converged) codes[i] = kExitPartial;
      } catch (const std::exception& ex) {
        nlohmann::ordered_json j;
        j["schema"] = "dnnbound.error.v1";
        j["instance"] = e.path;
        j["error"] = ex.what();
        lines[i] = j.dump();
        codes[i] = kExitNumerical;
      }
    }
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ofstream file;
  std::ostream* sink = &std::cout;
  if (!args.opt.out.empty()) {
    file.open(args.opt.out);
    if (!file) throw std::runtime_error("cannot open " + args.opt.out);
    sink = &file;
  }
  for (const auto& line : lines) *sink << line << "\n";

  int code = kExitOk;
  for (int c : codes) code = std::max(code, c);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dnnbound: certified lower bounds for binary quadratic and assignment "
      "problems via a penalized conic relaxation and bracketing methods"};
  app.require_subcommand(1);

  BqpArgs bqp;
  CLI::App* solve_bqp = app.add_subcommand(
      "solve-bqp", "bound a binary quadratic instance (BiqMac sparse format)");
  solve_bqp->add_option("file", bqp.file, "instance file");
  solve_bqp->add_option("--random-r", bqp.random_r,
                        "generate a random instance of this size instead");
  solve_bqp->add_option("--seed", bqp.seed, "seed for --random-r");
  solve_bqp->add_flag("--no-negate", bqp.no_negate,
                      "treat the instance as minimization (BiqMac instances "
                      "are maximization by convention)");
  add_solver_flags(solve_bqp, &bqp.opt);

  QapArgs qap;
  CLI::App* solve_qap = app.add_subcommand(
      "solve-qap", "bound a quadratic assignment instance (QAPLIB format)");
  solve_qap->add_option("file", qap.file, "instance file");
  solve_qap->add_option("--random-r", qap.random_r,
                        "generate a random instance of this size instead");
  solve_qap->add_option("--seed", qap.seed, "seed for --random-r");
  solve_qap->add_flag("--tight-rho", qap.tight_rho,
                      "use the tightened trace bound 1 + r");
  add_solver_flags(solve_qap, &qap.opt);

  OracleArgs oracle;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "exact brute-force optimum of a small instance");
  oracle_cmd->add_option("--bqp", oracle.bqp_file, "BiqMac instance file");
  oracle_cmd->add_option("--qap", oracle.qap_file, "QAPLIB instance file");
  oracle_cmd->add_option("--random-bqp", oracle.random_bqp,
                         "random binary instance of this size");
  oracle_cmd->add_option("--random-qap", oracle.random_qap,
                         "random assignment instance of this size");
  oracle_cmd->add_option("--seed", oracle.seed, "seed for random instances");
  oracle_cmd->add_flag("--no-negate", oracle.no_negate,
                       "report the minimization optimum without negation");
  oracle_cmd->add_option("--out", oracle.out, "output file (default stdout)");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "run a manifest of instances, one result line each");
  bench_cmd->add_option("manifest", bench.manifest,
                        "JSONL manifest: {\"type\":\"bqp\"|\"qap\",\"path\":...}")
      ->required();
  bench_cmd->add_option("--jobs", bench.jobs, "parallel workers")
      ->capture_default_str();
  add_solver_flags(bench_cmd, &bench.opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_bqp->parsed()) {
      if (bqp.file.empty() && bqp.random_r <= 0) {
        std::cerr << "solve-bqp: pass an instance file or --random-r\n";
        return kExitUsage;
      }
      return run_solve_bqp(bqp);
    }
    if (solve_qap->parsed()) {
      if (qap.file.empty() && qap.random_r <= 0) {
        std::cerr << "solve-qap: pass an instance file or --random-r\n";
        return kExitUsage;
      }
      return run_solve_qap(qap);
    }
    if (oracle_cmd->parsed()) return run_oracle(oracle);
    if (bench_cmd->parsed()) return run_bench(bench);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
