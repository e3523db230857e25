#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "dparity/error.hpp"
#include "dparity/evaluator.hpp"
#include "dparity/report.hpp"
#include "dparity/spec_io.hpp"
#include "oracles.hpp"

namespace {

using namespace dparity;

enum ExitCode { Pass = 0, Failure = 1, InvalidInput = 2, Inconclusive = 3 };

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::int64_t M = 2000;
  std::int64_t M_outer = 2000;
  double tol = 1e-6;
  std::string output = "json";
  std::string threads = "1";
  std::string rho = "standard";
  std::size_t samples = 3;
  bool assert_convergence = false;
};

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  return OutputFormat::Json;
}

unsigned parse_threads(const std::string& value) {
  if (value == "auto") return std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::stoul(value));
}

RhoLadder parse_rho(const std::string& name) {
  if (name == "reversed") return RhoLadder::Reversed;
  if (name == "negated") return RhoLadder::Negated;
  return RhoLadder::Standard;
}

// The report goes to stdout; DPARITY_OUTPUT_DIR additionally keeps a copy.
void emit(const RunConfig& config, const std::string& report) {
  std::cout << report;
  const char* dir = std::getenv("DPARITY_OUTPUT_DIR");
  if (!dir || !*dir) return;
  std::filesystem::create_directories(dir);
  std::string stem = config.spec_path.empty() ? "selftest" : std::filesystem::path(config.spec_path).stem().string();
  const std::string ext = config.output == "text" ? "txt" : config.output;
  std::ofstream(std::filesystem::path(dir) / (stem + "." + config.command + "." + ext)) << report;
}

int exit_code(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return Pass;
    case Verdict::Inconclusive: return Inconclusive;
    case Verdict::Fail: break;
  }
  return Failure;
}

int run(const RunConfig& config) {
  if (config.command == "selftest") {
    bool all = true;
    std::string text;
    for (const auto& result : oracles::run_selftest()) {
      text += std::string(result.pass ? "PASS " : "FAIL ") + result.name + ": " + result.detail + "\n";
      all = all && result.pass;
    }
    emit(config, text);
    return all ? Pass : Failure;
  }

  const SeriesSpec spec = load_spec(config.spec_path);
  const OutputFormat format = parse_format(config.output);
  const unsigned threads = parse_threads(config.threads);
  EvalOptions options;
  options.threads = threads;
  options.rho = parse_rho(config.rho);

  if (config.command == "validate") {
    emit(config, render_validate(spec, convergence_check(spec, config.assert_convergence), format));
    return Pass;
  }
  if (config.command == "eval") {
    emit(config, render_eval(spec, zeta_direct(spec, config.M, options), threads, format));
    return Pass;
  }
  if (config.command == "reduce") {
    emit(config, render_reduction(reduce(spec, config.M_outer, config.samples, options), threads, format));
    return Pass;
  }
  const ConvergenceVerdict convergence = convergence_check(spec, config.assert_convergence);
  const VerificationReport report = verify_parity(spec, config.M, config.M_outer, config.tol, convergence, options);
  emit(config, render_verification(report, threads, format));
  return exit_code(report.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple Dirichlet series: evaluation and parity verification"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    auto* opt = sub->add_option("--spec", config.spec_path, "Spec file (JSON)");
    if (needs_spec) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--output", config.output, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--threads", config.threads, "Worker threads or 'auto'")
        ->check(CLI::PositiveNumber | CLI::IsMember({"auto"}));
    sub->add_option("--rho", config.rho, "Ladder used to pick rho")
        ->check(CLI::IsMember({"standard", "reversed", "negated"}));
  };
  auto add_box = [&](CLI::App* sub) {
    sub->add_option("--M", config.M, "Box size of the direct sum")->check(CLI::PositiveNumber);
  };
  auto add_outer = [&](CLI::App* sub) {
    sub->add_option("--M-outer", config.M_outer, "Box size of the outer sums")->check(CLI::PositiveNumber);
  };
  auto add_assert = [&](CLI::App* sub) {
    sub->add_flag("--assert-convergence", config.assert_convergence, "Accept convergence the checker cannot prove");
  };

  auto* validate = app.add_subcommand("validate", "Check a spec and its convergence");
  add_common(validate, true);
  add_assert(validate);
  auto* eval = app.add_subcommand("eval", "Direct truncated sum with tail extrapolation");
  add_common(eval, true);
  add_box(eval);
  auto* verify = app.add_subcommand("verify", "Verify the parity identity");
  add_common(verify, true);
  add_box(verify);
  add_outer(verify);
  add_assert(verify);
  verify->add_option("--tol", config.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  auto* reduce = app.add_subcommand("reduce", "Per-subset terms and D coefficients");
  add_common(reduce, true);
  add_outer(reduce);
  reduce->add_option("--samples", config.samples, "D samples per subset")->check(CLI::PositiveNumber);
  auto* selftest = app.add_subcommand("selftest", "Run the closed-form oracle suite");
  add_common(selftest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Pass : InvalidInput;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    return run(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InvalidInput;
  }
}
