// envlab: envelopes, ergodic projections and projection constants on l_p^n(mu).

#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include <envlab/version.hpp>

namespace cli = envlab::cli;

namespace {

void add_common(CLI::App* sub, cli::CommonOptions& opt, bool with_space) {
  if (with_space) {
    sub->add_option("--space", opt.space_path, "Space JSON file");
    sub->add_option("--subspace", opt.subspace_path, "Subspace JSON file");
    sub->add_option("--p", opt.p, "Override the exponent of the space");
  }
  sub->add_option("--tol", opt.tol, "Tolerance");
  sub->add_option("--seed", opt.seed, "Seed (default: $ENVLAB_SEED or 42)");
  sub->add_option("--out", opt.out, "Output path");
}

// Report next to the primary output: foo.csv -> foo.report.json.
std::filesystem::path report_path(const std::string& out, bool out_is_report) {
  if (out_is_report) return out;
  std::filesystem::path p(out);
  return p.replace_extension(".report.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Envelopes, mean ergodic projections and projection constants on l_p^n(mu)"};
  app.set_version_flag("--version", envlab::kVersion);
  app.require_subcommand(1);

  cli::CommonOptions opt;
  opt.seed = cli::default_seed();
  std::string grid = "1.1:6:0.1";
  std::string op_path;
  std::string method = "auto";
  long long max_iter = 100'000;
  int threads = 0;

  auto* env = app.add_subcommand("env", "All envelopes of a subspace with equality and chain flags");
  add_common(env, opt, true);
  auto* verify = app.add_subcommand("verify", "Run a seeded property suite");
  add_common(verify, opt, false);
  verify->add_option("--suite", opt.suite, "Suite name")->required();
  verify->add_option("--trials", opt.trials, "Number of trials (default: suite default)");
  verify->add_option("--threads", threads, "Worker threads (0: hardware)");
  auto* c2 = app.add_subcommand("c2", "Tabulate c_2(L_p) over a grid as CSV");
  add_common(c2, opt, false);
  c2->add_option("--grid", grid, "start:stop:step (inclusive) or a comma list");
  auto* proj = app.add_subcommand("proj", "Minimal projection norm onto a subspace");
  add_common(proj, opt, true);
  auto* push = app.add_subcommand("pushout", "Glue two copies along a subspace (screened l_1^3 example by default)");
  add_common(push, opt, true);
  auto* ergodic = app.add_subcommand("ergodic", "Mean ergodic projection of a contraction");
  add_common(ergodic, opt, true);
  ergodic->add_option("--operator", op_path, "Matrix, {\"blocks\"} or {\"elements\",\"weights\"} JSON")->required();
  ergodic->add_option("--method", method, "auto | cesaro | spectral");
  ergodic->add_option("--max-iter", max_iter, "Bound on the number of averaged powers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    cli::RunReport report;
    bool out_is_report = true;
    if (env->parsed()) {
      report = cli::cmd_env(opt);
    } else if (verify->parsed()) {
      report = cli::cmd_verify(opt, threads);
    } else if (c2->parsed()) {
      report = cli::cmd_c2(opt, grid);
      out_is_report = false;
    } else if (proj->parsed()) {
      report = cli::cmd_proj(opt);
    } else if (push->parsed()) {
      report = cli::cmd_pushout(opt);
    } else {
      report = cli::cmd_ergodic(opt, op_path, method, max_iter);
    }
    report.wall_time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    const envlab::Json j = report.to_json();
    if (opt.out.empty()) {
      std::cout << j.dump(2) << '\n';
    } else {
      const auto path = report_path(opt.out, out_is_report);
      envlab::save_json(path, j);
      std::cout << report.command << ": wrote " << path.string() << '\n';
    }
    if (report.exit_code == cli::kVerificationFailure) {
      std::cerr << "verification failed\n";
    }
    return report.exit_code;
  } catch (const envlab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cli::kUsage;
  } catch (const envlab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return cli::kUsage;
  } catch (const envlab::ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return cli::kNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kVerificationFailure;
  }
}
