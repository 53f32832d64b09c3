// ogm-lab: run configured experiments, print schedule tables, or execute the
// verification suite. Exit codes: 0 clean, 1 configuration error,
// 2 certificate violation or divergence.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ogmlab/config.hpp"
#include "ogmlab/plot.hpp"
#include "ogmlab/runner.hpp"
#include "ogmlab/schedules.hpp"
#include "ogmlab/trace.hpp"
#include "ogmlab/verify.hpp"

namespace {

unsigned thread_budget(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("OGM_LAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // ignore malformed values; fall back to the core count
    }
  }
  if (n > jobs) n = static_cast<unsigned>(jobs);
  return n == 0 ? 1 : n;
}

struct RunOutcome {
  std::optional<ogm::RunOutput> output;
  std::string error;
};

int cmd_run(const std::string& config_path, const std::string& out_dir, bool plots_flag) {
  ogm::ExperimentConfig cfg;
  try {
    cfg = ogm::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  const bool plots = plots_flag || cfg.plots;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "config error: cannot create output directory '" << out_dir << "'\n";
    return 1;
  }

  // Independent runs execute in parallel; results are merged in run order, so
  // scheduling never affects any emitted byte.
  std::vector<RunOutcome> outcomes(cfg.runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.runs.size()) return;
      try {
        outcomes[i].output = ogm::execute_run(cfg.runs[i], cfg.tol_scale);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  const unsigned threads = thread_budget(cfg.runs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  bool violated = false;
  for (std::size_t i = 0; i < cfg.runs.size(); ++i) {
    const ogm::RunSpec& rs = cfg.runs[i];
    if (!outcomes[i].output) {
      std::cerr << "config error in run '" << rs.name << "': " << outcomes[i].error << "\n";
      return 1;
    }
    const ogm::RunOutput& out = *outcomes[i].output;
    const std::string stem = out_dir + "/" + rs.prefix;
    ogm::write_file(stem + ".trace.csv", ogm::trace_to_csv(out.trace));
    ogm::write_file(stem + ".cert.csv", ogm::certificate_to_csv(out.cert));
    if (plots) ogm::emit_plot(out.trace, stem + ".svg");
    if (out.diverged_at) {
      std::cerr << "run '" << rs.name << "': divergence at k=" << *out.diverged_at << "\n";
      violated = true;
    }
    if (out.cert.first_violation) {
      std::cerr << "run '" << rs.name << "': certificate violation at k="
                << *out.cert.first_violation << "\n";
      violated = true;
    }
    for (const ogm::TraceRecord& r : out.trace.rows) {
      if (!r.slack_primary_ok || !r.slack_secondary_ok) {
        std::cerr << "run '" << rs.name << "': bound violation at k=" << r.k << "\n";
        violated = true;
        break;
      }
    }
  }
  return violated ? 2 : 0;
}

int cmd_schedule(const std::string& kind, long count) {
  using ogm::detail::fmt17;
  if (count < 1) {
    std::cerr << "config error: --count must be >= 1\n";
    return 1;
  }
  std::string out = "schema=1\n";
  if (kind == "theta") {
    const ogm::ThetaSchedule theta = ogm::ThetaSchedule::exact();
    out += "k,theta\n";
    for (long k = 0; k < count; ++k) out += std::to_string(k) + "," + fmt17(theta(k)) + "\n";
  } else if (kind == "phi") {
    const ogm::PhiSchedule phi = ogm::PhiSchedule::exact(ogm::ThetaSchedule::exact());
    out += "k,phi\n";
    for (long k = 0; k < count; ++k) out += std::to_string(k) + "," + fmt17(phi(k)) + "\n";
  } else if (kind == "zeta") {
    ogm::ZetaEstimate est;
    try {
      est = ogm::estimate_zeta(count);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 1;
    }
    out += "K,zeta,residual\n";
    out += std::to_string(count) + "," + fmt17(est.zeta) + "," + fmt17(est.residual) + "\n";
  } else {
    std::cerr << "config error: unknown schedule kind '" << kind << "'\n";
    return 1;
  }
  std::cout << out;
  return 0;
}

int cmd_verify(bool quick) {
  ogm::VerifyOptions options;
  options.quick = quick;
  const ogm::VerifyReport report = ogm::run_verification(options);
  std::cout << ogm::render_report(report);
  return report.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimized gradient method lab"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  bool plots = false;
  CLI::App* run_cmd = app.add_subcommand("run", "execute configured experiments");
  run_cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_flag("--plots", plots, "emit SVG convergence plots");

  std::string kind;
  long count = 10;
  CLI::App* sched_cmd = app.add_subcommand("schedule", "print schedule tables as CSV");
  sched_cmd->add_option("--kind", kind, "theta, phi, or zeta")->required();
  sched_cmd->add_option("--count", count, "number of entries (or the zeta cap)");

  bool quick = false;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  verify_cmd->add_flag("--quick", quick, "reduced instance counts and zeta cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // bad invocation is a configuration error
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, out_dir, plots);
    if (sched_cmd->parsed()) return cmd_schedule(kind, count);
    return cmd_verify(quick);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
