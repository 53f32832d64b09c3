#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "ogmlab/config.hpp"
#include "ogmlab/plot.hpp"
#include "ogmlab/runner.hpp"
#include "ogmlab/trace.hpp"
#include "ogmlab/verify.hpp"

using namespace ogm;
namespace fs = std::filesystem;

namespace {

const fs::path kWorkDir = fs::temp_directory_path() / "ogmlab_test_cli";

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cmd(const std::string& args) {
  fs::create_directories(kWorkDir);
  const fs::path out_file = kWorkDir / "stdout.txt";
  const std::string cmd =
      std::string(OGM_LAB_BIN_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  CmdResult res;
  res.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_file);
  std::stringstream buf;
  buf << in.rdbuf();
  res.out = buf.str();
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool same_value(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

const char* kSampleConfig = R"({
  "seed": 1,
  "runs": [
    {
      "name": "ogm_quadratic",
      "method": "ogm_z",
      "last_step": true,
      "iterations": 100,
      "problem": {"kind": "quadratic", "dim": 6, "kappa": 100, "seed": 1}
    }
  ]
})";

}  // namespace

TEST_CASE("trace CSV round-trips value-identically") {
  RunSpec rs;
  rs.name = "roundtrip";
  rs.method.algorithm = Algorithm::ogm_z;
  rs.method.last_step = true;
  rs.problem.kind = ProblemSpec::Kind::quadratic;
  rs.problem.dim = 5;
  rs.problem.kappa = 50.0;
  rs.problem.seed = 6;
  rs.iterations = 40;
  const RunOutput out = execute_run(rs);
  const std::string csv = trace_to_csv(out.trace);
  REQUIRE(csv.rfind("schema=1\n", 0) == 0);
  REQUIRE(csv.find("\r") == std::string::npos);  // LF only

  const Trace back = parse_trace_csv(csv);
  REQUIRE(back.rows.size() == out.trace.rows.size());
  REQUIRE(back.meta.method == out.trace.meta.method);
  REQUIRE(back.meta.l == out.trace.meta.l);
  REQUIRE(back.meta.f_star == out.trace.meta.f_star);
  for (std::size_t i = 0; i < back.rows.size(); ++i) {
    const TraceRecord &a = out.trace.rows[i], &b = back.rows[i];
    REQUIRE(a.k == b.k);
    REQUIRE(same_value(a.f_x, b.f_x));
    REQUIRE(same_value(a.f_y, b.f_y));
    REQUIRE(same_value(a.f_xtilde, b.f_xtilde));
    REQUIRE(same_value(a.grad_dual_norm, b.grad_dual_norm));
    REQUIRE(same_value(a.bound_primary, b.bound_primary));
    REQUIRE(same_value(a.bound_secondary, b.bound_secondary));
    REQUIRE(same_value(a.lyap, b.lyap));
    REQUIRE(same_value(a.lyap_tilde, b.lyap_tilde));
    REQUIRE(a.slack_primary_ok == b.slack_primary_ok);
    REQUIRE(a.slack_secondary_ok == b.slack_secondary_ok);
  }
  // Re-serialization is byte-identical.
  REQUIRE(trace_to_csv(back) == csv);

  // Malformed inputs are rejected.
  REQUIRE_THROWS_AS(parse_trace_csv(std::string("schema=2\n")), ParseError);
  REQUIRE_THROWS_AS(parse_trace_csv(std::string("schema=1\nmethod=x\nwrong,header\n")),
                    ParseError);
}

TEST_CASE("certificate CSV carries the schema and columns") {
  RunSpec rs;
  rs.name = "cert";
  rs.method.algorithm = Algorithm::ogm_z;
  rs.problem.kind = ProblemSpec::Kind::quadratic;
  rs.problem.dim = 4;
  rs.problem.seed = 2;
  rs.iterations = 20;
  const RunOutput out = execute_run(rs);
  const std::string csv = certificate_to_csv(out.cert);
  REQUIRE(csv.rfind("schema=1\n", 0) == 0);
  REQUIRE(csv.find("k,lyap,dlyap,bound,gap,slack,violated\n") != std::string::npos);
  REQUIRE(out.cert.ok());
}

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(kSampleConfig);
  REQUIRE(cfg.runs.size() == 1);
  REQUIRE(cfg.runs[0].name == "ogm_quadratic");
  REQUIRE(cfg.runs[0].prefix == "ogm_quadratic");
  REQUIRE(cfg.runs[0].iterations == 100);
  REQUIRE(cfg.runs[0].method.algorithm == Algorithm::ogm_z);
  REQUIRE(cfg.runs[0].method.last_step);
  REQUIRE(cfg.runs[0].problem.dim == 6);

  REQUIRE_THROWS_AS(parse_config("not json"), ConfigError);
  REQUIRE_THROWS_AS(parse_config("{}"), ConfigError);  // no runs
  REQUIRE_THROWS_AS(
      parse_config(R"({"runs":[{"name":"a","method":"nope","problem":{"kind":"quadratic"}}]})"),
      ConfigError);
  REQUIRE_THROWS_AS(
      parse_config(
          R"({"runs":[{"name":"a","method":"ogm","iterations":0,"problem":{"kind":"quadratic"}}]})"),
      ConfigError);
  REQUIRE_THROWS_AS(
      parse_config(
          R"({"runs":[{"name":"a","method":"ogm","problem":{"kind":"quadratic"}},
                      {"name":"a","method":"agm","problem":{"kind":"quadratic"}}]})"),
      ConfigError);
  REQUIRE_THROWS_AS(
      parse_config(R"({"runs":[{"name":"a","method":"ogm","problem":{"kind":"logistic"}}]})"),
      ConfigError);  // logistic without data path
}

TEST_CASE("SVG plot emitter") {
  RunSpec rs;
  rs.name = "plot";
  rs.method.algorithm = Algorithm::ogm_z;
  rs.problem.kind = ProblemSpec::Kind::quadratic;
  rs.problem.dim = 4;
  rs.problem.seed = 3;
  rs.iterations = 30;
  const RunOutput out = execute_run(rs);
  const std::string svg = render_plot_svg(out.trace);
  REQUIRE(svg.rfind("<svg", 0) == 0);
  REQUIRE(svg.find("</svg>") != std::string::npos);
  REQUIRE(svg.find("polyline") != std::string::npos);
  REQUIRE(svg.find("http://") == svg.find("http://www.w3.org/2000/svg"));  // self-contained

  // Degenerate single-row trace still renders.
  Trace single = out.trace;
  single.rows.resize(1);
  const std::string tiny = render_plot_svg(single);
  REQUIRE(tiny.rfind("<svg", 0) == 0);

  Trace empty = out.trace;
  empty.rows.clear();
  REQUIRE_THROWS_AS(render_plot_svg(empty), std::invalid_argument);
}

TEST_CASE("cli: run command writes traces and is deterministic") {
  fs::create_directories(kWorkDir);
  const fs::path cfg_path = kWorkDir / "sample.json";
  std::ofstream(cfg_path) << kSampleConfig;

  const fs::path out1 = kWorkDir / "out1";
  const fs::path out2 = kWorkDir / "out2";
  const CmdResult r1 =
      run_cmd("run --config " + cfg_path.string() + " --out " + out1.string() + " --plots");
  INFO(r1.out);
  REQUIRE(r1.code == 0);
  const CmdResult r2 =
      run_cmd("run --config " + cfg_path.string() + " --out " + out2.string() + " --plots");
  REQUIRE(r2.code == 0);

  const std::string trace1 = slurp(out1 / "ogm_quadratic.trace.csv");
  REQUIRE(trace1 == slurp(out2 / "ogm_quadratic.trace.csv"));
  REQUIRE(slurp(out1 / "ogm_quadratic.cert.csv") == slurp(out2 / "ogm_quadratic.cert.csv"));
  REQUIRE(slurp(out1 / "ogm_quadratic.svg") == slurp(out2 / "ogm_quadratic.svg"));

  // 101 data rows: header lines plus k = 0..100.
  const Trace parsed = parse_trace_csv(trace1);
  REQUIRE(parsed.rows.size() == 101);
  REQUIRE(parsed.rows.back().k == 100);
}

TEST_CASE("cli: exit code contract") {
  fs::create_directories(kWorkDir);

  SECTION("clean run exits 0") {
    const fs::path cfg_path = kWorkDir / "clean.json";
    std::ofstream(cfg_path) << kSampleConfig;
    REQUIRE(run_cmd("run --config " + cfg_path.string() + " --out " +
                    (kWorkDir / "clean_out").string())
                .code == 0);
  }
  SECTION("unreadable config exits 1") {
    REQUIRE(run_cmd("run --config " + (kWorkDir / "nope.json").string()).code == 1);
  }
  SECTION("malformed config exits 1") {
    const fs::path cfg_path = kWorkDir / "broken.json";
    std::ofstream(cfg_path) << "{broken";
    REQUIRE(run_cmd("run --config " + cfg_path.string()).code == 1);
  }
  SECTION("understated smoothness constant exits 2 with the iteration index") {
    const fs::path cfg_path = kWorkDir / "lying.json";
    std::ofstream(cfg_path) << R"({
      "runs": [{
        "name": "diverges", "method": "ogm_z", "iterations": 400,
        "problem": {"kind": "quadratic", "dim": 2, "kappa": 10,
                     "seed": 4, "smoothness_override": 0.1}
      }]
    })";
    const CmdResult r =
        run_cmd("run --config " + cfg_path.string() + " --out " + (kWorkDir / "div").string());
    REQUIRE(r.code == 2);
    REQUIRE(r.out.find("divergence at k=") != std::string::npos);
  }
  SECTION("bad subcommand or missing flag exits 1") {
    REQUIRE(run_cmd("frobnicate").code == 1);
    REQUIRE(run_cmd("run").code == 1);
  }
}

TEST_CASE("cli: schedule tables") {
  const CmdResult theta = run_cmd("schedule --kind theta --count 3");
  REQUIRE(theta.code == 0);
  REQUIRE(theta.out.rfind("schema=1\nk,theta\n0,1\n1,1.6180339887498", 0) == 0);
  REQUIRE(theta.out.find("\n2,2.19352708") != std::string::npos);

  const CmdResult phi = run_cmd("schedule --kind phi --count 2");
  REQUIRE(phi.code == 0);
  REQUIRE(phi.out.rfind("schema=1\nk,phi\n0,1\n1,2\n", 0) == 0);

  const CmdResult zeta = run_cmd("schedule --kind zeta --count 10000");
  REQUIRE(zeta.code == 0);
  REQUIRE(zeta.out.find("K,zeta,residual\n10000,0.6") != std::string::npos);

  REQUIRE(run_cmd("schedule --kind nope --count 3").code == 1);
  REQUIRE(run_cmd("schedule --kind zeta --count 10").code == 1);
}

TEST_CASE("verification suite detects a weakened bound") {
  // Shrinking the certified bound must flip criterion 1: proves the checks
  // compare real quantities rather than vacuously passing.
  VerifyOptions opts;
  opts.quick = true;
  opts.mutation_scale = 1e-3;
  const VerifyReport report = run_verification(opts);
  REQUIRE_FALSE(report.all_pass());
  REQUIRE_FALSE(report.results[0].pass);
  for (std::size_t i = 1; i < report.results.size(); ++i) REQUIRE(report.results[i].pass);
}

TEST_CASE("cli: quick verification is deterministic and passes") {
  const CmdResult a = run_cmd("verify --quick");
  INFO(a.out);
  REQUIRE(a.code == 0);
  const CmdResult b = run_cmd("verify --quick");
  REQUIRE(b.code == 0);
  REQUIRE(a.out == b.out);
  for (int i = 1; i <= 11; ++i)
    REQUIRE(a.out.find("criterion " + std::to_string(i) + " ") != std::string::npos);
  REQUIRE(a.out.find("FAIL") == std::string::npos);
}
