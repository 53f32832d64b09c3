#ifndef OGMLAB_CONFIG_HPP
#define OGMLAB_CONFIG_HPP

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ogmlab/methods.hpp"
#include "ogmlab/problems.hpp"

namespace ogm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunSpec {
  std::string name;
  std::string prefix;  // output file stem; defaults to name
  MethodConfig method;
  ProblemSpec problem;
  long iterations = 100;
};

struct ExperimentConfig {
  std::vector<RunSpec> runs;
  std::uint64_t seed = 0;  // default problem seed
  bool plots = false;
  double tol_scale = 1.0;  // multiplies every certificate tolerance
};

namespace detail {

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "agm") return Algorithm::agm;
  if (s == "agm_z") return Algorithm::agm_z;
  if (s == "ogm") return Algorithm::ogm;
  if (s == "ogm_z") return Algorithm::ogm_z;
  if (s == "simple_ogm") return Algorithm::simple_ogm;
  if (s == "sc_agm") return Algorithm::sc_agm;
  if (s == "sc_ogm") return Algorithm::sc_ogm;
  if (s == "lc") return Algorithm::lc;
  if (s == "lc_sc_ogm") return Algorithm::lc_sc_ogm;
  if (s == "unified") return Algorithm::unified;
  throw ConfigError("unknown method '" + s + "'");
}

inline ProblemSpec::Kind parse_problem_kind(const std::string& s) {
  if (s == "quadratic") return ProblemSpec::Kind::quadratic;
  if (s == "log_sum_exp") return ProblemSpec::Kind::log_sum_exp;
  if (s == "logistic") return ProblemSpec::Kind::logistic;
  throw ConfigError("unknown problem kind '" + s + "'");
}

inline ThetaSchedule parse_theta(const std::string& s) {
  if (s == "exact") return ThetaSchedule::exact();
  if (s == "simple") return ThetaSchedule::simple();
  throw ConfigError("unknown theta variant '" + s + "'");
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  try {
    ExperimentConfig cfg;
    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.plots = doc.value("plots", false);
    cfg.tol_scale = doc.value("tolerance_scale", 1.0);
    if (!(cfg.tol_scale > 0.0)) throw ConfigError("tolerance_scale must be positive");
    if (!doc.contains("runs") || !doc["runs"].is_array() || doc["runs"].empty())
      throw ConfigError("config needs a non-empty 'runs' array");

    std::set<std::string> names;
    for (const auto& jr : doc["runs"]) {
      RunSpec run;
      if (!jr.contains("name")) throw ConfigError("every run needs a 'name'");
      run.name = jr["name"].get<std::string>();
      if (run.name.empty()) throw ConfigError("run names must be non-empty");
      if (!names.insert(run.name).second)
        throw ConfigError("duplicate run name '" + run.name + "'");
      run.prefix = jr.value("prefix", run.name);

      if (!jr.contains("method")) throw ConfigError("run '" + run.name + "' needs a 'method'");
      run.method.algorithm = detail::parse_algorithm(jr["method"].get<std::string>());
      run.method.theta = detail::parse_theta(jr.value("theta", std::string("exact")));
      run.method.t = jr.value("t", 1.0);
      run.method.last_step = jr.value("last_step", false);
      if (jr.contains("phi")) {
        const std::string p = jr["phi"].get<std::string>();
        if (p == "exact") run.method.phi = PhiSchedule::exact(run.method.theta);
        else if (p == "simple") run.method.phi = PhiSchedule::simple(run.method.theta);
        else throw ConfigError("unknown phi variant '" + p + "'");
      }
      if (jr.contains("metric_diag")) {
        const auto diag = jr["metric_diag"].get<std::vector<double>>();
        if (diag.empty()) throw ConfigError("metric_diag must be non-empty");
        Mat q = Mat::Zero(static_cast<Eigen::Index>(diag.size()),
                          static_cast<Eigen::Index>(diag.size()));
        for (std::size_t i = 0; i < diag.size(); ++i)
          q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
        run.method.metric = QuadraticNorm(std::move(q));
      }

      run.iterations = jr.value("iterations", 100L);
      if (run.iterations < 1)
        throw ConfigError("run '" + run.name + "': iterations must be >= 1");

      if (!jr.contains("problem")) throw ConfigError("run '" + run.name + "' needs a 'problem'");
      const auto& jp = jr["problem"];
      if (!jp.contains("kind")) throw ConfigError("problem needs a 'kind'");
      run.problem.kind = detail::parse_problem_kind(jp["kind"].get<std::string>());
      run.problem.dim = jp.value("dim", Eigen::Index{2});
      run.problem.kappa = jp.value("kappa", 10.0);
      run.problem.smoothness = jp.value("smoothness", 1.0);
      run.problem.terms = jp.value("terms", Eigen::Index{8});
      run.problem.rho = jp.value("rho", 1.0);
      run.problem.ridge = jp.value("ridge", 0.0);
      run.problem.l_override = jp.value("smoothness_override", 0.0);
      run.problem.seed = jp.value("seed", cfg.seed);
      run.problem.data_path = jp.value("data", std::string());
      if (run.problem.kind == ProblemSpec::Kind::logistic && run.problem.data_path.empty())
        throw ConfigError("run '" + run.name + "': logistic problems need a 'data' path");

      cfg.runs.push_back(std::move(run));
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config value: ") + e.what());
  }
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace ogm

#endif  // OGMLAB_CONFIG_HPP
