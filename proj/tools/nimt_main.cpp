// Command-line entry points for teaching sessions.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nimt/io.hpp"

namespace {

using namespace nimt;

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

PackSize parse_k(const std::string& text) {
  if (text.find('.') != std::string::npos) {
    return PackSize::ratio(std::stod(text));
  }
  return PackSize::count(std::stoi(text));
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_dir) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot open config: " << config_path << "\n";
    return 1;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_config(ss.str());
  if (out_dir) cfg.output_dir = *out_dir;

  SessionConfig session = build_session(cfg);
  SessionLog log = run_session(session);
  const std::string teacher =
      cfg.teacher.kind == TeacherPolicy::Kind::Rft ? "rft" : "gft";
  const std::string path =
      out_path(cfg.output_dir, cfg.scenario_name + "_" + teacher + ".csv");
  write_session_log(log, path);
  std::cout << "scenario=" << cfg.scenario_name << " teacher=" << teacher
            << " converged=" << log.converged
            << " iterations=" << log.teaching_dimension
            << " final_M=" << log.final_m << "\nlog: " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonparametric iterative teaching sessions"};
  app.require_subcommand(1);

  // run --config <file>
  std::string config_path;
  std::optional<std::string> run_out;
  auto* run = app.add_subcommand("run", "Run a session from a JSON config");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--out", run_out, "Output directory (overrides config)");

  // scenario <name> [flags]
  std::string scen_name;
  std::string teacher_kind = "gft";
  std::string k_text = "1";
  double eta = -1.0, epsilon = -1.0, pool_ratio = -1.0, alt_prob = -1.0;
  int max_iters = -1;
  std::uint64_t seed = 0;
  std::string alt_image, target_image, init_image, scen_out = ".";
  auto* scen = app.add_subcommand("scenario", "Run a named scenario");
  scen->add_option("name", scen_name, "gmm1d|cls2d|image|linear_compare|parametric3d")
      ->required();
  scen->add_option("--teacher", teacher_kind, "rft|gft")
      ->check(CLI::IsMember({"rft", "gft"}));
  scen->add_option("--k", k_text, "pack size: integer count or ratio in (0,1)");
  scen->add_option("--eta", eta, "learning rate");
  scen->add_option("--epsilon", epsilon, "stopping threshold");
  scen->add_option("--max-iters", max_iters, "iteration cap");
  scen->add_option("--seed", seed, "RNG seed")->required();
  scen->add_option("--pool-ratio", pool_ratio, "pool subsample ratio in (0,1]");
  scen->add_option("--alt", alt_image, "alternative-target image (PGM or CSV)");
  scen->add_option("--alt-prob", alt_prob, "per-iteration substitution probability");
  scen->add_option("--target", target_image, "target image (image scenario)");
  scen->add_option("--init", init_image, "initial image (image scenario)");
  scen->add_option("--out", scen_out, "output directory");

  // compare-linear
  int steps = 50;
  std::string cmp_out = ".";
  std::uint64_t cmp_seed = 0;
  auto* cmp = app.add_subcommand(
      "compare-linear",
      "Linear-kernel functional teaching vs parametric gradient descent");
  cmp->add_option("--steps", steps, "number of iterations");
  cmp->add_option("--seed", cmp_seed, "RNG seed");
  cmp->add_option("--out", cmp_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path, run_out);
    }
    if (scen->parsed()) {
      ScenarioOverrides ov;
      if (eta > 0) ov.eta = eta;
      if (epsilon > 0) ov.epsilon = epsilon;
      if (max_iters >= 0) ov.max_iters = max_iters;
      if (!target_image.empty()) ov.target_image = load_grayscale_image(target_image);
      if (!init_image.empty()) ov.init_image = load_grayscale_image(init_image);
      Scenario s = make_scenario(scen_name, ov);
      TeacherPolicy policy;
      policy.kind = teacher_kind == "rft" ? TeacherPolicy::Kind::Rft
                                          : TeacherPolicy::Kind::Gft;
      policy.k = parse_k(k_text);
      policy.seed = seed;
      if (pool_ratio > 0) policy.pool_ratio = pool_ratio;
      if (!alt_image.empty()) {
        RkhsFunction alt = make_target(BaseFunction{load_grayscale_image(alt_image)},
                                       s.target.kernel());
        policy.alt = AltTeaching{alt_prob < 0 ? 0.0 : alt_prob, std::move(alt)};
      }
      SessionConfig session = session_from_scenario(s, std::move(policy));
      SessionLog log = run_session(session);
      const std::string path =
          out_path(scen_out, scen_name + "_" + teacher_kind + ".csv");
      write_session_log(log, path);
      std::cout << "scenario=" << scen_name << " teacher=" << teacher_kind
                << " converged=" << log.converged
                << " iterations=" << log.teaching_dimension
                << " final_M=" << log.final_m << "\nlog: " << path << "\n";
      return 0;
    }
    if (cmp->parsed()) {
      Scenario s = make_scenario("linear_compare", {.max_iters = steps});
      TeacherPolicy policy;
      policy.kind = TeacherPolicy::Kind::Gft;
      policy.seed = cmp_seed;
      SessionConfig session = session_from_scenario(s, policy);
      session.epsilon = 1e-300;  // run all requested steps
      SessionLog log = run_session(session);

      // replay the identical example stream through both learners
      LearnerState nonparam(s.init, s.eta, s.loss);
      ParametricLearner param{{-0.5, 0.5}, s.eta};
      double worst = 0.0;
      const std::string path = out_path(cmp_out, "linear_compare.csv");
      std::ofstream out(path);
      out << "t,max_abs_diff\n";
      for (const auto& rec : log.records) {
        double diff = 0.0;
        for (const auto& x : s.grid) {
          diff = std::max(diff, std::abs(nonparam.evaluate(x) - parametric_predict(param, x)));
        }
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", diff);
        out << rec.t << ',' << buf << '\n';
        worst = std::max(worst, diff);
        const auto& ex = rec.selected.front();
        nonparam.step(TeachingPack{{ex}});
        param = parametric_gd_step(param, ex.x, ex.y);
      }
      std::cout << "steps=" << log.records.size()
                << " max|f_nonparam - <w,(x,1)>|=" << worst << "\nlog: " << path
                << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
