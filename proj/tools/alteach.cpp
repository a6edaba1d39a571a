#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "alteach/data.hpp"
#include "alteach/diagnostics.hpp"
#include "alteach/geometry.hpp"
#include "alteach/io.hpp"
#include "alteach/oracles.hpp"
#include "alteach/sweep.hpp"
#include "alteach/verify.hpp"

using namespace alteach;

namespace {

// --seed wins over TEACH_SEED, which wins over the fallback.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TEACH_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(std::string("TEACH_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return fallback;
}

SyntheticConfig synthetic_from_json(const Json& j, std::uint64_t seed) {
  SyntheticConfig cfg;
  cfg.n_points = j.value("n_points", cfg.n_points);
  cfg.n_hypotheses = j.value("n_hypotheses", cfg.n_hypotheses);
  cfg.n_components = j.value("n_components", cfg.n_components);
  if (j.contains("class_means")) {
    const auto& m = j.at("class_means");
    cfg.class_mean_neg = {m.at(0).at(0).get<double>(), m.at(0).at(1).get<double>()};
    cfg.class_mean_pos = {m.at(1).at(0).get<double>(), m.at(1).at(1).get<double>()};
  }
  if (j.contains("class_variance")) {
    const double v = j.at("class_variance").get<double>();
    cfg.class_cov_neg = cfg.class_cov_pos = v * Eigen::Matrix2d::Identity();
  }
  cfg.seed = j.value("seed", seed);
  return cfg;
}

struct LearnerArgs {
  std::string kind = "gbs";
  double beta = 1.0;
  std::string constraint = "none";
  double psi = 1.0;
  std::size_t radius = 1;

  void add(CLI::App* app) {
    app->add_option("--learner", kind, "Learner: gbs, beta or random")->capture_default_str();
    app->add_option("--beta", beta, "Beta for the beta-greedy learner (>= 1)")->capture_default_str();
    app->add_option("--constraint", constraint, "Teacher constraint: none, C, F, C+F or chain")
        ->capture_default_str();
    app->add_option("--psi", psi, "Fraction for C/F/C+F constraints, in (0, 1]")->capture_default_str();
    app->add_option("--radius", radius, "Radius for the chain constraint")->capture_default_str();
  }

  LearnerSpec learner(std::uint64_t seed) const {
    LearnerSpec spec{learner_kind_from_string(kind), beta, seed};
    spec.validate();
    return spec;
  }

  ConstraintSpec constraint_spec() const {
    ConstraintSpec spec{constraint_kind_from_string(constraint), psi, radius};
    spec.validate();
    return spec;
  }
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active learning with a contrastive teacher: simulation, oracles and experiment sweeps"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a problem file");
  std::string gen_kind = "synthetic", gen_out, gen_config;
  std::optional<std::uint64_t> gen_seed;
  std::size_t gen_k = 1, gen_points = 200, gen_hyps = 64, gen_instances = 6;
  gen->add_option("kind", gen_kind, "synthetic, chain or random")->check(CLI::IsMember({"synthetic", "chain", "random"}));
  gen->add_option("-o,--out", gen_out, "Output problem file (default: stdout)");
  gen->add_option("--config", gen_config, "JSON file with synthetic generator settings");
  gen->add_option("--seed", gen_seed, "Seed (overrides TEACH_SEED)");
  gen->add_option("--k", gen_k, "Chain family parameter")->capture_default_str();
  gen->add_option("--points", gen_points, "Synthetic points / random instances")->capture_default_str();
  gen->add_option("--hypotheses", gen_hyps, "Number of hypotheses")->capture_default_str();
  gen->add_option("--instances", gen_instances, "Random problem instances")->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Run one learner-teacher session and print the transcript");
  std::string run_problem, run_out;
  std::optional<std::size_t> run_target;
  std::optional<std::uint64_t> run_seed;
  std::size_t run_budget = 0;
  bool run_alone = false;
  LearnerArgs run_args;
  run->add_option("problem", run_problem, "Problem file")->required()->check(CLI::ExistingFile);
  run_args.add(run);
  run->add_option("--target", run_target, "Target hypothesis (default: the file's target)");
  run->add_option("--budget", run_budget, "Round budget (0 = 4|H|)");
  run->add_option("--seed", run_seed, "Learner seed (overrides TEACH_SEED)");
  run->add_flag("--no-teacher", run_alone, "Active learner alone");
  run->add_option("-o,--out", run_out, "Transcript JSON (default: stdout)");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Run the beta x psi x constraint experiment grid over all targets");
  std::string sw_config, sw_problem, sw_out = "sweep.csv", sw_agg = "sweep_aggregate.csv";
  std::optional<std::uint64_t> sw_seed;
  std::optional<std::size_t> sw_threads;
  sw->add_option("--config", sw_config, "JSON sweep config")->check(CLI::ExistingFile);
  sw->add_option("--problem", sw_problem, "Problem file (overrides the config's problem source)");
  sw->add_option("--seed", sw_seed, "Master seed (overrides TEACH_SEED and the config)");
  sw->add_option("--threads", sw_threads, "Worker threads");
  sw->add_option("-o,--out", sw_out, "Per-run CSV")->capture_default_str();
  sw->add_option("--aggregate", sw_agg, "Aggregate CSV")->capture_default_str();

  // diagnose
  auto* dg = app.add_subcommand("diagnose", "Compute alpha, rho^g, gamma^g, c*, k and the indicative bounds");
  std::string dg_problem, dg_distances;
  std::optional<std::uint64_t> dg_seed;
  std::size_t dg_depth = 6, dg_sampled = 0, dg_cap = 20;
  bool dg_json_only = false;
  LearnerArgs dg_args;
  dg->add_option("problem", dg_problem, "Problem file")->required()->check(CLI::ExistingFile);
  dg_args.add(dg);
  dg->add_option("--seed", dg_seed, "Learner seed (overrides TEACH_SEED)");
  dg->add_option("--depth-cap", dg_depth, "BFS depth cap for reachable version spaces")->capture_default_str();
  dg->add_option("--sampled", dg_sampled, "Estimate rho^g/gamma^g from this many random states (0 = enumerate)");
  dg->add_option("--exact-cap", dg_cap, "Largest |X| for the exact oracles")->capture_default_str();
  dg->add_option("--distances", dg_distances, "Write the d_H distance matrix as CSV");
  dg->add_flag("--json", dg_json_only, "Print only the JSON report");

  // verify
  auto* vf = app.add_subcommand("verify", "Replay fixtures and run the property suites");
  std::string vf_suite = "all", vf_dir = ALTEACH_FIXTURES_DIR;
  std::optional<std::uint64_t> vf_seed;
  std::size_t vf_count = 200, vf_dichotomy = 50, vf_bounds = 50;
  vf->add_option("suite", vf_suite, "fixtures, lemmas, bounds or all")
      ->check(CLI::IsMember({"fixtures", "lemmas", "bounds", "all"}));
  vf->add_option("--fixtures", vf_dir, "Fixture directory")->capture_default_str();
  vf->add_option("--seed", vf_seed, "Seed (overrides TEACH_SEED)");
  vf->add_option("--count", vf_count, "Random problems for the sandwich check")->capture_default_str();
  vf->add_option("--dichotomy-count", vf_dichotomy, "Random problems for the GBS dichotomy")->capture_default_str();
  vf->add_option("--bounds-count", vf_bounds, "Random problems for the bounds suite")->capture_default_str();

  // fixtures
  auto* fx = app.add_subcommand("fixtures", "Regenerate the pinned fixtures");
  std::string fx_dir = ALTEACH_FIXTURES_DIR;
  fx->add_option("--dir", fx_dir, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const std::uint64_t seed = resolve_seed(gen_seed, 0);
      std::optional<TeachingProblem> problem;
      if (gen_kind == "synthetic") {
        SyntheticConfig cfg;
        if (!gen_config.empty()) {
          cfg = synthetic_from_json(Json::parse(read_file(gen_config)), seed);
        } else {
          cfg.n_points = gen_points;
          cfg.n_hypotheses = gen_hyps;
        }
        if (gen_seed || gen_config.empty()) cfg.seed = seed;
        problem = gen_synthetic(cfg);
      } else if (gen_kind == "chain") {
        problem = thm2_family(gen_k).problem;
      } else {
        problem = random_problem(gen_instances, gen_hyps, seed);
      }
      emit(gen_out, problem_to_text(*problem));
      return 0;
    }

    if (*run) {
      auto problem = load_problem(run_problem);
      if (run_target) problem = problem.with_target(*run_target);
      SessionOptions opts;
      opts.budget = run_budget;
      opts.with_teacher = !run_alone;
      const auto learner = run_args.learner(resolve_seed(run_seed, 0));
      const auto constraint = run_args.constraint_spec();
      const auto tr = run_session(problem, learner, constraint, opts);
      Json doc = to_json(tr);
      doc["learner"] = to_json(learner);
      doc["constraint"] = to_json(constraint);
      doc["with_teacher"] = !run_alone;
      doc["target"] = problem.target();
      const auto alpha = alpha_of_run(tr);
      doc["alpha"] = alpha.infinite ? Json("inf") : Json(alpha.value);
      emit(run_out, doc.dump(2) + "\n");
      return tr.terminated ? 0 : 3;
    }

    if (*sw) {
      Json cfg_doc = Json::object();
      if (!sw_config.empty()) {
        const std::string text = read_file(sw_config);
        try {
          cfg_doc = Json::parse(text);
        } catch (const Json::parse_error& e) {
          throw Error(sw_config + ": malformed JSON: " + e.what());
        }
      }
      SweepConfig cfg;
      cfg.seed = resolve_seed(sw_seed, cfg_doc.value("seed", std::uint64_t{0}));
      if (cfg_doc.contains("betas")) cfg.betas = cfg_doc["betas"].get<std::vector<double>>();
      if (cfg_doc.contains("psis")) cfg.psis = cfg_doc["psis"].get<std::vector<double>>();
      if (cfg_doc.contains("constraints")) {
        cfg.constraints.clear();
        for (const auto& c : cfg_doc["constraints"]) cfg.constraints.push_back(constraint_kind_from_string(c));
      }
      cfg.baselines = cfg_doc.value("baselines", true);
      cfg.budget = cfg_doc.value("budget", std::size_t{0});
      cfg.threads = sw_threads.value_or(cfg_doc.value("threads", std::size_t{1}));
      if (cfg_doc.contains("targets")) cfg.targets = cfg_doc["targets"].get<std::vector<Index>>();

      std::optional<TeachingProblem> problem;
      if (!sw_problem.empty()) {
        problem = load_problem(sw_problem);
      } else if (cfg_doc.contains("problem")) {
        problem = load_problem(cfg_doc["problem"].get<std::string>());
      } else {
        problem = gen_synthetic(synthetic_from_json(cfg_doc.value("synthetic", Json::object()), cfg.seed));
      }
      const auto rows = sweep(*problem, cfg);
      write_file(sw_out, rows_csv(rows));
      write_file(sw_agg, aggregate_csv(aggregate(rows)));
      std::size_t unterminated = 0;
      for (const auto& r : rows) unterminated += r.terminated ? 0 : 1;
      std::cerr << rows.size() << " runs, " << unterminated << " did not terminate; wrote " << sw_out << " and "
                << sw_agg << "\n";
      return 0;
    }

    if (*dg) {
      const auto problem = load_problem(dg_problem);
      DiagnoseOptions opts;
      opts.learner = dg_args.learner(resolve_seed(dg_seed, 0));
      opts.constraint = dg_args.constraint_spec();
      opts.rho_gamma.depth_cap = dg_depth;
      opts.rho_gamma.sampled = dg_sampled;
      opts.rho_gamma.oracle_limits.max_instances = dg_cap;
      const auto report = diagnose(problem, opts);
      if (!dg_distances.empty()) write_file(dg_distances, distance_csv(distance_matrix(problem)));
      std::cout << to_json(report).dump(2) << "\n";
      if (!dg_json_only) {
        auto show = [](const std::string& name, const std::string& value) {
          std::cerr << std::left << std::setw(18) << name << value << "\n";
        };
        auto opt_str = [](const std::optional<std::size_t>& v) {
          return v ? std::to_string(*v) : std::string("not computed");
        };
        show("alpha", report.alpha.infinite ? "inf" : format_number(report.alpha.value));
        show("rho^g", report.rho_gamma ? format_number(report.rho_gamma->rho_g) : "not computed");
        show("gamma^g", report.rho_gamma ? format_number(report.rho_gamma->gamma_g) : "not computed");
        show("c*", format_number(report.c_star) + " (tol " + format_number(report.c_star_tolerance) + ")");
        show("k_min", std::to_string(report.k_min));
        show("OPT^T", opt_str(report.opt_t));
        show("OPT^{T+AL}", opt_str(report.opt_t_al));
        show("greedy cost", std::to_string(report.greedy_cost));
        show("bound (general)", report.thm1 ? format_number(report.thm1->value) : "not computed");
        show("bound (coherence)", report.thm3 ? format_number(report.thm3->value) : "not computed");
        show("bound (GBS alone)", format_number(report.bound_gbs_alone));
        std::cerr << "bounds use constant 1 for every O(.) and are indicative only"
                  << (report.depth_capped ? "; reachable-state search was truncated" : "") << "\n";
      }
      return 0;
    }

    if (*vf) {
      const std::uint64_t seed = resolve_seed(vf_seed, 1);
      bool ok = true;
      auto report = [&](const SuiteReport& r) {
        std::cout << format_report(r);
        ok = ok && r.passed();
      };
      if (vf_suite == "fixtures" || vf_suite == "all") report(verify_fixtures(vf_dir));
      if (vf_suite == "lemmas" || vf_suite == "all") report(verify_lemmas(vf_count, vf_dichotomy, seed));
      if (vf_suite == "bounds" || vf_suite == "all") report(verify_bounds(vf_bounds, seed));
      return ok ? 0 : 1;
    }

    if (*fx) {
      const auto search = search_gbs_counterexample(counterexample_search_config());
      if (!search.problem) {
        std::cerr << "counterexample search exhausted " << search.tries << " tries without a find\n";
        return 2;
      }
      const std::filesystem::path dir(fx_dir);
      save_problem(dir / kCounterexampleFixture, *search.problem);
      save_problem(dir / kChainFixture, thm2_family(1).problem);
      std::cout << "counterexample found after " << search.tries << " tries: alone "
                << search.alone.total_examples << " labels, with teacher " << search.with_teacher.total_examples
                << " labels\nwrote " << (dir / kCounterexampleFixture).string() << " and "
                << (dir / kChainFixture).string() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
