#include "ssdlab_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssdlab/button_suite.hpp"
#include "ssdlab/config.hpp"
#include "ssdlab/csv.hpp"
#include "ssdlab/empirical_schelling.hpp"
#include "ssdlab/errors.hpp"
#include "ssdlab/experiment.hpp"
#include "ssdlab/replay.hpp"
#include "ssdlab/schelling.hpp"
#include "ssdlab/theory.hpp"

namespace ssdlab::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--config", c.config, "Experiment config file");
  cmd.add_option("--seed", c.seed, "Random seed (overrides the config)");
  cmd.add_option("--out", c.out, "Output directory");
}

ExperimentConfig load_or_default(const Common& c) {
  ExperimentConfig config;
  if (!c.config.empty()) {
    if (!fs::exists(c.config)) throw ConfigError("config file not found: " + c.config);
    config = load_config(c.config);
  }
  if (c.seed) config.seed = *c.seed;
  if (!c.out.empty()) config.output = c.out;
  return config;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

// Writes to <out>/<name> when an output directory was given, else to stdout.
void emit(const Common& c, const std::string& name, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_file(fs::path(c.out) / name, text);
    out << "wrote " << (fs::path(c.out) / name).string() << '\n';
  }
}

EnvKind env_kind(const std::string& id) {
  auto kind = parse_env_kind(id);
  if (!kind) throw ConfigError("unknown environment id: " + id);
  return *kind;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

void summarize(const TrainingLog& log, std::ostream& out) {
  std::vector<double> u;
  std::vector<double> s;
  for (const auto& ep : log.episodes) {
    u.push_back(ep.metrics.utilitarian);
    s.push_back(ep.metrics.sustainability);
  }
  out << "episodes: " << log.episodes.size() << '\n';
  if (!log.episodes.empty()) {
    out << "median utilitarian: " << format_double(median_of(u)) << '\n';
    out << "median sustainability: " << format_double(median_of(s)) << '\n';
  }
}

// ---- train ----

struct TrainArgs {
  Common common;
  std::optional<int> episodes;
};

int do_train(const TrainArgs& a, std::ostream& out) {
  if (a.common.config.empty()) throw ConfigError("train needs --config");
  auto config = load_or_default(a.common);
  if (a.episodes) config.episodes = *a.episodes;
  config.validate();
  const auto result = run_experiment(config);
  out << "results: " << result.directory.string() << '\n';
  summarize(result.log, out);
  return kOk;
}

// ---- evaluate ----

struct EvaluateArgs {
  Common common;
  std::string checkpoints;
  int episodes = 10;
};

int do_evaluate(const EvaluateArgs& a, std::ostream& out) {
  if (a.common.config.empty()) throw ConfigError("evaluate needs --config");
  Common c = a.common;
  auto config = load_or_default(c);
  const auto env = make_environment(config.env);
  const fs::path dir = a.checkpoints.empty() ? fs::path(config.output) / "checkpoints"
                                             : fs::path(a.checkpoints);
  const auto population = load_population(config, *env, dir);

  TrainOptions options;
  options.learner = config.learner;
  options.learner.workers = 1;
  options.episodes = a.episodes;
  options.seed = config.seed;
  options.intrinsic_delay = config.intrinsic_delay;
  const auto log = evaluate(*env, population, options);

  std::string csv = metrics_schema().header() + "\n";
  for (const auto& ep : log.episodes) csv += metrics_row(ep.episode, ep.worker, ep.metrics) + "\n";
  if (!c.out.empty()) {
    write_file(fs::path(c.out) / "evaluation_metrics.csv", csv);
    write_file(fs::path(c.out) / "evaluation_log.jsonl", log.to_jsonl());
  }
  summarize(log, out);
  return kOk;
}

// ---- schelling ----

struct SchellingArgs {
  Common common;
  std::string env = "cleanup";
  std::string map;
  std::string matrix;
  bool scripted = false;
  int episodes = 20;
  int training_episodes = 100;
  double threshold = 1.0 / 3.0;
};

int do_schelling(const SchellingArgs& a, std::ostream& out) {
  SchellingDiagram diagram;
  std::string source;
  if (!a.matrix.empty()) {
    PayoffMatrix m;
    if (a.matrix == "chicken") m = PayoffMatrix::chicken();
    else if (a.matrix == "stag_hunt") m = PayoffMatrix::stag_hunt();
    else if (a.matrix == "prisoners_dilemma") m = PayoffMatrix::prisoners_dilemma();
    else m = read_payoff_file(a.matrix);
    diagram = matrix_schelling(m);
    source = fs::path(a.matrix).filename().string();
    std::string nash;
    for (auto p : pure_nash(m)) nash += std::string(nash.empty() ? "" : " ") + std::string(to_string(p));
    out << "pure nash: " << (nash.empty() ? "none" : nash) << '\n';
  } else {
    auto config = load_or_default(a.common);
    config.env.kind = env_kind(a.env);
    if (!a.map.empty()) config.env.map = a.map;
    else if (a.common.config.empty()) config.env.map.clear();
    EmpiricalOptions options;
    options.episodes_per_point = a.episodes;
    options.seed = config.seed;
    options.mode = a.scripted ? Enforcement::Scripted : Enforcement::Trained;
    options.learner = config.learner;
    options.training_episodes = a.training_episodes;
    options.group_reward = config.group_reward > 0.0 ? config.group_reward : 0.1;
    diagram = empirical_schelling(config.env, options).diagram;
    source = a.env;
  }

  ClassifyOptions classify;
  classify.threshold_fraction = a.threshold;
  const auto verdict = classify_ssd(diagram, classify);
  emit(a.common, "diagram.csv", diagram_schema().header() + "\n" + diagram_rows(diagram), out);
  emit(a.common, "verdict.csv", verdict_schema().header() + "\n" + verdict_row(source, verdict) + "\n",
       out);
  return kOk;
}

// ---- theory ----

struct TheoryArgs {
  Common common;
  double c = 0.0;
  double d = 1.0;
  double n = 10.0;
  std::optional<double> alpha;
  std::optional<double> beta_c;
  std::optional<double> beta_d;
};

int do_theory(const TheoryArgs& a, std::ostream& out) {
  const ShortTermPayoffs p{a.c, a.d, a.n};
  std::string csv = theory_schema().header() + "\n";
  bool any = false;
  if (a.alpha) {
    const auto t = aia_transform(p, *a.alpha);
    csv += theory_rows("aia", tabulate(p, t), t);
    any = true;
  }
  if (a.beta_c || a.beta_d) {
    if (!a.beta_c || !a.beta_d) throw ConfigError("dia needs both --beta-c and --beta-d");
    const auto t = dia_transform(p, *a.beta_c, *a.beta_d);
    csv += theory_rows("dia", tabulate(p, t), t);
    any = true;
  }
  if (!any) throw ConfigError("theory needs --alpha or --beta-c/--beta-d");
  emit(a.common, "theory.csv", csv, out);
  return kOk;
}

// ---- buttons ----

struct ButtonArgs {
  Common common;
  std::string env = "dictate";
  int training_episodes = 200;
  int episodes = 50;
  double aia_beta = 1.0;
  double dia_alpha = 5.0;
};

int do_buttons(const ButtonArgs& a, std::ostream& out) {
  auto config = load_or_default(a.common);
  config.env.kind = env_kind(a.env);
  if (!is_button_game(config.env.kind)) {
    throw ConfigError("buttons runs on dictate, give or take, not " + a.env);
  }
  if (a.common.config.empty()) config.env.map.clear();
  ButtonSuiteOptions options;
  options.learner = config.learner;
  options.training_episodes = a.training_episodes;
  options.evaluation_episodes = a.episodes;
  options.seed = config.seed;
  options.aia.beta = a.aia_beta;
  options.dia.alpha = a.dia_alpha;
  const auto rows = run_button_suite(config.env, options);
  emit(a.common, "buttons.csv", button_schema().header() + "\n" + button_rows(rows), out);
  return kOk;
}

// ---- replay ----

struct ReplayArgs {
  Common common;
  std::vector<std::string> files;
};

int do_replay(const ReplayArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> paths;
  for (const auto& f : a.files) {
    if (fs::is_directory(f)) {
      for (const auto& entry : fs::directory_iterator(f)) {
        if (entry.path().extension() == ".ssdr") paths.push_back(entry.path());
      }
    } else {
      paths.emplace_back(f);
    }
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw ConfigError("no replay logs given");
  int failures = 0;
  for (const auto& path : paths) {
    const auto report = verify_replay(load_replay(path));
    (report.ok ? out : err) << path.string() << ": " << (report.ok ? "ok" : "FAILED") << " ("
                            << report.message << ")\n";
    if (!report.ok) ++failures;
  }
  return failures == 0 ? kOk : kRuntimeError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential social dilemma laboratory", "ssdlab"};
  app.require_subcommand(1);

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a population from a config file");
  add_common(*train_cmd, train_args.common);
  train_cmd->add_option("--episodes", train_args.episodes, "Episodes per worker");

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Run saved policies without learning");
  add_common(*eval_cmd, eval_args.common);
  eval_cmd->add_option("--checkpoints", eval_args.checkpoints, "Checkpoint directory");
  eval_cmd->add_option("--episodes", eval_args.episodes, "Evaluation episodes")->check(CLI::PositiveNumber);

  SchellingArgs sch_args;
  auto* sch_cmd = app.add_subcommand("schelling", "Schelling diagram and social dilemma verdict");
  add_common(*sch_cmd, sch_args.common);
  sch_cmd->add_option("--env", sch_args.env, "cleanup or harvest");
  sch_cmd->add_option("--map", sch_args.map, "Bundled map name or map file");
  sch_cmd->add_option("--matrix", sch_args.matrix,
                      "chicken, stag_hunt, prisoners_dilemma or a payoff file");
  sch_cmd->add_flag("--scripted", sch_args.scripted, "Use scripted enforced policies");
  sch_cmd->add_option("--episodes", sch_args.episodes, "Episodes per diagram point");
  sch_cmd->add_option("--training-episodes", sch_args.training_episodes,
                      "Training episodes per population (trained mode)");
  sch_cmd->add_option("--threshold", sch_args.threshold, "Fear/greed threshold fraction");

  TheoryArgs th_args;
  auto* th_cmd = app.add_subcommand("theory", "Inequity-transformed short-term payoff lines");
  add_common(*th_cmd, th_args.common);
  th_cmd->add_option("--c", th_args.c, "Cooperator payoff")->required();
  th_cmd->add_option("--d", th_args.d, "Defector payoff")->required();
  th_cmd->add_option("--N", th_args.n, "Population size")->required();
  th_cmd->add_option("--alpha", th_args.alpha, "Advantageous aversion weight");
  th_cmd->add_option("--beta-c", th_args.beta_c, "Cooperator envy weight");
  th_cmd->add_option("--beta-d", th_args.beta_d, "Defector envy weight");

  ButtonArgs btn_args;
  auto* btn_cmd = app.add_subcommand("buttons", "Button-press statistics per population");
  add_common(*btn_cmd, btn_args.common);
  btn_cmd->add_option("--env", btn_args.env, "dictate, give or take");
  btn_cmd->add_option("--training-episodes", btn_args.training_episodes, "Training episodes");
  btn_cmd->add_option("--episodes", btn_args.episodes, "Evaluation episodes");
  btn_cmd->add_option("--aia-beta", btn_args.aia_beta, "Guilt weight of the averse population");
  btn_cmd->add_option("--dia-alpha", btn_args.dia_alpha, "Envy weight of the envious population");

  ReplayArgs rp_args;
  auto* rp_cmd = app.add_subcommand("replay", "Verify replay logs by re-simulation");
  add_common(*rp_cmd, rp_args.common);
  rp_cmd->add_option("logs", rp_args.files, "Replay files or directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    err << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (train_cmd->parsed()) return do_train(train_args, out);
    if (eval_cmd->parsed()) return do_evaluate(eval_args, out);
    if (sch_cmd->parsed()) return do_schelling(sch_args, out);
    if (th_cmd->parsed()) return do_theory(th_args, out);
    if (btn_cmd->parsed()) return do_buttons(btn_args, out);
    if (rp_cmd->parsed()) return do_replay(rp_args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace ssdlab::cli
