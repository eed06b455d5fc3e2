#include <CLI11.hpp>
#include <charconv>

#include "mrfsom/app/commands.hpp"
#include "mrfsom/errors.hpp"
#include "mrfsom/joints.hpp"

namespace mrfsom::app {

namespace {

struct Flags {
  std::string layout{to_string(LatticeLayout::hex_offset)};
  std::string metric{to_string(LatticeMetric::manhattan)};
  std::string decay{to_string(Decay::exponential)};
  std::string scope{to_string(BmuScope::global_masked)};
  std::string distance{to_string(DistanceNormalization::rms_per_active_dim)};
  std::string mode{to_string(TrainMode::mrf)};
  std::vector<double> neck;
  std::vector<double> shoulder;
  std::vector<double> face;
  std::array<std::vector<double>, kJointCount> limits;
  std::array<std::string, kJointCount> axes;
  std::string out_dir;
  std::string model;
};

std::string dashed(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

// Shortest text that reads back to the same double, for help output.
std::string short_text(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::string vec_text(const Eigen::Vector3d& v) {
  return short_text(v.x()) + " " + short_text(v.y()) + " " + short_text(v.z());
}

Eigen::Vector3d to_vec3(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

void add_options(CLI::App& app, RunConfig& cfg, Flags& flags) {
  app.add_option("--seed", cfg.seed, "Seed for sampling, initialization and shuffling")->capture_default_str();
  app.add_option("--out-dir", flags.out_dir, "Output directory")->default_str(cfg.out_dir.string());
  app.add_option("--data", cfg.data, "Dataset CSV path, or synthesize:<n> to sample in memory");
  app.add_option("--model", flags.model, "Model file for evaluate/export (default <out-dir>/model.json)");

  app.add_option("--n", cfg.samples, "Samples to generate")->capture_default_str();
  app.add_option("--max-attempts", cfg.max_attempts, "Rejection-sampling attempt budget")->capture_default_str();

  app.add_option("--mode", flags.mode, "Training mode: som | mrf")->capture_default_str();
  app.add_option("--mask", cfg.mask, "Receptive fields: default-paper (4x4 lattice, 7 joints) | all-true | <file>")
      ->capture_default_str();
  app.add_option("--rows", cfg.lattice.rows, "Lattice rows")->capture_default_str();
  app.add_option("--cols", cfg.lattice.cols, "Lattice columns")->capture_default_str();
  app.add_option("--layout", flags.layout, "Lattice layout: hex-offset | rectangular")->capture_default_str();
  app.add_option("--metric", flags.metric, "Lattice distance: manhattan | hex-axial")->capture_default_str();

  app.add_option("--epochs", cfg.schedule.epochs, "Training epochs")->capture_default_str();
  app.add_option("--alpha0", cfg.schedule.alpha0, "Initial learning rate")->capture_default_str();
  app.add_option("--alpha-end", cfg.schedule.alpha_end, "Final learning rate")->capture_default_str();
  app.add_option("--sigma0", cfg.schedule.sigma0, "Initial neighborhood radius")->capture_default_str();
  app.add_option("--sigma-end", cfg.schedule.sigma_end, "Final neighborhood radius")->capture_default_str();
  app.add_option("--decay", flags.decay, "Decay: exponential | linear")->capture_default_str();
  app.add_option("--bmu-scope", flags.scope, "Winner search: global-masked | per-group")->capture_default_str();
  app.add_option("--distance", flags.distance, "Masked distance: rms-per-active-dim | unnormalized")
      ->capture_default_str();
  app.add_option("--combination-threshold", cfg.combination_threshold,
                 "Relative |weight| for a joint to count toward a combination")
      ->capture_default_str();

  app.add_option("--touch-radius", cfg.chain.touch_radius, "Hand-to-face acceptance radius (m)")
      ->capture_default_str();
  app.add_option("--upper-arm", cfg.chain.upper_arm, "Upper-arm length (m)")->capture_default_str();
  app.add_option("--forearm-hand", cfg.chain.forearm_hand, "Forearm plus hand length (m)")->capture_default_str();
  app.add_option("--neck-offset", flags.neck, "Head frame origin in the torso frame (m)")
      ->expected(3)
      ->default_str(vec_text(cfg.chain.neck_offset));
  app.add_option("--shoulder-offset", flags.shoulder, "Right shoulder in the torso frame (m)")
      ->expected(3)
      ->default_str(vec_text(cfg.chain.shoulder_offset));
  app.add_option("--face-target", flags.face, "Touch target in the head frame (m)")
      ->expected(3)
      ->default_str(vec_text(cfg.chain.face_target));
  for (std::size_t j = 0; j < kJointCount; ++j) {
    const std::string name = dashed(kJointNames[j]);
    app.add_option("--limit-" + name, flags.limits[j], "Joint limits lo hi (rad)")
        ->expected(2)
        ->default_str(short_text(cfg.chain.limits[j].lo) + " " + short_text(cfg.chain.limits[j].hi));
    app.add_option("--axis-" + name, flags.axes[j], "Rotation axis x | y | z")
        ->default_str(std::string(to_string(cfg.chain.axes[j])));
  }
}

// Turns parsed strings into typed configuration (ConfigError on bad values).
void finalize(RunConfig& cfg, const Flags& flags) {
  cfg.lattice.layout = parse_layout(flags.layout);
  cfg.lattice.metric = parse_metric(flags.metric);
  cfg.schedule.decay = parse_decay(flags.decay);
  cfg.mrf.bmu_scope = parse_bmu_scope(flags.scope);
  cfg.mrf.distance_normalization = parse_normalization(flags.distance);
  cfg.mode = parse_mode(flags.mode);
  if (!flags.neck.empty()) cfg.chain.neck_offset = to_vec3(flags.neck);
  if (!flags.shoulder.empty()) cfg.chain.shoulder_offset = to_vec3(flags.shoulder);
  if (!flags.face.empty()) cfg.chain.face_target = to_vec3(flags.face);
  for (std::size_t j = 0; j < kJointCount; ++j) {
    if (!flags.limits[j].empty()) cfg.chain.limits[j] = {flags.limits[j][0], flags.limits[j][1]};
    if (!flags.axes[j].empty()) cfg.chain.axes[j] = parse_axis(flags.axes[j]);
  }
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (!flags.model.empty()) cfg.model = flags.model;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Flags flags;

  CLI::App app{"Self-organizing maps with restricted receptive fields over humanoid joint-angle data"};
  app.set_config("--config", "", "Read options from a flat 'key = value' file; command-line flags win");
  app.require_subcommand(1);
  app.footer(
      "Defaults reproduce the reference setup: 4x4 hex-offset lattice with Manhattan neuron distance and the\n"
      "built-in 7-joint mask with 4 partially overlapping receptive fields (--mask default-paper).\n"
      "Exit codes: 0 ok, 2 usage, 3 sampling failure, 4 data/config error, 5 I/O error.");
  add_options(app, cfg, flags);

  auto* generate = app.add_subcommand("generate", "Synthesize a self-touch dataset (dataset.csv + manifest)");
  auto* train_cmd = app.add_subcommand("train", "Train a map (model.json + train_log.csv)");
  auto* evaluate = app.add_subcommand("evaluate", "Quantization/topographic error and cluster separation (metrics.json)");
  auto* export_cmd = app.add_subcommand("export", "Heatmaps, neuron-distance map and encoding report");
  for (auto* sub : {generate, train_cmd, evaluate, export_cmd}) sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    finalize(cfg, flags);
    if (generate->parsed()) cmd_generate(cfg, out);
    if (train_cmd->parsed()) cmd_train(cfg, out);
    if (evaluate->parsed()) cmd_evaluate(cfg, out);
    if (export_cmd->parsed()) cmd_export(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitOk;
}

}  // namespace mrfsom::app
