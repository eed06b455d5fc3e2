#include "mrfsom/app/commands.hpp"

#include <cmath>
#include <filesystem>
#include <limits>

#include "mrfsom/analysis.hpp"
#include "mrfsom/app/model.hpp"
#include "mrfsom/datagen.hpp"
#include "mrfsom/errors.hpp"
#include "mrfsom/export.hpp"
#include "mrfsom/io.hpp"
#include "mrfsom/joints.hpp"

namespace mrfsom::app {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const SamplingError*>(&e)) return kExitSampling;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  return kExitData;
}

namespace {

Matrix load_dataset(const RunConfig& cfg) {
  if (cfg.data.empty()) throw ConfigError("no dataset given (--data <path> or synthesize:<n>)");
  if (const std::size_t n = synthesize_count(cfg.data); n > 0) {
    return synthesize_self_touch(cfg.chain, n, cfg.seed, cfg.max_attempts).samples;
  }
  if (!fs::exists(cfg.data)) throw ConfigError("dataset '" + cfg.data + "' does not exist");
  try {
    return load_csv(cfg.data);
  } catch (const ParseError& e) {
    throw ParseError(fs::path(cfg.data).filename().string() + ": " + e.what());
  }
}

fs::path model_path(const RunConfig& cfg) { return cfg.model.empty() ? cfg.out_dir / "model.json" : cfg.model; }

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

void cmd_generate(const RunConfig& cfg, std::ostream& log) {
  cfg.chain.validate();
  if (cfg.samples == 0) throw ConfigError("--n must be positive");

  const SelfTouchDataset data = synthesize_self_touch(cfg.chain, cfg.samples, cfg.seed, cfg.max_attempts);

  Json manifest;
  manifest["format"] = "mrfsom-generation/1";
  manifest["samples"] = data.samples.rows();
  manifest["seed"] = cfg.seed;
  manifest["attempts"] = data.attempts;
  manifest["max_attempts"] = cfg.max_attempts;
  manifest["acceptance_rate"] = data.acceptance_rate();
  manifest["chain"] = chain_to_json(cfg.chain);

  const std::string csv = format_csv(data.samples);
  const std::string manifest_text = to_json_text(manifest);
  io::write_file_atomic(cfg.out_dir / "dataset.csv", csv);
  io::write_file_atomic(cfg.out_dir / "generation_manifest.json", manifest_text);
  log << "generated " << data.samples.rows() << " self-touch samples from " << data.attempts
      << " attempts (acceptance rate " << data.acceptance_rate() << ")\n";
}

void cmd_train(const RunConfig& cfg, std::ostream& log) {
  cfg.lattice.validate();
  cfg.schedule.validate();
  cfg.chain.validate();
  const ReceptiveFieldMask configured = resolve_mask(cfg);
  const Matrix raw = load_dataset(cfg);
  if (raw.cols() != kJointCount) throw ShapeError("dataset must have 7 joint columns");

  const NormalizationParams norm = fit_normalization(raw);
  const Matrix data = norm.apply(raw);

  TrainSchedule schedule = cfg.schedule;
  schedule.seed = cfg.shuffle_seed();
  Codebook initial = init_codebook(cfg.lattice, kJointCount, cfg.init_seed());

  Model model;
  model.mode = cfg.mode;
  model.mrf = cfg.mrf;
  model.normalization = norm;
  model.config = run_config_to_json(cfg);
  TrainResult result;
  if (cfg.mode == TrainMode::som) {
    // The unmasked map keeps the configured labels so reports still group neurons by lattice region.
    model.mask = ReceptiveFieldMask(cfg.lattice.rows, cfg.lattice.cols, kJointCount,
                                    std::vector<std::uint8_t>(cfg.lattice.size() * kJointCount, 1), configured.labels());
    result = train(std::move(initial), data, schedule);
  } else {
    model.mask = configured;
    result = mrf_train(std::move(initial), data, configured, schedule, cfg.mrf);
  }
  model.codebook = std::move(result.codebook);

  std::string log_csv = "epoch,quantization_error,topographic_error\n";
  for (std::size_t e = 0; e < result.log.epochs(); ++e) {
    log_csv += std::to_string(e + 1) + "," + io::format_double(result.log.quantization_error[e]) + "," +
               io::format_double(result.log.topographic_error[e]) + "\n";
  }
  const std::string model_text = format_model(model);
  io::write_file_atomic(cfg.out_dir / "model.json", model_text);
  io::write_file_atomic(cfg.out_dir / "train_log.csv", log_csv);
  log << "trained " << to_string(cfg.mode) << " map " << cfg.lattice.rows << "x" << cfg.lattice.cols << " on "
      << data.rows() << " samples for " << cfg.schedule.epochs << " epochs";
  if (result.log.epochs() > 0) log << " (final QE " << result.log.quantization_error.back() << ")";
  log << "\n";
}

void cmd_evaluate(const RunConfig& cfg, std::ostream& log) {
  const Model model = load_model(model_path(cfg));
  const Matrix raw = load_dataset(cfg);
  if (raw.cols() != model.codebook.dims()) {
    throw ShapeError("dataset has " + std::to_string(raw.cols()) + " columns but the model expects " +
                     std::to_string(model.codebook.dims()));
  }
  const Matrix data = model.normalization.apply(raw);
  if (data.empty()) throw DataError("dataset is empty");

  double qe = 0.0;
  double te = std::numeric_limits<double>::quiet_NaN();
  const bool topo = model.codebook.neurons() >= 2;
  if (model.mode == TrainMode::som) {
    qe = quantization_error(model.codebook, data);
    if (topo) te = topographic_error(model.codebook, data);
  } else {
    qe = mrf_quantization_error(model.codebook, data, model.mask, model.mrf);
    if (topo) te = mrf_topographic_error(model.codebook, data, model.mask, model.mrf);
  }

  Json metrics;
  metrics["format"] = "mrfsom-metrics/1";
  metrics["mode"] = std::string(to_string(model.mode));
  metrics["samples"] = data.rows();
  metrics["quantization_error"] = qe;
  metrics["topographic_error"] = nullable(te);
  const EncodingReport report = build_encoding_report(model.codebook, model.mask);
  try {
    metrics["cluster_separation_ratio"] = nullable(cluster_separation_ratio(report));
  } catch (const ReportError&) {
    metrics["cluster_separation_ratio"] = nullptr;
  }
  metrics["reference_separation_ratio"] = kReferenceSeparationRatio;

  io::write_file_atomic(cfg.out_dir / "metrics.json", to_json_text(metrics));
  log << "QE " << qe << ", TE " << te << " over " << data.rows() << " samples\n";
}

void cmd_export(const RunConfig& cfg, std::ostream& log) {
  if (!(cfg.combination_threshold >= 0.0 && cfg.combination_threshold <= 1.0)) {
    throw ConfigError("combination threshold must lie in [0, 1]");
  }
  const Model model = load_model(model_path(cfg));
  AnalysisArtifacts artifacts = build_analysis_artifacts(model.codebook, model.mask, cfg.combination_threshold);
  artifacts.files.emplace_back("receptive_fields.txt", format_mask(model.mask));
  write_artifacts(artifacts, cfg.out_dir);
  log << "wrote " << artifacts.files.size() << " analysis files to " << cfg.out_dir.string() << "\n";
}

}  // namespace mrfsom::app
