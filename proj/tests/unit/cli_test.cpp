#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mrfsom/app/commands.hpp"
#include "mrfsom/app/model.hpp"
#include "mrfsom/io.hpp"
#include "mrfsom/som.hpp"
#include "support/helpers.hpp"

using namespace mrfsom;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mrfsom");
  std::ostringstream out, err;
  const int code = app::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files[fs::relative(entry.path(), dir).string()] = io::read_file(entry.path());
  }
  return files;
}

// Small generate -> train -> evaluate -> export run into `dir`.
void pipeline(const fs::path& dir, const std::string& seed) {
  const std::string out = dir.string();
  REQUIRE(cli({"generate", "--seed", seed, "--n", "60", "--out-dir", out}).code == 0);
  const std::string data = (dir / "dataset.csv").string();
  REQUIRE(cli({"train", "--seed", seed, "--epochs", "5", "--data", data, "--out-dir", out}).code == 0);
  REQUIRE(cli({"evaluate", "--data", data, "--out-dir", out}).code == 0);
  REQUIRE(cli({"export", "--out-dir", (dir / "analysis").string(), "--model", (dir / "model.json").string()}).code == 0);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help documents the default lattice and mask") {
  const Run r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("4x4") != std::string::npos);
  CHECK(r.out.find("7-joint") != std::string::npos);
  for (const char* sub : {"generate", "train", "evaluate", "export"}) CHECK(r.out.find(sub) != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"fly"}).code == 2);
  CHECK(cli({"train", "--epochs", "many"}).code == 2);
  CHECK(cli({"train", "--no-such-flag"}).code == 2);
}

TEST_CASE("sampling failure exits 3") {
  const auto dir = testing_support::temp_dir("cli_sampling");
  const Run r = cli({"generate", "--n", "10", "--max-attempts", "50", "--out-dir", dir.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("error:") == 0);
  CHECK_FALSE(fs::exists(dir / "dataset.csv"));
}

TEST_CASE("data and config errors exit 4") {
  const auto dir = testing_support::temp_dir("cli_data");
  const std::string out = dir.string();
  CHECK(cli({"train", "--data", (dir / "missing.csv").string(), "--out-dir", out}).code == 4);
  CHECK(cli({"train", "--data", "synthesize:20", "--mode", "kmeans", "--out-dir", out}).code == 4);
  CHECK(cli({"train", "--data", "synthesize:20", "--rows", "3", "--out-dir", out}).code == 4);
  CHECK(cli({"train", "--data", "synthesize:20", "--alpha0", "2", "--out-dir", out}).code == 4);
  CHECK(cli({"evaluate", "--data", "synthesize:20", "--out-dir", out}).code == 4);  // no model

  io::write_file_atomic(dir / "bad.csv", "head_yaw,oops\n1,2\n");
  const Run bad = cli({"train", "--data", (dir / "bad.csv").string(), "--out-dir", out});
  CHECK(bad.code == 4);
  CHECK(bad.err.find("line 1") != std::string::npos);

  io::write_file_atomic(dir / "model.json", "{\"format\": \"mrfsom-model/1\", \"codebook\": [");
  CHECK(cli({"export", "--out-dir", out}).code == 4);
}

TEST_CASE("unwritable output exits 5") {
  const auto dir = testing_support::temp_dir("cli_io");
  io::write_file_atomic(dir / "blocker", "not a directory");
  const Run r = cli({"generate", "--n", "5", "--out-dir", (dir / "blocker" / "sub").string()});
  CHECK(r.code == 5);
}

TEST_CASE("pipeline output is deterministic and independent of the output path") {
  const auto a = testing_support::temp_dir("cli_det_a");
  const auto b = testing_support::temp_dir("cli_det_b");
  pipeline(a, "42");
  pipeline(b, "42");
  const auto ta = tree(a);
  CHECK(ta == tree(b));
  CHECK(ta.count("dataset.csv") == 1);
  CHECK(ta.count("generation_manifest.json") == 1);
  CHECK(ta.count("model.json") == 1);
  CHECK(ta.count("train_log.csv") == 1);
  CHECK(ta.count("metrics.json") == 1);

  std::size_t csv = 0, pgm = 0;
  for (const auto& [name, body] : ta) {
    if (name.starts_with("analysis/heatmap_") && name.ends_with(".csv")) ++csv;
    if (name.starts_with("analysis/heatmap_") && name.ends_with(".pgm")) ++pgm;
  }
  CHECK(csv == 7);
  CHECK(pgm == 7);
  CHECK(ta.count("analysis/analysis.json") == 1);

  const auto c = testing_support::temp_dir("cli_det_c");
  pipeline(c, "43");
  CHECK(tree(c).at("model.json") != ta.at("model.json"));
}

TEST_CASE("export is idempotent") {
  const auto dir = testing_support::temp_dir("cli_idem");
  pipeline(dir, "7");
  const auto first = tree(dir / "analysis");
  REQUIRE(cli({"export", "--out-dir", (dir / "analysis").string(), "--model", (dir / "model.json").string()}).code == 0);
  CHECK(tree(dir / "analysis") == first);
}

TEST_CASE("zero epochs stores the initial codebook") {
  const auto dir = testing_support::temp_dir("cli_zero");
  REQUIRE(cli({"train", "--seed", "5", "--epochs", "0", "--data", "synthesize:30", "--out-dir", dir.string()}).code == 0);
  const app::Model model = app::load_model(dir / "model.json");
  app::RunConfig cfg;
  cfg.seed = 5;
  CHECK(model.codebook == init_codebook(LatticeSpec{}, 7, cfg.init_seed()));
  CHECK(io::read_file(dir / "train_log.csv") == "epoch,quantization_error,topographic_error\n");
}

TEST_CASE("som mode equals mrf mode with an all-true unnormalized mask") {
  const auto som = testing_support::temp_dir("cli_som");
  const auto mrf = testing_support::temp_dir("cli_mrf");
  REQUIRE(cli({"train", "--mode", "som", "--epochs", "3", "--data", "synthesize:40", "--out-dir", som.string()}).code == 0);
  REQUIRE(cli({"train", "--mode", "mrf", "--mask", "all-true", "--distance", "unnormalized", "--epochs", "3", "--data",
               "synthesize:40", "--out-dir", mrf.string()})
              .code == 0);
  const app::Model a = app::load_model(som / "model.json");
  const app::Model b = app::load_model(mrf / "model.json");
  CHECK(a.codebook == b.codebook);
  CHECK(io::read_file(som / "train_log.csv") == io::read_file(mrf / "train_log.csv"));
}

TEST_CASE("config file supplies options and flags override it") {
  const auto dir = testing_support::temp_dir("cli_config");
  io::write_file_atomic(dir / "run.ini", "seed = 9\nepochs = 2\nrows = 2\ncols = 2\nmask = all-true\n"
                                         "data = synthesize:25\n");
  const std::string cfg = (dir / "run.ini").string();
  REQUIRE(cli({"train", "--config", cfg, "--out-dir", (dir / "a").string()}).code == 0);
  REQUIRE(cli({"train", "--config", cfg, "--epochs", "3", "--out-dir", (dir / "b").string()}).code == 0);
  const app::Model a = app::load_model(dir / "a" / "model.json");
  CHECK(a.codebook.lattice.rows == 2);
  CHECK(a.config["seed"] == 9);
  CHECK(a.config["schedule"]["epochs"] == 2);
  CHECK(app::load_model(dir / "b" / "model.json").config["schedule"]["epochs"] == 3);
}

TEST_CASE("model file round trip") {
  const auto dir = testing_support::temp_dir("cli_model");
  REQUIRE(cli({"train", "--epochs", "2", "--data", "synthesize:30", "--mask", "default-paper", "--out-dir",
               dir.string()})
              .code == 0);
  const std::string text = io::read_file(dir / "model.json");
  const app::Model model = app::parse_model(text);
  CHECK(app::format_model(model) == text);
}

}
