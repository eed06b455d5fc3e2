#include "mrfsom/app/model.hpp"

#include "mrfsom/errors.hpp"
#include "mrfsom/io.hpp"

namespace mrfsom::app {

namespace {

constexpr std::string_view kFormat = "mrfsom-model/1";

Json rows_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const double v : m.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_rows(const Json& rows, std::size_t expect_rows, std::size_t expect_cols, std::string_view what) {
  if (!rows.is_array() || rows.size() != expect_rows) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(expect_rows) + " rows");
  }
  Matrix m(expect_rows, expect_cols);
  for (std::size_t r = 0; r < expect_rows; ++r) {
    const Json& row = rows[r];
    if (!row.is_array() || row.size() != expect_cols) {
      throw ParseError(std::string(what) + ": row " + std::to_string(r) + " needs " + std::to_string(expect_cols) +
                       " values");
    }
    for (std::size_t c = 0; c < expect_cols; ++c) m(r, c) = row[c].get<double>();
  }
  return m;
}

}  // namespace

std::string format_model(const Model& model) {
  const Codebook& cb = model.codebook;
  const ReceptiveFieldMask& mask = model.mask;

  Json active = Json::array();
  for (std::size_t n = 0; n < mask.neurons(); ++n) {
    Json row = Json::array();
    for (std::size_t i = 0; i < mask.dims(); ++i) row.push_back(mask.active(n, i) ? 1 : 0);
    active.push_back(std::move(row));
  }

  Json doc;
  doc["format"] = kFormat;
  doc["mode"] = std::string(to_string(model.mode));
  doc["mrf"] = {{"bmu_scope", std::string(to_string(model.mrf.bmu_scope))},
                {"distance", std::string(to_string(model.mrf.distance_normalization))}};
  doc["lattice"] = {{"rows", cb.lattice.rows},
                    {"cols", cb.lattice.cols},
                    {"layout", std::string(to_string(cb.lattice.layout))},
                    {"metric", std::string(to_string(cb.lattice.metric))}};
  doc["dims"] = cb.dims();
  doc["mask"] = {{"active", std::move(active)}, {"labels", mask.labels()}};
  doc["normalization"] = {{"mean", model.normalization.mean}, {"stddev", model.normalization.stddev}};
  doc["codebook"] = rows_json(cb.weights);
  doc["config"] = model.config;
  return to_json_text(doc);
}

Model parse_model(std::string_view text) {
  try {
    const Json doc = Json::parse(text);
    if (doc.at("format").get<std::string>() != kFormat) throw ParseError("unsupported model format");

    Model model;
    model.mode = parse_mode(doc.at("mode").get<std::string>());
    model.mrf.bmu_scope = parse_bmu_scope(doc.at("mrf").at("bmu_scope").get<std::string>());
    model.mrf.distance_normalization = parse_normalization(doc.at("mrf").at("distance").get<std::string>());

    LatticeSpec lattice;
    const Json& l = doc.at("lattice");
    lattice.rows = l.at("rows").get<std::size_t>();
    lattice.cols = l.at("cols").get<std::size_t>();
    lattice.layout = parse_layout(l.at("layout").get<std::string>());
    lattice.metric = parse_metric(l.at("metric").get<std::string>());
    lattice.validate();
    const auto dims = doc.at("dims").get<std::size_t>();
    if (dims == 0) throw ParseError("model has zero input dimensions");

    const Matrix active = matrix_from_rows(doc.at("mask").at("active"), lattice.size(), dims, "mask");
    std::vector<std::uint8_t> bits;
    for (const double v : active.values()) {
      if (v != 0.0 && v != 1.0) throw ParseError("mask entries must be 0 or 1");
      bits.push_back(v != 0.0 ? 1 : 0);
    }
    model.mask = ReceptiveFieldMask(lattice.rows, lattice.cols, dims, std::move(bits),
                                    doc.at("mask").at("labels").get<std::vector<std::string>>());
    model.mask.validate();

    model.normalization.mean = doc.at("normalization").at("mean").get<std::vector<double>>();
    model.normalization.stddev = doc.at("normalization").at("stddev").get<std::vector<double>>();
    if (model.normalization.mean.size() != dims || model.normalization.stddev.size() != dims) {
      throw ParseError("normalization parameters do not match model dimensions");
    }
    for (const double s : model.normalization.stddev) {
      if (!(s > 0.0)) throw ParseError("normalization standard deviations must be positive");
    }

    model.codebook = Codebook{lattice, matrix_from_rows(doc.at("codebook"), lattice.size(), dims, "codebook")};
    model.config = doc.at("config");
    return model;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

Model load_model(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("model file '" + path.string() + "' does not exist");
  try {
    return parse_model(io::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.filename().string() + ": " + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  io::write_file_atomic(path, format_model(model));
}

}  // namespace mrfsom::app
