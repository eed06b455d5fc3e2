#include "mrfsom/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include "mrfsom/errors.hpp"
#include "mrfsom/io.hpp"
#include "mrfsom/rng.hpp"

namespace mrfsom {

JointSample draw_attempt(const ChainSpec& chain, std::uint64_t seed, std::uint64_t attempt) {
  rng::SplitMixStream stream(rng::derive_seed(seed, attempt));
  JointSample q{};
  for (std::size_t j = 0; j < kJointCount; ++j) {
    const auto [lo, hi] = chain.limits[j];
    q[j] = lo + (hi - lo) * stream.uniform01();
  }
  return q;
}

namespace kernels {

void touch_attempts_serial(const ChainSpec& chain, std::uint64_t seed, std::uint64_t first,
                           std::span<std::uint8_t> accepted) {
  for (std::size_t k = 0; k < accepted.size(); ++k) {
    const JointSample q = draw_attempt(chain, seed, first + k);
    accepted[k] = is_touching(forward_kinematics_unchecked(q, chain), chain.touch_radius) ? 1 : 0;
  }
}

void touch_attempts_parallel(const ChainSpec& chain, std::uint64_t seed, std::uint64_t first,
                             std::span<std::uint8_t> accepted) {
  const auto count = static_cast<std::int64_t>(accepted.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < count; ++k) {
    const JointSample q = draw_attempt(chain, seed, first + static_cast<std::uint64_t>(k));
    accepted[static_cast<std::size_t>(k)] =
        is_touching(forward_kinematics_unchecked(q, chain), chain.touch_radius) ? 1 : 0;
  }
}

}  // namespace kernels

SelfTouchDataset synthesize_self_touch(const ChainSpec& chain, std::size_t n, std::uint64_t seed,
                                       std::uint64_t max_attempts) {
  chain.validate();
  if (n == 0) throw ParameterError("number of samples must be positive");

  constexpr std::uint64_t kBlock = 1 << 16;
  SelfTouchDataset out{Matrix(0, kJointCount), 0};
  std::vector<std::uint8_t> accepted;
  for (std::uint64_t first = 0; first < max_attempts; first += kBlock) {
    const std::uint64_t count = std::min(kBlock, max_attempts - first);
    accepted.assign(count, 0);
    kernels::touch_attempts_parallel(chain, seed, first, accepted);
    for (std::uint64_t k = 0; k < count; ++k) {
      if (!accepted[k]) continue;
      const JointSample q = draw_attempt(chain, seed, first + k);
      out.samples.append_row(q);
      if (out.samples.rows() == n) {
        out.attempts = first + k + 1;
        return out;
      }
    }
  }
  throw SamplingError("only " + std::to_string(out.samples.rows()) + " of " + std::to_string(n) +
                      " self-touch samples accepted after " + std::to_string(max_attempts) +
                      " attempts; increase the touch radius or max attempts");
}

// ---------------------------------------------------------------------------
// CSV

std::string dataset_csv_header() {
  std::string header;
  for (std::size_t j = 0; j < kJointCount; ++j) {
    if (j) header += ',';
    header += kJointNames[j];
  }
  return header;
}

std::string format_csv(const Matrix& dataset) {
  if (dataset.cols() != kJointCount) {
    throw ShapeError("dataset CSV needs " + std::to_string(kJointCount) + " columns, got " +
                     std::to_string(dataset.cols()));
  }
  std::string out = dataset_csv_header() + "\n";
  for (std::size_t r = 0; r < dataset.rows(); ++r) {
    for (std::size_t c = 0; c < dataset.cols(); ++c) {
      if (c) out += ',';
      out += io::format_double(dataset(r, c));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(sep, pos);
    if (end == std::string_view::npos) {
      cells.push_back(line.substr(pos));
      return cells;
    }
    cells.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
}

}  // namespace

Matrix parse_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  if (lines.empty()) throw ParseError("missing header", 1);

  const auto header = split(lines[0], ',');
  if (header.size() != kJointCount) {
    throw ParseError("header has " + std::to_string(header.size()) + " columns, expected " +
                         std::to_string(kJointCount) + " (" + dataset_csv_header() + ")",
                     1);
  }
  if (lines[0] != dataset_csv_header()) throw ParseError("missing or wrong header, expected '" + dataset_csv_header() + "'", 1);

  Matrix data(0, kJointCount);
  std::vector<double> row(kJointCount);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto cells = split(lines[i], ',');
    if (cells.size() != kJointCount) {
      throw ParseError("data row " + std::to_string(i) + " has " + std::to_string(cells.size()) +
                           " columns, expected " + std::to_string(kJointCount),
                       line_no);
    }
    for (std::size_t c = 0; c < kJointCount; ++c) {
      const std::string_view cell = cells[c];
      double value = 0.0;
      const auto result = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || result.ec != std::errc() || result.ptr != cell.data() + cell.size() ||
          !std::isfinite(value)) {
        throw ParseError("data row " + std::to_string(i) + ": non-numeric value '" + std::string(cell) +
                             "' in column " + std::string(kJointNames[c]),
                         line_no, c + 1);
      }
      row[c] = value;
    }
    data.append_row(row);
  }
  return data;
}

Matrix load_csv(const std::filesystem::path& path) { return parse_csv(io::read_file(path)); }

void save_csv(const Matrix& dataset, const std::filesystem::path& path) {
  io::write_file_atomic(path, format_csv(dataset));
}

// ---------------------------------------------------------------------------
// Normalization

NormalizationParams fit_normalization(const Matrix& dataset, std::span<const std::string> names) {
  if (dataset.rows() < 2) throw DataError("normalization needs at least two samples");
  const std::size_t rows = dataset.rows();
  const std::size_t cols = dataset.cols();
  NormalizationParams p{std::vector<double>(cols, 0.0), std::vector<double>(cols, 0.0)};
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < rows; ++r) sum += dataset(r, c);
    const double mean = sum / static_cast<double>(rows);
    double ss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double d = dataset(r, c) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(rows));
    if (!(sd > 0.0)) {
      std::string name = c < names.size()          ? names[c]
                         : cols == kJointCount ? std::string(kJointNames[c])
                                               : "column " + std::to_string(c);
      throw NormalizationError("column '" + name + "' is constant; cannot normalize");
    }
    p.mean[c] = mean;
    p.stddev[c] = sd;
  }
  return p;
}

Matrix NormalizationParams::apply(const Matrix& data) const {
  if (data.cols() != mean.size()) throw ShapeError("normalization dimension mismatch");
  Matrix out = data;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = (out(r, c) - mean[c]) / stddev[c];
  }
  return out;
}

Matrix NormalizationParams::invert(const Matrix& data) const {
  if (data.cols() != mean.size()) throw ShapeError("normalization dimension mismatch");
  Matrix out = data;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = out(r, c) * stddev[c] + mean[c];
  }
  return out;
}

Matrix correlation(const Matrix& dataset) {
  const std::size_t rows = dataset.rows();
  const std::size_t cols = dataset.cols();
  std::vector<double> mean(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) mean[c] += dataset(r, c);
  }
  for (double& m : mean) m /= static_cast<double>(rows);
  Matrix cov(cols, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t a = 0; a < cols; ++a) {
      for (std::size_t b = 0; b < cols; ++b) cov(a, b) += (dataset(r, a) - mean[a]) * (dataset(r, b) - mean[b]);
    }
  }
  Matrix corr(cols, cols);
  for (std::size_t a = 0; a < cols; ++a) {
    for (std::size_t b = 0; b < cols; ++b) corr(a, b) = cov(a, b) / std::sqrt(cov(a, a) * cov(b, b));
  }
  return corr;
}

}  // namespace mrfsom
