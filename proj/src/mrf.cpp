#include "mrfsom/mrf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "mrfsom/io.hpp"
#include "mrfsom/joints.hpp"
#include "mrfsom/kernels.hpp"

namespace mrfsom {

namespace {

constexpr std::string_view kOverlapPrefix = "overlap-";

bool valid_label(std::string_view label) {
  return !label.empty() && std::none_of(label.begin(), label.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  });
}

// Group names for labels derived from distinct activation patterns.
std::vector<std::string> pattern_labels(std::size_t neurons, std::size_t dims, const std::vector<std::uint8_t>& active) {
  std::map<std::vector<std::uint8_t>, std::size_t> seen;
  std::vector<std::string> labels;
  labels.reserve(neurons);
  for (std::size_t n = 0; n < neurons; ++n) {
    std::vector<std::uint8_t> pattern(active.begin() + static_cast<std::ptrdiff_t>(n * dims),
                                      active.begin() + static_cast<std::ptrdiff_t>((n + 1) * dims));
    const auto [it, inserted] = seen.emplace(std::move(pattern), seen.size());
    labels.push_back("g" + std::to_string(it->second));
  }
  return labels;
}

}  // namespace

ReceptiveFieldMask::ReceptiveFieldMask(std::size_t rows, std::size_t cols, std::size_t dims,
                                       std::vector<std::uint8_t> active, std::vector<std::string> labels)
    : rows_(rows), cols_(cols), dims_(dims), active_(std::move(active)), labels_(std::move(labels)) {
  if (active_.size() != rows_ * cols_ * dims_) throw ConfigError("mask data does not match its shape");
  for (auto& a : active_) a = a ? 1 : 0;
  if (labels_.empty()) labels_ = pattern_labels(neurons(), dims_, active_);
  if (labels_.size() != neurons()) throw ConfigError("mask needs exactly one group label per neuron");
  for (const auto& l : labels_) {
    if (!valid_label(l)) throw ConfigError("invalid group label '" + l + "'");
  }
}

std::size_t ReceptiveFieldMask::active_count(std::size_t neuron) const {
  const auto r = row(neuron);
  return static_cast<std::size_t>(std::count(r.begin(), r.end(), std::uint8_t{1}));
}

std::vector<std::size_t> ReceptiveFieldMask::active_dims(std::size_t neuron) const {
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dims_; ++i) {
    if (active(neuron, i)) dims.push_back(i);
  }
  return dims;
}

std::string ReceptiveFieldMask::home_group(std::size_t neuron) const {
  const std::string& l = label(neuron);
  if (!l.starts_with(kOverlapPrefix)) return l;
  const auto rest = std::string_view(l).substr(kOverlapPrefix.size());
  return std::string(rest.substr(0, rest.find('-')));
}

std::vector<std::string> ReceptiveFieldMask::groups() const {
  std::vector<std::string> out;
  for (std::size_t n = 0; n < neurons(); ++n) {
    auto g = home_group(n);
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  }
  return out;
}

bool ReceptiveFieldMask::all_active() const noexcept {
  return std::all_of(active_.begin(), active_.end(), [](std::uint8_t a) { return a != 0; });
}

void ReceptiveFieldMask::validate() const {
  if (rows_ == 0 || cols_ == 0 || dims_ == 0) throw ConfigError("mask has an empty dimension");
  for (std::size_t n = 0; n < neurons(); ++n) {
    if (active_count(n) == 0) throw ConfigError("mask neuron " + std::to_string(n) + " has no active input");
  }
  for (std::size_t i = 0; i < dims_; ++i) {
    bool used = false;
    for (std::size_t n = 0; n < neurons() && !used; ++n) used = active(n, i);
    if (!used) throw ConfigError("mask input " + std::to_string(i) + " is not connected to any neuron");
  }
}

std::string_view to_string(BmuScope scope) {
  return scope == BmuScope::global_masked ? "global-masked" : "per-group";
}

std::string_view to_string(DistanceNormalization norm) {
  return norm == DistanceNormalization::rms_per_active_dim ? "rms-per-active-dim" : "unnormalized";
}

BmuScope parse_bmu_scope(std::string_view text) {
  if (text == "global-masked") return BmuScope::global_masked;
  if (text == "per-group") return BmuScope::per_group;
  throw ConfigError("unknown BMU scope '" + std::string(text) + "'");
}

DistanceNormalization parse_normalization(std::string_view text) {
  if (text == "rms-per-active-dim") return DistanceNormalization::rms_per_active_dim;
  if (text == "unnormalized") return DistanceNormalization::unnormalized;
  throw ConfigError("unknown distance normalization '" + std::string(text) + "'");
}

namespace {

// Quadrant -> body group for the 4x4 layout.
constexpr std::array<std::array<std::size_t, 2>, 2> kQuadrantGroup = {{{0, 1}, {3, 2}}};

std::size_t quadrant_group(std::size_t r, std::size_t c) { return kQuadrantGroup[r / 2][c / 2]; }

}  // namespace

ReceptiveFieldMask default_paper_mask() {
  constexpr std::size_t rows = 4, cols = 4;
  std::vector<std::uint8_t> active(rows * cols * kJointCount, 0);
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t home = quadrant_group(r, c);
      std::array<bool, 4> connected{};
      connected[home] = true;
      const std::array<std::pair<long, long>, 4> steps = {{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
      for (const auto& [dr, dc] : steps) {
        const long nr = static_cast<long>(r) + dr;
        const long nc = static_cast<long>(c) + dc;
        if (nr < 0 || nc < 0 || nr >= static_cast<long>(rows) || nc >= static_cast<long>(cols)) continue;
        connected[quadrant_group(static_cast<std::size_t>(nr), static_cast<std::size_t>(nc))] = true;
      }
      const std::size_t n = r * cols + c;
      for (std::size_t j = 0; j < kJointCount; ++j) {
        const auto g = static_cast<std::size_t>(
            std::find(kBodyGroups.begin(), kBodyGroups.end(), body_group_of(j)) - kBodyGroups.begin());
        active[n * kJointCount + j] = connected[g] ? 1 : 0;
      }
      std::string label(kBodyGroups[home]);
      bool overlap = false;
      for (std::size_t g = 0; g < kBodyGroups.size(); ++g) {
        if (g == home || !connected[g]) continue;
        if (!overlap) label = std::string(kOverlapPrefix) + label;
        overlap = true;
        label += "-";
        label += kBodyGroups[g];
      }
      labels.push_back(std::move(label));
    }
  }
  return {rows, cols, kJointCount, std::move(active), std::move(labels)};
}

ReceptiveFieldMask all_true_mask(std::size_t rows, std::size_t cols, std::size_t dims) {
  std::vector<std::string> labels;
  if (rows == 4 && cols == 4 && dims == kJointCount) {
    for (std::size_t n = 0; n < 16; ++n) labels.emplace_back(kBodyGroups[quadrant_group(n / 4, n % 4)]);
  } else {
    labels.assign(rows * cols, "all");
  }
  return {rows, cols, dims, std::vector<std::uint8_t>(rows * cols * dims, 1), std::move(labels)};
}

namespace {

void require_compatible(const Codebook& codebook, const ReceptiveFieldMask& mask) {
  if (mask.neurons() != codebook.neurons() || mask.dims() != codebook.dims() ||
      mask.rows() != codebook.lattice.rows || mask.cols() != codebook.lattice.cols) {
    throw ConfigError("mask shape " + std::to_string(mask.rows()) + "x" + std::to_string(mask.cols()) + "x" +
                      std::to_string(mask.dims()) + " does not match codebook " +
                      std::to_string(codebook.lattice.rows) + "x" + std::to_string(codebook.lattice.cols) + "x" +
                      std::to_string(codebook.dims()));
  }
}

void require_sample(std::span<const double> sample, const Codebook& codebook) {
  if (sample.size() != codebook.dims()) {
    throw ShapeError("sample has " + std::to_string(sample.size()) + " dimensions, codebook expects " +
                     std::to_string(codebook.dims()));
  }
}

bool rms(const MrfConfig& cfg) { return cfg.distance_normalization == DistanceNormalization::rms_per_active_dim; }

// Home-group index of every neuron, indexing mask.groups().
std::vector<std::size_t> group_index(const ReceptiveFieldMask& mask) {
  const auto groups = mask.groups();
  std::vector<std::size_t> index(mask.neurons());
  for (std::size_t n = 0; n < mask.neurons(); ++n) {
    index[n] = static_cast<std::size_t>(std::find(groups.begin(), groups.end(), mask.home_group(n)) - groups.begin());
  }
  return index;
}

struct Winners {
  std::vector<std::size_t> per_group;  // npos until found
  std::vector<double> scores;
};

void find_winners(std::span<const double> sample, const Codebook& codebook, const ReceptiveFieldMask& mask,
                  bool normalized, const std::vector<std::size_t>& group_of, Winners& out) {
  std::fill(out.per_group.begin(), out.per_group.end(), kernels::npos);
  for (std::size_t n = 0; n < codebook.neurons(); ++n) {
    const double s = kernels::score(sample, codebook.row(n), mask.row(n).data(), normalized);
    const std::size_t g = group_of[n];
    if (out.per_group[g] == kernels::npos || s < out.scores[g]) {
      out.per_group[g] = n;
      out.scores[g] = s;
    }
  }
}

}  // namespace

double masked_distance(std::span<const double> sample, std::size_t neuron, const Codebook& codebook,
                       const ReceptiveFieldMask& mask, const MrfConfig& cfg) {
  require_compatible(codebook, mask);
  require_sample(sample, codebook);
  if (neuron >= codebook.neurons()) throw ParameterError("neuron index out of range");
  return std::sqrt(kernels::score(sample, codebook.row(neuron), mask.row(neuron).data(), rms(cfg)));
}

std::vector<std::size_t> mrf_find_bmu(std::span<const double> sample, const Codebook& codebook,
                                      const ReceptiveFieldMask& mask, const MrfConfig& cfg) {
  require_compatible(codebook, mask);
  require_sample(sample, codebook);
  if (cfg.bmu_scope == BmuScope::global_masked) {
    const std::vector<std::size_t> one(codebook.neurons(), 0);
    Winners w{{kernels::npos}, {0.0}};
    find_winners(sample, codebook, mask, rms(cfg), one, w);
    return w.per_group;
  }
  const auto group_of = group_index(mask);
  const std::size_t groups = mask.groups().size();
  Winners w{std::vector<std::size_t>(groups), std::vector<double>(groups)};
  find_winners(sample, codebook, mask, rms(cfg), group_of, w);
  return w.per_group;
}

namespace {

struct Quality {
  double qe;
  double te;
};

Quality measure(const Codebook& codebook, const Matrix& dataset, const ReceptiveFieldMask& mask, bool normalized) {
  std::vector<kernels::BestTwo> ranked(dataset.rows());
  kernels::best_two_parallel(codebook.weights, dataset, {mask.data(), normalized}, ranked);
  std::size_t errors = 0;
  for (const auto& r : ranked) {
    if (r.second == kernels::npos || neuron_distance(r.first, r.second, codebook.lattice) != 1) ++errors;
  }
  const double te = codebook.neurons() < 2 ? 0.0 : static_cast<double>(errors) / static_cast<double>(ranked.size());
  return {kernels::mean_winner_distance(ranked), te};
}

}  // namespace

TrainResult mrf_train(Codebook codebook, const Matrix& dataset, const ReceptiveFieldMask& mask,
                      const TrainSchedule& schedule, const MrfConfig& cfg) {
  mask.validate();
  require_compatible(codebook, mask);
  schedule.validate();
  detail::require_dataset(dataset, codebook.dims());

  const bool normalized = rms(cfg);
  const bool per_group = cfg.bmu_scope == BmuScope::per_group;
  const std::vector<std::size_t> group_of =
      per_group ? group_index(mask) : std::vector<std::size_t>(codebook.neurons(), 0);
  const std::size_t groups = per_group ? mask.groups().size() : 1;
  Winners winners{std::vector<std::size_t>(groups), std::vector<double>(groups)};

  const LatticeSpec& lattice = codebook.lattice;
  const std::size_t dims = codebook.dims();
  TrainLog log;
  const std::size_t total = schedule.epochs * dataset.rows();
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < schedule.epochs; ++epoch) {
    for (const std::size_t s : epoch_order(dataset.rows(), schedule.seed, epoch)) {
      const auto sample = dataset.row(s);
      find_winners(sample, codebook, mask, normalized, group_of, winners);
      const double alpha = schedule.alpha(step, total);
      const double sigma = schedule.sigma(step, total);
      for (std::size_t n = 0; n < codebook.neurons(); ++n) {
        const std::size_t winner = winners.per_group[group_of[n]];
        const auto d = neuron_distance(lattice.coord(n), lattice.coord(winner), lattice);
        const double rate = alpha * neighborhood_weight(static_cast<double>(d), sigma);
        auto w = codebook.row(n);
        const auto active = mask.row(n);
        for (std::size_t i = 0; i < dims; ++i) {
          if (active[i]) w[i] = std::lerp(w[i], sample[i], rate);
        }
      }
      ++step;
    }
    const Quality q = measure(codebook, dataset, mask, normalized);
    log.quantization_error.push_back(q.qe);
    log.topographic_error.push_back(q.te);
  }
  return {std::move(codebook), std::move(log)};
}

double mrf_quantization_error(const Codebook& codebook, const Matrix& dataset, const ReceptiveFieldMask& mask,
                              const MrfConfig& cfg) {
  require_compatible(codebook, mask);
  detail::require_dataset(dataset, codebook.dims());
  return measure(codebook, dataset, mask, rms(cfg)).qe;
}

double mrf_topographic_error(const Codebook& codebook, const Matrix& dataset, const ReceptiveFieldMask& mask,
                             const MrfConfig& cfg) {
  if (codebook.neurons() < 2) throw ConfigError("topographic error needs at least two neurons");
  require_compatible(codebook, mask);
  detail::require_dataset(dataset, codebook.dims());
  return measure(codebook, dataset, mask, rms(cfg)).te;
}

// ---------------------------------------------------------------------------
// Mask file

ReceptiveFieldMask parse_mask(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("mask file is empty", 1);
  std::size_t rows = 0, cols = 0, dims = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> rows >> cols >> dims) || (header >> extra)) {
      throw ParseError("expected header 'rows cols dims'", line_no);
    }
    if (rows == 0 || cols == 0 || dims == 0) throw ParseError("mask dimensions must be positive", line_no);
  }

  const std::size_t neurons = rows * cols;
  std::vector<std::uint8_t> active;
  active.reserve(neurons * dims);
  for (std::size_t n = 0; n < neurons; ++n) {
    if (!next_line()) throw ParseError("expected " + std::to_string(neurons) + " neuron rows, found " + std::to_string(n), line_no + 1);
    std::size_t count = 0;
    std::size_t col = 1;
    for (std::size_t pos = 0; pos <= line.size();) {
      const std::size_t end = std::min(line.find(' ', pos), line.size());
      const std::string_view cell = std::string_view(line).substr(pos, end - pos);
      if (cell != "0" && cell != "1") {
        throw ParseError("expected 0 or 1, found '" + std::string(cell) + "'", line_no, col);
      }
      active.push_back(cell == "1" ? 1 : 0);
      ++count;
      col = end + 2;
      pos = end + 1;
      if (end == line.size()) break;
    }
    if (count != dims) {
      throw ParseError("expected " + std::to_string(dims) + " entries, found " + std::to_string(count), line_no);
    }
  }

  std::vector<std::string> labels;
  constexpr std::string_view prefix = "#group ";
  while (next_line()) {
    if (!line.starts_with(prefix)) throw ParseError("unexpected content after mask rows", line_no);
    std::string label = line.substr(prefix.size());
    if (!valid_label(label)) throw ParseError("invalid group label '" + label + "'", line_no);
    labels.push_back(std::move(label));
  }
  if (!labels.empty() && labels.size() != neurons) {
    throw ParseError("expected " + std::to_string(neurons) + " group labels, found " + std::to_string(labels.size()),
                     line_no);
  }

  ReceptiveFieldMask mask(rows, cols, dims, std::move(active), std::move(labels));
  mask.validate();
  return mask;
}

std::string format_mask(const ReceptiveFieldMask& mask) {
  std::string out = std::to_string(mask.rows()) + " " + std::to_string(mask.cols()) + " " +
                    std::to_string(mask.dims()) + "\n";
  for (std::size_t n = 0; n < mask.neurons(); ++n) {
    for (std::size_t i = 0; i < mask.dims(); ++i) {
      if (i) out += ' ';
      out += mask.active(n, i) ? '1' : '0';
    }
    out += '\n';
  }
  for (std::size_t n = 0; n < mask.neurons(); ++n) out += "#group " + mask.label(n) + "\n";
  return out;
}

ReceptiveFieldMask load_mask(const std::filesystem::path& path) { return parse_mask(io::read_file(path)); }

void save_mask(const ReceptiveFieldMask& mask, const std::filesystem::path& path) {
  mask.validate();
  io::write_file_atomic(path, format_mask(mask));
}

}  // namespace mrfsom
