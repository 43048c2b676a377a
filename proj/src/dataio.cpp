#include "mrdnn/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "mrdnn/rng.hpp"

namespace mrdnn::dataio {
namespace {

constexpr char kMagic[8] = {'M', 'R', 'D', 'N', 'D', 'S', '0', '1'};

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("dataio: " + what);
}

double parse_double(const std::string& token, std::size_t row) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    fail("bad numeric token '" + token + "' at row " + std::to_string(row));
  if (!std::isfinite(v))
    fail("non-finite value at row " + std::to_string(row));
  return v;
}

std::int32_t parse_label(const std::string& token, std::size_t row) {
  std::int32_t v = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    fail("bad label token '" + token + "' at row " + std::to_string(row));
  if (v < 0) fail("label out of range at row " + std::to_string(row));
  return v;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::vector<std::int32_t> labels;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      tokens.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (tokens.size() < 2)
      fail("row " + std::to_string(lineno) + " needs features and a label");
    if (width == 0) width = tokens.size();
    if (tokens.size() != width)
      fail("ragged row " + std::to_string(lineno) + ": got " +
           std::to_string(tokens.size()) + " fields, expected " + std::to_string(width));

    std::vector<double> feats(tokens.size() - 1);
    for (std::size_t j = 0; j + 1 < tokens.size(); ++j)
      feats[j] = parse_double(tokens[j], lineno);
    labels.push_back(parse_label(tokens.back(), lineno));
    rows.push_back(std::move(feats));
  }
  if (rows.empty()) fail("no rows in " + path);

  Dataset ds;
  ds.vectors = linalg::Matrix(rows.size(), width - 1);
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::copy(rows[i].begin(), rows[i].end(), ds.vectors.row(i));
  ds.labels = std::move(labels);
  std::int32_t max_label = *std::max_element(ds.labels.begin(), ds.labels.end());
  ds.class_count = max_label + 1;
  ds.validate();
  return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path);
  char buf[32];
  for (std::size_t i = 0; i < ds.n(); ++i) {
    std::string line;
    for (std::size_t j = 0; j < ds.dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", ds.vectors(i, j));
      line += buf;
      line += ',';
    }
    line += std::to_string(ds.labels[i]);
    line += '\n';
    out << line;
  }
  if (!out) fail("write failed for " + path);
}

Dataset load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);

  char magic[8];
  std::int64_t n = 0, d = 0;
  std::int32_t c = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&d), 8);
  in.read(reinterpret_cast<char*>(&c), 4);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    fail("not a dataset file: " + path);
  if (n < 1 || d < 1) fail("bad header in " + path);

  Dataset ds;
  ds.vectors = linalg::Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(d));
  ds.labels.resize(static_cast<std::size_t>(n));
  ds.class_count = c;
  in.read(reinterpret_cast<char*>(ds.vectors.data()),
          static_cast<std::streamsize>(ds.vectors.size() * sizeof(double)));
  in.read(reinterpret_cast<char*>(ds.labels.data()),
          static_cast<std::streamsize>(ds.labels.size() * sizeof(std::int32_t)));
  if (!in) fail("truncated dataset file: " + path);
  ds.validate();
  return ds;
}

void save_binary(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path);
  std::int64_t n = static_cast<std::int64_t>(ds.n());
  std::int64_t d = static_cast<std::int64_t>(ds.dim());
  out.write(kMagic, 8);
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&d), 8);
  out.write(reinterpret_cast<const char*>(&ds.class_count), 4);
  out.write(reinterpret_cast<const char*>(ds.vectors.data()),
            static_cast<std::streamsize>(ds.vectors.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(ds.labels.data()),
            static_cast<std::streamsize>(ds.labels.size() * sizeof(std::int32_t)));
  if (!out) fail("write failed for " + path);
}

}  // namespace

void Dataset::validate() const {
  if (n() < 1) fail("dataset has no rows");
  if (dim() < 1) fail("dataset has zero feature dimension");
  if (labels.size() != n())
    fail("label count " + std::to_string(labels.size()) + " does not match row count " +
         std::to_string(n()));
  if (class_count < 2) fail("dataset needs at least 2 classes");
  for (std::size_t i = 0; i < n(); ++i) {
    if (labels[i] < 0 || labels[i] >= class_count)
      fail("label out of range at row " + std::to_string(i + 1));
    const double* row = vectors.row(i);
    for (std::size_t j = 0; j < dim(); ++j)
      if (!std::isfinite(row[j]))
        fail("non-finite value at row " + std::to_string(i + 1));
  }
}

Format format_for_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0
             ? Format::csv
             : Format::binary;
}

Dataset load_dataset(const std::string& path, Format format) {
  return format == Format::csv ? load_csv(path) : load_binary(path);
}

void save_dataset(const Dataset& ds, const std::string& path, Format format) {
  ds.validate();
  if (format == Format::csv)
    save_csv(ds, path);
  else
    save_binary(ds, path);
}

Dataset splice(const Dataset& ds, const SpliceSpec& spec,
               const std::vector<std::int64_t>* segment_ids) {
  if (spec.context % 2 == 0 || spec.context < 1)
    fail("splice window must be odd and >= 1, got " + std::to_string(spec.context));
  ds.validate();
  if (segment_ids != nullptr && segment_ids->size() != ds.n())
    fail("segment id count " + std::to_string(segment_ids->size()) +
         " does not match row count " + std::to_string(ds.n()));

  std::size_t n = ds.n(), d = ds.dim(), w = spec.context;
  std::size_t half = (w - 1) / 2;

  // Per-row segment bounds [lo, hi]; one segment when ids are absent.
  std::vector<std::size_t> lo(n, 0), hi(n, n - 1);
  if (segment_ids != nullptr) {
    std::unordered_set<std::int64_t> seen;
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool last = i + 1 == n || (*segment_ids)[i + 1] != (*segment_ids)[i];
      if (last) {
        if (!seen.insert((*segment_ids)[i]).second)
          fail("segment ids must form contiguous runs");
        for (std::size_t j = start; j <= i; ++j) {
          lo[j] = start;
          hi[j] = i;
        }
        start = i + 1;
      }
    }
  }

  Dataset out;
  out.vectors = linalg::Matrix(n, w * d);
  out.labels = ds.labels;
  out.class_count = ds.class_count;
  for (std::size_t i = 0; i < n; ++i) {
    double* dst = out.vectors.row(i);
    for (std::size_t o = 0; o < w; ++o) {
      std::ptrdiff_t src = static_cast<std::ptrdiff_t>(i) + static_cast<std::ptrdiff_t>(o) -
                           static_cast<std::ptrdiff_t>(half);
      std::size_t clamped = src < static_cast<std::ptrdiff_t>(lo[i])
                                ? lo[i]
                                : (src > static_cast<std::ptrdiff_t>(hi[i])
                                       ? hi[i]
                                       : static_cast<std::size_t>(src));
      std::copy(ds.vectors.row(clamped), ds.vectors.row(clamped) + d, dst + o * d);
    }
  }
  return out;
}

SyntheticKind kind_from_name(const std::string& name) {
  if (name == "gaussian-clusters") return SyntheticKind::gaussian_clusters;
  if (name == "two-arcs") return SyntheticKind::two_arcs;
  if (name == "noisy-manifold-strip") return SyntheticKind::noisy_manifold_strip;
  fail("unknown synthetic kind '" + name + "'");
}

const char* kind_name(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::gaussian_clusters: return "gaussian-clusters";
    case SyntheticKind::two_arcs: return "two-arcs";
    case SyntheticKind::noisy_manifold_strip: return "noisy-manifold-strip";
  }
  return "?";
}

Dataset generate_synthetic(SyntheticKind kind, std::size_t n_per_class,
                           double noise, std::uint64_t seed) {
  if (n_per_class < 1) fail("n_per_class must be >= 1");
  if (noise < 0.0) fail("noise must be >= 0");

  rng::Engine e(seed);
  std::size_t d = kind == SyntheticKind::noisy_manifold_strip ? 3 : 2;
  Dataset ds;
  ds.vectors = linalg::Matrix(2 * n_per_class, d);
  ds.labels.resize(2 * n_per_class);
  ds.class_count = 2;

  for (std::int32_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < n_per_class; ++i) {
      std::size_t row = static_cast<std::size_t>(c) * n_per_class + i;
      double* p = ds.vectors.row(row);
      ds.labels[row] = c;
      switch (kind) {
        case SyntheticKind::gaussian_clusters: {
          double mean = c == 0 ? 0.0 : 10.0;
          p[0] = mean + noise * e.gaussian();
          p[1] = mean + noise * e.gaussian();
          break;
        }
        case SyntheticKind::two_arcs: {
          double t = e.uniform(0.0, std::numbers::pi);
          double x = c == 0 ? std::cos(t) : 1.0 - std::cos(t);
          double y = c == 0 ? std::sin(t) : 0.5 - std::sin(t);
          p[0] = x + noise * e.gaussian();
          p[1] = y + noise * e.gaussian();
          break;
        }
        case SyntheticKind::noisy_manifold_strip: {
          double t = e.uniform(0.0, 1.0);
          double tau = 2.0 * std::numbers::pi * t;
          p[0] = 4.0 * t + noise * e.gaussian();
          p[1] = 0.7 * std::sin(tau) + 2.2 * c + noise * e.gaussian();
          p[2] = 0.5 * std::cos(tau) + noise * e.gaussian();
          break;
        }
      }
    }
  }
  return ds;
}

linalg::Matrix one_hot(const Dataset& ds) {
  ds.validate();
  linalg::Matrix t(ds.n(), static_cast<std::size_t>(ds.class_count));
  for (std::size_t i = 0; i < ds.n(); ++i)
    t(i, static_cast<std::size_t>(ds.labels[i])) = 1.0;
  return t;
}

std::vector<std::int64_t> load_segments(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::vector<std::int64_t> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size())
      fail("bad segment id at line " + std::to_string(lineno));
    ids.push_back(v);
  }
  return ids;
}

}  // namespace mrdnn::dataio
