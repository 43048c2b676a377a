#include "mrdnn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "mrdnn/kernels.hpp"
#include "mrdnn/parallel.hpp"

namespace mrdnn::graph {
namespace {

constexpr char kMagic[8] = {'M', 'R', 'G', 'R', 'A', 'P', 'H', '1'};

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("graph: " + what);
}

void check_rho(double rho) {
  if (!(rho > 0.0)) fail("heat parameter must be > 0, got " + std::to_string(rho));
}

}  // namespace

std::vector<std::uint32_t> knn_same_class(const dataio::Dataset& ds, std::size_t i,
                                          std::size_t k) {
  if (i >= ds.n()) fail("query index " + std::to_string(i) + " out of range");

  std::vector<std::pair<double, std::uint32_t>> candidates;
  for (std::size_t j = 0; j < ds.n(); ++j) {
    if (j == i || ds.labels[j] != ds.labels[i]) continue;
    double d = kernels::squared_distance(ds.dim(), ds.vectors.row(i), ds.vectors.row(j));
    candidates.emplace_back(d, static_cast<std::uint32_t>(j));
  }
  std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + keep, candidates.end());

  std::vector<std::uint32_t> out(keep);
  for (std::size_t m = 0; m < keep; ++m) out[m] = candidates[m].second;
  return out;
}

double affinity(std::size_t dim, const double* xi, const double* xj, double rho) {
  check_rho(rho);
  return std::exp(-kernels::squared_distance(dim, xi, xj) / rho);
}

double affinity(const std::vector<double>& xi, const std::vector<double>& xj, double rho) {
  if (xi.size() != xj.size())
    fail("affinity dimension mismatch: " + std::to_string(xi.size()) + " vs " +
         std::to_string(xj.size()));
  return affinity(xi.size(), xi.data(), xj.data(), rho);
}

IntrinsicGraph build_intrinsic_graph(const dataio::Dataset& ds, std::size_t k, double rho,
                                     unsigned threads) {
  if (k < 1) fail("neighbor budget must be >= 1");
  check_rho(rho);
  ds.validate();

  IntrinsicGraph g;
  g.k = k;
  g.rho = rho;
  g.neighbors.resize(ds.n());
  g.weights.resize(ds.n());

  parallel_for(ds.n(), threads, [&](std::size_t i) {
    auto nbrs = knn_same_class(ds, i, k);
    std::vector<double> w(nbrs.size());
    for (std::size_t m = 0; m < nbrs.size(); ++m)
      w[m] = affinity(ds.dim(), ds.vectors.row(i), ds.vectors.row(nbrs[m]), rho);
    g.neighbors[i] = std::move(nbrs);
    g.weights[i] = std::move(w);
  });
  return g;
}

double graph_scatter(const IntrinsicGraph& g, const linalg::Matrix& z) {
  if (z.rows() != g.size())
    fail("scatter row count " + std::to_string(z.rows()) + " does not match graph size " +
         std::to_string(g.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t m = 0; m < g.neighbors[i].size(); ++m) {
      std::uint32_t j = g.neighbors[i][m];
      total += g.weights[i][m] * kernels::squared_distance(z.cols(), z.row(i), z.row(j));
    }
  }
  return total;
}

double median_squared_distance(const dataio::Dataset& ds) {
  if (ds.n() < 2) fail("median distance needs at least 2 rows");
  std::vector<double> d;
  d.reserve(ds.n() * (ds.n() - 1) / 2);
  for (std::size_t i = 0; i < ds.n(); ++i)
    for (std::size_t j = i + 1; j < ds.n(); ++j)
      d.push_back(kernels::squared_distance(ds.dim(), ds.vectors.row(i), ds.vectors.row(j)));
  std::size_t mid = (d.size() - 1) / 2;
  std::nth_element(d.begin(), d.begin() + mid, d.end());
  double med = d[mid];
  if (!(med > 0.0)) fail("median pairwise distance is zero; cannot derive a heat parameter");
  return med;
}

void save_graph(const IntrinsicGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path);
  std::int64_t n = static_cast<std::int64_t>(g.size());
  std::int64_t k = static_cast<std::int64_t>(g.k);
  out.write(kMagic, 8);
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&k), 8);
  out.write(reinterpret_cast<const char*>(&g.rho), 8);
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::int32_t m = static_cast<std::int32_t>(g.neighbors[i].size());
    out.write(reinterpret_cast<const char*>(&m), 4);
    out.write(reinterpret_cast<const char*>(g.neighbors[i].data()), 4LL * m);
    out.write(reinterpret_cast<const char*>(g.weights[i].data()), 8LL * m);
  }
  if (!out) fail("write failed for " + path);
}

IntrinsicGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  char magic[8];
  std::int64_t n = 0, k = 0;
  double rho = 0.0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&k), 8);
  in.read(reinterpret_cast<char*>(&rho), 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) fail("not a graph file: " + path);
  if (n < 0 || k < 1 || !(rho > 0.0)) fail("bad header in " + path);

  IntrinsicGraph g;
  g.k = static_cast<std::size_t>(k);
  g.rho = rho;
  g.neighbors.resize(static_cast<std::size_t>(n));
  g.weights.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::int32_t m = 0;
    in.read(reinterpret_cast<char*>(&m), 4);
    if (!in || m < 0 || static_cast<std::size_t>(m) > g.k) fail("corrupt graph file: " + path);
    g.neighbors[i].resize(static_cast<std::size_t>(m));
    g.weights[i].resize(static_cast<std::size_t>(m));
    in.read(reinterpret_cast<char*>(g.neighbors[i].data()), 4LL * m);
    in.read(reinterpret_cast<char*>(g.weights[i].data()), 8LL * m);
  }
  if (!in) fail("truncated graph file: " + path);
  return g;
}

}  // namespace mrdnn::graph
