#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrdnn/dataio.hpp"

// Class-dependent intrinsic neighborhood graph: each vector points at its
// k nearest same-class neighbors, weighted by a Gaussian heat kernel over
// squared input-space distance. Built once from inputs, never rebuilt.

namespace mrdnn::graph {

struct IntrinsicGraph {
  // Per-vector neighbor indices, ascending distance, same class only.
  std::vector<std::vector<std::uint32_t>> neighbors;
  // Matching weights, each in (0, 1].
  std::vector<std::vector<double>> weights;
  std::size_t k = 0;
  double rho = 0.0;

  std::size_t size() const { return neighbors.size(); }

  bool operator==(const IntrinsicGraph& other) const = default;
};

// The k same-class vectors closest to x_i in squared Euclidean distance,
// excluding i itself; ties broken by lower index. Returns fewer than k
// when the class is too small.
std::vector<std::uint32_t> knn_same_class(const dataio::Dataset& ds, std::size_t i,
                                          std::size_t k);

// exp(-||xi - xj||^2 / rho). Throws on rho <= 0.
double affinity(std::size_t dim, const double* xi, const double* xj, double rho);
double affinity(const std::vector<double>& xi, const std::vector<double>& xj, double rho);

IntrinsicGraph build_intrinsic_graph(const dataio::Dataset& ds, std::size_t k, double rho,
                                     unsigned threads = 1);

// Sum over stored edges of w_ij * ||z_i - z_j||^2; z holds one mapped row
// per graph vertex.
double graph_scatter(const IntrinsicGraph& g, const linalg::Matrix& z);

// Median of the N(N-1)/2 pairwise squared distances (lower middle for an
// even count). Used for the "median" heat-parameter policy.
double median_squared_distance(const dataio::Dataset& ds);

void save_graph(const IntrinsicGraph& g, const std::string& path);
IntrinsicGraph load_graph(const std::string& path);

}  // namespace mrdnn::graph
