#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrdnn/linalg.hpp"

// Labeled vector datasets: on-disk formats, validation, frame splicing,
// and the synthetic generators that stand in for speech corpora.

namespace mrdnn::dataio {

struct Dataset {
  linalg::Matrix vectors;             // N x D
  std::vector<std::int32_t> labels;   // N entries in [0, class_count)
  std::int32_t class_count = 0;

  std::size_t n() const { return vectors.rows(); }
  std::size_t dim() const { return vectors.cols(); }

  // Throws std::invalid_argument naming the first offending row.
  void validate() const;

  bool operator==(const Dataset& other) const = default;
};

enum class Format { csv, binary };

// .csv -> csv, everything else -> binary.
Format format_for_path(const std::string& path);

// CSV: one row per vector, features then integer label in the last
// column, no header. Binary: magic + (N, D, C) header, float64 payload,
// int32 labels; exact round-trip.
Dataset load_dataset(const std::string& path, Format format);
void save_dataset(const Dataset& ds, const std::string& path, Format format);

struct SpliceSpec {
  std::size_t context = 1;  // odd window length w; w=1 is the identity
};

// Concatenates each frame with its w-1 surrounding frames (output dim
// w*D, center label kept). Rows are treated as one temporal sequence,
// or as independent sequences when segment ids are given; boundary
// frames are replicated. segment_ids, when present, must have N entries
// and equal ids must form contiguous runs.
Dataset splice(const Dataset& ds, const SpliceSpec& spec,
               const std::vector<std::int64_t>* segment_ids = nullptr);

enum class SyntheticKind { gaussian_clusters, two_arcs, noisy_manifold_strip };

SyntheticKind kind_from_name(const std::string& name);
const char* kind_name(SyntheticKind kind);

// Two classes on distinct low-dimensional structures:
//   gaussian-clusters    D=2, isotropic blobs at (0,0) and (10,10)
//   two-arcs             D=2, interleaved half-circles
//   noisy-manifold-strip D=3, two offset sinusoidal curves
// Pure function of (kind, n_per_class, noise, seed).
Dataset generate_synthetic(SyntheticKind kind, std::size_t n_per_class,
                           double noise, std::uint64_t seed);

// N x C target matrix with a single 1 per row.
linalg::Matrix one_hot(const Dataset& ds);

// One integer per line, aligned with dataset rows.
std::vector<std::int64_t> load_segments(const std::string& path);

}  // namespace mrdnn::dataio
