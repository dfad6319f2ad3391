#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "latinhib/dynamics.hpp"
#include "latinhib/model.hpp"
#include "latinhib/sweep.hpp"

namespace latinhib {

struct PointsTable {
  PointSet points;
  std::optional<std::vector<std::string>> labels;  // held out, never clustered on
};

struct LabeledPoints {
  PointSet points;
  std::vector<std::string> labels;
};

/// Reads comma-separated features, one object per line. Blank lines are
/// skipped. If `label_column` is set that column is kept as an opaque string.
/// Throws InputError with the 1-based line number on malformed content.
PointsTable read_points_csv(const std::filesystem::path& path, bool has_header,
                            std::optional<std::size_t> label_column = std::nullopt);

/// Reads a square comma-separated distance matrix. Mirrored entries that
/// agree to 1e-9 (relative) are averaged and diagonal entries within 1e-12
/// of zero are zeroed; anything else is rejected with the offending indices.
DistanceMatrix read_distance_csv(const std::filesystem::path& path);

/// Parameters of the isotropic Gaussian blob generator.
struct BlobSpec {
  std::size_t clusters = 5;
  std::size_t points_per_cluster = 10;
  double sigma = 1.0;
  std::size_t dim = 2;
  double center_box = 50.0;  // centers drawn uniformly from [-box, box]^dim
  std::uint64_t seed = 1;
  double min_center_separation = 0.0;

  void validate() const;
};

struct BlobData {
  PointSet points;
  std::vector<std::size_t> labels;  // generating cluster per point
  std::vector<std::vector<double>> centers;
};

/// Points are emitted cluster by cluster. Randomness comes from std::mt19937_64
/// seeded with `spec.seed`: uniforms are (x >> 11) * 2^-53 and normals use the
/// Box-Muller cosine branch, so the stream is the same on every platform.
/// Each center gets a bounded number of draws to clear `min_center_separation`
/// from the earlier ones before GenerationError is thrown.
BlobData gen_blobs(const BlobSpec& spec);

/// The 150-sample Fisher iris data set (4 features, 3 species of 50).
LabeledPoints load_iris();

/// Writes features plus a trailing label column, no header.
void write_points_csv(const PointSet& points, const std::vector<std::string>& labels,
                      const std::filesystem::path& path);

std::string result_to_json(const ClusteringResult& result);
ClusteringResult result_from_json(const std::string& text);
void write_result_json(const ClusteringResult& result, const std::filesystem::path& path);
ClusteringResult read_result_json(const std::filesystem::path& path);

struct PlateauReportMeta {
  bool use_filtered = false;
  std::size_t min_class_size = 1;
  double alpha = 0.05;
  double max_distance = 0.0;
  std::string grid_mode;
  std::size_t grid_points = 0;
};

std::string plateaus_to_json(const std::vector<Plateau>& plateaus, const PlateauReportMeta& meta);
void write_plateaus_json(const std::vector<Plateau>& plateaus, const PlateauReportMeta& meta,
                         const std::filesystem::path& path);

std::string curve_to_tsv(const SweepCurve& curve);
/// Parses the TSV produced by `curve_to_tsv`. The filter size is not part of
/// the format, so the returned curve reports min_class_size = 1.
SweepCurve curve_from_tsv(const std::string& text);
void write_curve_tsv(const SweepCurve& curve, const std::filesystem::path& path);
SweepCurve read_curve_tsv(const std::filesystem::path& path);

/// Step plot of K(T) with the first three entries of `plateaus` highlighted.
std::string curve_to_svg(const SweepCurve& curve, const std::vector<Plateau>& plateaus);
void render_curve_svg(const SweepCurve& curve, const std::vector<Plateau>& plateaus,
                      const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace latinhib
