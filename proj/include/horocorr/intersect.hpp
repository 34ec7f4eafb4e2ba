#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

namespace horocorr {

/// Triangle mesh in Poincare ball coordinates (n = 2).
struct BallMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;
};

struct EmbeddingVerdict {
  bool embedded = true;
  /// Lowest intersecting index pair (first < second) and a point of the
  /// intersection.
  std::optional<std::array<std::size_t, 2>> witness;
  Eigen::Vector3d intersection_point = Eigen::Vector3d::Zero();
  std::size_t candidate_pairs_tested = 0;
  std::size_t degenerate_triangles = 0;
  std::size_t triangle_count = 0;
  double cell_size = 0.0;
};

/// Point where the two triangles meet, if they cross transversally. Coplanar
/// pairs are reported as not intersecting.
std::optional<Eigen::Vector3d> triangle_intersection(const std::array<Eigen::Vector3d, 3>& t1,
                                                     const std::array<Eigen::Vector3d, 3>& t2);

/// Self-intersection search: uniform hash with cell size twice the largest
/// triangle diameter, exact pair tests for triangles sharing a cell and no
/// vertex. Triangles with area below 1e-14 of the largest are skipped.
EmbeddingVerdict find_self_intersection(const BallMesh& mesh);

}  // namespace horocorr
