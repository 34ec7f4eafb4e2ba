#include "horocorr/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "horocorr/parallel.hpp"

namespace horocorr {

namespace {

using Vector3 = Eigen::Vector3d;

std::optional<Vector3> segment_triangle(const Vector3& p, const Vector3& q,
                                        const std::array<Vector3, 3>& tri) {
  const Vector3 normal = (tri[1] - tri[0]).cross(tri[2] - tri[0]);
  const double scale = normal.squaredNorm();
  if (scale == 0.0) return std::nullopt;
  const double dp = normal.dot(p - tri[0]);
  const double dq = normal.dot(q - tri[0]);
  if ((dp > 0.0 && dq > 0.0) || (dp < 0.0 && dq < 0.0) || dp == dq) return std::nullopt;
  const double t = dp / (dp - dq);
  const Vector3 x = p + t * (q - p);
  const double slack = -1e-12 * scale;
  for (int k = 0; k < 3; ++k) {
    const Vector3& a = tri[static_cast<std::size_t>(k)];
    const Vector3& b = tri[static_cast<std::size_t>((k + 1) % 3)];
    if ((b - a).cross(x - a).dot(normal) < slack) return std::nullopt;
  }
  return x;
}

std::array<Vector3, 3> corners(const BallMesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  return {mesh.vertices[static_cast<std::size_t>(tri[0])],
          mesh.vertices[static_cast<std::size_t>(tri[1])],
          mesh.vertices[static_cast<std::size_t>(tri[2])]};
}

bool share_vertex(const std::array<int, 3>& a, const std::array<int, 3>& b) {
  for (int u : a)
    for (int v : b)
      if (u == v) return true;
  return false;
}

std::uint64_t cell_key(long long x, long long y, long long z) {
  constexpr long long kOffset = 1 << 20;
  return (static_cast<std::uint64_t>(x + kOffset) << 42) |
         (static_cast<std::uint64_t>(y + kOffset) << 21) | static_cast<std::uint64_t>(z + kOffset);
}

}  // namespace

std::optional<Vector3> triangle_intersection(const std::array<Vector3, 3>& t1,
                                             const std::array<Vector3, 3>& t2) {
  for (int k = 0; k < 3; ++k)
    if (auto x = segment_triangle(t1[static_cast<std::size_t>(k)], t1[static_cast<std::size_t>((k + 1) % 3)], t2))
      return x;
  for (int k = 0; k < 3; ++k)
    if (auto x = segment_triangle(t2[static_cast<std::size_t>(k)], t2[static_cast<std::size_t>((k + 1) % 3)], t1))
      return x;
  return std::nullopt;
}

EmbeddingVerdict find_self_intersection(const BallMesh& mesh) {
  EmbeddingVerdict verdict;
  const std::size_t count = mesh.triangles.size();
  verdict.triangle_count = count;
  if (count == 0) return verdict;

  std::vector<double> area(count), diameter(count);
  double max_area = 0.0, max_diameter = 0.0;
  Vector3 lo = Vector3::Constant(std::numeric_limits<double>::infinity());
  for (std::size_t t = 0; t < count; ++t) {
    const auto c = corners(mesh, t);
    area[t] = 0.5 * (c[1] - c[0]).cross(c[2] - c[0]).norm();
    diameter[t] = std::max({(c[1] - c[0]).norm(), (c[2] - c[1]).norm(), (c[0] - c[2]).norm()});
    max_area = std::max(max_area, area[t]);
    for (const auto& v : c) lo = lo.cwiseMin(v);
  }
  std::vector<char> usable(count, 1);
  for (std::size_t t = 0; t < count; ++t) {
    if (area[t] < 1e-14 * max_area) {
      usable[t] = 0;
      ++verdict.degenerate_triangles;
    } else {
      max_diameter = std::max(max_diameter, diameter[t]);
    }
  }
  if (max_diameter == 0.0) return verdict;
  const double cell = 2.0 * max_diameter;
  verdict.cell_size = cell;

  auto cell_range = [&](std::size_t t) {
    const auto c = corners(mesh, t);
    Vector3 bmin = c[0].cwiseMin(c[1]).cwiseMin(c[2]);
    Vector3 bmax = c[0].cwiseMax(c[1]).cwiseMax(c[2]);
    std::array<long long, 6> r{};
    for (int k = 0; k < 3; ++k) {
      r[static_cast<std::size_t>(k)] = static_cast<long long>(std::floor((bmin(k) - lo(k)) / cell));
      r[static_cast<std::size_t>(k + 3)] = static_cast<long long>(std::floor((bmax(k) - lo(k)) / cell));
    }
    return r;
  };

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
  for (std::size_t t = 0; t < count; ++t) {
    if (!usable[t]) continue;
    const auto r = cell_range(t);
    for (long long x = r[0]; x <= r[3]; ++x)
      for (long long y = r[1]; y <= r[4]; ++y)
        for (long long z = r[2]; z <= r[5]; ++z) grid[cell_key(x, y, z)].push_back(t);
  }

  struct Hit {
    std::optional<std::size_t> partner;
    Vector3 point = Vector3::Zero();
    std::size_t tested = 0;
  };
  std::vector<Hit> hits(count);
  parallel_for(count, [&](std::size_t i) {
    if (!usable[i]) return;
    std::vector<std::size_t> candidates;
    const auto r = cell_range(i);
    for (long long x = r[0]; x <= r[3]; ++x)
      for (long long y = r[1]; y <= r[4]; ++y)
        for (long long z = r[2]; z <= r[5]; ++z) {
          auto it = grid.find(cell_key(x, y, z));
          if (it == grid.end()) continue;
          for (std::size_t j : it->second)
            if (j > i) candidates.push_back(j);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    const auto ci = corners(mesh, i);
    for (std::size_t j : candidates) {
      if (share_vertex(mesh.triangles[i], mesh.triangles[j])) continue;
      ++hits[i].tested;
      if (auto x = triangle_intersection(ci, corners(mesh, j))) {
        hits[i].partner = j;
        hits[i].point = *x;
        break;
      }
    }
  });

  for (std::size_t i = 0; i < count; ++i) {
    verdict.candidate_pairs_tested += hits[i].tested;
    if (hits[i].partner && !verdict.witness) {
      verdict.embedded = false;
      verdict.witness = std::array<std::size_t, 2>{i, *hits[i].partner};
      verdict.intersection_point = hits[i].point;
    }
  }
  return verdict;
}

}  // namespace horocorr
