#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <absl/container/flat_hash_map.h>
#include <vector>

#include "fuchsian/paths.hpp"
#include "fuchsian/scheme.hpp"

namespace fuchsian {

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Mat2 = std::array<double, 4>;             // row-major [[a,b],[c,d]]
using IMat2 = std::array<std::int64_t, 4>;

Mat2 mul(const Mat2& x, const Mat2& y);
IMat2 mul(const IMat2& x, const IMat2& y);
Mat2 inverse(const Mat2& m);
std::complex<double> mobius(const Mat2& m, std::complex<double> z);

// A point of the closed upper half-plane, possibly the point at infinity.
struct HPoint {
  std::complex<double> z;
  bool infinite = false;
};

// A side of R in the upper half-plane, traversed with R on the left.
struct GeoSide {
  Label label;  // interior label
  HPoint from;
  HPoint to;
};

struct Realization {
  std::string name;
  Scheme scheme;
  bool exact = false;
  std::vector<Mat2> gens;    // indexed by label
  std::vector<IMat2> igens;  // exact case only
  std::complex<double> base_point{0.0, 1.0};
  double identification_radius = 1e-3;
  std::vector<GeoSide> polygon;  // empty when no geometry is attached

  Mat2 eval(const Word& w) const;
};

Realization realize_group(std::string_view name);
Realization realize_from_matrices(const Scheme& s, std::vector<Mat2> gens, std::vector<GeoSide> polygon = {});
Realization realize_from_integer_matrices(const Scheme& s, std::vector<IMat2> gens,
                                          std::vector<GeoSide> polygon = {});

// Largest deviation of each vertex relator from ±identity.
double relator_defect(const Realization& r);

// Group elements met so far, with a BFS ball of a fixed radius.
class Oracle : public DomainIds {
 public:
  Oracle(Realization r, int radius);

  const Realization& realization() const { return real_; }
  const Scheme& scheme() const { return real_.scheme; }
  int radius() const { return radius_; }
  int ball_size() const { return ball_size_; }
  std::vector<int> sphere(int n) const;
  std::vector<std::uint64_t> sphere_sizes() const;

  int id(const Word& w) override;
  std::optional<int> find(const Word& w) const;
  int step(int id, Label e) override;
  Word word_of(int id) const;
  // BFS depth; -1 for elements met outside the ball
  int depth(int id) const { return depth_[id]; }
  int distance(const Word& w);
  bool same_element(const Word& a, const Word& b);
  int neighbor(int id, Label e) const { return nbr_[static_cast<std::size_t>(id) * gens_ + e]; }
  // smallest gap seen between distinct elements inside the audit window
  // (twice the identification radius); infinite when nothing came close
  double min_gap() const { return min_gap_; }
  std::size_t element_count() const { return depth_.size(); }

 private:
  struct Key {
    std::int64_t x, y, z, w;
    bool operator==(const Key& o) const { return x == o.x && y == o.y && z == o.z && w == o.w; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ULL;
      h ^= static_cast<std::uint64_t>(k.y) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
      h ^= static_cast<std::uint64_t>(k.z) + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2);
      h ^= static_cast<std::uint64_t>(k.w) + 0x27D4EB2F165667C5ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  // matching element, and the smallest gap to any other nearby element
  std::optional<int> probe(const Mat2& m, const IMat2& im, double* gap) const;
  int insert(const Mat2& m, const IMat2& im, int parent, Label e, int depth);
  Key exact_key(const IMat2& im) const;

  Realization real_;
  int radius_;
  int gens_;
  int ball_size_ = 0;
  double cell_size_;
  std::vector<Mat2> mats_;
  std::vector<IMat2> imats_;
  std::vector<int> parent_;
  std::vector<Label> last_;
  std::vector<int> depth_;
  std::vector<int> nbr_;
  std::unordered_map<Key, std::vector<int>, KeyHash> table_;
  absl::flat_hash_map<Key, int, KeyHash> exact_table_;
  double min_gap_ = std::numeric_limits<double>::infinity();
};

// Union of all shortest domain paths from A to B, levelled by distance from A.
ThickPath brute_thickened(Oracle& o, const Domain& a, const Domain& b);
// All shortest domain paths from A to B.
std::vector<std::vector<int>> shortest_paths(Oracle& o, const Domain& a, const Domain& b);

struct VertexHit : OracleError {
  using OracleError::OracleError;
};
// Domains crossed by the geodesic segment from a to b (upper half-plane points).
std::vector<Domain> geodesic_cross_section(const Realization& r, std::complex<double> a, std::complex<double> b,
                                           std::uint64_t seed = 1);
// Side-by-side test: is z inside the closed polygon R?
bool inside_polygon(const Realization& r, std::complex<double> z, double slack = 0.0);

std::string ball_csv(const Oracle& o);

}  // namespace fuchsian
