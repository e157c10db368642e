#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuchsian/coding.hpp"
#include "fuchsian/paths.hpp"

namespace fuchsian {

struct WalkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Placing the left past domain at R, the left future is left_future_word(s)^-1 R and the
// right future is right_future_word(s)^-1 R.
Word left_future_word(const Scheme& s, const State& st);
Word right_future_word(const Scheme& s, const State& st);
// right past relative to the left past, for states with two past domains
Word right_past(const Scheme& s, const State& st);

bool two_pasts(Kind k);
bool two_futures(Kind k);

// right future word of the last state, then the left future words back to the
// first; the path ends at w^-1 R.
Word path_word(const Coding& c, const std::vector<int>& path);

ThickPath realize(const Coding& c, const std::vector<int>& path, const Domain& base = {});
std::vector<int> states_of(const Coding& c, const ThickPath& t, DomainIds& ids);

// Tessellation vertex of domain `id` at polygon corner `corner`, canonicalised
// over its flower.
class VertexIndex {
 public:
  VertexIndex(const Scheme& s, DomainIds& ids) : s_(s), ids_(ids) {}
  std::int64_t vertex(int id, int corner);
  // petals around the vertex as (domain id, corner), in walk order
  std::vector<std::pair<int, int>> petals(int id, int corner);
  DomainIds& ids() { return ids_; }
  const Scheme& scheme() const { return s_; }
  // exterior label e with step(u, e) == w, if u and w share a side
  std::optional<Label> label_between(int u, int w);

 private:
  const Scheme& s_;
  DomainIds& ids_;
  std::map<std::pair<int, int>, std::int64_t> cache_;
};

struct LocalCertificate {
  bool ok = true;
  std::string reason;
  int domain = -1;  // path position of a domain at the offending vertex
  int corner = -1;
  int petals_inside = 0;
};

struct BoundaryVertex {
  std::int64_t vertex = 0;  // canonical id, or -1 at a boundary end
  int petals = 0;           // n(v)
  int inside = 0;           // consecutive petals of the path at v
  int position = -1;        // first path position seen at v
  int corner = -1;
};

// Formal boundary curve of a domain path, merged at shared vertices.
std::vector<BoundaryVertex> boundary_curve(VertexIndex& vx, const std::vector<int>& path);
LocalCertificate is_locally_shortest(const Scheme& s, const std::vector<Domain>& path, DomainIds& ids);
// canonical vertices that convexification processes, read off the initial boundary curve
std::set<std::int64_t> convexification_set(const Scheme& s, const std::vector<Domain>& path, DomainIds& ids);

struct ConvexifyTrace {
  std::vector<std::int64_t> processed;  // canonical vertices, in processing order
};

// Convexification of a locally shortest domain path. seed 0 processes eligible
// vertices lowest index first; other seeds pick a random eligible vertex.
ThickPath convexify(const Scheme& s, const std::vector<Domain>& path, DomainIds& ids, std::uint64_t seed = 0,
                    ConvexifyTrace* trace = nullptr);

void for_each_shortest_path(const Scheme& s, const ThickPath& t, DomainIds& ids,
                            const std::function<void(const std::vector<Domain>&)>& visit);
std::vector<std::vector<Domain>> shortest_paths_in(const Scheme& s, const ThickPath& t, DomainIds& ids);

// levels as sorted id sets, for comparisons
std::vector<std::vector<int>> level_ids(const ThickPath& t, DomainIds& ids);

std::string thickpath_json(const Scheme& s, const ThickPath& t);
std::string thickpath_svg(const Scheme& s, const ThickPath& t, DomainIds& ids);

}  // namespace fuchsian
