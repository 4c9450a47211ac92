#ifndef MPRP_WSPD_HPP
#define MPRP_WSPD_HPP

#include <vector>

#include "mprp/geometry.hpp"

namespace mprp {

struct WsPair {
  std::vector<int> a;  // site ids, ascending
  std::vector<int> b;
};

// Fair-split tree node. Leaves hold one point; the enclosing ball is the
// circumball of the bounding box.
struct SplitNode {
  std::vector<int> ids;
  Point center;
  double radius = 0.0;
  int left = -1;
  int right = -1;
};

struct PairDecomposition {
  std::vector<SplitNode> nodes;
  int root = -1;
  std::vector<WsPair> pairs;  // ordered by |A| + |B| descending
  double s = 1.0;
};

// Well-separated pair decomposition over (id, point) pairs with separation
// factor s: for every emitted pair, the gap between the enclosing balls is
// at least s times the larger radius, and every two distinct input points
// are separated by exactly one pair. Fewer than 2 points yield no pairs.
PairDecomposition build_wspd(const std::vector<int>& ids,
                             const std::vector<Point>& points, double s);

struct FleetAssignment {
  std::vector<std::vector<int>> subsets;  // one per vehicle, possibly empty
};

// Walks the ordered pair list: pair k hands A_k to vehicle 2k-1 and B_k to
// vehicle 2k (intersected with `unassigned`), removing those sites from the
// earlier subsets. An odd fleet's last vehicle takes A_k alone. When the
// decomposition has no pairs at all but sites remain, vehicle 1 takes the
// whole unassigned set.
FleetAssignment assign_fleet(const PairDecomposition& decomp,
                             const std::vector<int>& unassigned, int m);

// Tour-length inflation factor 1 + 1/(1 + sqrt(m)) of the per-subset
// decomposition relative to whole-set routing.
double spanner_length_factor(int m);

}  // namespace mprp

#endif
