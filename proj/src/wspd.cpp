#include "mprp/wspd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mprp {

namespace {

struct Builder {
  const std::vector<int>& ids;
  const std::vector<Point>& pts;
  double s;
  PairDecomposition out;

  const Point& pt(int idx) const { return pts[idx]; }

  int make_node(std::vector<int> members) {
    SplitNode node;
    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (int i : members) {
      xmin = std::min(xmin, pt(i).x);
      xmax = std::max(xmax, pt(i).x);
      ymin = std::min(ymin, pt(i).y);
      ymax = std::max(ymax, pt(i).y);
    }
    node.center = {(xmin + xmax) / 2.0, (ymin + ymax) / 2.0};
    node.radius = std::hypot(xmax - xmin, ymax - ymin) / 2.0;
    node.ids = std::move(members);
    out.nodes.push_back(std::move(node));
    return static_cast<int>(out.nodes.size()) - 1;
  }

  // Fair split: halve the longer bounding-box side. Coincident or collinear
  // clusters fall back to a lexicographic (x, y, id) median split so the
  // recursion always makes progress.
  int build(std::vector<int> members) {
    const int node = make_node(std::move(members));
    auto& mem = out.nodes[node].ids;
    if (mem.size() <= 1) return node;

    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (int i : mem) {
      xmin = std::min(xmin, pt(i).x);
      xmax = std::max(xmax, pt(i).x);
      ymin = std::min(ymin, pt(i).y);
      ymax = std::max(ymax, pt(i).y);
    }
    const bool split_x = (xmax - xmin) >= (ymax - ymin);
    const double mid = split_x ? (xmin + xmax) / 2.0 : (ymin + ymax) / 2.0;

    std::vector<int> lo, hi;
    for (int i : mem) {
      const double c = split_x ? pt(i).x : pt(i).y;
      (c <= mid ? lo : hi).push_back(i);
    }
    if (lo.empty() || hi.empty()) {
      std::vector<int> sorted = mem;
      std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
        if (pt(a).x != pt(b).x) return pt(a).x < pt(b).x;
        if (pt(a).y != pt(b).y) return pt(a).y < pt(b).y;
        return ids[a] < ids[b];
      });
      const std::size_t half = sorted.size() / 2;
      lo.assign(sorted.begin(), sorted.begin() + half);
      hi.assign(sorted.begin() + half, sorted.end());
    }
    const int l = build(std::move(lo));
    const int r = build(std::move(hi));
    out.nodes[node].left = l;
    out.nodes[node].right = r;
    return node;
  }

  bool well_separated(int u, int v) const {
    const SplitNode& a = out.nodes[u];
    const SplitNode& b = out.nodes[v];
    const double gap = distance(a.center, b.center) - a.radius - b.radius;
    return gap >= s * std::max(a.radius, b.radius);
  }

  void find_pairs(int u, int v) {
    if (well_separated(u, v)) {
      WsPair p;
      for (int i : out.nodes[u].ids) p.a.push_back(ids[i]);
      for (int i : out.nodes[v].ids) p.b.push_back(ids[i]);
      std::sort(p.a.begin(), p.a.end());
      std::sort(p.b.begin(), p.b.end());
      out.pairs.push_back(std::move(p));
      return;
    }
    // Split the node with the larger ball; ties go to the larger set, then
    // to the lower node index for determinism.
    const SplitNode& a = out.nodes[u];
    const SplitNode& b = out.nodes[v];
    bool split_u;
    if (a.radius != b.radius) {
      split_u = a.radius > b.radius;
    } else if (a.ids.size() != b.ids.size()) {
      split_u = a.ids.size() > b.ids.size();
    } else {
      split_u = u < v;
    }
    if (split_u) {
      find_pairs(out.nodes[u].left, v);
      find_pairs(out.nodes[u].right, v);
    } else {
      find_pairs(u, out.nodes[v].left);
      find_pairs(u, out.nodes[v].right);
    }
  }

  void decompose(int node) {
    const SplitNode& n = out.nodes[node];
    if (n.left < 0) return;
    find_pairs(n.left, n.right);
    decompose(n.left);
    decompose(n.right);
  }
};

}  // namespace

PairDecomposition build_wspd(const std::vector<int>& ids,
                             const std::vector<Point>& points, double s) {
  if (ids.size() != points.size())
    throw std::invalid_argument("build_wspd: ids/points size mismatch");
  if (s < 1.0) throw std::invalid_argument("build_wspd: separation factor must be >= 1");

  Builder builder{ids, points, s, {}};
  builder.out.s = s;
  if (!ids.empty()) {
    std::vector<int> all(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) all[i] = static_cast<int>(i);
    builder.out.root = builder.build(std::move(all));
    builder.decompose(builder.out.root);
  }
  std::stable_sort(builder.out.pairs.begin(), builder.out.pairs.end(),
                   [](const WsPair& p, const WsPair& q) {
                     const std::size_t sp = p.a.size() + p.b.size();
                     const std::size_t sq = q.a.size() + q.b.size();
                     if (sp != sq) return sp > sq;
                     if (p.a != q.a) return p.a < q.a;
                     return p.b < q.b;
                   });
  return builder.out;
}

FleetAssignment assign_fleet(const PairDecomposition& decomp,
                             const std::vector<int>& unassigned, int m) {
  if (m < 1) throw std::invalid_argument("assign_fleet: m must be >= 1");
  FleetAssignment out;
  out.subsets.assign(static_cast<std::size_t>(m), {});

  auto filter = [&](const std::vector<int>& src) {
    std::vector<int> kept;
    for (int id : src)
      if (std::find(unassigned.begin(), unassigned.end(), id) != unassigned.end())
        kept.push_back(id);
    return kept;
  };
  auto remove_from_earlier = [&](const std::vector<int>& taken, int upto) {
    for (int k = 0; k < upto; ++k)
      std::erase_if(out.subsets[k], [&](int id) {
        return std::find(taken.begin(), taken.end(), id) != taken.end();
      });
  };

  int vehicle = 0;
  for (const WsPair& p : decomp.pairs) {
    if (vehicle >= m) break;
    const std::vector<int> a = filter(p.a);
    remove_from_earlier(a, vehicle);
    out.subsets[vehicle++] = a;
    if (vehicle >= m) break;  // odd fleet: B_k stays in the pool
    const std::vector<int> b = filter(p.b);
    remove_from_earlier(b, vehicle);
    out.subsets[vehicle++] = b;
  }
  if (decomp.pairs.empty() && !unassigned.empty())
    out.subsets[0] = unassigned;
  return out;
}

double spanner_length_factor(int m) {
  if (m < 1) throw std::invalid_argument("spanner_length_factor: m must be >= 1");
  return 1.0 + 1.0 / (1.0 + std::sqrt(static_cast<double>(m)));
}

}  // namespace mprp
