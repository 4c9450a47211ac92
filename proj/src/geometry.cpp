#include "mprp/geometry.hpp"

#include <cmath>

namespace mprp {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace mprp
