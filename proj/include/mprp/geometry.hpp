#ifndef MPRP_GEOMETRY_HPP
#define MPRP_GEOMETRY_HPP

namespace mprp {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

}  // namespace mprp

#endif
