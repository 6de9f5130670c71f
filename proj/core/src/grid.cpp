#include "oplab/grid.hpp"

#include <sstream>

#include "oplab/error.hpp"

namespace oplab {

GridSpec::GridSpec(double half_width, int points) : half_width_(half_width), points_(points) {
  std::ostringstream os;
  if (!(half_width > 0.0)) {
    os << "GridSpec: half width must be positive, got " << half_width;
  } else if (points < 16 || points % 2 != 0) {
    os << "GridSpec: need an even point count >= 16, got " << points;
  } else if (!(spacing() < 1.0)) {
    os << "GridSpec: spacing " << spacing() << " must be below 1";
  } else {
    return;
  }
  throw DomainError(os.str());
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> x(static_cast<size_t>(points_));
  for (int j = 0; j < points_; ++j) x[static_cast<size_t>(j)] = node(j);
  return x;
}

}  // namespace oplab
