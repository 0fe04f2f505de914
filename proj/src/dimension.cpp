#include "wmlab/dimension.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wmlab {

Dimension::Dimension(int d) : d_(d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("dimension must be odd and >= 3, got " + std::to_string(d));
    }
}

double Dimension::sqrt_c() const { return std::sqrt(c()); }

bool operator==(const Dimension& a, const Dimension& b) { return a.d() == b.d(); }

}  // namespace wmlab
