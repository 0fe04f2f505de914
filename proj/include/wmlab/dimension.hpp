#pragma once

namespace wmlab {

// Odd space dimension d >= 3 together with the Sobolev order m = (d+3)/2.
class Dimension {
public:
    explicit Dimension(int d);

    int d() const { return d_; }
    int m() const { return (d_ + 3) / 2; }
    // c = d - 2 appears in every closed form of the profile family.
    double c() const { return static_cast<double>(d_ - 2); }
    double sqrt_c() const;

private:
    int d_;
};

bool operator==(const Dimension& a, const Dimension& b);

}  // namespace wmlab
