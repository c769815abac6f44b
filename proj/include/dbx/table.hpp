#pragma once

#include <vector>

namespace dbx {

// Strictly monotone cubic interpolation table (shape-preserving Hermite with
// Fritsch-Carlson slope limiting). Because the interpolant inherits strict
// monotonicity from the data, the inverse map is well defined and evaluated
// by a safeguarded Newton iteration.
class MonotoneTable {
  public:
    MonotoneTable() = default;

    // xs strictly increasing, ys strictly monotone (either direction),
    // both of size n >= 2. Throws ErrorCode::Validation otherwise.
    MonotoneTable(std::vector<double> xs, std::vector<double> ys);

    double value_at(double x) const;   // y(x), x clamped to 1e-12 slack
    double inverse_at(double y) const; // x with y(x) = y
    double deriv_at(double x) const;   // dy/dx

    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }
    double y_min() const;
    double y_max() const;
    std::size_t size() const { return xs_.size(); }
    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }

  private:
    std::size_t segment_of(double x) const;

    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> slopes_; // node derivatives dy/dx
    bool increasing_ = true;
};

// Piecewise cubic Hermite interpolant for general sampled smooth functions
// (no monotonicity requirement, no inverse). Node slopes come from
// fourth-order central differences, one-sided at the ends.
class HermiteSeries {
  public:
    HermiteSeries() = default;
    HermiteSeries(std::vector<double> xs, std::vector<double> ys);
    // As above, but with exact node slopes supplied by the caller.
    HermiteSeries(std::vector<double> xs, std::vector<double> ys,
                  std::vector<double> dydx);

    double value_at(double x) const;
    double deriv_at(double x) const;

    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }

  private:
    std::size_t segment_of(double x) const;

    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> slopes_;
};

} // namespace dbx
