#include "dbx/table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbx/error.hpp"

namespace dbx {

namespace {

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

void check_grid(const std::vector<double>& xs, const std::vector<double>& ys,
                const char* who) {
    if (xs.size() != ys.size() || xs.size() < 2)
        fail(ErrorCode::Validation,
             std::string(who) + ": need matching vectors of size >= 2");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (!(xs[i] < xs[i + 1]))
            fail(ErrorCode::Validation,
                 std::string(who) + ": breakpoints not strictly increasing");
}

std::size_t find_segment(const std::vector<double>& xs, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    if (i == 0) return 0;
    if (i >= xs.size()) return xs.size() - 2;
    return i - 1;
}

double clamp_with_slack(double x, double lo, double hi, const char* who) {
    double slack = 1e-12 * (hi - lo) + 1e-300;
    if (x < lo - slack || x > hi + slack)
        fail(ErrorCode::Domain, std::string(who) + ": argument " +
                                    std::to_string(x) + " outside [" +
                                    std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    return std::clamp(x, lo, hi);
}

struct HermiteEval {
    double value;
    double deriv;
};

HermiteEval hermite_segment(double x, double xa, double xb, double ya,
                            double yb, double da, double db) {
    double h = xb - xa;
    double t = (x - xa) / h;
    double t2 = t * t;
    double t3 = t2 * t;
    HermiteEval out;
    out.value = (2.0 * t3 - 3.0 * t2 + 1.0) * ya + (t3 - 2.0 * t2 + t) * h * da +
                (-2.0 * t3 + 3.0 * t2) * yb + (t3 - t2) * h * db;
    out.deriv = (6.0 * t2 - 6.0 * t) * (ya - yb) / h +
                (3.0 * t2 - 4.0 * t + 1.0) * da + (3.0 * t2 - 2.0 * t) * db;
    return out;
}

} // namespace

MonotoneTable::MonotoneTable(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    check_grid(xs_, ys_, "MonotoneTable");

    std::size_t n = xs_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    int dir = sgn(ys_[1] - ys_[0]);
    if (dir == 0)
        fail(ErrorCode::Validation, "MonotoneTable: values not strictly monotone");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = xs_[i + 1] - xs_[i];
        delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
        if (sgn(delta[i]) != dir)
            fail(ErrorCode::Validation,
                 "MonotoneTable: values not strictly monotone");
    }
    increasing_ = dir > 0;

    slopes_.assign(n, 0.0);
    // Weighted harmonic means keep the interpolant monotone on each segment.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double w1 = 2.0 * h[i] + h[i - 1];
        double w2 = h[i] + 2.0 * h[i - 1];
        slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    auto endpoint = [&](double h0, double h1, double d0, double d1) {
        double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (sgn(d) != sgn(d0)) return 0.0;
        if (sgn(d0) != sgn(d1) && std::fabs(d) > 3.0 * std::fabs(d0))
            return 3.0 * d0;
        return d;
    };
    if (n == 2) {
        slopes_[0] = slopes_[1] = delta[0];
    } else {
        slopes_[0] = endpoint(h[0], h[1], delta[0], delta[1]);
        slopes_[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

std::size_t MonotoneTable::segment_of(double x) const {
    return find_segment(xs_, x);
}

double MonotoneTable::value_at(double x) const {
    if (xs_.empty()) fail(ErrorCode::Validation, "MonotoneTable: empty table");
    x = clamp_with_slack(x, xs_.front(), xs_.back(), "MonotoneTable::value_at");
    std::size_t i = segment_of(x);
    return hermite_segment(x, xs_[i], xs_[i + 1], ys_[i], ys_[i + 1],
                           slopes_[i], slopes_[i + 1])
        .value;
}

double MonotoneTable::deriv_at(double x) const {
    if (xs_.empty()) fail(ErrorCode::Validation, "MonotoneTable: empty table");
    x = clamp_with_slack(x, xs_.front(), xs_.back(), "MonotoneTable::deriv_at");
    std::size_t i = segment_of(x);
    return hermite_segment(x, xs_[i], xs_[i + 1], ys_[i], ys_[i + 1],
                           slopes_[i], slopes_[i + 1])
        .deriv;
}

double MonotoneTable::y_min() const {
    return increasing_ ? ys_.front() : ys_.back();
}

double MonotoneTable::y_max() const {
    return increasing_ ? ys_.back() : ys_.front();
}

double MonotoneTable::inverse_at(double y) const {
    if (xs_.empty()) fail(ErrorCode::Validation, "MonotoneTable: empty table");
    y = clamp_with_slack(y, y_min(), y_max(), "MonotoneTable::inverse_at");

    // Locate the bracketing segment in the (monotone) value array.
    std::size_t lo = 0, hi = xs_.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        bool left = increasing_ ? (y < ys_[mid]) : (y > ys_[mid]);
        (left ? hi : lo) = mid;
    }

    double xa = xs_[lo], xb = xs_[hi];
    double x = xa + (xb - xa) * (y - ys_[lo]) / (ys_[hi] - ys_[lo]);
    for (int iter = 0; iter < 100; ++iter) {
        HermiteEval e = hermite_segment(x, xs_[lo], xs_[hi], ys_[lo], ys_[hi],
                                        slopes_[lo], slopes_[hi]);
        double r = e.value - y;
        if (increasing_ ? (r > 0.0) : (r < 0.0))
            xb = x;
        else
            xa = x;
        double step = (std::fabs(e.deriv) > 1e-300) ? r / e.deriv : 0.0;
        double xn = x - step;
        if (!(xn > xa && xn < xb)) xn = 0.5 * (xa + xb); // bisection safeguard
        if (std::fabs(xn - x) < 1e-16 * (xs_.back() - xs_.front())) {
            x = xn;
            break;
        }
        x = xn;
    }
    return x;
}

HermiteSeries::HermiteSeries(std::vector<double> xs, std::vector<double> ys,
                             std::vector<double> dydx)
    : xs_(std::move(xs)), ys_(std::move(ys)), slopes_(std::move(dydx)) {
    check_grid(xs_, ys_, "HermiteSeries");
    if (slopes_.size() != xs_.size())
        fail(ErrorCode::Validation, "HermiteSeries: slope vector size mismatch");
}

HermiteSeries::HermiteSeries(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    check_grid(xs_, ys_, "HermiteSeries");
    std::size_t n = xs_.size();
    slopes_.assign(n, 0.0);

    bool uniform = true;
    double h = xs_[1] - xs_[0];
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::fabs((xs_[i + 1] - xs_[i]) - h) > 1e-9 * h) {
            uniform = false;
            break;
        }

    auto three_point = [&](std::size_t i) {
        // nonuniform central difference; degenerates to one-sided at the ends
        if (i == 0) {
            double h0 = xs_[1] - xs_[0], h1 = xs_[2] - xs_[1];
            return -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * ys_[0] +
                   (h0 + h1) / (h0 * h1) * ys_[1] -
                   h0 / (h1 * (h0 + h1)) * ys_[2];
        }
        if (i == n - 1) {
            double h1 = xs_[n - 2] - xs_[n - 3], h0 = xs_[n - 1] - xs_[n - 2];
            return h0 / (h1 * (h0 + h1)) * ys_[n - 3] -
                   (h0 + h1) / (h0 * h1) * ys_[n - 2] +
                   (2.0 * h0 + h1) / (h0 * (h0 + h1)) * ys_[n - 1];
        }
        double hl = xs_[i] - xs_[i - 1], hr = xs_[i + 1] - xs_[i];
        return (ys_[i + 1] * hl * hl - ys_[i - 1] * hr * hr +
                ys_[i] * (hr * hr - hl * hl)) /
               (hl * hr * (hl + hr));
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (uniform && n >= 5 && i >= 2 && i + 2 < n) {
            slopes_[i] = (ys_[i - 2] - 8.0 * ys_[i - 1] + 8.0 * ys_[i + 1] -
                          ys_[i + 2]) /
                         (12.0 * h);
        } else {
            slopes_[i] = three_point(i);
        }
    }
}

std::size_t HermiteSeries::segment_of(double x) const {
    return find_segment(xs_, x);
}

double HermiteSeries::value_at(double x) const {
    if (xs_.empty()) fail(ErrorCode::Validation, "HermiteSeries: empty series");
    x = clamp_with_slack(x, xs_.front(), xs_.back(), "HermiteSeries::value_at");
    std::size_t i = segment_of(x);
    return hermite_segment(x, xs_[i], xs_[i + 1], ys_[i], ys_[i + 1],
                           slopes_[i], slopes_[i + 1])
        .value;
}

double HermiteSeries::deriv_at(double x) const {
    if (xs_.empty()) fail(ErrorCode::Validation, "HermiteSeries: empty series");
    x = clamp_with_slack(x, xs_.front(), xs_.back(), "HermiteSeries::deriv_at");
    std::size_t i = segment_of(x);
    return hermite_segment(x, xs_[i], xs_[i + 1], ys_[i], ys_[i + 1],
                           slopes_[i], slopes_[i + 1])
        .deriv;
}

} // namespace dbx
