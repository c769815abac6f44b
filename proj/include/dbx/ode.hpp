#pragma once

#include <array>
#include <cstddef>

namespace dbx {

// One classical fourth-order Runge-Kutta step for dy/dt = rhs(y, t).
template <std::size_t N, class RHS>
std::array<double, N> rk4_step(const std::array<double, N>& y, double t,
                               double h, RHS&& rhs) {
    using State = std::array<double, N>;
    auto axpy = [](const State& a, const State& b, double c) {
        State out;
        for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + c * b[i];
        return out;
    };

    State k1 = rhs(y, t);
    State k2 = rhs(axpy(y, k1, 0.5 * h), t + 0.5 * h);
    State k3 = rhs(axpy(y, k2, 0.5 * h), t + 0.5 * h);
    State k4 = rhs(axpy(y, k3, h), t + h);

    State out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

} // namespace dbx
