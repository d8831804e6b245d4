#pragma once

#include <functional>
#include <vector>

#include "wallindex/form.hpp"

namespace wallindex::testing {

/// Coordinates of a flat grid point.
inline std::array<double, Grid::kMaxDim> coords(const Grid& g, std::size_t p) {
    const auto idx = g.unflatten(p);
    std::array<double, Grid::kMaxDim> x{};
    for (int a = 0; a < g.dim(); ++a) x[a] = g.coord(a, idx[a]);
    return x;
}

/// Scalar form with one component sampled from `f`.
inline Form sampled(const Grid& g, int degree, Mask mask,
                    const std::function<cplx(const std::array<double, Grid::kMaxDim>&)>& f) {
    Form out(g, degree, ValueType::scalar());
    std::vector<cplx> data(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) data[p] = f(coords(g, p));
    out.set_component(mask, std::move(data));
    return out;
}

inline Mask bit(int axis) { return static_cast<Mask>(1u << axis); }

/// max_p |a(p) - f(x_p)| over one component.
inline double max_error(const Form& a, Mask mask,
                        const std::function<cplx(const std::array<double, Grid::kMaxDim>&)>& f) {
    const auto c = a.component(mask);
    double worst = 0.0;
    for (std::size_t p = 0; p < a.grid().size(); ++p) {
        const cplx v = c.empty() ? cplx{} : c[p];
        worst = std::max(worst, std::abs(v - f(coords(a.grid(), p))));
    }
    return worst;
}

}  // namespace wallindex::testing
