#include "wallindex/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wallindex {

namespace {

void check_axis(int points, double length, int axis) {
    if (points < 8 || points % 2 != 0) {
        throw std::invalid_argument("grid axis " + std::to_string(axis) +
                                    ": points must be even and >= 8, got " +
                                    std::to_string(points));
    }
    if (!(length > 0.0)) {
        throw std::invalid_argument("grid axis " + std::to_string(axis) +
                                    ": length must be positive");
    }
}

}  // namespace

Grid::Grid(std::vector<int> points, std::vector<double> lengths, int wall_axis,
           int wall_index, int orientation) {
    if (points.size() != lengths.size()) {
        throw std::invalid_argument("grid: points and lengths differ in size");
    }
    const int d = static_cast<int>(points.size());
    if (d != 2 && d != 4) {
        throw std::invalid_argument("grid: manifold dimension must be 2 or 4, got " +
                                    std::to_string(d));
    }
    if (orientation != 1 && orientation != -1) {
        throw std::invalid_argument("grid: orientation must be +1 or -1");
    }
    dim_ = d;
    for (int a = 0; a < d; ++a) {
        check_axis(points[a], lengths[a], a);
        points_[a] = points[a];
        lengths_[a] = lengths[a];
    }
    if (wall_axis < 0 || wall_axis >= d) {
        throw std::invalid_argument("grid: wall axis out of range");
    }
    if (wall_index < 0 || wall_index >= points_[wall_axis]) {
        throw std::invalid_argument("grid: wall index out of range");
    }
    wall_axis_ = wall_axis;
    wall_index_ = wall_index;
    orientation_ = orientation;
    finish();
}

Grid Grid::torus(int dim, int points, double length, int wall_axis, int wall_index,
                 int orientation) {
    return Grid(std::vector<int>(dim, points), std::vector<double>(dim, length), wall_axis,
                wall_index, orientation);
}

void Grid::finish() {
    std::size_t s = 1;
    for (int a = dim_ - 1; a >= 0; --a) {
        strides_[a] = s;
        s *= static_cast<std::size_t>(points_[a]);
    }
    size_ = s;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= spacing(a);
    return v;
}

std::array<int, Grid::kMaxDim> Grid::unflatten(std::size_t flat) const {
    std::array<int, kMaxDim> idx{};
    for (int a = 0; a < dim_; ++a) {
        idx[a] = static_cast<int>(flat / strides_[a]);
        flat %= strides_[a];
    }
    return idx;
}

std::size_t Grid::flatten(const std::array<int, kMaxDim>& idx) const {
    std::size_t f = 0;
    for (int a = 0; a < dim_; ++a) f += static_cast<std::size_t>(idx[a]) * strides_[a];
    return f;
}

Grid Grid::wall_grid() const {
    if (!has_wall()) throw std::invalid_argument("grid has no wall");
    Grid g;
    g.dim_ = dim_ - 1;
    int k = 0;
    for (int a = 0; a < dim_; ++a) {
        if (a == wall_axis_) continue;
        g.points_[k] = points_[a];
        g.lengths_[k] = lengths_[a];
        ++k;
    }
    g.orientation_ = (wall_axis_ % 2 == 0) ? orientation_ : -orientation_;
    g.is_wall_grid_ = true;
    g.finish();
    return g;
}

Grid Grid::with_orientation(int orientation) const {
    if (orientation != 1 && orientation != -1) {
        throw std::invalid_argument("grid: orientation must be +1 or -1");
    }
    Grid g = *this;
    g.orientation_ = orientation;
    return g;
}

bool Grid::same_points(const Grid& other) const {
    if (dim_ != other.dim_) return false;
    for (int a = 0; a < dim_; ++a) {
        if (points_[a] != other.points_[a] || lengths_[a] != other.lengths_[a]) return false;
    }
    return true;
}

bool Grid::operator==(const Grid& other) const {
    return same_points(other) && wall_axis_ == other.wall_axis_ &&
           wall_index_ == other.wall_index_ && orientation_ == other.orientation_ &&
           is_wall_grid_ == other.is_wall_grid_;
}

std::vector<double> fourier_diff_matrix(int points, double length) {
    const int n = points;
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    const double scale = kTwoPi / length;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const int m = j - k;
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            d[static_cast<std::size_t>(j) * n + k] =
                scale * 0.5 * sign / std::tan(m * std::numbers::pi / n);
        }
    }
    return d;
}

}  // namespace wallindex
