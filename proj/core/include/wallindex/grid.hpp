#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace wallindex {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform periodic grid on a flat torus T^d, optionally carrying a
/// grid-aligned co-dimension-1 wall.
///
/// Coordinates run over [0, L_mu) with x_i = i * L_mu / N_mu. A manifold grid
/// has even dimension and a wall plane at `wall_index` along `wall_axis`. A
/// wall grid (produced by wall_grid()) is the (d-1)-dimensional sub-grid of
/// that plane; it has no wall of its own and carries the induced orientation.
class Grid {
public:
    static constexpr int kMaxDim = 4;

    /// Manifold grid. Throws std::invalid_argument on violated invariants
    /// (dimension not in {2, 4}, N < 8 or odd, L <= 0, wall out of range).
    Grid(std::vector<int> points, std::vector<double> lengths, int wall_axis = 0,
         int wall_index = 0, int orientation = 1);

    /// n-torus with N points and circumference L on every axis.
    static Grid torus(int dim, int points, double length = kTwoPi, int wall_axis = 0,
                      int wall_index = 0, int orientation = 1);

    int dim() const { return dim_; }
    int points(int axis) const { return points_[axis]; }
    double length(int axis) const { return lengths_[axis]; }
    double spacing(int axis) const { return lengths_[axis] / points_[axis]; }
    double coord(int axis, int i) const { return i * spacing(axis); }
    double cell_volume() const;

    std::size_t size() const { return size_; }
    std::size_t stride(int axis) const { return strides_[axis]; }

    std::array<int, kMaxDim> unflatten(std::size_t flat) const;
    std::size_t flatten(const std::array<int, kMaxDim>& idx) const;

    bool is_wall_grid() const { return is_wall_grid_; }
    bool has_wall() const { return wall_axis_ >= 0; }
    int wall_axis() const { return wall_axis_; }
    int wall_index() const { return wall_index_; }
    double wall_position() const { return coord(wall_axis_, wall_index_); }

    /// +1 or -1; multiplies every integral of a top-degree form.
    int orientation() const { return orientation_; }

    /// Sub-grid of the wall plane with the induced orientation
    /// orientation * (-1)^wall_axis (outward normal first).
    Grid wall_grid() const;

    /// Same grid with the orientation flag reversed.
    Grid with_orientation(int orientation) const;

    bool same_points(const Grid& other) const;
    bool operator==(const Grid& other) const;

private:
    Grid() = default;
    void finish();

    int dim_ = 0;
    std::array<int, kMaxDim> points_{};
    std::array<double, kMaxDim> lengths_{};
    std::array<std::size_t, kMaxDim> strides_{};
    std::size_t size_ = 0;
    int wall_axis_ = -1;
    int wall_index_ = 0;
    int orientation_ = 1;
    bool is_wall_grid_ = false;
};

/// Dense N x N Fourier differentiation matrix for a periodic axis of length L
/// (trigonometric interpolation, Nyquist mode differentiated to zero). Exact on
/// real band-limited data with |k| < N/2.
std::vector<double> fourier_diff_matrix(int points, double length);

}  // namespace wallindex
