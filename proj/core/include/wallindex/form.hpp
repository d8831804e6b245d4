#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wallindex/grid.hpp"

namespace wallindex {

/// What the coefficient matrices of a form represent.
enum class ValueSpace {
    scalar,  ///< 1x1, e.g. traces and characteristic forms
    gauge,   ///< anti-Hermitian r x r (u(r), su(r))
    frame,   ///< real antisymmetric n x n embedded in complex (so(n))
};

struct ValueType {
    ValueSpace space = ValueSpace::scalar;
    int rank = 1;

    static ValueType scalar() { return {ValueSpace::scalar, 1}; }
    static ValueType gauge(int r) { return {ValueSpace::gauge, r}; }
    static ValueType frame(int n) { return {ValueSpace::frame, n}; }

    bool operator==(const ValueType&) const = default;
};

/// Bit set of coordinate differentials; bit mu set <=> dx^mu present.
using Mask = std::uint8_t;

int mask_degree(Mask m);
/// Sign of dx^I ^ dx^J relative to the canonically ordered dx^(I u J); 0 if
/// I and J overlap.
int merge_sign(Mask a, Mask b);

/// Matrix-valued differential form of fixed degree sampled on a periodic grid.
///
/// Only canonically ordered multi-indices are stored; a missing component is
/// identically zero. Each component holds size() * rank^2 coefficients laid out
/// point-major, each point a row-major rank x rank matrix.
class Form {
public:
    Form(Grid grid, int degree, ValueType value);

    const Grid& grid() const { return grid_; }
    int degree() const { return degree_; }
    ValueType value() const { return value_; }
    int rank() const { return value_.rank; }
    std::size_t block() const {
        return static_cast<std::size_t>(value_.rank) * value_.rank;
    }

    bool has(Mask m) const { return comps_.count(m) != 0; }
    const std::map<Mask, std::vector<cplx>>& components() const { return comps_; }

    /// Coefficients of a stored component, empty span if absent.
    std::span<const cplx> component(Mask m) const;
    /// Creates the component (zero-filled) if absent.
    std::vector<cplx>& component_mut(Mask m);
    void set_component(Mask m, std::vector<cplx> data);

    /// Coefficient of dx^{i1} ^ ... ^ dx^{ip} for an arbitrary index order,
    /// with the reordering sign applied.
    cplx coefficient(std::span<const int> indices, std::size_t point, int row = 0,
                     int col = 0) const;

    double max_norm() const;
    bool is_zero() const { return comps_.empty(); }

private:
    Grid grid_;
    int degree_;
    ValueType value_;
    std::map<Mask, std::vector<cplx>> comps_;
};

/// Inhomogeneous form: one homogeneous part per degree, over a common grid
/// and value type.
class MixedForm {
public:
    MixedForm(Grid grid, ValueType value);

    const Grid& grid() const { return grid_; }
    ValueType value() const { return value_; }
    int max_degree() const { return grid_.dim(); }

    bool has(int degree) const;
    /// Stored part or a zero form of that degree.
    Form part(int degree) const;
    void set(Form f);
    void add(const Form& f);

    double max_norm() const;

private:
    Grid grid_;
    ValueType value_;
    std::vector<std::optional<Form>> parts_;
};

// Linear structure. Operands must share grid and value type.
Form operator+(const Form& a, const Form& b);
Form operator-(const Form& a, const Form& b);
Form operator*(cplx s, const Form& a);
MixedForm operator+(const MixedForm& a, const MixedForm& b);
MixedForm operator-(const MixedForm& a, const MixedForm& b);
MixedForm operator*(cplx s, const MixedForm& a);

/// Graded product with pointwise matrix multiplication. Scalar operands act
/// by scalar multiplication on matrix-valued ones.
Form wedge(const Form& a, const Form& b);
/// tr(a ^ b) without forming the matrix product.
Form trace_wedge(const Form& a, const Form& b);
/// Product of mixed forms truncated at the grid dimension.
MixedForm wedge(const MixedForm& a, const MixedForm& b);

/// Exterior derivative with spectral differentiation on every periodic axis.
/// Throws on top-degree input.
Form ext_d(const Form& a);
/// Derivative of every part below top degree.
MixedForm ext_d(const MixedForm& a);

/// Pointwise matrix trace; result is scalar-valued.
Form trace(const Form& a);

/// Integration domains for top-degree forms.
enum class Domain {
    full,        ///< the whole torus
    wall,        ///< a wall grid; form must live on Grid::wall_grid()
    half_plus,   ///< s in (s0, s0 + L/2]
    half_minus,  ///< s in [s0 - L/2, s0)
};

/// Trapezoidal sum of a scalar top-degree form times the grid orientation.
///
/// Half domains use one-sided weights: interior planes get the full spacing,
/// the antipodal plane and the wall plane get half. The wall-plane samples are
/// taken to be the one-sided limit from that half, so half_plus + half_minus
/// reproduces `full` exactly whenever the integrand is continuous.
cplx integrate(const Form& a, Domain domain = Domain::full);

/// Pullback to the wall plane: components containing the wall differential
/// are dropped, the rest sampled at s = s0.
Form restrict_to_wall(const Form& a);

/// Pullback under the coordinate relabelling x'^{perm[mu]} = x^mu.
Form permute_axes(const Form& a, std::span<const int> perm);

/// Scalar constant 0-form.
Form constant_form(const Grid& grid, cplx value);

}  // namespace wallindex
