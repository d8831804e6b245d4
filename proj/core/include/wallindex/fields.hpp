#pragma once

#include <random>
#include <vector>

#include "wallindex/form.hpp"

namespace wallindex {

/// Basis of the Lie algebra for a value type, each a row-major r x r matrix:
/// u(1) for gauge rank 1, su(r) for gauge rank >= 2, so(n) for frame values.
std::vector<std::vector<cplx>> lie_basis(ValueType value);

/// Real band-limited periodic field sum_k (a_k cos + b_k sin)(2 pi k.x / L)
/// over integer wave vectors with |k_mu| <= max_mode, coefficients uniform in
/// [-amplitude, amplitude].
std::vector<double> random_real_field(const Grid& grid, std::mt19937_64& rng, int max_mode,
                                      double amplitude);

/// Random band-limited Lie-algebra valued form of the given degree.
Form random_lie_form(const Grid& grid, int degree, ValueType value, std::mt19937_64& rng,
                     int max_mode = 1, double amplitude = 0.5);

/// Random band-limited scalar (complex) form.
Form random_scalar_form(const Grid& grid, int degree, std::mt19937_64& rng, int max_mode = 1,
                        double amplitude = 0.5);

/// Constant 1-form `matrix` dx^axis.
Form constant_one_form(const Grid& grid, ValueType value, int axis,
                       const std::vector<cplx>& matrix);

/// Gauge 1-form -i * field(x) * 1_r dx^axis for a real scalar field.
Form abelian_one_form(const Grid& grid, int rank, int axis, const std::vector<double>& field);

/// Gauge transformation of a rank-1 connection by exp(i chi): A -> A - i dchi.
Form abelian_gauge_transform(const Form& connection, const std::vector<double>& chi);

}  // namespace wallindex
