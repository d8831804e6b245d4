#include "wallindex/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace wallindex {

std::vector<std::vector<cplx>> lie_basis(ValueType value) {
    const int r = value.rank;
    const std::size_t blk = static_cast<std::size_t>(r) * r;
    std::vector<std::vector<cplx>> basis;
    auto at = [r](int i, int j) { return static_cast<std::size_t>(i) * r + j; };
    const cplx I(0.0, 1.0);
    switch (value.space) {
    case ValueSpace::scalar:
        basis.push_back({cplx(1.0)});
        break;
    case ValueSpace::gauge:
        if (r == 1) {
            basis.push_back({I});
            break;
        }
        // i * (generalized Gell-Mann matrices) / 2
        for (int a = 0; a < r; ++a) {
            for (int b = a + 1; b < r; ++b) {
                std::vector<cplx> sym(blk), asym(blk);
                sym[at(a, b)] = sym[at(b, a)] = 0.5 * I;
                asym[at(a, b)] = 0.5;
                asym[at(b, a)] = -0.5;
                basis.push_back(std::move(sym));
                basis.push_back(std::move(asym));
            }
        }
        for (int l = 1; l < r; ++l) {
            std::vector<cplx> diag(blk);
            const double norm = 1.0 / std::sqrt(2.0 * l * (l + 1));
            for (int j = 0; j < l; ++j) diag[at(j, j)] = I * norm;
            diag[at(l, l)] = -I * (l * norm);
            basis.push_back(std::move(diag));
        }
        break;
    case ValueSpace::frame:
        for (int a = 0; a < r; ++a) {
            for (int b = a + 1; b < r; ++b) {
                std::vector<cplx> e(blk);
                e[at(a, b)] = 1.0;
                e[at(b, a)] = -1.0;
                basis.push_back(std::move(e));
            }
        }
        break;
    }
    return basis;
}

std::vector<double> random_real_field(const Grid& grid, std::mt19937_64& rng, int max_mode,
                                      double amplitude) {
    const int d = grid.dim();
    const int width = 2 * max_mode + 1;
    int count = 1;
    for (int a = 0; a < d; ++a) count *= width;
    std::uniform_real_distribution<double> coef(-amplitude, amplitude);

    // per-axis phase tables e^{i 2 pi k x / L}
    std::vector<std::vector<cplx>> phase(d);
    for (int a = 0; a < d; ++a) {
        const int n = grid.points(a);
        phase[a].resize(static_cast<std::size_t>(width) * n);
        for (int k = -max_mode; k <= max_mode; ++k) {
            for (int i = 0; i < n; ++i) {
                phase[a][static_cast<std::size_t>(k + max_mode) * n + i] =
                    std::polar(1.0, kTwoPi * k * i / n);
            }
        }
    }
    // a cos + b sin = Re[(a - i b) e^{i k.x}], summed one axis at a time
    std::vector<cplx> cur(static_cast<std::size_t>(count));
    for (auto& c : cur) {
        const double re = coef(rng);
        c = cplx(re, -coef(rng));
    }
    std::vector<std::size_t> dims(static_cast<std::size_t>(d), static_cast<std::size_t>(width));
    for (int a = 0; a < d; ++a) {
        const std::size_t n = static_cast<std::size_t>(grid.points(a));
        std::size_t outer = 1, inner = 1;
        for (int b = 0; b < a; ++b) outer *= dims[b];
        for (int b = a + 1; b < d; ++b) inner *= dims[b];
        std::vector<cplx> next(outer * n * inner);
        for (std::size_t o = 0; o < outer; ++o) {
            for (int k = 0; k < width; ++k) {
                const cplx* src = &cur[(o * width + k) * inner];
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx ph = phase[a][static_cast<std::size_t>(k) * n + i];
                    cplx* dst = &next[(o * n + i) * inner];
                    for (std::size_t j = 0; j < inner; ++j) dst[j] += ph * src[j];
                }
            }
        }
        cur = std::move(next);
        dims[a] = n;
    }
    std::vector<double> field(grid.size());
    for (std::size_t p = 0; p < field.size(); ++p) field[p] = cur[p].real();
    return field;
}

Form random_lie_form(const Grid& grid, int degree, ValueType value, std::mt19937_64& rng,
                     int max_mode, double amplitude) {
    Form out(grid, degree, value);
    const auto basis = lie_basis(value);
    const std::size_t blk = out.block();
    for (unsigned m = 0; m < (1u << grid.dim()); ++m) {
        if (mask_degree(static_cast<Mask>(m)) != degree) continue;
        std::vector<cplx> data(grid.size() * blk);
        for (const auto& gen : basis) {
            const auto f = random_real_field(grid, rng, max_mode, amplitude);
            for (std::size_t p = 0; p < grid.size(); ++p) {
                for (std::size_t e = 0; e < blk; ++e) data[p * blk + e] += f[p] * gen[e];
            }
        }
        out.set_component(static_cast<Mask>(m), std::move(data));
    }
    return out;
}

Form random_scalar_form(const Grid& grid, int degree, std::mt19937_64& rng, int max_mode,
                        double amplitude) {
    Form out(grid, degree, ValueType::scalar());
    for (unsigned m = 0; m < (1u << grid.dim()); ++m) {
        if (mask_degree(static_cast<Mask>(m)) != degree) continue;
        const auto re = random_real_field(grid, rng, max_mode, amplitude);
        const auto im = random_real_field(grid, rng, max_mode, amplitude);
        std::vector<cplx> data(grid.size());
        for (std::size_t p = 0; p < grid.size(); ++p) data[p] = cplx(re[p], im[p]);
        out.set_component(static_cast<Mask>(m), std::move(data));
    }
    return out;
}

Form constant_one_form(const Grid& grid, ValueType value, int axis,
                       const std::vector<cplx>& matrix) {
    Form out(grid, 1, value);
    const std::size_t blk = out.block();
    if (matrix.size() != blk) throw std::invalid_argument("constant_one_form: bad matrix size");
    std::vector<cplx> data(grid.size() * blk);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        std::copy(matrix.begin(), matrix.end(), data.begin() + static_cast<long>(p * blk));
    }
    out.set_component(static_cast<Mask>(1u << axis), std::move(data));
    return out;
}

Form abelian_one_form(const Grid& grid, int rank, int axis, const std::vector<double>& field) {
    if (field.size() != grid.size()) throw std::invalid_argument("abelian_one_form: bad field size");
    Form out(grid, 1, ValueType::gauge(rank));
    const std::size_t blk = out.block();
    std::vector<cplx> data(grid.size() * blk);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        for (int i = 0; i < rank; ++i) {
            data[p * blk + static_cast<std::size_t>(i) * rank + i] = cplx(0.0, -field[p]);
        }
    }
    out.set_component(static_cast<Mask>(1u << axis), std::move(data));
    return out;
}

Form abelian_gauge_transform(const Form& connection, const std::vector<double>& chi) {
    if (connection.rank() != 1) {
        throw std::invalid_argument("abelian_gauge_transform: rank-1 connection expected");
    }
    Form chi_form(connection.grid(), 0, connection.value());
    std::vector<cplx> data(chi.size());
    for (std::size_t p = 0; p < chi.size(); ++p) data[p] = chi[p];
    chi_form.set_component(0, std::move(data));
    return connection - cplx(0.0, 1.0) * ext_d(chi_form);
}

}  // namespace wallindex
