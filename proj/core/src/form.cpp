#include "wallindex/form.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wallindex {

int mask_degree(Mask m) { return std::popcount(static_cast<unsigned>(m)); }

int merge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (int i = 0; i < 8; ++i) {
        if (!(a & (1u << i))) continue;
        // every element of b below i must move in front of i
        inversions += std::popcount(static_cast<unsigned>(b) & ((1u << i) - 1u));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Form

Form::Form(Grid grid, int degree, ValueType value)
    : grid_(std::move(grid)), degree_(degree), value_(value) {
    if (degree < 0 || degree > grid_.dim()) {
        throw std::invalid_argument("form degree " + std::to_string(degree) +
                                    " out of range for dimension " +
                                    std::to_string(grid_.dim()));
    }
    if (value.rank < 1) throw std::invalid_argument("form rank must be positive");
    if (value.space == ValueSpace::scalar && value.rank != 1) {
        throw std::invalid_argument("scalar forms have rank 1");
    }
}

std::span<const cplx> Form::component(Mask m) const {
    auto it = comps_.find(m);
    if (it == comps_.end()) return {};
    return it->second;
}

std::vector<cplx>& Form::component_mut(Mask m) {
    if (mask_degree(m) != degree_ || (m >> grid_.dim()) != 0) {
        throw std::invalid_argument("component mask does not match form degree");
    }
    auto it = comps_.find(m);
    if (it == comps_.end()) {
        it = comps_.emplace(m, std::vector<cplx>(grid_.size() * block(), cplx{})).first;
    }
    return it->second;
}

void Form::set_component(Mask m, std::vector<cplx> data) {
    if (data.size() != grid_.size() * block()) {
        throw std::invalid_argument("component data has wrong size");
    }
    component_mut(m) = std::move(data);
}

cplx Form::coefficient(std::span<const int> indices, std::size_t point, int row,
                       int col) const {
    if (static_cast<int>(indices.size()) != degree_) {
        throw std::invalid_argument("coefficient: index count differs from degree");
    }
    Mask m = 0;
    int sign = 1;
    for (int idx : indices) {
        const Mask bit = static_cast<Mask>(1u << idx);
        if (m & bit) return {};
        sign *= merge_sign(m, bit);
        m |= bit;
    }
    auto c = component(m);
    if (c.empty()) return {};
    return static_cast<double>(sign) *
           c[point * block() + static_cast<std::size_t>(row) * rank() + col];
}

double Form::max_norm() const {
    double m = 0.0;
    for (const auto& [mask, data] : comps_) {
        for (const auto& z : data) m = std::max(m, std::abs(z));
    }
    return m;
}

// ---------------------------------------------------------------------------
// MixedForm

MixedForm::MixedForm(Grid grid, ValueType value)
    : grid_(std::move(grid)), value_(value), parts_(static_cast<std::size_t>(grid_.dim()) + 1) {}

bool MixedForm::has(int degree) const {
    return degree >= 0 && degree <= grid_.dim() && parts_[degree].has_value();
}

Form MixedForm::part(int degree) const {
    if (has(degree)) return *parts_[degree];
    return Form(grid_, degree, value_);
}

void MixedForm::set(Form f) {
    if (!f.grid().same_points(grid_) || !(f.value() == value_)) {
        throw std::invalid_argument("mixed form: part does not match grid or value type");
    }
    const int p = f.degree();
    parts_[p] = std::move(f);
}

void MixedForm::add(const Form& f) {
    if (has(f.degree())) {
        set(*parts_[f.degree()] + f);
    } else {
        set(f);
    }
}

double MixedForm::max_norm() const {
    double m = 0.0;
    for (const auto& p : parts_) {
        if (p) m = std::max(m, p->max_norm());
    }
    return m;
}

// ---------------------------------------------------------------------------
// linear structure

namespace {

void require_same(const Form& a, const Form& b, const char* what) {
    if (!a.grid().same_points(b.grid())) {
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
    }
    if (!(a.value() == b.value())) {
        throw std::invalid_argument(std::string(what) + ": value type mismatch");
    }
    if (a.degree() != b.degree()) {
        throw std::invalid_argument(std::string(what) + ": degree mismatch");
    }
}

Form combine(const Form& a, const Form& b, double sb, const char* what) {
    require_same(a, b, what);
    Form out = a;
    for (const auto& [m, data] : b.components()) {
        auto& dst = out.component_mut(m);
        for (std::size_t i = 0; i < data.size(); ++i) dst[i] += sb * data[i];
    }
    return out;
}

}  // namespace

Form operator+(const Form& a, const Form& b) { return combine(a, b, 1.0, "form sum"); }
Form operator-(const Form& a, const Form& b) { return combine(a, b, -1.0, "form difference"); }

Form operator*(cplx s, const Form& a) {
    Form out(a.grid(), a.degree(), a.value());
    for (const auto& [m, data] : a.components()) {
        std::vector<cplx> scaled(data);
        for (auto& z : scaled) z *= s;
        out.set_component(m, std::move(scaled));
    }
    return out;
}

MixedForm operator+(const MixedForm& a, const MixedForm& b) {
    MixedForm out = a;
    for (int p = 0; p <= b.max_degree(); ++p) {
        if (b.has(p)) out.add(b.part(p));
    }
    return out;
}

MixedForm operator-(const MixedForm& a, const MixedForm& b) { return a + (-1.0) * b; }

MixedForm operator*(cplx s, const MixedForm& a) {
    MixedForm out(a.grid(), a.value());
    for (int p = 0; p <= a.max_degree(); ++p) {
        if (a.has(p)) out.set(s * a.part(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// wedge

namespace {

ValueType product_type(ValueType a, ValueType b) {
    if (a.space == ValueSpace::scalar) return b;
    if (b.space == ValueSpace::scalar) return a;
    if (a.rank != b.rank) {
        throw std::invalid_argument("wedge: incompatible matrix sizes " +
                                    std::to_string(a.rank) + " and " + std::to_string(b.rank));
    }
    // Mixed gauge/frame products have no meaning here.
    if (a.space != b.space) throw std::invalid_argument("wedge: incompatible value spaces");
    return a;
}

// dst += sign * (x . y) for n consecutive R x R blocks
template <int R>
void matrix_products(cplx* dst, const cplx* x, const cplx* y, double sign, std::size_t n) {
    using Block = Eigen::Matrix<cplx, R, R, Eigen::RowMajor>;
    for (std::size_t p = 0; p < n; ++p) {
        Eigen::Map<Block> d(dst + p * R * R);
        d.noalias() += sign * (Eigen::Map<const Block>(x + p * R * R) * Eigen::Map<const Block>(y + p * R * R));
    }
}

// dst += sign * (x . y) pointwise
void accumulate_product(std::vector<cplx>& dst, std::span<const cplx> x, int rx,
                        std::span<const cplx> y, int ry, double sign, std::size_t npts) {
    const int r = std::max(rx, ry);
    const std::size_t blk = static_cast<std::size_t>(r) * r;
    if (rx == 1 && ry == 1) {
        for (std::size_t p = 0; p < npts; ++p) dst[p] += sign * x[p] * y[p];
    } else if (rx == 1) {
        for (std::size_t p = 0; p < npts; ++p) {
            const cplx s = sign * x[p];
            for (std::size_t e = 0; e < blk; ++e) dst[p * blk + e] += s * y[p * blk + e];
        }
    } else if (ry == 1) {
        for (std::size_t p = 0; p < npts; ++p) {
            const cplx s = sign * y[p];
            for (std::size_t e = 0; e < blk; ++e) dst[p * blk + e] += s * x[p * blk + e];
        }
    } else if (r == 2) {
        matrix_products<2>(dst.data(), x.data(), y.data(), sign, npts);
    } else if (r == 3) {
        matrix_products<3>(dst.data(), x.data(), y.data(), sign, npts);
    } else if (r == 4) {
        matrix_products<4>(dst.data(), x.data(), y.data(), sign, npts);
    } else {
        for (std::size_t p = 0; p < npts; ++p) {
            const cplx* xp = &x[p * blk];
            const cplx* yp = &y[p * blk];
            cplx* dp = &dst[p * blk];
            for (int i = 0; i < r; ++i) {
                for (int k = 0; k < r; ++k) {
                    const cplx xik = sign * xp[i * r + k];
                    for (int j = 0; j < r; ++j) dp[i * r + j] += xik * yp[k * r + j];
                }
            }
        }
    }
}

}  // namespace

Form wedge(const Form& a, const Form& b) {
    if (!a.grid().same_points(b.grid())) throw std::invalid_argument("wedge: grid mismatch");
    const int deg = a.degree() + b.degree();
    if (deg > a.grid().dim()) {
        throw std::invalid_argument("wedge: degree overflow (" + std::to_string(deg) + " > " +
                                    std::to_string(a.grid().dim()) + ")");
    }
    const ValueType vt = product_type(a.value(), b.value());
    Form out(a.grid(), deg, vt);
    const std::size_t npts = a.grid().size();
    for (const auto& [ma, da] : a.components()) {
        for (const auto& [mb, db] : b.components()) {
            const int s = merge_sign(ma, mb);
            if (s == 0) continue;
            auto& dst = out.component_mut(static_cast<Mask>(ma | mb));
            accumulate_product(dst, da, a.rank(), db, b.rank(), s, npts);
        }
    }
    return out;
}

Form trace_wedge(const Form& a, const Form& b) {
    if (!a.grid().same_points(b.grid())) throw std::invalid_argument("trace_wedge: grid mismatch");
    const int deg = a.degree() + b.degree();
    if (deg > a.grid().dim()) throw std::invalid_argument("trace_wedge: degree overflow");
    (void)product_type(a.value(), b.value());  // rejects incompatible value spaces
    Form out(a.grid(), deg, ValueType::scalar());
    const std::size_t npts = a.grid().size();
    const int ra = a.rank();
    const int rb = b.rank();
    const int r = std::max(ra, rb);
    const std::size_t blk = static_cast<std::size_t>(r) * r;
    for (const auto& [ma, x] : a.components()) {
        for (const auto& [mb, y] : b.components()) {
            const int s = merge_sign(ma, mb);
            if (s == 0) continue;
            auto& dst = out.component_mut(static_cast<Mask>(ma | mb));
            for (std::size_t p = 0; p < npts; ++p) {
                cplx acc{};
                if (ra == 1 && rb == 1) {
                    acc = x[p] * y[p];
                } else if (ra == 1 || rb == 1) {
                    const cplx scal = ra == 1 ? x[p] : y[p];
                    const cplx* m = ra == 1 ? &y[p * blk] : &x[p * blk];
                    for (int i = 0; i < r; ++i) acc += m[i * r + i];
                    acc *= scal;
                } else {
                    const cplx* xp = &x[p * blk];
                    const cplx* yp = &y[p * blk];
                    for (int i = 0; i < r; ++i) {
                        for (int k = 0; k < r; ++k) acc += xp[i * r + k] * yp[k * r + i];
                    }
                }
                dst[p] += static_cast<double>(s) * acc;
            }
        }
    }
    return out;
}

MixedForm wedge(const MixedForm& a, const MixedForm& b) {
    const ValueType vt = product_type(a.value(), b.value());
    MixedForm out(a.grid(), vt);
    const int n = a.grid().dim();
    for (int p = 0; p <= n; ++p) {
        if (!a.has(p)) continue;
        for (int q = 0; p + q <= n; ++q) {
            if (!b.has(q)) continue;
            out.add(wedge(a.part(p), b.part(q)));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// exterior derivative

namespace {

// Along `axis` the samples form slabs of n planes, each plane a contiguous run
// of stride * blk coefficients, so the derivative is one real matrix product
// per slab acting on the interleaved real and imaginary parts.
void differentiate_axis(std::span<const cplx> in, std::vector<cplx>& out, double sign,
                        const Grid& g, int axis, std::size_t blk) {
    using RealMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const int n = g.points(axis);
    const auto dm = fourier_diff_matrix(n, g.length(axis));
    const Eigen::Map<const RealMat> d(dm.data(), n, n);
    const auto width = static_cast<Eigen::Index>(2 * g.stride(axis) * blk);
    const std::size_t slab = static_cast<std::size_t>(n) * g.stride(axis) * blk;
    for (std::size_t off = 0; off < g.size() * blk; off += slab) {
        const Eigen::Map<const RealMat> x(reinterpret_cast<const double*>(in.data() + off), n, width);
        Eigen::Map<RealMat> y(reinterpret_cast<double*>(out.data() + off), n, width);
        y.noalias() += sign * (d * x);
    }
}

}  // namespace

Form ext_d(const Form& a) {
    const Grid& g = a.grid();
    if (a.degree() >= g.dim()) {
        throw std::invalid_argument("ext_d: top-degree form has no derivative");
    }
    Form out(g, a.degree() + 1, a.value());
    for (const auto& [m, data] : a.components()) {
        for (int mu = 0; mu < g.dim(); ++mu) {
            const Mask bit = static_cast<Mask>(1u << mu);
            if (m & bit) continue;
            const int s = merge_sign(bit, m);
            auto& dst = out.component_mut(static_cast<Mask>(m | bit));
            differentiate_axis(data, dst, s, g, mu, a.block());
        }
    }
    return out;
}

MixedForm ext_d(const MixedForm& a) {
    MixedForm out(a.grid(), a.value());
    for (int p = 0; p < a.max_degree(); ++p) {
        if (a.has(p)) out.add(ext_d(a.part(p)));
    }
    return out;
}

Form trace(const Form& a) {
    Form out(a.grid(), a.degree(), ValueType::scalar());
    const int r = a.rank();
    const std::size_t blk = a.block();
    const std::size_t npts = a.grid().size();
    for (const auto& [m, data] : a.components()) {
        std::vector<cplx> t(npts);
        for (std::size_t p = 0; p < npts; ++p) {
            cplx s{};
            for (int i = 0; i < r; ++i) s += data[p * blk + static_cast<std::size_t>(i) * r + i];
            t[p] = s;
        }
        out.set_component(m, std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// integration and restriction

cplx integrate(const Form& a, Domain domain) {
    const Grid& g = a.grid();
    if (a.degree() != g.dim()) {
        throw std::invalid_argument("integrate: expected a top-degree form (degree " +
                                    std::to_string(g.dim()) + "), got degree " +
                                    std::to_string(a.degree()));
    }
    if (a.rank() != 1) throw std::invalid_argument("integrate: form must be scalar-valued");
    if (domain == Domain::wall && !g.is_wall_grid()) {
        throw std::invalid_argument("integrate: wall domain needs a form on the wall grid");
    }
    const bool half = domain == Domain::half_plus || domain == Domain::half_minus;
    if (half && !g.has_wall()) {
        throw std::invalid_argument("integrate: half domains need a grid with a wall");
    }
    const Mask top = static_cast<Mask>((1u << g.dim()) - 1u);
    auto c = a.component(top);
    if (c.empty()) return {};

    const std::size_t npts = g.size();
    cplx sum{};
    if (!half) {
        for (std::size_t p = 0; p < npts; ++p) sum += c[p];
    } else {
        const int w = g.wall_axis();
        const int n = g.points(w);
        const std::size_t stride = g.stride(w);
        for (std::size_t p = 0; p < npts; ++p) {
            const int i = static_cast<int>((p / stride) % static_cast<std::size_t>(n));
            const int l = ((i - g.wall_index()) % n + n) % n;
            double weight = 0.0;
            if (l == 0 || l == n / 2) {
                weight = 0.5;
            } else if (domain == Domain::half_plus) {
                weight = (l < n / 2) ? 1.0 : 0.0;
            } else {
                weight = (l > n / 2) ? 1.0 : 0.0;
            }
            if (weight != 0.0) sum += weight * c[p];
        }
    }
    return static_cast<double>(g.orientation()) * g.cell_volume() * sum;
}

Form restrict_to_wall(const Form& a) {
    const Grid& g = a.grid();
    if (!g.has_wall()) throw std::invalid_argument("restrict_to_wall: grid has no wall");
    if (a.degree() > g.dim() - 1) {
        throw std::invalid_argument("restrict_to_wall: degree exceeds wall dimension");
    }
    const Grid wg = g.wall_grid();
    const int w = g.wall_axis();
    Form out(wg, a.degree(), a.value());
    const std::size_t blk = a.block();
    const Mask low = static_cast<Mask>((1u << w) - 1u);
    for (const auto& [m, data] : a.components()) {
        if (m & (1u << w)) continue;
        const Mask wm = static_cast<Mask>((m & low) | ((m >> 1) & ~low));
        std::vector<cplx> sampled(wg.size() * blk);
        for (std::size_t q = 0; q < wg.size(); ++q) {
            const auto widx = wg.unflatten(q);
            std::array<int, Grid::kMaxDim> idx{};
            int k = 0;
            for (int mu = 0; mu < g.dim(); ++mu) {
                idx[mu] = (mu == w) ? g.wall_index() : widx[k++];
            }
            const std::size_t p = g.flatten(idx);
            std::copy_n(&data[p * blk], blk, &sampled[q * blk]);
        }
        out.set_component(wm, std::move(sampled));
    }
    return out;
}

Form permute_axes(const Form& a, std::span<const int> perm) {
    const Grid& g = a.grid();
    const int n = g.dim();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permute_axes: bad size");
    std::vector<int> pts(n);
    std::vector<double> lens(n);
    for (int mu = 0; mu < n; ++mu) {
        pts[perm[mu]] = g.points(mu);
        lens[perm[mu]] = g.length(mu);
    }
    const Grid pg(pts, lens, perm[g.wall_axis()], g.wall_index(), g.orientation());
    Form out(pg, a.degree(), a.value());
    const std::size_t blk = a.block();
    for (const auto& [m, data] : a.components()) {
        Mask pm = 0;
        int sign = 1;
        for (int mu = 0; mu < n; ++mu) {
            if (!(m & (1u << mu))) continue;
            const Mask bit = static_cast<Mask>(1u << perm[mu]);
            sign *= merge_sign(pm, bit);
            pm |= bit;
        }
        std::vector<cplx> moved(data.size());
        for (std::size_t p = 0; p < g.size(); ++p) {
            const auto idx = g.unflatten(p);
            std::array<int, Grid::kMaxDim> pidx{};
            for (int mu = 0; mu < n; ++mu) pidx[perm[mu]] = idx[mu];
            const std::size_t q = pg.flatten(pidx);
            for (std::size_t e = 0; e < blk; ++e) moved[q * blk + e] = static_cast<double>(sign) * data[p * blk + e];
        }
        out.set_component(pm, std::move(moved));
    }
    return out;
}

Form constant_form(const Grid& grid, cplx value) {
    Form f(grid, 0, ValueType::scalar());
    f.set_component(0, std::vector<cplx>(grid.size(), value));
    return f;
}

}  // namespace wallindex
