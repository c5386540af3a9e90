#include "hessq/grid.hpp"

#include <cmath>
#include <limits>

#include "hessq/errors.hpp"

namespace hessq::grid {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

Domain Domain::box(int n, int res, double lo, double hi) {
    if (res < 5) throw ConfigError("box grid needs at least 5 points per axis");
    Domain d;
    d.kind_ = DomainKind::box;
    d.n_ = n;
    d.res_ = res;
    const int ax = 2 * n;
    d.lo_.assign(size_t(ax), lo);
    d.hi_.assign(size_t(ax), hi);
    d.h_.assign(size_t(ax), (hi - lo) / double(res - 1));
    d.strides_.resize(size_t(ax));
    for (int a = 0; a < ax; ++a) d.strides_[size_t(a)] = ipow(res, a);
    d.num_nodes_ = ipow(res, ax);
    d.classify();
    return d;
}

Domain Domain::ball(int n, int res, double radius) {
    if (res < 7) throw ConfigError("ball grid needs at least 7 points per axis");
    Domain d = Domain::box(n, res, -radius, radius);
    d.kind_ = DomainKind::ball;
    d.radius_ = radius;
    d.classify();
    return d;
}

Domain Domain::torus(int n, int res, double period) {
    if (res < 5) throw ConfigError("torus grid needs at least 5 points per axis");
    Domain d;
    d.kind_ = DomainKind::torus;
    d.n_ = n;
    d.res_ = res;
    const int ax = 2 * n;
    d.lo_.assign(size_t(ax), 0.0);
    d.hi_.assign(size_t(ax), period);
    d.h_.assign(size_t(ax), period / double(res));
    d.strides_.resize(size_t(ax));
    for (int a = 0; a < ax; ++a) d.strides_[size_t(a)] = ipow(res, a);
    d.num_nodes_ = ipow(res, ax);
    d.classify();
    return d;
}

void Domain::coords(std::int64_t idx, double* t) const {
    for (int a = 0; a < axes(); ++a)
        t[a] = lo_[size_t(a)] + double(axis_pos(idx, a)) * h_[size_t(a)];
}

std::int64_t Domain::shift(std::int64_t idx, int axis, int step) const {
    const int pos = axis_pos(idx, axis);
    int np = pos + step;
    if (kind_ == DomainKind::torus) {
        np = ((np % res_) + res_) % res_;
        return idx + std::int64_t(np - pos) * strides_[size_t(axis)];
    }
    if (np < 0 || np >= res_) return -1;
    return idx + std::int64_t(step) * strides_[size_t(axis)];
}

void Domain::boundary_point(std::int64_t idx, double* t) const {
    coords(idx, t);
    if (kind_ != DomainKind::ball) return;
    double r2 = 0.0;
    for (int a = 0; a < axes(); ++a) r2 += t[a] * t[a];
    const double r = std::sqrt(r2);
    if (r <= 0.0) return;
    for (int a = 0; a < axes(); ++a) t[a] *= radius_ / r;
}

double Domain::sigma_at(std::int64_t idx) const {
    if (kind_ == DomainKind::torus)
        throw UnsupportedOperation("distance to boundary is undefined on a torus");
    if (class_[size_t(idx)] == NodeClass::boundary) return 0.0;
    double t[16];
    coords(idx, t);
    if (kind_ == DomainKind::box) {
        double s = hi_[0] - lo_[0];
        for (int a = 0; a < axes(); ++a)
            s = std::min({s, t[a] - lo_[size_t(a)], hi_[size_t(a)] - t[a]});
        return s;
    }
    double r2 = 0.0;
    for (int a = 0; a < axes(); ++a) r2 += t[a] * t[a];
    return radius_ - std::sqrt(r2);
}

bool Domain::has_margin(std::int64_t idx, int margin) const {
    if (kind_ == DomainKind::torus) return true;
    for (int a = 0; a < axes(); ++a) {
        const int p = axis_pos(idx, a);
        if (p < margin || p >= res_ - margin) return false;
    }
    return true;
}

void Domain::classify() {
    class_.assign(size_t(num_nodes_), NodeClass::interior);
    interior_.clear();
    boundary_.clear();
    const int ax = axes();

    if (kind_ == DomainKind::torus) {
        interior_.reserve(size_t(num_nodes_));
        for (std::int64_t i = 0; i < num_nodes_; ++i) interior_.push_back(i);
        return;
    }

    if (kind_ == DomainKind::box) {
        for (std::int64_t i = 0; i < num_nodes_; ++i) {
            bool bdry = false;
            for (int a = 0; a < ax; ++a) {
                const int p = axis_pos(i, a);
                if (p == 0 || p == res_ - 1) {
                    bdry = true;
                    break;
                }
            }
            class_[size_t(i)] = bdry ? NodeClass::boundary : NodeClass::interior;
            (bdry ? boundary_ : interior_).push_back(i);
        }
        return;
    }

    // Ball: nodes strictly inside the sphere are interior. The boundary
    // shell is the layer of outside-or-on nodes nearest the sphere (those
    // with an inside node in their full stencil); they carry Dirichlet data
    // at their radial projection. Everything further out is exterior and
    // holds no data.
    std::vector<double> t(static_cast<size_t>(ax));
    std::vector<std::uint8_t> inside(size_t(num_nodes_), 0);
    for (std::int64_t i = 0; i < num_nodes_; ++i) {
        coords(i, t.data());
        double r2 = 0.0;
        for (int a = 0; a < ax; ++a) r2 += t[size_t(a)] * t[size_t(a)];
        inside[size_t(i)] = r2 < radius_ * radius_ - 1e-14 ? 1 : 0;
    }
    auto touches_inside = [&](std::int64_t i) {
        for (int a = 0; a < ax; ++a)
            for (int s : {-1, 1}) {
                const std::int64_t j = shift(i, a, s);
                if (j >= 0 && inside[size_t(j)]) return true;
            }
        for (int a = 0; a < ax; ++a)
            for (int b = a + 1; b < ax; ++b)
                for (int sa : {-1, 1})
                    for (int sb : {-1, 1}) {
                        const std::int64_t j = shift(i, a, sa);
                        if (j < 0) continue;
                        const std::int64_t k = shift(j, b, sb);
                        if (k >= 0 && inside[size_t(k)]) return true;
                    }
        return false;
    };
    for (std::int64_t i = 0; i < num_nodes_; ++i) {
        if (inside[size_t(i)]) {
            class_[size_t(i)] = NodeClass::interior;
            interior_.push_back(i);
        } else if (touches_inside(i)) {
            class_[size_t(i)] = NodeClass::boundary;
            boundary_.push_back(i);
        } else {
            class_[size_t(i)] = NodeClass::exterior;
        }
    }
}

ScalarField ScalarField::sample(const Domain& d,
                                const std::function<double(const double*)>& f) {
    ScalarField out(d);
    double t[16];
    for (std::int64_t i = 0; i < d.num_nodes(); ++i) {
        if (d.node_class(i) == NodeClass::exterior) continue;
        d.coords(i, t);
        out.v[size_t(i)] = f(t);
    }
    return out;
}

double ScalarField::sup_abs() const {
    double m = 0.0;
    for (std::int64_t i = 0; i < dom->num_nodes(); ++i)
        if (dom->node_class(i) != NodeClass::exterior)
            m = std::max(m, std::abs(v[size_t(i)]));
    return m;
}

double ScalarField::sup_abs_interior() const {
    double m = 0.0;
    for (std::int64_t i : dom->interior_nodes())
        m = std::max(m, std::abs(v[size_t(i)]));
    return m;
}

double ScalarField::min_interior() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::int64_t i : dom->interior_nodes()) m = std::min(m, v[size_t(i)]);
    return m;
}

void pack_herm(const HermMat& m, double* out) {
    const int n = int(m.rows());
    for (int i = 0; i < n; ++i) out[i] = m(i, i).real();
    int p = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            out[p++] = m(i, j).real();
            out[p++] = m(i, j).imag();
        }
}

HermMat unpack_herm(const double* p, int n) {
    HermMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = p[i];
    int q = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = cplx(p[q], p[q + 1]);
            m(j, i) = std::conj(m(i, j));
            q += 2;
        }
    return m;
}

void HermField::set(std::int64_t idx, const HermMat& m) { pack_herm(m, at(idx)); }

HermMat HermField::get(std::int64_t idx) const { return unpack_herm(at(idx), n); }

HermField HermField::sample(const Domain& d, int n,
                            const std::function<HermMat(const double*)>& f) {
    HermField out(d, n);
    double t[16];
    for (std::int64_t i = 0; i < d.num_nodes(); ++i) {
        if (d.node_class(i) == NodeClass::exterior) continue;
        d.coords(i, t);
        out.set(i, f(t));
    }
    return out;
}

namespace {

inline double second_diff(const ScalarField& u, const Domain& d, std::int64_t idx,
                          int a) {
    const double h = d.spacing(a);
    return (u[d.shift(idx, a, 1)] - 2.0 * u[idx] + u[d.shift(idx, a, -1)]) / (h * h);
}

inline double cross_diff(const ScalarField& u, const Domain& d, std::int64_t idx,
                         int a, int b) {
    const double h = 4.0 * d.spacing(a) * d.spacing(b);
    const std::int64_t pa = d.shift(idx, a, 1), ma = d.shift(idx, a, -1);
    return (u[d.shift(pa, b, 1)] - u[d.shift(pa, b, -1)] - u[d.shift(ma, b, 1)] +
            u[d.shift(ma, b, -1)]) /
           h;
}

} // namespace

HermMat complex_hessian_at(const ScalarField& u, std::int64_t idx) {
    const Domain& d = *u.dom;
    const int n = d.cdim();
    HermMat m(n, n);
    for (int i = 0; i < n; ++i) {
        const int xi = 2 * i, yi = 2 * i + 1;
        m(i, i) = 0.25 * (second_diff(u, d, idx, xi) + second_diff(u, d, idx, yi));
        for (int j = i + 1; j < n; ++j) {
            const int xj = 2 * j, yj = 2 * j + 1;
            const double re =
                0.25 * (cross_diff(u, d, idx, xi, xj) + cross_diff(u, d, idx, yi, yj));
            const double im =
                0.25 * (cross_diff(u, d, idx, xi, yj) - cross_diff(u, d, idx, yi, xj));
            m(i, j) = cplx(re, im);
            m(j, i) = cplx(re, -im);
        }
    }
    return m;
}

HermField complex_hessian(const ScalarField& u) {
    const Domain& d = *u.dom;
    HermField out(d, d.cdim());
    for (std::int64_t idx : d.interior_nodes())
        out.set(idx, complex_hessian_at(u, idx));
    return out;
}

namespace {

// First derivative along one axis: central where possible, 3-point one-sided
// toward the lattice inside at an edge.
double first_diff(const ScalarField& u, const Domain& d, std::int64_t idx, int a) {
    const double h = d.spacing(a);
    const std::int64_t p = d.shift(idx, a, 1), m = d.shift(idx, a, -1);
    const bool p_ok = p >= 0 && d.node_class(p) != NodeClass::exterior;
    const bool m_ok = m >= 0 && d.node_class(m) != NodeClass::exterior;
    if (p_ok && m_ok) return (u[p] - u[m]) / (2.0 * h);
    if (p_ok) {
        const std::int64_t p2 = d.shift(p, a, 1);
        return (-3.0 * u[idx] + 4.0 * u[p] - u[p2]) / (2.0 * h);
    }
    const std::int64_t m2 = d.shift(m, a, -1);
    return (3.0 * u[idx] - 4.0 * u[m] + u[m2]) / (2.0 * h);
}

} // namespace

CplxVec wirtinger_gradient_at(const ScalarField& u, std::int64_t idx) {
    const Domain& d = *u.dom;
    const int n = d.cdim();
    CplxVec g(n);
    for (int i = 0; i < n; ++i) {
        const double dx = first_diff(u, d, idx, 2 * i);
        const double dy = first_diff(u, d, idx, 2 * i + 1);
        g(i) = 0.5 * cplx(dx, -dy);
    }
    return g;
}

double gradient_norm_sq_at(const ScalarField& u, const HermMat& metric_inv,
                           std::int64_t idx) {
    const CplxVec g = wirtinger_gradient_at(u, idx);
    return 4.0 * (g.adjoint() * metric_inv * g).value().real();
}

double laplacian_at(const ScalarField& u, const HermMat& metric_inv,
                    std::int64_t idx) {
    const HermMat h = complex_hessian_at(u, idx);
    return 2.0 * (metric_inv * h).trace().real();
}

double second_derivative_axis_at(const ScalarField& u, std::int64_t idx, int axis) {
    const Domain& d = *u.dom;
    const double h = d.spacing(axis);
    const std::int64_t p = d.shift(idx, axis, 1), m = d.shift(idx, axis, -1);
    const bool p_ok = p >= 0 && d.node_class(p) != NodeClass::exterior;
    const bool m_ok = m >= 0 && d.node_class(m) != NodeClass::exterior;
    if (p_ok && m_ok) return (u[p] - 2.0 * u[idx] + u[m]) / (h * h);
    if (p_ok) {
        const std::int64_t p2 = d.shift(p, axis, 1), p3 = d.shift(p2, axis, 1);
        return (2.0 * u[idx] - 5.0 * u[p] + 4.0 * u[p2] - u[p3]) / (h * h);
    }
    const std::int64_t m2 = d.shift(m, axis, -1), m3 = d.shift(m2, axis, -1);
    return (2.0 * u[idx] - 5.0 * u[m] + 4.0 * u[m2] - u[m3]) / (h * h);
}

} // namespace hessq::grid
