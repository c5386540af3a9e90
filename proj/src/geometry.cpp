#include "hessq/geometry.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "hessq/errors.hpp"

namespace hessq::geom {

using grid::Domain;
using grid::HermField;
using grid::NodeClass;
using grid::ScalarField;

MetricField MetricField::from_samples(HermField samples, double eps_g) {
    MetricField m;
    const Domain& d = *samples.dom;
    m.g = std::move(samples);
    m.g_inv = HermField(d, m.g.n);
    m.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < d.num_nodes(); ++i) {
        if (d.node_class(i) == NodeClass::exterior) continue;
        HermMat gi = m.g.get(i);
        const double lmin = hermitian_eigs(gi).lambda(0);
        m.min_eigenvalue = std::min(m.min_eigenvalue, lmin);
        if (lmin < eps_g)
            throw ConfigError("metric is not uniformly positive definite");
        m.g_inv.set(i, gi.inverse());
    }
    return m;
}

MetricField MetricField::flat(const Domain& d) {
    const int n = d.cdim();
    HermMat id = HermMat::Identity(n, n);
    MetricField m;
    m.g = HermField(d, n);
    m.g_inv = HermField(d, n);
    m.min_eigenvalue = 1.0;
    for (std::int64_t i = 0; i < d.num_nodes(); ++i) {
        if (d.node_class(i) == NodeClass::exterior) continue;
        m.g.set(i, id);
        m.g_inv.set(i, id);
    }
    return m;
}

namespace {

using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 8, 8>;

// Wirtinger derivative (d/dz_k) G of a packed Hermitian field, entrywise;
// (d/dzbar_k) G is its adjoint since G is Hermitian.
Mat dz_of_herm(const HermField& f, std::int64_t idx, int k) {
    const Domain& d = *f.dom;
    const int ax = 2 * k, ay = 2 * k + 1;
    const double hx = d.spacing(ax), hy = d.spacing(ay);
    const HermMat gx =
        (f.get(d.shift(idx, ax, 1)) - f.get(d.shift(idx, ax, -1))) / (2.0 * hx);
    const HermMat gy =
        (f.get(d.shift(idx, ay, 1)) - f.get(d.shift(idx, ay, -1))) / (2.0 * hy);
    return 0.5 * (gx - cplx(0, 1) * gy);
}

// d^2 G / dz_i dzbar_j entrywise, the same stencil as the complex hessian.
Mat dzdzbar_of_herm(const HermField& f, std::int64_t idx, int i, int j) {
    const Domain& d = *f.dom;
    const int xi = 2 * i, yi = 2 * i + 1, xj = 2 * j, yj = 2 * j + 1;
    auto second = [&](int a) -> Mat {
        const double h = d.spacing(a);
        return (f.get(d.shift(idx, a, 1)) - 2.0 * f.get(idx) +
                f.get(d.shift(idx, a, -1))) /
               (h * h);
    };
    auto cross = [&](int a, int b) -> Mat {
        const double h = 4.0 * d.spacing(a) * d.spacing(b);
        const std::int64_t pa = d.shift(idx, a, 1), ma = d.shift(idx, a, -1);
        return (f.get(d.shift(pa, b, 1)) - f.get(d.shift(pa, b, -1)) -
                f.get(d.shift(ma, b, 1)) + f.get(d.shift(ma, b, -1))) /
               h;
    };
    if (i == j) return 0.25 * (second(xi) + second(yi));
    const Mat re = cross(xi, xj) + cross(yi, yj);
    const Mat im = cross(xi, yj) - cross(yi, xj);
    return 0.25 * (re + cplx(0, 1) * im);
}

} // namespace

ConnectionData build_connection(const MetricField& metric) {
    const Domain& d = metric.domain();
    if (d.res() < 5) throw ConfigError("grid too small for the connection stencil");
    const int n = metric.cdim();
    const size_t n3 = size_t(n) * size_t(n) * size_t(n);
    const size_t n4 = n3 * size_t(n);

    ConnectionData c;
    c.dom = &d;
    c.n = n;
    c.gamma.assign(size_t(d.num_nodes()) * n3, cplx(0));
    c.torsion.assign(size_t(d.num_nodes()) * n3, cplx(0));
    c.curvature.assign(size_t(d.num_nodes()) * n4, cplx(0));

    for (std::int64_t idx = 0; idx < d.num_nodes(); ++idx) {
        if (!d.has_margin(idx, 1)) continue;
        if (d.node_class(idx) == NodeClass::exterior) continue;
        const HermMat ginv = metric.inv_at(idx);
        std::array<Mat, 8> dG;
        for (int i = 0; i < n; ++i) dG[size_t(i)] = dz_of_herm(metric.g, idx, i);

        cplx* gam = c.gamma.data() + size_t(idx) * n3;
        cplx* tor = c.torsion.data() + size_t(idx) * n3;
        cplx* cur = c.curvature.data() + size_t(idx) * n4;

        // Gamma^k_{ij} = g^{k lbar} d_i g_{j lbar} = (d_i G * G^{-1})(j, k).
        for (int i = 0; i < n; ++i) {
            const Mat gi = dG[size_t(i)] * ginv;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    gam[size_t((i * n + j) * n + k)] = gi(j, k);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    tor[size_t((i * n + j) * n + k)] =
                        gam[size_t((i * n + j) * n + k)] -
                        gam[size_t((j * n + i) * n + k)];

        // R_{i jbar k lbar} = -d_i dbar_j g_{k lbar}
        //                     + g^{p qbar} d_i g_{k qbar} dbar_j g_{p lbar},
        // with dbar_j G = (d_j G)^*.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Mat dd = dzdzbar_of_herm(metric.g, idx, i, j);
                const Mat prod = dG[size_t(i)] * ginv * dG[size_t(j)].adjoint();
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        cur[size_t(((i * n + j) * n + k) * n + l)] =
                            -dd(k, l) + prod(k, l);
            }
    }
    return c;
}

double ConnectionData::torsion_sup(int margin) const {
    double m = 0.0;
    const size_t n3 = size_t(n) * size_t(n) * size_t(n);
    for (std::int64_t idx = 0; idx < dom->num_nodes(); ++idx) {
        if (!dom->has_margin(idx, margin)) continue;
        if (dom->node_class(idx) == NodeClass::exterior) continue;
        const cplx* t = torsion.data() + size_t(idx) * n3;
        for (size_t q = 0; q < n3; ++q) m = std::max(m, std::abs(t[q]));
    }
    return m;
}

namespace {

// Rank-3 complex tensor samples, layout ((i n + j) n + k) per node.
struct Tensor3Field {
    const Domain* dom;
    int n;
    std::vector<cplx> a;

    Tensor3Field(const Domain& d, int nn)
        : dom(&d), n(nn),
          a(size_t(d.num_nodes()) * size_t(nn) * size_t(nn) * size_t(nn), cplx(0)) {}

    cplx& at(std::int64_t idx, int i, int j, int k) {
        return a[(size_t(idx) * size_t(n) * size_t(n) + size_t(i * n + j)) *
                     size_t(n) +
                 size_t(k)];
    }
    cplx at(std::int64_t idx, int i, int j, int k) const {
        return a[(size_t(idx) * size_t(n) * size_t(n) + size_t(i * n + j)) *
                     size_t(n) +
                 size_t(k)];
    }

    cplx dz(std::int64_t idx, int i, int j, int k, int m, bool bar) const {
        const Domain& d = *dom;
        const double hx = d.spacing(2 * m), hy = d.spacing(2 * m + 1);
        const cplx fx = (at(d.shift(idx, 2 * m, 1), i, j, k) -
                         at(d.shift(idx, 2 * m, -1), i, j, k)) /
                        (2.0 * hx);
        const cplx fy = (at(d.shift(idx, 2 * m + 1, 1), i, j, k) -
                         at(d.shift(idx, 2 * m + 1, -1), i, j, k)) /
                        (2.0 * hy);
        return bar ? 0.5 * (fx + cplx(0, 1) * fy) : 0.5 * (fx - cplx(0, 1) * fy);
    }
};

cplx dz_of_herm_entry(const HermField& f, std::int64_t idx, int i, int j, int m,
                      bool bar) {
    const Domain& d = *f.dom;
    const double hx = d.spacing(2 * m), hy = d.spacing(2 * m + 1);
    const cplx fx =
        (f.get(d.shift(idx, 2 * m, 1))(i, j) - f.get(d.shift(idx, 2 * m, -1))(i, j)) /
        (2.0 * hx);
    const cplx fy = (f.get(d.shift(idx, 2 * m + 1, 1))(i, j) -
                     f.get(d.shift(idx, 2 * m + 1, -1))(i, j)) /
                    (2.0 * hy);
    return bar ? 0.5 * (fx + cplx(0, 1) * fy) : 0.5 * (fx - cplx(0, 1) * fy);
}

} // namespace

CommutationReport verify_commutation_identities(const ScalarField& v,
                                                const MetricField& metric) {
    const Domain& d = metric.domain();
    if (d.res() < 9)
        throw ConfigError("grid too small for the fourth-order identity stencils");
    const int n = metric.cdim();

    const ConnectionData conn = build_connection(metric);
    const HermField hess = grid::complex_hessian(v);

    // v_{i jbar k} = d_k v_{i jbar} - Gamma^l_{ki} v_{l jbar};
    // v_{i jbar lbar} = dbar_l v_{i jbar} - conj(Gamma^q_{lj}) v_{i qbar};
    // both need margin 2 (stencil of a stencil).
    Tensor3Field t3k(d, n), t3l(d, n);
    for (std::int64_t idx = 0; idx < d.num_nodes(); ++idx) {
        if (!d.has_margin(idx, 2)) continue;
        const HermMat h = hess.get(idx);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    cplx acc = dz_of_herm_entry(hess, idx, i, j, k, false);
                    for (int l = 0; l < n; ++l)
                        acc -= conn.Gamma(idx, k, i, l) * h(l, j);
                    t3k.at(idx, i, j, k) = acc;

                    cplx accb = dz_of_herm_entry(hess, idx, i, j, k, true);
                    for (int q = 0; q < n; ++q)
                        accb -= std::conj(conn.Gamma(idx, k, j, q)) * h(i, q);
                    t3l.at(idx, i, j, k) = accb;
                }
    }

    CommutationReport rep;
    for (std::int64_t idx = 0; idx < d.num_nodes(); ++idx) {
        if (!d.has_margin(idx, 3)) continue;
        ++rep.nodes_checked;
        const HermMat h = hess.get(idx);
        const HermMat ginv = metric.inv_at(idx);

        // (a) v_{i jbar k} - v_{k jbar i} = T^l_{ik} v_{l jbar}.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    cplx rhs = 0.0;
                    for (int l = 0; l < n; ++l)
                        rhs += conn.T(idx, i, k, l) * h(l, j);
                    const cplx res = t3k.at(idx, i, j, k) - t3k.at(idx, k, j, i) - rhs;
                    rep.third_order_max = std::max(rep.third_order_max, std::abs(res));
                }

        // Fourth order:
        // v_{i jbar k lbar} = dbar_l v_{i jbar k} - conj(Gamma^q_{lj}) v_{i qbar k};
        // v_{i jbar lbar k} = d_k v_{i jbar lbar} - Gamma^p_{ki} v_{p jbar lbar}.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        cplx v4 = t3k.dz(idx, i, j, k, l, true);
                        for (int q = 0; q < n; ++q)
                            v4 -= std::conj(conn.Gamma(idx, l, j, q)) *
                                  t3k.at(idx, i, q, k);

                        cplx v4swap = t3l.dz(idx, i, j, l, k, false);
                        for (int p = 0; p < n; ++p)
                            v4swap -= conn.Gamma(idx, k, i, p) * t3l.at(idx, p, j, l);

                        // (b) v_{i jbar k lbar} - v_{i jbar lbar k}
                        //     = g^{p qbar} R_{k lbar i qbar} v_{p jbar}
                        //       - g^{p qbar} R_{k lbar p jbar} v_{i qbar}.
                        cplx rhs = 0.0;
                        for (int p = 0; p < n; ++p)
                            for (int q = 0; q < n; ++q) {
                                const cplx gpq = ginv(q, p); // g^{p qbar}
                                rhs += gpq * conn.R(idx, k, l, i, q) * h(p, j);
                                rhs -= gpq * conn.R(idx, k, l, p, j) * h(i, q);
                            }
                        rep.fourth_order_max = std::max(rep.fourth_order_max,
                                                        std::abs(v4 - v4swap - rhs));

                        // (c) v_{i jbar k lbar} - v_{k lbar i jbar}, full
                        // curvature + torsion right-hand side.
                        cplx v4kl = t3k.dz(idx, k, l, i, j, true);
                        for (int q = 0; q < n; ++q)
                            v4kl -= std::conj(conn.Gamma(idx, j, l, q)) *
                                    t3k.at(idx, k, q, i);
                        cplx rhs2 = 0.0;
                        for (int p = 0; p < n; ++p)
                            for (int q = 0; q < n; ++q) {
                                const cplx gpq = ginv(q, p);
                                rhs2 += gpq * (conn.R(idx, k, l, i, q) * h(p, j) -
                                               conn.R(idx, i, j, k, q) * h(p, l));
                            }
                        for (int p = 0; p < n; ++p)
                            rhs2 += conn.T(idx, i, k, p) * t3l.at(idx, p, j, l);
                        for (int q = 0; q < n; ++q)
                            rhs2 += std::conj(conn.T(idx, j, l, q)) *
                                    t3k.at(idx, i, q, k);
                        for (int p = 0; p < n; ++p)
                            for (int q = 0; q < n; ++q)
                                rhs2 -= conn.T(idx, i, k, p) *
                                        std::conj(conn.T(idx, j, l, q)) * h(p, q);
                        rep.fourth_order_swap_max = std::max(
                            rep.fourth_order_swap_max, std::abs(v4 - v4kl - rhs2));
                    }
    }
    return rep;
}

} // namespace hessq::geom
