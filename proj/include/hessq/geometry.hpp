#pragma once

#include <vector>

#include "hessq/grid.hpp"

namespace hessq::geom {

/// Hermitian metric samples with a cached pointwise inverse.
struct MetricField {
    grid::HermField g;
    grid::HermField g_inv;
    double min_eigenvalue = 0.0;

    static MetricField from_samples(grid::HermField samples, double eps_g = 1e-10);
    static MetricField flat(const grid::Domain& d);

    HermMat at(std::int64_t idx) const { return g.get(idx); }
    HermMat inv_at(std::int64_t idx) const { return g_inv.get(idx); }
    const grid::Domain& domain() const { return *g.dom; }
    int cdim() const { return g.n; }
};

/// Chern connection coefficients Gamma^k_{ij}, torsion T^k_{ij} and
/// curvature R_{i jbar k lbar}, sampled per node by central differences of
/// the metric. Valid where the node has lattice margin >= 1.
struct ConnectionData {
    const grid::Domain* dom = nullptr;
    int n = 0;
    std::vector<cplx> gamma;     // ((i n + j) n + k) -> Gamma^k_{ij}
    std::vector<cplx> torsion;   // same layout -> T^k_{ij}
    std::vector<cplx> curvature; // (((i n + j) n + k) n + l) -> R_{i jbar k lbar}

    cplx Gamma(std::int64_t idx, int i, int j, int k) const {
        return gamma[(size_t(idx) * size_t(n) * size_t(n) + size_t(i * n + j)) *
                         size_t(n) +
                     size_t(k)];
    }
    cplx T(std::int64_t idx, int i, int j, int k) const {
        return torsion[(size_t(idx) * size_t(n) * size_t(n) + size_t(i * n + j)) *
                           size_t(n) +
                       size_t(k)];
    }
    cplx R(std::int64_t idx, int i, int j, int k, int l) const {
        const size_t nn = size_t(n);
        return curvature[((size_t(idx) * nn * nn + size_t(i * n + j)) * nn +
                          size_t(k)) *
                             nn +
                         size_t(l)];
    }

    /// sup |T^k_{ij}| over nodes with the given margin.
    double torsion_sup(int margin = 2) const;
};

ConnectionData build_connection(const MetricField& metric);

/// Pointwise residuals of the commutation identities for covariant
/// derivatives of a scalar field against the sampled metric, measured in
/// sup norm over nodes with enough stencil margin.
struct CommutationReport {
    double third_order_max = 0.0;   // v_{i jbar k} - v_{k jbar i} - T^l_{ik} v_{l jbar}
    double fourth_order_max = 0.0;  // v_{i jbar k lbar} - v_{i jbar lbar k} - curvature terms
    double fourth_order_swap_max = 0.0; // v_{i jbar k lbar} - v_{k lbar i jbar} - full RHS
    std::int64_t nodes_checked = 0;
};

CommutationReport verify_commutation_identities(const grid::ScalarField& v,
                                                const MetricField& metric);

} // namespace hessq::geom
