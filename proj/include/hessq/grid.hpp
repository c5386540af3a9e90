#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hessq/hermitian.hpp"

namespace hessq::grid {

enum class DomainKind { box, ball, torus };
enum class NodeClass : std::uint8_t { interior = 0, boundary = 1, exterior = 2 };

/// Structured lattice over a box or ball in C^n, or a flat torus.
/// Real axes are ordered (x_1, y_1, ..., x_n, y_n); `res` lattice points
/// per axis. Box/ball lattices include both endpoints, the torus lattice
/// holds res distinct points per period.
class Domain {
public:
    static Domain box(int n, int res, double lo, double hi);
    static Domain ball(int n, int res, double radius);
    static Domain torus(int n, int res, double period);

    DomainKind kind() const { return kind_; }
    int cdim() const { return n_; }
    int axes() const { return 2 * n_; }
    int res() const { return res_; }
    std::int64_t num_nodes() const { return num_nodes_; }
    double spacing(int axis) const { return h_[size_t(axis)]; }
    double lo(int axis) const { return lo_[size_t(axis)]; }
    double hi(int axis) const { return hi_[size_t(axis)]; }
    double radius() const { return radius_; }
    std::int64_t stride(int axis) const { return strides_[size_t(axis)]; }

    NodeClass node_class(std::int64_t idx) const { return class_[size_t(idx)]; }
    bool is_interior(std::int64_t idx) const {
        return class_[size_t(idx)] == NodeClass::interior;
    }
    const std::vector<std::int64_t>& interior_nodes() const { return interior_; }
    const std::vector<std::int64_t>& boundary_nodes() const { return boundary_; }

    int axis_pos(std::int64_t idx, int axis) const {
        return int((idx / strides_[size_t(axis)]) % res_);
    }
    void coords(std::int64_t idx, double* t) const;

    /// Lattice neighbor along one axis; wraps on the torus, returns -1 when
    /// stepping off a box/ball lattice.
    std::int64_t shift(std::int64_t idx, int axis, int step) const;

    /// Point at which Dirichlet data is evaluated for a boundary node
    /// (radial projection onto the sphere for balls, the node itself
    /// otherwise).
    void boundary_point(std::int64_t idx, double* t) const;

    /// Analytic distance to the boundary; exact for box and ball, zero at
    /// boundary nodes. Throws UnsupportedOperation for the torus.
    double sigma_at(std::int64_t idx) const;

    /// True when every node of the full second-order stencil around idx
    /// stays at lattice distance >= margin from any lattice edge
    /// (always true on the torus).
    bool has_margin(std::int64_t idx, int margin) const;

private:
    Domain() = default;
    void classify();

    DomainKind kind_ = DomainKind::box;
    int n_ = 2;
    int res_ = 0;
    double radius_ = 0.0;
    std::vector<double> lo_, hi_, h_;
    std::vector<std::int64_t> strides_;
    std::int64_t num_nodes_ = 0;
    std::vector<NodeClass> class_;
    std::vector<std::int64_t> interior_;
    std::vector<std::int64_t> boundary_;
};

/// Real scalar samples over all lattice nodes of a domain. Exterior nodes
/// carry zeros and are excluded from reductions.
struct ScalarField {
    const Domain* dom = nullptr;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Domain& d) : dom(&d), v(size_t(d.num_nodes()), 0.0) {}

    double& operator[](std::int64_t i) { return v[size_t(i)]; }
    double operator[](std::int64_t i) const { return v[size_t(i)]; }

    static ScalarField sample(const Domain& d,
                              const std::function<double(const double*)>& f);

    double sup_abs() const;             // over non-exterior nodes
    double sup_abs_interior() const;
    double min_interior() const;
};

/// Hermitian-matrix samples, packed per node as n diagonal reals followed by
/// (re, im) pairs for the strictly upper triangle in lexicographic order.
struct HermField {
    const Domain* dom = nullptr;
    int n = 0;
    std::vector<double> a;

    HermField() = default;
    HermField(const Domain& d, int nn)
        : dom(&d), n(nn), a(size_t(d.num_nodes()) * size_t(nn) * size_t(nn), 0.0) {}

    int packed_size() const { return n * n; }
    double* at(std::int64_t idx) { return a.data() + size_t(idx) * size_t(n) * size_t(n); }
    const double* at(std::int64_t idx) const {
        return a.data() + size_t(idx) * size_t(n) * size_t(n);
    }

    void set(std::int64_t idx, const HermMat& m);
    HermMat get(std::int64_t idx) const;

    static HermField sample(const Domain& d, int n,
                            const std::function<HermMat(const double*)>& f);
};

void pack_herm(const HermMat& m, double* out);
HermMat unpack_herm(const double* p, int n);

/// Discrete complex Hessian u_{i jbar} by second-order central differences,
/// defined at interior nodes (zero elsewhere). Hermitian by construction.
HermField complex_hessian(const ScalarField& u);

/// Same stencil evaluated at a single node.
HermMat complex_hessian_at(const ScalarField& u, std::int64_t idx);

/// Wirtinger gradient (u_1, ..., u_n) at a node; central differences at
/// interior nodes, one-sided second-order stencils toward the lattice
/// inside at boundary nodes of a box. Not defined for exterior nodes.
CplxVec wirtinger_gradient_at(const ScalarField& u, std::int64_t idx);

/// |grad u|^2 = 4 g^{i jbar} u_i u_jbar; reduces to the Euclidean
/// |grad u|^2 for the flat metric. The constant 4 is the recorded
/// normalization (a linear u = x_1 has |grad u| = 1).
double gradient_norm_sq_at(const ScalarField& u, const HermMat& metric_inv,
                           std::int64_t idx);

/// Chern Laplacian 2 g^{i jbar} u_{i jbar} (recorded normalization
/// c_norm = 1: u = |z|^2 against the flat metric gives 2n).
double laplacian_at(const ScalarField& u, const HermMat& metric_inv,
                    std::int64_t idx);

/// Pure one-axis second derivative with a one-sided 4-point stencil when the
/// node touches the lattice edge; used for boundary Laplacians.
double second_derivative_axis_at(const ScalarField& u, std::int64_t idx, int axis);

} // namespace hessq::grid
