#include "hessq/symcalc.hpp"

#include <algorithm>
#include <cmath>

namespace hessq::symcalc {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

namespace {

// Coefficient recurrence of prod_i (x + lambda_i); e[j] accumulates S_j.
void esf_accumulate(std::span<const double> lambda, double* e, int kmax) {
    e[0] = 1.0;
    std::fill(e + 1, e + kmax + 1, 0.0);
    int seen = 0;
    for (double li : lambda) {
        ++seen;
        const int top = std::min(seen, kmax);
        for (int j = top; j >= 1; --j) e[j] += li * e[j - 1];
    }
}

// S_k of lambda with up to two entries treated as zero. k < 0 yields 0,
// matching the empty-sum convention used by the cone inequality at
// alpha = n.
double esf_zeroed(std::span<const double> lambda, int k, int skip1, int skip2) {
    if (k < 0) return 0.0;
    const int n = static_cast<int>(lambda.size());
    if (k > n) return 0.0;
    double e[9];
    e[0] = 1.0;
    std::fill(e + 1, e + k + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        if (i == skip1 || i == skip2) continue;
        for (int j = k; j >= 1; --j) e[j] += lambda[i] * e[j - 1];
    }
    return e[k];
}

} // namespace

double elementary_symmetric(std::span<const double> lambda, int k) {
    const int n = static_cast<int>(lambda.size());
    if (k < 0 || k > n)
        throw std::domain_error("elementary_symmetric: k must lie in [0, n]");
    double e[9];
    esf_accumulate(lambda, e, k);
    return e[k];
}

Eigen::VectorXd elementary_symmetric_all(std::span<const double> lambda) {
    const int n = static_cast<int>(lambda.size());
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n + 1);
    e(0) = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::min(i + 1, n); j >= 1; --j)
            e(j) += lambda[i] * e(j - 1);
    return e;
}

double sym_deleted(std::span<const double> lambda, int k, int i) {
    const int n = static_cast<int>(lambda.size());
    if (k < 0 || k > n)
        throw std::domain_error("sym_deleted: k must lie in [0, n]");
    if (i < 0 || i >= n) throw std::domain_error("sym_deleted: index out of range");
    return esf_zeroed(lambda, k, i, -1);
}

double sym_deleted(std::span<const double> lambda, int k, int i, int j) {
    const int n = static_cast<int>(lambda.size());
    if (k < 0 || k > n)
        throw std::domain_error("sym_deleted: k must lie in [0, n]");
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::domain_error("sym_deleted: index out of range");
    if (i == j) throw std::domain_error("sym_deleted: duplicate indices");
    return esf_zeroed(lambda, k, i, j);
}

SymDerivatives sym_derivatives(std::span<const double> lambda) {
    const int n = static_cast<int>(lambda.size());
    SymDerivatives out;
    out.S = elementary_symmetric_all(lambda);
    out.S_minus_i.resize(n + 1, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= n; ++k)
            out.S_minus_i(k, i) = esf_zeroed(lambda, k, i, -1);
    out.S_minus_ij.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = out.S_minus_i(k, i);
            for (int j = i + 1; j < n; ++j)
                m(i, j) = m(j, i) = esf_zeroed(lambda, k, i, j);
        }
        out.S_minus_ij[k] = std::move(m);
    }
    return out;
}

double problem_scale(std::span<const double> lambda) {
    double m = 1.0;
    for (double li : lambda) m = std::max(m, std::abs(li));
    return std::pow(m, double(lambda.size()));
}

namespace {

void require_alpha(int alpha, int n) {
    if (alpha < 1 || alpha > n)
        throw std::domain_error("alpha must lie in [1, n]");
}

double quotient_of_spectrum(const RealVec& lambda, int alpha) {
    const int n = static_cast<int>(lambda.size());
    if (lambda(0) <= 0.0)
        throw AdmissibilityError("matrix is not admissible relative to the metric",
                                 lambda(0));
    std::span<const double> lam(lambda.data(), size_t(n));
    const double sn = elementary_symmetric(lam, n);
    const double snma = elementary_symmetric(lam, n - alpha);
    return std::pow(sn / snma, 1.0 / double(alpha));
}

} // namespace

double quotient_F(const HermMat& a, const HermMat& metric, int alpha) {
    require_alpha(alpha, static_cast<int>(a.rows()));
    GenSpectrum sp = generalized_eigs(a, metric);
    return quotient_of_spectrum(sp.lambda, alpha);
}

RealVec quotient_eigenvalue_partials(std::span<const double> lambda, int alpha) {
    const int n = static_cast<int>(lambda.size());
    require_alpha(alpha, n);
    double mu[8];
    for (int i = 0; i < n; ++i) {
        if (lambda[i] <= 0.0)
            throw AdmissibilityError("eigenvalue partials need lambda > 0", lambda[i]);
        mu[i] = 1.0 / lambda[i];
    }
    std::span<const double> mus(mu, size_t(n));
    const double s_alpha = elementary_symmetric(mus, alpha);
    const double f = std::pow(s_alpha, -1.0 / double(alpha));
    const double c = std::pow(f, 1.0 + double(alpha)) / double(alpha);
    RealVec out(n);
    for (int i = 0; i < n; ++i)
        out(i) = c * esf_zeroed(mus, alpha - 1, i, -1) * mu[i] * mu[i];
    return out;
}

QuotientResult quotient_F_with_gradient(const HermMat& a, const HermMat& metric,
                                        int alpha) {
    const int n = static_cast<int>(a.rows());
    require_alpha(alpha, n);
    QuotientResult res;
    res.spectrum = generalized_eigs(a, metric);
    res.value = quotient_of_spectrum(res.spectrum.lambda, alpha);
    std::span<const double> lam(res.spectrum.lambda.data(), size_t(n));
    const RealVec fp = quotient_eigenvalue_partials(lam, alpha);
    // dF[H] = sum_k f_k' v_k* H v_k = tr(W H) with W = sum f_k' v_k v_k*.
    res.gradient = res.spectrum.vectors * fp.asDiagonal() *
                   res.spectrum.vectors.adjoint();
    res.gradient = 0.5 * (res.gradient + res.gradient.adjoint().eval());
    return res;
}

std::pair<double, double> glz_inequality_gap(std::span<const double> lambda,
                                             std::span<const cplx> xi,
                                             int alpha) {
    const int n = static_cast<int>(lambda.size());
    if (xi.size() != lambda.size())
        throw std::invalid_argument("glz_inequality_gap: dimension mismatch");
    if (alpha < 2 || alpha > n)
        throw std::domain_error("glz_inequality_gap: alpha must lie in [2, n]");
    for (double li : lambda)
        if (li <= 0.0)
            throw std::domain_error("glz_inequality_gap: lambda must be positive");

    double lhs = 0.0;
    cplx weighted_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s1i = esf_zeroed(lambda, alpha - 1, i, -1);
        lhs += s1i / lambda[i] * std::norm(xi[i]);
        weighted_sum += s1i * xi[i];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double s2ij = esf_zeroed(lambda, alpha - 2, i, j);
            lhs += 2.0 * s2ij * (xi[i] * std::conj(xi[j])).real();
        }
    const double s_alpha = elementary_symmetric(lambda, alpha);
    const double middle = std::norm(weighted_sum) / s_alpha;
    return {lhs - middle, middle};
}

cplx first_derivative_residual(std::span<const double> g_diag,
                               std::span<const cplx> dg_l, cplx dpsi_inv_l,
                               int alpha) {
    const int n = static_cast<int>(g_diag.size());
    if (dg_l.size() != g_diag.size())
        throw std::invalid_argument("first_derivative_residual: dimension mismatch");
    require_alpha(alpha, n);
    double mu[8];
    for (int i = 0; i < n; ++i) mu[i] = 1.0 / g_diag[i];
    std::span<const double> mus(mu, size_t(n));
    cplx acc = binomial(n, alpha) * dpsi_inv_l;
    for (int i = 0; i < n; ++i)
        acc += esf_zeroed(mus, alpha - 1, i, -1) * mu[i] * mu[i] * dg_l[i];
    return acc;
}

} // namespace hessq::symcalc
