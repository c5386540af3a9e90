#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hessq/hermitian.hpp"

namespace hessq::symcalc {

/// Binomial coefficient C(n, k) as a double (exact for the small n used here).
double binomial(int n, int k);

/// k-th elementary symmetric polynomial S_k(lambda), S_0 = 1.
/// Computed by the coefficient recurrence of prod_i (x + lambda_i),
/// not by monomial enumeration. Throws std::domain_error for k outside
/// [0, n].
double elementary_symmetric(std::span<const double> lambda, int k);

/// All of S_0..S_n in one pass.
Eigen::VectorXd elementary_symmetric_all(std::span<const double> lambda);

/// S_{k;i}: S_k of lambda with entry i zeroed out.
double sym_deleted(std::span<const double> lambda, int k, int i);

/// S_{k;ij}: S_k with entries i and j zeroed. Requires i != j.
double sym_deleted(std::span<const double> lambda, int k, int i, int j);

/// First and second deleted-index tables for all k, used by the identity
/// tests of the recurrence S_{k;i} = S_k - lambda_i S_{k-1;i}.
struct SymDerivatives {
    Eigen::VectorXd S;                    // S_0..S_n
    Eigen::MatrixXd S_minus_i;            // (n+1) x n, row k = S_{k;i}
    std::vector<Eigen::MatrixXd> S_minus_ij; // per k: n x n, diag = S_{k;i}
};

SymDerivatives sym_derivatives(std::span<const double> lambda);

/// Tolerance scale for symmetric-function comparisons:
/// max(1, |lambda|_inf)^n.
double problem_scale(std::span<const double> lambda);

/// F(A; G) = (S_n / S_{n-alpha})^{1/alpha} of the generalized eigenvalues
/// of A relative to the positive definite metric G. Throws
/// AdmissibilityError (carrying the minimum eigenvalue) if any generalized
/// eigenvalue is <= 0, std::domain_error for alpha outside [1, n].
double quotient_F(const HermMat& a, const HermMat& metric, int alpha);

/// F together with its derivative with respect to the matrix entries.
/// The gradient W is Hermitian positive definite and acts by
/// dF(A)[H] = tr(W H) for Hermitian H (so the i j-bar coefficient array of
/// the linearized operator is W itself under that pairing).
struct QuotientResult {
    double value;
    HermMat gradient;
    GenSpectrum spectrum;
};

QuotientResult quotient_F_with_gradient(const HermMat& a, const HermMat& metric,
                                        int alpha);

/// Derivatives of f(lambda) = (S_n/S_{n-alpha})^{1/alpha} with respect to
/// each eigenvalue, evaluated through the dual variables mu = 1/lambda:
/// f_k' = (f^{1+alpha}/alpha) S_{alpha-1;k}(mu) mu_k^2.
RealVec quotient_eigenvalue_partials(std::span<const double> lambda, int alpha);

/// First divided difference (f(x) - f(y))/(x - y) with the near-degenerate
/// guard: below |x - y| < 1e-8 * scale the analytic derivative at the
/// midpoint is used instead.
template <class F, class DF>
double stable_divided_difference(F&& f, DF&& df, double x, double y,
                                 double scale) {
    if (std::abs(x - y) < 1e-8 * scale) return df(0.5 * (x + y));
    return (f(x) - f(y)) / (x - y);
}

/// Both gaps of the symmetric-function inequality chain
///   sum_i S_{a-1;i}/lambda_i |xi_i|^2 + sum_{i != j} S_{a-2;ij} xi_i conj(xi_j)
///     >= |sum_i S_{a-1;i} xi_i|^2 / S_a >= 0.
/// Returns (LHS - middle, middle). Requires lambda > 0 and 2 <= alpha <= n.
std::pair<double, double> glz_inequality_gap(std::span<const double> lambda,
                                             std::span<const cplx> xi,
                                             int alpha);

/// Residual of the once-differentiated equation in a frame where the
/// solution matrix is diagonal with entries g_diag:
///   C_n^alpha d_l(psi^{-1}) + sum_i S_{alpha-1;i}(mu) mu_i^2 g_{i ibar l},
/// mu_i = 1/g_diag_i. Vanishes when psi is induced by the equation.
cplx first_derivative_residual(std::span<const double> g_diag,
                               std::span<const cplx> dg_l, cplx dpsi_inv_l,
                               int alpha);

} // namespace hessq::symcalc
