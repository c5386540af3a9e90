#pragma once

#include <Eigen/Dense>
#include <complex>

#include "hessq/errors.hpp"

namespace hessq {

using cplx = std::complex<double>;

// Small dense types used throughout. Dimensions are tiny (n <= 8), so the
// matrices live on the stack.
using HermMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                              Eigen::ColMajor, 8, 8>;
using CplxVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, Eigen::ColMajor, 8, 1>;
using RealVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 8, 1>;

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and a
/// unitary basis with A = U diag(lambda) U*.
struct EigenSpectrum {
    RealVec lambda;
    HermMat basis;

    /// U diag(lambda) U*, for reconstruction tests.
    HermMat reconstruct() const {
        return basis * lambda.asDiagonal() * basis.adjoint();
    }
};

/// Generalized spectrum of (A, G) with G positive definite:
/// A V = G V diag(lambda), normalized so V* G V = I.
struct GenSpectrum {
    RealVec lambda;   // ascending
    HermMat vectors;  // columns v_k
};

inline EigenSpectrum hermitian_eigs(const HermMat& a) {
    Eigen::SelfAdjointEigenSolver<HermMat> es(a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

/// Generalized eigenvalues of A relative to a positive definite metric G,
/// via Cholesky reduction G = L L*, B = L^{-1} A L^{-*}.
inline GenSpectrum generalized_eigs(const HermMat& a, const HermMat& metric) {
    Eigen::LLT<HermMat> llt(metric);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("metric is not positive definite");
    const HermMat l = llt.matrixL();
    HermMat b = l.template triangularView<Eigen::Lower>().solve(a);
    b = l.template triangularView<Eigen::Lower>()
            .solve(b.adjoint().eval())
            .adjoint();
    Eigen::SelfAdjointEigenSolver<HermMat> es(0.5 * (b + b.adjoint()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("generalized eigendecomposition failed");
    GenSpectrum out;
    out.lambda = es.eigenvalues();
    out.vectors = l.adjoint()
                      .template triangularView<Eigen::Upper>()
                      .solve(es.eigenvectors());
    return out;
}

/// Minimum generalized eigenvalue of (A, G); the admissibility margin of A.
inline double min_generalized_eigenvalue(const HermMat& a, const HermMat& metric) {
    return generalized_eigs(a, metric).lambda(0);
}

/// Real pairing tr(W H) of two Hermitian matrices (imaginary part cancels).
inline double herm_pairing(const HermMat& w, const HermMat& h) {
    return (w * h).trace().real();
}

} // namespace hessq
