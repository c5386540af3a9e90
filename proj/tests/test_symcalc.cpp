#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "hessq/symcalc.hpp"
#include "test_util.hpp"

using namespace hessq;
namespace sc = hessq::symcalc;
using testutil::Rng;

namespace {

std::vector<double> random_positive(Rng& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> ud(lo, hi);
    std::vector<double> v(static_cast<size_t>(n));
    for (auto& x : v) x = ud(rng);
    return v;
}

} // namespace

TEST_CASE("elementary symmetric polynomials") {
    std::array<double, 3> ones{1.0, 1.0, 1.0};
    CHECK(sc::elementary_symmetric(ones, 2) == doctest::Approx(3.0));

    std::array<double, 3> l123{1.0, 2.0, 3.0};
    CHECK(sc::elementary_symmetric(l123, 3) ==
          doctest::Approx(testutil::esf_enumerated(l123, 3)));
    CHECK(sc::elementary_symmetric(l123, 3) == doctest::Approx(6.0));

    std::array<double, 2> l25{2.0, 5.0};
    CHECK(sc::elementary_symmetric(l25, 0) == doctest::Approx(1.0));

    CHECK_THROWS_AS(sc::elementary_symmetric(l25, 3), std::domain_error);
    CHECK_THROWS_AS(sc::elementary_symmetric(l25, -1), std::domain_error);
}

TEST_CASE("recurrence matches enumeration on random input") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + int(rng() % 7u); // up to 8
        auto lam = random_positive(rng, n, -2.0, 3.0);
        for (int k = 0; k <= n; ++k) {
            const double ref = testutil::esf_enumerated(lam, k);
            const double got = sc::elementary_symmetric(lam, k);
            CHECK(got == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("deleted-index values") {
    std::array<double, 3> l123{1.0, 2.0, 3.0};
    CHECK(sc::sym_deleted(l123, 2, 0) == doctest::Approx(6.0));
    CHECK(sc::sym_deleted(l123, 1, 1, 2) == doctest::Approx(1.0));
    std::array<double, 2> l47{4.0, 7.0};
    CHECK(sc::sym_deleted(l47, 0, 0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(sc::sym_deleted(l123, 1, 1, 1), std::domain_error);
    CHECK_THROWS_AS(sc::sym_deleted(l123, 1, 5), std::domain_error);
}

TEST_CASE("deletion recurrence S_{k;i} = S_k - lambda_i S_{k-1;i}") {
    // Exact on small integers.
    std::array<double, 4> small{1.0, 2.0, 3.0, 5.0};
    auto d = sc::sym_derivatives(small);
    for (int k = 1; k <= 4; ++k)
        for (int i = 0; i < 4; ++i)
            CHECK(d.S_minus_i(k, i) == d.S(k) - small[size_t(i)] * d.S_minus_i(k - 1, i));

    // Relative 1e-12 in floating point.
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + int(rng() % 5u);
        auto lam = random_positive(rng, n, 0.1, 4.0);
        const double scale = sc::problem_scale(lam);
        auto dv = sc::sym_derivatives(lam);
        for (int k = 1; k <= n; ++k)
            for (int i = 0; i < n; ++i) {
                const double lhs = dv.S_minus_i(k, i);
                const double rhs = dv.S(k) - lam[size_t(i)] * dv.S_minus_i(k - 1, i);
                CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
            }
    }
}

TEST_CASE("quotient operator values") {
    HermMat id3 = HermMat::Identity(3, 3);
    CHECK(sc::quotient_F(id3, id3, 2) == doctest::Approx(std::sqrt(1.0 / 3.0)));

    HermMat a = HermMat::Zero(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 3.0;
    HermMat id2 = HermMat::Identity(2, 2);
    CHECK(sc::quotient_F(a, id2, 2) == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("quotient operator rejects non-admissible input") {
    HermMat a = HermMat::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -0.5;
    HermMat id2 = HermMat::Identity(2, 2);
    try {
        sc::quotient_F(a, id2, 1);
        FAIL("expected AdmissibilityError");
    } catch (const AdmissibilityError& e) {
        CHECK(e.min_eigenvalue() == doctest::Approx(-0.5));
    }
}

TEST_CASE("homogeneity F(tA) = t F(A)") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + int(rng() % 5u);
        const int alpha = 1 + int(rng() % unsigned(n));
        HermMat a = testutil::random_hermitian_pd(rng, n, 0.3, 3.0);
        HermMat g = testutil::random_hermitian_pd(rng, n, 0.5, 2.0);
        const double f = sc::quotient_F(a, g, alpha);
        for (double t : {2.5, 0.07, 9.5}) {
            const double ft = sc::quotient_F((t * a).eval(), g, alpha);
            CHECK(std::abs(ft - t * f) <= 1e-12 * t * f);
        }
    }
}

TEST_CASE("concavity along segments") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + int(rng() % 5u);
        const int alpha = 1 + int(rng() % unsigned(n));
        HermMat g = testutil::random_hermitian_pd(rng, n, 0.5, 2.0);
        HermMat a = testutil::random_hermitian_pd(rng, n, 0.2, 4.0);
        HermMat b = testutil::random_hermitian_pd(rng, n, 0.2, 4.0);
        const double fa = sc::quotient_F(a, g, alpha);
        const double fb = sc::quotient_F(b, g, alpha);
        std::uniform_real_distribution<double> ud(0.0, 1.0);
        const double th = ud(rng);
        const double fm =
            sc::quotient_F((th * a + (1.0 - th) * b).eval(), g, alpha);
        CHECK(fm >= th * fa + (1.0 - th) * fb - 1e-10 * std::max(fa, fb));
    }
}

TEST_CASE("duality S_n/S_{n-a} (lambda) * S_a (1/lambda) = 1") {
    Rng rng(19);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + int(rng() % 5u);
        const int alpha = 1 + int(rng() % unsigned(n));
        auto lam = random_positive(rng, n, 0.05, 10.0);
        std::vector<double> mu(lam.size());
        for (size_t i = 0; i < lam.size(); ++i) mu[i] = 1.0 / lam[i];
        const double q = sc::elementary_symmetric(lam, n) /
                         sc::elementary_symmetric(lam, n - alpha);
        const double prod = q * sc::elementary_symmetric(mu, alpha);
        CHECK(prod == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("gradient at identity is isotropic with c = F(I)/n") {
    for (int n : {2, 3, 5}) {
        HermMat id = HermMat::Identity(n, n);
        for (int alpha = 1; alpha <= n; ++alpha) {
            auto res = sc::quotient_F_with_gradient(id, id, alpha);
            const double c = res.value / double(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const cplx want = (i == j) ? cplx(c) : cplx(0.0);
                    CHECK(std::abs(res.gradient(i, j) - want) < 1e-13);
                }
        }
    }
}

TEST_CASE("gradient matches central finite differences") {
    Rng rng(23);
    const double step = 1e-5;
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + int(rng() % 5u);
        const int alpha = 1 + int(rng() % unsigned(n));
        HermMat g = testutil::random_hermitian_pd(rng, n, 0.5, 2.0);
        HermMat a = testutil::random_hermitian_pd(rng, n, 0.4, 3.0);
        auto res = sc::quotient_F_with_gradient(a, g, alpha);
        HermMat h = testutil::random_hermitian(rng, n);
        const double analytic = herm_pairing(res.gradient, h);
        const double fp = sc::quotient_F((a + step * h).eval(), g, alpha);
        const double fm = sc::quotient_F((a - step * h).eval(), g, alpha);
        const double fd = (fp - fm) / (2.0 * step);
        CHECK(std::abs(analytic - fd) <=
              1e-6 * std::max(1.0, std::abs(analytic)));
    }
}

TEST_CASE("gradient stays consistent at near-degenerate spectra") {
    Rng rng(29);
    const double step = 1e-5;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + int(rng() % 3u);
        const int alpha = 1 + int(rng() % unsigned(n));
        // Two nearly coincident eigenvalues, gap below 1e-8.
        std::vector<double> lam = random_positive(rng, n, 0.5, 2.0);
        lam[1] = lam[0] * (1.0 + 3e-9);
        std::sort(lam.begin(), lam.end());
        HermMat a = testutil::random_hermitian_with_spectrum(rng, lam);
        HermMat id = HermMat::Identity(n, n);
        auto res = sc::quotient_F_with_gradient(a, id, alpha);
        HermMat h = testutil::random_hermitian(rng, n);
        const double analytic = herm_pairing(res.gradient, h);
        const double fp = sc::quotient_F((a + step * h).eval(), id, alpha);
        const double fm = sc::quotient_F((a - step * h).eval(), id, alpha);
        const double fd = (fp - fm) / (2.0 * step);
        CHECK(std::abs(analytic - fd) <=
              1e-6 * std::max(1.0, std::abs(analytic)));
    }
}

TEST_CASE("gradient is positive definite on random admissible input") {
    Rng rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + int(rng() % 5u);
        const int alpha = 1 + int(rng() % unsigned(n));
        HermMat g = testutil::random_hermitian_pd(rng, n, 0.5, 2.0);
        HermMat a = testutil::random_hermitian_pd(rng, n, 0.1, 5.0);
        auto res = sc::quotient_F_with_gradient(a, g, alpha);
        CHECK(hermitian_eigs(res.gradient).lambda(0) > 0.0);
    }
}

TEST_CASE("divided difference guard reproduces the analytic derivative") {
    auto f = [](double x) { return 1.0 / x; };
    auto df = [](double x) { return -1.0 / (x * x); };
    // Far apart: true quotient.
    CHECK(sc::stable_divided_difference(f, df, 1.0, 2.0, 1.0) ==
          doctest::Approx(-0.5));
    // Below the 1e-8 * scale gap: analytic midpoint derivative.
    const double x = 1.0, y = 1.0 + 3e-9;
    CHECK(sc::stable_divided_difference(f, df, x, y, 1.0) ==
          doctest::Approx(df(0.5 * (x + y))).epsilon(1e-12));
}

TEST_CASE("glz inequality chain: hand values") {
    std::array<double, 2> lam{1.0, 1.0};
    std::array<cplx, 2> xi{cplx(1.0), cplx(1.0)};
    auto [gap, middle] = sc::glz_inequality_gap(lam, xi, 2);
    // First sum = 2, cross sum = 2, middle = |1 + 1|^2 / S_2 = 4.
    CHECK(gap == doctest::Approx(0.0));
    CHECK(middle == doctest::Approx(4.0));
    CHECK(gap >= -1e-12);
    CHECK(middle >= 0.0);
}

TEST_CASE("glz at equal eigenvalues gives the symmetric middle value") {
    Rng rng(37);
    for (int n : {3, 4, 6}) {
        for (int alpha = 2; alpha <= n; ++alpha) {
            std::vector<double> lam(size_t(n), 1.0);
            std::vector<cplx> xi(static_cast<size_t>(n));
            std::normal_distribution<double> nd;
            cplx sum = 0.0;
            for (auto& x : xi) {
                x = cplx(nd(rng), nd(rng));
                sum += x;
            }
            auto [gap, middle] = sc::glz_inequality_gap(lam, xi, alpha);
            const double s1 = sc::binomial(n - 1, alpha - 1);
            const double want = s1 * s1 * std::norm(sum) / sc::binomial(n, alpha);
            CHECK(middle == doctest::Approx(want).epsilon(1e-12));
            CHECK(middle >= 0.0);
            CHECK(gap >= -1e-10);
        }
    }
}

TEST_CASE("glz inequality chain: randomized sweep") {
    Rng rng(41);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 2 + int(rng() % 5u);
        const int alpha = 2 + int(rng() % unsigned(n - 1));
        auto lam = random_positive(rng, n, 0.05, 5.0);
        std::vector<cplx> xi(static_cast<size_t>(n));
        for (auto& x : xi) x = cplx(nd(rng), nd(rng));
        const double scale =
            sc::problem_scale(lam) * std::max(1.0, std::norm(xi[0]));
        auto [gap, middle] = sc::glz_inequality_gap(lam, xi, alpha);
        CHECK(gap >= -1e-10 * scale);
        CHECK(middle >= 0.0);
    }
    std::array<double, 2> lam{1.0, 1.0};
    std::array<cplx, 2> xi{cplx(1.0), cplx(1.0)};
    CHECK_THROWS_AS(sc::glz_inequality_gap(lam, xi, 1), std::domain_error);
    std::array<double, 2> bad{1.0, -1.0};
    CHECK_THROWS_AS(sc::glz_inequality_gap(bad, xi, 2), std::domain_error);
}

TEST_CASE("third-derivative consequence of the glz chain") {
    // sum over l of the quadratic form built from xi_i = mu_i^2 t_{iil}
    // stays nonnegative.
    Rng rng(43);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + int(rng() % 4u);
        const int alpha = 2 + int(rng() % unsigned(n - 1));
        auto g_diag = random_positive(rng, n, 0.3, 3.0);
        std::vector<double> mu(g_diag.size());
        for (size_t i = 0; i < mu.size(); ++i) mu[i] = 1.0 / g_diag[i];
        double total = 0.0;
        double scale = 0.0;
        for (int l = 0; l < n; ++l) {
            std::vector<cplx> xi(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) {
                const cplx t(nd(rng), nd(rng));
                xi[size_t(i)] = mu[size_t(i)] * mu[size_t(i)] * t;
            }
            auto [gap, middle] = sc::glz_inequality_gap(mu, xi, alpha);
            total += gap + middle; // LHS of the chain for this l
            scale += std::abs(gap) + middle;
        }
        CHECK(total >= -1e-10 * std::max(1.0, scale));
    }
}

TEST_CASE("first-derivative residual vanishes on induced data") {
    // Constant family.
    std::array<double, 2> g{1.0, 1.0};
    std::array<cplx, 2> dz{cplx(0.0), cplx(0.0)};
    CHECK(std::abs(sc::first_derivative_residual(g, dz, cplx(0.0), 1)) == 0.0);

    // One-parameter family diag(1+s, 1), alpha = 1:
    // psi^{-1} = (2+s)/(2(1+s)), d/ds psi^{-1} = -1/(2 (1+s)^2).
    for (double s : {0.0, 0.3, 1.7}) {
        std::array<double, 2> gd{1.0 + s, 1.0};
        std::array<cplx, 2> dgd{cplx(1.0), cplx(0.0)};
        const cplx dpsi_inv(-1.0 / (2.0 * (1.0 + s) * (1.0 + s)));
        const cplx r = sc::first_derivative_residual(gd, dgd, dpsi_inv, 1);
        CHECK(std::abs(r) < 1e-14);
    }
}

TEST_CASE("first-derivative residual vs finite differences on random family") {
    Rng rng(47);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + int(rng() % 4u);
        const int alpha = 1 + int(rng() % unsigned(n));
        auto base = random_positive(rng, n, 0.5, 2.5);
        std::vector<double> dir(static_cast<size_t>(n));
        for (auto& d : dir) d = nd(rng);
        const double cna = sc::binomial(n, alpha);
        auto psi_inv = [&](double s) {
            std::vector<double> mu(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                mu[size_t(i)] = 1.0 / (base[size_t(i)] + s * dir[size_t(i)]);
            return sc::elementary_symmetric(mu, alpha) / cna;
        };
        const double h = 1e-6;
        const cplx dpsi_inv((psi_inv(h) - psi_inv(-h)) / (2.0 * h));
        std::vector<cplx> dg(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) dg[size_t(i)] = dir[size_t(i)];
        const cplx r = sc::first_derivative_residual(base, dg, dpsi_inv, alpha);
        CHECK(std::abs(r) < 1e-6 * std::max(1.0, std::abs(dpsi_inv) * cna));
    }
}
