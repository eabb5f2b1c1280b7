#include <cmath>
#include <gtest/gtest.h>

#include "mhda/diagnostics.hpp"
#include "mhda/operators.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace mhda;
using namespace mhda_test;

namespace {

ScalarField cosine_mode(const SpectralGrid& g, int fx, int fy, double amp = 1.0)
{
    ScalarField f(g);
    const int n = g.n();
    f.c[g.idx((fx + n) % n, (fy + n) % n)] += Complex(0.5 * amp, 0.0);
    f.c[g.conj_idx((fx + n) % n, (fy + n) % n)] += Complex(0.5 * amp, 0.0);
    return f;
}

}  // namespace

TEST(SpectralGrid, RejectsBadParameters)
{
    EXPECT_THROW(SpectralGrid(7), std::invalid_argument);
    EXPECT_THROW(SpectralGrid(6), std::invalid_argument);
    EXPECT_THROW(SpectralGrid(16, 0.0), std::invalid_argument);
    EXPECT_THROW(SpectralGrid(16, -1.0), std::invalid_argument);
    EXPECT_NO_THROW(SpectralGrid(8));
}

TEST(SpectralGrid, MaskIsSymmetricUnderNegation)
{
    SpectralGrid g(16);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy)
            EXPECT_EQ(g.dealias_keep(ix, iy),
                      g.dealias_keep((g.n() - ix) % g.n(), (g.n() - iy) % g.n()));
}

TEST(SpectralGrid, WavenumberVanishesOnlyAtOrigin)
{
    SpectralGrid g(8);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            if (ix == 0 && iy == 0)
                EXPECT_EQ(g.k2(ix, iy), 0.0);
            else
                EXPECT_GT(g.k2(ix, iy), 0.0);
        }
}

TEST(FractionalLaplacian, UnitWavenumberIsFixedPoint)
{
    SpectralGrid g(16);
    const ScalarField f = cosine_mode(g, 1, 0);
    const ScalarField r = fractional_laplacian(f, 1.3);
    EXPECT_LT(max_coeff_diff(r, f), 1e-15);
}

TEST(FractionalLaplacian, SingleModeScaling)
{
    SpectralGrid g(16);
    const ScalarField f = cosine_mode(g, 2, 0);
    const ScalarField r = fractional_laplacian(f, 1.0);
    EXPECT_LT(max_coeff_diff(r, 2.0 * f), 1e-15);
}

TEST(FractionalLaplacian, RejectsNegativeExponent)
{
    SpectralGrid g(8);
    const ScalarField f = cosine_mode(g, 1, 0);
    EXPECT_THROW(fractional_laplacian(f, -0.1), std::invalid_argument);
}

TEST(FractionalLaplacian, ZeroModeHandling)
{
    SpectralGrid g(8);
    ScalarField f(g);
    f.c[0] = Complex(3.0, 0.0);
    EXPECT_EQ(fractional_laplacian(f, 0.7).c[0], Complex(0.0));
    EXPECT_EQ(fractional_laplacian(f, 0.0).c[0], Complex(3.0, 0.0));
}

TEST(FractionalLaplacian, MatchesDirectDftOracle)
{
    SpectralGrid g(8);
    const ScalarField f = random_scalar(g, 42, 2);
    const std::vector<double> phys = to_physical(f);

    for (double s : {0.0, 0.3, 0.5, 1.0, 1.7, 2.0}) {
        const ScalarField lib = fractional_laplacian(f, s);
        const std::vector<double> lib_phys = to_physical(lib);

        auto oracle = direct_fractional_multiplier(g, direct_dft(g, phys), s);
        const std::vector<double> oracle_phys = direct_idft(g, oracle);

        double scale = 0.0, diff = 0.0;
        for (std::size_t m = 0; m < lib_phys.size(); ++m) {
            scale = std::max(scale, std::abs(oracle_phys[m]));
            diff = std::max(diff, std::abs(lib_phys[m] - oracle_phys[m]));
        }
        EXPECT_LT(diff, 1e-12 * std::max(1.0, scale)) << "s = " << s;
    }
}

TEST(FractionalLaplacian, LinearityAndSemigroup)
{
    SpectralGrid g(16);
    const ScalarField f = random_scalar(g, 1, 5);
    const ScalarField h = random_scalar(g, 2, 5);

    const ScalarField lhs = fractional_laplacian(2.5 * f - h, 0.7);
    const ScalarField rhs =
        2.5 * fractional_laplacian(f, 0.7) - fractional_laplacian(h, 0.7);
    EXPECT_LT(rel_coeff_diff(lhs, rhs), 1e-13);

    for (double s : {0.0, 0.4, 1.1, 2.0})
        for (double t : {0.3, 0.9, 2.0}) {
            const ScalarField two_step =
                fractional_laplacian(fractional_laplacian(f, s), t);
            const ScalarField one_step = fractional_laplacian(f, s + t);
            EXPECT_LT(rel_coeff_diff(two_step, one_step), 1e-12);
        }
}

TEST(Helmholtz, ConstantFieldPassesThrough)
{
    SpectralGrid g(8);
    VectorField v(g);
    v.x.c[0] = Complex(2.0, 0.0);
    v.y.c[0] = Complex(-1.0, 0.0);
    const VectorField u = helmholtz_filter_invert(v, 3.7);
    EXPECT_LT(max_coeff_diff(u, v), 1e-15);
}

TEST(Helmholtz, SingleModeHalves)
{
    SpectralGrid g(16);
    VectorField v(g);
    v.y = cosine_mode(g, 1, 0);
    const VectorField u = helmholtz_filter_invert(v, 1.0);
    VectorField expect(g);
    expect.y = cosine_mode(g, 1, 0, 0.5);
    EXPECT_LT(max_coeff_diff(u, expect), 1e-15);
}

TEST(Helmholtz, RoundTrip)
{
    SpectralGrid g(16);
    const VectorField v = random_vector(g, 3, 5);
    for (double alpha : {0.5, 1.0, 2.0}) {
        const VectorField back =
            helmholtz_filter_apply(helmholtz_filter_invert(v, alpha), alpha);
        EXPECT_LT(max_coeff_diff(back, v),
                  1e-14 * std::max(1.0, max_abs_coeff(v.x)));
    }
}

TEST(Helmholtz, RejectsNonPositiveAlpha)
{
    SpectralGrid g(8);
    VectorField v(g);
    EXPECT_THROW(helmholtz_filter_invert(v, 0.0), std::invalid_argument);
    EXPECT_THROW(helmholtz_filter_invert(v, -1.0), std::invalid_argument);
}

TEST(VelocityFromVorticity, SingleMode)
{
    // w = cos x  ->  v = (0, sin x)
    SpectralGrid g(16);
    const ScalarField w = cosine_mode(g, 1, 0);
    const VectorField v = velocity_from_vorticity(w);

    const std::vector<double> vx = to_physical(v.x);
    const std::vector<double> vy = to_physical(v.y);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            EXPECT_NEAR(vx[g.idx(ix, iy)], 0.0, 1e-14);
            EXPECT_NEAR(vy[g.idx(ix, iy)], std::sin(g.x(ix)), 1e-14);
        }
    EXPECT_LT(max_coeff_diff(curl(v), w), 1e-15);
}

TEST(VelocityFromVorticity, ZeroAndRoundTrip)
{
    SpectralGrid g(16);
    EXPECT_LT(max_abs_coeff(velocity_from_vorticity(ScalarField(g)).x), 1e-300);

    const ScalarField w = random_scalar(g, 11, 5);
    const VectorField v = velocity_from_vorticity(w);
    EXPECT_LT(rel_coeff_diff(curl(v), w), 1e-13);
    EXPECT_LT(divergence_defect(v), 1e-14 * std::max(1.0, max_abs_coeff(w)));
    EXPECT_EQ(v.x.mean(), Complex(0.0));
    EXPECT_EQ(v.y.mean(), Complex(0.0));
}

TEST(VelocityFromVorticity, RejectsNonzeroMean)
{
    SpectralGrid g(8);
    ScalarField w(g);
    w.c[0] = Complex(1.0, 0.0);
    EXPECT_THROW(velocity_from_vorticity(w), std::invalid_argument);
}

TEST(BFromPotential, SingleModeAndConstant)
{
    // a = cos y  ->  b = (-sin y, 0), j = cos y
    SpectralGrid g(16);
    const ScalarField a = cosine_mode(g, 0, 1);
    const VectorField b = b_from_potential(a);
    const ScalarField j = current_from_potential(a);

    const std::vector<double> bx = to_physical(b.x);
    const std::vector<double> by = to_physical(b.y);
    const std::vector<double> jp = to_physical(j);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            EXPECT_NEAR(bx[g.idx(ix, iy)], -std::sin(g.x(iy)), 1e-14);
            EXPECT_NEAR(by[g.idx(ix, iy)], 0.0, 1e-14);
            EXPECT_NEAR(jp[g.idx(ix, iy)], std::cos(g.x(iy)), 1e-14);
        }

    ScalarField constant(g);
    constant.c[0] = Complex(5.0, 0.0);
    EXPECT_LT(max_abs_coeff(b_from_potential(constant).x), 1e-300);
    EXPECT_LT(max_abs_coeff(b_from_potential(constant).y), 1e-300);
}

TEST(BFromPotential, DivergenceFreeAndCurrentIdentity)
{
    SpectralGrid g(16);
    const ScalarField a = random_scalar(g, 21, 5);
    const VectorField b = b_from_potential(a);
    EXPECT_LT(divergence_defect(b), 1e-14 * std::max(1.0, max_abs_coeff(a)));

    // j = curl b must agree with -Laplacian a on band-limited fields
    const ScalarField j = curl(b);
    const ScalarField j2 = current_from_potential(a);
    EXPECT_LT(rel_coeff_diff(j, j2), 1e-13);
}

TEST(LerayProject, FixesDivergenceFreeFields)
{
    SpectralGrid g(16);
    const VectorField f = random_divfree(g, 31, 5);
    EXPECT_LT(max_coeff_diff(leray_project(f), f),
              1e-14 * std::max(1.0, max_abs_coeff(f.x)));
}

TEST(LerayProject, AnnihilatesPureGradients)
{
    SpectralGrid g(16);
    const VectorField grad = gradient(cosine_mode(g, 1, 0));
    const VectorField projected = leray_project(grad);
    EXPECT_LT(max_abs_coeff(projected.x), 1e-15);
    EXPECT_LT(max_abs_coeff(projected.y), 1e-15);
}

TEST(LerayProject, IdempotentAndDivergenceFree)
{
    SpectralGrid g(16);
    const VectorField f = random_vector(g, 41, 5);
    const VectorField once = leray_project(f);
    const VectorField twice = leray_project(once);
    EXPECT_LT(max_coeff_diff(once, twice),
              1e-14 * std::max(1.0, max_abs_coeff(f.x)));
    EXPECT_LT(divergence_defect(once), 1e-13 * std::max(1.0, max_abs_coeff(f.x)));
}

TEST(LerayProject, MatchesDirectDftOracle)
{
    SpectralGrid g(8);
    const VectorField f = random_vector(g, 51, 2);
    const VectorField lib = leray_project(f);
    const std::vector<double> lib_x = to_physical(lib.x);
    const std::vector<double> lib_y = to_physical(lib.y);

    auto cx = direct_dft(g, to_physical(f.x));
    auto cy = direct_dft(g, to_physical(f.y));
    direct_leray(g, cx, cy);
    const std::vector<double> orx = direct_idft(g, cx);
    const std::vector<double> ory = direct_idft(g, cy);

    double scale = 0.0, diff = 0.0;
    for (std::size_t m = 0; m < lib_x.size(); ++m) {
        scale = std::max({scale, std::abs(orx[m]), std::abs(ory[m])});
        diff = std::max({diff, std::abs(lib_x[m] - orx[m]),
                         std::abs(lib_y[m] - ory[m])});
    }
    EXPECT_LT(diff, 1e-12 * std::max(1.0, scale));
}

TEST(NonlinearProduct, IdentityElement)
{
    SpectralGrid g(16);
    ScalarField one(g);
    one.c[0] = Complex(1.0, 0.0);
    const ScalarField f = random_scalar(g, 61, 5);
    EXPECT_LT(rel_coeff_diff(nonlinear_product(one, f), dealias(f)), 1e-13);
}

TEST(NonlinearProduct, ProductToSum)
{
    // cos x * cos x = 1/2 + cos(2x)/2
    SpectralGrid g(16);
    const ScalarField f = cosine_mode(g, 1, 0);
    const ScalarField p = nonlinear_product(f, f);

    ScalarField expect = cosine_mode(g, 2, 0, 0.5);
    expect.c[0] += Complex(0.5, 0.0);
    EXPECT_LT(max_coeff_diff(p, expect), 1e-14);
}

TEST(NonlinearProduct, MatchesConvolutionOracle)
{
    SpectralGrid g(8);
    const ScalarField f = random_scalar(g, 71, 2);
    const ScalarField h = random_scalar(g, 72, 2);
    const ScalarField lib = nonlinear_product(f, h);
    const ScalarField oracle = convolution_product(f, h);
    EXPECT_LT(rel_coeff_diff(lib, oracle), 1e-12);
}

TEST(NonlinearProduct, RejectsGridMismatch)
{
    SpectralGrid g1(8), g2(16);
    ScalarField f(g1), h(g2);
    EXPECT_THROW(nonlinear_product(f, h), std::invalid_argument);
}

TEST(Dealias, MaskBehavior)
{
    SpectralGrid g(16);
    const ScalarField inside = random_scalar(g, 81, 5);
    EXPECT_LT(max_coeff_diff(dealias(inside), inside), 1e-300);

    // a mode at kx = n/2 - 1 sits outside the mask for any n >= 8
    const ScalarField edge = cosine_mode(g, g.n() / 2 - 1, 0);
    EXPECT_LT(max_abs_coeff(dealias(edge)), 1e-300);

    ScalarField wide(g);
    for (std::size_t m = 0; m < wide.c.size(); ++m)
        wide.c[m] = Complex(1.0, 0.0);
    EXPECT_LT(max_coeff_diff(dealias(dealias(wide)), dealias(wide)), 1e-300);
}

TEST(Invariants, OperationsPreserveHermitianSymmetry)
{
    SpectralGrid g(16);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const ScalarField f = random_scalar(g, seed, 5);
        const ScalarField h = random_scalar(g, seed + 50, 5);
        EXPECT_LT(hermitian_defect(fractional_laplacian(f, 0.7)), 1e-13);
        EXPECT_LT(hermitian_defect(velocity_from_vorticity(f)), 1e-13);
        EXPECT_LT(hermitian_defect(b_from_potential(f)), 1e-13);
        EXPECT_LT(hermitian_defect(nonlinear_product(f, h)), 1e-13);
        EXPECT_LT(hermitian_defect(leray_project(random_vector(g, seed, 5))),
                  1e-13);
        EXPECT_LT(hermitian_defect(gradient(f)), 1e-13);
    }
}

TEST(Invariants, CurlEqualsGradientNormForDivergenceFree)
{
    // for divergence-free zero-mean f:  ||grad f|| = ||curl f||
    SpectralGrid g(16);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const VectorField f = random_divfree(g, 1000 + seed, 5);
        const double grad_norm = std::hypot(sobolev_norm(f.x, 1.0),
                                            sobolev_norm(f.y, 1.0));
        const double curl_norm = sobolev_norm(curl(f), 0.0);
        EXPECT_LT(std::abs(grad_norm - curl_norm),
                  1e-12 * std::max(1.0, curl_norm));
    }
}

TEST(Invariants, ParsevalIdentity)
{
    SpectralGrid g(16);
    const ScalarField f = random_scalar(g, 91, 5);
    const std::vector<double> phys = to_physical(f);
    double quad = 0.0;
    for (double v : phys) quad += v * v;
    quad = std::sqrt(quad * g.cell_area());
    const double spectral = sobolev_norm(f, 0.0);
    EXPECT_LT(std::abs(quad - spectral), 1e-12 * std::max(1.0, spectral));
}
