#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "anyonlgt/models.hpp"

using namespace anyonlgt;
using Catch::Approx;

namespace {
constexpr double pi = std::numbers::pi;
cplx phase(double a) { return std::polar(1.0, a); }
} // namespace

TEST_CASE("q-numbers against closed forms") {
    auto q2 = QDeformation::level(2);
    auto q3 = QDeformation::level(3);
    CHECK(qnumber(0.0, q2) == 0.0);
    CHECK(qnumber(1.0, q2) == 1.0);
    CHECK(qnumber(1.0, q3) == 1.0);
    // [2]_q = 2 cos(pi/(k+2)) oracle
    CHECK(qnumber(2.0, q2) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(qnumber(2.0, q2) == Approx(2.0 * std::cos(pi / 4)).epsilon(1e-12));
    CHECK(qnumber(2.0, q3) == Approx(2.0 * std::cos(pi / 5)).epsilon(1e-12));
    CHECK(qnumber(2.0, q3) == Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    // antisymmetry and half-integer arguments
    CHECK(qnumber(-2.0, q3) == Approx(-qnumber(2.0, q3)));
    CHECK(qnumber(0.75, q2) == Approx(std::sin(0.75 * pi / 4) / std::sin(pi / 4)));
    // undeformed limit
    CHECK(qnumber(7.0, QDeformation::undeformed()) == 7.0);

    CHECK(qfactorial(0, q2) == 1.0);
    CHECK(qfactorial(1, q2) == 1.0);
    CHECK(qfactorial(3, q3) ==
          Approx(qnumber(2, q3) * qnumber(3, q3)).epsilon(1e-12));
    CHECK_THROWS_AS(qfactorial(-1, q2), std::domain_error);
}

TEST_CASE("fermion layer {1,psi}") {
    auto f = make_fermion_layer();
    REQUIRE(f->size() == 2);
    CHECK(r_symbol(*f, 1, 1, 0) == cplx(-1.0));
    CHECK(f_symbol(*f, 0, 1, 1, 0, 1, 0) == cplx(1.0));
    CHECK(f->spin(1) == cplx(-1.0));
    CHECK(topological_spin(*f, 1) == cplx(-1.0));
    CHECK(f->spin(0) == cplx(1.0));
    CHECK_THROWS_AS(r_symbol(*f, 1, 1, 1), std::domain_error);

    auto rep = verify_consistency(*f);
    CHECK(rep.max_residual() == 0.0);

    auto md = modular_data(*f);
    // S = (1/sqrt 2) [[1,1],[1,1]]: rank one, non-modular
    const double s = 1.0 / std::sqrt(2.0);
    for (Label a = 0; a < 2; ++a)
        for (Label b = 0; b < 2; ++b) CHECK(std::abs(md.S[a][b] - cplx(s)) < 1e-12);
}

TEST_CASE("U(1)_k data") {
    CHECK_THROWS_AS(make_u1k(3), std::invalid_argument);
    CHECK_THROWS_AS(make_u1k(0), std::invalid_argument);

    auto u2 = make_u1k(2);
    CHECK(std::abs(f_symbol(*u2, 1, 1, 1, 1, 0, 0) - cplx(-1.0)) < 1e-12);
    CHECK(std::abs(r_symbol(*u2, 1, 1, 0) - cplx(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(u2->spin(1) - cplx(0.0, 1.0)) < 1e-12);
    CHECK(f_symbol(*u2, 0, 0, 0, 0, 0, 0) == cplx(1.0));

    auto u4 = make_u1k(4);
    // [F^{113}] = exp(i pi 1 (1+3-0)/4) = -1
    CHECK(std::abs(f_symbol(*u4, 1, 1, 3, 1, 2, 0) - cplx(-1.0)) < 1e-12);

    auto md = modular_data(*u2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(md.S[0][0] - cplx(s)) < 1e-12);
    CHECK(std::abs(md.S[0][1] - cplx(s)) < 1e-12);
    CHECK(std::abs(md.S[1][1] - cplx(-s)) < 1e-12);
    CHECK(std::abs(md.T[1] - cplx(0.0, 1.0)) < 1e-12);
    // unitarity cross-check
    for (Label a = 0; a < 2; ++a)
        for (Label b = 0; b < 2; ++b) {
            cplx dot = 0.0;
            for (Label c = 0; c < 2; ++c) dot += md.S[a][c] * std::conj(md.S[b][c]);
            CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-12);
        }

    for (int k : {2, 4, 6, 8}) {
        auto rep = verify_consistency(*make_u1k(k));
        INFO("U(1)_" << k);
        CHECK(rep.max_residual() < 1e-10);
    }
}

TEST_CASE("SU(2)_k data") {
    auto s2 = make_su2k(2);
    auto q2 = QDeformation::level(2);
    CHECK(s2->qdim(1) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(s2->spin(1) - phase(2 * pi * 0.75 / 4)) < 1e-12);

    // [F^{(1/2)(1/2)(1/2)}_{1/2}]: all entries of magnitude 1/sqrt 2, unitary.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Label e : {Label(0), Label(2)})
        for (Label f : {Label(0), Label(2)})
            CHECK(std::abs(f_symbol(*s2, 1, 1, 1, 1, e, f)) ==
                  Approx(inv_sqrt2).epsilon(1e-10));

    // vacuum-leg F symbols are 1
    CHECK(std::abs(f_symbol(*s2, 0, 1, 1, 0, 1, 0) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(f_symbol(*s2, 1, 0, 1, 0, 1, 1) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(f_symbol(*s2, 1, 1, 0, 0, 0, 1) - cplx(1.0)) < 1e-12);

    // R^{(1/2)(1/2)}_0 = (-1)^{-1} q^{-3/4}
    CHECK(std::abs(r_symbol(*s2, 1, 1, 0) - (-q2.qpow(-0.75))) < 1e-12);
    CHECK(std::abs(std::abs(r_symbol(*s2, 1, 1, 0)) - 1.0) < 1e-12);

    // theta_{1/2} at k=3 via closed form, cross-checked against ribbon route
    auto s3 = make_su2k(3);
    CHECK(std::abs(s3->spin(1) - phase(2 * pi * 0.75 / 5)) < 1e-12);
    CHECK(std::abs(topological_spin(*s3, 1) - s3->spin(1)) < 1e-10);

    // fusion level constraint: 1/2 x 1/2 has no spin-1 channel at k=1
    auto s1 = make_su2k(1);
    CHECK(s1->fuses(1, 1, 0));
    CHECK_FALSE(s1->fuses(1, 1, 2));

    CHECK_THROWS_AS(f_symbol(*s2, 1, 1, 1, 1, 1, 0), std::domain_error);

    for (int k : {2, 3, 4}) {
        auto rep = verify_consistency(*make_su2k(k));
        INFO("SU(2)_" << k << " pentagon=" << rep.pentagon << " hexR=" << rep.hexagon_r
                      << " hexRinv=" << rep.hexagon_rinv << " funit=" << rep.f_unitarity
                      << " spin=" << rep.spin_ribbon);
        CHECK(rep.max_residual() < 1e-9);
    }
}

TEST_CASE("SU(2)_k modular S matches the Verlinde closed form") {
    // Independent oracle: S_{jj'} = sqrt(2/(k+2)) sin(pi (2j+1)(2j'+1)/(k+2)).
    for (int k : {2, 3, 4}) {
        auto m = make_su2k(k);
        auto md = modular_data(*m);
        for (Label a = 0; a < m->size(); ++a)
            for (Label b = 0; b < m->size(); ++b) {
                const double oracle = std::sqrt(2.0 / (k + 2)) *
                                      std::sin(pi * (a + 1.0) * (b + 1.0) / (k + 2));
                INFO("k=" << k << " a=" << a << " b=" << b);
                CHECK(std::abs(md.S[a][b] - cplx(oracle)) < 1e-10);
            }
    }
}

TEST_CASE("Deligne products") {
    auto u2 = make_u1k(2);
    auto fl = make_fermion_layer();
    auto prod = deligne_product(u2, fl);
    REQUIRE(prod->size() == 4);

    // theta_{(s,psi)} = -i
    const Label s_psi = 1 * 2 + 1;
    CHECK(std::abs(prod->spin(s_psi) - cplx(0.0, -1.0)) < 1e-12);
    // R of ((1,psi),(1,psi)) is the product of layer R values
    const Label v_psi = 0 * 2 + 1;
    CHECK(r_symbol(*prod, v_psi, v_psi, 0) ==
          r_symbol(*u2, 0, 0, 0) * r_symbol(*fl, 1, 1, 0));

    auto rep2 = verify_consistency(*prod);
    CHECK(rep2.max_residual() < 1e-10);

    for (int k : {2, 3}) {
        auto p = deligne_product(make_su2k(k), fl);
        auto rep = verify_consistency(*p);
        INFO("SU(2)_" << k << " x {1,psi}");
        CHECK(rep.max_residual() < 1e-9);
    }
}

TEST_CASE("U(1)_k phase decay towards the undeformed limit") {
    // max over fixed small labels of |F-1| and |R-1| is non-increasing
    // along k = 4, 8, 16, 32.
    double prev = std::numeric_limits<double>::infinity();
    for (int k : {4, 8, 16, 32}) {
        auto m = make_u1k(k);
        double dev = 0.0;
        for (Label a : {Label(0), Label(1), Label(2)})
            for (Label b : {Label(0), Label(1), Label(2)})
                for (Label c : {Label(0), Label(1), Label(2)}) {
                    const Label e = (a + b) % m->size();
                    const Label d = (e + c) % m->size();
                    const Label f = (b + c) % m->size();
                    dev = std::max(dev, std::abs(f_symbol(*m, a, b, c, d, e, f) - 1.0));
                    dev = std::max(dev, std::abs(r_symbol(*m, a, b, e) - 1.0));
                }
        CHECK(dev <= prev + 1e-12);
        prev = dev;
    }
}
