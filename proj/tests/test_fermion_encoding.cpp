#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "anyonlgt/fermion_lattice.hpp"

using namespace anyonlgt;

TEST_CASE("pauli string algebra basics") {
    auto X = PauliString::single(2, 0, 'X');
    auto Z = PauliString::single(2, 0, 'Z');
    auto Y = PauliString::single(2, 0, 'Y');
    CHECK((X * Z).times_phase(1) == Y);  // Y = i X Z
    CHECK_FALSE(X.commutes_with(Z));
    CHECK(X.commutes_with(PauliString::single(2, 1, 'Z')));
    CHECK((Y * Y).is_identity());
    CHECK(Y.is_hermitian());
    CHECK((X * Y) == (Y * X).times_phase(2));
    CHECK(X.dagger() == X);
    CHECK((X * Z).dagger() == (Z * X));
}

TEST_CASE("pauli-to-matrix map is a homomorphism") {
    // product of masks equals matrix product, exactly
    std::mt19937_64 rng(7);
    const std::size_t n = 5;
    auto random_pauli = [&]() {
        PauliString p(n);
        for (std::size_t q = 0; q < n; ++q) {
            if (rng() & 1) p.set_x(q);
            if (rng() & 1) p.set_z(q);
        }
        return p.times_phase(static_cast<int>(rng() % 4));
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_pauli(), b = random_pauli();
        const auto prod = MonomialOp::from_pauli(a * b);
        const auto comp = MonomialOp::from_pauli(a).compose(MonomialOp::from_pauli(b));
        for (std::uint64_t s = 0; s < prod.perm.size(); ++s) {
            REQUIRE(prod.perm[s] == comp.perm[s]);
            REQUIRE(prod.amp[s] == comp.amp[s]);
        }
    }
}

TEST_CASE("lattice counts") {
    SquareLatticeSpec spec{2, 2, true};
    CHECK(spec.edges().size() == 8);  // 2 Lx Ly when periodic
    SquareLatticeSpec open{1, 2, false};
    CHECK(open.edges().size() == 1);
    SquareLatticeSpec spec33{3, 3, true};
    CHECK(spec33.edges().size() == 18);
}

TEST_CASE("encoded generators square to identity and commute as bilinears do") {
    SquareLatticeSpec spec{2, 2, true};
    const auto es = spec.edges();
    for (int e = 0; e < static_cast<int>(es.size()); ++e) {
        const auto O = edge_hopping_operator(spec, e);
        CHECK((O * O).is_identity());
        CHECK(O.is_hermitian());
        for (auto k : {Bilinear::gamma_gamma, Bilinear::gbar_gbar, Bilinear::gamma_gbar,
                       Bilinear::gbar_gamma}) {
            const auto B = majorana_bilinear(spec, k, e);
            CHECK((B * B).is_identity());
            CHECK(B.is_hermitian());
        }
    }
    for (int v = 0; v < spec.vertices(); ++v) {
        const auto P = vertex_parity_operator(spec, v);
        CHECK((P * P).is_identity());
        // P_v commutes with O_e iff v is not an endpoint of e
        for (int e = 0; e < static_cast<int>(es.size()); ++e) {
            const bool endpoint = es[e].u == v || es[e].v == v;
            CHECK(P.commutes_with(edge_hopping_operator(spec, e)) == !endpoint);
        }
    }
}

TEST_CASE("verify_car is exact on small lattices") {
    for (auto [lx, ly, per] : {std::tuple{2, 2, true}, {1, 2, false}, {3, 3, true},
                               {3, 2, true}, {2, 2, false}}) {
        SquareLatticeSpec spec{lx, ly, per};
        INFO("lattice " << lx << "x" << ly << (per ? " periodic" : " open"));
        const auto rep = verify_car(spec);
        CHECK(rep.max_residual() == 0.0);
        CHECK(rep.independent_loops == rep.edges - rep.vertices + 1);
    }
    CHECK_THROWS_AS(verify_car(SquareLatticeSpec{4, 3, true}), std::invalid_argument);
}

TEST_CASE("one-form loops") {
    SquareLatticeSpec spec{2, 2, true};
    const auto es = spec.edges();

    // minimal vertex loop: the star of v resolves to the identity
    for (int v = 0; v < spec.vertices(); ++v)
        CHECK(one_form_loop(spec, spec.incident(v)).is_identity());

    // open path rejected
    CHECK_THROWS_AS(one_form_loop(spec, {0}), std::invalid_argument);
    CHECK_THROWS_AS(one_form_loop(spec, std::vector<int>{}), std::invalid_argument);

    auto edge_id = [&](int dir, int x, int y) {
        for (std::size_t i = 0; i < es.size(); ++i)
            if (es[i].dir == dir && es[i].x == x % 2 && es[i].y == y % 2)
                return static_cast<int>(i);
        return -1;
    };

    // plaquette loops commute with every generator, exactly
    std::vector<int> plq = {edge_id(0, 0, 0), edge_id(1, 1, 0), edge_id(0, 0, 1),
                            edge_id(1, 0, 0)};
    const auto w = one_form_loop(spec, plq);
    for (int e = 0; e < static_cast<int>(es.size()); ++e) {
        CHECK(w.commutes_with(edge_hopping_operator(spec, e)));
        CHECK(w.commutes_with(majorana_bilinear(spec, Bilinear::gamma_gamma, e)));
    }
    for (int v = 0; v < spec.vertices(); ++v)
        CHECK(w.commutes_with(vertex_parity_operator(spec, v)));

    // two homologous loops differ by a product of minimal loops (mask algebra)
    std::vector<int> row0 = {edge_id(0, 0, 0), edge_id(0, 1, 0)};
    std::vector<int> row1 = {edge_id(0, 0, 1), edge_id(0, 1, 1)};
    auto w0 = one_form_loop(spec, row0);
    auto w1 = one_form_loop(spec, row1);
    std::vector<int> plq2 = {edge_id(0, 0, 0), edge_id(1, 1, 0), edge_id(0, 0, 1),
                             edge_id(1, 0, 0)};
    std::vector<int> plq3 = {edge_id(0, 1, 0), edge_id(1, 0, 0), edge_id(0, 1, 1),
                             edge_id(1, 1, 0)};
    auto wp = one_form_loop(spec, plq2) * one_form_loop(spec, plq3);
    CHECK((w0 * w1.dagger()).same_masks(wp));
}
