#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anyonlgt/pauli.hpp"

namespace anyonlgt {

/// Square lattice for the fermionic warm-up: modes on vertices, one qubit per
/// edge.  Edge 0-endpoint is the left (horizontal) or lower (vertical) vertex.
struct SquareLatticeSpec {
    int lx = 2, ly = 2;
    bool periodic = true;

    int vertices() const { return lx * ly; }
    int vertex(int x, int y) const {
        return ((y % ly) + ly) % ly * lx + ((x % lx) + lx) % lx;
    }

    struct Edge { int u, v; int dir; int x, y; };  // dir 0: +x, 1: +y

    std::vector<Edge> edges() const {
        std::vector<Edge> es;
        for (int y = 0; y < ly; ++y)
            for (int x = 0; x < lx; ++x) {
                if (periodic || x + 1 < lx) es.push_back({vertex(x, y), vertex(x + 1, y), 0, x, y});
            }
        for (int y = 0; y < ly; ++y)
            for (int x = 0; x < lx; ++x) {
                if (periodic || y + 1 < ly) es.push_back({vertex(x, y), vertex(x, y + 1), 1, x, y});
            }
        return es;
    }

    /// Incident edges of a vertex in the fixed slot order west, south, east,
    /// north.  This ordering is the page-orientation convention behind the
    /// Z-dressing of the encoded operators; the CAR oracle is the acceptance
    /// authority for it.
    std::vector<int> incident(int v) const {
        const auto es = edges();
        const int x = v % lx, y = v / lx;
        std::vector<int> out;
        auto find = [&](int dir, int ex, int ey) {
            const int exn = ((ex % lx) + lx) % lx, eyn = ((ey % ly) + ly) % ly;
            for (std::size_t i = 0; i < es.size(); ++i)
                if (es[i].dir == dir && es[i].x == (periodic ? exn : ex) &&
                    es[i].y == (periodic ? eyn : ey))
                    return static_cast<int>(i);
            return -1;
        };
        for (int e : {find(0, x - 1, y), find(1, x, y - 1), find(0, x, y), find(1, x, y)})
            if (e >= 0 && (periodic || true)) out.push_back(e);
        return out;
    }
};

/// P_v: product of Z on all edges incident to v.
inline PauliString vertex_parity_operator(const SquareLatticeSpec& spec, int v) {
    if (v < 0 || v >= spec.vertices())
        throw std::invalid_argument("vertex_parity_operator: bad vertex");
    const auto es = spec.edges();
    PauliString p(es.size());
    for (int e : spec.incident(v)) p.set_z(e);
    return p;
}

/// O_e = -i gammabar_{e0} gamma_{e1} in the edge-qubit encoding: X on the edge
/// qubit, Z on the incident edges before e in the target vertex's slot order
/// and after e in the source vertex's order.
inline PauliString edge_hopping_operator(const SquareLatticeSpec& spec, int e) {
    const auto es = spec.edges();
    if (e < 0 || e >= static_cast<int>(es.size()))
        throw std::invalid_argument("edge_hopping_operator: bad edge");
    PauliString p(es.size());
    p.set_x(e);
    auto dress = [&](int vtx, bool before) {
        const auto inc = spec.incident(vtx);
        bool seen = false;
        for (int f : inc) {
            if (f == e) { seen = true; continue; }
            if (before != seen) p.set_z(f);  // before: f precedes e; after: f follows e
        }
    };
    dress(es[e].v, true);   // gamma end: prefix
    dress(es[e].u, false);  // gammabar end: suffix
    return p;
}

enum class Bilinear { gamma_gamma, gbar_gbar, gamma_gbar, gbar_gamma };

/// Hermitian Majorana bilinears obtained from the parity composites
///   P_{e0} O_e = -gamma gamma,  P_{e1} O_e = gbar gbar,
///   P_{e0} P_{e1} O_e = -i gamma gbar,
/// normalized by a unit phase so every kind is Hermitian and squares to 1.
inline PauliString majorana_bilinear(const SquareLatticeSpec& spec, Bilinear kind, int e) {
    const auto es = spec.edges();
    if (e < 0 || e >= static_cast<int>(es.size()))
        throw std::invalid_argument("majorana_bilinear: bad edge");
    const PauliString O = edge_hopping_operator(spec, e);
    const PauliString P0 = vertex_parity_operator(spec, es[e].u);
    const PauliString P1 = vertex_parity_operator(spec, es[e].v);
    switch (kind) {
        case Bilinear::gamma_gamma: return (P0 * O).times_phase(3);  // i gamma gamma
        case Bilinear::gbar_gbar:   return (P1 * O).times_phase(1);  // i gbar gbar
        case Bilinear::gamma_gbar:  return P0 * P1 * O;              // -i gamma gbar
        case Bilinear::gbar_gamma:  return O;                        // -i gbar gamma
    }
    throw std::invalid_argument("majorana_bilinear: bad kind");
}

// ---------------------------------------------------------------------------
// Jordan-Wigner oracle on vertex qubits (the standard fermionic construction).

inline PauliString jw_gamma(const SquareLatticeSpec& spec, int v, bool bar) {
    PauliString p(spec.vertices());
    for (int w = 0; w < v; ++w) p.set_z(w);
    return p * PauliString::single(spec.vertices(), v, bar ? 'Y' : 'X');
}

inline PauliString oracle_parity(const SquareLatticeSpec& spec, int v) {
    // -i gamma gbar = Z_v
    return (jw_gamma(spec, v, false) * jw_gamma(spec, v, true)).times_phase(3);
}

inline PauliString oracle_hopping(const SquareLatticeSpec& spec, int e) {
    const auto es = spec.edges();
    return (jw_gamma(spec, es[e].u, true) * jw_gamma(spec, es[e].v, false)).times_phase(3);
}

inline PauliString oracle_bilinear(const SquareLatticeSpec& spec, Bilinear kind, int e) {
    const auto es = spec.edges();
    const auto g0 = jw_gamma(spec, es[e].u, false), gb0 = jw_gamma(spec, es[e].u, true);
    const auto g1 = jw_gamma(spec, es[e].v, false), gb1 = jw_gamma(spec, es[e].v, true);
    switch (kind) {
        case Bilinear::gamma_gamma: return (g0 * g1).times_phase(1);
        case Bilinear::gbar_gbar:   return (gb0 * gb1).times_phase(1);
        case Bilinear::gamma_gbar:  return (g0 * gb1).times_phase(3);
        case Bilinear::gbar_gamma:  return (gb0 * g1).times_phase(3);
    }
    throw std::invalid_argument("oracle_bilinear: bad kind");
}

/// Closed psi-line fused in from above along a cycle of lattice edges.  The
/// input is an even-degree edge set; the special case of the star of a single
/// vertex is the minimal loop around that vertex's dangling edge, which
/// resolves to the identity (the parity twist cancels the flux factor).
inline PauliString one_form_loop(const SquareLatticeSpec& spec, std::vector<int> cycle) {
    const auto es = spec.edges();
    const std::set<int> cyc(cycle.begin(), cycle.end());
    if (cyc.size() != cycle.size())
        throw std::invalid_argument("one_form_loop: repeated edge");
    if (cyc.empty()) throw std::invalid_argument("one_form_loop: empty cycle");
    for (int e : cyc)
        if (e < 0 || e >= static_cast<int>(es.size()))
            throw std::invalid_argument("one_form_loop: bad edge");

    // Star of one vertex: the minimal loop around that dangling edge; the
    // parity twist cancels the flux factor and the resolution is the identity.
    for (int v = 0; v < spec.vertices(); ++v) {
        const auto inc = spec.incident(v);
        if (cyc == std::set<int>(inc.begin(), inc.end()))
            return PauliString::identity(es.size());
    }

    std::map<int, int> degree;
    for (int e : cyc) { ++degree[es[e].u]; ++degree[es[e].v]; }
    for (auto& [v, d] : degree)
        if (d % 2 != 0) throw std::invalid_argument("one_form_loop: open path");

    // Product of edge operators along the cycle, with the fermionic value of
    // the same product (a phased product of vertex parities, computed in the
    // oracle algebra) divided back out.  What remains commutes with every
    // encoded generator.
    PauliString enc = PauliString::identity(es.size());
    PauliString orc = PauliString::identity(spec.vertices());
    for (int e : cyc) {
        enc = enc * edge_hopping_operator(spec, e);
        orc = orc * oracle_hopping(spec, e);
    }
    // orc must be diagonal (pure parities) for a closed cycle
    for (int v = 0; v < spec.vertices(); ++v)
        if (orc.x_bit(v)) throw std::logic_error("one_form_loop: oracle value not diagonal");
    PauliString val(es.size());
    for (int v = 0; v < spec.vertices(); ++v)
        if (orc.z_bit(v)) val = val * vertex_parity_operator(spec, v);
    val = val.times_phase(orc.phase_pow());
    PauliString w = enc * val.dagger();
    if (!w.is_hermitian()) w = w.times_phase(1);
    return w;
}

// ---------------------------------------------------------------------------
// verify_car: dense oracle on <= 9 modes.

/// Basis-permutation form of a Pauli string: the dense matrix has one entry
/// per column, so products and (anti)commutators are exact in O(2^n).
struct MonomialOp {
    std::vector<std::uint64_t> perm;
    std::vector<cplx> amp;

    static MonomialOp from_pauli(const PauliString& p) {
        const std::size_t dim = 1ull << p.nqubits();
        MonomialOp m;
        m.perm.resize(dim);
        m.amp.resize(dim);
        for (std::uint64_t b = 0; b < dim; ++b) {
            auto [nb, ph] = p.apply(b);
            m.perm[b] = nb;
            m.amp[b] = ph;
        }
        return m;
    }
    MonomialOp compose(const MonomialOp& inner) const {  // this * inner
        MonomialOp r;
        r.perm.resize(perm.size());
        r.amp.resize(perm.size());
        for (std::uint64_t b = 0; b < perm.size(); ++b) {
            r.perm[b] = perm[inner.perm[b]];
            r.amp[b] = amp[inner.perm[b]] * inner.amp[b];
        }
        return r;
    }
};

/// Max |A B +/- B A - target| over the full basis, exactly.
inline double monomial_bracket_residual(const MonomialOp& a, const MonomialOp& b,
                                        bool anti, cplx target_diag = 0.0) {
    const auto ab = a.compose(b), ba = b.compose(a);
    double r = 0.0;
    for (std::uint64_t s = 0; s < ab.perm.size(); ++s) {
        // [A,B]|s> has support on at most two basis states
        cplx v1 = ab.amp[s], v2 = anti ? ba.amp[s] : -ba.amp[s];
        if (ab.perm[s] == ba.perm[s]) {
            cplx tot = v1 + v2;
            if (ab.perm[s] == s) tot -= target_diag;
            r = std::max(r, std::abs(tot));
        } else {
            r = std::max(r, std::abs(v1));
            r = std::max(r, std::abs(v2));
            if (ab.perm[s] == s || ba.perm[s] == s) r = std::max(r, std::abs(target_diag));
        }
    }
    return r;
}

struct CarReport {
    int lx = 0, ly = 0;
    bool periodic = true;
    int vertices = 0, edges = 0, generators = 0;
    int independent_loops = 0;  // homology: E - V + 1 on a connected graph
    double car_dense = 0.0;          // {gamma_i, gamma_j} = 2 delta etc., dense
    double commutation = 0.0;        // encoded vs oracle pairwise (anti)commutation
    double bilinear_identities = 0.0;// Eq parity-to-bilinear sign table, dense
    double squares = 0.0;            // g^2 = 1 for every generator, both sides
    double hermiticity = 0.0;
    double loop_symmetry = 0.0;      // loops commute with every generator
    double parity_product = 0.0;     // prod_v P_v acts as +1 on the even sector

    double max_residual() const {
        return std::max({car_dense, commutation, bilinear_identities, squares,
                         hermiticity, loop_symmetry, parity_product});
    }
};

inline CarReport verify_car(const SquareLatticeSpec& spec) {
    if (spec.vertices() > 9)
        throw std::invalid_argument("verify_car: dense oracle bound is lx*ly <= 9");
    const auto es = spec.edges();
    CarReport rep;
    rep.lx = spec.lx; rep.ly = spec.ly; rep.periodic = spec.periodic;
    rep.vertices = spec.vertices();
    rep.edges = static_cast<int>(es.size());
    rep.independent_loops = rep.edges - rep.vertices + 1;

    // Dense CAR for the JW Majoranas on the full Fock space.
    std::vector<MonomialOp> maj;
    for (int v = 0; v < spec.vertices(); ++v) {
        maj.push_back(MonomialOp::from_pauli(jw_gamma(spec, v, false)));
        maj.push_back(MonomialOp::from_pauli(jw_gamma(spec, v, true)));
    }
    for (std::size_t i = 0; i < maj.size(); ++i)
        for (std::size_t j = i; j < maj.size(); ++j)
            rep.car_dense = std::max(
                rep.car_dense,
                monomial_bracket_residual(maj[i], maj[j], true, i == j ? 2.0 : 0.0));

    // Generator list: every parity, hopping and bilinear, encoded and oracle.
    std::vector<PauliString> enc, orc;
    for (int v = 0; v < spec.vertices(); ++v) {
        enc.push_back(vertex_parity_operator(spec, v));
        orc.push_back(oracle_parity(spec, v));
    }
    for (int e = 0; e < rep.edges; ++e) {
        enc.push_back(edge_hopping_operator(spec, e));
        orc.push_back(oracle_hopping(spec, e));
        for (auto k : {Bilinear::gamma_gamma, Bilinear::gbar_gbar, Bilinear::gamma_gbar}) {
            enc.push_back(majorana_bilinear(spec, k, e));
            orc.push_back(oracle_bilinear(spec, k, e));
        }
    }
    rep.generators = static_cast<int>(enc.size());

    for (std::size_t i = 0; i < enc.size(); ++i) {
        if (!(enc[i] * enc[i]).is_identity()) rep.squares = 2.0;
        if (!(orc[i] * orc[i]).is_identity()) rep.squares = 2.0;
        if (!enc[i].is_hermitian() || !orc[i].is_hermitian()) rep.hermiticity = 2.0;
        for (std::size_t j = i + 1; j < enc.size(); ++j)
            if (enc[i].commutes_with(enc[j]) != orc[i].commutes_with(orc[j]))
                rep.commutation = 2.0;
    }

    // Parity-to-bilinear sign table, as exact oracle identities.
    for (int e = 0; e < rep.edges; ++e) {
        const auto P0 = oracle_parity(spec, es[e].u), P1 = oracle_parity(spec, es[e].v);
        const auto O = oracle_hopping(spec, e);
        const auto g0 = jw_gamma(spec, es[e].u, false), gb0 = jw_gamma(spec, es[e].u, true);
        const auto g1 = jw_gamma(spec, es[e].v, false), gb1 = jw_gamma(spec, es[e].v, true);
        const bool ok = (P0 * O) == (g0 * g1).times_phase(2) &&   // P0 O = -gamma gamma
                        (P1 * O) == (gb0 * gb1) &&                // P1 O = gbar gbar
                        (P0 * P1 * O) == (g0 * gb1).times_phase(3);  // = -i gamma gbar
        if (!ok) rep.bilinear_identities = 2.0;
    }

    // Loops: all plaquettes plus, on the torus, the two straight homology
    // cycles; all must commute with every generator.
    std::vector<std::vector<int>> loops;
    auto edge_id = [&](int dir, int x, int y) {
        for (std::size_t i = 0; i < es.size(); ++i)
            if (es[i].dir == dir && es[i].x == ((x % spec.lx) + spec.lx) % spec.lx &&
                es[i].y == ((y % spec.ly) + spec.ly) % spec.ly)
                return static_cast<int>(i);
        return -1;
    };
    for (int y = 0; y < spec.ly; ++y)
        for (int x = 0; x < spec.lx; ++x) {
            std::vector<int> pl = {edge_id(0, x, y), edge_id(1, x + 1, y),
                                   edge_id(0, x, y + 1), edge_id(1, x, y)};
            std::set<int> uniq(pl.begin(), pl.end());
            if (uniq.count(-1) || uniq.size() != 4) continue;  // open boundary
            loops.push_back(pl);
        }
    if (spec.periodic && spec.lx > 1) {
        std::vector<int> row;
        for (int x = 0; x < spec.lx; ++x) row.push_back(edge_id(0, x, 0));
        loops.push_back(row);
    }
    if (spec.periodic && spec.ly > 1) {
        std::vector<int> col;
        for (int y = 0; y < spec.ly; ++y) col.push_back(edge_id(1, 0, y));
        loops.push_back(col);
    }
    for (auto& c : loops) {
        const PauliString w = one_form_loop(spec, c);
        for (auto& g : enc)
            if (!w.commutes_with(g)) rep.loop_symmetry = 2.0;
    }

    // prod_v P_v acts as +1 exactly on the even-parity sector (oracle side),
    // and the encoded product is the identity outright.
    PauliString ptot(spec.vertices());
    for (int v = 0; v < spec.vertices(); ++v) ptot = ptot * oracle_parity(spec, v);
    const auto mp = MonomialOp::from_pauli(ptot);
    for (std::uint64_t b = 0; b < mp.perm.size(); ++b)
        if (std::popcount(b) % 2 == 0)
            rep.parity_product =
                std::max(rep.parity_product,
                         std::abs(mp.amp[b] - 1.0) + (mp.perm[b] == b ? 0.0 : 1.0));
    PauliString enc_tot = PauliString::identity(es.size());
    for (int v = 0; v < spec.vertices(); ++v)
        enc_tot = enc_tot * vertex_parity_operator(spec, v);
    if (!enc_tot.is_identity()) rep.parity_product = std::max(rep.parity_product, 2.0);

    return rep;
}

} // namespace anyonlgt
