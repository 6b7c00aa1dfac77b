#pragma once

#include <cstdlib>
#include <functional>
#include <thread>

#include "anyonlgt/basis.hpp"
#include "anyonlgt/sparse.hpp"

namespace anyonlgt {

namespace detail {

inline int thread_count() {
    if (const char* env = std::getenv("ANYONLGT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

/// Deterministic parallel map over basis states: per-chunk triplet buffers are
/// concatenated in chunk order, so output is identical for any thread count.
inline void parallel_states(std::size_t n, SparseOperator& out,
                            const std::function<void(std::size_t, SparseOperator&)>& fn) {
    const int nt = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
    if (nt <= 1) {
        for (std::size_t s = 0; s < n; ++s) fn(s, out);
        return;
    }
    std::vector<SparseOperator> parts(nt, SparseOperator(out.dim()));
    std::vector<std::thread> threads;
    const std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t)
        threads.emplace_back([&, t]() {
            const std::size_t lo = t * chunk, hi = std::min(n, (t + 1) * chunk);
            for (std::size_t s = lo; s < hi; ++s) fn(s, parts[t]);
        });
    for (auto& th : threads) th.join();
    for (auto& p : parts) out += p;
}

/// One F-move sliding the alpha line across a vertex, from edge x (label
/// already updated old -> new) onto edge y (branching over its new label).
/// Slot pattern, with eff() applying duals for edges oriented out of the
/// vertex:  [F^{eff(x_new), beta, eff(y_old)}_{dual(eff(t))}]_{eff(x_old), eff(y_new)},
/// beta in {alpha, dual(alpha)} fixed by admissibility of the x-triangle.
struct SlideBranch {
    Label y_new;
    cplx factor;
};

// The slide factor is one F entry whose six slots carry the six labels
// (x_old, x_new, y_old, y_new, leg, line).  The four fusion triangles of the
// move match the F symbol's four triangles tetrahedrally, which leaves
// exactly eight consistent slot assignments; the contract tests (plaquette
// unitarity and pairwise commutation, adjoint relations, convergence) fix
// the variant.  See test_operators.
struct SlideConvention {
    int junction_variant = 1;  // passes where the leg is an in-plane edge
    int near_variant = 1;      // dangling passes on the attachment side
    int far_variant = 1;       // dangling passes on the far side (leg_flip)
    bool conj_value = false;
    bool cross_conj = false;  // crossing uses R instead of R^{-1}
};
inline SlideConvention& slide_convention() {
    static SlideConvention c;
    return c;
}

enum class PassKind { junction, dangling_near, dangling_far };

inline std::vector<SlideBranch> slide(const FusionCategoryData& cat, Label alpha,
                                      Label x_old, Label x_new, bool x_into,
                                      Label y_old, bool y_into, Label t_cur,
                                      bool t_into, PassKind pass = PassKind::junction) {
    const auto& cv = slide_convention();
    const int variant = pass == PassKind::junction    ? cv.junction_variant
                        : pass == PassKind::dangling_near ? cv.near_variant
                                                          : cv.far_variant;
    auto eff = [&](Label l, bool into) { return into ? l : cat.dual(l); };
    const Label xo = eff(x_old, x_into), xn = eff(x_new, x_into);
    const Label yo = eff(y_old, y_into), tt = eff(t_cur, t_into);
    Label beta;
    if (cat.fuses(xn, alpha, xo))
        beta = alpha;
    else if (cat.fuses(xn, cat.dual(alpha), xo))
        beta = cat.dual(alpha);
    else
        return {};
    auto dl = [&](Label l) { return cat.dual(l); };
    std::vector<SlideBranch> out;
    for (Label y1 = 0; y1 < cat.size(); ++y1) {
        const Label yn = eff(y1, y_into);
        Label A, B, C, D, E, F;
        switch (variant) {
            case 1: A = xn; B = beta; C = yo; D = dl(tt); E = xo; F = yn; break;
            case 2: A = tt; B = yo; C = beta; D = dl(xn); E = dl(xo); F = yn; break;
            case 3: A = yo; B = tt; C = xn; D = dl(beta); E = dl(xo); F = dl(yn); break;
            case 4: A = beta; B = xn; C = tt; D = dl(yo); E = xo; F = dl(yn); break;
            case 5: A = xn; B = tt; C = yo; D = dl(beta); E = dl(yn); F = dl(xo); break;
            case 6: A = beta; B = yo; C = tt; D = dl(xn); E = yn; F = dl(xo); break;
            case 7: A = tt; B = xn; C = beta; D = dl(yo); E = dl(yn); F = xo; break;
            default: A = yo; B = beta; C = xn; D = dl(tt); E = yn; F = xo; break;
        }
        if (!cat.fuses(A, B, E) || !cat.fuses(E, C, D) || !cat.fuses(B, C, F) ||
            !cat.fuses(A, F, D))
            continue;
        cplx f = cat.f_eval(cat, A, B, C, D, E, F);
        if (cv.conj_value) f = std::conj(f);
        if (f != cplx(0.0)) out.push_back({eff(y1, y_into), f});
    }
    return out;
}

/// Crossing factor for the alpha line passing over the dangling edge it
/// attaches to (plaquette closure) or over a transverse leg (hopping):
/// (R^{dual(alpha), rho'}_rho)^{-1}, with the slot orientation fixed by
/// admissibility.
inline cplx crossing_r_inverse(const FusionCategoryData& cat, Label alpha, Label lab_new,
                               Label lab_old) {
    const Label ad = cat.dual(alpha);
    cplx r;
    if (cat.fuses(ad, lab_new, lab_old))
        r = cat.r_eval(cat, ad, lab_new, lab_old);
    else if (cat.fuses(alpha, lab_new, lab_old))
        r = cat.r_eval(cat, alpha, lab_new, lab_old);
    else
        throw std::logic_error("crossing_r_inverse: inadmissible crossing");
    return slide_convention().cross_conj ? r : cplx(1.0) / r;
}

struct WalkBranch {
    std::vector<std::uint8_t> labels;
    cplx amp;
    Label x_prev = 0;  // label of the most recently shifted edge before its shift
};

} // namespace detail

/// Diagonal parity operator of one dangling edge: -1 on (g1,psi), +1 on
/// (g0,1) with either occupancy (a fermion pair is even).
inline SparseOperator parity_operator(const GaugeBasis& basis, int dangling_pos) {
    SparseOperator op(static_cast<std::int64_t>(basis.dim()));
    for (std::size_t s = 0; s < basis.dim(); ++s)
        op.add(s, s, basis.occupation(basis.states[s], dangling_pos) == 1 ? -1.0 : 1.0);
    op.canonicalize();
    return op;
}

/// Diagonal q-deformed electric field strength of a non-dangling edge.
inline SparseOperator electric_operator(const GaugeBasis& basis, int edge) {
    const auto& lat = *basis.lattice;
    if (lat.edges()[edge].kind == SurfaceLattice::EdgeKind::dangling)
        throw std::invalid_argument("electric_operator: dangling edge");
    SparseOperator op(static_cast<std::int64_t>(basis.dim()));
    for (std::size_t s = 0; s < basis.dim(); ++s)
        op.add(s, s, basis.model.epsilon(basis.model.gauge_part(basis.states[s].labels[edge])));
    op.canonicalize();
    return op;
}

/// max_{a,b} | sum_c S_{0a} conj(S_{ca}) S_{cb} / S_{0b} - delta_{ab} | over
/// the gauge layer (the projector derivation behind the electric term).
inline double projector_identity_check(const ModelInstance& model) {
    const auto md = modular_data(*model.gauge);
    const std::size_t n = model.gauge->size();
    double res = 0.0;
    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b) {
            cplx sum = 0.0;
            for (Label c = 0; c < n; ++c)
                sum += md.S[0][a] * std::conj(md.S[c][a]) * md.S[c][b] / md.S[0][b];
            res = std::max(res, std::abs(sum - (a == b ? 1.0 : 0.0)));
        }
    return res;
}

/// Wilson loop of charge alpha around plaquette p, resolved into the lattice:
/// the alpha line attaches at the designated dangling edge, slides around the
/// ten boundary edges (one F per vertex), crosses the dangling line once
/// (inverse R), and closes.  Boundary edges shift by alpha with the walk
/// orientation; dangling labels and occupancies are unchanged.
inline SparseOperator plaquette_operator(const GaugeBasis& basis, int p, Label alpha) {
    const auto& lat = *basis.lattice;
    const auto& cat = *basis.model.full;
    cat.check_label(alpha);
    if (p < 0 || p >= lat.n_plaquettes())
        throw std::invalid_argument("plaquette_operator: bad plaquette");
    const auto& plq = lat.plaquettes()[p];
    const int d0 = plq.crossed_dangling;
    const int v0 = plq.start_vertex;
    const auto& steps = plq.steps;

    SparseOperator op(static_cast<std::int64_t>(basis.dim()));
    detail::parallel_states(basis.dim(), op, [&](std::size_t s, SparseOperator& out) {
        const auto& st = basis.states[s];
        const Label rho = st.labels[d0];
        std::vector<detail::WalkBranch> frontier;
        // attach: x = dangling (rho -> rho'), y = first walk edge, spectator
        // leg = last walk edge (still unshifted)
        for (Label rho_p = 0; rho_p < cat.size(); ++rho_p) {
            const int e1 = steps.front().edge, e10 = steps.back().edge;
            auto brs = detail::slide(cat, alpha, rho, rho_p, true, st.labels[e1],
                                     lat.edge_into(e1, v0), st.labels[e10],
                                     lat.edge_into(e10, v0));
            for (const auto& b : brs) {
                detail::WalkBranch wb{st.labels, b.factor, st.labels[e1]};
                wb.labels[d0] = static_cast<std::uint8_t>(rho_p);
                wb.labels[e1] = static_cast<std::uint8_t>(b.y_new);
                frontier.push_back(std::move(wb));
            }
        }
        // slides at the nine internal vertices; on wrapped walks an edge may
        // be shifted twice, so the x-side "before" label is carried along
        for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
            const auto& cur = steps[i];
            const int ynext = steps[i + 1].edge;
            std::vector<detail::WalkBranch> next;
            const bool dang =
                lat.edges()[cur.leg].kind == SurfaceLattice::EdgeKind::dangling;
            const auto pk = !dang ? detail::PassKind::junction
                            : cur.leg_flip ? detail::PassKind::dangling_far
                                           : detail::PassKind::dangling_near;
            for (auto& br : frontier) {
                auto brs = detail::slide(
                    cat, alpha, br.x_prev, br.labels[cur.edge],
                    lat.edge_into(cur.edge, cur.vertex), br.labels[ynext],
                    lat.edge_into(ynext, cur.vertex), br.labels[cur.leg],
                    lat.edge_into(cur.leg, cur.vertex) != cur.leg_flip, pk);
                for (const auto& b : brs) {
                    detail::WalkBranch wb{br.labels, br.amp * b.factor,
                                          br.labels[ynext]};
                    wb.labels[ynext] = static_cast<std::uint8_t>(b.y_new);
                    next.push_back(std::move(wb));
                }
            }
            frontier = std::move(next);
        }
        // closure: x = last walk edge, y = dangling (rho' -> rho), leg = the
        // first walk edge (already shifted); then the inverse R crossing
        const int e10 = steps.back().edge, e1 = steps.front().edge;
        for (auto& br : frontier) {
            const Label rho_p = br.labels[d0];
            auto brs = detail::slide(cat, alpha, br.x_prev, br.labels[e10],
                                     lat.edge_into(e10, v0), rho_p, true,
                                     br.labels[e1], lat.edge_into(e1, v0));
            for (const auto& b : brs) {
                if (b.y_new != rho) continue;  // dangling must be restored
                detail::WalkBranch wb{br.labels, br.amp * b.factor};
                wb.labels[d0] = static_cast<std::uint8_t>(rho);
                wb.amp *= detail::crossing_r_inverse(cat, alpha, rho_p, rho);
                GaugeBasis::State fin{wb.labels, st.bits};
                const auto idx = basis.index_of(fin);
                if (idx < 0) throw std::logic_error("plaquette_operator: image not in basis");
                if (wb.amp != cplx(0.0)) out.add(idx, s, wb.amp);
            }
        }
    });
    op.canonicalize();
    return op;
}

/// Raw hopping Wilson line of charge alpha between the two dangling edges of
/// a pair: attach at d_from (its label shifts permanently), slide along the
/// path, resolve the single transverse crossing (two F moves, an inverse R
/// and a d_{l'}/d_l weight, leg label restored), detach at d_to.  Carries the
/// sqrt(d_rho d_alpha / d_rho') end factor.  Occupancy bits are bookkept by
/// the caller (assemble_kinetic) for SU(2)_k.
inline SparseOperator hopping_operator(const GaugeBasis& basis, int pair, int dir,
                                       Label alpha,
                                       const std::vector<std::uint8_t>* bit_from = nullptr,
                                       const std::vector<std::uint8_t>* bit_to = nullptr) {
    const auto& lat = *basis.lattice;
    const auto& cat = *basis.model.full;
    cat.check_label(alpha);
    const auto& pairs = dir == 0 ? lat.xpairs() : lat.ypairs();
    if (pair < 0 || pair >= static_cast<int>(pairs.size()))
        throw std::invalid_argument("hopping_operator: bad pair");
    const auto& hp = pairs[pair];
    const auto& ds = lat.danglings();
    const int pos_from = static_cast<int>(std::find(ds.begin(), ds.end(), hp.d_from) - ds.begin());
    const int pos_to = static_cast<int>(std::find(ds.begin(), ds.end(), hp.d_to) - ds.begin());

    SparseOperator op(static_cast<std::int64_t>(basis.dim()));
    detail::parallel_states(basis.dim(), op, [&](std::size_t s, SparseOperator& out) {
        const auto& st = basis.states[s];
        if (bit_from && st.bits[pos_from] != (*bit_from)[0]) return;
        if (bit_to && st.bits[pos_to] != (*bit_to)[0]) return;
        const Label rho_f = st.labels[hp.d_from];
        std::vector<detail::WalkBranch> frontier;
        // attach at m_from: x = dangling, y = first path edge, leg = side edge
        for (Label rho_fp : {basis.model.rho0, basis.model.rho1}) {
            auto brs = detail::slide(cat, alpha, rho_f, rho_fp, true,
                                     st.labels[hp.edges[0]],
                                     lat.edge_into(hp.edges[0], hp.m_from),
                                     st.labels[hp.side_from],
                                     lat.edge_into(hp.side_from, hp.m_from));
            for (const auto& b : brs) {
                detail::WalkBranch wb{st.labels, b.factor};
                wb.amp *= std::sqrt(cat.qdim(rho_f) * cat.qdim(alpha) / cat.qdim(rho_fp));
                wb.labels[hp.d_from] = static_cast<std::uint8_t>(rho_fp);
                wb.labels[hp.edges[0]] = static_cast<std::uint8_t>(b.y_new);
                frontier.push_back(std::move(wb));
            }
        }
        // mid vertices: the crossed one resolves the transverse leg, others slide
        for (std::size_t i = 0; i < hp.mid_vertex.size(); ++i) {
            const int vtx = hp.mid_vertex[i];
            const int leg = hp.mid_leg[i];
            const int ex = hp.edges[i], ey = hp.edges[i + 1];
            std::vector<detail::WalkBranch> next;
            for (auto& br : frontier) {
                if (static_cast<int>(i) == hp.crossed_mid) {
                    // fuse alpha into the leg, braid, fuse back out
                    const Label l_old = br.labels[leg];
                    auto in_brs = detail::slide(cat, alpha, st.labels[ex], br.labels[ex],
                                                lat.edge_into(ex, vtx), l_old,
                                                lat.edge_into(leg, vtx), br.labels[ey],
                                                lat.edge_into(ey, vtx));
                    for (const auto& bi : in_brs) {
                        const Label l_mid = bi.y_new;
                        const cplx rinv = detail::crossing_r_inverse(cat, alpha, l_mid, l_old);
                        // second move: the leg returns l_mid -> l_old while the
                        // line moves onto the next path edge; the spectator is
                        // the already-shifted previous path edge
                        auto out_brs = detail::slide(cat, alpha, l_mid, l_old,
                                                     lat.edge_into(leg, vtx), br.labels[ey],
                                                     lat.edge_into(ey, vtx), br.labels[ex],
                                                     lat.edge_into(ex, vtx));
                        for (const auto& bo : out_brs) {
                            detail::WalkBranch wb{br.labels,
                                                  br.amp * bi.factor * rinv * bo.factor *
                                                      (cat.qdim(l_mid) / cat.qdim(l_old))};
                            wb.labels[ey] = static_cast<std::uint8_t>(bo.y_new);
                            next.push_back(std::move(wb));
                        }
                    }
                } else {
                    auto brs = detail::slide(cat, alpha, st.labels[ex], br.labels[ex],
                                             lat.edge_into(ex, vtx), br.labels[ey],
                                             lat.edge_into(ey, vtx), br.labels[leg],
                                             lat.edge_into(leg, vtx));
                    for (const auto& b : brs) {
                        detail::WalkBranch wb{br.labels, br.amp * b.factor};
                        wb.labels[ey] = static_cast<std::uint8_t>(b.y_new);
                        next.push_back(std::move(wb));
                    }
                }
            }
            frontier = std::move(next);
        }
        // detach at m_to: x = last path edge, y = dangling, leg = side edge
        const int em = hp.edges.back();
        for (auto& br : frontier) {
            auto brs = detail::slide(cat, alpha, st.labels[em], br.labels[em],
                                     lat.edge_into(em, hp.m_to), st.labels[hp.d_to], true,
                                     br.labels[hp.side_to],
                                     lat.edge_into(hp.side_to, hp.m_to));
            for (const auto& b : brs) {
                if (b.y_new != basis.model.rho0 && b.y_new != basis.model.rho1)
                    continue;  // dangling edges carry rho summands only
                detail::WalkBranch wb{br.labels, br.amp * b.factor};
                wb.labels[hp.d_to] = static_cast<std::uint8_t>(b.y_new);
                GaugeBasis::State fin{wb.labels, st.bits};
                if (bit_from) fin.bits[pos_from] = (*bit_from)[1];
                if (bit_to) fin.bits[pos_to] = (*bit_to)[1];
                const auto idx = basis.index_of(fin);
                if (idx < 0) continue;  // occupancy convention may forbid the image
                if (wb.amp != cplx(0.0)) out.add(idx, s, wb.amp);
            }
        }
    });
    op.canonicalize();
    return op;
}

namespace detail {

/// Diagonal projector onto states with given occupations at the two ends of a
/// hop pair (-1 occupation matches anything).
inline SparseOperator occupation_projector(const GaugeBasis& basis,
                                           const SurfaceLattice::HopPath& hp, int n_from,
                                           int n_to) {
    const auto& ds = basis.lattice->danglings();
    const int pf = static_cast<int>(std::find(ds.begin(), ds.end(), hp.d_from) - ds.begin());
    const int pt = static_cast<int>(std::find(ds.begin(), ds.end(), hp.d_to) - ds.begin());
    SparseOperator op(static_cast<std::int64_t>(basis.dim()));
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        const bool ok = (n_from < 0 || basis.occupation(basis.states[s], pf) == n_from) &&
                        (n_to < 0 || basis.occupation(basis.states[s], pt) == n_to);
        if (ok) op.add(s, s, 1.0);
    }
    op.canonicalize();
    return op;
}

} // namespace detail

/// The forward kinetic hop A_e for one pair: transport of one fermion from
/// m_from to m_to with the model's selection rules.  H_K contributes
/// c_K (A_e + A_e^dagger) per pair, c_K = 1 for U(1)_k and 1/4 for SU(2)_k.
inline SparseOperator kinetic_forward(const GaugeBasis& basis, int pair, int dir) {
    const auto& lat = *basis.lattice;
    const auto& hp = (dir == 0 ? lat.xpairs() : lat.ypairs())[pair];
    const Label alpha = basis.model.alpha;
    if (basis.model.family == GaugeFamily::u1) {
        // source occupied, target empty
        const auto proj = detail::occupation_projector(basis, hp, 1, 0);
        return hopping_operator(basis, pair, dir, alpha).multiply(proj);
    }
    // SU(2)_k: N_from in {1,2}, N_to in {0,1}; one fermion moves, occupancy
    // bits track N via (0,1)|0> = 0, (1/2,psi)|0> = 1, (0,1)|1> = 2.
    SparseOperator total(static_cast<std::int64_t>(basis.dim()));
    for (int nf : {1, 2})
        for (int nt : {0, 1}) {
            const std::vector<std::uint8_t> bf = {static_cast<std::uint8_t>(nf == 2),
                                                  static_cast<std::uint8_t>(nf - 1 == 2)};
            const std::vector<std::uint8_t> bt = {static_cast<std::uint8_t>(nt == 2),
                                                  static_cast<std::uint8_t>(nt + 1 == 2)};
            auto hop = hopping_operator(basis, pair, dir, alpha, &bf, &bt);
            total += hop.multiply(detail::occupation_projector(basis, hp, nf, nt));
        }
    total.canonicalize();
    return total;
}

struct HamiltonianTerms {
    SparseOperator mass;      // sum_v (-1)^v P_v
    SparseOperator electric;  // sum_e E_e^2 (unit strength)
    SparseOperator kinetic;   // sum_pairs c_K (A + A^dagger)
    SparseOperator magnetic;  // sum_p (T_p + T_p^dagger)
    SparseOperator total;     // g_M mass + g_K kinetic + g^2/2 electric - 1/(2 a^2 g^2) magnetic
};

inline HamiltonianTerms assemble_hamiltonian(const GaugeBasis& basis) {
    const auto& lat = *basis.lattice;
    const auto& m = basis.model;
    const std::int64_t dim = static_cast<std::int64_t>(basis.dim());
    HamiltonianTerms H{SparseOperator(dim), SparseOperator(dim), SparseOperator(dim),
                       SparseOperator(dim), SparseOperator(dim)};

    for (int p = 0; p < lat.n_danglings(); ++p) {
        const auto [y, i] = lat.dangling_site(lat.danglings()[p]);
        const double sign = lat.site_parity(y, i) ? -1.0 : 1.0;
        auto pv = parity_operator(basis, p);
        H.mass += pv.scale(sign);
    }
    for (int e = 0; e < lat.n_inplane_edges(); ++e) H.electric += electric_operator(basis, e);

    const double ck = m.family == GaugeFamily::su2 ? 0.25 : 1.0;
    for (int dir : {0, 1})
        for (int pr = 0; pr < static_cast<int>((dir == 0 ? lat.xpairs() : lat.ypairs()).size());
             ++pr) {
            auto a = kinetic_forward(basis, pr, dir);
            auto at = a.adjoint();
            a += at;
            H.kinetic += a.scale(ck);
        }
    for (int p = 0; p < lat.n_plaquettes(); ++p) {
        auto t = plaquette_operator(basis, p, m.alpha);
        auto td = t.adjoint();
        t += td;
        H.magnetic += t;
    }
    H.mass.canonicalize();
    H.electric.canonicalize();
    H.kinetic.canonicalize();
    H.magnetic.canonicalize();

    const auto& c = m.couplings;
    H.total += SparseOperator(H.mass).scale(c.g_m);
    H.total += SparseOperator(H.kinetic).scale(c.g_k);
    H.total += SparseOperator(H.electric).scale(0.5 * c.g * c.g);
    H.total += SparseOperator(H.magnetic).scale(-0.5 / (c.a * c.a * c.g * c.g));
    H.total.canonicalize();
    return H;
}

/// Global fermion parity Pi_v P_v^psi.
inline SparseOperator global_parity(const GaugeBasis& basis) {
    SparseOperator op(static_cast<std::int64_t>(basis.dim()));
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        int odd = 0;
        for (int p = 0; p < basis.lattice->n_danglings(); ++p)
            odd ^= basis.occupation(basis.states[s], p) == 1;
        op.add(s, s, odd ? -1.0 : 1.0);
    }
    op.canonicalize();
    return op;
}

} // namespace anyonlgt
