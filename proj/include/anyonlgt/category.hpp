#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "anyonlgt/qdeform.hpp"

namespace anyonlgt {

/// Index of a simple object in its owning model's table.
using Label = std::size_t;

struct AnyonLabel {
    Label index = 0;
    std::string name;
};

class FusionCategoryData;
using FEval = std::function<cplx(const FusionCategoryData&, Label a, Label b, Label c,
                                 Label d, Label e, Label f)>;
using REval = std::function<cplx(const FusionCategoryData&, Label a, Label b, Label c)>;

/// All data of one multiplicity-free braided fusion category: simple objects,
/// fusion table N[a][b][c] in {0,1}, duals, quantum dimensions, closed-form
/// spins, and rules evaluating F and R symbols (closed form per model, or a
/// componentwise product for stacked models).  Immutable after construction.
class FusionCategoryData {
public:
    std::string name;
    std::vector<AnyonLabel> objects;
    Label vacuum = 0;
    std::vector<Label> dual_;            // involutive
    std::vector<unsigned char> fusion_;  // n^3, N[a][b][c]
    std::vector<double> qdim_;
    std::vector<cplx> spin_;             // closed-form theta table
    FEval f_eval;                        // admissible tuples only
    REval r_eval;

    std::size_t size() const { return objects.size(); }
    Label dual(Label a) const { return dual_[a]; }
    bool fuses(Label a, Label b, Label c) const {
        return fusion_[(a * size() + b) * size() + c] != 0;
    }
    double qdim(Label a) const { return qdim_[a]; }
    cplx spin(Label a) const { return spin_[a]; }

    std::vector<Label> channels(Label a, Label b) const {
        std::vector<Label> out;
        for (Label c = 0; c < size(); ++c)
            if (fuses(a, b, c)) out.push_back(c);
        return out;
    }
    /// Unique fusion product; throws unless exactly one channel exists.
    Label fuse1(Label a, Label b) const {
        Label r = size();
        for (Label c = 0; c < size(); ++c)
            if (fuses(a, b, c)) {
                if (r != size()) throw std::domain_error(name + ": fusion not unique");
                r = c;
            }
        if (r == size()) throw std::domain_error(name + ": empty fusion product");
        return r;
    }

    void check_label(Label a) const {
        if (a >= size()) throw std::invalid_argument(name + ": label out of range");
    }
};

/// [F^{abc}_d]_{ef}.  The diagram needs all four trivalent vertices admissible:
/// a x b -> e, e x c -> d, b x c -> f, a x f -> d.  Inadmissible tuples raise
/// std::domain_error so callers can tell "forbidden" from "zero amplitude".
inline cplx f_symbol(const FusionCategoryData& m, Label a, Label b, Label c, Label d,
                     Label e, Label f) {
    for (Label x : {a, b, c, d, e, f}) m.check_label(x);
    if (!(m.fuses(a, b, e) && m.fuses(e, c, d) && m.fuses(b, c, f) && m.fuses(a, f, d)))
        throw std::domain_error(m.name + ": inadmissible F tuple");
    return m.f_eval(m, a, b, c, d, e, f);
}

/// R^{ab}_c, requires a x b -> c.
inline cplx r_symbol(const FusionCategoryData& m, Label a, Label b, Label c) {
    for (Label x : {a, b, c}) m.check_label(x);
    if (!m.fuses(a, b, c)) throw std::domain_error(m.name + ": inadmissible R tuple");
    return m.r_eval(m, a, b, c);
}

/// theta_a from R symbols via the ribbon formula
///     theta_a = sum_c (d_c / d_a) R^{aa}_c
/// restricted to admissible channels c.  The model's closed-form spin table is
/// the ground truth; verify_consistency checks both routes agree.
inline cplx topological_spin(const FusionCategoryData& m, Label a) {
    m.check_label(a);
    cplx s = 0.0;
    for (Label c = 0; c < m.size(); ++c)
        if (m.fuses(a, a, c)) s += (m.qdim(c) / m.qdim(a)) * m.r_eval(m, a, a, c);
    return s;
}

struct ModularData {
    std::vector<std::vector<cplx>> S;
    std::vector<cplx> T;  // diagonal, T_aa = theta_a
    double D = 0.0;       // total quantum dimension
};

/// S_ab = (1/D) sum_c N_{dual(a),b}^c (theta_c / theta_a theta_b) d_c,
/// T = diag(theta).  S may be degenerate (the fermion layer is non-modular).
inline ModularData modular_data(const FusionCategoryData& m) {
    ModularData md;
    const std::size_t n = m.size();
    double d2 = 0.0;
    for (Label a = 0; a < n; ++a) d2 += m.qdim(a) * m.qdim(a);
    md.D = std::sqrt(d2);
    md.S.assign(n, std::vector<cplx>(n, 0.0));
    md.T.resize(n);
    for (Label a = 0; a < n; ++a) {
        md.T[a] = m.spin(a);
        for (Label b = 0; b < n; ++b) {
            cplx s = 0.0;
            for (Label c = 0; c < n; ++c)
                if (m.fuses(m.dual(a), b, c))
                    s += m.spin(c) / (m.spin(a) * m.spin(b)) * m.qdim(c);
            md.S[a][b] = s / md.D;
        }
    }
    return md;
}

struct ConsistencyReport {
    double pentagon = 0.0;
    double hexagon_r = 0.0;
    double hexagon_rinv = 0.0;
    double f_unitarity = 0.0;
    double qdim_identity = 0.0;
    double spin_ribbon = 0.0;  // |closed-form theta - ribbon formula|
    std::size_t pentagon_count = 0;
    std::size_t hexagon_count = 0;

    double max_residual() const {
        return std::max({pentagon, hexagon_r, hexagon_rinv, f_unitarity, qdim_identity,
                         spin_ribbon});
    }
};

namespace detail {
// F with inadmissible tuples treated as structural zeros, for use inside
// quantified identities.
inline cplx f_or_zero(const FusionCategoryData& m, Label a, Label b, Label c, Label d,
                      Label e, Label f) {
    if (!(m.fuses(a, b, e) && m.fuses(e, c, d) && m.fuses(b, c, f) && m.fuses(a, f, d)))
        return 0.0;
    return m.f_eval(m, a, b, c, d, e, f);
}
} // namespace detail

/// Brute-force residuals of the multiplicity-free pentagon and both hexagon
/// identities, F-matrix unitarity, the qdim fusion identity, and the
/// ribbon-vs-table spin check, over all admissible label tuples.
inline ConsistencyReport verify_consistency(const FusionCategoryData& m) {
    using detail::f_or_zero;
    ConsistencyReport rep;
    const std::size_t n = m.size();

    // qdim identity and spins
    for (Label a = 0; a < n; ++a) {
        for (Label b = 0; b < n; ++b) {
            double rhs = 0.0;
            for (Label c = 0; c < n; ++c)
                if (m.fuses(a, b, c)) rhs += m.qdim(c);
            rep.qdim_identity =
                std::max(rep.qdim_identity, std::abs(m.qdim(a) * m.qdim(b) - rhs));
        }
        rep.spin_ribbon =
            std::max(rep.spin_ribbon, std::abs(topological_spin(m, a) - m.spin(a)));
    }

    // F-matrix unitarity: for fixed (a,b,c,d) the matrix over (e,f).
    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b)
            for (Label c = 0; c < n; ++c)
                for (Label d = 0; d < n; ++d) {
                    std::vector<Label> es, fs;
                    for (Label e = 0; e < n; ++e)
                        if (m.fuses(a, b, e) && m.fuses(e, c, d)) es.push_back(e);
                    for (Label f = 0; f < n; ++f)
                        if (m.fuses(b, c, f) && m.fuses(a, f, d)) fs.push_back(f);
                    if (es.empty() || fs.empty()) continue;
                    for (Label e1 : es)
                        for (Label e2 : es) {
                            cplx dot = 0.0;
                            for (Label f : fs)
                                dot += m.f_eval(m, a, b, c, d, e1, f) *
                                       std::conj(m.f_eval(m, a, b, c, d, e2, f));
                            rep.f_unitarity = std::max(
                                rep.f_unitarity, std::abs(dot - (e1 == e2 ? 1.0 : 0.0)));
                        }
                }

    // Pentagon: [F^{fcd}_e]_{gl} [F^{abl}_e]_{fk} =
    //           sum_h [F^{abc}_g]_{fh} [F^{ahd}_e]_{gk} [F^{bcd}_k]_{hl}
    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b)
            for (Label f = 0; f < n; ++f) {
                if (!m.fuses(a, b, f)) continue;
                for (Label c = 0; c < n; ++c)
                    for (Label g = 0; g < n; ++g) {
                        if (!m.fuses(f, c, g)) continue;
                        for (Label d = 0; d < n; ++d)
                            for (Label e = 0; e < n; ++e) {
                                if (!m.fuses(g, d, e)) continue;
                                for (Label l = 0; l < n; ++l) {
                                    if (!m.fuses(c, d, l)) continue;
                                    for (Label k = 0; k < n; ++k) {
                                        if (!m.fuses(b, l, k) || !m.fuses(a, k, e))
                                            continue;
                                        cplx lhs = f_or_zero(m, f, c, d, e, g, l) *
                                                   f_or_zero(m, a, b, l, e, f, k);
                                        cplx rhs = 0.0;
                                        for (Label h = 0; h < n; ++h)
                                            rhs += f_or_zero(m, a, b, c, g, f, h) *
                                                   f_or_zero(m, a, h, d, e, g, k) *
                                                   f_or_zero(m, b, c, d, k, h, l);
                                        rep.pentagon =
                                            std::max(rep.pentagon, std::abs(lhs - rhs));
                                        ++rep.pentagon_count;
                                    }
                                }
                            }
                    }
            }

    // Hexagons:
    //   R^{ca}_e [F^{acb}_d]_{eg} R^{cb}_g = sum_f [F^{cab}_d]_{ef} R^{cf}_d [F^{abc}_d]_{fg}
    // and the same with every R replaced by its inverse.
    for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b)
            for (Label c = 0; c < n; ++c)
                for (Label e = 0; e < n; ++e) {
                    if (!m.fuses(c, a, e)) continue;
                    for (Label d = 0; d < n; ++d) {
                        if (!m.fuses(e, b, d)) continue;
                        for (Label g = 0; g < n; ++g) {
                            if (!m.fuses(c, b, g) || !m.fuses(a, g, d)) continue;
                            cplx rca = m.r_eval(m, c, a, e), rcb = m.r_eval(m, c, b, g);
                            cplx fmid = f_or_zero(m, a, c, b, d, e, g);
                            cplx lhs1 = rca * fmid * rcb;
                            cplx lhs2 = fmid / (rca * rcb);
                            cplx rhs1 = 0.0, rhs2 = 0.0;
                            for (Label f = 0; f < n; ++f) {
                                if (!m.fuses(a, b, f) || !m.fuses(c, f, d)) continue;
                                cplx t = f_or_zero(m, c, a, b, d, e, f) *
                                         f_or_zero(m, a, b, c, d, f, g);
                                cplx rcf = m.r_eval(m, c, f, d);
                                rhs1 += t * rcf;
                                rhs2 += t / rcf;
                            }
                            rep.hexagon_r = std::max(rep.hexagon_r, std::abs(lhs1 - rhs1));
                            rep.hexagon_rinv =
                                std::max(rep.hexagon_rinv, std::abs(lhs2 - rhs2));
                            ++rep.hexagon_count;
                        }
                    }
                }

    return rep;
}

} // namespace anyonlgt
