#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "anyonlgt/models.hpp"
#include "anyonlgt/surface_lattice.hpp"

namespace anyonlgt {

enum class GaugeFamily { u1, su2 };

struct Couplings {
    double g_m = 1.0;   // fermion mass m
    double g_k = 1.0;   // 1/2a
    double g = 1.0;     // gauge coupling
    double a = 1.0;     // lattice spacing
};

/// One of the three model specializations: the gauge layer stacked with the
/// fermion layer, the dangling-edge summands rho = (g0,1) + (g1,psi), the
/// charge carrier alpha = (g1,psi), and the electric strengths.
struct ModelInstance {
    GaugeFamily family = GaugeFamily::u1;
    int k = 2;
    std::shared_ptr<const FusionCategoryData> gauge;
    std::shared_ptr<const FusionCategoryData> fermion;
    std::shared_ptr<const FusionCategoryData> full;  // gauge x {1,psi}
    Label rho0 = 0;   // (g0, 1) in the full model
    Label rho1 = 0;   // (g1, psi)
    Label alpha = 0;  // charge carrier, = rho1
    Couplings couplings;
    bool symmetric_electric = false;  // U(1)_k charge representative min(a, k-a)

    bool has_occupancy_bits() const { return family == GaugeFamily::su2; }

    Label gauge_part(Label full_label) const { return full_label / 2; }
    Label fermion_part(Label full_label) const { return full_label % 2; }

    /// q-deformed electric field strength of a gauge-layer label.
    double epsilon(Label gauge_label) const {
        const QDeformation q = QDeformation::level(k);
        if (family == GaugeFamily::u1) {
            double rep = static_cast<double>(gauge_label);
            if (symmetric_electric)
                rep = std::min<double>(rep, static_cast<double>(k) - rep);
            return qnumber(rep * rep, q);
        }
        const double j = 0.5 * static_cast<double>(gauge_label);
        return qnumber(j * (j + 1.0), q);
    }
};

inline ModelInstance make_model_instance(GaugeFamily family, int k,
                                         Couplings c = {},
                                         bool symmetric_electric = false) {
    ModelInstance m;
    m.family = family;
    m.k = k;
    m.gauge = family == GaugeFamily::u1 ? make_u1k(k) : make_su2k(k);
    m.fermion = make_fermion_layer();
    m.full = deligne_product(m.gauge, m.fermion);
    m.rho0 = m.gauge->vacuum * 2 + 0;
    m.rho1 = 1 * 2 + 1;  // generating Wilson line with the fermion
    m.alpha = m.rho1;
    m.couplings = c;
    m.symmetric_electric = symmetric_electric;
    return m;
}

/// Parse "u1:4" / "su2:2" model strings.
inline std::pair<GaugeFamily, int> parse_model_string(const std::string& s) {
    const auto pos = s.find(':');
    if (pos == std::string::npos)
        throw std::invalid_argument("model string must look like u1:4 or su2:2");
    const std::string fam = s.substr(0, pos);
    const int k = std::stoi(s.substr(pos + 1));
    if (fam == "u1") return {GaugeFamily::u1, k};
    if (fam == "su2") return {GaugeFamily::su2, k};
    throw std::invalid_argument("unknown gauge family: " + fam);
}

/// The fusion-constrained state space: a label per edge (dangling edges
/// restricted to the rho summands) plus, for SU(2)_k, one occupancy bit per
/// dangling edge distinguishing the vacuum from the doubly occupied state.
class GaugeBasis {
public:
    struct State {
        std::vector<std::uint8_t> labels;  // per edge
        std::vector<std::uint8_t> bits;    // per dangling edge (SU(2) only)
    };

    const SurfaceLattice* lattice = nullptr;
    ModelInstance model;
    std::vector<State> states;

    std::size_t dim() const { return states.size(); }

    std::int64_t index_of(const State& s) const {
        auto it = index_.find(key(s));
        return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
    }

    /// Fermion occupation number of a dangling edge in a state.
    int occupation(const State& s, int dangling_pos) const {
        const int d = lattice->danglings()[dangling_pos];
        if (s.labels[d] == model.rho1) return 1;
        return model.has_occupancy_bits() && s.bits[dangling_pos] ? 2 : 0;
    }

    void finalize() {
        index_.clear();
        for (std::size_t i = 0; i < states.size(); ++i) index_[key(states[i])] = i;
    }

private:
    static std::string key(const State& s) {
        std::string k(s.labels.begin(), s.labels.end());
        k.push_back('|');
        k.append(s.bits.begin(), s.bits.end());
        return k;
    }
    std::unordered_map<std::string, std::size_t> index_;
};

namespace detail {

/// eff(e at w) = label if the edge points into w, its dual otherwise.
inline Label eff_label(const SurfaceLattice& lat, const FusionCategoryData& m, int e,
                       int vtx, Label l) {
    return lat.edge_into(e, vtx) ? l : m.dual(l);
}

/// vacuum in eff(e1) x eff(e2) x eff(e3)
inline bool vertex_admissible(const SurfaceLattice& lat, const FusionCategoryData& m,
                              int vtx, const std::vector<std::uint8_t>& labels) {
    const auto& ve = lat.vertex_edges()[vtx];
    const Label a = eff_label(lat, m, ve[0], vtx, labels[ve[0]]);
    const Label b = eff_label(lat, m, ve[1], vtx, labels[ve[1]]);
    const Label c = eff_label(lat, m, ve[2], vtx, labels[ve[2]]);
    return m.fuses(a, b, m.dual(c));
}

} // namespace detail

/// Enumerates all and only the admissible labelings in deterministic
/// lexicographic order by constraint propagation (floor chains first, struts
/// last; each vertex is checked as soon as its three edges are assigned).
inline GaugeBasis enumerate_basis(const SurfaceLattice& lat, const ModelInstance& model,
                                  std::size_t cap = 2'000'000) {
    GaugeBasis basis;
    basis.lattice = &lat;
    basis.model = model;
    const auto& cat = *model.full;
    const int ne = lat.n_edges();

    // assignment order: per floor i: H(y,2i), D(y,i), H(y,2i+1); then struts
    std::vector<int> order;
    for (int y = 0; y < lat.ly(); ++y)
        for (int i = 0; i < 2 * lat.lx(); ++i) {
            order.push_back(lat.horizontal(y, 2 * i));
            order.push_back(lat.dangling(y, i));
            order.push_back(lat.horizontal(y, 2 * i + 1));
        }
    for (int y = 0; y < lat.ly(); ++y)
        for (int m2 = 0; m2 < lat.lx(); ++m2) order.push_back(lat.strut(y, 2 * m2));

    // vertices checkable after each assignment step
    std::vector<int> assigned_at(ne, -1);
    for (int s = 0; s < ne; ++s) assigned_at[order[s]] = s;
    std::vector<std::vector<int>> check_after(ne);
    for (int v = 0; v < lat.n_vertices(); ++v) {
        int last = -1;
        for (int e : lat.vertex_edges()[v]) last = std::max(last, assigned_at[e]);
        check_after[last].push_back(v);
    }

    std::vector<std::uint8_t> labels(ne, 0);
    std::vector<std::uint8_t> nobits;
    auto admissible_upto = [&](int step) {
        for (int v : check_after[step])
            if (!detail::vertex_admissible(lat, cat, v, labels)) return false;
        return true;
    };

    const std::vector<Label> dangling_options = {model.rho0, model.rho1};
    std::function<void(int)> rec = [&](int step) {
        if (step == ne) {
            GaugeBasis::State st;
            st.labels = labels;
            if (model.has_occupancy_bits()) {
                // expand occupancy bits: free only on rho0 danglings
                std::vector<int> free_pos;
                const auto& ds = lat.danglings();
                for (std::size_t p = 0; p < ds.size(); ++p)
                    if (labels[ds[p]] == model.rho0) free_pos.push_back(static_cast<int>(p));
                const std::size_t nfree = free_pos.size();
                for (std::size_t bitpat = 0; bitpat < (1ull << nfree); ++bitpat) {
                    st.bits.assign(ds.size(), 0);
                    for (std::size_t b = 0; b < nfree; ++b)
                        st.bits[free_pos[b]] = (bitpat >> b) & 1;
                    basis.states.push_back(st);
                    if (basis.states.size() > cap)
                        throw std::runtime_error(
                            "enumerate_basis: dimension exceeds cap " + std::to_string(cap) +
                            " (at least " + std::to_string(basis.states.size()) + " states)");
                }
            } else {
                st.bits.assign(lat.danglings().size(), 0);
                basis.states.push_back(st);
                if (basis.states.size() > cap)
                    throw std::runtime_error(
                        "enumerate_basis: dimension exceeds cap " + std::to_string(cap) +
                        " (at least " + std::to_string(basis.states.size()) + " states)");
            }
            return;
        }
        const int e = order[step];
        if (lat.edges()[e].kind == SurfaceLattice::EdgeKind::dangling) {
            for (Label l : dangling_options) {
                labels[e] = static_cast<std::uint8_t>(l);
                if (admissible_upto(step)) rec(step + 1);
            }
        } else {
            for (Label l = 0; l < cat.size(); ++l) {
                labels[e] = static_cast<std::uint8_t>(l);
                if (admissible_upto(step)) rec(step + 1);
            }
        }
    };
    rec(0);
    basis.finalize();
    return basis;
}

} // namespace anyonlgt
