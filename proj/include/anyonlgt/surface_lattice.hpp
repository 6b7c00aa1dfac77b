#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace anyonlgt {

/// Brick-wall fusion-surface lattice on a torus.  Every vertex is trivalent:
/// junctions carry two horizontal edges and one strut; matter vertices sit in
/// the middle of every horizontal segment and carry the dangling edge.
///
/// Floors y in [0,Ly) hold 2*Lx junctions J(y,i) and 2*Lx matter vertices
/// M(y,i).  Horizontal edges H(y,2i): J(y,i)->M(y,i) and H(y,2i+1):
/// M(y,i)->J(y,i+1).  Struts rise from even junctions with a half-brick
/// shift, S(y,2m): J(y,2m) -> J(y+1,2m+1), which keeps the lattice trivalent
/// for every Ly including Ly = 1.  Faces (bricks) number Lx*Ly; each boundary
/// walk passes ten edges and four dangling attachment points.
class SurfaceLattice {
public:
    enum class EdgeKind { horizontal, strut, dangling };

    struct Edge {
        int u, v;       // oriented u -> v; dangling edges have u = -1
        EdgeKind kind;
    };

    /// One step of a face walk: traverse `edge` (along its orientation or
    /// not), then pass the vertex `vertex` whose external leg is `leg`.
    /// Dangling legs are transverse lines, so the side the walk passes them on
    /// matters: leg_flip marks passes where the leg label enters dualized
    /// (floor-side passes, opposite the attachment side).
    struct WalkStep {
        int edge;
        bool along;
        int vertex;
        int leg;
        bool leg_flip = false;
    };

    struct Plaquette {
        int x, y;
        std::vector<WalkStep> steps;  // clockwise, closing at start_vertex
        int start_vertex;             // upper-left matter vertex
        int crossed_dangling;         // its dangling edge: the one R crossing
    };

    struct HopPath {
        int dir;                      // 0: x, 1: y
        int m_from, m_to;             // matter vertices
        int d_from, d_to;             // their dangling edges
        int side_from, side_to;       // spectator horizontal legs at the ends
        std::vector<int> edges;       // path edges from m_from to m_to
        std::vector<bool> along;
        std::vector<int> mid_vertex;  // between consecutive path edges
        std::vector<int> mid_leg;
        int crossed_mid = 0;          // index into mid_* of the R crossing
    };

    /// start_corner rotates every plaquette walk so the Wilson loop attaches
    /// and crosses at one of the four dangling passes: 0 ceiling-left,
    /// 1 ceiling-right, 2 floor-right, 3 floor-left.
    explicit SurfaceLattice(int lx, int ly, int start_corner = 0)
        : lx_(lx), ly_(ly), start_corner_(start_corner) {
        if (lx < 1 || ly < 1) throw std::invalid_argument("SurfaceLattice: need Lx,Ly >= 1");
        if (start_corner < 0 || start_corner > 3)
            throw std::invalid_argument("SurfaceLattice: start_corner in 0..3");
        build();
    }

    int lx() const { return lx_; }
    int ly() const { return ly_; }
    int n_vertices() const { return 4 * lx_ * ly_; }
    int n_inplane_edges() const { return 5 * lx_ * ly_; }
    int n_edges() const { return 7 * lx_ * ly_; }
    int n_danglings() const { return 2 * lx_ * ly_; }
    int n_plaquettes() const { return lx_ * ly_; }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& vertex_edges() const { return vertex_edges_; }
    const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }
    const std::vector<HopPath>& xpairs() const { return xpairs_; }
    const std::vector<HopPath>& ypairs() const { return ypairs_; }
    const std::vector<int>& danglings() const { return danglings_; }

    bool edge_into(int e, int vtx) const { return edges_[e].v == vtx; }

    // vertex ids
    int junction(int y, int i) const { return mod(y, ly_) * 2 * lx_ + mod(i, 2 * lx_); }
    int matter(int y, int i) const {
        return 2 * lx_ * ly_ + mod(y, ly_) * 2 * lx_ + mod(i, 2 * lx_);
    }
    // edge ids
    int horizontal(int y, int s) const {
        return mod(y, ly_) * 4 * lx_ + mod(s, 4 * lx_);
    }
    int strut(int y, int j) const {
        const int jn = mod(j, 2 * lx_);
        if (jn % 2 != 0) throw std::invalid_argument("strut: odd slot");
        return 4 * lx_ * ly_ + mod(y, ly_) * lx_ + jn / 2;
    }
    int dangling(int y, int i) const {
        return 5 * lx_ * ly_ + mod(y, ly_) * 2 * lx_ + mod(i, 2 * lx_);
    }
    /// Matter-site staggering parity (-1)^v; the matter graph is bipartite
    /// with color = slot index mod 2.
    int site_parity(int y, int i) const { return mod(i, 2 * lx_) % 2; }

    /// (y, i) of the matter vertex owning a dangling edge.
    std::pair<int, int> dangling_site(int d) const {
        const int r = d - 5 * lx_ * ly_;
        return {r / (2 * lx_), r % (2 * lx_)};
    }

private:
    static int mod(int a, int m) { return ((a % m) + m) % m; }

    void build() {
        const int n2 = 2 * lx_;
        edges_.resize(n_edges());
        for (int y = 0; y < ly_; ++y)
            for (int i = 0; i < n2; ++i) {
                edges_[horizontal(y, 2 * i)] = {junction(y, i), matter(y, i),
                                                EdgeKind::horizontal};
                edges_[horizontal(y, 2 * i + 1)] = {matter(y, i), junction(y, i + 1),
                                                    EdgeKind::horizontal};
                edges_[dangling(y, i)] = {-1, matter(y, i), EdgeKind::dangling};
            }
        for (int y = 0; y < ly_; ++y)
            for (int m = 0; m < lx_; ++m)
                edges_[strut(y, 2 * m)] = {junction(y, 2 * m), junction(y + 1, 2 * m + 1),
                                           EdgeKind::strut};

        vertex_edges_.assign(n_vertices(), {});
        for (int e = 0; e < n_edges(); ++e) {
            if (edges_[e].u >= 0) vertex_edges_[edges_[e].u].push_back(e);
            vertex_edges_[edges_[e].v].push_back(e);
        }
        for (auto& ve : vertex_edges_)
            if (ve.size() != 3) throw std::logic_error("SurfaceLattice: vertex not trivalent");

        for (int y = 0; y < ly_; ++y)
            for (int i = 0; i < n2; ++i) danglings_.push_back(dangling(y, i));

        for (int y = 0; y < ly_; ++y)
            for (int x = 0; x < lx_; ++x) plaquettes_.push_back(make_plaquette(x, y));

        for (int y = 0; y < ly_; ++y)
            for (int i = 0; i < n2; ++i) {
                xpairs_.push_back(make_xpair(y, i));
                ypairs_.push_back(make_ypair(y, i));
            }
    }

    Plaquette make_plaquette(int x, int y) const {
        Plaquette p;
        p.x = x; p.y = y;
        const int b = 2 * x;  // left-wall slot on floor y
        p.start_vertex = matter(y + 1, b + 1);
        p.crossed_dangling = dangling(y + 1, b + 1);
        auto add = [&](int edge, int vtx, int leg, bool flip = false) {
            p.steps.push_back({edge, edges_[edge].v == vtx, vtx, leg, flip});
        };
        // clockwise from the upper-left matter vertex; floor dangling passes
        // see the matter line from the far side
        add(horizontal(y + 1, 2 * (b + 1) + 1), junction(y + 1, b + 2), strut(y + 1, b + 2));
        add(horizontal(y + 1, 2 * (b + 2)), matter(y + 1, b + 2), dangling(y + 1, b + 2));
        add(horizontal(y + 1, 2 * (b + 2) + 1), junction(y + 1, b + 3), horizontal(y + 1, 2 * (b + 3)));
        add(strut(y, b + 2), junction(y, b + 2), horizontal(y, 2 * (b + 2)));
        add(horizontal(y, 2 * (b + 1) + 1), matter(y, b + 1), dangling(y, b + 1), true);
        add(horizontal(y, 2 * (b + 1)), junction(y, b + 1), strut(y - 1, b));
        add(horizontal(y, 2 * b + 1), matter(y, b), dangling(y, b), true);
        add(horizontal(y, 2 * b), junction(y, b), horizontal(y, 2 * b - 1));
        add(strut(y, b), junction(y + 1, b + 1), horizontal(y + 1, 2 * (b + 1) - 1));
        add(horizontal(y + 1, 2 * (b + 1)), p.start_vertex, p.crossed_dangling);
        // rotate so that the walk closes at the requested dangling corner
        static constexpr int corner_step[4] = {9, 1, 4, 6};
        const int j = corner_step[start_corner_];
        if (j != 9) {
            std::rotate(p.steps.begin(), p.steps.begin() + (j + 1), p.steps.end());
            p.start_vertex = p.steps.back().vertex;
            p.crossed_dangling = p.steps.back().leg;
        }
        return p;
    }

    HopPath make_xpair(int y, int i) const {
        HopPath h;
        h.dir = 0;
        h.m_from = matter(y, i);
        h.m_to = matter(y, i + 1);
        h.d_from = dangling(y, i);
        h.d_to = dangling(y, i + 1);
        h.side_from = horizontal(y, 2 * i);
        h.side_to = horizontal(y, 2 * (i + 1) + 1);
        h.edges = {horizontal(y, 2 * i + 1), horizontal(y, 2 * (i + 1))};
        h.along = {true, true};
        h.mid_vertex = {junction(y, i + 1)};
        const int in = mod(i + 1, 2 * lx_);
        h.mid_leg = {in % 2 == 0 ? strut(y, in) : strut(y - 1, in - 1)};
        h.crossed_mid = 0;
        return h;
    }

    HopPath make_ypair(int y, int i) const {
        HopPath h;
        h.dir = 1;
        h.m_from = matter(y, i);
        h.m_to = matter(y + 1, i + 1);
        h.d_from = dangling(y, i);
        h.d_to = dangling(y + 1, i + 1);
        const int in = mod(i, 2 * lx_);
        if (in % 2 == 0) {  // through the wall on the left of m_from
            h.side_from = horizontal(y, 2 * i + 1);
            h.side_to = horizontal(y + 1, 2 * (i + 1) + 1);
            h.edges = {horizontal(y, 2 * i), strut(y, i), horizontal(y + 1, 2 * (i + 1))};
            h.along = {false, true, true};
            h.mid_vertex = {junction(y, i), junction(y + 1, i + 1)};
            h.mid_leg = {horizontal(y, 2 * i - 1), horizontal(y + 1, 2 * i + 1)};
        } else {  // through the wall on the right
            h.side_from = horizontal(y, 2 * i);
            h.side_to = horizontal(y + 1, 2 * (i + 1));
            h.edges = {horizontal(y, 2 * i + 1), strut(y, i + 1),
                       horizontal(y + 1, 2 * (i + 1) + 1)};
            h.along = {true, true, false};
            h.mid_vertex = {junction(y, i + 1), junction(y + 1, i + 2)};
            h.mid_leg = {horizontal(y, 2 * (i + 1)), horizontal(y + 1, 2 * (i + 2))};
        }
        h.crossed_mid = 0;
        return h;
    }

    int lx_, ly_;
    int start_corner_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> vertex_edges_;
    std::vector<Plaquette> plaquettes_;
    std::vector<HopPath> xpairs_, ypairs_;
    std::vector<int> danglings_;
};

} // namespace anyonlgt
