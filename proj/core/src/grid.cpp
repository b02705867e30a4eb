#include "pflab/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pflab {

namespace {

constexpr int kMinNodesPerAxis = 8;
constexpr double kCurvatureSlack = 1e-8;

void check_dim(std::size_t d) {
    if (d < 1 || d > 3) throw std::invalid_argument("grid: dimension must be 1, 2, or 3");
}

// Central differences of the graph function at x' (n-1 coordinates).
struct GraphDerivs {
    std::array<double, 2> d1{};
    std::array<std::array<double, 2>, 2> d2{};
};

GraphDerivs graph_derivs(const EpigraphSpec& spec, std::span<const double> xp) {
    const double step = 1e-4;
    const int m = static_cast<int>(xp.size());
    std::array<double, 2> p{};
    for (int i = 0; i < m; ++i) p[i] = xp[i];
    auto eval = [&](std::array<double, 2> q) { return spec.graph(std::span<const double>(q.data(), m)); };
    GraphDerivs out;
    const double h0 = eval(p);
    for (int i = 0; i < m; ++i) {
        auto pp = p, pm = p;
        pp[i] += step;
        pm[i] -= step;
        const double fp = eval(pp), fm = eval(pm);
        out.d1[i] = (fp - fm) / (2.0 * step);
        out.d2[i][i] = (fp - 2.0 * h0 + fm) / (step * step);
    }
    if (m == 2) {
        auto q1 = p, q2 = p, q3 = p, q4 = p;
        q1[0] += step; q1[1] += step;
        q2[0] += step; q2[1] -= step;
        q3[0] -= step; q3[1] += step;
        q4[0] -= step; q4[1] -= step;
        out.d2[0][1] = out.d2[1][0] = (eval(q1) - eval(q2) - eval(q3) + eval(q4)) / (4.0 * step * step);
    }
    return out;
}

double mean_curvature_at(const EpigraphSpec& spec, int ambient_dim, std::span<const double> xp) {
    const int m = ambient_dim - 1;
    const GraphDerivs d = graph_derivs(spec, xp);
    double g2 = 0.0;
    for (int i = 0; i < m; ++i) g2 += d.d1[i] * d.d1[i];
    const double w = std::sqrt(1.0 + g2);
    double trace = 0.0, quad = 0.0;
    for (int i = 0; i < m; ++i) {
        trace += d.d2[i][i];
        for (int j = 0; j < m; ++j) quad += d.d1[i] * d.d1[j] * d.d2[i][j];
    }
    return trace / w - quad / (w * w * w);
}

} // namespace

std::vector<double> epigraph_mean_curvature(const EpigraphSpec& spec, int ambient_dim,
                                            const std::vector<std::vector<double>>& points) {
    if (ambient_dim < 2 || ambient_dim > 3)
        throw std::invalid_argument("mean curvature: ambient dimension must be 2 or 3");
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != ambient_dim - 1)
            throw std::invalid_argument("mean curvature: point dimension mismatch");
        out.push_back(mean_curvature_at(spec, ambient_dim, std::span<const double>(p.data(), p.size())));
    }
    return out;
}

std::shared_ptr<const Grid> Grid::torus(std::vector<double> extents, std::vector<int> counts,
                                        std::vector<double> origins) {
    check_dim(extents.size());
    if (counts.size() != extents.size()) throw std::invalid_argument("torus: extents/counts size mismatch");
    if (origins.empty()) origins.assign(extents.size(), 0.0);
    if (origins.size() != extents.size()) throw std::invalid_argument("torus: origins size mismatch");

    auto g = std::shared_ptr<Grid>(new Grid);
    g->dim_ = static_cast<int>(extents.size());
    g->policy_ = BoundaryPolicy::periodic;
    g->total_ = 1;
    for (int a = 0; a < g->dim_; ++a) {
        if (!(extents[a] > 0.0)) throw std::invalid_argument("torus: extents must be positive");
        if (counts[a] < kMinNodesPerAxis)
            throw std::invalid_argument("torus: resolution below 8 nodes per axis");
        g->origin_[a] = origins[a];
        g->extent_[a] = extents[a];
        g->nodes_[a] = counts[a];
        g->spacing_[a] = extents[a] / counts[a];
        g->total_ *= counts[a];
    }
    g->active_.resize(static_cast<std::size_t>(g->total_));
    for (std::int64_t i = 0; i < g->total_; ++i) g->active_[static_cast<std::size_t>(i)] = i;
    return g;
}

std::shared_ptr<const Grid> Grid::box(std::vector<double> lo, std::vector<double> hi,
                                      std::vector<int> cells) {
    check_dim(lo.size());
    // A box is an epigraph whose graph lies below the bottom face: no
    // graph_boundary nodes, no dead nodes, faces frozen.
    const double below = lo.back() - 1.0;
    EpigraphSpec spec;
    spec.graph = [below](std::span<const double>) { return below; };
    spec.slope_bound = 0.0;
    return epigraph(std::move(lo), std::move(hi), std::move(cells), std::move(spec));
}

std::shared_ptr<const Grid> Grid::epigraph(std::vector<double> lo, std::vector<double> hi,
                                           std::vector<int> cells, EpigraphSpec spec) {
    check_dim(lo.size());
    if (hi.size() != lo.size() || cells.size() != lo.size())
        throw std::invalid_argument("epigraph: lo/hi/cells size mismatch");
    if (!spec.graph) throw std::invalid_argument("epigraph: missing graph function");

    auto g = std::shared_ptr<Grid>(new Grid);
    g->dim_ = static_cast<int>(lo.size());
    g->policy_ = BoundaryPolicy::epigraph_dirichlet;
    g->total_ = 1;
    for (int a = 0; a < g->dim_; ++a) {
        const double ext = hi[a] - lo[a];
        if (!(ext > 0.0)) throw std::invalid_argument("epigraph: box extents must be positive");
        if (cells[a] + 1 < kMinNodesPerAxis)
            throw std::invalid_argument("epigraph: resolution below 8 nodes per axis");
        g->origin_[a] = lo[a];
        g->extent_[a] = ext;
        g->nodes_[a] = cells[a] + 1;
        g->spacing_[a] = ext / cells[a];
        g->total_ *= g->nodes_[a];
    }

    const int n = g->dim_;
    const int vert = n - 1; // the epigraph axis x_n

    g->clazz_.assign(static_cast<std::size_t>(g->total_), NodeClass::active);

    // Classify column by column along the vertical axis.
    const int n0 = g->nodes_[0], n1 = g->nodes_[1], n2 = g->nodes_[2];
    auto column_graph = [&](int i, int j) {
        std::array<double, 2> xp{};
        int m = 0;
        if (vert != 0) xp[m++] = g->coord(0, i);
        if (n >= 2 && vert != 1) xp[m++] = g->coord(1, j);
        return spec.graph(std::span<const double>(xp.data(), static_cast<std::size_t>(m)));
    };

    // Loop over the non-vertical index pairs; in 1D there is a single column.
    const int c0 = vert == 0 ? 1 : n0;
    const int c1 = (n >= 2 && vert != 1) ? n1 : 1;
    for (int j = 0; j < c1; ++j) {
        for (int i = 0; i < c0; ++i) {
            const double hgraph = column_graph(i, j);
            int top_below = -1; // largest vertical index with x_vert <= h
            for (int k = 0; k < g->nodes_[vert]; ++k) {
                if (g->coord(vert, k) <= hgraph) top_below = k;
                else break;
            }
            for (int k = 0; k < g->nodes_[vert]; ++k) {
                std::array<int, 3> ijk{0, 0, 0};
                if (n == 1) ijk = {k, 0, 0};
                else if (n == 2) ijk = {i, k, 0};
                else ijk = {i, j, k};
                const std::int64_t idx = g->flat(ijk[0], ijk[1], ijk[2]);
                if (k < top_below) g->clazz_[static_cast<std::size_t>(idx)] = NodeClass::dead;
                else if (k == top_below) g->clazz_[static_cast<std::size_t>(idx)] = NodeClass::graph_boundary;
            }
        }
    }

    // Outer faces freeze unless already classified below the graph.
    for (std::int64_t idx = 0; idx < g->total_; ++idx) {
        const auto ijk = g->unflat(idx);
        bool face = false;
        for (int a = 0; a < n; ++a)
            if (ijk[a] == 0 || ijk[a] == g->nodes_[a] - 1) face = true;
        auto& c = g->clazz_[static_cast<std::size_t>(idx)];
        if (face && c == NodeClass::active) c = NodeClass::frozen_face;
    }

    for (std::int64_t idx = 0; idx < g->total_; ++idx) {
        const auto c = g->clazz_[static_cast<std::size_t>(idx)];
        if (c == NodeClass::active) g->active_.push_back(idx);
        else if (c == NodeClass::graph_boundary) g->graph_boundary_.push_back(idx);
    }
    if (g->active_.empty()) throw std::invalid_argument("epigraph: empty active set above the graph");

    // Geometric admissibility of the graph at the column positions: slope
    // within the declared bound, mean curvature nonnegative up to slack.
    if (n >= 2 && spec.slope_bound >= 0.0) {
        for (int j = 0; j < c1; ++j) {
            for (int i = 0; i < c0; ++i) {
                std::vector<double> xp;
                xp.push_back(g->coord(0, i));
                if (n == 3) xp.push_back(g->coord(1, j));
                const auto d = graph_derivs(spec, std::span<const double>(xp.data(), xp.size()));
                double slope = 0.0;
                for (int a = 0; a < n - 1; ++a) slope += d.d1[a] * d.d1[a];
                slope = std::sqrt(slope);
                if (slope > spec.slope_bound + 1e-9) {
                    std::ostringstream os;
                    os << "epigraph: |Dh| = " << slope << " exceeds slope bound " << spec.slope_bound;
                    throw std::invalid_argument(os.str());
                }
                const double H = mean_curvature_at(spec, n, std::span<const double>(xp.data(), xp.size()));
                if (H < -kCurvatureSlack) {
                    std::ostringstream os;
                    os << "epigraph: boundary mean curvature " << H << " < 0 at x' = " << xp[0];
                    throw std::invalid_argument(os.str());
                }
            }
        }
    }
    return g;
}

bool Grid::same_layout(const Grid& other) const {
    if (dim_ != other.dim_ || policy_ != other.policy_) return false;
    for (int a = 0; a < dim_; ++a)
        if (nodes_[a] != other.nodes_[a] || spacing_[a] != other.spacing_[a] ||
            origin_[a] != other.origin_[a])
            return false;
    return true;
}

Field Field::zeros(std::shared_ptr<const Grid> g, double t) {
    Field f;
    f.values.assign(static_cast<std::size_t>(g->total_nodes()), 0.0);
    f.grid = std::move(g);
    f.time = t;
    return f;
}

Field Field::sample(std::shared_ptr<const Grid> g, const FieldSampler& fn, double t) {
    Field f = zeros(g, t);
    const Grid& gr = *f.grid;
    for (std::int64_t idx = 0; idx < gr.total_nodes(); ++idx) {
        const NodeClass c = gr.node_class(idx);
        if (c == NodeClass::dead) continue;
        double x[3];
        gr.coords(idx, x);
        if (c == NodeClass::graph_boundary) {
            f[idx] = 0.0; // epigraph Dirichlet condition
        } else {
            f[idx] = fn(std::span<const double>(x, static_cast<std::size_t>(gr.dim())));
        }
    }
    return f;
}

} // namespace pflab
