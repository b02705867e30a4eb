#pragma once

#include "pflab/quadrature.hpp" // FieldSampler

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace pflab {

enum class BoundaryPolicy { periodic, epigraph_dirichlet };

/// Node roles on epigraph grids.
///   active         evolved by the steppers
///   graph_boundary the topmost lattice node at or below the boundary graph in
///                  its column; carries the Dirichlet value (u = 0) and is read
///                  by stencils. Within one spacing of the graph.
///   frozen_face    node on an outer box face; holds its initial value during
///                  stepping (truncation of the unbounded domain).
///   dead           strictly below the graph_boundary node of its column;
///                  never evolved, value pinned to 0.
enum class NodeClass : std::uint8_t { active = 0, graph_boundary = 1, frozen_face = 2, dead = 3 };

/// Boundary graph x' -> h(x') of an epigraph domain {x_n > h(x')} together
/// with a bound on |Dh|. The mean curvature of the graph must be nonnegative
/// (up to finite-difference slack) at the sampled column positions.
struct EpigraphSpec {
    std::function<double(std::span<const double>)> graph;
    double slope_bound = 1.0;
};

/// Mean curvature H(x') = div(Dh / sqrt(1 + |Dh|^2)) of the boundary graph,
/// by central finite differences of the graph function; convex h gives H >= 0.
/// ambient_dim is the dimension n of the epigraph's ambient space (so x' has
/// n-1 components).
std::vector<double> epigraph_mean_curvature(const EpigraphSpec& spec, int ambient_dim,
                                            const std::vector<std::vector<double>>& points);

/// Uniform Cartesian lattice in 1-3 dimensions, periodic (flat torus) or
/// epigraph-Dirichlet. Immutable after construction.
///
/// Per axis the divisor count satisfies spacing = extent / count exactly;
/// periodic axes carry `count` nodes (the seam is not duplicated), Dirichlet
/// axes carry count + 1 nodes so both faces are on the lattice.
class Grid {
  public:
    /// Periodic box (flat torus). `counts` are the node counts per axis.
    static std::shared_ptr<const Grid> torus(std::vector<double> extents, std::vector<int> counts,
                                             std::vector<double> origins = {});

    /// Dirichlet box: all faces frozen, interior active. `cells` intervals
    /// per axis, so cells + 1 nodes.
    static std::shared_ptr<const Grid> box(std::vector<double> lo, std::vector<double> hi,
                                           std::vector<int> cells);

    /// Epigraph domain inside a box: active above the graph, one
    /// graph_boundary node per crossing column, dead below, faces frozen.
    static std::shared_ptr<const Grid> epigraph(std::vector<double> lo, std::vector<double> hi,
                                                std::vector<int> cells, EpigraphSpec spec);

    int dim() const { return dim_; }
    BoundaryPolicy policy() const { return policy_; }
    bool periodic() const { return policy_ == BoundaryPolicy::periodic; }

    int nodes(int axis) const { return nodes_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    double origin(int axis) const { return origin_[axis]; }
    double extent(int axis) const { return extent_[axis]; }
    std::int64_t total_nodes() const { return total_; }

    double coord(int axis, int i) const { return origin_[axis] + spacing_[axis] * i; }
    std::int64_t flat(int i, int j = 0, int k = 0) const {
        return i + static_cast<std::int64_t>(nodes_[0]) * (j + static_cast<std::int64_t>(nodes_[1]) * k);
    }
    std::array<int, 3> unflat(std::int64_t idx) const {
        const int i = static_cast<int>(idx % nodes_[0]);
        idx /= nodes_[0];
        const int j = static_cast<int>(idx % nodes_[1]);
        const int k = static_cast<int>(idx / nodes_[1]);
        return {i, j, k};
    }
    void coords(std::int64_t idx, double* out) const {
        const auto ijk = unflat(idx);
        for (int a = 0; a < dim_; ++a) out[a] = coord(a, ijk[a]);
    }

    NodeClass node_class(std::int64_t idx) const {
        return clazz_.empty() ? NodeClass::active : clazz_[static_cast<std::size_t>(idx)];
    }
    bool is_active(std::int64_t idx) const { return node_class(idx) == NodeClass::active; }
    /// Readable nodes have meaningful stored values (everything but dead).
    bool is_readable(std::int64_t idx) const { return node_class(idx) != NodeClass::dead; }

    const std::vector<std::int64_t>& active_nodes() const { return active_; }
    const std::vector<std::int64_t>& graph_boundary_nodes() const { return graph_boundary_; }

    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim_; ++a) v *= spacing_[a];
        return v;
    }

    bool same_layout(const Grid& other) const;

  private:
    Grid() = default;
    int dim_ = 0;
    BoundaryPolicy policy_ = BoundaryPolicy::periodic;
    std::array<double, 3> origin_{}, extent_{}, spacing_{};
    std::array<int, 3> nodes_{1, 1, 1};
    std::int64_t total_ = 0;
    std::vector<NodeClass> clazz_; // empty for periodic grids (all active)
    std::vector<std::int64_t> active_, graph_boundary_;
};

/// Scalar samples on a grid: one value per node (dead slots are pinned to 0),
/// plus a timestamp. Values are finite by construction from samplers; the
/// steppers re-check.
struct Field {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;
    double time = 0.0;

    static Field zeros(std::shared_ptr<const Grid> g, double t = 0.0);
    /// Evaluates the sampler at every non-dead node; graph_boundary nodes are
    /// then pinned to 0 (the epigraph Dirichlet condition).
    static Field sample(std::shared_ptr<const Grid> g, const FieldSampler& fn, double t = 0.0);

    double operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }
    double& operator[](std::int64_t i) { return values[static_cast<std::size_t>(i)]; }
};

/// One vector per node, component-planar; meaningful on active nodes.
struct VectorField {
    std::shared_ptr<const Grid> grid;
    std::array<std::vector<double>, 3> comp;
    double time = 0.0;
};

} // namespace pflab
