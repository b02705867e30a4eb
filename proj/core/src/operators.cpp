#include "pflab/operators.hpp"

#include "pflab/nonlinearity.hpp"
#include "pflab/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pflab {

namespace {

constexpr std::int64_t kOutside = std::numeric_limits<std::int64_t>::min();

// Per-axis flat-index deltas to the +1/-1 neighbor, with periodic wrap baked
// in; kOutside marks a neighbor beyond a non-periodic box face.
struct NeighborTables {
    std::array<std::vector<std::int64_t>, 3> dp, dm;
    std::array<std::int64_t, 3> stride{1, 1, 1};
};

NeighborTables make_tables(const Grid& g) {
    NeighborTables t;
    t.stride[0] = 1;
    t.stride[1] = g.nodes(0);
    t.stride[2] = static_cast<std::int64_t>(g.nodes(0)) * g.nodes(1);
    for (int a = 0; a < g.dim(); ++a) {
        const int n = g.nodes(a);
        t.dp[a].resize(static_cast<std::size_t>(n));
        t.dm[a].resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (g.periodic()) {
                t.dp[a][static_cast<std::size_t>(i)] =
                    (i + 1 < n) ? t.stride[a] : -static_cast<std::int64_t>(n - 1) * t.stride[a];
                t.dm[a][static_cast<std::size_t>(i)] =
                    (i > 0) ? -t.stride[a] : static_cast<std::int64_t>(n - 1) * t.stride[a];
            } else {
                t.dp[a][static_cast<std::size_t>(i)] = (i + 1 < n) ? t.stride[a] : kOutside;
                t.dm[a][static_cast<std::size_t>(i)] = (i > 0) ? -t.stride[a] : kOutside;
            }
        }
    }
    return t;
}

inline bool readable(const Grid& g, std::int64_t idx) {
    return g.node_class(idx) != NodeClass::dead;
}

// Gradient component along axis a at an active node. Falls back to one-sided
// second-order (then first-order) differences when a neighbor is dead or
// outside the box, so the stencil never reads below the boundary graph.
inline double grad_component(const Grid& g, const std::vector<double>& u, std::int64_t idx,
                             int a, int ia, const NeighborTables& t) {
    const double h = g.spacing(a);
    const auto& dp = t.dp[a];
    const auto& dm = t.dm[a];
    const std::int64_t dP = dp[static_cast<std::size_t>(ia)];
    const std::int64_t dM = dm[static_cast<std::size_t>(ia)];
    const bool okP = dP != kOutside && readable(g, idx + dP);
    const bool okM = dM != kOutside && readable(g, idx + dM);
    const auto v = [&](std::int64_t i) { return u[static_cast<std::size_t>(i)]; };
    if (okP && okM) return (v(idx + dP) - v(idx + dM)) / (2.0 * h);
    if (okP) {
        const std::int64_t dPP = dp[static_cast<std::size_t>(ia + 1)];
        if (dPP != kOutside && readable(g, idx + dP + dPP))
            return (-3.0 * v(idx) + 4.0 * v(idx + dP) - v(idx + dP + dPP)) / (2.0 * h);
        return (v(idx + dP) - v(idx)) / h;
    }
    if (okM) {
        const std::int64_t dMM = dm[static_cast<std::size_t>(ia - 1)];
        if (dMM != kOutside && readable(g, idx + dM + dMM))
            return (3.0 * v(idx) - 4.0 * v(idx + dM) + v(idx + dM + dMM)) / (2.0 * h);
        return (v(idx) - v(idx + dM)) / h;
    }
    return 0.0;
}

template <typename Body>
void for_active_structured(const Grid& g, Body&& body) {
    // body(idx, i0, i1, i2); loops cover all nodes, body must filter class.
    const int n0 = g.nodes(0);
    const int n1 = g.dim() >= 2 ? g.nodes(1) : 1;
    const int n2 = g.dim() >= 3 ? g.nodes(2) : 1;
    const std::int64_t plane = static_cast<std::int64_t>(n0) * n1;
    parallel_for(static_cast<std::int64_t>(n1) * n2, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t jk = lo; jk < hi; ++jk) {
            const int j = static_cast<int>(jk % n1);
            const int k = static_cast<int>(jk / n1);
            std::int64_t idx = static_cast<std::int64_t>(k) * plane + static_cast<std::int64_t>(j) * n0;
            for (int i = 0; i < n0; ++i, ++idx) body(idx, i, j, k);
        }
    });
}

} // namespace

VectorField gradient(const Field& f) {
    const Grid& g = *f.grid;
    if (g.nodes(0) < 3) throw std::invalid_argument("gradient: need >= 3 nodes per axis");
    VectorField out;
    out.grid = f.grid;
    out.time = f.time;
    for (int a = 0; a < g.dim(); ++a)
        out.comp[a].assign(static_cast<std::size_t>(g.total_nodes()), 0.0);
    const NeighborTables t = make_tables(g);
    for_active_structured(g, [&](std::int64_t idx, int i0, int i1, int i2) {
        if (!g.is_active(idx)) return;
        const int ia[3] = {i0, i1, i2};
        for (int a = 0; a < g.dim(); ++a)
            out.comp[a][static_cast<std::size_t>(idx)] = grad_component(g, f.values, idx, a, ia[a], t);
    });
    return out;
}

std::vector<double> gradient_squared(const Field& f) {
    const Grid& g = *f.grid;
    std::vector<double> out(static_cast<std::size_t>(g.total_nodes()), 0.0);
    const NeighborTables t = make_tables(g);
    for_active_structured(g, [&](std::int64_t idx, int i0, int i1, int i2) {
        if (!g.is_active(idx)) return;
        const int ia[3] = {i0, i1, i2};
        double s = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const double d = grad_component(g, f.values, idx, a, ia[a], t);
            s += d * d;
        }
        out[static_cast<std::size_t>(idx)] = s;
    });
    return out;
}

Field laplacian(const Field& f) {
    const Grid& g = *f.grid;
    if (g.nodes(0) < 3) throw std::invalid_argument("laplacian: need >= 3 nodes per axis");
    Field out = Field::zeros(f.grid, f.time);
    const NeighborTables t = make_tables(g);
    const auto& u = f.values;
    for_active_structured(g, [&](std::int64_t idx, int i0, int i1, int i2) {
        if (!g.is_active(idx)) return;
        const int ia[3] = {i0, i1, i2};
        double acc = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            // Active nodes are interior, so both neighbors exist; dead or
            // boundary neighbors contribute their stored (Dirichlet) values.
            const std::int64_t ip = idx + t.dp[a][static_cast<std::size_t>(ia[a])];
            const std::int64_t im = idx + t.dm[a][static_cast<std::size_t>(ia[a])];
            const double h2 = g.spacing(a) * g.spacing(a);
            acc += (u[static_cast<std::size_t>(ip)] - 2.0 * u[static_cast<std::size_t>(idx)] +
                    u[static_cast<std::size_t>(im)]) /
                   h2;
        }
        out[idx] = acc;
    });
    return out;
}

Field quasilinear_apply(const Field& f, const QuasilinearProfile& profile) {
    const Grid& g = *f.grid;
    Field out = Field::zeros(f.grid, f.time);
    const NeighborTables t = make_tables(g);
    const auto& u = f.values;
    const auto v = [&u](std::int64_t i) { return u[static_cast<std::size_t>(i)]; };
    for_active_structured(g, [&](std::int64_t idx, int i0, int i1, int i2) {
        if (!g.is_active(idx)) return;
        const int ia[3] = {i0, i1, i2};
        double du[3] = {0, 0, 0};
        double s = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            du[a] = grad_component(g, f.values, idx, a, ia[a], t);
            s += du[a] * du[a];
        }
        const double p1 = profile.phi1(s);
        const double p2 = profile.phi2(s);
        double acc = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const std::int64_t ip = idx + t.dp[a][static_cast<std::size_t>(ia[a])];
            const std::int64_t im = idx + t.dm[a][static_cast<std::size_t>(ia[a])];
            const double haa = g.spacing(a) * g.spacing(a);
            const double uaa = (v(ip) - 2.0 * v(idx) + v(im)) / haa;
            acc += (2.0 * p2 * du[a] * du[a] + p1) * uaa;
            for (int b = a + 1; b < g.dim(); ++b) {
                const std::int64_t bp = t.dp[b][static_cast<std::size_t>(ia[b])];
                const std::int64_t bm = t.dm[b][static_cast<std::size_t>(ia[b])];
                const std::int64_t ap = t.dp[a][static_cast<std::size_t>(ia[a])];
                const std::int64_t am = t.dm[a][static_cast<std::size_t>(ia[a])];
                const double uab = (v(idx + ap + bp) - v(idx + ap + bm) - v(idx + am + bp) +
                                    v(idx + am + bm)) /
                                   (4.0 * g.spacing(a) * g.spacing(b));
                acc += 2.0 * (2.0 * p2 * du[a] * du[b]) * uab;
            }
        }
        out[idx] = acc;
    });
    return out;
}

double max_gradient_squared(const Field& f) {
    const auto g2 = gradient_squared(f);
    double m = 0.0;
    for (double v : g2) m = std::max(m, v);
    return m;
}

double staggered_dirichlet_energy(const Field& f) {
    const Grid& g = *f.grid;
    if (!g.periodic()) throw std::invalid_argument("staggered energy: periodic grids only");
    const NeighborTables t = make_tables(g);
    const auto& u = f.values;
    double acc = 0.0;
    const int n0 = g.nodes(0), n1 = g.dim() >= 2 ? g.nodes(1) : 1,
              n2 = g.dim() >= 3 ? g.nodes(2) : 1;
    std::int64_t idx = 0;
    for (int k = 0; k < n2; ++k)
        for (int j = 0; j < n1; ++j)
            for (int i = 0; i < n0; ++i, ++idx) {
                const int ia[3] = {i, j, k};
                for (int a = 0; a < g.dim(); ++a) {
                    const double d = (u[static_cast<std::size_t>(idx + t.dp[a][static_cast<std::size_t>(ia[a])])] -
                                      u[static_cast<std::size_t>(idx)]) /
                                     g.spacing(a);
                    acc += 0.5 * d * d;
                }
            }
    return acc * g.cell_volume();
}

double inner_product(const Field& a, const Field& b) {
    if (!a.grid->same_layout(*b.grid)) throw std::invalid_argument("inner product: grid mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
    return acc * a.grid->cell_volume();
}

double energy(const Field& f, const Nonlinearity& nl) {
    const Grid& g = *f.grid;
    if (!g.periodic()) throw std::invalid_argument("energy: periodic grids only");
    double acc = staggered_dirichlet_energy(f);
    double pot = 0.0;
    for (double u : f.values) pot += nl.f(u);
    return acc + pot * g.cell_volume();
}

} // namespace pflab
