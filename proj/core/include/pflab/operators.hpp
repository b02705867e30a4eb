#pragma once

#include "pflab/grid.hpp"
#include "pflab/profile.hpp"

namespace pflab {

/// Centered second-order gradient on active nodes; periodic wrap on tori.
/// On epigraph grids a one-sided second-order difference is used along an
/// axis whose neighbor is dead (below the boundary graph), so the gradient
/// never reads the zero-extension under the graph.
VectorField gradient(const Field& f);

/// |Du|^2 per node (same stencils as gradient).
std::vector<double> gradient_squared(const Field& f);

/// Standard (2*dim+1)-point Laplacian on active nodes. Dirichlet /frozen
/// values are substituted from the stored field at non-active neighbors.
Field laplacian(const Field& f);

/// Nondivergence quasilinear operator a_ij(Du) u_ij with
/// a_ij(s) = 2 phi''(|s|^2) s_i s_j + phi'(|s|^2) delta_ij; mixed second
/// derivatives use the symmetric 4-point cross stencil.
Field quasilinear_apply(const Field& f, const QuasilinearProfile& profile);

/// max over active nodes of |Du|^2.
double max_gradient_squared(const Field& f);

/// Forward-difference (staggered) Dirichlet energy sum(|D+ u|^2 / 2) h^dim on
/// tori: the discrete Lyapunov functional of the semilinear flow when paired
/// with the centered Laplacian (Lap = D- D+).
double staggered_dirichlet_energy(const Field& f);

/// sum over nodes of u v h^dim (tori).
double inner_product(const Field& u, const Field& v);

/// Discrete Allen-Cahn energy sum(|D+ u|^2/2 + F(u)) h^dim on tori.
double energy(const Field& f, const class Nonlinearity& nl);

} // namespace pflab
