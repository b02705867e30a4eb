#pragma once

#include "pflab/grid.hpp"
#include "pflab/nonlinearity.hpp"
#include "pflab/profile.hpp"

namespace pflab {

enum class Scheme { explicit_euler, imex };

/// Largest stable explicit step: safety / (2 sum_a 1/h_a^2 + f2_bound).
/// With a quasilinear profile the stencil term is multiplied by the largest
/// normalized diffusion eigenvalue max(Lambda, phi') / phi' over
/// s in [0, sup_grad_sq], and the reaction bound by max 1/phi' (the update
/// divides by phi').
double cfl_max_dt(const Grid& g, const Nonlinearity& nl, double sup_grad_sq = 0.0,
                  const QuasilinearProfile* profile = nullptr, double safety = 0.9);

/// One step of u_t = Lap u - F'(u). Explicit Euler (default) preserves the
/// discrete maximum principle at CFL; IMEX treats diffusion implicitly via
/// conjugate gradient (periodic grids) and the reaction explicitly.
/// Non-active nodes keep their stored values (Dirichlet pinning).
/// Errors: CFL violation (explicit), CG stagnation (imex), non-finite values.
Field step_semilinear(const Field& f, const Nonlinearity& nl, double dt,
                      Scheme scheme = Scheme::explicit_euler);

/// One explicit step of phi'(|Du|^2) u_t = a_ij(Du) u_ij - F'(u), i.e.
/// u <- u + dt [a_ij u_ij - F'(u)] / phi'(|Du|^2). For the minimal-surface
/// profile this advances the normalized parabolic minimal surface equation.
/// Rejects degenerate phi' <= 0.
Field step_quasilinear(const Field& f, const Nonlinearity& nl, const QuasilinearProfile& profile,
                       double dt);

} // namespace pflab
