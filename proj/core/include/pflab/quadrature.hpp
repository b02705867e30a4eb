#pragma once

#include "pflab/nonlinearity.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace pflab {

/// Scalar field sampler: physical coordinates -> state value.
using FieldSampler = std::function<double(std::span<const double>)>;

/// The exact one-dimensional solution machinery between two consecutive zeros
/// of F: the strictly increasing map H(u) = integral_{u0}^{u} (2F(s))^{-1/2} ds
/// and its inverse g. Cheap to copy (shared immutable state).
///
/// The integrand blows up at zeros of F, so evaluation is restricted to the
/// closed subinterval where F >= 1e-14; g clamps beyond its range, matching
/// the asymptotic approach of the exact profile to the wells.
class ProfileQuadrature {
  public:
    double base_point() const;

    /// Open interval between the consecutive zeros of F enclosing the base
    /// point (working-range endpoints when there is no zero on a side).
    std::pair<double, double> valid_interval() const;

    /// Closed subinterval of valid_interval where F >= 1e-14; the domain of h.
    std::pair<double, double> usable_interval() const;

    /// [H(lo), H(hi)]: the range of h and the non-clamped domain of g.
    std::pair<double, double> nu_range() const;

    /// H(u). Errors (std::domain_error) outside usable_interval.
    double h(double u) const;

    /// g(nu) = H^{-1}(nu), clamped to usable_interval outside nu_range.
    double g(double nu) const;

    /// g'(nu); equals sqrt(2 F(g(nu))) (equipartition of the exact profile).
    double g_prime(double nu) const;

  private:
    friend ProfileQuadrature build_quadrature(const Nonlinearity&, double);
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Requires F(u0) > 0. h is computed by adaptive quadrature, g by monotone
/// bisection with Newton polish; round-trip g(h(u)) = u holds to 1e-10 away
/// from the interval ends.
ProfileQuadrature build_quadrature(const Nonlinearity& nl, double u0);

/// Analytic sampler x -> g(<a,x> + alpha) for a unit direction a. The sampled
/// field is a steady solution of the reaction-diffusion equation with
/// pointwise equality |Du|^2 = 2F(u).
FieldSampler exact_profile(const ProfileQuadrature& q, std::vector<double> direction,
                           double offset);

} // namespace pflab
