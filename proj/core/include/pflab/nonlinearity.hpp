#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace pflab {

/// An admissible potential: F >= 0 and twice continuously differentiable on a
/// working range [-A, A]. Immutable after construction; evaluation is pure.
///
/// Construction validates nonnegativity on a dense sample, locates the zeros
/// of F (they are touch points, since F >= 0 forces F' = 0 wherever F = 0),
/// and records a bound for |F''| used by the CFL formula.
class Nonlinearity {
  public:
    using Scalar = std::function<double(double)>;

    Nonlinearity(std::string name, Scalar f, Scalar f1, Scalar f2,
                 double range_halfwidth = 2.0);

    double f(double u) const { return f_(u); }
    double f1(double u) const { return f1_(u); }
    double f2(double u) const { return f2_(u); }

    /// Range-checked consistent triple (F, F', F''). Out-of-range u is an
    /// error, not a clamp.
    std::array<double, 3> evaluate(double u) const;

    /// Ordered roots of F inside the working range (empty for the zero
    /// potential, which vanishes identically and has no isolated roots).
    const std::vector<double>& zero_set() const { return zeros_; }

    /// Supremum bound for |F''| on the working range.
    double f2_bound() const { return f2_bound_; }

    std::pair<double, double> working_range() const { return {-range_, range_}; }
    bool in_range(double u) const { return u >= -range_ && u <= range_; }

    const std::string& name() const { return name_; }

  private:
    std::string name_;
    Scalar f_, f1_, f2_;
    double range_;
    double f2_bound_ = 0.0;
    std::vector<double> zeros_;
};

/// Bistable potential with wells at +-1. The balanced case beta = 0 is
/// F(u) = (1 - u^2)^2 / 4 with F'(u) = u^3 - u; for beta != 0,
/// F'(u) = (u^2 - 1)(u - beta) and F is the antiderivative shifted so that
/// min F = 0 over the working range (the global minimizer is the zero well).
/// Requires |beta| < 1.
Nonlinearity make_double_well(double imbalance = 0.0);

/// F identically zero: the evolution degenerates to the heat equation.
Nonlinearity make_zero_potential();

/// F given by polynomial coefficients c0 + c1 u + c2 u^2 + ...; rejected if F
/// dips below zero anywhere on the working range.
Nonlinearity make_polynomial(const std::vector<double>& coefficients,
                             double range_halfwidth = 2.0);

/// Potential scaled by lambda > 0 (quadrature and profiles rebuild on top).
Nonlinearity scale_potential(const Nonlinearity& nl, double lambda);

} // namespace pflab
