#pragma once

#include <functional>
#include <string>

namespace pflab {

/// Quasilinear integrand machinery: phi and its derivatives in s = |Du|^2,
/// xi(s) = 2 s phi'(s) - phi(s), and Lambda = xi'. Parabolicity requires
/// Lambda > 0 on the admissible s-range.
struct QuasilinearProfile {
    std::function<double(double)> phi, phi1, phi2, xi, lambda;
    std::string name;
};

/// Minimal-surface profile: phi(s) = 2(sqrt(1+s) - 1), phi'(s) = (1+s)^{-1/2},
/// xi(s) = 2 - 2(1+s)^{-1/2}, Lambda(s) = (1+s)^{-3/2}.
QuasilinearProfile make_minimal_surface_profile();

/// phi(s) = s: xi(s) = s, Lambda = 1. The quasilinear operator reduces to the
/// Laplacian and the quasilinear P-function to the semilinear one, exactly.
QuasilinearProfile make_identity_profile();

/// Sampled checks: xi == 2 s phi' - phi and Lambda > 0 on [0, s_max].
/// Throws std::invalid_argument on violation.
void validate_profile(const QuasilinearProfile& p, double s_max);

} // namespace pflab
