#include "pflab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pflab {

namespace {

constexpr double kFloorF = 1e-14; // usable interval: F >= kFloorF
constexpr int kTablePoints = 1025;

// Adaptive Simpson on [a,b] for smooth positive integrands.
double adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = fn(lm), frm = fn(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& fn, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = fn(a), fb = fn(b), fm = fn(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(fn, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

struct ProfileQuadrature::Impl {
    Nonlinearity nl;
    double u0;
    double a_lo, a_hi; // enclosing zeros (or range ends), open valid interval
    double lo, hi;     // usable: F >= kFloorF
    std::vector<double> u_table;  // ascending
    std::vector<double> nu_table; // H at u_table

    double integrand(double u) const { return 1.0 / std::sqrt(2.0 * nl.f(u)); }

    double h_of(double u) const {
        // integrate from the nearest table node for speed and accuracy
        const auto it = std::lower_bound(u_table.begin(), u_table.end(), u);
        std::size_t j = static_cast<std::size_t>(std::distance(u_table.begin(), it));
        if (j >= u_table.size()) j = u_table.size() - 1;
        if (j > 0 && std::abs(u_table[j - 1] - u) < std::abs(u_table[j] - u)) --j;
        auto fn = [this](double s) { return integrand(s); };
        return nu_table[j] + integrate(fn, u_table[j], u, 1e-14);
    }
};

ProfileQuadrature build_quadrature(const Nonlinearity& nl, double u0) {
    auto impl = std::make_shared<ProfileQuadrature::Impl>();
    impl->nl = nl;
    impl->u0 = u0;
    if (!nl.in_range(u0)) throw std::domain_error("build_quadrature: base point outside working range");
    if (!(nl.f(u0) > kFloorF))
        throw std::invalid_argument("build_quadrature: F(u0) must be positive (integrand singular)");

    const auto [rlo, rhi] = nl.working_range();
    double a_lo = rlo, a_hi = rhi;
    for (double z : nl.zero_set()) {
        if (z <= u0 && z > a_lo) a_lo = z;
        if (z >= u0 && z < a_hi) a_hi = z;
    }
    impl->a_lo = a_lo;
    impl->a_hi = a_hi;

    // Shrink to where F >= kFloorF by bisection from each end toward u0.
    auto crossing = [&](double a, double b) {
        // F(a) < kFloorF <= F(b); return u with F(u) ~= kFloorF
        for (int it = 0; it < 200 && std::abs(b - a) > 1e-16 * (1.0 + std::abs(b)); ++it) {
            const double m = 0.5 * (a + b);
            if (nl.f(m) >= kFloorF) b = m; else a = m;
        }
        return b;
    };
    impl->lo = nl.f(a_lo) >= kFloorF ? a_lo : crossing(a_lo, u0);
    impl->hi = nl.f(a_hi) >= kFloorF ? a_hi : crossing(a_hi, u0);

    // H table with cosine clustering toward the (near-singular) ends.
    impl->u_table.resize(kTablePoints);
    impl->nu_table.resize(kTablePoints);
    for (int i = 0; i < kTablePoints; ++i) {
        const double t = static_cast<double>(i) / (kTablePoints - 1);
        const double w = 0.5 * (1.0 - std::cos(M_PI * t));
        impl->u_table[i] = impl->lo + (impl->hi - impl->lo) * w;
    }
    // Make sure u0 is on the table so H(u0) = 0 exactly.
    const auto it0 = std::lower_bound(impl->u_table.begin(), impl->u_table.end(), u0);
    *it0 = u0;
    const std::size_t j0 = static_cast<std::size_t>(std::distance(impl->u_table.begin(), it0));

    auto fn = [&](double s) { return impl->integrand(s); };
    impl->nu_table[j0] = 0.0;
    for (std::size_t j = j0 + 1; j < impl->u_table.size(); ++j)
        impl->nu_table[j] = impl->nu_table[j - 1] + integrate(fn, impl->u_table[j - 1], impl->u_table[j], 1e-15);
    for (std::size_t j = j0; j-- > 0;)
        impl->nu_table[j] = impl->nu_table[j + 1] - integrate(fn, impl->u_table[j], impl->u_table[j + 1], 1e-15);

    ProfileQuadrature q;
    q.impl_ = std::move(impl);
    return q;
}

double ProfileQuadrature::base_point() const { return impl_->u0; }

std::pair<double, double> ProfileQuadrature::valid_interval() const {
    return {impl_->a_lo, impl_->a_hi};
}

std::pair<double, double> ProfileQuadrature::usable_interval() const {
    return {impl_->lo, impl_->hi};
}

std::pair<double, double> ProfileQuadrature::nu_range() const {
    return {impl_->nu_table.front(), impl_->nu_table.back()};
}

double ProfileQuadrature::h(double u) const {
    if (u < impl_->lo || u > impl_->hi) {
        std::ostringstream os;
        os << "quadrature: state " << u << " outside usable interval [" << impl_->lo << ", "
           << impl_->hi << "]";
        throw std::domain_error(os.str());
    }
    return impl_->h_of(u);
}

double ProfileQuadrature::g(double nu) const {
    const auto& ut = impl_->u_table;
    const auto& nt = impl_->nu_table;
    if (nu <= nt.front()) return ut.front();
    if (nu >= nt.back()) return ut.back();
    const auto it = std::upper_bound(nt.begin(), nt.end(), nu);
    std::size_t j = static_cast<std::size_t>(std::distance(nt.begin(), it));
    double a = ut[j - 1], b = ut[j];
    // Newton on H(u) = nu with bisection safeguard; H' = (2F)^{-1/2} > 0.
    double u = a + (b - a) * (nu - nt[j - 1]) / (nt[j] - nt[j - 1]);
    for (int iter = 0; iter < 60; ++iter) {
        const double r = impl_->h_of(u) - nu;
        if (r > 0.0) b = u; else a = u;
        const double du = -r * std::sqrt(2.0 * impl_->nl.f(u));
        double un = u + du;
        if (!(un > a && un < b)) un = 0.5 * (a + b);
        if (std::abs(un - u) <= 1e-13 * (1.0 + std::abs(u))) return un;
        u = un;
    }
    return u;
}

double ProfileQuadrature::g_prime(double nu) const {
    return std::sqrt(2.0 * impl_->nl.f(g(nu)));
}

FieldSampler exact_profile(const ProfileQuadrature& q, std::vector<double> direction,
                           double offset) {
    double norm2 = 0.0;
    for (double d : direction) norm2 += d * d;
    if (std::abs(norm2 - 1.0) > 1e-10)
        throw std::invalid_argument("exact_profile: direction must be a unit vector");
    return [q, dir = std::move(direction), offset](std::span<const double> x) {
        double s = offset;
        for (std::size_t i = 0; i < dir.size() && i < x.size(); ++i) s += dir[i] * x[i];
        return q.g(s);
    };
}

} // namespace pflab
