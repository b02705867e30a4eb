#include "pflab/profile.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pflab {

QuasilinearProfile make_minimal_surface_profile() {
    QuasilinearProfile p;
    p.name = "minimal_surface";
    p.phi = [](double s) { return 2.0 * (std::sqrt(1.0 + s) - 1.0); };
    p.phi1 = [](double s) { return 1.0 / std::sqrt(1.0 + s); };
    p.phi2 = [](double s) { const double w = 1.0 + s; return -0.5 / (w * std::sqrt(w)); };
    p.xi = [](double s) { return 2.0 - 2.0 / std::sqrt(1.0 + s); };
    p.lambda = [](double s) { const double w = 1.0 + s; return 1.0 / (w * std::sqrt(w)); };
    return p;
}

QuasilinearProfile make_identity_profile() {
    QuasilinearProfile p;
    p.name = "identity";
    p.phi = [](double s) { return s; };
    p.phi1 = [](double) { return 1.0; };
    p.phi2 = [](double) { return 0.0; };
    p.xi = [](double s) { return s; };
    p.lambda = [](double) { return 1.0; };
    return p;
}

void validate_profile(const QuasilinearProfile& p, double s_max) {
    if (!p.phi || !p.phi1 || !p.phi2 || !p.xi || !p.lambda)
        throw std::invalid_argument("profile '" + p.name + "': missing component function");
    const int n = 512;
    for (int i = 0; i <= n; ++i) {
        const double s = s_max * i / n;
        const double xi_id = 2.0 * s * p.phi1(s) - p.phi(s);
        if (std::abs(p.xi(s) - xi_id) > 1e-9 * (1.0 + std::abs(xi_id))) {
            std::ostringstream os;
            os << "profile '" << p.name << "': xi(s) != 2 s phi'(s) - phi(s) at s = " << s;
            throw std::invalid_argument(os.str());
        }
        if (!(p.lambda(s) > 0.0)) {
            std::ostringstream os;
            os << "profile '" << p.name << "': Lambda(s) <= 0 at s = " << s << " (not parabolic)";
            throw std::invalid_argument(os.str());
        }
    }
}

} // namespace pflab
