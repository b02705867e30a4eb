#include "pflab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pflab {

namespace {

constexpr int kScanPoints = 10000;
constexpr double kZeroValueTol = 1e-12;

// Refine a sign change of fn in [a,b] by bisection.
double bisect_root(const std::function<double(double)>& fn, double a, double b) {
    double fa = fn(a);
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = fn(m);
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

Nonlinearity::Nonlinearity(std::string name, Scalar f, Scalar f1, Scalar f2,
                           double range_halfwidth)
    : name_(std::move(name)), f_(std::move(f)), f1_(std::move(f1)), f2_(std::move(f2)),
      range_(range_halfwidth) {
    if (!(range_ > 0.0)) throw std::invalid_argument("nonlinearity: working range must be positive");

    // Nonnegativity check and |F''| bound on a dense sample.
    const double h = 2.0 * range_ / (kScanPoints - 1);
    double fmin = 0.0, f2max = 0.0;
    for (int i = 0; i < kScanPoints; ++i) {
        const double u = -range_ + i * h;
        fmin = std::min(fmin, f_(u));
        f2max = std::max(f2max, std::abs(f2_(u)));
    }
    if (fmin < -1e-10) {
        std::ostringstream os;
        os << "nonlinearity '" << name_ << "': F is negative on the working range (min "
           << fmin << ")";
        throw std::invalid_argument(os.str());
    }
    f2_bound_ = f2max;

    // Zeros of F are touch points (F >= 0 forces F' = 0 there), so a sign scan
    // of F finds nothing; locate local minima via sign changes of F' instead
    // and keep those with F at the floor.
    double prev_u = -range_, prev_f1 = f1_(-range_);
    for (int i = 1; i < kScanPoints; ++i) {
        const double u = -range_ + i * h;
        const double d = f1_(u);
        if (prev_f1 < 0.0 && d >= 0.0) {
            const double z = bisect_root(f1_, prev_u, u);
            if (std::abs(f_(z)) <= kZeroValueTol) zeros_.push_back(z);
        }
        prev_u = u;
        prev_f1 = d;
    }
    std::sort(zeros_.begin(), zeros_.end());
}

std::array<double, 3> Nonlinearity::evaluate(double u) const {
    if (!in_range(u)) {
        std::ostringstream os;
        os << "nonlinearity '" << name_ << "': state " << u << " outside working range [" << -range_
           << ", " << range_ << "]";
        throw std::domain_error(os.str());
    }
    return {f_(u), f1_(u), f2_(u)};
}

Nonlinearity make_double_well(double imbalance) {
    if (!(std::abs(imbalance) < 1.0))
        throw std::invalid_argument("double well: imbalance must satisfy |beta| < 1 (bistability)");
    const double beta = imbalance;
    // F' = (u^2 - 1)(u - beta); antiderivative shifted so min F = 0. The
    // global minimizer is u = -1 for beta > 0, u = +1 for beta < 0, both for
    // beta = 0 (where F = (1 - u^2)^2 / 4 exactly).
    const double sign_well = beta > 0.0 ? -1.0 : 1.0;
    const double raw_at_well = 0.25 - beta * sign_well / 3.0 - 0.5 + beta * sign_well;
    auto f = [beta, raw_at_well](double u) {
        return 0.25 * u * u * u * u - beta * u * u * u / 3.0 - 0.5 * u * u + beta * u - raw_at_well;
    };
    auto f1 = [beta](double u) { return (u * u - 1.0) * (u - beta); };
    auto f2 = [beta](double u) { return 3.0 * u * u - 2.0 * beta * u - 1.0; };
    std::string name = beta == 0.0 ? "double_well" : "double_well_imbalanced";
    return Nonlinearity(std::move(name), f, f1, f2);
}

Nonlinearity make_zero_potential() {
    auto zero = [](double) { return 0.0; };
    return Nonlinearity("zero", zero, zero, zero);
}

Nonlinearity make_polynomial(const std::vector<double>& coefficients, double range_halfwidth) {
    if (coefficients.empty()) throw std::invalid_argument("polynomial potential: empty coefficient list");
    auto horner = [](const std::vector<double>& c, double u) {
        double v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * u + *it;
        return v;
    };
    std::vector<double> d1, d2;
    for (std::size_t k = 1; k < coefficients.size(); ++k) d1.push_back(k * coefficients[k]);
    for (std::size_t k = 1; k < d1.size(); ++k) d2.push_back(k * d1[k]);
    if (d1.empty()) d1.push_back(0.0);
    if (d2.empty()) d2.push_back(0.0);
    auto f = [coefficients, horner](double u) { return horner(coefficients, u); };
    auto f1 = [d1, horner](double u) { return horner(d1, u); };
    auto f2 = [d2, horner](double u) { return horner(d2, u); };
    return Nonlinearity("polynomial", f, f1, f2, range_halfwidth);
}

Nonlinearity scale_potential(const Nonlinearity& nl, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("scale_potential: lambda must be positive");
    auto f = [nl, lambda](double u) { return lambda * nl.f(u); };
    auto f1 = [nl, lambda](double u) { return lambda * nl.f1(u); };
    auto f2 = [nl, lambda](double u) { return lambda * nl.f2(u); };
    return Nonlinearity(nl.name() + "_scaled", f, f1, f2, nl.working_range().second);
}

} // namespace pflab
