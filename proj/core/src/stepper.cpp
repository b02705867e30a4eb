#include "pflab/stepper.hpp"

#include "pflab/operators.hpp"
#include "pflab/parallel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pflab {

namespace {

double stencil_sum(const Grid& g) {
    double s = 0.0;
    for (int a = 0; a < g.dim(); ++a) s += 1.0 / (g.spacing(a) * g.spacing(a));
    return 2.0 * s;
}

void check_finite(const Field& f, const char* where) {
    for (double v : f.values)
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << where << ": non-finite field value at t = " << f.time;
            throw std::runtime_error(os.str());
        }
}

// Matrix-free CG for (I - dt Lap) x = rhs on periodic grids.
Field solve_imex_diffusion(const Field& rhs, double dt) {
    const Grid& g = *rhs.grid;
    auto apply = [&](const Field& x) {
        Field lx = laplacian(x);
        Field out = Field::zeros(rhs.grid, rhs.time);
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = x.values[i] - dt * lx.values[i];
        return out;
    };
    Field x = rhs; // initial guess
    Field r = apply(x);
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = rhs.values[i] - r.values[i];
    Field p = r;
    double rr = 0.0, rhs2 = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        rr += r.values[i] * r.values[i];
        rhs2 += rhs.values[i] * rhs.values[i];
    }
    const double tol2 = 1e-20 * (rhs2 > 0 ? rhs2 : 1.0);
    const int cap = 10000;
    int it = 0;
    for (; it < cap && rr > tol2; ++it) {
        Field ap = apply(p);
        double pap = 0.0;
        for (std::size_t i = 0; i < p.values.size(); ++i) pap += p.values[i] * ap.values[i];
        const double alpha = rr / pap;
        double rr_new = 0.0;
        for (std::size_t i = 0; i < x.values.size(); ++i) {
            x.values[i] += alpha * p.values[i];
            r.values[i] -= alpha * ap.values[i];
            rr_new += r.values[i] * r.values[i];
        }
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < p.values.size(); ++i)
            p.values[i] = r.values[i] + beta * p.values[i];
    }
    if (rr > tol2) {
        std::ostringstream os;
        os << "imex: conjugate gradient stalled after " << cap
           << " iterations (relative residual " << std::sqrt(rr / (rhs2 > 0 ? rhs2 : 1.0)) << ")";
        throw std::runtime_error(os.str());
    }
    return x;
}

} // namespace

double cfl_max_dt(const Grid& g, const Nonlinearity& nl, double sup_grad_sq,
                  const QuasilinearProfile* profile, double safety) {
    double diff_coef = 1.0;
    double reac_coef = 1.0;
    if (profile) {
        const int n = 256;
        for (int i = 0; i <= n; ++i) {
            const double s = sup_grad_sq * i / n;
            const double p1 = profile->phi1(s);
            if (!(p1 > 0.0)) throw std::invalid_argument("cfl: degenerate profile (phi' <= 0)");
            diff_coef = std::max(diff_coef, std::max(profile->lambda(s), p1) / p1);
            reac_coef = std::max(reac_coef, 1.0 / p1);
        }
    }
    return safety / (diff_coef * stencil_sum(g) + reac_coef * nl.f2_bound());
}

Field step_semilinear(const Field& f, const Nonlinearity& nl, double dt, Scheme scheme) {
    const Grid& g = *f.grid;
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    if (scheme == Scheme::explicit_euler) {
        const double limit = cfl_max_dt(g, nl, 0.0, nullptr, 1.0);
        if (dt > limit * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "step_semilinear: dt = " << dt << " violates the CFL bound " << limit;
            throw std::invalid_argument(os.str());
        }
        Field lap = laplacian(f);
        Field out = f;
        out.time = f.time + dt;
        const auto& active = g.active_nodes();
        parallel_for(static_cast<std::int64_t>(active.size()), [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t n = lo; n < hi; ++n) {
                const std::int64_t idx = active[static_cast<std::size_t>(n)];
                out[idx] = f[idx] + dt * (lap[idx] - nl.f1(f[idx]));
            }
        });
        check_finite(out, "step_semilinear");
        return out;
    }
    // IMEX: explicit reaction, implicit diffusion.
    if (!g.periodic())
        throw std::invalid_argument("step_semilinear: imex scheme requires a periodic grid");
    Field rhs = f;
    for (std::size_t i = 0; i < rhs.values.size(); ++i)
        rhs.values[i] = f.values[i] - dt * nl.f1(f.values[i]);
    Field out = solve_imex_diffusion(rhs, dt);
    out.time = f.time + dt;
    check_finite(out, "step_semilinear(imex)");
    return out;
}

Field step_quasilinear(const Field& f, const Nonlinearity& nl, const QuasilinearProfile& profile,
                       double dt) {
    const Grid& g = *f.grid;
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const auto g2 = gradient_squared(f);
    double smax = 0.0;
    for (double s : g2) smax = std::max(smax, s);
    const double limit = cfl_max_dt(g, nl, smax, &profile, 1.0);
    if (dt > limit * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "step_quasilinear: dt = " << dt << " violates the CFL bound " << limit
           << " (sup |Du|^2 = " << smax << ")";
        throw std::invalid_argument(os.str());
    }
    Field op = quasilinear_apply(f, profile);
    Field out = f;
    out.time = f.time + dt;
    const auto& active = g.active_nodes();
    parallel_for(static_cast<std::int64_t>(active.size()), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t n = lo; n < hi; ++n) {
            const std::int64_t idx = active[static_cast<std::size_t>(n)];
            const double p1 = profile.phi1(g2[static_cast<std::size_t>(idx)]);
            if (!(p1 > 0.0)) throw std::invalid_argument("step_quasilinear: degenerate phi' <= 0");
            out[idx] = f[idx] + dt * (op[idx] - nl.f1(f[idx])) / p1;
        }
    });
    check_finite(out, "step_quasilinear");
    return out;
}

} // namespace pflab
