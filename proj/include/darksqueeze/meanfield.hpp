#pragma once

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <optional>
#include <vector>

#include "darksqueeze/errors.hpp"

namespace dsq {

inline constexpr double sqrt3 = 1.7320508075688772935;

// One point of the superradiance potential
//   V_beta(theta) = cos^2(b/2) sin^2(theta/(2 sqrt3)) + sin^2(b/2) sin^2(theta/2)
// together with its first two theta-derivatives.
struct MeanFieldPoint {
    double theta, beta;
    double V, dV, d2V;
};

inline MeanFieldPoint potential(double beta, double theta) {
    double c2 = std::cos(beta / 2) * std::cos(beta / 2);
    double s2 = std::sin(beta / 2) * std::sin(beta / 2);
    double sh = std::sin(theta / (2 * sqrt3));
    double s1 = std::sin(theta / 2);
    MeanFieldPoint p;
    p.theta = theta;
    p.beta = beta;
    p.V = c2 * sh * sh + s2 * s1 * s1;
    p.dV = c2 / (2 * sqrt3) * std::sin(theta / sqrt3) + s2 / 2 * std::sin(theta);
    p.d2V = c2 / 6 * std::cos(theta / sqrt3) + s2 / 2 * std::cos(theta);
    return p;
}

// Drive holding theta(t) = theta0: Omega = N Gamma dV(theta0).
inline double stationary_drive(double beta, double theta0, double n_atoms, double gamma) {
    return n_atoms * gamma * potential(beta, theta0).dV;
}

struct DarkState {
    double theta;
    bool stable;   // d2V > 0
    bool marginal; // |d2V| < 1e-9
    double d2V;
};

// All roots of dV = 0 in [theta_lo, theta_hi]: sign-change bracketing on a
// grid of <= 1e-3 rad spacing, then bisection to 1e-10 rad.
inline std::vector<DarkState> find_dark_states(double beta, double theta_lo,
                                               double theta_hi,
                                               double grid_spacing = 1e-3) {
    std::vector<DarkState> out;
    if (!(theta_hi > theta_lo)) return out;
    auto f = [&](double t) { return potential(beta, t).dV; };
    long n = std::max<long>(2, std::lround((theta_hi - theta_lo) / grid_spacing) + 1);
    double prev_t = theta_lo, prev_f = f(theta_lo);
    for (long i = 1; i < n; ++i) {
        double t = theta_lo + (theta_hi - theta_lo) * double(i) / double(n - 1);
        double ft = f(t);
        if (prev_f == 0.0) {
            DarkState d{prev_t, potential(beta, prev_t).d2V > 0,
                        std::abs(potential(beta, prev_t).d2V) < 1e-9,
                        potential(beta, prev_t).d2V};
            out.push_back(d);
        } else if (prev_f * ft < 0.0) {
            double lo = prev_t, hi = t, flo = prev_f;
            while (hi - lo > 1e-10) {
                double mid = 0.5 * (lo + hi), fm = f(mid);
                if (flo * fm <= 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            double root = 0.5 * (lo + hi);
            double curv = potential(beta, root).d2V;
            out.push_back({root, curv > 0, std::abs(curv) < 1e-9, curv});
        }
        prev_t = t;
        prev_f = ft;
    }
    return out;
}

// Solves tan(theta/sqrt3) = tan(theta)/sqrt3 near theta_guess (safeguarded
// Newton, 1e-12), then beta = 2 atan sqrt(-cos(theta/sqrt3) / (3 cos theta)).
// Returns the (theta, beta) point where the dark and critical manifolds meet.
inline std::pair<double, double> dark_critical_intersection(double theta_guess) {
    auto g = [](double t) { return std::tan(t / sqrt3) - std::tan(t) / sqrt3; };
    auto gp = [](double t) {
        double c3 = std::cos(t / sqrt3), c1 = std::cos(t);
        return 1.0 / (sqrt3 * c3 * c3) - 1.0 / (sqrt3 * c1 * c1);
    };
    // bracket the root around the guess, avoiding tan poles
    double span = 0.2;
    double lo = theta_guess - span, hi = theta_guess + span;
    auto finite = [&](double t) {
        return std::abs(std::cos(t)) > 1e-6 && std::abs(std::cos(t / sqrt3)) > 1e-6;
    };
    while ((!finite(lo) || !finite(hi) || g(lo) * g(hi) > 0.0) && span > 1e-4) {
        span *= 0.5;
        lo = theta_guess - span;
        hi = theta_guess + span;
    }
    if (g(lo) * g(hi) > 0.0)
        throw std::domain_error("dark_critical_intersection: no sign change near guess");
    double t = theta_guess;
    for (int it = 0; it < 200; ++it) {
        double gt = g(t);
        if (gt * g(lo) <= 0.0) hi = t; else lo = t;
        double step = gt / gp(t);
        double tn = t - step;
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi); // bisection safeguard
        if (std::abs(tn - t) < 1e-13) { t = tn; break; }
        t = tn;
    }
    double rad = -std::cos(t / sqrt3) / (3.0 * std::cos(t));
    if (rad < 0.0)
        throw std::domain_error(
            "dark_critical_intersection: negative radicand on this branch "
            "(theta = " + std::to_string(t) + "), no real beta");
    double beta = 2.0 * std::atan(std::sqrt(rad));
    return {t, beta};
}

// Inverts dV_beta(theta) = 0 for beta at fixed theta (the dark manifold):
// cos^2(beta/2) = sin(theta) / (sin(theta) - sin(theta/sqrt3)/sqrt3).
inline std::optional<double> beta_on_dark_manifold(double theta) {
    double denom = std::sin(theta) - std::sin(theta / sqrt3) / sqrt3;
    if (std::abs(denom) < 1e-14) return std::nullopt;
    double c2 = std::sin(theta) / denom;
    if (c2 < 0.0 || c2 > 1.0) return std::nullopt;
    return 2.0 * std::acos(std::sqrt(c2));
}

struct BlochTrajectory {
    std::vector<double> times;  // N Gamma t
    std::vector<double> thetas;
    // per transition m: weight |S_m| and Clebsch-Gordan factor C_m
    struct Transition {
        double m, weight, cg;
    };
    std::vector<Transition> transitions;

    std::array<double, 3> bloch_vector(std::size_t transition, std::size_t step) const {
        const auto& tr = transitions[transition];
        double th = thetas[step];
        return {0.0, tr.weight * std::sin(tr.cg * th), -tr.weight * std::cos(tr.cg * th)};
    }
};

// Integrates d(theta)/d(tau) = Omega/(N Gamma) - dV(theta) over the given
// grid of tau = N Gamma t values (adaptive RK45, rtol 1e-10).
inline BlochTrajectory evolve_meanfield(double beta, double theta0, double omega,
                                        double n_atoms, double gamma,
                                        const std::vector<double>& tau_grid) {
    namespace odeint = boost::numeric::odeint;
    if (tau_grid.empty())
        throw std::domain_error("evolve_meanfield: empty time grid");
    for (std::size_t i = 1; i < tau_grid.size(); ++i)
        if (!(tau_grid[i] > tau_grid[i - 1]))
            throw std::domain_error("evolve_meanfield: time grid must be increasing");

    double om = omega / (n_atoms * gamma);
    auto rhs = [&](const double& th, double& dth, double) {
        dth = om - potential(beta, th).dV;
    };

    BlochTrajectory traj;
    traj.times = tau_grid;
    traj.thetas.resize(tau_grid.size());
    double th = theta0;
    std::size_t k = 0;
    if (std::abs(tau_grid[0]) < 1e-300) {
        traj.thetas[0] = th;
        k = 1;
    } else {
        // integrate from 0 to the first grid point below
        k = 0;
    }
    using stepper_t = odeint::runge_kutta_dopri5<double>;
    auto stepper = odeint::make_controlled<stepper_t>(1e-12, 1e-10);
    double t_cur = 0.0;
    for (; k < tau_grid.size(); ++k) {
        double t_next = tau_grid[k];
        try {
            odeint::integrate_adaptive(stepper, rhs, th, t_cur, t_next,
                                       std::max(1e-6, (t_next - t_cur) / 100));
        } catch (const std::exception& e) {
            throw integrator_error("evolve_meanfield: integration failed at tau=" +
                                   std::to_string(t_cur) + ": " + e.what());
        }
        t_cur = t_next;
        traj.thetas[k] = th;
    }

    double c2 = std::cos(beta / 2) * std::cos(beta / 2);
    double s2 = std::sin(beta / 2) * std::sin(beta / 2);
    traj.transitions = {{-0.5, n_atoms * c2 / 2, 1.0 / sqrt3},
                        {0.5, n_atoms * s2 / 2, 1.0}};
    return traj;
}

} // namespace dsq
