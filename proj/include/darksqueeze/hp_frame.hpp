#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>

#include "darksqueeze/errors.hpp"
#include "darksqueeze/meanfield.hpp"

namespace dsq {

using Matrix4cd = Eigen::Matrix4cd;
using Vector4cd = Eigen::Vector4cd;

// Bosonic frame around the mean-field state |psi(theta0; beta)>: the scalars
// (x, y, phi) of the linearized jump operator and the unitary M whose rows
// are the coefficients of c_0..c_3 over {a_{g,-1/2}, a_{g,1/2}, a_{e,1/2},
// a_{e,3/2}}.
struct HPFrame {
    double theta0 = 0, beta = 0;
    double x = 0, y = 0;
    double cos_phi = 0, sin_phi = 0;
    double omega_over_ngamma = 0;
    Matrix4cd boson_coeffs; // rows: c_0, c_1, c_2, c_3
    bool convention_completed = false; // c_2, c_3 set by Gram-Schmidt fallback
    bool critical = false;             // cos_phi == 0 within tolerance

    double phi() const { return std::atan2(sin_phi, cos_phi); }
    double relaxation_rate() const { return x * y * cos_phi; } // units of N Gamma
};

namespace detail {

// Orthonormal completion of the first `have` rows of M. Mode rows r, s are
// orthonormal when sum_j M_rj conj(M_sj) = delta_rs.
inline void gram_schmidt_complete(Matrix4cd& M, int have) {
    int next = have;
    for (int cand = 0; cand < 4 && next < 4; ++cand) {
        Vector4cd v = Vector4cd::Zero();
        v[cand] = 1.0;
        for (int r = 0; r < next; ++r) {
            complexd ov = M.row(r).dot(v); // sum_j conj(M_rj) v_j
            v -= ov * M.row(r).transpose();
        }
        double n = v.norm();
        if (n > 1e-6) M.row(next++) = (v / n).transpose();
    }
    if (next < 4) throw instability_error("hp_frame: basis completion failed");
}

} // namespace detail

// Builds the HP frame. By default the drive is the stationarity choice
// Omega = N Gamma dV(theta0); pass omega_over_ngamma explicitly (e.g. 0 for
// undriven dark states) to override.
inline HPFrame hp_frame(double beta, double theta0,
                        std::optional<double> omega_over_ngamma = std::nullopt) {
    auto mf = potential(beta, theta0);
    double om = omega_over_ngamma.value_or(mf.dV);

    HPFrame fr;
    fr.theta0 = theta0;
    fr.beta = beta;
    fr.omega_over_ngamma = om;

    double cb = std::cos(beta / 2), sb = std::sin(beta / 2);
    fr.x = std::sqrt(cb * cb / 6 + sb * sb / 2);
    double y2 = fr.x * fr.x - 2.0 * om * om;
    if (y2 < -1e-14)
        throw instability_error("hp_frame: drive beyond critical (y^2 = " +
                                std::to_string(y2) + " < 0) at theta0 = " +
                                std::to_string(theta0));
    fr.y = std::sqrt(std::max(0.0, y2));
    double xy = fr.x * fr.y;
    fr.cos_phi = (xy > 0) ? (cb * cb * std::cos(theta0 / sqrt3) +
                             3 * sb * sb * std::cos(theta0)) / (6 * xy)
                          : 0.0;
    fr.cos_phi = std::clamp(fr.cos_phi, -1.0, 1.0);
    fr.sin_phi = std::sqrt(std::max(0.0, 1.0 - fr.cos_phi * fr.cos_phi));
    fr.critical = std::abs(fr.cos_phi) < 1e-12;

    double c3 = std::cos(theta0 / (2 * sqrt3)), s3 = std::sin(theta0 / (2 * sqrt3));
    double c1 = std::cos(theta0 / 2), s1 = std::sin(theta0 / 2);
    const complexd I(0, 1);

    Matrix4cd& M = fr.boson_coeffs;
    M.setZero();
    M.row(0) << cb * c3, sb * c1, I * cb * s3, I * sb * s1;
    double nrm = std::sqrt(cb * cb + 3 * sb * sb);
    M.row(1) << I * cb * s3 / nrm, I * sqrt3 * sb * s1 / nrm, cb * c3 / nrm,
        sqrt3 * sb * c1 / nrm;

    double sinb = std::sin(beta);
    if (std::abs(sinb) < 1e-10 || fr.y * fr.sin_phi < 1e-10) {
        // Two-level degeneracy (beta multiple of pi) or sin(phi) -> 0: the
        // c_2/c_3 expressions are 0/0; any orthonormal completion spans the
        // same inert subspace.
        detail::gram_schmidt_complete(M, 2);
        fr.convention_completed = true;
        return fr;
    }

    Vector4cd u, w;
    u << I * sb * c3, -I * cb * c1, -sb * s3, cb * s1;
    w << -I * sqrt3 * sb * s3, I * cb * s1, -sqrt3 * sb * c3, cb * c1;
    double A = std::sin(theta0) - std::sin(theta0 / sqrt3) / sqrt3;
    double B = std::cos(theta0) - std::cos(theta0 / sqrt3);
    double pref2 = sinb / (2 * std::sqrt(2.0) * fr.y * fr.sin_phi);
    double pref3 = sinb / (4 * sqrt3 * fr.x * fr.y * fr.sin_phi);
    M.row(2) = (pref2 * (A * u + (B / (cb * cb + 3 * sb * sb)) * w)).transpose();
    M.row(3) = (pref3 * (B * u - A * w)).transpose();
    return fr;
}

inline HPFrame hp_frame(double beta, double theta0, double n_atoms, double gamma,
                        double omega) {
    return hp_frame(beta, theta0, omega / (n_atoms * gamma));
}

} // namespace dsq
