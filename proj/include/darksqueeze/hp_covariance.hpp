#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "darksqueeze/errors.hpp"
#include "darksqueeze/hp_frame.hpp"

namespace dsq {

using Matrix3d = Eigen::Matrix3d;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

// Symmetrized second moments Sigma_ij = <{Q_i, Q_j}>_C over the quadratures
// (X^c_1, X^c_2, X^c_3, Y^c_1, Y^c_2, Y^c_3). Vacuum of c_{mu>0} gives the
// identity.
struct CovarianceState {
    Matrix6d sigma = Matrix6d::Identity();
    HPFrame frame;
    double tau = 0.0;              // N Gamma t
    bool critically_slow = false;  // cos(phi) = 0: dynamics frozen

    Matrix3d xx() const { return sigma.topLeftCorner<3, 3>(); }
    Matrix3d yy() const { return sigma.bottomRightCorner<3, 3>(); }
    Matrix3d xy() const { return sigma.topRightCorner<3, 3>(); }
};

namespace detail {

// Bogoliubov quadrature maps X^b = TX X^c, Y^b = TY Y^c.
inline void bogoliubov_maps(const HPFrame& fr, Matrix3d& TX, Matrix3d& TY) {
    double r = std::sqrt(fr.x * fr.y * fr.cos_phi);
    double tanphi = fr.sin_phi / fr.cos_phi;
    TX.setIdentity();
    TY.setIdentity();
    TX(0, 0) = fr.x / r;
    TX(1, 0) = -tanphi;
    TY(0, 0) = fr.y * fr.cos_phi / r;
    TY(0, 1) = fr.y * fr.sin_phi / r;
}

// In the b basis the damped mode is b_1: diagonal (1,1) entries relax to 1
// at rate 2 N Gamma x y cos(phi) (so with f = exp(-tau x y cos phi) the
// deviation scales as f^2), cross terms with mode 1 decay as f, and the
// (2,3) block is conserved.
inline Matrix3d propagate_b_block(const Matrix3d& S0, double f, bool diag_relaxes) {
    Matrix3d S = S0;
    S(0, 0) = diag_relaxes ? 1.0 + (S0(0, 0) - 1.0) * f * f : S0(0, 0) * f * f;
    for (int j = 1; j < 3; ++j) {
        S(0, j) *= f;
        S(j, 0) *= f;
    }
    return S;
}

} // namespace detail

// Propagates an arbitrary covariance forward by dtau (in N Gamma t units)
// under the frame's modified-jump dissipator with the frame's drive.
inline CovarianceState evolve_covariance(const CovarianceState& in, double dtau) {
    if (dtau < 0) throw std::domain_error("evolve_covariance: dtau must be >= 0");
    CovarianceState out = in;
    out.tau = in.tau + dtau;
    const HPFrame& fr = in.frame;
    if (std::abs(fr.cos_phi) < 1e-12) {
        out.critically_slow = true; // f == 1: frozen
        return out;
    }
    Matrix3d TX, TY;
    detail::bogoliubov_maps(fr, TX, TY);
    Matrix3d TXi = TX.inverse(), TYi = TY.inverse();
    double f = std::exp(-dtau * fr.relaxation_rate());

    Matrix3d bXX = TX * in.xx() * TX.transpose();
    Matrix3d bYY = TY * in.yy() * TY.transpose();
    Matrix3d bXY = TX * in.xy() * TY.transpose();
    bXX = detail::propagate_b_block(bXX, f, true);
    bYY = detail::propagate_b_block(bYY, f, true);
    bXY = detail::propagate_b_block(bXY, f, false); // relaxes to 0, not 1

    out.sigma.topLeftCorner<3, 3>() = TXi * bXX * TXi.transpose();
    out.sigma.bottomRightCorner<3, 3>() = TYi * bYY * TYi.transpose();
    out.sigma.topRightCorner<3, 3>() = TXi * bXY * TYi.transpose();
    out.sigma.bottomLeftCorner<3, 3>() =
        out.sigma.topRightCorner<3, 3>().transpose();
    return out;
}

// Covariance of the dissipative evolution started from the c-frame vacuum
// (identity) at dimensionless time tau = N Gamma t.
inline CovarianceState covariance_at(const HPFrame& frame, double tau) {
    if (tau < 0) throw std::domain_error("covariance_at: tau must be >= 0");
    CovarianceState s;
    s.frame = frame;
    return evolve_covariance(s, tau);
}

struct SqueezingSpectrum {
    // xi2[0], xi2[2]: min/max eigenvalue of Sigma_XX; xi2[1], xi2[3]: min/max
    // of Sigma_YY. unit_pair holds the middle eigenvalue of each block (1 for
    // the untouched c_3 mode under pure dissipative evolution).
    std::array<double, 4> xi2{};
    std::array<double, 2> unit_pair{};
    Eigen::Matrix3d eigvecs_x, eigvecs_y; // columns, ascending eigenvalue
    bool critical_limit = false;          // cos(phi)=0: {0, inf} limits

    double min_xi2() const { return std::min(xi2[0], xi2[1]); }
};

inline SqueezingSpectrum squeezing_spectrum(const CovarianceState& cov) {
    if ((cov.sigma - cov.sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw state_error("squeezing_spectrum: covariance not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix3d> ex(cov.xx()), ey(cov.yy());
    SqueezingSpectrum s;
    s.xi2 = {ex.eigenvalues()(0), ey.eigenvalues()(0), ex.eigenvalues()(2),
             ey.eigenvalues()(2)};
    s.unit_pair = {ex.eigenvalues()(1), ey.eigenvalues()(1)};
    s.eigvecs_x = ex.eigenvectors();
    s.eigvecs_y = ey.eigenvectors();
    return s;
}

// Time-dependent squeezing eigenvalues from the closed form:
//   A_x = y/(x cos phi) (1-f^2) - (1-2f) + (1-f)^2 sec^2 phi  (x<->y for A_y)
//   xi^2_{1,3} = (A_x+1)/2 -/+ sqrt(((A_x-1)/2)^2 + (1-f)^2 tan^2 phi)
inline std::array<double, 4> squeezing_closed_form(const HPFrame& fr, double tau) {
    double f = std::exp(-tau * fr.relaxation_rate());
    double sec2 = 1.0 / (fr.cos_phi * fr.cos_phi);
    double tan2 = sec2 - 1.0;
    double ax = fr.y / (fr.x * fr.cos_phi) * (1 - f * f) - (1 - 2 * f) +
                (1 - f) * (1 - f) * sec2;
    double ay = fr.x / (fr.y * fr.cos_phi) * (1 - f * f) - (1 - 2 * f) +
                (1 - f) * (1 - f) * sec2;
    double rx = std::sqrt((ax - 1) * (ax - 1) / 4 + (1 - f) * (1 - f) * tan2);
    double ry = std::sqrt((ay - 1) * (ay - 1) / 4 + (1 - f) * (1 - f) * tan2);
    return {(ax + 1) / 2 - rx, (ay + 1) / 2 - ry, (ax + 1) / 2 + rx,
            (ay + 1) / 2 + ry};
}

// Steady-state (f = 0) squeezing and anti-squeezing.
inline SqueezingSpectrum steady_state_squeezing(const HPFrame& fr) {
    SqueezingSpectrum s;
    s.unit_pair = {1.0, 1.0};
    s.eigvecs_x.setIdentity();
    s.eigvecs_y.setIdentity();
    if (std::abs(fr.cos_phi) < 1e-12) {
        s.xi2 = {0.0, 0.0, std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity()};
        s.critical_limit = true;
        return s;
    }
    double x = fr.x, y = fr.y, c = fr.cos_phi;
    double r1 = y * y * (1 + x / (y * c));
    double s1 = y * std::sqrt(r1 * r1 / (y * y) - 4 * x * y * c);
    double r2 = x * x * (1 + y / (x * c));
    double s2 = x * std::sqrt(r2 * r2 / (x * x) - 4 * x * y * c);
    double den = 2 * x * y * c;
    s.xi2 = {(r1 - s1) / den, (r2 - s2) / den, (r1 + s1) / den, (r2 + s2) / den};
    return s;
}

struct DecoherenceResult {
    double xi2_effective; // xi2_1(tau) + tau/(N C)
    double tau_opt;       // sqrt(2 N C) / x, in N Gamma t units
    double xi2_opt;       // (2/x) sqrt(2/(N C))
    bool in_regime;       // cos phi << 1/(y sqrt(2 N C))
};

// Single-particle decoherence correction xi^2 = xi^2_0(t) + gamma_tilde t
// with gamma_tilde = Gamma / C; time arguments in N Gamma t units.
inline DecoherenceResult decoherence_adjusted(const HPFrame& fr, double n_atoms,
                                              double cooperativity, double tau) {
    if (cooperativity <= 0)
        throw std::domain_error("decoherence_adjusted: cooperativity must be > 0");
    DecoherenceResult r;
    double xi0 = squeezing_closed_form(fr, tau)[0];
    r.xi2_effective = xi0 + tau / (n_atoms * cooperativity);
    r.tau_opt = std::sqrt(2 * n_atoms * cooperativity) / fr.x;
    r.xi2_opt = 2.0 / fr.x * std::sqrt(2.0 / (n_atoms * cooperativity));
    r.in_regime =
        fr.cos_phi <= 0.1 / (fr.y * std::sqrt(2 * n_atoms * cooperativity));
    return r;
}

struct FiniteNOptimum {
    double u_opt;             // optimal (1-f)/cos(phi) = (2 N y^2)^{1/4}
    double xi2_best;          // ~ (2y/x) (2 N y^2)^{-1/4}
    double cos_phi_opt_steady; // f=0 variant: optimal cos(phi) = u_opt^{-1}
};

// O(1) corrections to the jump operator limit the best squeezing; the
// balance d xi^2_0/dt + Gamma xi^2_antisq = 0 picks (1-f)/cos(phi) =
// (2 N y^2)^{1/4} and xi^2 ~ N^{-1/4}.
inline FiniteNOptimum finite_n_optimum(const HPFrame& fr, double n_atoms) {
    if (n_atoms < 10)
        throw std::domain_error("finite_n_optimum: N must be >= 10");
    FiniteNOptimum r;
    r.u_opt = std::pow(2.0 * n_atoms * fr.y * fr.y, 0.25);
    r.xi2_best = 2.0 * fr.y / (fr.x * r.u_opt);
    r.cos_phi_opt_steady = 1.0 / r.u_opt;
    return r;
}

} // namespace dsq
