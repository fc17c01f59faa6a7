#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "darksqueeze/angular.hpp"
#include "darksqueeze/errors.hpp"

namespace dsq {

using complexd = std::complex<double>;
using Matrixcd = Eigen::MatrixXcd;
using Vectorcd = Eigen::VectorXcd;

enum class Manifold { ground, excited };

struct Level {
    Manifold manifold;
    double m; // magnetic quantum number (half-integer)
    bool operator==(const Level& o) const {
        return manifold == o.manifold && std::abs(m - o.m) < 1e-12;
    }
};

// Atomic level structure: which sublevels participate, plus the cached
// Clebsch-Gordan table for the active dipole transitions.
class LevelScheme {
  public:
    LevelScheme(double f_ground, double f_excited, std::vector<Level> active)
        : f_ground_(f_ground), f_excited_(f_excited), levels_(std::move(active)) {
        for (const auto& lv : levels_) {
            double f = (lv.manifold == Manifold::ground) ? f_ground_ : f_excited_;
            if (std::abs(lv.m) > f + 1e-9)
                throw std::domain_error("LevelScheme: |m|=" + std::to_string(lv.m) +
                                        " exceeds manifold F=" + std::to_string(f));
            if (!detail::is_half_integer(lv.m))
                throw std::domain_error("LevelScheme: m must be half-integer");
        }
        for (std::size_t i = 0; i < levels_.size(); ++i)
            for (std::size_t j = i + 1; j < levels_.size(); ++j)
                if (levels_[i] == levels_[j])
                    throw std::domain_error("LevelScheme: duplicate level");
    }

    // F_g = 1/2, F_e = 3/2 with {(g,-1/2), (g,1/2), (e,1/2), (e,3/2)} active.
    static LevelScheme paper_default() {
        return LevelScheme(0.5, 1.5,
                           {{Manifold::ground, -0.5},
                            {Manifold::ground, 0.5},
                            {Manifold::excited, 0.5},
                            {Manifold::excited, 1.5}});
    }

    // Effective two-level reduction {(g,1/2), (e,3/2)}; C = 1.
    static LevelScheme two_level() {
        return LevelScheme(0.5, 1.5, {{Manifold::ground, 0.5}, {Manifold::excited, 1.5}});
    }

    int ell() const { return int(levels_.size()); }
    double f_ground() const { return f_ground_; }
    double f_excited() const { return f_excited_; }
    const std::vector<Level>& levels() const { return levels_; }

    int index_of(Manifold mf, double m) const {
        for (std::size_t i = 0; i < levels_.size(); ++i)
            if (levels_[i] == Level{mf, m}) return int(i);
        return -1;
    }

    double cg(double m, int alpha) const {
        return clebsch_gordan(f_ground_, m, alpha, f_excited_);
    }

    // Single-particle amplitudes of the rotated ground state |G_beta>.
    // For the paper scheme the two ground levels carry (cos b/2, sin b/2);
    // a single ground level gets all the weight.
    Vectorcd ground_state(double beta) const {
        Vectorcd g = Vectorcd::Zero(ell());
        std::vector<int> gidx;
        for (int i = 0; i < ell(); ++i)
            if (levels_[i].manifold == Manifold::ground) gidx.push_back(i);
        if (gidx.empty()) throw std::domain_error("LevelScheme: no ground level");
        if (gidx.size() == 1) {
            g[gidx[0]] = 1.0;
        } else {
            g[gidx[0]] = std::cos(beta / 2);
            g[gidx[1]] = std::sin(beta / 2);
        }
        return g;
    }

  private:
    double f_ground_, f_excited_;
    std::vector<Level> levels_;
};

struct CavityParams {
    double g_coupling; // single-photon Rabi coupling
    double kappa;      // cavity linewidth
    double epsilon_plus = 0.0;  // drive amplitude, alpha = +1
    double epsilon_minus = 0.0; // drive amplitude, alpha = -1

    double bad_cavity_ratio(double n_atoms) const {
        return g_coupling * std::sqrt(n_atoms) / kappa;
    }
};

struct EffectiveParams {
    double gamma;       // collective decay rate
    double omega_plus;  // effective Rabi drive, alpha = +1
    double omega_minus; // effective Rabi drive, alpha = -1
};

// Gamma = 4 g^2 / kappa, Omega_alpha = 2 eps_alpha g / kappa.
inline EffectiveParams cavity_to_effective(const CavityParams& p) {
    if (p.kappa <= 0.0)
        throw std::domain_error("cavity_to_effective: kappa must be positive");
    double g = p.g_coupling;
    return {4.0 * g * g / p.kappa, 2.0 * p.epsilon_plus * g / p.kappa,
            2.0 * p.epsilon_minus * g / p.kappa};
}

struct SingleParticleOperator {
    Matrixcd mat;
    std::string label;

    bool is_hermitian(double tol = 1e-12) const {
        return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }
};

struct TransitionOperators {
    SingleParticleOperator d_plus, d_minus, d_x, d_y, n_e;
};

// d^+ has entry C_m^alpha at row (e, m+alpha), column (g, m) for each
// active transition pair; d^- is its adjoint.
inline TransitionOperators single_particle_ops(const LevelScheme& scheme, int alpha) {
    if (alpha != 1 && alpha != -1)
        throw std::domain_error("single_particle_ops: alpha must be +1 or -1");
    int l = scheme.ell();
    Matrixcd dp = Matrixcd::Zero(l, l);
    for (const auto& lv : scheme.levels()) {
        if (lv.manifold != Manifold::ground) continue;
        int col = scheme.index_of(Manifold::ground, lv.m);
        int row = scheme.index_of(Manifold::excited, lv.m + alpha);
        if (row < 0) continue; // target sublevel not active
        dp(row, col) = scheme.cg(lv.m, alpha);
    }
    Matrixcd dm = dp.adjoint();
    Matrixcd ne = Matrixcd::Zero(l, l);
    for (int i = 0; i < l; ++i)
        if (scheme.levels()[i].manifold == Manifold::excited) ne(i, i) = 1.0;
    std::string a = (alpha == 1) ? "+1" : "-1";
    return {{dp, "d^+_" + a},
            {dm, "d^-_" + a},
            {(dp + dm) / 2.0, "d^x_" + a},
            {(dp - dm) / complexd(0, 2), "d^y_" + a},
            {ne, "n_e"}};
}

} // namespace dsq
