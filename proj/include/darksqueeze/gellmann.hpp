#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "darksqueeze/atomic_model.hpp"

namespace dsq {

// Generalized Gell-Mann generators of su(ell), Tr(g_k g_l) = 2 delta_kl,
// with the structure tables
//   g_k g_l = (2/ell) delta_kl 1 + sum_m (d_klm + i f_klm) g_m.
class GellMannBasis {
  public:
    explicit GellMannBasis(int ell) : ell_(ell) {
        if (ell < 2) throw std::domain_error("GellMannBasis: ell must be >= 2");
        for (int j = 0; j < ell; ++j) {
            for (int k = j + 1; k < ell; ++k) {
                Matrixcd s = Matrixcd::Zero(ell, ell);
                s(j, k) = 1.0;
                s(k, j) = 1.0;
                gen_.push_back(s);
                Matrixcd a = Matrixcd::Zero(ell, ell);
                a(j, k) = complexd(0, -1);
                a(k, j) = complexd(0, 1);
                gen_.push_back(a);
            }
        }
        for (int l = 1; l < ell; ++l) {
            Matrixcd dgen = Matrixcd::Zero(ell, ell);
            double norm = std::sqrt(2.0 / (double(l) * (l + 1)));
            for (int j = 0; j < l; ++j) dgen(j, j) = norm;
            dgen(l, l) = -double(l) * norm;
            gen_.push_back(dgen);
        }
        n_ = int(gen_.size());
        d_.assign(std::size_t(n_) * n_ * n_, 0.0);
        f_.assign(std::size_t(n_) * n_ * n_, 0.0);
        for (int k = 0; k < n_; ++k) {
            for (int l = 0; l < n_; ++l) {
                Matrixcd ac = gen_[k] * gen_[l] + gen_[l] * gen_[k];
                Matrixcd co = gen_[k] * gen_[l] - gen_[l] * gen_[k];
                for (int m = 0; m < n_; ++m) {
                    d_[idx(k, l, m)] = 0.25 * (ac * gen_[m]).trace().real();
                    f_[idx(k, l, m)] = 0.25 * ((co * gen_[m]).trace() / complexd(0, 1)).real();
                }
            }
        }
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int m = 0; m < n_; ++m)
                    if (std::abs(f_[idx(a, b, m)]) > 1e-14)
                        f_nnz_.push_back({a, b, m, f_[idx(a, b, m)]});
    }

    int ell() const { return ell_; }
    int size() const { return n_; } // ell^2 - 1
    const std::vector<Matrixcd>& generators() const { return gen_; }
    const Matrixcd& g(int k) const { return gen_[std::size_t(k)]; }
    double dtab(int k, int l, int m) const { return d_[idx(k, l, m)]; }
    double ftab(int k, int l, int m) const { return f_[idx(k, l, m)]; }

    struct FEntry {
        int a, b, m;
        double val;
    };
    const std::vector<FEntry>& f_nonzeros() const { return f_nnz_; }

    // Coefficients of a (not necessarily traceless) single-particle operator:
    // op = tr(op)/ell * 1 + sum_k coeff_k g_k with coeff_k = Tr(op g_k)/2.
    Vectorcd coefficients(const Matrixcd& op) const {
        Vectorcd c(n_);
        for (int k = 0; k < n_; ++k) c[k] = (op * gen_[std::size_t(k)]).trace() / 2.0;
        return c;
    }

    // F^c_{lm} = sum_k c_k f_{lkm} for a coefficient vector c.
    Matrixcd f_contraction(const Vectorcd& c) const {
        Matrixcd F = Matrixcd::Zero(n_, n_);
        for (const auto& e : f_nnz_) F(e.a, e.m) += c[e.b] * e.val; // f_{a, b, m}
        return F;
    }

    // F[v]_ab = sum_n f_abn v_n (real antisymmetric).
    Eigen::MatrixXd f_of_vector(const Eigen::VectorXd& v) const {
        Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n_, n_);
        for (const auto& e : f_nnz_) F(e.a, e.b) += v[e.m] * e.val;
        return F;
    }

  private:
    std::size_t idx(int k, int l, int m) const {
        return (std::size_t(k) * n_ + l) * n_ + m;
    }
    int ell_, n_ = 0;
    std::vector<Matrixcd> gen_;
    std::vector<double> d_, f_;
    std::vector<FEntry> f_nnz_;
};

inline GellMannBasis gellmann_basis(int ell) { return GellMannBasis(ell); }

} // namespace dsq
