#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dsq {

namespace detail {

inline bool is_half_integer(double x) {
    return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-9;
}

// Exact factorial as double; arguments stay small (< 2F+2) for any
// realistic angular momentum.
inline double fact(double x) {
    long n = std::lround(x);
    if (n < 0) throw std::domain_error("factorial of negative number");
    double r = 1.0;
    for (long i = 2; i <= n; ++i) r *= double(i);
    return r;
}

} // namespace detail

// Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> via the
// Racah sum. Exact to round-off for half-integer inputs.
inline double clebsch_gordan_general(double j1, double m1, double j2, double m2,
                                     double J, double M) {
    using detail::fact;
    if (!detail::is_half_integer(j1) || !detail::is_half_integer(m1) ||
        !detail::is_half_integer(j2) || !detail::is_half_integer(m2) ||
        !detail::is_half_integer(J) || !detail::is_half_integer(M))
        throw std::domain_error("clebsch_gordan: arguments must be half-integers");
    if (std::abs(m1 + m2 - M) > 1e-9) return 0.0;
    if (J < std::abs(j1 - j2) - 1e-9 || J > j1 + j2 + 1e-9) return 0.0;
    if (std::abs(m1) > j1 + 1e-9 || std::abs(m2) > j2 + 1e-9 || std::abs(M) > J + 1e-9)
        return 0.0;

    double pre = (2.0 * J + 1.0) * fact(J + j1 - j2) * fact(J - j1 + j2) *
                 fact(j1 + j2 - J) / fact(j1 + j2 + J + 1.0);
    pre *= fact(J + M) * fact(J - M) * fact(j1 - m1) * fact(j1 + m1) *
           fact(j2 - m2) * fact(j2 + m2);

    double sum = 0.0;
    long kmax = std::lround(j1 + j2 - J);
    for (long k = 0; k <= kmax; ++k) {
        double t1 = j1 + j2 - J - k;
        double t2 = j1 - m1 - k;
        double t3 = j2 + m2 - k;
        double t4 = J - j2 + m1 + k;
        double t5 = J - j1 - m2 + k;
        if (t1 < -1e-9 || t2 < -1e-9 || t3 < -1e-9 || t4 < -1e-9 || t5 < -1e-9)
            continue;
        double term = 1.0 / (fact(double(k)) * fact(t1) * fact(t2) * fact(t3) *
                             fact(t4) * fact(t5));
        sum += (k % 2 == 0) ? term : -term;
    }
    return std::sqrt(pre) * sum;
}

// C_m^alpha = <F_g, m; 1, alpha | F_e, m+alpha> for a dipole transition.
inline double clebsch_gordan(double f_g, double m, int alpha, double f_e) {
    if (alpha < -1 || alpha > 1)
        throw std::domain_error("clebsch_gordan: polarization alpha=" +
                                std::to_string(alpha) + " outside {-1,0,+1}");
    if (std::abs(m) > f_g + 1e-9)
        throw std::domain_error("clebsch_gordan: |m|=" + std::to_string(std::abs(m)) +
                                " exceeds F_g=" + std::to_string(f_g));
    if (std::abs(m + alpha) > f_e + 1e-9)
        throw std::domain_error("clebsch_gordan: |m+alpha|=" +
                                std::to_string(std::abs(m + alpha)) +
                                " exceeds F_e=" + std::to_string(f_e));
    double d = f_e - f_g;
    if (d < -1.0 - 1e-9 || d > 1.0 + 1e-9 || !detail::is_half_integer(d))
        throw std::domain_error("clebsch_gordan: F_e - F_g must be in {-1,0,1}");
    return clebsch_gordan_general(f_g, m, 1.0, double(alpha), f_e, m + alpha);
}

} // namespace dsq
