#pragma once

// Independent reference implementations used only by the tests. Each one
// takes a different route from the library: published closed forms instead
// of the log-space evaluation, Boost quadrature instead of the in-house
// Gauss-Kronrod, brute-force U-statistics instead of power sums, and
// rejection sampling instead of tabulated inversion.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace lhp::oracle {

inline double omega(int k) { return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k); }
inline double kappa(int k) { return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0); }

template <class F>
double gk(F f, double a, double b, unsigned max_depth = 15, double tol = 1e-13) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol);
}

/// Fixed 64-point Gauss-Legendre; exact to round-off for entire integrands
/// of moderate growth.
template <class F>
double gauss64(F f, double a, double b) {
    return boost::math::quadrature::gauss<double, 64>::integrate(f, a, b);
}

template <class F>
double tanh_sinh(F f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(f, a, b);
}

/// Crofton right-hand side: omega_d * int_0^R sinh^{d-1}.
inline double ball_volume(int d, double R) {
    if (R == 0.0) return 0.0;
    return omega(d) * tanh_sinh([d](double u) { return std::pow(std::sinh(u), d - 1); }, 0.0, R);
}

/// Section radius in its arcosh form with Delta = artanh(lambda).
inline double rho_arcosh(double lambda, double s, double R) {
    const double D = std::atanh(lambda);
    return std::acosh((std::cosh(R) - std::sinh(D) * std::sinh(s - D)) / (std::cosh(D) * std::cosh(s - D)));
}

/// Section radius as half the log of the height ratio of the Euclidean ball.
/// The form cancels badly for large radii, so it runs in 50-digit arithmetic.
inline double rho_ugly(double lambda, double s, double R) {
    using Big = boost::multiprecision::cpp_bin_float_50;
    const Big l = lambda;
    const Big D = boost::multiprecision::atanh(l);
    const Big mu = boost::multiprecision::sqrt(1 - l * l);
    const Big q_inv = boost::multiprecision::cosh(Big(s) - D) /
                      (mu * boost::multiprecision::cosh(Big(R)) - l * boost::multiprecision::sinh(Big(s) - D));
    const Big r = boost::multiprecision::sqrt(1 - q_inv * q_inv);
    return static_cast<double>(boost::multiprecision::log((1 + r) / (1 - r)) / 2);
}

/// (d-1)-volume of H(s) cut by B_R from the published formulas.
inline double section_volume(int d, double lambda, double s, double R) {
    if (std::fabs(s) >= R) return 0.0;
    if (lambda == 1.0) {
        return kappa(d - 1) * std::pow(2.0 * std::exp(s) * (std::cosh(R) - std::cosh(s)), 0.5 * (d - 1));
    }
    const double mu = std::sqrt(1.0 - lambda * lambda);
    const double r = rho_arcosh(lambda, s, R);
    const double inner = d == 2 ? r : gauss64([d](double u) { return std::pow(std::sinh(u), d - 2); }, 0.0, r);
    return omega(d - 1) / std::pow(mu, d - 1) * inner;
}

inline double weight(int d, double lambda, double s) {
    return std::pow(std::cosh(s) - lambda * std::sinh(s), d - 1);
}

/// I_{lambda,k}(R) by nested Boost quadrature, split at the kink of the
/// section radius.
inline double cumulant_integral(int d, double lambda, double R, int k) {
    auto f = [&](double s) { return std::pow(section_volume(d, lambda, s, R), k) * weight(d, lambda, s); };
    const double split = lambda < 1.0 ? std::clamp(std::atanh(lambda), -R, R) : 0.0;
    return gk(f, -R, split, 12, 1e-12) + gk(f, split, R, 12, 1e-12);
}

/// Levy density before simplification: pushforward of cosh^{d-1}(s) ds by
/// h(s) = cosh^{-(d-2)}(s).
inline double levy_pushforward(int d, double y) {
    const double s = std::acosh(std::pow(y, -1.0 / (d - 2)));
    return std::pow(std::cosh(s), 2 * d - 2) / ((d - 2) * std::sinh(s));
}

/// int_0^1 y^ell nu_d(dy) with the library's closed-form Levy density.
template <class Density>
double levy_moment(int ell, Density density) {
    return tanh_sinh(
        [&](double y) {
            if (y < 1e-100) return 0.0;
            return std::pow(y, ell) * density(y);
        },
        0.0, 1.0);
}

/// Unbiased cumulant estimates as averages over distinct index tuples.
struct BruteCumulants {
    double k2, k3, k4;
};

inline BruteCumulants brute_k_statistics(std::span<const double> x) {
    const std::size_t n = x.size();
    double e1111 = 0, e211 = 0, e22 = 0, e31 = 0, e4 = 0, e111 = 0, e21 = 0, e3 = 0, e11 = 0, e2 = 0;
    double c4 = 0, c3 = 0, c2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        e2 += x[i] * x[i];
        e3 += x[i] * x[i] * x[i];
        e4 += x[i] * x[i] * x[i] * x[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            c2 += 1;
            e11 += x[i] * x[j];
            e21 += x[i] * x[i] * x[j];
            e31 += x[i] * x[i] * x[i] * x[j];
            e22 += x[i] * x[i] * x[j] * x[j];
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                c3 += 1;
                e111 += x[i] * x[j] * x[k];
                e211 += x[i] * x[i] * x[j] * x[k];
                for (std::size_t l = 0; l < n; ++l) {
                    if (l == i || l == j || l == k) continue;
                    c4 += 1;
                    e1111 += x[i] * x[j] * x[k] * x[l];
                }
            }
        }
    }
    const double m = static_cast<double>(n);
    e2 /= m;
    e3 /= m;
    e4 /= m;
    e11 /= c2;
    e21 /= c2;
    e31 /= c2;
    e22 /= c2;
    e111 /= c3;
    e211 /= c3;
    e1111 /= c4;
    return {e2 - e11, e3 - 3 * e21 + 2 * e111, e4 - 4 * e31 - 3 * e22 + 12 * e211 - 6 * e1111};
}

/// Rejection sampler for the signed distance: envelope e^{(d-1)|s|} on
/// [-R, R], which dominates (cosh s - lambda sinh s)^{d-1}.
class RejectionPositions {
  public:
    RejectionPositions(int d, double lambda, double R, std::uint64_t seed)
        : d_(d), lambda_(lambda), R_(R), rng_(seed) {}

    double operator()() {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const double a = d_ - 1.0;
        while (true) {
            const double u = u01(rng_);
            // |s| has density proportional to e^{a t} on [0, R].
            const double t = std::log1p(u * std::expm1(a * R_)) / a;
            const double s = u01(rng_) < 0.5 ? -t : t;
            if (u01(rng_) * std::exp(a * t) <= weight(d_, lambda_, s)) return s;
        }
    }

  private:
    int d_;
    double lambda_;
    double R_;
    std::mt19937_64 rng_;
};

}  // namespace lhp::oracle
