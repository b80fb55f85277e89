#include "lhp/numerics.hpp"

#include <boost/math/special_functions/beta.hpp>

namespace lhp {

double cosh_power_integral_real_line(double h) {
    if (!(h > 0.0)) throw DomainError("cosh power integral diverges for exponent <= 0");
    return std::exp(0.5 * std::log(std::numbers::pi) + std::lgamma(0.5 * h) -
                    std::lgamma(0.5 * (h + 1.0)));
}

double cosh_power_tail(double h, double S) {
    if (!(h > 0.0)) throw DomainError("cosh power tail diverges for exponent <= 0");
    if (S < 0.0) return cosh_power_integral_real_line(h) - cosh_power_tail(h, -S);
    const double a = 0.5 * h;
    // z = 1/(1+e^{2S}) and 1-z, both without cancellation.
    const double z = 0.5 * std::exp(-S - log_cosh(S));
    const double log_prefactor = (h - 1.0) * std::numbers::ln2 + 2.0 * std::lgamma(a) - std::lgamma(h);
    return std::exp(log_prefactor) * boost::math::ibeta(a, a, z);
}

double cosh_power_antiderivative(int n, double x) {
    if (n < 0) throw DomainError("cosh power antiderivative needs n >= 0");
    const double c = std::cosh(x);
    const double s = std::sinh(x);
    double lower = x;  // n = 0
    if (n == 0) return lower;
    double upper = s;  // n = 1
    for (int k = 2; k <= n; ++k) {
        const double next = std::pow(c, k - 1) * s / k + (k - 1.0) / k * lower;
        lower = upper;
        upper = next;
    }
    return upper;
}

}  // namespace lhp
