#pragma once

// Numerical building blocks: overflow-safe hyperbolic functions, compensated
// summation, and adaptive Gauss-Kronrod quadrature (including a log-domain
// variant for integrands spanning hundreds of e-folds).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>
#include <type_traits>
#include <vector>

#include "lhp/errors.hpp"

namespace lhp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Log-domain hyperbolic helpers
// ---------------------------------------------------------------------------

/// log(cosh x), finite for every finite x.
inline double log_cosh(double x) {
    const double ax = std::fabs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

/// log(sinh x) for x >= 0; returns -inf at 0.
inline double log_sinh(double x) {
    if (x > 20.0) return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
    return std::log(std::sinh(x));
}

/// log(1 + e^v) without overflow.
inline double log1p_exp(double v) {
    if (v > 35.0) return v + std::exp(-v);
    return std::log1p(std::exp(v));
}

inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

/// arcosh(e^L) for L >= 0 (clamped to 0 below).
inline double arcosh_exp(double L) {
    if (L <= 0.0) return 0.0;
    return L + std::log1p(std::sqrt(-std::expm1(-2.0 * L)));
}

/// arcosh(1 + x) for x >= 0, accurate for tiny x and finite for huge x.
inline double arcosh_1p(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1e8) return std::log1p(x + std::sqrt(x * (x + 2.0)));
    return arcosh_exp(std::log(x) + std::log1p(1.0 / x));
}

/// arcosh(1 + e^log_x).
inline double arcosh_1p_from_log(double log_x) {
    if (log_x == kNegInf) return 0.0;
    if (log_x < 18.0) return arcosh_1p(std::exp(log_x));
    return arcosh_exp(log1p_exp(log_x));
}

/// cosh(a) - cosh(b) = 2 sinh((a+b)/2) sinh((a-b)/2), free of cancellation.
inline double cosh_difference(double a, double b) {
    return 2.0 * std::sinh(0.5 * (a + b)) * std::sinh(0.5 * (a - b));
}

/// sin(x) - x without cancellation for small |x|.
inline double sin_minus_x(double x) {
    if (std::fabs(x) > 0.25) return std::sin(x) - x;
    const double x2 = x * x;
    double term = -x * x2 / 6.0;
    double sum = term;
    for (int k = 2; k < 12; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

/// sinh(x) - x without cancellation for small |x|.
inline double sinh_minus_x(double x) {
    if (std::fabs(x) > 0.5) return std::sinh(x) - x;
    const double x2 = x * x;
    double term = x * x2 / 6.0;
    double sum = term;
    for (int k = 2; k < 12; ++k) {
        term *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

/// cos(x) - 1 without cancellation.
inline double cos_minus_one(double x) {
    const double h = std::sin(0.5 * x);
    return -2.0 * h * h;
}

// ---------------------------------------------------------------------------
// Special integrals of powers of cosh
// ---------------------------------------------------------------------------

/// Integral of cosh^{-h}(s) over the whole real line, h > 0.
double cosh_power_integral_real_line(double h);

/// Integral of cosh^{-h}(s) over [S, inf), h > 0. Uses the incomplete beta
/// representation 2^{h-1} B(z; h/2, h/2) with z = 1/(1+e^{2S}).
double cosh_power_tail(double h, double S);

/// Antiderivative of cosh^n from 0 to x for integer n >= 0 (reduction
/// formula). Intended for moderate x; overflows with cosh.
double cosh_power_antiderivative(int n, double x);

// ---------------------------------------------------------------------------
// Compensated summation
// ---------------------------------------------------------------------------

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// ---------------------------------------------------------------------------
// Gauss-Kronrod quadrature
// ---------------------------------------------------------------------------

namespace gk15 {
// Abscissae of the 15-point Kronrod rule; odd indices are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
    T kronrod;
    T gauss;
};

/// Applies both rules on [a, b].
template <class F>
auto apply(F&& f, double a, double b) -> Panel<std::decay_t<decltype(f(a))>> {
    using T = std::decay_t<decltype(f(a))>;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T k = fc * kKronrodWeights[7];
    T g = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kNodes[j];
        const T f1 = f(c - dx);
        const T f2 = f(c + dx);
        k += (f1 + f2) * kKronrodWeights[j];
        if (j % 2 == 1) g += (f1 + f2) * kGaussWeights[j / 2];
    }
    return {k * h, g * h};
}
}  // namespace gk15

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

template <class T>
struct QuadratureResult {
    T value;
    double error;
    int intervals;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
/// Throws NumericalError when the tolerance is not met within
/// `max_intervals` subdivisions; the exception carries the achieved
/// relative error.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt = {})
    -> QuadratureResult<std::decay_t<decltype(f(a))>> {
    using T = std::decay_t<decltype(f(a))>;
    if (a == b) return {T{}, 0.0, 0};
    struct Interval {
        double a, b;
        T value;
        double error;
        bool operator<(const Interval& o) const { return error < o.error; }
    };
    auto eval = [&](double lo, double hi) {
        const auto p = gk15::apply(f, lo, hi);
        return Interval{lo, hi, p.kronrod, std::abs(p.kronrod - p.gauss)};
    };
    std::priority_queue<Interval> heap;
    heap.push(eval(a, b));
    T total = heap.top().value;
    double total_err = heap.top().error;
    int count = 1;
    auto converged = [&] {
        return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    };
    while (!converged()) {
        if (count >= opt.max_intervals) {
            const double rel = total_err / std::max(std::abs(total), 1e-300);
            throw NumericalError("adaptive quadrature did not converge", rel);
        }
        const Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            const double rel = total_err / std::max(std::abs(total), 1e-300);
            throw NumericalError("adaptive quadrature hit interval resolution limit", rel);
        }
        Interval left = eval(worst.a, mid);
        Interval right = eval(mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum to shed the drift of incremental updates.
    T resum{};
    double err_sum = 0.0;
    while (!heap.empty()) {
        resum += heap.top().value;
        err_sum += heap.top().error;
        heap.pop();
    }
    return {resum, err_sum, count};
}

/// log of the integral of exp(log_f) over [a, b]. The integrand is shifted by
/// its maximum on a probe grid before exponentiation, so integrands of size
/// e^{1000} are handled. Returns -inf for an identically vanishing integrand.
template <class LogF>
double log_integrate(LogF&& log_f, double a, double b, const QuadratureOptions& opt = {}) {
    if (!(b > a)) return kNegInf;
    constexpr int kProbe = 128;
    double shift = kNegInf;
    for (int i = 0; i <= kProbe; ++i) {
        const double x = a + (b - a) * (static_cast<double>(i) / kProbe);
        shift = std::max(shift, log_f(x));
    }
    if (shift == kNegInf) return kNegInf;
    const auto res = integrate(
        [&](double x) {
            const double l = log_f(x);
            return l == kNegInf ? 0.0 : std::exp(l - shift);
        },
        a, b, opt);
    if (!(res.value > 0.0)) return kNegInf;
    return shift + std::log(res.value);
}

}  // namespace lhp
