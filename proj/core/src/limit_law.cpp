#include "lhp/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "lhp/geometry.hpp"
#include "lhp/numerics.hpp"
#include "lhp/parallel.hpp"
#include "lhp/rng.hpp"
#include "lhp/sampling.hpp"

namespace lhp {

namespace {

void require_limit_dimension(int d) {
    if (d < 4) throw DomainError("limit laws need d >= 4, got " + std::to_string(d));
}

// Exponent of cosh^{-e} in the ell-th jump moment: ell (d-2) - (d-1).
double moment_exponent(int d, int ell) { return ell * (d - 2.0) - (d - 1.0); }

}  // namespace

double default_cutoff(int d, double rate) {
    require_limit_dimension(d);
    const double n = d - 1.0;
    const double T = std::log(1000.0 * n * std::ldexp(1.0, d - 2) / rate) / n;
    return std::max(T, 0.5);
}

double limit_scale_constant(int d, double lambda) {
    require_limit_dimension(d);
    const LambdaGeometry g = lambda_geometry(lambda);
    if (g.is_horosphere()) throw UnsupportedError("the scale constant diverges for lambda = 1");
    return dimension_constants(d - 1).omega / ((d - 2.0) * std::ldexp(1.0, d - 2) * g.mu);
}

LimitLawSpec limit_law_with_rate(int d, double lambda, double rate, std::optional<double> T0) {
    require_limit_dimension(d);
    if (!(rate > 0.0)) throw DomainError("rate must be positive");
    const double scale = limit_scale_constant(d, lambda);
    const double cutoff = T0 ? *T0 : default_cutoff(d, rate);
    if (!(cutoff > 0.0)) throw DomainError("cutoff T0 must be positive");
    LimitLawSpec spec{d, lambda, rate, cutoff, 0.0, scale};
    spec.tail_variance = tail_cumulant(spec, 2, cutoff);
    return spec;
}

LimitLawSpec limit_law(int d, double lambda, std::optional<double> T0) {
    return limit_law_with_rate(d, lambda, zeta_rate(d, lambda), T0);
}

double tail_cumulant(const LimitLawSpec& spec, int ell, double T0) {
    const double e = moment_exponent(spec.d, ell);
    if (!(e > 0.0)) throw DomainError("jump moment of order " + std::to_string(ell) + " diverges");
    return spec.rate * cosh_power_tail(e, T0);
}

double limit_cumulant(const LimitLawSpec& spec, int ell) {
    if (ell < 1) throw DomainError("cumulant order must be >= 1");
    if (ell == 1) return 0.0;
    const double e = moment_exponent(spec.d, ell);
    if (!(e > 0.0)) throw DomainError("cumulant of order " + std::to_string(ell) + " diverges");
    return spec.rate * 0.5 * cosh_power_integral_real_line(e);
}

namespace {

// int_0^inf (e^{ith} - 1 - ith) cosh^{d-1}, h = cosh^{-(d-2)}.
std::complex<double> log_cf_per_rate(int d, double t) {
    if (t == 0.0) return {0.0, 0.0};
    const double n = d - 1.0;
    const double m = d - 2.0;
    constexpr double kSmallPhase = 1e-4;
    const double at = std::fabs(t);
    // Beyond S the phase t h(s) is below kSmallPhase and a Taylor series is used.
    const double S = at > kSmallPhase ? arcosh_exp(std::log(at / kSmallPhase) / m) : 0.0;

    std::complex<double> body{0.0, 0.0};
    if (S > 0.0) {
        QuadratureOptions opt;
        opt.rel_tol = 1e-11;
        opt.abs_tol = 1e-15;
        opt.max_intervals = 20000;
        body = integrate(
                   [&](double s) {
                       const double lc = log_cosh(s);
                       const double x = t * std::exp(-m * lc);
                       const double w = std::exp(n * lc);
                       return std::complex<double>(cos_minus_one(x) * w, sin_minus_x(x) * w);
                   },
                   0.0, S, opt)
                   .value;
    }
    // (it)^ell / ell! * int_S^inf h^ell cosh^{d-1}, ell = 2..5.
    const double t2 = t * t;
    const double tail2 = cosh_power_tail(2.0 * m - n, S);
    const double tail3 = cosh_power_tail(3.0 * m - n, S);
    const double tail4 = cosh_power_tail(4.0 * m - n, S);
    const double tail5 = cosh_power_tail(5.0 * m - n, S);
    const std::complex<double> tail{-0.5 * t2 * tail2 + t2 * t2 / 24.0 * tail4,
                                    -t2 * t / 6.0 * tail3 + t2 * t2 * t / 120.0 * tail5};
    return body + tail;
}

}  // namespace

std::complex<double> characteristic_function(const LimitLawSpec& spec, double t) {
    require_limit_dimension(spec.d);
    return std::exp(spec.rate * log_cf_per_rate(spec.d, t));
}

double levy_density(int d, double y) {
    require_limit_dimension(d);
    if (!(y > 0.0 && y < 1.0)) throw DomainError("Levy density is supported on (0, 1)");
    const double m = d - 2.0;
    const double ly = std::log(y);
    const double root = std::sqrt(-std::expm1(2.0 / m * ly));
    return 1.0 / (m * std::exp((2.0 * d - 3.0) / m * ly) * root);
}

std::vector<double> sample_limit(const LimitLawSpec& spec, std::size_t n, std::uint64_t seed, int threads) {
    require_limit_dimension(spec.d);
    const ZetaSampler zeta(spec.d, spec.rate, spec.T0);
    const double compensator = spec.rate * std::sinh(spec.T0);
    const double tail_sd = std::sqrt(spec.tail_variance);
    const int m = spec.d - 2;
    std::vector<double> out(n);
    parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> points;
        for (std::size_t i = begin; i < end; ++i) {
            PhiloxEngine count_rng(seed, i, Substream::count);
            PhiloxEngine pos_rng(seed, i, Substream::positions);
            PhiloxEngine gauss_rng(seed, i, Substream::gaussian);
            points.clear();
            zeta.sample(count_rng, pos_rng, points);
            CompensatedSum sum;
            for (const double s : points) {
                const double inv = 1.0 / std::cosh(s);
                double h = 1.0;
                for (int k = 0; k < m; ++k) h *= inv;
                sum.add(h);
            }
            std::normal_distribution<double> normal(0.0, 1.0);
            out[i] = (sum.value() - compensator) + tail_sd * normal(gauss_rng);
        }
    });
    return out;
}

namespace {

// Pool-adjacent-violators fit of a nondecreasing sequence (equal weights).
std::vector<double> isotonic(const std::vector<double>& y) {
    std::vector<double> mean;
    std::vector<std::size_t> size;
    for (const double v : y) {
        mean.push_back(v);
        size.push_back(1);
        while (mean.size() > 1 && mean[mean.size() - 2] > mean.back()) {
            const std::size_t n2 = size.back();
            const double m2 = mean.back();
            mean.pop_back();
            size.pop_back();
            const std::size_t n1 = size.back();
            mean.back() = (mean.back() * n1 + m2 * n2) / (n1 + n2);
            size.back() = n1 + n2;
        }
    }
    std::vector<double> out;
    out.reserve(y.size());
    for (std::size_t b = 0; b < mean.size(); ++b) out.insert(out.end(), size[b], mean[b]);
    return out;
}

}  // namespace

std::vector<double> cdf_via_inversion(const LimitLawSpec& spec, std::span<const double> x_grid) {
    require_limit_dimension(spec.d);
    if (!std::is_sorted(x_grid.begin(), x_grid.end())) throw DomainError("x grid must be sorted");
    if (x_grid.empty()) return {};

    constexpr double kCfFloor = 1e-10;
    constexpr double kTarget = 1e-8;
    double t_max = 1.0;
    while (std::abs(characteristic_function(spec, t_max)) >= kCfFloor) {
        t_max *= 2.0;
        if (t_max > 1e6) throw NumericalError("characteristic function does not decay", t_max);
    }

    const std::size_t nx = x_grid.size();
    std::vector<double> F(nx);
    int panels = 64;
    for (;;) {
        const double width = t_max / panels;
        std::vector<double> nodes;
        std::vector<double> wk;
        std::vector<double> wg;
        nodes.reserve(15 * panels);
        for (int p = 0; p < panels; ++p) {
            const double c = (p + 0.5) * width;
            const double h = 0.5 * width;
            for (int j = 0; j < 7; ++j) {
                for (const double sign : {-1.0, 1.0}) {
                    nodes.push_back(c + sign * h * gk15::kNodes[j]);
                    wk.push_back(h * gk15::kKronrodWeights[j]);
                    wg.push_back(j % 2 == 1 ? h * gk15::kGaussWeights[j / 2] : 0.0);
                }
            }
            nodes.push_back(c);
            wk.push_back(h * gk15::kKronrodWeights[7]);
            wg.push_back(h * gk15::kGaussWeights[3]);
        }
        std::vector<std::complex<double>> psi(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) psi[i] = characteristic_function(spec, nodes[i]);

        double worst = 0.0;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = x_grid[ix];
            CompensatedSum total;
            double err = 0.0;
            for (int p = 0; p < panels; ++p) {
                double k = 0.0;
                double g = 0.0;
                for (int j = 0; j < 15; ++j) {
                    const std::size_t i = static_cast<std::size_t>(p) * 15 + j;
                    const double t = nodes[i];
                    const double v = (std::complex<double>(std::cos(t * x), -std::sin(t * x)) * psi[i]).imag() / t;
                    k += wk[i] * v;
                    g += wg[i] * v;
                }
                total.add(k);
                err += std::fabs(k - g);
            }
            F[ix] = 0.5 - total.value() / std::numbers::pi;
            worst = std::max(worst, err / std::numbers::pi);
        }
        if (worst <= kTarget) break;
        if (panels >= (1 << 14)) throw NumericalError("Fourier inversion did not converge", worst);
        panels *= 2;
    }

    const std::vector<double> mono = isotonic(F);
    double shift = 0.0;
    for (std::size_t i = 0; i < nx; ++i) shift = std::max(shift, std::fabs(mono[i] - F[i]));
    if (shift > 1e-6) throw NumericalError("inverted CDF needed a large monotone correction", shift);
    for (std::size_t i = 0; i < nx; ++i) F[i] = std::clamp(mono[i], 0.0, 1.0);
    return F;
}

TabulatedCdf::TabulatedCdf(std::vector<double> x, std::vector<double> F) : x_(std::move(x)), F_(std::move(F)) {
    if (x_.size() != F_.size() || x_.size() < 2) throw DomainError("tabulated CDF needs >= 2 matching points");
    if (!std::is_sorted(x_.begin(), x_.end()) || !std::is_sorted(F_.begin(), F_.end())) {
        throw DomainError("tabulated CDF must be nondecreasing");
    }
}

double TabulatedCdf::operator()(double x) const {
    if (x <= x_.front()) return F_.front();
    if (x >= x_.back()) return F_.back();
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    const double w = (x - x_[i]) / (x_[i + 1] - x_[i]);
    return F_[i] + w * (F_[i + 1] - F_[i]);
}

double TabulatedCdf::quantile(double p) const {
    if (p <= F_.front()) return x_.front();
    if (p >= F_.back()) return x_.back();
    const std::size_t i = static_cast<std::size_t>(std::lower_bound(F_.begin(), F_.end(), p) - F_.begin());
    // F_[i-1] < p <= F_[i]
    const double dF = F_[i] - F_[i - 1];
    const double w = dF > 0.0 ? (p - F_[i - 1]) / dF : 0.0;
    return x_[i - 1] + w * (x_[i] - x_[i - 1]);
}

TabulatedCdf tabulate_limit_cdf(const LimitLawSpec& spec, int points) {
    if (points < 2) throw DomainError("need at least two tabulation points");
    const double sd = std::sqrt(limit_cumulant(spec, 2));
    const double lo = -8.0 * sd;
    const double hi = 14.0 * sd;
    std::vector<double> x(points);
    for (int i = 0; i < points; ++i) x[i] = lo + (hi - lo) * i / (points - 1);
    std::vector<double> F = cdf_via_inversion(spec, x);
    return TabulatedCdf(std::move(x), std::move(F));
}

}  // namespace lhp
