#pragma once

// The infinitely divisible limit variable Z: a compensated sum of
// cosh^{-(d-2)}(s) over a Poisson process on [0, inf) with density
// rate * cosh^{d-1}(s).

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lhp {

struct LimitLawSpec {
    int d;
    double lambda;
    double rate;            // Poisson density multiplier
    double T0;              // jumps on [0, T0] are simulated exactly
    double tail_variance;   // rate * int_{T0}^inf cosh^{3-d}
    double scale_constant;  // omega_{d-1} / ((d-2) 2^{d-2} sqrt(1 - lambda^2))
};

/// T0 at which the expected number of simulated jumps is about 500.
double default_cutoff(int d, double rate);

/// Law attached to lambda-geodesic hyperplanes: rate 2 (1 - lambda^2)^{(d-1)/2}.
LimitLawSpec limit_law(int d, double lambda, std::optional<double> T0 = std::nullopt);

/// Law with an explicit rate (rate 1 with lambda = 0 is the unoriented
/// geodesic convention).
LimitLawSpec limit_law_with_rate(int d, double lambda, double rate,
                                 std::optional<double> T0 = std::nullopt);

/// omega_{d-1} / ((d-2) 2^{d-2} sqrt(1 - lambda^2)) for d >= 4, lambda < 1.
double limit_scale_constant(int d, double lambda);

/// rate * int_{T0}^inf cosh^{-(ell(d-2)-(d-1))}: the ell-th cumulant of the
/// jumps beyond T0.
double tail_cumulant(const LimitLawSpec& spec, int ell, double T0);

/// ell-th cumulant; 0 for ell = 1. Throws DomainError when it diverges.
double limit_cumulant(const LimitLawSpec& spec, int ell);

/// E exp(i t Z).
std::complex<double> characteristic_function(const LimitLawSpec& spec, double t);

/// Lévy density of the jump sizes per unit rate, 0 < y < 1.
double levy_density(int d, double y);

/// Hybrid draws: exact compensated jumps on [0, T0] plus an independent
/// Normal(0, tail_variance) standing in for the small jumps beyond T0.
/// Draw i uses replicate stream i, so results do not depend on `threads`.
std::vector<double> sample_limit(const LimitLawSpec& spec, std::size_t n, std::uint64_t seed,
                                 int threads = 0);

/// CDF by Gil-Pelaez inversion of the characteristic function, made
/// monotone by isotonic regression. Throws NumericalError when the
/// inversion integral misses 1e-8 or the monotone correction exceeds 1e-6.
std::vector<double> cdf_via_inversion(const LimitLawSpec& spec, std::span<const double> x_grid);

/// Piecewise-linear CDF through tabulated points.
class TabulatedCdf {
  public:
    TabulatedCdf(std::vector<double> x, std::vector<double> F);

    double operator()(double x) const;
    double quantile(double p) const;

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& values() const { return F_; }

  private:
    std::vector<double> x_;
    std::vector<double> F_;
};

/// Tabulates the inversion CDF on `points` equispaced nodes covering
/// [-8, 14] standard deviations of Z.
TabulatedCdf tabulate_limit_cdf(const LimitLawSpec& spec, int points = 2001);

}  // namespace lhp
