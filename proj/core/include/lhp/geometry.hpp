#pragma once

// Closed-form geometry of lambda-geodesic hyperplanes and their sections with
// hyperbolic balls centred at the origin. Every quantity that grows like
// e^{cR} has a log-domain twin so that radii in the hundreds stay finite.

#include <optional>

#include "lhp/errors.hpp"

namespace lhp {

/// A real number or +infinity, with the infinite state explicit.
class ExtendedReal {
  public:
    constexpr explicit ExtendedReal(double v) : value_(v), infinite_(false) {}
    static constexpr ExtendedReal infinity() { return ExtendedReal(); }

    constexpr bool is_infinite() const { return infinite_; }
    /// The finite value; throws UnsupportedError for +infinity.
    double value() const {
        if (infinite_) throw UnsupportedError("extended real is infinite");
        return value_;
    }

  private:
    constexpr ExtendedReal() : value_(0.0), infinite_(true) {}
    double value_;
    bool infinite_;
};

/// Constants derived from the curvature parameter lambda = cos(theta).
struct LambdaGeometry {
    double lambda;
    double theta;       // acos(lambda)
    double mu;          // sin(theta) = sqrt(1 - lambda^2)
    ExtendedReal m;     // tan(theta); infinite for lambda = 0
    ExtendedReal delta; // artanh(lambda); infinite for lambda = 1

    bool is_horosphere() const { return delta.is_infinite(); }
};

/// Throws DomainError unless 0 <= lambda <= 1.
LambdaGeometry lambda_geometry(double lambda);

struct ModelConfig {
    int d = 2;
    double lambda = 0.0;
    double R = 1.0;
    double intensity_multiplier = 1.0;

    /// Throws DomainError on d < 2, lambda outside [0,1], R < 0 or a
    /// non-positive multiplier.
    void validate() const;
    LambdaGeometry geometry() const { return lambda_geometry(lambda); }
};

struct DimensionConstants {
    double kappa; // volume of the Euclidean unit d-ball
    double omega; // surface area of the Euclidean unit d-ball, d * kappa
};

DimensionConstants dimension_constants(int d);

/// log(cosh s - lambda sinh s); equals log(mu) + log cosh(s - Delta) for
/// lambda < 1 and -s for lambda = 1.
double log_lambda_weight(const LambdaGeometry& g, double s);

/// Hyperbolic volume of the radius-R ball in H^d: omega_d * int_0^R sinh^{d-1}.
double ball_volume(int d, double R);
double log_ball_volume(int d, double R);

/// int_0^rho sinh^n(u) du, given rho and log(cosh rho - 1). Exact for n <= 3.
double log_sinh_power_integral(int n, double rho, double log_cosh_rho_minus_one);

/// Intrinsic radius of the section H(s) with the ball B_R. Empty optional
/// when |s| > R. Throws UnsupportedError for horospheres (lambda = 1).
std::optional<double> rho(const LambdaGeometry& g, double s, double R);

/// log(cosh rho(s;R) - 1); -inf at |s| = R. Same preconditions as rho.
double log_cosh_rho_minus_one(const LambdaGeometry& g, double s, double R);

struct RhoBounds {
    double arcosh_lo;
    double arcosh_hi;
    double linear_lo;
    double linear_hi;
};

RhoBounds rho_bounds(const LambdaGeometry& g, double s, double R);

/// (d-1)-volume of the section H(s) with B_R, evaluated with constants
/// precomputed once per configuration.
class SectionVolume {
  public:
    explicit SectionVolume(const ModelConfig& config);

    /// Zero for |s| > R.
    double operator()(double s) const;
    /// -inf for |s| >= R.
    double log(double s) const;

    const ModelConfig& config() const { return config_; }

  private:
    ModelConfig config_;
    LambdaGeometry geom_;
    double log_prefactor_;
    double delta_; // finite part; unused for horospheres
    double log_mu_;
};

double intersection_volume(const ModelConfig& config, double s);
double log_intersection_volume(const ModelConfig& config, double s);

/// Upper bound on the section volume valid for d >= 3, lambda < 1.
double intersection_volume_bound(const ModelConfig& config, double s);
double log_intersection_volume_bound(const ModelConfig& config, double s);

/// Large-R asymptote of the section volume for fixed s (d >= 3, lambda < 1).
double intersection_volume_asymptote(const ModelConfig& config, double s);
double log_intersection_volume_asymptote(const ModelConfig& config, double s);

}  // namespace lhp
