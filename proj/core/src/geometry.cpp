#include "lhp/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lhp/numerics.hpp"

namespace lhp {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_proper(const LambdaGeometry& g, const char* what) {
    if (g.is_horosphere()) {
        throw UnsupportedError(std::string(what) + " is not defined for horospheres (lambda = 1)");
    }
}

// log(cosh R - cosh s) for |s| <= R via the product of half-angle sinh terms.
double log_cosh_gap(double R, double s) {
    return kLn2 + log_sinh(0.5 * (R + s)) + log_sinh(0.5 * (R - s));
}

}  // namespace

LambdaGeometry lambda_geometry(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("lambda must lie in [0, 1], got " + std::to_string(lambda));
    }
    LambdaGeometry g{lambda, std::acos(lambda), std::sqrt((1.0 - lambda) * (1.0 + lambda)),
                     ExtendedReal::infinity(), ExtendedReal::infinity()};
    if (lambda > 0.0) g.m = ExtendedReal(g.mu / lambda);
    if (lambda < 1.0) g.delta = ExtendedReal(std::atanh(lambda));
    return g;
}

void ModelConfig::validate() const {
    if (d < 2) throw DomainError("dimension d must be >= 2, got " + std::to_string(d));
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("lambda must lie in [0, 1], got " + std::to_string(lambda));
    }
    if (!(R >= 0.0) || !std::isfinite(R)) {
        throw DomainError("radius R must be finite and >= 0, got " + std::to_string(R));
    }
    if (!(intensity_multiplier > 0.0) || !std::isfinite(intensity_multiplier)) {
        throw DomainError("intensity multiplier must be positive");
    }
}

DimensionConstants dimension_constants(int d) {
    if (d < 1) throw DomainError("dimension must be >= 1");
    const double half = 0.5 * d;
    const double kappa = std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
    return {kappa, d * kappa};
}

double log_lambda_weight(const LambdaGeometry& g, double s) {
    if (g.is_horosphere()) return -s;
    return std::log(g.mu) + log_cosh(s - g.delta.value());
}

double log_ball_volume(int d, double R) {
    if (d < 2) throw DomainError("dimension d must be >= 2");
    if (!(R >= 0.0)) throw DomainError("radius must be >= 0");
    if (R == 0.0) return kNegInf;
    switch (d) {
        case 2:
            return std::log(4.0 * std::numbers::pi) + 2.0 * log_sinh(0.5 * R);
        case 3:
            if (2.0 * R > 40.0) {
                const double ls = log_sinh(2.0 * R);
                return std::log(std::numbers::pi) + ls + std::log1p(-2.0 * R * std::exp(-ls));
            }
            return std::log(std::numbers::pi * sinh_minus_x(2.0 * R));
        default: {
            const double n = d - 1.0;
            QuadratureOptions opt;
            opt.rel_tol = 1e-12;
            return std::log(dimension_constants(d).omega) +
                   log_integrate([n](double u) { return n * log_sinh(u); }, 0.0, R, opt);
        }
    }
}

double ball_volume(int d, double R) {
    if (d < 2) throw DomainError("dimension d must be >= 2");
    if (!(R >= 0.0)) throw DomainError("radius must be >= 0");
    if (d == 2) {
        const double sh = std::sinh(0.5 * R);
        return 4.0 * std::numbers::pi * sh * sh;
    }
    if (d == 3) return std::numbers::pi * sinh_minus_x(2.0 * R);
    return std::exp(log_ball_volume(d, R));
}

double log_sinh_power_integral(int n, double rho, double lx) {
    if (n < 0) throw DomainError("sinh power must be >= 0");
    if (!(rho > 0.0)) return kNegInf;
    switch (n) {
        case 0:
            return std::log(rho);
        case 1:
            return lx;
        case 2: {
            const double t = 2.0 * rho;
            if (t > 40.0) {
                const double ls = log_sinh(t);
                return ls + std::log1p(-t * std::exp(-ls)) - 2.0 * kLn2;
            }
            return std::log(0.25 * sinh_minus_x(t));
        }
        case 3:
            return 2.0 * lx + log_add_exp(lx, std::log(3.0)) - std::log(3.0);
        default: {
            const double p = n;
            QuadratureOptions opt;
            opt.rel_tol = 1e-10;
            return log_integrate([p](double u) { return p * log_sinh(u); }, 0.0, rho, opt);
        }
    }
}

double log_cosh_rho_minus_one(const LambdaGeometry& g, double s, double R) {
    require_proper(g, "the section radius");
    if (std::fabs(s) > R) throw DomainError("section is empty for |s| > R");
    const double delta = g.delta.value();
    return std::log(g.mu) + log_cosh_gap(R, s) - log_cosh(s - delta);
}

std::optional<double> rho(const LambdaGeometry& g, double s, double R) {
    require_proper(g, "the section radius");
    if (std::fabs(s) > R) return std::nullopt;
    return arcosh_1p_from_log(log_cosh_rho_minus_one(g, s, R));
}

RhoBounds rho_bounds(const LambdaGeometry& g, double s, double R) {
    require_proper(g, "the section radius");
    if (std::fabs(s) > R) throw DomainError("section is empty for |s| > R");
    const double delta = g.delta.value();
    const double lc = log_cosh(s - delta);
    const double gap = std::fabs(s - delta);
    return {arcosh_exp(log_cosh(R - delta) - lc), arcosh_exp(log_cosh(R + delta) - lc),
            R - delta - gap, R + delta - gap + kLn2};
}

SectionVolume::SectionVolume(const ModelConfig& config)
    : config_(config), geom_(config.geometry()), log_prefactor_(0.0), delta_(0.0), log_mu_(0.0) {
    config_.validate();
    if (geom_.is_horosphere()) {
        log_prefactor_ = std::log(dimension_constants(config_.d - 1).kappa);
    } else {
        delta_ = geom_.delta.value();
        log_mu_ = std::log(geom_.mu);
        log_prefactor_ = std::log(dimension_constants(config_.d - 1).omega) -
                         (config_.d - 1) * log_mu_;
    }
}

double SectionVolume::log(double s) const {
    const double R = config_.R;
    if (!(std::fabs(s) < R)) return kNegInf;
    const double gap = log_cosh_gap(R, s);
    if (geom_.is_horosphere()) {
        // kappa_{d-1} [2 e^s (cosh R - cosh s)]^{(d-1)/2}
        return log_prefactor_ + 0.5 * (config_.d - 1) * (kLn2 + s + gap);
    }
    const double lx = log_mu_ + gap - log_cosh(s - delta_);
    const double r = arcosh_1p_from_log(lx);
    return log_prefactor_ + log_sinh_power_integral(config_.d - 2, r, lx);
}

double SectionVolume::operator()(double s) const { return std::exp(log(s)); }

double intersection_volume(const ModelConfig& config, double s) {
    return SectionVolume(config)(s);
}

double log_intersection_volume(const ModelConfig& config, double s) {
    return SectionVolume(config).log(s);
}

namespace {

struct BoundParts {
    double log_constant; // log of the s- and R-free factor
    double delta;
};

BoundParts bound_parts(const ModelConfig& config, bool asymptote) {
    config.validate();
    if (config.d < 3) throw UnsupportedError("volume bounds need dimension d >= 3");
    const LambdaGeometry g = config.geometry();
    require_proper(g, "the section volume bound");
    const int n = config.d - 2;
    double c = std::log(dimension_constants(config.d - 1).omega) - std::log(static_cast<double>(n));
    if (asymptote) {
        c += -n * kLn2 - std::log(g.mu);
    } else {
        c += -(config.d - 1) * std::log(g.mu);
    }
    return {c, g.delta.value()};
}

}  // namespace

double log_intersection_volume_bound(const ModelConfig& config, double s) {
    const BoundParts p = bound_parts(config, false);
    const int n = config.d - 2;
    return p.log_constant + n * (log_cosh(config.R + p.delta) - log_cosh(s - p.delta));
}

double intersection_volume_bound(const ModelConfig& config, double s) {
    return std::exp(log_intersection_volume_bound(config, s));
}

double log_intersection_volume_asymptote(const ModelConfig& config, double s) {
    const BoundParts p = bound_parts(config, true);
    const int n = config.d - 2;
    return p.log_constant + n * (config.R - log_cosh(s - p.delta));
}

double intersection_volume_asymptote(const ModelConfig& config, double s) {
    return std::exp(log_intersection_volume_asymptote(config, s));
}

}  // namespace lhp
