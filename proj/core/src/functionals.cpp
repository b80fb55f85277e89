#include "lhp/functionals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lhp/numerics.hpp"

namespace lhp {

SurfaceResult total_surface_area(const SectionVolume& volume, std::span<const double> s) {
    CompensatedSum pos;
    CompensatedSum neg;
    for (const double x : s) {
        const double v = volume(x);
        if (x >= 0.0) {
            pos.add(v);
        } else {
            neg.add(v);
        }
    }
    SurfaceResult r;
    r.positive_part = pos.value();
    r.negative_part = neg.value();
    r.value = r.positive_part + r.negative_part;
    return r;
}

SurfaceResult total_surface_area(const ProcessSample& sample) {
    return total_surface_area(SectionVolume(sample.config), sample.s);
}

double expected_surface_area(const ModelConfig& config) {
    config.validate();
    return config.intensity_multiplier * ball_volume(config.d, config.R);
}

namespace {

// log(2R cosh^2 R - 3 sinh R cosh R + R), the d = 3 second-moment bracket.
double log_d3_bracket(double R) {
    const double x = 2.0 * R;
    if (x < 2.0) {
        // sum_{j>=2} (j-1) x^{2j+1} / (2j+1)!
        double term = std::pow(x, 5) / 120.0;
        double sum = term;
        for (int j = 2; j < 40; ++j) {
            term *= (static_cast<double>(j) / (j - 1)) * x * x / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return std::log(sum);
    }
    if (R < 20.0) {
        return std::log(2.0 * R * std::cosh(R) * std::cosh(R) - 3.0 * std::sinh(R) * std::cosh(R) + R);
    }
    const double e = std::exp(-2.0 * R);
    return 2.0 * R + std::log(0.5 * R * (1.0 + e) * (1.0 + e) - 0.75 * (1.0 - e * e) + R * e);
}

// log(R cosh R - sinh R).
double log_r_cosh_minus_sinh(double R) {
    if (R < 1.0) {
        // sum_{j>=1} 2j R^{2j+1} / (2j+1)!
        double fact = 6.0;
        double power = R * R * R;
        double sum = 0.0;
        for (int j = 1; j < 30; ++j) {
            const double term = 2.0 * j * power / fact;
            sum += term;
            if (term < 1e-17 * sum) break;
            power *= R * R;
            fact *= (2.0 * j + 2.0) * (2.0 * j + 3.0);
        }
        return std::log(sum);
    }
    return R - std::numbers::ln2 + std::log((R - 1.0) + (R + 1.0) * std::exp(-2.0 * R));
}

double log_horosphere_second_moment(const ModelConfig& config, const CumulantOptions& opt) {
    const int n = config.d - 1;
    const double R = config.R;
    const double log_kappa = std::log(dimension_constants(n).kappa);
    const double log_front = n * std::numbers::ln2 + 2.0 * log_kappa;
    if (config.d == 2) {
        // 2 kappa_1^2 int (cosh R - cosh s) ds = 16 (R cosh R - sinh R)
        return std::log(16.0) + log_r_cosh_minus_sinh(R);
    }
    QuadratureOptions q;
    q.rel_tol = opt.rel_tol;
    const double log_half = log_integrate(
        [n, R](double s) {
            return n * (std::numbers::ln2 + log_sinh(0.5 * (R + s)) + log_sinh(0.5 * (R - s)));
        },
        0.0, R, q);
    return log_front + std::numbers::ln2 + log_half;
}

double log_cumulant_quadrature(const ModelConfig& config, int k, const CumulantOptions& opt) {
    const SectionVolume vol(config);
    const LambdaGeometry g = config.geometry();
    const int n = config.d - 1;
    const double R = config.R;
    auto log_f = [&](double s) {
        const double lv = vol.log(s);
        if (lv == kNegInf) return kNegInf;
        return k * lv + n * log_lambda_weight(g, s);
    };
    QuadratureOptions q;
    q.rel_tol = opt.rel_tol;
    // Split where the weight cosh(s - Delta) has its minimum.
    const double split = g.is_horosphere() ? 0.0 : g.delta.value();
    if (split > -R && split < R) {
        return log_add_exp(log_integrate(log_f, -R, split, q), log_integrate(log_f, split, R, q));
    }
    return log_integrate(log_f, -R, R, q);
}

}  // namespace

double log_cumulant_integral(const ModelConfig& config, int k, const CumulantOptions& opt) {
    config.validate();
    if (k < 1) throw DomainError("cumulant order must be >= 1");
    if (k > opt.max_order) {
        throw DomainError("cumulant order " + std::to_string(k) + " exceeds the cap " +
                          std::to_string(opt.max_order));
    }
    if (config.R == 0.0) return kNegInf;
    const double log_mult = std::log(config.intensity_multiplier);
    const LambdaGeometry g = config.geometry();
    if (opt.closed_forms && k == 2) {
        if (g.is_horosphere()) return log_mult + log_horosphere_second_moment(config, opt);
        if (config.d == 3) return log_mult + 2.0 * std::log(2.0 * std::numbers::pi) + log_d3_bracket(config.R);
    }
    return log_mult + log_cumulant_quadrature(config, k, opt);
}

double cumulant_integral(const ModelConfig& config, int k, const CumulantOptions& opt) {
    return std::exp(log_cumulant_integral(config, k, opt));
}

double variance(const ModelConfig& config) { return cumulant_integral(config, 2); }

double log_variance_order(const ModelConfig& config) {
    config.validate();
    const double R = config.R;
    const int d = config.d;
    if (config.geometry().is_horosphere()) return std::log(R) + (d - 1) * R;
    if (d == 2) return R;
    if (d == 3) return std::log(R) + 2.0 * R;
    return 2.0 * (d - 2) * R;
}

double variance_order(const ModelConfig& config) { return std::exp(log_variance_order(config)); }

namespace {

double log_profile_constant(int d) {
    return std::log(dimension_constants(d - 1).omega) - std::log(d - 2.0) - (d - 2) * std::numbers::ln2;
}

}  // namespace

double normalized_cumulant_limit(int d, double lambda, int k, double multiplier) {
    if (d < 4) throw DomainError("normalized cumulant limits need d >= 4");
    if (k < 2) throw DomainError("normalized cumulant limits need k >= 2");
    const LambdaGeometry g = lambda_geometry(lambda);
    if (g.is_horosphere()) throw UnsupportedError("no normalized cumulant limit for horospheres");
    const double h = k * (d - 2.0) - (d - 1.0);
    if (!(h > 0.0)) throw DomainError("cosh integral diverges for this (d, k)");
    const double log_value = k * log_profile_constant(d) + (d - 1.0 - k) * std::log(g.mu) +
                             std::log(cosh_power_integral_real_line(h));
    return multiplier * std::exp(log_value);
}

double normalized_profile(const ModelConfig& config, double s) {
    config.validate();
    if (config.d < 3) throw UnsupportedError("normalized profile needs d >= 3");
    if (config.geometry().is_horosphere()) throw UnsupportedError("normalized profile needs lambda < 1");
    return std::exp(SectionVolume(config).log(s) - (config.d - 2) * config.R);
}

double limit_profile(int d, double lambda, double s) {
    if (d < 3) throw UnsupportedError("limit profile needs d >= 3");
    const LambdaGeometry g = lambda_geometry(lambda);
    if (g.is_horosphere()) throw UnsupportedError("limit profile needs lambda < 1");
    return std::exp(log_profile_constant(d) - std::log(g.mu) - (d - 2) * log_cosh(s - g.delta.value()));
}

double berry_esseen_indicator(const ModelConfig& config) {
    return std::exp(0.5 * log_cumulant_integral(config, 4) - log_cumulant_integral(config, 2));
}

CumulantTable::CumulantTable(int d, double lambda, double multiplier)
    : d_(d), lambda_(lambda), multiplier_(multiplier) {
    ModelConfig{d, lambda, 1.0, multiplier}.validate();
}

double CumulantTable::value(int k, double R) {
    const auto key = std::make_pair(k, R);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    const double v = cumulant_integral(ModelConfig{d_, lambda_, R, multiplier_}, k);
    entries_.emplace(key, v);
    return v;
}

std::vector<SurfaceResult> monte_carlo_surfaces(const ModelConfig& config, std::size_t n,
                                                std::uint64_t seed, int threads) {
    const ProcessSampler sampler(config);
    const SectionVolume volume(config);
    std::vector<SurfaceResult> out(n);
    parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> s;
        for (std::size_t r = begin; r < end; ++r) {
            sampler.sample_positions(seed, r, s);
            out[r] = total_surface_area(volume, s);
        }
    });
    return out;
}

}  // namespace lhp
