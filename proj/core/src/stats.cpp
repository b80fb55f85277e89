#include "lhp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <boost/math/special_functions/erf.hpp>

#include "lhp/errors.hpp"
#include "lhp/functionals.hpp"
#include "lhp/limit_law.hpp"
#include "lhp/numerics.hpp"

namespace lhp {

KStatistics k_statistics(std::span<const double> x) {
    const std::size_t count = x.size();
    if (count < 4) throw DomainError("k-statistics need at least 4 samples");
    CompensatedSum sum;
    for (const double v : x) sum.add(v);
    const double mean = sum.value() / count;
    CompensatedSum s2, s3, s4;
    for (const double v : x) {
        const double c = v - mean;
        const double c2 = c * c;
        s2.add(c2);
        s3.add(c2 * c);
        s4.add(c2 * c2);
    }
    const double n = static_cast<double>(count);
    const double S2 = s2.value();
    const double S3 = s3.value();
    const double S4 = s4.value();
    KStatistics k{count, mean, 0.0, 0.0, 0.0};
    k.k2 = S2 / (n - 1.0);
    k.k3 = n * S3 / ((n - 1.0) * (n - 2.0));
    k.k4 = (n * (n + 1.0) * S4 - 3.0 * (n - 1.0) * S2 * S2) / ((n - 1.0) * (n - 2.0) * (n - 3.0));
    return k;
}

double ks_distance_sorted(std::span<const double> sorted, const CdfFunction& cdf) {
    const double n = static_cast<double>(sorted.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double F = cdf(sorted[i]);
        worst = std::max({worst, std::fabs((i + 1) / n - F), std::fabs(i / n - F)});
    }
    return worst;
}

double ks_distance(std::span<const double> samples, const CdfFunction& cdf) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return ks_distance_sorted(sorted, cdf);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double worst = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        worst = std::max(worst, std::fabs(i / nx - j / ny));
    }
    return worst;
}

double wasserstein1(std::span<const double> samples, const QuantileFunction& quantile) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    CompensatedSum total;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        total.add(std::fabs(sorted[i] - quantile((i + 0.5) / n)));
    }
    return total.value() / n;
}

double ks_critical_value(double alpha, std::size_t n) {
    double c;
    if (alpha == 0.10) {
        c = 1.224;
    } else if (alpha == 0.05) {
        c = 1.358;
    } else if (alpha == 0.01) {
        c = 1.628;
    } else {
        throw DomainError("Kolmogorov critical values exist for alpha in {0.10, 0.05, 0.01}");
    }
    return c / std::sqrt(static_cast<double>(n));
}

double normal_cdf(double x, double mean, double sd) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

double normal_quantile(double p, double mean, double sd) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw DomainError("probability must lie in [0, 1]");
    }
    return mean - sd * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

EmpiricalSummary summarize(std::span<const double> samples, const CdfFunction& cdf,
                           const QuantileFunction& quantile, std::string reference_tag) {
    const KStatistics k = k_statistics(samples);
    EmpiricalSummary s;
    s.n = k.n;
    s.mean = k.mean;
    s.k2 = k.k2;
    s.k3 = k.k3;
    s.k4 = k.k4;
    s.ks_vs_reference = ks_distance(samples, cdf);
    s.w1_vs_reference = wasserstein1(samples, quantile);
    s.reference_tag = std::move(reference_tag);
    return s;
}

std::vector<RegimeRow> regime_report(int d, double lambda, std::span<const double> R_list,
                                     std::size_t n_replicates, std::uint64_t seed, const RegimeOptions& opt) {
    if (R_list.empty()) throw DomainError("radius list is empty");
    const bool has_limit = d >= 4 && lambda < 1.0;
    std::optional<LimitLawSpec> law;
    std::optional<TabulatedCdf> limit_cdf;
    if (has_limit) {
        law = limit_law_with_rate(d, lambda, opt.multiplier * zeta_rate(d, lambda));
        limit_cdf = tabulate_limit_cdf(*law);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double half_sd = std::sqrt(0.5);

    std::vector<RegimeRow> rows;
    for (const double R : R_list) {
        const ModelConfig config{d, lambda, R, opt.multiplier};
        config.validate();
        const double mean = expected_surface_area(config);
        const double log_var = log_cumulant_integral(config, 2);
        const double sd = std::exp(0.5 * log_var);
        const auto surfaces = monte_carlo_surfaces(config, n_replicates, seed, opt.threads);

        std::vector<double> z(surfaces.size());
        CompensatedSum positive;
        for (std::size_t i = 0; i < surfaces.size(); ++i) {
            z[i] = (surfaces[i].value - mean) / sd;
            positive.add(surfaces[i].positive_part);
        }
        std::sort(z.begin(), z.end());

        RegimeRow row{d, lambda, R, n_replicates, 0, 0, 0, 0, 0, 0, nan, nan, 0, 0};
        const KStatistics k = k_statistics(z);
        row.mean = k.mean;
        row.k2 = k.k2;
        row.k3 = k.k3;
        row.k4 = k.k4;
        row.ks_normal1 = ks_distance_sorted(z, [](double x) { return normal_cdf(x); });
        row.ks_normal_half = ks_distance_sorted(z, [half_sd](double x) { return normal_cdf(x, 0.0, half_sd); });
        if (has_limit) {
            // (S - E S) / e^{(d-2)R} = z * sd / e^{(d-2)R}, compared with scale * Z.
            const double factor = std::exp(0.5 * log_var - (d - 2) * R) / law->scale_constant;
            const TabulatedCdf& F = *limit_cdf;
            row.ks_limit = ks_distance_sorted(z, [&F, factor](double x) { return F(x * factor); });
            row.w1_limit = wasserstein1(z, [&F, factor](double p) { return F.quantile(p) / factor; });
        }
        row.be_indicator = berry_esseen_indicator(config);
        row.positive_share = positive.value() / (static_cast<double>(surfaces.size()) * mean);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace lhp
