#pragma once

// Empirical cumulants, Kolmogorov-Smirnov and Wasserstein-1 distances, and
// the per-radius fluctuation report comparing normalized S_R with its
// candidate limit laws.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lhp {

struct KStatistics {
    std::size_t n;
    double mean;
    double k2;
    double k3;
    double k4;
};

/// Unbiased k-statistics from central power sums. Throws DomainError for n < 4.
KStatistics k_statistics(std::span<const double> samples);

using CdfFunction = std::function<double(double)>;
using QuantileFunction = std::function<double(double)>;

/// sup_i max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|).
double ks_distance(std::span<const double> samples, const CdfFunction& cdf);
/// As ks_distance, for samples already in ascending order.
double ks_distance_sorted(std::span<const double> sorted, const CdfFunction& cdf);
/// Two-sample statistic sup |F_a - F_b|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// (1/n) sum |x_(i) - Q((i - 1/2)/n)|.
double wasserstein1(std::span<const double> samples, const QuantileFunction& quantile);

/// Asymptotic Kolmogorov critical value c(alpha)/sqrt(n) for alpha in
/// {0.10, 0.05, 0.01}.
double ks_critical_value(double alpha, std::size_t n);

double normal_cdf(double x, double mean = 0.0, double sd = 1.0);
double normal_quantile(double p, double mean = 0.0, double sd = 1.0);

struct EmpiricalSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double k4 = 0.0;
    double ks_vs_reference = 0.0;
    double w1_vs_reference = 0.0;
    std::string reference_tag;
};

EmpiricalSummary summarize(std::span<const double> samples, const CdfFunction& cdf,
                           const QuantileFunction& quantile, std::string reference_tag);

struct RegimeRow {
    int d;
    double lambda;
    double R;
    std::size_t n;
    double mean; // of (S - E S) / sqrt(Var S)
    double k2;
    double k3;
    double k4;
    double ks_normal1;
    double ks_normal_half;
    double ks_limit; // NaN unless d >= 4 and lambda < 1
    double w1_limit; // NaN unless d >= 4 and lambda < 1
    double be_indicator;
    double positive_share; // mean of S_+ / E S
};

struct RegimeOptions {
    double multiplier = 1.0;
    int threads = 0;
};

/// Simulates S_R for each radius, normalizes with the exact mean and
/// variance and compares against Normal(0,1), Normal(0,1/2) and, for
/// d >= 4 and lambda < 1, the rescaled limit law.
std::vector<RegimeRow> regime_report(int d, double lambda, std::span<const double> R_list,
                                     std::size_t n_replicates, std::uint64_t seed,
                                     const RegimeOptions& opt = {});

}  // namespace lhp
