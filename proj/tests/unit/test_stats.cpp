#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "generators.hpp"
#include "lhp/errors.hpp"
#include "lhp/io.hpp"
#include "lhp/rng.hpp"
#include "lhp/stats.hpp"
#include "oracles.hpp"

using namespace lhp;

namespace {

std::vector<double> normal_draws(std::size_t n, std::uint64_t seed) {
    PhiloxEngine g(seed, 0, Substream::gaussian);
    std::normal_distribution<double> z;
    std::vector<double> out(n);
    for (double& x : out) x = z(g);
    return out;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("k-statistics of degenerate and symmetric samples") {
    const std::vector<double> constant(10, 3.5);
    const KStatistics c = k_statistics(constant);
    CHECK(c.mean == 3.5);
    CHECK(c.k2 == doctest::Approx(0.0).scale(1.0));
    CHECK(c.k3 == doctest::Approx(0.0).scale(1.0));
    CHECK(c.k4 == doctest::Approx(0.0).scale(1.0));

    const std::vector<double> pm{-1, 1, -1, 1, -1, 1};
    const KStatistics s = k_statistics(pm);
    CHECK(s.mean == doctest::Approx(0.0).scale(1.0));
    CHECK(s.k2 == doctest::Approx(6.0 / 5.0));
    CHECK(s.k3 == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(k_statistics(std::vector<double>{1, 2, 3}), DomainError);
}

TEST_CASE("k-statistics equal the brute-force U-statistics for n <= 8") {
    testing::Gen gen(61);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = gen.integer(4, 8);
        std::vector<double> x(n);
        for (double& v : x) v = gen.uniform(-3.0, 5.0);
        const KStatistics k = k_statistics(x);
        const auto b = oracle::brute_k_statistics(x);
        CAPTURE(trial);
        CHECK(k.k2 == doctest::Approx(b.k2).epsilon(1e-10).scale(1.0));
        CHECK(k.k3 == doctest::Approx(b.k3).epsilon(1e-9).scale(1.0));
        CHECK(k.k4 == doctest::Approx(b.k4).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("k-statistics are unbiased over resamples of a known discrete law") {
    // Law on {0, 1, 3} with probabilities {0.5, 0.3, 0.2}.
    const double vals[] = {0.0, 1.0, 3.0};
    const double probs[] = {0.5, 0.3, 0.2};
    double m[5] = {};
    for (int j = 1; j <= 4; ++j) {
        for (int i = 0; i < 3; ++i) m[j] += probs[i] * std::pow(vals[i], j);
    }
    double c[5] = {};
    for (int j = 2; j <= 4; ++j) {
        for (int i = 0; i < 3; ++i) c[j] += probs[i] * std::pow(vals[i] - m[1], j);
    }
    const double kappa2 = c[2];
    const double kappa3 = c[3];
    const double kappa4 = c[4] - 3.0 * c[2] * c[2];

    std::mt19937_64 rng(62);
    std::discrete_distribution<int> pick({0.5, 0.3, 0.2});
    const int resamples = 1000;
    double s2 = 0, s3 = 0, s4 = 0, q4 = 0;
    for (int r = 0; r < resamples; ++r) {
        std::vector<double> x(30);
        for (double& v : x) v = vals[pick(rng)];
        const KStatistics k = k_statistics(x);
        s2 += k.k2;
        s3 += k.k3;
        s4 += k.k4;
        q4 += k.k4 * k.k4;
    }
    s2 /= resamples;
    s3 /= resamples;
    s4 /= resamples;
    const double se4 = std::sqrt((q4 / resamples - s4 * s4) / resamples);
    CHECK(s2 == doctest::Approx(kappa2).epsilon(0.03));
    CHECK(s3 == doctest::Approx(kappa3).epsilon(0.08));
    CHECK(std::fabs(s4 - kappa4) < 4.0 * se4);
}

TEST_CASE("k-statistics of a large normal sample") {
    const std::size_t n = 1000000;
    const auto x = normal_draws(n, 63);
    const KStatistics k = k_statistics(x);
    CHECK(std::fabs(k.k2 - 1.0) < 5.0 * std::sqrt(2.0 / n));
    CHECK(std::fabs(k.k3) < 5.0 * std::sqrt(6.0 / n));
    CHECK(std::fabs(k.k4) < 5.0 * std::sqrt(24.0 / n));
}

TEST_CASE("normal CDF and quantile") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
    CHECK(normal_cdf(-37.0) > 0.0);
    CHECK(normal_cdf(2.0, 1.0, 0.5) == doctest::Approx(normal_cdf(2.0)));
    testing::Gen gen(64);
    for (int i = 0; i < 1000; ++i) {
        const double p = gen.uniform(1e-12, 1.0 - 1e-12);
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(std::isinf(normal_quantile(1.0)));
    CHECK_THROWS_AS(normal_quantile(1.5), DomainError);
}

TEST_CASE("Kolmogorov distance") {
    const std::size_t n = 20000;
    const auto x = normal_draws(n, 65);
    const auto Phi = [](double v) { return normal_cdf(v); };
    CHECK(ks_distance(x, Phi) < 1.63 / std::sqrt(static_cast<double>(n)));
    CHECK(ks_critical_value(0.01, n) == doctest::Approx(1.628 / std::sqrt(static_cast<double>(n))));
    CHECK(ks_critical_value(0.05, 100) == doctest::Approx(0.1358));
    CHECK_THROWS_AS(ks_critical_value(0.2, 10), DomainError);

    const std::vector<double> at_median(50, 0.0);
    CHECK(ks_distance(at_median, Phi) == doctest::Approx(0.5));
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{10, 11};
    CHECK(ks_two_sample(a, b) == 1.0);
    CHECK(ks_two_sample(a, a) == 0.0);

    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    CHECK(ks_distance_sorted(sorted, Phi) == ks_distance(x, Phi));
}

TEST_CASE("Kolmogorov distance is invariant under a common increasing transform") {
    const auto x = normal_draws(5000, 66);
    std::vector<double> y(x.size());
    std::transform(x.begin(), x.end(), y.begin(), [](double v) { return std::exp(v) + v * v * v; });
    const double d1 = ks_distance(x, [](double v) { return normal_cdf(v); });
    // Inverse of v -> e^v + v^3 by bisection.
    auto inverse = [](double w) {
        double lo = -50.0, hi = 50.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (std::exp(mid) + mid * mid * mid < w ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double d2 = ks_distance(y, [&](double w) { return normal_cdf(inverse(w)); });
    CHECK(d2 == doctest::Approx(d1).epsilon(1e-9));
}

TEST_CASE("Wasserstein-1 distance") {
    const auto x = normal_draws(100000, 67);
    CHECK(wasserstein1(x, [](double p) { return normal_quantile(p); }) < 0.02);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    auto empirical_quantile = [&](double p) {
        return sorted[std::min(n - 1, static_cast<std::size_t>(p * n))];
    };
    CHECK(wasserstein1(x, empirical_quantile) == doctest::Approx(0.0).scale(1.0));
    auto shifted = [&](double p) { return empirical_quantile(p) + 0.75; };
    CHECK(wasserstein1(x, shifted) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("summary against a reference") {
    const auto x = normal_draws(4000, 68);
    const EmpiricalSummary s =
        summarize(x, [](double v) { return normal_cdf(v); }, [](double p) { return normal_quantile(p); }, "normal");
    CHECK(s.n == 4000);
    CHECK(s.reference_tag == "normal");
    CHECK(s.ks_vs_reference < ks_critical_value(0.01, 4000));
    CHECK(s.k2 == doctest::Approx(k_statistics(x).k2));
}

TEST_CASE("regime report") {
    const std::vector<double> R{4.0, 6.0};
    const auto rows = regime_report(2, 0.0, R, 400, 5);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].R == 4.0);
    CHECK(std::isnan(rows[0].ks_limit));
    CHECK(std::fabs(rows[1].mean) < 5.0 / std::sqrt(400.0));
    CHECK(rows[1].k2 == doctest::Approx(1.0).epsilon(0.25));
    CHECK(rows[1].ks_normal1 < rows[1].ks_normal_half);

    const auto again = regime_report(2, 0.0, R, 400, 5);
    CHECK(again[1].k3 == rows[1].k3);
    CHECK(again[1].ks_normal1 == rows[1].ks_normal1);

    const auto d4 = regime_report(4, 0.0, std::vector<double>{2.0}, 100, 5);
    CHECK_FALSE(std::isnan(d4[0].ks_limit));
    CHECK_FALSE(std::isnan(d4[0].w1_limit));
}

}  // TEST_SUITE

TEST_SUITE("stats") {

TEST_CASE("CSV formatting is locale-free and round-trips") {
    for (const double v : {0.1, -2.5e-300, 123456789.0, 1.0 / 3.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    std::ostringstream os;
    CsvWriter csv(os, {"a", "b"});
    csv << 1 << 0.5;
    csv.end_row();
    CHECK(os.str() == "a,b\n1,0.5\n");
    csv << 1;
    CHECK_THROWS_AS(csv.end_row(), std::logic_error);
}

}  // TEST_SUITE
