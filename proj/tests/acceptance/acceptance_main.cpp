// Acceptance suite: one PASS/FAIL line per criterion. Seeds are fixed here
// and never tuned; pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "lhp/functionals.hpp"
#include "lhp/geometry.hpp"
#include "lhp/limit_law.hpp"
#include "lhp/numerics.hpp"
#include "lhp/sampling.hpp"
#include "lhp/stats.hpp"
#include "oracles.hpp"

using namespace lhp;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, a);
    return buf;
}

std::vector<double> surface_values(const ModelConfig& m, std::size_t n, std::uint64_t seed) {
    std::vector<double> out;
    out.reserve(n);
    for (const auto& r : monte_carlo_surfaces(m, n, seed)) out.push_back(r.value);
    return out;
}

double sample_mean(const std::vector<double>& x) {
    CompensatedSum s;
    for (const double v : x) s.add(v);
    return s.value() / static_cast<double>(x.size());
}

// 1. Crofton mean over {2,3,4} x {0, 0.5, 1}, R = 3, N = 2000.
Outcome crofton_mean() {
    const std::size_t N = 2000;
    double worst = 0.0;
    std::string where;
    bool pass = true;
    for (const int d : {2, 3, 4}) {
        for (const double lambda : {0.0, 0.5, 1.0}) {
            const ModelConfig m{d, lambda, 3.0, 1.0};
            const double mean = sample_mean(surface_values(m, N, 1001));
            const double target = ball_volume(d, 3.0);
            const double allowed = 4.0 * std::sqrt(variance(m) / N);
            const double ratio = std::fabs(mean - target) / allowed;
            if (ratio > worst) {
                worst = ratio;
                where = "d=" + std::to_string(d) + " lambda=" + fmt("%g", lambda);
            }
            pass = pass && ratio <= 1.0;
        }
    }
    return {pass, "worst |mean - E S| / (4 sqrt(I_2/N)) = " + fmt("%.3f", worst) + " at " + where};
}

// 2. Variance identity: d = 2 at R = 4 and lambda-independence at d = 3, R = 3.
Outcome variance_identity() {
    const std::size_t N = 100000;
    bool pass = true;
    double worst = 0.0;
    for (const double lambda : {0.0, 0.5, 1.0}) {
        const ModelConfig m{2, lambda, 4.0, 1.0};
        const double k2 = k_statistics(surface_values(m, N, 1002)).k2;
        const double rel = std::fabs(k2 / variance(m) - 1.0);
        worst = std::max(worst, rel);
        pass = pass && rel <= 0.10;
    }
    const ModelConfig a{3, 0.0, 3.0, 1.0};
    const ModelConfig b{3, 0.7, 3.0, 1.0};
    const double va = k_statistics(surface_values(a, N, 1012)).k2;
    const double vb = k_statistics(surface_values(b, N, 1022)).k2;
    const double across = std::fabs(va / vb - 1.0);
    // The exact values must also coincide, by two routes.
    CumulantOptions quad;
    quad.closed_forms = false;
    const double exact_gap = std::fabs(cumulant_integral(a, 2, quad) / cumulant_integral(b, 2, quad) - 1.0);
    pass = pass && across <= 0.10 && exact_gap < 1e-8;
    return {pass, "d=2 worst |k2/I_2 - 1| = " + fmt("%.4f", worst) + "; d=3 |Var_0/Var_0.7 - 1| = " +
                      fmt("%.4f", across) + " (exact gap " + fmt("%.1e", exact_gap) + ")"};
}

// 3. Normalized cumulant integrals at R = 10, d = 4, lambda = 0.
Outcome deterministic_cumulants() {
    const ModelConfig m{4, 0.0, 10.0, 1.0};
    const double lib2 = std::exp(log_cumulant_integral(m, 2) - 40.0) / (kPi * kPi * kPi / 4.0);
    const double lib3 = std::exp(log_cumulant_integral(m, 3) - 60.0) / (std::pow(kPi, 4) / 16.0);
    const double ora2 = oracle::cumulant_integral(4, 0.0, 10.0, 2) * std::exp(-40.0) / (kPi * kPi * kPi / 4.0);
    const double ora3 = oracle::cumulant_integral(4, 0.0, 10.0, 3) * std::exp(-60.0) / (std::pow(kPi, 4) / 16.0);
    const bool pass = std::fabs(lib2 - 1.0) < 0.02 && std::fabs(lib3 - 1.0) < 0.03 && std::fabs(ora2 - 1.0) < 0.02 &&
                      std::fabs(ora3 - 1.0) < 0.03 && std::fabs(lib2 / ora2 - 1.0) < 1e-8 &&
                      std::fabs(lib3 / ora3 - 1.0) < 1e-8;
    return {pass, "k=2 ratio " + fmt("%.6f", lib2) + " (oracle " + fmt("%.6f", ora2) + "), k=3 ratio " +
                      fmt("%.6f", lib3) + " (oracle " + fmt("%.6f", ora3) + ")"};
}

// Shared by criteria 4 and 5: 10^6 draws of the unit-rate d = 4 law.
const std::vector<double>& limit_draws() {
    static const std::vector<double> draws = sample_limit(limit_law_with_rate(4, 0.0, 1.0), 1000000, 1004);
    return draws;
}

// 4. k-statistics of the hybrid sampler within 5 pilot-estimated SEs.
Outcome limit_cumulants() {
    const LimitLawSpec spec = limit_law_with_rate(4, 0.0, 1.0);
    const auto& draws = limit_draws();
    const KStatistics k = k_statistics(draws);
    // Pilot: independent draws split into batches; the spread of batch
    // k-statistics, rescaled to N, estimates each standard error.
    const std::size_t batches = 40;
    const std::size_t batch = 5000;
    const auto pilot = sample_limit(spec, batches * batch, 2004);
    double sum[3] = {}, sq[3] = {};
    for (std::size_t b = 0; b < batches; ++b) {
        const KStatistics kb =
            k_statistics(std::span<const double>(pilot.data() + b * batch, batch));
        const double v[3] = {kb.k2, kb.k3, kb.k4};
        for (int j = 0; j < 3; ++j) {
            sum[j] += v[j];
            sq[j] += v[j] * v[j];
        }
    }
    const double target[3] = {kPi / 2, kPi / 4, 3 * kPi / 16};
    const double got[3] = {k.k2, k.k3, k.k4};
    bool pass = true;
    std::string detail;
    for (int j = 0; j < 3; ++j) {
        const double mean = sum[j] / batches;
        const double sd = std::sqrt((sq[j] - batches * mean * mean) / (batches - 1));
        const double se = sd * std::sqrt(static_cast<double>(batch) / draws.size());
        const double z = (got[j] - target[j]) / se;
        pass = pass && std::fabs(z) <= 5.0;
        detail += "k" + std::to_string(j + 2) + "=" + fmt("%.5f", got[j]) + " (z " + fmt("%+.2f", z) + ") ";
        (void)limit_cumulant(spec, j + 2);
    }
    return {pass, detail};
}

// 5. KS between the sampler and the Fourier-inversion CDF.
Outcome cf_sampler_agreement() {
    const LimitLawSpec spec = limit_law_with_rate(4, 0.0, 1.0);
    const TabulatedCdf F = tabulate_limit_cdf(spec, 8001);
    const double ks = ks_distance(limit_draws(), [&](double x) { return F(x); });
    return {ks < 0.01, "KS = " + fmt("%.5f", ks) + " over 10^6 draws"};
}

std::vector<double> standardized(const ModelConfig& m, std::size_t n, std::uint64_t seed) {
    auto x = surface_values(m, n, seed);
    const double mean = expected_surface_area(m);
    const double sd = std::sqrt(variance(m));
    for (double& v : x) v = (v - mean) / sd;
    return x;
}

// 6. Gaussian regime in d = 2.
Outcome gaussian_regime() {
    bool pass = true;
    std::string detail;
    for (const double lambda : {0.0, 0.9}) {
        double prev = 2.0;
        detail += "lambda=" + fmt("%g", lambda) + ":";
        for (const double R : {4.0, 6.0, 8.0}) {
            const auto z = standardized(ModelConfig{2, lambda, R, 1.0}, 5000, 1006);
            const double ks = ks_distance(z, [](double v) { return normal_cdf(v); });
            detail += " " + fmt("%.4f", ks);
            pass = pass && ks < prev;
            prev = ks;
        }
        pass = pass && prev < 0.05;
        detail += "; ";
    }
    return {pass, "KS vs N(0,1) at R=4,6,8 " + detail};
}

// 7. Horosphere regime: variance-1/2 Gaussian limit.
Outcome horosphere_regime() {
    bool pass = true;
    double prev = 2.0;
    std::string detail;
    double ks_half = 0.0, ks_one = 0.0;
    for (const double R : {6.0, 8.0, 10.0}) {
        const auto z = standardized(ModelConfig{2, 1.0, R, 1.0}, 5000, 1007);
        ks_half = ks_distance(z, [](double v) { return normal_cdf(v, 0.0, std::sqrt(0.5)); });
        ks_one = ks_distance(z, [](double v) { return normal_cdf(v); });
        detail += " " + fmt("%.4f", ks_half);
        pass = pass && ks_half < prev;
        prev = ks_half;
    }
    pass = pass && ks_half < ks_one;
    return {pass, "KS vs N(0,1/2) at R=6,8,10:" + detail + "; at R=10 KS vs N(0,1) = " + fmt("%.4f", ks_one)};
}

// 8. Non-Gaussian regime d = 4, lambda = 0, R = 4.
Outcome non_gaussian_regime() {
    const ModelConfig m{4, 0.0, 4.0, 1.0};
    auto x = surface_values(m, 2000, 1008);
    const double mean = expected_surface_area(m);
    const double scale = std::exp(2.0 * m.R);
    for (double& v : x) v = (v - mean) / scale;
    const LimitLawSpec spec = limit_law(4, 0.0);
    const TabulatedCdf F = tabulate_limit_cdf(spec, 8001);
    const double c = spec.scale_constant;
    const double ks_limit = ks_distance(x, [&](double v) { return F(v / c); });
    const double sd = std::sqrt(variance(m)) / scale;
    const double ks_normal = ks_distance(x, [&](double v) { return normal_cdf(v, 0.0, sd); });
    return {ks_limit < 0.10 && ks_limit < ks_normal,
            "KS vs scaled limit = " + fmt("%.4f", ks_limit) + ", KS vs N(0, Var S e^{-4R}) = " + fmt("%.4f", ks_normal)};
}

// 9. Geometry identities.
Outcome geometry_identities() {
    std::mt19937_64 rng(1009);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst_density = 0.0, worst_rho = 0.0;
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const double lambda = 0.999 * u01(rng);
        const double R = 0.05 + 11.95 * u01(rng);
        const double s = (2.0 * u01(rng) - 1.0) * R * 0.999;
        const LambdaGeometry g = lambda_geometry(lambda);
        const double lhs = std::cosh(s) - lambda * std::sinh(s);
        const double rhs = g.mu * std::cosh(s - g.delta.value());
        worst_density = std::max(worst_density, std::fabs(lhs - rhs) / lhs);
        const double r = rho(g, s, R).value();
        worst_rho = std::max(worst_rho, std::fabs(r - oracle::rho_ugly(lambda, s, R)) / std::max(1.0, r));
        const RhoBounds b = rho_bounds(g, s, R);
        const double tol = 1e-12 * std::max(1.0, r);
        if (!(b.arcosh_lo <= r + tol && r <= b.arcosh_hi + tol && b.linear_lo <= r + tol && r <= b.linear_hi + tol)) {
            ++violations;
        }
    }
    const double targets[3] = {kPi / 2, kPi / 4, 3 * kPi / 16};
    double worst_levy = 0.0;
    for (int ell = 2; ell <= 4; ++ell) {
        const double moment = oracle::levy_moment(ell, [](double y) { return levy_density(4, y); });
        worst_levy = std::max(worst_levy, std::fabs(moment - targets[ell - 2]));
    }
    const bool pass = worst_density <= 1e-12 && worst_rho <= 1e-10 && violations == 0 && worst_levy <= 1e-8;
    return {pass, "density " + fmt("%.1e", worst_density) + ", rho " + fmt("%.1e", worst_rho) + ", bound violations " +
                      std::to_string(violations) + ", Levy moments " + fmt("%.1e", worst_levy)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"crofton-mean", crofton_mean},
        {"variance-identity", variance_identity},
        {"deterministic-non-clt-cumulants", deterministic_cumulants},
        {"limit-law-cumulants", limit_cumulants},
        {"cf-sampler-agreement", cf_sampler_agreement},
        {"gaussian-regime-d2", gaussian_regime},
        {"horosphere-regime", horosphere_regime},
        {"non-gaussian-regime-d4", non_gaussian_regime},
        {"geometry-identities", geometry_identities},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
