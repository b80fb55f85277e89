#pragma once

// The total surface functional S_R, its exact moments I_k(R) (which are its
// cumulants), their large-R asymptotics and the normalized section profile.

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "lhp/geometry.hpp"
#include "lhp/parallel.hpp"
#include "lhp/sampling.hpp"

namespace lhp {

struct SurfaceResult {
    double value = 0.0;
    double positive_part = 0.0; // hyperplanes with s >= 0
    double negative_part = 0.0; // hyperplanes with s < 0
};

/// Sum of section volumes of the given signed distances, with compensated
/// summation; value is exactly positive_part + negative_part.
SurfaceResult total_surface_area(const SectionVolume& volume, std::span<const double> s);
SurfaceResult total_surface_area(const ProcessSample& sample);

/// multiplier * ball_volume(d, R); does not depend on lambda.
double expected_surface_area(const ModelConfig& config);

inline constexpr int kDefaultMaxCumulantOrder = 8;

struct CumulantOptions {
    double rel_tol = 1e-9;
    int max_order = kDefaultMaxCumulantOrder;
    /// Use the closed forms (d = 3 with lambda < 1, and lambda = 1, k = 2)
    /// where they exist instead of quadrature.
    bool closed_forms = true;
};

/// I_k(R) = multiplier * int_{-R}^{R} V(s)^k (cosh s - lambda sinh s)^{d-1} ds.
/// Throws NumericalError when quadrature misses the tolerance.
double cumulant_integral(const ModelConfig& config, int k, const CumulantOptions& opt = {});
double log_cumulant_integral(const ModelConfig& config, int k, const CumulantOptions& opt = {});

/// Var S_R = I_2(R).
double variance(const ModelConfig& config);

/// Growth order of Var S_R without constants: e^R (d = 2), R e^{2R} (d = 3),
/// e^{2(d-2)R} (d >= 4), R e^{(d-1)R} for horospheres.
double variance_order(const ModelConfig& config);
double log_variance_order(const ModelConfig& config);

/// lim_{R -> inf} I_k(R) e^{-k(d-2)R} for d >= 4, lambda < 1, k >= 2.
/// Throws DomainError when the defining cosh integral diverges.
double normalized_cumulant_limit(int d, double lambda, int k, double multiplier = 1.0);

/// e^{-(d-2)R} V(s) for d >= 3, lambda < 1.
double normalized_profile(const ModelConfig& config, double s);

/// Pointwise limit of normalized_profile as R -> inf.
double limit_profile(int d, double lambda, double s);

/// sqrt(I_4) / I_2.
double berry_esseen_indicator(const ModelConfig& config);

/// Memoized I_k(R) values for one (d, lambda, multiplier).
class CumulantTable {
  public:
    CumulantTable(int d, double lambda, double multiplier = 1.0);

    double value(int k, double R);
    const std::map<std::pair<int, double>, double>& entries() const { return entries_; }
    int d() const { return d_; }
    double lambda() const { return lambda_; }
    double multiplier() const { return multiplier_; }

  private:
    int d_;
    double lambda_;
    double multiplier_;
    std::map<std::pair<int, double>, double> entries_;
};

/// S_R for replicates 0..n-1 of one configuration. Replicates are split into
/// contiguous index blocks across `threads` workers (0 = hardware
/// concurrency); the result does not depend on the thread count.
std::vector<SurfaceResult> monte_carlo_surfaces(const ModelConfig& config, std::size_t n,
                                                std::uint64_t seed, int threads = 0);

}  // namespace lhp
