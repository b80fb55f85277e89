#pragma once

// Poisson sampling of hyperplane coordinates (s, u) under the invariant
// measure with density (cosh s - lambda sinh s)^{d-1}, and of the auxiliary
// half-line process with density proportional to cosh^{d-1}.

#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

#include "lhp/geometry.hpp"
#include "lhp/rng.hpp"

namespace lhp {

/// Upper limit on the expected number of hyperplanes per realization.
inline constexpr double kMaxMeanCount = 1e9;

/// multiplier * (cosh s - lambda sinh s)^{d-1}.
double intensity_density(const ModelConfig& config, double s);
double log_intensity_density(const ModelConfig& config, double s);

/// Integral of the intensity density over [-R, R].
double mean_count(const ModelConfig& config);

/// Inverse CDF of a density proportional to cosh^n(u) on [a, b], n >= 1.
/// Tabulates the CDF on 4097 equispaced knots (per-interval masses by
/// Gauss-Kronrod in log-space) and inverts it with a monotone cubic Hermite
/// interpolant that uses the exact density for the knot slopes.
class CoshPowerSampler {
  public:
    /// Minimum table size; wide ranges get one interval per 0.02 of n*u.
    static constexpr int kMinIntervals = 4096;

    CoshPowerSampler(int n, double a, double b);

    double quantile(double p) const;
    /// Exact CDF (quadrature between the nearest knot and u).
    double cdf(double u) const;

    double lower() const { return a_; }
    double upper() const { return b_; }
    /// log of the integral of cosh^n over [a, b].
    double log_total_mass() const { return log_total_; }

  private:
    double log_density(double u) const; // normalized
    int locate(double p) const;

    int n_;
    int intervals_;
    double a_, b_, h_;
    double log_total_;
    double log_shift_;
    std::vector<double> cum_;   // CDF at knots, cum_[0] = 0, cum_.back() = 1
    std::vector<double> slope_; // du/dp at knots
    std::vector<int> guide_;    // first interval whose right CDF exceeds j/intervals_
};

/// Inverse CDF of the normalized intensity on [-R, R].
class PositionSampler {
  public:
    explicit PositionSampler(const ModelConfig& config);

    double quantile(double p) const;
    double cdf(double s) const;

  private:
    struct Horosphere {
        double k, R;
    };
    struct Planar {
        double delta, sinh_a, sinh_b, R;
    };
    struct Tabulated {
        double delta, R;
        CoshPowerSampler table;
    };
    std::variant<Horosphere, Planar, Tabulated> impl_;
};

/// Quantile of the normalized intensity; builds a PositionSampler per call.
/// Throws DomainError for p outside [0, 1].
double inverse_cdf(const ModelConfig& config, double p);

/// One realization of the hyperplane process.
struct ProcessSample {
    ModelConfig config;
    std::uint64_t seed = 0;
    std::uint64_t replicate_index = 0;
    std::vector<double> s;
    /// Unit directions, row-major count x d; empty when disabled.
    std::vector<double> directions;

    std::size_t size() const { return s.size(); }
    bool has_directions() const { return !directions.empty(); }
};

/// Reusable sampler for one configuration. Realizations depend only on
/// (seed, replicate_index).
class ProcessSampler {
  public:
    explicit ProcessSampler(const ModelConfig& config);

    ProcessSample sample(std::uint64_t seed, std::uint64_t replicate_index,
                         bool with_directions = true) const;

    /// Draws only the signed distances into `out` (cleared first).
    void sample_positions(std::uint64_t seed, std::uint64_t replicate_index,
                          std::vector<double>& out) const;

    const ModelConfig& config() const { return config_; }
    double mean() const { return mean_; }

  private:
    ModelConfig config_;
    double mean_;
    PositionSampler positions_;
};

ProcessSample sample_process(const ModelConfig& config, std::uint64_t seed,
                             std::uint64_t replicate_index = 0, bool with_directions = true);

/// Poisson process on [0, T] with density rate * cosh^{d-1}(s).
class ZetaSampler {
  public:
    ZetaSampler(int d, double rate, double T);

    double expected_count() const { return expected_; }
    /// Appends the points of one realization to `out`.
    void sample(PhiloxEngine& count_rng, PhiloxEngine& position_rng, std::vector<double>& out) const;

  private:
    double expected_;
    CoshPowerSampler table_;
};

/// Rate 2 (1 - lambda^2)^{(d-1)/2} of the half-line process attached to the
/// lambda-geodesic limit law.
double zeta_rate(int d, double lambda);

/// Points of the half-line process on [0, T] with density
/// zeta_rate(d, lambda) * cosh^{d-1}. Throws UnsupportedError for lambda = 1.
std::vector<double> sample_zeta(int d, double lambda, double T, std::uint64_t seed,
                                std::uint64_t replicate_index = 0);

// Binary dumps: little-endian header {magic "HYPF", version u16, d u16,
// lambda f64, R f64, seed u64, count u64} followed by the payload.

inline constexpr std::uint16_t kProcessDumpVersion = 1;
inline constexpr std::uint16_t kScalarDumpVersion = 2;

struct DumpHeader {
    std::uint16_t version = kProcessDumpVersion;
    std::uint16_t d = 0;
    double lambda = 0.0;
    double R = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t count = 0;
};

/// Writes count x (s, u_1..u_d). Directions must be present.
void write_process_dump(std::ostream& os, const ProcessSample& sample);
ProcessSample read_process_dump(std::istream& is);

/// Version-2 dump of scalar draws; the R slot carries a caller-chosen
/// parameter (the jump cutoff for limit-law draws).
void write_scalar_dump(std::ostream& os, const DumpHeader& header, const std::vector<double>& values);
std::vector<double> read_scalar_dump(std::istream& is, DumpHeader& header);

}  // namespace lhp
