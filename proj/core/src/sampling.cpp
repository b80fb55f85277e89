#include "lhp/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "lhp/numerics.hpp"

namespace lhp {

double intensity_density(const ModelConfig& config, double s) {
    const LambdaGeometry g = config.geometry();
    const int n = config.d - 1;
    if (g.is_horosphere()) return config.intensity_multiplier * std::exp(-n * s);
    return config.intensity_multiplier * std::pow(g.mu * std::cosh(s - g.delta.value()), n);
}

double log_intensity_density(const ModelConfig& config, double s) {
    return std::log(config.intensity_multiplier) +
           (config.d - 1) * log_lambda_weight(config.geometry(), s);
}

double mean_count(const ModelConfig& config) {
    config.validate();
    const LambdaGeometry g = config.geometry();
    const int n = config.d - 1;
    const double R = config.R;
    if (g.is_horosphere()) return config.intensity_multiplier * 2.0 * std::sinh(n * R) / n;
    const double delta = g.delta.value();
    return config.intensity_multiplier * std::pow(g.mu, n) *
           (cosh_power_antiderivative(n, R - delta) + cosh_power_antiderivative(n, R + delta));
}

// ---------------------------------------------------------------------------
// CoshPowerSampler
// ---------------------------------------------------------------------------

CoshPowerSampler::CoshPowerSampler(int n, double a, double b)
    : n_(n), intervals_(kMinIntervals), a_(a), b_(b), h_(0.0), log_total_(kNegInf), log_shift_(0.0) {
    if (n < 0) throw DomainError("cosh power must be >= 0");
    if (!(b >= a)) throw DomainError("sampler interval is reversed");
    if (b == a) return;
    // The cubic inverse is accurate while the density changes by a small
    // factor across one interval.
    const double wanted = std::ceil(n * (b - a) / 0.02);
    intervals_ = static_cast<int>(std::clamp(wanted, static_cast<double>(kMinIntervals), 1048576.0));
    h_ = (b - a) / intervals_;
    log_shift_ = n * std::max(log_cosh(a), log_cosh(b));
    auto scaled = [this](double u) { return std::exp(n_ * log_cosh(u) - log_shift_); };

    std::vector<double> mass(intervals_);
    CompensatedSum total;
    for (int i = 0; i < intervals_; ++i) {
        const double lo = a + i * h_;
        const double hi = (i + 1 == intervals_) ? b : a + (i + 1) * h_;
        mass[i] = gk15::apply(scaled, lo, hi).kronrod;
        total.add(mass[i]);
    }
    const double tot = total.value();
    log_total_ = log_shift_ + std::log(tot);

    cum_.assign(intervals_ + 1, 0.0);
    CompensatedSum running;
    for (int i = 0; i < intervals_; ++i) {
        running.add(mass[i]);
        cum_[i + 1] = std::min(1.0, running.value() / tot);
    }
    cum_[intervals_] = 1.0;

    // Hermite slopes du/dp = 1/f(u) at the knots, expressed relative to the
    // secant of each interval and limited so the cubic stays monotone.
    slope_.assign(2 * intervals_, 0.0);
    for (int i = 0; i < intervals_; ++i) {
        const double dp = cum_[i + 1] - cum_[i];
        if (!(dp > 0.0)) continue;
        const double ul = a + i * h_;
        const double ur = a + (i + 1) * h_;
        auto rel = [&](double u) {
            const double log_f = n_ * log_cosh(u) - log_total_;
            return std::min(1e150, std::exp(std::log(dp / h_) - log_f));
        };
        double alpha = rel(ul);
        double beta = rel(ur);
        const double r2 = alpha * alpha + beta * beta;
        if (r2 > 9.0) {
            const double t = 3.0 / std::sqrt(r2);
            alpha *= t;
            beta *= t;
        }
        slope_[2 * i] = alpha;
        slope_[2 * i + 1] = beta;
    }

    guide_.assign(intervals_ + 1, intervals_ - 1);
    int i = 0;
    for (int j = 0; j <= intervals_; ++j) {
        const double p = static_cast<double>(j) / intervals_;
        while (i + 1 < intervals_ && cum_[i + 1] <= p) ++i;
        guide_[j] = i;
    }
}

double CoshPowerSampler::log_density(double u) const { return n_ * log_cosh(u) - log_total_; }

int CoshPowerSampler::locate(double p) const {
    const int j = std::min(static_cast<int>(p * intervals_), intervals_ - 1);
    const int lo = guide_[j];
    const int hi = guide_[j + 1];
    const auto first = cum_.begin() + lo;
    const auto last = cum_.begin() + hi + 1;
    const int i = static_cast<int>(std::upper_bound(first, last, p) - cum_.begin()) - 1;
    return std::clamp(i, 0, intervals_ - 1);
}

double CoshPowerSampler::quantile(double p) const {
    if (h_ == 0.0 || p <= 0.0) return a_;
    if (p >= 1.0) return b_;
    const int i = locate(p);
    const double dp = cum_[i + 1] - cum_[i];
    const double t = dp > 0.0 ? std::clamp((p - cum_[i]) / dp, 0.0, 1.0) : 0.0;
    const double alpha = slope_[2 * i];
    const double beta = slope_[2 * i + 1];
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double shape = (3.0 * t2 - 2.0 * t3) + alpha * (t3 - 2.0 * t2 + t) + beta * (t3 - t2);
    return std::min(b_, a_ + h_ * (i + shape));
}

double CoshPowerSampler::cdf(double u) const {
    if (u <= a_) return 0.0;
    if (u >= b_) return 1.0;
    const int i = std::min(static_cast<int>((u - a_) / h_), intervals_ - 1);
    const double lo = a_ + i * h_;
    const double part =
        gk15::apply([this](double v) { return std::exp(log_density(v)); }, lo, u).kronrod;
    return std::min(1.0, cum_[i] + part);
}

// ---------------------------------------------------------------------------
// PositionSampler
// ---------------------------------------------------------------------------

PositionSampler::PositionSampler(const ModelConfig& config) : impl_(Horosphere{1.0, 0.0}) {
    config.validate();
    const LambdaGeometry g = config.geometry();
    const double R = config.R;
    if (g.is_horosphere()) {
        impl_ = Horosphere{static_cast<double>(config.d - 1), R};
        return;
    }
    const double delta = g.delta.value();
    if (config.d == 2) {
        impl_ = Planar{delta, std::sinh(-R - delta), std::sinh(R - delta), R};
        return;
    }
    impl_.emplace<Tabulated>(Tabulated{delta, R, CoshPowerSampler(config.d - 1, -R - delta, R - delta)});
}

double PositionSampler::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0, 1]");
    return std::visit(
        [p](const auto& impl) -> double {
            using T = std::decay_t<decltype(impl)>;
            const double R = impl.R;
            if (R == 0.0) return 0.0;
            double s;
            if constexpr (std::is_same_v<T, Horosphere>) {
                const double k = impl.k;
                s = -R - std::log1p(p * std::expm1(-2.0 * k * R)) / k;
            } else if constexpr (std::is_same_v<T, Planar>) {
                s = std::asinh(impl.sinh_a + p * (impl.sinh_b - impl.sinh_a)) + impl.delta;
            } else {
                s = impl.table.quantile(p) + impl.delta;
            }
            if (p == 0.0) return -R;
            if (p == 1.0) return R;
            return std::clamp(s, -R, R);
        },
        impl_);
}

double PositionSampler::cdf(double s) const {
    return std::visit(
        [s](const auto& impl) -> double {
            using T = std::decay_t<decltype(impl)>;
            const double R = impl.R;
            if (s <= -R) return 0.0;
            if (s >= R) return 1.0;
            if constexpr (std::is_same_v<T, Horosphere>) {
                return std::expm1(-impl.k * (s + R)) / std::expm1(-2.0 * impl.k * R);
            } else if constexpr (std::is_same_v<T, Planar>) {
                return (std::sinh(s - impl.delta) - impl.sinh_a) / (impl.sinh_b - impl.sinh_a);
            } else {
                return impl.table.cdf(s - impl.delta);
            }
        },
        impl_);
}

double inverse_cdf(const ModelConfig& config, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0, 1]");
    return PositionSampler(config).quantile(p);
}

// ---------------------------------------------------------------------------
// Process sampling
// ---------------------------------------------------------------------------

namespace {

double checked_mean(const ModelConfig& config) {
    const double m = mean_count(config);
    if (!(m <= kMaxMeanCount)) {
        throw DomainError("expected hyperplane count " + std::to_string(m) + " exceeds the cap of " +
                          std::to_string(kMaxMeanCount));
    }
    return m;
}

std::uint64_t draw_poisson(PhiloxEngine& rng, double mean) {
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<long long> dist(mean);
    return static_cast<std::uint64_t>(dist(rng));
}

}  // namespace

ProcessSampler::ProcessSampler(const ModelConfig& config)
    : config_(config), mean_(checked_mean(config)), positions_(config) {}

void ProcessSampler::sample_positions(std::uint64_t seed, std::uint64_t replicate_index,
                                      std::vector<double>& out) const {
    out.clear();
    PhiloxEngine count_rng(seed, replicate_index, Substream::count);
    const std::uint64_t n = draw_poisson(count_rng, mean_);
    out.reserve(n);
    PhiloxEngine pos_rng(seed, replicate_index, Substream::positions);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(positions_.quantile(pos_rng.uniform_open()));
}

ProcessSample ProcessSampler::sample(std::uint64_t seed, std::uint64_t replicate_index,
                                     bool with_directions) const {
    ProcessSample out;
    out.config = config_;
    out.seed = seed;
    out.replicate_index = replicate_index;
    sample_positions(seed, replicate_index, out.s);
    if (with_directions) {
        const int d = config_.d;
        out.directions.resize(out.s.size() * d);
        PhiloxEngine dir_rng(seed, replicate_index, Substream::directions);
        std::normal_distribution<double> normal;
        for (std::size_t i = 0; i < out.s.size(); ++i) {
            double* u = out.directions.data() + i * d;
            double norm2 = 0.0;
            while (!(norm2 > 1e-24)) {
                norm2 = 0.0;
                for (int k = 0; k < d; ++k) {
                    u[k] = normal(dir_rng);
                    norm2 += u[k] * u[k];
                }
            }
            const double inv = 1.0 / std::sqrt(norm2);
            for (int k = 0; k < d; ++k) u[k] *= inv;
        }
    }
    return out;
}

ProcessSample sample_process(const ModelConfig& config, std::uint64_t seed, std::uint64_t replicate_index,
                             bool with_directions) {
    return ProcessSampler(config).sample(seed, replicate_index, with_directions);
}

ZetaSampler::ZetaSampler(int d, double rate, double T)
    : expected_(0.0), table_(std::max(d - 1, 0), 0.0, std::max(T, 0.0)) {
    if (d < 2) throw DomainError("dimension d must be >= 2");
    if (!(rate > 0.0)) throw DomainError("rate must be positive");
    if (!(T >= 0.0)) throw DomainError("cutoff T must be >= 0");
    expected_ = rate * cosh_power_antiderivative(d - 1, T);
    if (!(expected_ <= kMaxMeanCount)) throw DomainError("expected point count exceeds the cap");
}

void ZetaSampler::sample(PhiloxEngine& count_rng, PhiloxEngine& position_rng, std::vector<double>& out) const {
    const std::uint64_t n = draw_poisson(count_rng, expected_);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(table_.quantile(position_rng.uniform_open()));
}

double zeta_rate(int d, double lambda) {
    const LambdaGeometry g = lambda_geometry(lambda);
    if (g.is_horosphere()) throw UnsupportedError("no half-line process for horospheres (lambda = 1)");
    return 2.0 * std::pow(g.mu, d - 1);
}

std::vector<double> sample_zeta(int d, double lambda, double T, std::uint64_t seed,
                                std::uint64_t replicate_index) {
    const ZetaSampler sampler(d, zeta_rate(d, lambda), T);
    PhiloxEngine count_rng(seed, replicate_index, Substream::count);
    PhiloxEngine pos_rng(seed, replicate_index, Substream::positions);
    std::vector<double> out;
    sampler.sample(count_rng, pos_rng, out);
    return out;
}

// ---------------------------------------------------------------------------
// Binary dumps
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'H', 'Y', 'P', 'F'};

template <class U>
void put_le(std::ostream& os, U v) {
    char bytes[sizeof(U)];
    for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(bytes, sizeof(U));
}

void put_f64(std::ostream& os, double v) { put_le(os, std::bit_cast<std::uint64_t>(v)); }

template <class U>
U get_le(std::istream& is) {
    unsigned char bytes[sizeof(U)];
    if (!is.read(reinterpret_cast<char*>(bytes), sizeof(U))) throw DomainError("truncated dump");
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_le<std::uint64_t>(is)); }

void write_header(std::ostream& os, const DumpHeader& h) {
    os.write(kMagic, 4);
    put_le(os, h.version);
    put_le(os, h.d);
    put_f64(os, h.lambda);
    put_f64(os, h.R);
    put_le(os, h.seed);
    put_le(os, h.count);
}

DumpHeader read_header(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw DomainError("not a HYPF dump");
    DumpHeader h;
    h.version = get_le<std::uint16_t>(is);
    h.d = get_le<std::uint16_t>(is);
    h.lambda = get_f64(is);
    h.R = get_f64(is);
    h.seed = get_le<std::uint64_t>(is);
    h.count = get_le<std::uint64_t>(is);
    return h;
}

}  // namespace

void write_process_dump(std::ostream& os, const ProcessSample& sample) {
    if (!sample.has_directions()) throw DomainError("process dump needs sampled directions");
    const DumpHeader h{kProcessDumpVersion, static_cast<std::uint16_t>(sample.config.d), sample.config.lambda,
                       sample.config.R, sample.seed, sample.size()};
    write_header(os, h);
    const int d = sample.config.d;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        put_f64(os, sample.s[i]);
        for (int k = 0; k < d; ++k) put_f64(os, sample.directions[i * d + k]);
    }
}

ProcessSample read_process_dump(std::istream& is) {
    const DumpHeader h = read_header(is);
    if (h.version != kProcessDumpVersion) throw DomainError("unexpected dump version " + std::to_string(h.version));
    ProcessSample out;
    out.config.d = h.d;
    out.config.lambda = h.lambda;
    out.config.R = h.R;
    out.seed = h.seed;
    out.s.resize(h.count);
    out.directions.resize(h.count * h.d);
    for (std::uint64_t i = 0; i < h.count; ++i) {
        out.s[i] = get_f64(is);
        for (int k = 0; k < h.d; ++k) out.directions[i * h.d + k] = get_f64(is);
    }
    return out;
}

void write_scalar_dump(std::ostream& os, const DumpHeader& header, const std::vector<double>& values) {
    DumpHeader h = header;
    h.version = kScalarDumpVersion;
    h.count = values.size();
    write_header(os, h);
    for (double v : values) put_f64(os, v);
}

std::vector<double> read_scalar_dump(std::istream& is, DumpHeader& header) {
    header = read_header(is);
    if (header.version != kScalarDumpVersion) {
        throw DomainError("unexpected dump version " + std::to_string(header.version));
    }
    std::vector<double> values(header.count);
    for (auto& v : values) v = get_f64(is);
    return values;
}

}  // namespace lhp
