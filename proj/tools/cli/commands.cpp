#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <vector>

#include "lhp/errors.hpp"
#include "lhp/functionals.hpp"
#include "lhp/io.hpp"
#include "lhp/limit_law.hpp"
#include "lhp/numerics.hpp"
#include "lhp/sampling.hpp"
#include "lhp/stats.hpp"
#include "render.hpp"

namespace lhp::cli {

namespace {

/// stdout or a file opened for writing.
class Sink {
  public:
    explicit Sink(const std::string& path, bool binary = false) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
        if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

std::string cell_suffix(int d, double lambda, double R) {
    return "_d" + std::to_string(d) + "_lambda" + format_double(lambda) + "_R" + format_double(R);
}

std::string cell_label(int d, double lambda, double R) {
    return "d=" + std::to_string(d) + " lambda=" + format_double(lambda) + " R=" + format_double(R);
}

struct Cell {
    int d;
    double lambda;
    double R;
};

std::vector<Cell> cells(const ExperimentConfig& cfg) {
    std::vector<Cell> out;
    for (const int d : cfg.d_list) {
        for (const double l : cfg.lambda_list) {
            for (const double R : cfg.R_list) out.push_back({d, l, R});
        }
    }
    return out;
}

ModelConfig model_for(const ExperimentConfig& cfg, const Cell& c) {
    return ModelConfig{c.d, c.lambda, c.R, cfg.model.intensity_multiplier};
}

void run_crofton(const ExperimentConfig& cfg, std::ostream& log) {
    Sink sink(cfg.output_path);
    CsvWriter csv(sink.stream(), {"d", "lambda", "R", "n", "mc_mean", "mc_se", "expected", "exact_se", "z_score"});
    for (const Cell& c : cells(cfg)) {
        const ModelConfig model = model_for(cfg, c);
        const auto surfaces = monte_carlo_surfaces(model, cfg.n_replicates, cfg.seed, cfg.threads);
        std::vector<double> values;
        values.reserve(surfaces.size());
        for (const auto& s : surfaces) values.push_back(s.value);
        CompensatedSum sum;
        for (const double v : values) sum.add(v);
        const double n = static_cast<double>(values.size());
        const double mean = sum.value() / n;
        CompensatedSum sq;
        for (const double v : values) sq.add((v - mean) * (v - mean));
        const double se = n > 1 ? std::sqrt(sq.value() / (n - 1.0) / n) : std::nan("");
        const double expected = expected_surface_area(model);
        const double exact_se = std::sqrt(variance(model) / n);
        const double z = (mean - expected) / exact_se;
        csv << c.d << c.lambda << c.R << static_cast<std::uint64_t>(cfg.n_replicates) << mean << se << expected
            << exact_se << z;
        csv.end_row();
        log << "crofton " << cell_label(c.d, c.lambda, c.R) << ": mean=" << format_double(mean)
            << " expected=" << format_double(expected) << " z=" << format_double(z) << '\n';
    }
}

void run_variance(const ExperimentConfig& cfg, std::ostream& log) {
    Sink sink(cfg.output_path);
    CsvWriter csv(sink.stream(), {"d", "lambda", "R", "n", "mc_variance", "exact_variance", "rel_error",
                                  "variance_order", "ratio_to_order"});
    for (const Cell& c : cells(cfg)) {
        const ModelConfig model = model_for(cfg, c);
        if (cfg.n_replicates < 4) throw UsageError("variance needs n >= 4");
        const auto surfaces = monte_carlo_surfaces(model, cfg.n_replicates, cfg.seed, cfg.threads);
        std::vector<double> values;
        for (const auto& s : surfaces) values.push_back(s.value);
        const KStatistics k = k_statistics(values);
        const double exact = variance(model);
        const double ratio = std::exp(log_cumulant_integral(model, 2) - log_variance_order(model));
        csv << c.d << c.lambda << c.R << static_cast<std::uint64_t>(cfg.n_replicates) << k.k2 << exact
            << (k.k2 / exact - 1.0) << variance_order(model) << ratio;
        csv.end_row();
        log << "variance " << cell_label(c.d, c.lambda, c.R) << ": mc=" << format_double(k.k2)
            << " exact=" << format_double(exact) << " rel_error=" << format_double(k.k2 / exact - 1.0) << '\n';
    }
}

void run_cumulants(const ExperimentConfig& cfg, std::ostream& log) {
    Sink sink(cfg.output_path);
    CsvWriter csv(sink.stream(), {"d", "lambda", "R", "k", "I_value"});
    for (const Cell& c : cells(cfg)) {
        const ModelConfig model = model_for(cfg, c);
        for (int k = 1; k <= cfg.k_max; ++k) {
            const double v = cumulant_integral(model, k);
            csv << c.d << c.lambda << c.R << k << v;
            csv.end_row();
        }
        log << "cumulants " << cell_label(c.d, c.lambda, c.R) << ": I_2=" << format_double(variance(model))
            << '\n';
    }
}

void run_sample(const ExperimentConfig& cfg, std::ostream& log) {
    const auto all = cells(cfg);
    const bool multi = all.size() > 1;
    if (multi && cfg.output_path.empty()) throw UsageError("sample over several cells needs --out");
    for (const Cell& c : all) {
        const ModelConfig model = model_for(cfg, c);
        const std::string suffix = multi ? cell_suffix(c.d, c.lambda, c.R) : "";
        Sink sink(multi ? with_suffix(cfg.output_path, suffix) : cfg.output_path);
        CsvWriter csv(sink.stream(), {"replicate", "S", "S_plus", "S_minus"});
        const auto surfaces = monte_carlo_surfaces(model, cfg.n_replicates, cfg.seed, cfg.threads);
        for (std::size_t r = 0; r < surfaces.size(); ++r) {
            csv << static_cast<std::uint64_t>(r) << surfaces[r].value << surfaces[r].positive_part
                << surfaces[r].negative_part;
            csv.end_row();
        }
        if (!cfg.dump_path.empty()) {
            Sink dump(with_suffix(cfg.dump_path, suffix), true);
            const ProcessSampler sampler(model);
            for (std::size_t r = 0; r < cfg.n_replicates; ++r) {
                write_process_dump(dump.stream(), sampler.sample(cfg.seed, r, true));
            }
        }
        log << "sample " << cell_label(c.d, c.lambda, c.R) << ": " << surfaces.size()
            << " replicates, mean count " << format_double(mean_count(model)) << '\n';
    }
}

void run_limit(const ExperimentConfig& cfg, std::ostream& log) {
    for (const int d : cfg.d_list) {
        if (d < 4) throw DomainError("limit laws need d >= 4, got " + std::to_string(d));
    }
    Sink sink(cfg.output_path);
    CsvWriter csv(sink.stream(), {"d", "lambda", "rate", "T0", "tail_variance", "scale_constant", "n", "mean",
                                  "k2", "k3", "k4", "cum2", "cum3", "cum4", "ks_inversion"});
    const bool multi = cfg.d_list.size() * cfg.lambda_list.size() > 1;
    if (cfg.n_replicates < 4) throw UsageError("limit needs n >= 4");
    for (const int d : cfg.d_list) {
        for (const double lambda : cfg.lambda_list) {
            const LimitLawSpec spec =
                limit_law_with_rate(d, lambda, cfg.model.intensity_multiplier * zeta_rate(d, lambda));
            const auto draws = sample_limit(spec, cfg.n_replicates, cfg.seed, cfg.threads);
            const KStatistics k = k_statistics(draws);
            const TabulatedCdf F = tabulate_limit_cdf(spec);
            const double ks = ks_distance(draws, [&F](double x) { return F(x); });
            csv << d << lambda << spec.rate << spec.T0 << spec.tail_variance << spec.scale_constant
                << static_cast<std::uint64_t>(cfg.n_replicates) << k.mean << k.k2 << k.k3 << k.k4
                << limit_cumulant(spec, 2) << limit_cumulant(spec, 3) << limit_cumulant(spec, 4) << ks;
            csv.end_row();

            const std::string suffix =
                multi ? "_d" + std::to_string(d) + "_lambda" + format_double(lambda) : std::string();
            if (!cfg.output_path.empty()) {
                Sink cf_sink(with_suffix(cfg.output_path, suffix + "_cf"));
                CsvWriter cf(cf_sink.stream(), {"t", "re_psi", "im_psi"});
                for (int i = 0; i <= 200; ++i) {
                    const double t = 0.1 * i;
                    const auto psi = characteristic_function(spec, t);
                    cf << t << psi.real() << psi.imag();
                    cf.end_row();
                }
                Sink cdf_sink(with_suffix(cfg.output_path, suffix + "_cdf"));
                CsvWriter cdf(cdf_sink.stream(), {"x", "F"});
                for (std::size_t i = 0; i < F.x().size(); ++i) {
                    cdf << F.x()[i] << F.values()[i];
                    cdf.end_row();
                }
            }
            if (!cfg.dump_path.empty()) {
                Sink dump(with_suffix(cfg.dump_path, suffix), true);
                DumpHeader h;
                h.d = static_cast<std::uint16_t>(d);
                h.lambda = lambda;
                h.R = spec.T0;
                h.seed = cfg.seed;
                write_scalar_dump(dump.stream(), h, draws);
            }
            log << "limit d=" << d << " lambda=" << format_double(lambda) << ": k2=" << format_double(k.k2)
                << " (exact " << format_double(limit_cumulant(spec, 2)) << ") ks_inversion=" << format_double(ks)
                << '\n';
        }
    }
}

void run_regimes(const ExperimentConfig& cfg, std::ostream& log) {
    Sink sink(cfg.output_path);
    CsvWriter csv(sink.stream(), {"d", "lambda", "R", "n", "mean", "k2", "k3", "k4", "ks_normal1",
                                  "ks_normal_half", "ks_limit", "w1_limit", "be_indicator"});
    RegimeOptions opt;
    opt.multiplier = cfg.model.intensity_multiplier;
    opt.threads = cfg.threads;
    for (const int d : cfg.d_list) {
        for (const double lambda : cfg.lambda_list) {
            const auto rows = regime_report(d, lambda, cfg.R_list, cfg.n_replicates, cfg.seed, opt);
            for (const RegimeRow& r : rows) {
                csv << r.d << r.lambda << r.R << static_cast<std::uint64_t>(r.n) << r.mean << r.k2 << r.k3 << r.k4
                    << r.ks_normal1 << r.ks_normal_half << r.ks_limit << r.w1_limit << r.be_indicator;
                csv.end_row();
                log << "regimes " << cell_label(r.d, r.lambda, r.R) << ": ks_normal1=" << format_double(r.ks_normal1)
                    << " ks_normal_half=" << format_double(r.ks_normal_half)
                    << " ks_limit=" << format_double(r.ks_limit) << " positive_share="
                    << format_double(r.positive_share) << '\n';
            }
        }
    }
}

void run_render(const ExperimentConfig& cfg, std::ostream& log) {
    if (cfg.d_list.size() != 1 || cfg.d_list.front() != 2) throw UnsupportedError("render needs d = 2");
    if (cfg.R_list.size() != 1) throw UsageError("render takes a single radius");
    const double R = cfg.R_list.front();
    DiskScene scene{R, {}};
    for (std::size_t i = 0; i < cfg.lambda_list.size(); ++i) {
        const ModelConfig model{2, cfg.lambda_list[i], R, cfg.model.intensity_multiplier};
        const ProcessSample sample = ProcessSampler(model).sample(cfg.seed, i, true);
        const std::size_t before = scene.curves.size();
        append_scene(scene, sample);
        log << "render lambda=" << format_double(model.lambda) << " R=" << format_double(R) << ": "
            << scene.curves.size() - before << " curves\n";
    }
    Sink sink(cfg.output_path);
    sink.stream() << render_svg(scene);
}

}  // namespace

std::string with_suffix(const std::string& base, const std::string& suffix) {
    const std::filesystem::path p(base);
    std::filesystem::path out = p.parent_path() / (p.stem().string() + suffix + p.extension().string());
    return out.string();
}

int run(const ExperimentConfig& config, std::ostream& log) {
    try {
        switch (config.command) {
            case Command::crofton:
                run_crofton(config, log);
                break;
            case Command::variance:
                run_variance(config, log);
                break;
            case Command::cumulants:
                run_cumulants(config, log);
                break;
            case Command::sample:
                run_sample(config, log);
                break;
            case Command::limit:
                run_limit(config, log);
                break;
            case Command::regimes:
                run_regimes(config, log);
                break;
            case Command::render:
                run_render(config, log);
                break;
        }
    } catch (const NumericalError& e) {
        log << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace lhp::cli
