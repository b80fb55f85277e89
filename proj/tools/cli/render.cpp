#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lhp/errors.hpp"

namespace lhp::cli {

namespace {

constexpr double kBoundaryGap = 1e-4;

// Smaller and larger root of A t^2 + B t + C, or false when there is none.
bool quadratic_roots(double A, double B, double C, double& lo, double& hi) {
    const double disc = B * B - 4.0 * A * C;
    if (!(disc > 0.0)) return false;
    const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
    lo = q / A;
    hi = C / q;
    if (lo > hi) std::swap(lo, hi);
    return true;
}

const char* class_name(CurveClass k) {
    switch (k) {
        case CurveClass::geodesic:
            return "geodesic";
        case CurveClass::equidistant:
            return "equidistant";
        case CurveClass::horocycle:
            return "horocycle";
    }
    return "curve";
}

const char* class_colour(CurveClass k) {
    switch (k) {
        case CurveClass::geodesic:
            return "#1f4e99";
        case CurveClass::equidistant:
            return "#2e8b57";
        case CurveClass::horocycle:
            return "#b22222";
    }
    return "#000000";
}

}  // namespace

Polyline curve_polyline(const LambdaGeometry& g, double s, double angle, double R, const RenderOptions& opt) {
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> rot = std::polar(1.0, angle);
    const double rr = opt.clip_to_ball ? std::tanh(0.5 * R) : 1.0 - kBoundaryGap;
    const double A = 1.0 - rr * rr;
    const double P = 1.0 + rr * rr;
    const int n = std::max(opt.vertices, 256);
    auto to_disk = [&](std::complex<double> z) { return rot * (z - i) / (z + i); };

    Polyline line;
    line.lambda = g.lambda;
    // The region |w| < rr is (1 - rr^2)(|z|^2 + 1) < 2 (1 + rr^2) Im z.
    if (g.is_horosphere()) {
        line.kind = CurveClass::horocycle;
        const double h = std::exp(-s);
        const double x2 = 2.0 * h * P / A - h * h - 1.0;
        if (!(x2 > 0.0)) return line;
        const double v_max = std::asinh(std::sqrt(x2));
        for (int k = 0; k < n; ++k) {
            const double v = -v_max + 2.0 * v_max * k / (n - 1);
            line.points.push_back(to_disk({std::sinh(v), h}));
        }
        return line;
    }
    line.kind = g.lambda == 0.0 ? CurveClass::geodesic : CurveClass::equidistant;
    const double a = std::sinh(s - g.delta.value());
    const double c = std::cos(g.theta);
    const double sn = std::sin(g.theta);
    double t_lo = 0.0;
    double t_hi = 0.0;
    if (!quadratic_roots(A, 2.0 * a * A * c - 2.0 * P * sn, A * (a * a + 1.0), t_lo, t_hi) || !(t_lo > 0.0)) {
        return line;
    }
    const std::complex<double> dir = std::polar(1.0, g.theta);
    const double l0 = std::log(t_lo);
    const double l1 = std::log(t_hi);
    for (int k = 0; k < n; ++k) {
        const double t = std::exp(l0 + (l1 - l0) * k / (n - 1));
        line.points.push_back(to_disk(a + t * dir));
    }
    return line;
}

void append_scene(DiskScene& scene, const ProcessSample& sample, const RenderOptions& opt) {
    if (sample.config.d != 2) throw UnsupportedError("rendering needs d = 2");
    if (!sample.has_directions()) throw DomainError("rendering needs sampled directions");
    const LambdaGeometry g = sample.config.geometry();
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const double angle = std::atan2(sample.directions[2 * k + 1], sample.directions[2 * k]);
        Polyline p = curve_polyline(g, sample.s[k], angle, sample.config.R, opt);
        if (!p.points.empty()) scene.curves.push_back(std::move(p));
    }
}

DiskScene build_disk_scene(const ProcessSample& sample, const RenderOptions& opt) {
    DiskScene scene{sample.config.R, {}};
    append_scene(scene, sample, opt);
    return scene;
}

std::string render_svg(const DiskScene& scene) {
    std::string out;
    char buf[128];
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out +=
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.05 -1.05 2.1 2.1\" "
        "width=\"800\" height=\"800\">\n";
    out += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.004\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"0\" cy=\"0\" r=\"%.6f\" fill=\"none\" stroke=\"#808080\" "
                  "stroke-width=\"0.003\" stroke-dasharray=\"0.01 0.01\"/>\n",
                  std::tanh(0.5 * scene.R));
    out += buf;
    for (const Polyline& p : scene.curves) {
        std::snprintf(buf, sizeof(buf), "<polyline class=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"0.003\" points=\"",
                      class_name(p.kind), class_colour(p.kind));
        out += buf;
        for (std::size_t k = 0; k < p.points.size(); ++k) {
            std::snprintf(buf, sizeof(buf), "%s%.6f,%.6f", k == 0 ? "" : " ", p.points[k].real(),
                          -p.points[k].imag());
            out += buf;
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string render_disk(const ProcessSample& sample) { return render_svg(build_disk_scene(sample)); }

}  // namespace lhp::cli
