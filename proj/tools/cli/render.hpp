#pragma once

// SVG rendering of planar (d = 2) realizations in the Poincare disk. Each
// curve is the canonical one in the upper half-plane (a line through
// sinh(s - Delta) at angle theta, or the horizontal line Im z = e^{-s}),
// mapped to the disk by w = (z - i)/(z + i) and rotated by the angle of its
// direction vector.

#include <complex>
#include <string>
#include <vector>

#include "lhp/geometry.hpp"
#include "lhp/sampling.hpp"

namespace lhp::cli {

enum class CurveClass { geodesic, equidistant, horocycle };

struct Polyline {
    CurveClass kind;
    double lambda;
    std::vector<std::complex<double>> points;
};

struct DiskScene {
    double R;
    std::vector<Polyline> curves;
};

struct RenderOptions {
    int vertices = 256;
    /// Clip to the image of B_R; otherwise run to 1e-4 of the unit circle.
    bool clip_to_ball = true;
};

/// The disk image of the curve with signed distance s, rotated by `angle`.
/// Empty when the clipped section is empty.
Polyline curve_polyline(const LambdaGeometry& g, double s, double angle, double R,
                        const RenderOptions& opt = {});

/// Throws UnsupportedError unless d = 2; needs sampled directions.
DiskScene build_disk_scene(const ProcessSample& sample, const RenderOptions& opt = {});
void append_scene(DiskScene& scene, const ProcessSample& sample, const RenderOptions& opt = {});

std::string render_svg(const DiskScene& scene);
std::string render_disk(const ProcessSample& sample);

}  // namespace lhp::cli
