#include "cantor/render.hpp"

#include <cmath>

#include "cantor/errors.hpp"
#include "cantor/util.hpp"

namespace cantor {

namespace {

Rgb hsv_to_rgb(double h, double s, double v) {
    h = h - std::floor(h);
    double c = v * s;
    double hp = h * 6.0;
    double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp) % 6) {
        case 0: r = c, g = x; break;
        case 1: r = x, g = c; break;
        case 2: g = c, b = x; break;
        case 3: g = x, b = c; break;
        case 4: r = x, b = c; break;
        default: r = c, b = x; break;
    }
    double m = v - c;
    auto q = [m](double t) { return static_cast<std::uint8_t>(std::lround(255.0 * (t + m))); };
    return {q(r), q(g), q(b)};
}

Rgb escape_color(const OrbitClass& oc) {
    if (oc.outcome == Outcome::Undecided) return {0, 0, 0};
    double t = std::log1p(static_cast<double>(oc.steps));
    double hue = 0.62 + 0.13 * t;
    double v = oc.entered == TrapSide::Inner ? 0.95 : 0.78;
    return hsv_to_rgb(hue, 0.85, v);
}

Rgb basin_color(const OrbitClass& oc) {
    if (oc.outcome == Outcome::Undecided) return kBasinJulia;
    return oc.entered == TrapSide::Inner ? kBasinInner : kBasinOuter;
}

}  // namespace

Image render(const RenderJob& job) {
    if (job.width <= 0 || job.height <= 0 ||
        static_cast<long>(job.width) * job.height > 8192L * 8192L)
        throw DomainError("render: resolution out of range");
    if (job.mode == RenderMode::Itinerary) {
        if (job.depth < 1 || job.depth > 6) throw DomainError("render: itinerary depth must be in [1, 6]");
        double hues = std::pow(static_cast<double>(job.region.n), job.depth);
        if (hues > 4096.0) throw DomainError("render: n^depth exceeds 4096 hues");
    }

    Image img;
    img.width = job.width;
    img.height = job.height;
    img.rgb.assign(3 * static_cast<std::size_t>(job.width) * job.height, 0);

    const double step = 2.0 * job.half_width / job.width;
    const double x0 = job.center.real() - job.half_width + 0.5 * step;
    const double y0 = job.center.imag() + (job.height * 0.5 - 0.5) * step;  // top row, centers

    const int depth_colors = job.mode == RenderMode::Itinerary
                                 ? static_cast<int>(std::pow(job.region.n, job.depth))
                                 : 1;

    parallel_for(static_cast<std::size_t>(job.height), [&](std::size_t row) {
        std::uint8_t* out = img.rgb.data() + 3 * row * static_cast<std::size_t>(job.width);
        const double y = y0 - static_cast<double>(row) * step;
        for (int col = 0; col < job.width; ++col) {
            std::complex<double> z(x0 + col * step, y);
            Rgb px{0, 0, 0};
            switch (job.mode) {
                case RenderMode::Escape:
                    px = escape_color(classify(job.f, job.region, z, job.max_iter));
                    break;
                case RenderMode::Basin:
                    px = basin_color(classify(job.f, job.region, z, job.max_iter));
                    break;
                case RenderMode::Itinerary: {
                    ItineraryResult it = itinerary(job.f, job.region, z, job.depth);
                    if (it.escaped) {
                        // escaped early: light shade by how long it survived
                        auto g = static_cast<std::uint8_t>(200 + 8 * (it.escaped_at % 6));
                        px = {g, g, g};
                    } else {
                        int index = 0;
                        for (int s : it.symbols) index = index * job.region.n + s;
                        px = hsv_to_rgb(static_cast<double>(index) / depth_colors, 0.9, 0.95);
                    }
                    break;
                }
            }
            out[3 * col] = px.r;
            out[3 * col + 1] = px.g;
            out[3 * col + 2] = px.b;
        }
    });
    return img;
}

void write_ppm(const Image& img, std::ostream& out) {
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
}

}  // namespace cantor
