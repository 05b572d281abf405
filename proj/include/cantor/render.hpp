#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "cantor/dynamics.hpp"

namespace cantor {

enum class RenderMode { Escape, Basin, Itinerary };

struct RenderJob {
    MapFunc f;
    RegionMap region;
    std::complex<double> center{0.0, 0.0};
    double half_width = 1.0;  // horizontal half-extent; pixels are square
    int width = 512;
    int height = 512;
    RenderMode mode = RenderMode::Basin;
    int depth = 3;        // itinerary prefix length, <= 6
    int max_iter = 1000;
};

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // rows top to bottom

    const std::uint8_t* pixel(int x, int y) const {
        return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
};

// Per-pixel classification, row-parallel into a preallocated buffer, so the
// output is identical regardless of thread count.
Image render(const RenderJob& job);

// P6 layout: "P6\n{w} {h}\n255\n" then raw RGB rows top to bottom.
void write_ppm(const Image& img, std::ostream& out);

struct Rgb {
    std::uint8_t r, g, b;
};

// Basin palette: inner-trap lineage gray, outer-trap lineage white,
// undecided (Julia neighborhood) black.
inline constexpr Rgb kBasinInner{128, 128, 128};
inline constexpr Rgb kBasinOuter{255, 255, 255};
inline constexpr Rgb kBasinJulia{0, 0, 0};

}  // namespace cantor
