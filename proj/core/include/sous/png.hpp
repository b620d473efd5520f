#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sous {

using Rgb = std::array<uint8_t, 3>;

struct Image {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> rgb;  // row-major, 3 bytes per pixel

    Image() = default;
    Image(int w, int h, Rgb fill = {0, 0, 0});

    void set(int x, int y, Rgb c) {
        size_t i = (static_cast<size_t>(y) * width + x) * 3;
        rgb[i] = c[0];
        rgb[i + 1] = c[1];
        rgb[i + 2] = c[2];
    }
    Rgb get(int x, int y) const {
        size_t i = (static_cast<size_t>(y) * width + x) * 3;
        return {rgb[i], rgb[i + 1], rgb[i + 2]};
    }
};

// Content hash over the raw pixels (format-independent golden identity).
uint64_t image_hash(const Image& img);

std::string encode_png(const Image& img);
void write_png(const Image& img, const std::string& path);

}  // namespace sous
