#include "sous/png.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "sous/rng.hpp"

namespace sous {

Image::Image(int w, int h, Rgb fill) : width(w), height(h) {
    rgb.resize(static_cast<size_t>(w) * h * 3);
    for (size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = fill[0];
        rgb[i + 1] = fill[1];
        rgb[i + 2] = fill[2];
    }
}

uint64_t image_hash(const Image& img) {
    std::string_view bytes(reinterpret_cast<const char*>(img.rgb.data()),
                           img.rgb.size());
    uint64_t h = fnv1a(std::to_string(img.width) + "x" +
                       std::to_string(img.height));
    return fnv1a(bytes, h);
}

namespace {

void put_be32(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

void put_chunk(std::string& out, const char type[4], const std::string& data) {
    put_be32(out, static_cast<uint32_t>(data.size()));
    std::string body(type, 4);
    body += data;
    out += body;
    uint32_t crc = static_cast<uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(body.data()),
              static_cast<uInt>(body.size())));
    put_be32(out, crc);
}

}  // namespace

std::string encode_png(const Image& img) {
    std::string out("\x89PNG\r\n\x1a\n", 8);

    std::string ihdr;
    put_be32(ihdr, static_cast<uint32_t>(img.width));
    put_be32(ihdr, static_cast<uint32_t>(img.height));
    ihdr += '\x08';  // bit depth
    ihdr += '\x02';  // truecolor
    ihdr += '\x00';
    ihdr += '\x00';
    ihdr += '\x00';
    put_chunk(out, "IHDR", ihdr);

    // Raw scanlines with filter byte 0.
    std::string raw;
    raw.reserve(static_cast<size_t>(img.height) * (img.width * 3 + 1));
    for (int y = 0; y < img.height; ++y) {
        raw += '\x00';
        raw.append(reinterpret_cast<const char*>(img.rgb.data()) +
                       static_cast<size_t>(y) * img.width * 3,
                   static_cast<size_t>(img.width) * 3);
    }
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::string idat(bound, '\0');
    if (compress2(reinterpret_cast<Bytef*>(idat.data()), &bound,
                  reinterpret_cast<const Bytef*>(raw.data()),
                  static_cast<uLong>(raw.size()), 6) != Z_OK) {
        throw std::runtime_error("png: zlib compression failed");
    }
    idat.resize(bound);
    put_chunk(out, "IDAT", idat);
    put_chunk(out, "IEND", "");
    return out;
}

void write_png(const Image& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("png: cannot open " + path);
    std::string bytes = encode_png(img);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("png: write failed for " + path);
}

}  // namespace sous
