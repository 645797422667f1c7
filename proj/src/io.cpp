#include "zoom3d/io.hpp"

#include <png.h>
#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "zoom3d/error.hpp"

namespace zoom3d::io {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError("cannot open " + path.string());
    return f;
}

[[noreturn]] void png_error_handler(png_structp png, png_const_charp msg) {
    auto* buffer = static_cast<std::string*>(png_get_error_ptr(png));
    if (buffer) *buffer = msg;
    png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

// Raw decoded PNG: samples in big-endian for 16-bit depth.
struct PngPixels {
    int width = 0;
    int height = 0;
    int channels = 0;
    int bit_depth = 0;
    std::vector<std::uint8_t> bytes;

    std::uint32_t sample(std::size_t index) const noexcept {
        if (bit_depth == 16) return (static_cast<std::uint32_t>(bytes[2 * index]) << 8) | bytes[2 * index + 1];
        return bytes[index];
    }
};

// `expand` normalizes palettes, low bit depths and alpha away; without it the
// stored layout must already be 8/16-bit gray or RGB(A).
PngPixels decode_png(const std::filesystem::path& path, bool expand, int* stored_depth = nullptr,
                     int* stored_color = nullptr) {
    FilePtr file = open_file(path, "rb");
    std::array<png_byte, 8> sig{};
    if (std::fread(sig.data(), 1, sig.size(), file.get()) != sig.size() || png_sig_cmp(sig.data(), 0, 8) != 0) {
        throw FormatError(path.string() + " is not a PNG file");
    }

    std::string error;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, png_error_handler, png_warning_handler);
    if (!png) throw IoError("libpng: cannot create read struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng: cannot create info struct");
    }

    PngPixels out;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("cannot decode " + path.string() + ": " + error);
    }

    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (stored_depth) *stored_depth = depth;
    if (stored_color) *stored_color = color;

    if (expand) {
        if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
        if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
        png_set_strip_alpha(png);
    }
    png_read_update_info(png, info);

    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.channels = png_get_channels(png, info);
    out.bit_depth = png_get_bit_depth(png, info);
    const std::size_t row_bytes = png_get_rowbytes(png, info);
    out.bytes.resize(row_bytes * out.height);
    rows.resize(out.height);
    for (int y = 0; y < out.height; ++y) rows[y] = out.bytes.data() + row_bytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

void encode_png(const std::filesystem::path& path, int width, int height, int channels, int bit_depth,
                const std::vector<std::uint8_t>& bytes) {
    FilePtr file = open_file(path, "wb");
    std::string error;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, png_error_handler, png_warning_handler);
    if (!png) throw IoError("libpng: cannot create write struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng: cannot create info struct");
    }
    std::vector<png_bytep> rows(height);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("cannot write " + path.string() + ": " + error);
    }
    png_init_io(png, file.get());
    // Fast settings: a single SUB filter and run-length deflate keep encoding
    // cheap on photographic content at a modest size cost.
    png_set_compression_level(png, 1);
    png_set_filter(png, 0, PNG_FILTER_SUB);
    png_set_compression_strategy(png, Z_RLE);
    png_set_IHDR(png, info, width, height, bit_depth, channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t row_bytes = static_cast<std::size_t>(width) * channels * (bit_depth / 8);
    for (int y = 0; y < height; ++y) rows[y] = const_cast<png_bytep>(bytes.data() + row_bytes * y);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fflush(file.get()) != 0) throw IoError("cannot flush " + path.string());
}

std::uint32_t quantize(float v, std::uint32_t max_value) {
    const double scaled = std::clamp(static_cast<double>(v), 0.0, 1.0) * max_value;
    return static_cast<std::uint32_t>(std::lround(scaled));
}

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::array<char, 4> b{static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                                static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
    std::array<unsigned char, 4> b{};
    in.read(reinterpret_cast<char*>(b.data()), 4);
    if (!in) throw FormatError("truncated header");
    return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f32(std::ostream& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

float get_f32(std::istream& in) { return std::bit_cast<float>(get_u32(in)); }

void expect_magic(std::istream& in, const char* magic, const std::filesystem::path& path) {
    char buf[4] = {};
    in.read(buf, 4);
    if (!in || std::memcmp(buf, magic, 4) != 0) {
        throw FormatError(path.string() + ": bad magic, expected " + std::string(magic, 4));
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

}  // namespace

Image read_png(const std::filesystem::path& path) {
    const PngPixels px = decode_png(path, true);
    if (px.channels != 1 && px.channels != 3) {
        throw FormatError(path.string() + ": unsupported channel count " + std::to_string(px.channels));
    }
    const double scale = 1.0 / (px.bit_depth == 16 ? 65535.0 : 255.0);
    std::vector<float> data(static_cast<std::size_t>(px.width) * px.height * px.channels);
    for (std::size_t k = 0; k < data.size(); ++k) data[k] = static_cast<float>(px.sample(k) * scale);
    return Image(px.width, px.height, px.channels, std::move(data));
}

void write_png(const std::filesystem::path& path, const Image& img, int bit_depth) {
    if (img.empty()) throw InvalidArgument("write_png: empty image");
    if (img.channels() != 1 && img.channels() != 3) throw InvalidArgument("write_png: need 1 or 3 channels");
    if (bit_depth != 8 && bit_depth != 16) throw InvalidArgument("write_png: bit depth must be 8 or 16");

    const auto src = img.data();
    std::vector<std::uint8_t> bytes(src.size() * (bit_depth / 8));
    if (bit_depth == 8) {
        for (std::size_t k = 0; k < src.size(); ++k) bytes[k] = static_cast<std::uint8_t>(quantize(src[k], 255));
    } else {
        for (std::size_t k = 0; k < src.size(); ++k) {
            const std::uint32_t q = quantize(src[k], 65535);
            bytes[2 * k] = static_cast<std::uint8_t>(q >> 8);
            bytes[2 * k + 1] = static_cast<std::uint8_t>(q & 0xFF);
        }
    }
    encode_png(path, img.width(), img.height(), img.channels(), bit_depth, bytes);
}

void write_mask_png(const std::filesystem::path& path, const Mask& mask) {
    std::vector<std::uint8_t> bytes(mask.pixel_count());
    const auto m = mask.data();
    std::transform(m.begin(), m.end(), bytes.begin(), [](std::uint8_t v) { return v ? 255 : 0; });
    encode_png(path, mask.width(), mask.height(), 1, 8, bytes);
}

Image read_pgm(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string magic;
    in >> magic;
    if (magic != "P5" && magic != "P2") throw FormatError(path.string() + " is not a PGM file");

    auto next_int = [&]() {
        while (true) {
            in >> std::ws;
            if (in.peek() == '#') {
                std::string comment;
                std::getline(in, comment);
                continue;
            }
            long v = -1;
            if (!(in >> v)) throw FormatError(path.string() + ": malformed PGM header");
            return v;
        }
    };
    const long width = next_int();
    const long height = next_int();
    const long maxval = next_int();
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
        throw FormatError(path.string() + ": invalid PGM header values");
    }

    const std::size_t count = static_cast<std::size_t>(width) * height;
    std::vector<float> data(count);
    const double scale = 1.0 / static_cast<double>(maxval);
    if (magic == "P5") {
        in.get();  // single whitespace after maxval
        const int bytes_per = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(count * bytes_per);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (!in) throw FormatError(path.string() + ": truncated PGM data");
        for (std::size_t k = 0; k < count; ++k) {
            const unsigned v = bytes_per == 2 ? (raw[2 * k] << 8) | raw[2 * k + 1] : raw[k];
            if (v > static_cast<unsigned>(maxval)) throw FormatError(path.string() + ": sample exceeds maxval");
            data[k] = static_cast<float>(v * scale);
        }
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            long v = -1;
            if (!(in >> v) || v < 0 || v > maxval) throw FormatError(path.string() + ": bad PGM sample");
            data[k] = static_cast<float>(v * scale);
        }
    }
    return Image(static_cast<int>(width), static_cast<int>(height), 1, std::move(data));
}

Image read_image(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    char head[2] = {};
    in.read(head, 2);
    if (in && head[0] == 'P' && (head[1] == '5' || head[1] == '2')) return read_pgm(path);
    return read_png(path);
}

DisparityMap load_kitti_disparity(const std::filesystem::path& path) {
    int depth = 0;
    int color = 0;
    const PngPixels px = decode_png(path, false, &depth, &color);
    if (depth != 16 || color != PNG_COLOR_TYPE_GRAY) {
        throw FormatError(path.string() + ": KITTI disparity must be a 16-bit single-channel PNG");
    }
    std::vector<float> values(static_cast<std::size_t>(px.width) * px.height);
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = static_cast<float>(px.sample(k) / 256.0);
    return DisparityMap::raw(px.width, px.height, std::move(values));
}

void write_kitti_disparity(const std::filesystem::path& path, const DisparityMap& d) {
    const auto values = d.values();
    std::vector<std::uint8_t> bytes(values.size() * 2);
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double raw = std::clamp(std::round(static_cast<double>(values[k]) * 256.0), 0.0, 65535.0);
        const auto q = static_cast<std::uint32_t>(raw);
        bytes[2 * k] = static_cast<std::uint8_t>(q >> 8);
        bytes[2 * k + 1] = static_cast<std::uint8_t>(q & 0xFF);
    }
    encode_png(path, d.width(), d.height(), 1, 16, bytes);
}

void write_flow(const std::filesystem::path& path, const FlowField& flow) {
    std::ofstream out = open_out(path);
    out.write("Z3FL", 4);
    put_u32(out, static_cast<std::uint32_t>(flow.width()));
    put_u32(out, static_cast<std::uint32_t>(flow.height()));
    for (int plane = 0; plane < 2; ++plane) {
        for (int j = 0; j < flow.height(); ++j) {
            for (int i = 0; i < flow.width(); ++i) put_f32(out, plane == 0 ? flow.x(i, j) : flow.y(i, j));
        }
    }
    if (!out) throw IoError("cannot write " + path.string());
}

FlowField read_flow(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    expect_magic(in, "Z3FL", path);
    const std::uint32_t w = get_u32(in);
    const std::uint32_t h = get_u32(in);
    if (w == 0 || h == 0 || w > (1u << 16) || h > (1u << 16)) throw FormatError(path.string() + ": bad flow size");
    FlowField flow(static_cast<int>(w), static_cast<int>(h));
    for (int plane = 0; plane < 2; ++plane) {
        for (int j = 0; j < flow.height(); ++j) {
            for (int i = 0; i < flow.width(); ++i) (plane == 0 ? flow.x(i, j) : flow.y(i, j)) = get_f32(in);
        }
    }
    return flow;
}

void write_volume(const std::filesystem::path& path, const ChannelVolume& volume) {
    std::ofstream out = open_out(path);
    out.write("Z3SV", 4);
    put_u32(out, static_cast<std::uint32_t>(volume.width()));
    put_u32(out, static_cast<std::uint32_t>(volume.height()));
    put_u32(out, static_cast<std::uint32_t>(volume.channels()));
    std::vector<char> plane(volume.pixel_count() * 4);
    for (int n = 0; n < volume.channels(); ++n) {
        std::size_t k = 0;
        for (int y = 0; y < volume.height(); ++y) {
            for (int x = 0; x < volume.width(); ++x, ++k) {
                const std::uint32_t bits = std::bit_cast<std::uint32_t>(volume.at(x, y, n));
                for (int b = 0; b < 4; ++b) plane[4 * k + b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
            }
        }
        out.write(plane.data(), static_cast<std::streamsize>(plane.size()));
    }
    if (!out) throw IoError("cannot write " + path.string());
}

ChannelVolume read_volume(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    expect_magic(in, "Z3SV", path);
    const std::uint32_t w = get_u32(in);
    const std::uint32_t h = get_u32(in);
    const std::uint32_t n = get_u32(in);
    if (w == 0 || h == 0 || n == 0 || w > (1u << 16) || h > (1u << 16) || n > (1u << 16)) {
        throw FormatError(path.string() + ": bad volume size");
    }
    ChannelVolume volume(static_cast<int>(w), static_cast<int>(h), static_cast<int>(n));
    for (int c = 0; c < volume.channels(); ++c) {
        for (int y = 0; y < volume.height(); ++y) {
            for (int x = 0; x < volume.width(); ++x) volume.at(x, y, c) = get_f32(in);
        }
    }
    return volume;
}

void write_volume_pngs(const std::filesystem::path& dir, const std::string& stem, const ChannelVolume& volume) {
    for (int n = 0; n < volume.channels(); ++n) {
        char name[64];
        std::snprintf(name, sizeof(name), "_%02d.png", n);
        write_png(dir / (stem + name), volume.channel_image(n), 8);
    }
}

}  // namespace zoom3d::io
