#include "wearprompt/image_io.hpp"

#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "wearprompt/error.hpp"

namespace wearprompt {
namespace {

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
    if (!f) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    return f;
}

std::string color_type_name(int color_type) {
    switch (color_type) {
    case PNG_COLOR_TYPE_GRAY: return "grayscale";
    case PNG_COLOR_TYPE_GRAY_ALPHA: return "grayscale+alpha";
    case PNG_COLOR_TYPE_PALETTE: return "palette";
    case PNG_COLOR_TYPE_RGB: return "rgb";
    case PNG_COLOR_TYPE_RGB_ALPHA: return "rgb+alpha";
    default: return "unknown(" + std::to_string(color_type) + ")";
    }
}

struct PngRead {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngRead() { png_destroy_read_struct(&png, info != nullptr ? &info : nullptr, nullptr); }
};

struct PngWrite {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWrite() { png_destroy_write_struct(&png, info != nullptr ? &info : nullptr); }
};

// 8-bit samples with 1 (gray) or 3 (rgb) channels.
struct RawImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> samples;
};

RawImage read_png(const std::filesystem::path& path, bool allow_rgb) {
    auto file = open_file(path, "rb");
    PngRead h;
    h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (h.png == nullptr) {
        throw Error(ErrorKind::Io, "libpng initialisation failed");
    }
    h.info = png_create_info_struct(h.png);
    if (h.info == nullptr) {
        throw Error(ErrorKind::Io, "libpng initialisation failed");
    }

    RawImage raw;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(h.png))) {
        throw Error(ErrorKind::Format, "corrupt PNG data in " + path.string());
    }
    png_init_io(h.png, file.get());
    png_read_info(h.png, h.info);

    const int bit_depth = png_get_bit_depth(h.png, h.info);
    const int color_type = png_get_color_type(h.png, h.info);
    if (bit_depth != 8) {
        throw Error(ErrorKind::Format,
                    path.string() + ": unsupported bit depth " + std::to_string(bit_depth) + " (expected 8)");
    }
    if (color_type == PNG_COLOR_TYPE_GRAY) {
        raw.channels = 1;
    } else if (allow_rgb && color_type == PNG_COLOR_TYPE_RGB) {
        raw.channels = 3;
    } else {
        throw Error(ErrorKind::Format, path.string() + ": unsupported color type " + color_type_name(color_type) +
                                           (allow_rgb ? " (expected grayscale or rgb)" : " (expected grayscale)"));
    }
    png_set_interlace_handling(h.png);
    png_read_update_info(h.png, h.info);

    raw.width = static_cast<int>(png_get_image_width(h.png, h.info));
    raw.height = static_cast<int>(png_get_image_height(h.png, h.info));
    const std::size_t stride = static_cast<std::size_t>(raw.width) * static_cast<std::size_t>(raw.channels);
    raw.samples.resize(stride * static_cast<std::size_t>(raw.height));
    rows.resize(static_cast<std::size_t>(raw.height));
    for (int r = 0; r < raw.height; ++r) {
        rows[static_cast<std::size_t>(r)] = raw.samples.data() + stride * static_cast<std::size_t>(r);
    }
    png_read_image(h.png, rows.data());
    png_read_end(h.png, nullptr);
    return raw;
}

void write_png(const RawImage& raw, const std::filesystem::path& path) {
    auto file = open_file(path, "wb");
    PngWrite h;
    h.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (h.png == nullptr) {
        throw Error(ErrorKind::Io, "libpng initialisation failed");
    }
    h.info = png_create_info_struct(h.png);
    if (h.info == nullptr) {
        throw Error(ErrorKind::Io, "libpng initialisation failed");
    }
    const std::size_t stride = static_cast<std::size_t>(raw.width) * static_cast<std::size_t>(raw.channels);
    std::vector<png_bytep> rows(static_cast<std::size_t>(raw.height));
    for (int r = 0; r < raw.height; ++r) {
        rows[static_cast<std::size_t>(r)] = const_cast<png_bytep>(raw.samples.data() + stride * static_cast<std::size_t>(r));
    }
    if (setjmp(png_jmpbuf(h.png))) {
        throw Error(ErrorKind::Io, "failed writing PNG " + path.string());
    }
    png_init_io(h.png, file.get());
    png_set_IHDR(h.png, h.info, static_cast<png_uint_32>(raw.width), static_cast<png_uint_32>(raw.height), 8,
                 raw.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(h.png, h.info);
    png_write_image(h.png, rows.data());
    png_write_end(h.png, nullptr);
}

// Reads the whitespace/comment separated header tokens of a binary PNM file.
int read_pnm_int(std::istream& in, const std::filesystem::path& path, const char* what) {
    while (true) {
        const int ch = in.peek();
        if (ch == '#') {
            std::string ignored;
            std::getline(in, ignored);
        } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            in.get();
        } else {
            break;
        }
    }
    int value = -1;
    if (!(in >> value) || value < 0) {
        throw Error(ErrorKind::Format, path.string() + ": malformed PNM header field " + what);
    }
    return value;
}

RawImage read_pnm(const std::filesystem::path& path, int channels) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    char magic[2] = {};
    in.read(magic, 2);
    RawImage raw;
    raw.channels = channels;
    raw.width = read_pnm_int(in, path, "width");
    raw.height = read_pnm_int(in, path, "height");
    const int maxval = read_pnm_int(in, path, "maxval");
    if (maxval != 255) {
        throw Error(ErrorKind::Format,
                    path.string() + ": unsupported bit depth, maxval " + std::to_string(maxval) + " (expected 255)");
    }
    in.get();  // single whitespace before raster
    raw.samples.resize(static_cast<std::size_t>(raw.width) * static_cast<std::size_t>(raw.height) *
                       static_cast<std::size_t>(channels));
    in.read(reinterpret_cast<char*>(raw.samples.data()), static_cast<std::streamsize>(raw.samples.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.samples.size())) {
        throw Error(ErrorKind::Format, path.string() + ": truncated raster");
    }
    return raw;
}

void write_pnm(const RawImage& raw, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out << (raw.channels == 1 ? "P5" : "P6") << '\n' << raw.width << ' ' << raw.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(raw.samples.data()), static_cast<std::streamsize>(raw.samples.size()));
    if (!out) {
        throw Error(ErrorKind::Io, "failed writing " + path.string());
    }
}

enum class Container { Png, Pgm, Ppm, Unknown };

Container sniff(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    unsigned char head[8] = {};
    in.read(reinterpret_cast<char*>(head), 8);
    const auto got = in.gcount();
    if (got >= 8 && png_sig_cmp(head, 0, 8) == 0) {
        return Container::Png;
    }
    if (got >= 2 && head[0] == 'P' && head[1] == '5') {
        return Container::Pgm;
    }
    if (got >= 2 && head[0] == 'P' && head[1] == '6') {
        return Container::Ppm;
    }
    return Container::Unknown;
}

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    for (auto& c : ext) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return ext;
}

}  // namespace

GrayLevels read_gray_levels(const std::filesystem::path& path) {
    RawImage raw;
    switch (sniff(path)) {
    case Container::Png: raw = read_png(path, false); break;
    case Container::Pgm: raw = read_pnm(path, 1); break;
    case Container::Ppm:
        throw Error(ErrorKind::Format, path.string() + ": unsupported color type rgb (expected grayscale)");
    case Container::Unknown:
        throw Error(ErrorKind::Format, path.string() + ": unsupported file format (expected PNG or PGM P5)");
    }
    if (raw.width < 1 || raw.height < 1) {
        throw Error(ErrorKind::Format, path.string() + ": empty raster");
    }
    return {raw.width, raw.height, std::move(raw.samples)};
}

void write_gray_levels(const GrayLevels& image, const std::filesystem::path& path) {
    RawImage raw{image.width, image.height, 1, image.levels};
    if (lower_extension(path) == ".pgm") {
        write_pnm(raw, path);
    } else {
        write_png(raw, path);
    }
}

BinaryMask load_mask(const std::filesystem::path& path, int threshold) {
    if (threshold < 0 || threshold > 255) {
        throw Error(ErrorKind::Precondition, "threshold " + std::to_string(threshold) + " outside [0, 255]");
    }
    auto gray = read_gray_levels(path);
    for (auto& v : gray.levels) {
        v = v >= threshold ? 1 : 0;
    }
    return BinaryMask(gray.width, gray.height, std::move(gray.levels));
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
    GrayLevels gray{mask.width(), mask.height(), {}};
    gray.levels.reserve(mask.cells().size());
    for (auto c : mask.cells()) {
        gray.levels.push_back(c != 0 ? 255 : 0);
    }
    write_gray_levels(gray, path);
}

GrayMask load_gray_mask(const std::filesystem::path& path) {
    const auto gray = read_gray_levels(path);
    return GrayMask::from_levels(gray.width, gray.height, gray.levels);
}

RgbImage load_rgb(const std::filesystem::path& path) {
    RawImage raw;
    switch (sniff(path)) {
    case Container::Png: raw = read_png(path, true); break;
    case Container::Pgm: raw = read_pnm(path, 1); break;
    case Container::Ppm: raw = read_pnm(path, 3); break;
    case Container::Unknown:
        throw Error(ErrorKind::Format, path.string() + ": unsupported file format (expected PNG, PGM or PPM)");
    }
    RgbImage image(raw.width, raw.height);
    if (raw.channels == 3) {
        image.pixels = std::move(raw.samples);
    } else {
        for (std::size_t i = 0; i < raw.samples.size(); ++i) {
            image.pixels[3 * i] = image.pixels[3 * i + 1] = image.pixels[3 * i + 2] = raw.samples[i];
        }
    }
    return image;
}

void save_rgb(const RgbImage& image, const std::filesystem::path& path) {
    RawImage raw{image.width, image.height, 3, image.pixels};
    if (lower_extension(path) == ".ppm") {
        write_pnm(raw, path);
    } else {
        write_png(raw, path);
    }
}

}  // namespace wearprompt
