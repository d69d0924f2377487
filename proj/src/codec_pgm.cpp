#include "suace/codec.hpp"

#include <cctype>
#include <cstdio>
#include <cstring>
#include <limits>

namespace suace {

namespace {

// Cursor over the header section of a PNM byte stream.
struct HeaderScanner {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    // Skip whitespace and '#' comments (comments run to end of line).
    void skip_separators() {
        while (pos < bytes.size()) {
            std::uint8_t c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
            } else if (std::isspace(c)) {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int() {
        skip_separators();
        if (pos >= bytes.size() || !std::isdigit(bytes[pos]))
            throw FormatError("pgm: expected integer in header");
        long v = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            v = v * 10 + (bytes[pos] - '0');
            if (v > std::numeric_limits<int>::max())
                throw FormatError("pgm: header value out of range");
            ++pos;
        }
        return v;
    }
};

} // namespace

GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw FormatError("pgm: missing P5 magic");
    HeaderScanner scan{bytes, 2};
    long w = scan.next_int();
    long h = scan.next_int();
    long maxval = scan.next_int();
    if (w <= 0 || h <= 0)
        throw FormatError("pgm: non-positive dimensions");
    if (maxval != 255)
        throw UnsupportedDepthError("pgm: only maxval 255 is supported, got " +
                                    std::to_string(maxval));
    // Exactly one whitespace byte separates the header from the payload.
    if (scan.pos >= bytes.size() || !std::isspace(bytes[scan.pos]))
        throw FormatError("pgm: missing separator after maxval");
    ++scan.pos;

    std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::size_t have = bytes.size() - scan.pos;
    if (have < need)
        throw TruncationError("pgm: payload holds " + std::to_string(have) +
                              " bytes, header promises " + std::to_string(need));
    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    std::memcpy(img.samples.data(), bytes.data() + scan.pos, need);
    // Trailing bytes beyond the payload are ignored.
    return img;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    char header[64];
    int n = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n",
                          img.width, img.height);
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(n) + img.samples.size());
    out.insert(out.end(), header, header + n);
    out.insert(out.end(), img.samples.begin(), img.samples.end());
    return out;
}

GrayImage load_pgm(const std::string& path) {
    return decode_pgm(read_file_bytes(path));
}

void save_pgm(const std::string& path, const GrayImage& img) {
    write_file_bytes(path, encode_pgm(img));
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f)
        throw IoError("cannot open " + path + " for reading");
    std::vector<std::uint8_t> bytes;
    std::uint8_t buf[1 << 16];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0)
        bytes.insert(bytes.end(), buf, buf + got);
    bool bad = std::ferror(f);
    std::fclose(f);
    if (bad)
        throw IoError("read error on " + path);
    return bytes;
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f)
        throw IoError("cannot open " + path + " for writing");
    std::size_t put = std::fwrite(bytes.data(), 1, bytes.size(), f);
    bool bad = (put != bytes.size()) || std::fclose(f) != 0;
    if (bad)
        throw IoError("write error on " + path);
    return;
}

GrayImage load_image(const std::string& path) {
    std::vector<std::uint8_t> bytes = read_file_bytes(path);
    static const std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), png_sig, 8) == 0)
        return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5')
        return decode_pgm(bytes);
    throw FormatError(path + ": not a PNG or binary PGM file");
}

void save_image(const std::string& path, const GrayImage& img) {
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    for (auto& c : ext)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == "png")
        save_png(path, img);
    else
        save_pgm(path, img);
}

} // namespace suace
