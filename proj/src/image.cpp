#include "acs/image.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace acs {

namespace {

bool is_pgm_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Skips whitespace and '#' comment lines between header tokens.
std::size_t skip_separators(const std::string& buf, std::size_t pos) {
    while (pos < buf.size()) {
        if (is_pgm_space(buf[pos])) {
            ++pos;
        } else if (buf[pos] == '#') {
            while (pos < buf.size() && buf[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    return pos;
}

long parse_header_int(const std::string& buf, std::size_t& pos, const char* what) {
    pos = skip_separators(buf, pos);
    if (pos >= buf.size() || buf[pos] < '0' || buf[pos] > '9')
        throw std::runtime_error(std::string("pgm: malformed header, expected ") + what);
    long v = 0;
    while (pos < buf.size() && buf[pos] >= '0' && buf[pos] <= '9') {
        v = v * 10 + (buf[pos] - '0');
        if (v > 1'000'000'000L)
            throw std::runtime_error(std::string("pgm: malformed header, ") + what + " out of range");
        ++pos;
    }
    return v;
}

}  // namespace

Image make_image(int height, int width, double fill) {
    if (height <= 0 || width <= 0)
        throw std::invalid_argument("image dimensions must be positive");
    Image img;
    img.height = height;
    img.width = width;
    img.data.assign(static_cast<std::size_t>(height) * width, fill);
    return img;
}

Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("pgm: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (buf.size() < 2 || buf[0] != 'P' || buf[1] != '5') {
        if (buf.size() >= 2 && buf[0] == 'P')
            throw std::runtime_error("pgm: unsupported format (only binary P5 is handled)");
        throw std::runtime_error("pgm: bad magic, not a PGM file");
    }

    std::size_t pos = 2;
    long w = parse_header_int(buf, pos, "width");
    long h = parse_header_int(buf, pos, "height");
    long maxval = parse_header_int(buf, pos, "maxval");
    if (w <= 0 || h <= 0)
        throw std::runtime_error("pgm: malformed header, non-positive dimensions");
    if (maxval != 255)
        throw std::runtime_error("pgm: unsupported maxval (only 8-bit, maxval 255)");
    if (pos >= buf.size() || !is_pgm_space(buf[pos]))
        throw std::runtime_error("pgm: malformed header, missing separator before pixel data");
    ++pos;  // exactly one whitespace byte before the raster

    const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (buf.size() - pos < need)
        throw std::runtime_error("pgm: truncated payload");

    Image img = make_image(static_cast<int>(h), static_cast<int>(w));
    for (std::size_t i = 0; i < need; ++i)
        img.data[i] = static_cast<unsigned char>(buf[pos + i]) / 255.0;
    return img;
}

void save_pgm(const Image& img, const std::string& path) {
    if (img.height <= 0 || img.width <= 0 ||
        img.data.size() != static_cast<std::size_t>(img.height) * img.width)
        throw std::invalid_argument("pgm: image shape does not match its buffer");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("pgm: cannot write " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::string bytes(img.data.size(), '\0');
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        double v = std::floor(img.data[i] * 255.0 + 0.5);  // round half up
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        bytes[i] = static_cast<char>(static_cast<unsigned char>(v));
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("pgm: short write to " + path);
}

BlockLayout layout_for(int height, int width, int block) {
    if (height <= 0 || width <= 0)
        throw std::invalid_argument("layout: image dimensions must be positive");
    if (block <= 0)
        throw std::invalid_argument("layout: block size must be positive");
    BlockLayout l;
    l.block = block;
    l.rows = (height + block - 1) / block;
    l.cols = (width + block - 1) / block;
    l.orig_height = height;
    l.orig_width = width;
    return l;
}

BlockGrid partition(const Image& img, int block) {
    BlockGrid grid;
    grid.layout = layout_for(img.height, img.width, block);
    const int b = block;
    grid.blocks.resize(static_cast<std::size_t>(grid.layout.count()));
    for (int br = 0; br < grid.layout.rows; ++br) {
        for (int bc = 0; bc < grid.layout.cols; ++bc) {
            std::vector<double>& tile = grid.blocks[static_cast<std::size_t>(br) * grid.layout.cols + bc];
            tile.resize(static_cast<std::size_t>(b) * b);
            for (int r = 0; r < b; ++r) {
                // edge replication: out-of-range pixels take the nearest in-range value
                int sr = br * b + r;
                if (sr >= img.height) sr = img.height - 1;
                for (int c = 0; c < b; ++c) {
                    int sc = bc * b + c;
                    if (sc >= img.width) sc = img.width - 1;
                    tile[static_cast<std::size_t>(r) * b + c] = img.at(sr, sc);
                }
            }
        }
    }
    return grid;
}

Image assemble(const BlockGrid& grid) {
    const BlockLayout& l = grid.layout;
    if (grid.blocks.size() != static_cast<std::size_t>(l.count()))
        throw std::invalid_argument("assemble: block count does not match layout");
    const std::size_t tile_len = static_cast<std::size_t>(l.block) * l.block;
    for (const auto& t : grid.blocks)
        if (t.size() != tile_len)
            throw std::invalid_argument("assemble: tile size does not match layout");

    Image img = make_image(l.orig_height, l.orig_width);
    for (int br = 0; br < l.rows; ++br) {
        for (int bc = 0; bc < l.cols; ++bc) {
            const std::vector<double>& tile = grid.blocks[static_cast<std::size_t>(br) * l.cols + bc];
            for (int r = 0; r < l.block; ++r) {
                const int dr = br * l.block + r;
                if (dr >= l.orig_height) break;
                for (int c = 0; c < l.block; ++c) {
                    const int dc = bc * l.block + c;
                    if (dc >= l.orig_width) break;
                    img.at(dr, dc) = tile[static_cast<std::size_t>(r) * l.block + c];
                }
            }
        }
    }
    return img;
}

}  // namespace acs
