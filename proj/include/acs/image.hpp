#pragma once

#include <string>
#include <vector>

namespace acs {

// Grayscale raster, row-major, intensities in [0, 1].
struct Image {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * width + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * width + c]; }
    bool same_shape(const Image& o) const { return height == o.height && width == o.width; }
};

Image make_image(int height, int width, double fill = 0.0);

// Geometry of a B-sized tiling. The tiling covers the padded extent
// (rows*B x cols*B); orig_* remember the unpadded image size.
struct BlockLayout {
    int block = 0;
    int rows = 0;
    int cols = 0;
    int orig_height = 0;
    int orig_width = 0;

    int count() const { return rows * cols; }
};

BlockLayout layout_for(int height, int width, int block);

// Partitioned image: layout plus row-major list of BxB tiles, each tile
// itself row-major with B*B entries.
struct BlockGrid {
    BlockLayout layout;
    std::vector<std::vector<double>> blocks;
};

// Loads an 8-bit binary PGM (P5, maxval 255); bytes map to v/255.
Image load_pgm(const std::string& path);

// Writes an 8-bit binary PGM; intensities are rounded half-up to bytes and
// clamped to [0, 255].
void save_pgm(const Image& img, const std::string& path);

// Splits into BxB tiles, padding the right/bottom edges by replicating the
// last row/column so every tile is complete.
BlockGrid partition(const Image& img, int block);

// Inverse of partition: stitches tiles and crops back to the original size.
Image assemble(const BlockGrid& grid);

}  // namespace acs
