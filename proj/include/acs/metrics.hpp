#pragma once

#include "acs/image.hpp"

namespace acs {

struct QualityReport {
    double mse = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
};

// Mean squared error over all pixels; images must share a shape.
double mse(const Image& a, const Image& b);

// 10*log10(1/mse) with peak 1. Identical images report the cap value 100 dB.
double psnr(const Image& a, const Image& b);

// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), C1=(0.01)^2,
// C2=(0.03)^2 for unit peak, averaged over fully interior window positions.
// Requires min(H, W) >= 11.
double ssim(const Image& a, const Image& b);

QualityReport compare_images(const Image& a, const Image& b);

}  // namespace acs
