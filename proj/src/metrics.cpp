#include "acs/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace acs {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;
constexpr double kPsnrCap = 100.0;

const std::array<double, kWindow * kWindow>& gaussian_window() {
    static const std::array<double, kWindow * kWindow> w = [] {
        std::array<double, kWindow * kWindow> g{};
        const int half = kWindow / 2;
        double sum = 0.0;
        for (int r = 0; r < kWindow; ++r) {
            for (int c = 0; c < kWindow; ++c) {
                const double dr = r - half;
                const double dc = c - half;
                const double v = std::exp(-(dr * dr + dc * dc) / (2.0 * kSigma * kSigma));
                g[static_cast<std::size_t>(r) * kWindow + c] = v;
                sum += v;
            }
        }
        for (double& v : g) v /= sum;
        return g;
    }();
    return w;
}

void require_same_shape(const Image& a, const Image& b, const char* op) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(op) + ": images differ in shape");
    if (a.height <= 0 || a.width <= 0)
        throw std::invalid_argument(std::string(op) + ": empty image");
}

}  // namespace

double mse(const Image& a, const Image& b) {
    require_same_shape(a, b, "mse");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.data.size());
}

double psnr(const Image& a, const Image& b) {
    const double m = mse(a, b);
    if (m == 0.0) return kPsnrCap;
    return 10.0 * std::log10(1.0 / m);
}

double ssim(const Image& a, const Image& b) {
    require_same_shape(a, b, "ssim");
    if (a.height < kWindow || a.width < kWindow)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");

    const auto& w = gaussian_window();
    const int hend = a.height - kWindow + 1;
    const int wend = a.width - kWindow + 1;
    double acc = 0.0;
    for (int y = 0; y < hend; ++y) {
        for (int x = 0; x < wend; ++x) {
            double ma = 0.0, mb = 0.0, maa = 0.0, mbb = 0.0, mab = 0.0;
            for (int r = 0; r < kWindow; ++r) {
                const double* pa = &a.data[static_cast<std::size_t>(y + r) * a.width + x];
                const double* pb = &b.data[static_cast<std::size_t>(y + r) * b.width + x];
                const double* pw = &w[static_cast<std::size_t>(r) * kWindow];
                for (int c = 0; c < kWindow; ++c) {
                    const double va = pa[c];
                    const double vb = pb[c];
                    const double wv = pw[c];
                    ma += wv * va;
                    mb += wv * vb;
                    maa += wv * va * va;
                    mbb += wv * vb * vb;
                    mab += wv * va * vb;
                }
            }
            const double var_a = maa - ma * ma;
            const double var_b = mbb - mb * mb;
            const double cov = mab - ma * mb;
            const double num = (2.0 * ma * mb + kC1) * (2.0 * cov + kC2);
            const double den = (ma * ma + mb * mb + kC1) * (var_a + var_b + kC2);
            acc += num / den;
        }
    }
    return acc / (static_cast<double>(hend) * wend);
}

QualityReport compare_images(const Image& a, const Image& b) {
    QualityReport q;
    q.mse = mse(a, b);
    q.psnr = (q.mse == 0.0) ? kPsnrCap : 10.0 * std::log10(1.0 / q.mse);
    q.ssim = ssim(a, b);
    return q;
}

}  // namespace acs
