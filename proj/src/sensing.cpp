#include "acs/sensing.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace acs {

namespace {

constexpr int kMaxBlock = 64;
constexpr int kMaxRedraws = 8;
// A raw Gaussian row has norm ~B; anything this small after projection means
// the draw was (numerically) inside the span of the previous rows.
constexpr double kDependenceTol = 1e-8;

struct GaussianStream {
    std::mt19937_64 engine;
    std::normal_distribution<double> dist;

    explicit GaussianStream(std::uint64_t seed) : engine(seed), dist(0.0, 1.0) {}

    void fill(double* dst, int n) {
        for (int i = 0; i < n; ++i) dst[i] = dist(engine);
    }
};

double dot(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

// Projects previously-finalized rows [0, upto) out of `v`, one at a time in
// order. Used for fresh rows only; the steady-state paths below fold this
// into their own loops.
void project_out(double* v, const double* rows, int upto, int n) {
    for (int j = 0; j < upto; ++j) {
        const double* q = rows + static_cast<std::size_t>(j) * n;
        const double c = dot(v, q, n);
        for (int k = 0; k < n; ++k) v[k] -= c * q[k];
    }
}

// Normalizes row i in place, redrawing it from the stream when it is
// numerically dependent on rows [0, i). Returns false only by throwing.
void finalize_row(std::vector<double>& m, int i, int n, GaussianStream& gauss) {
    double* ri = m.data() + static_cast<std::size_t>(i) * n;
    int attempts = 0;
    for (;;) {
        const double nrm = std::sqrt(dot(ri, ri, n));
        if (nrm > kDependenceTol) {
            const double inv = 1.0 / nrm;
            for (int k = 0; k < n; ++k) ri[k] *= inv;
            return;
        }
        if (++attempts > kMaxRedraws)
            throw std::runtime_error("build_matrix: row " + std::to_string(i) +
                                     " stayed dependent after " + std::to_string(kMaxRedraws) +
                                     " redraws");
        gauss.fill(ri, n);
        project_out(ri, m.data(), i, n);
    }
}

// Reference path: classic left-looking modified Gram-Schmidt. Each row is
// orthogonalized against all finished rows, then normalized.
void orthonormalize_serial(std::vector<double>& m, int n, GaussianStream& gauss) {
    for (int i = 0; i < n; ++i) {
        double* ri = m.data() + static_cast<std::size_t>(i) * n;
        project_out(ri, m.data(), i, n);
        finalize_row(m, i, n, gauss);
    }
}

// OpenMP path: right-looking update. After row i is finalized its projection
// is removed from every trailing row in parallel. Each trailing row sees the
// exact same subtraction sequence as in the serial path, so the two paths are
// bit-identical.
void orthonormalize_parallel(std::vector<double>& m, int n, GaussianStream& gauss) {
    for (int i = 0; i < n; ++i) {
        finalize_row(m, i, n, gauss);
        const double* qi = m.data() + static_cast<std::size_t>(i) * n;
#pragma omp parallel for schedule(static)
        for (int j = i + 1; j < n; ++j) {
            double* rj = m.data() + static_cast<std::size_t>(j) * n;
            const double c = dot(rj, qi, n);
            for (int k = 0; k < n; ++k) rj[k] -= c * qi[k];
        }
    }
}

}  // namespace

SensingMatrix::SensingMatrix(int block, std::uint64_t seed, std::vector<double> rows)
    : block_(block), dim_(block * block), seed_(seed), rows_(std::move(rows)) {
    if (rows_.size() != static_cast<std::size_t>(dim_) * dim_)
        throw std::invalid_argument("SensingMatrix: storage does not match block size");
}

SensingMatrix build_matrix(std::uint64_t seed, int block, Exec exec) {
    if (block < 1 || block > kMaxBlock)
        throw std::invalid_argument("build_matrix: block size must be in [1, 64]");
    const int n = block * block;
    std::vector<double> m(static_cast<std::size_t>(n) * n);
    GaussianStream gauss(seed);
    gauss.fill(m.data(), n * n);  // row-major draw order
    if (exec == Exec::serial)
        orthonormalize_serial(m, n, gauss);
    else
        orthonormalize_parallel(m, n, gauss);
    return SensingMatrix(block, seed, std::move(m));
}

std::vector<double> measure(std::span<const double> tile, const SensingMatrix& mat,
                            int first_row, int last_row) {
    const int n = mat.dim();
    if (tile.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("measure: tile length does not match the operator");
    if (first_row < 1 || last_row < first_row || last_row > n)
        throw std::invalid_argument("measure: row range out of bounds");
    std::vector<double> out(static_cast<std::size_t>(last_row - first_row + 1));
    for (int i = first_row; i <= last_row; ++i)
        out[static_cast<std::size_t>(i - first_row)] = dot(mat.row(i - 1).data(), tile.data(), n);
    return out;
}

std::vector<double> adjoint(std::span<const double> values, const SensingMatrix& mat, int count) {
    if (count < 0 || count > mat.dim())
        throw std::invalid_argument("adjoint: count out of bounds");
    if (values.size() != static_cast<std::size_t>(count))
        throw std::invalid_argument("adjoint: value length does not match count");
    const int n = mat.dim();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < count; ++i) {
        const double* r = mat.row(i).data();
        const double v = values[static_cast<std::size_t>(i)];
        for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] += v * r[k];
    }
    return out;
}

MeasurementSet::MeasurementSet(int block_count, int capacity, std::uint64_t matrix_seed)
    : capacity_(capacity), matrix_seed_(matrix_seed) {
    if (block_count <= 0) throw std::invalid_argument("MeasurementSet: need at least one block");
    if (capacity <= 0) throw std::invalid_argument("MeasurementSet: capacity must be positive");
    values_.resize(static_cast<std::size_t>(block_count));
}

int MeasurementSet::total() const {
    int t = 0;
    for (const auto& v : values_) t += static_cast<int>(v.size());
    return t;
}

void MeasurementSet::append(int block, std::span<const double> vals) {
    if (block < 0 || block >= block_count())
        throw std::invalid_argument("MeasurementSet: block index out of range");
    auto& dst = values_[static_cast<std::size_t>(block)];
    if (dst.size() + vals.size() > static_cast<std::size_t>(capacity_))
        throw std::invalid_argument("MeasurementSet: append exceeds block capacity");
    dst.insert(dst.end(), vals.begin(), vals.end());
}

void extend_measurements(MeasurementSet& ms, int block_index, std::span<const double> tile,
                         const SensingMatrix& mat, int target_count) {
    const int cur = ms.count(block_index);
    if (target_count < cur)
        throw std::invalid_argument("extend_measurements: cannot shrink a block");
    if (target_count == cur) return;
    ms.append(block_index, measure(tile, mat, cur + 1, target_count));
}

namespace {

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

}  // namespace

BudgetLedger make_ledger(int height, int width, int block, double sr, double sr_init,
                         int stages, double sr_is) {
    if (block < 1 || block > kMaxBlock)
        throw std::invalid_argument("make_ledger: block size must be in [1, 64]");
    if (height <= 0 || width <= 0)
        throw std::invalid_argument("make_ledger: image dimensions must be positive");
    if (stages < 1) throw std::invalid_argument("make_ledger: need at least one stage");
    if (!(sr_init > 0.0) || !(sr_init < 1.0))
        throw std::invalid_argument("make_ledger: sr_init must lie in (0, 1)");
    if (!(sr > sr_init) || !(sr <= 1.0))
        throw std::invalid_argument("make_ledger: sr must lie in (sr_init, 1]");

    BudgetLedger L;
    L.sr = sr;
    L.sr_init = sr_init;
    L.stages = stages;
    L.block_capacity = block * block;
    L.n_blocks = ((height + block - 1) / block) * ((width + block - 1) / block);
    L.sr_is = (sr_is < 0.0) ? (sr - sr_init) / (2.0 * stages) : sr_is;
    if (!(L.sr_is >= 0.0))
        throw std::invalid_argument("make_ledger: sr_is must be non-negative");
    if (L.sr_is >= (sr - sr_init) / stages)
        throw std::invalid_argument("make_ledger: sr_is leaves no adaptive budget");

    const double cap = static_cast<double>(L.block_capacity);
    L.total_target = round_half_up(L.n_blocks * cap * sr);
    L.init_per_block = round_half_up(sr_init * cap);
    L.is_per_block = round_half_up(L.sr_is * cap);

    const double per_stage = L.n_blocks * cap * ((sr - sr_init) / stages - L.sr_is);
    L.adaptive_budget.assign(static_cast<std::size_t>(stages), 0);
    int committed = L.n_blocks * L.init_per_block + stages * L.n_blocks * L.is_per_block;
    for (int s = 0; s + 1 < stages; ++s) {
        L.adaptive_budget[static_cast<std::size_t>(s)] = round_half_up(per_stage);
        committed += L.adaptive_budget[static_cast<std::size_t>(s)];
    }
    const int last = L.total_target - committed;
    // Rounding can eat the whole adaptive budget when sr sits barely above
    // sr_init; refuse such configs instead of under-running the total.
    if (last < 0)
        throw std::invalid_argument("make_ledger: rounding exhausts the adaptive budget; "
                                    "raise sr or lower sr_is");
    L.adaptive_budget[static_cast<std::size_t>(stages - 1)] = last;
    return L;
}

}  // namespace acs
