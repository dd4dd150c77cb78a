#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace acs {

// Execution switch for the kernels that have both an OpenMP path and a plain
// serial reference. Both paths must produce bit-identical results.
enum class Exec { serial, parallel };

// Row-orthonormal B^2 x B^2 operator. The first M rows form the operator for
// any measurement count M, so per-block counts can grow without re-measuring.
class SensingMatrix {
public:
    SensingMatrix(int block, std::uint64_t seed, std::vector<double> rows);

    int block() const { return block_; }
    int dim() const { return dim_; }  // B^2
    std::uint64_t seed() const { return seed_; }
    std::span<const double> row(int i) const {  // 0-based
        return {rows_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& raw() const { return rows_; }

private:
    int block_;
    int dim_;
    std::uint64_t seed_;
    std::vector<double> rows_;
};

// Draws B^2 x B^2 i.i.d. standard normal entries (row-major, seeded) and
// orthonormalizes the rows in order with modified Gram-Schmidt. A row that
// comes out numerically dependent is redrawn from the same stream; after 8
// failed redraws the build errors out. Supports block sizes 1..64.
SensingMatrix build_matrix(std::uint64_t seed, int block, Exec exec = Exec::parallel);

// y_i = <row_i, tile> for the 1-based inclusive row range [first_row, last_row].
std::vector<double> measure(std::span<const double> tile, const SensingMatrix& mat,
                            int first_row, int last_row);

// x = sum_i values[i] * row_i over the first `count` rows; `values` must have
// exactly `count` entries.
std::vector<double> adjoint(std::span<const double> values, const SensingMatrix& mat, int count);

// Per-block measurement storage. Blocks only ever gain measurements, and each
// block's vector is independent, so concurrent appends to distinct blocks are
// safe.
class MeasurementSet {
public:
    MeasurementSet(int block_count, int capacity, std::uint64_t matrix_seed);

    int block_count() const { return static_cast<int>(values_.size()); }
    int capacity() const { return capacity_; }
    std::uint64_t matrix_seed() const { return matrix_seed_; }
    int count(int block) const { return static_cast<int>(values_[static_cast<std::size_t>(block)].size()); }
    std::span<const double> values(int block) const {
        const auto& v = values_[static_cast<std::size_t>(block)];
        return {v.data(), v.size()};
    }
    int total() const;

    void append(int block, std::span<const double> vals);

private:
    int capacity_;
    std::uint64_t matrix_seed_;
    std::vector<std::vector<double>> values_;
};

// Measures the next rows of `tile` so that block `block_index` holds exactly
// `target_count` values. No-op when the block is already there.
void extend_measurements(MeasurementSet& ms, int block_index, std::span<const double> tile,
                         const SensingMatrix& mat, int target_count);

// Integer sample budget for a staged run. All rounding is half-up; the final
// stage's adaptive budget absorbs the rounding residue so that the grand
// total is exactly round(N * B^2 * sr).
struct BudgetLedger {
    double sr = 0.0;
    double sr_init = 0.0;
    double sr_is = 0.0;
    int stages = 0;
    int n_blocks = 0;
    int block_capacity = 0;  // B^2
    int total_target = 0;    // T
    int init_per_block = 0;
    int is_per_block = 0;            // per block, per stage
    std::vector<int> adaptive_budget;  // per stage, last entry corrected
};

// sr_is < 0 selects the default (sr - sr_init) / (2 * stages).
BudgetLedger make_ledger(int height, int width, int block, double sr, double sr_init,
                         int stages, double sr_is = -1.0);

}  // namespace acs
