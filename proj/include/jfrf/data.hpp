#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "jfrf/graph.hpp"
#include "jfrf/types.hpp"

namespace jfrf {

/// Independent, order-free random stream for (seed, name, index).
std::mt19937_64 substream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

/// Aligned clean/noisy N x D samples.
struct SampleSet {
    std::vector<RealMatrix> clean;
    std::vector<RealMatrix> noisy;

    std::size_t size() const noexcept { return clean.size(); }
    bool empty() const noexcept { return clean.empty(); }
    void validate() const;
};

enum class Split { train, val, test };

struct SplitCounts {
    std::size_t train = 0;
    std::size_t val = 0;
    std::size_t test = 0;
};

inline constexpr std::array<double, 3> kDefaultSplitRatios{0.70, 0.15, 0.15};

/// Chronological split: floor(r0 M), floor(r1 M), remainder.
SplitCounts split_counts(std::size_t m, const std::array<double, 3>& ratios = kDefaultSplitRatios);

template <typename T>
struct Splits {
    std::vector<T> train;
    std::vector<T> val;
    std::vector<T> test;
};

Splits<RealMatrix> split(const std::vector<RealMatrix>& samples,
                         const std::array<double, 3>& ratios = kDefaultSplitRatios);

/// floor(T / d) consecutive non-overlapping N x d windows.
std::vector<RealMatrix> window(const RealMatrix& signal, Index d);

enum class NoiseKind { white_gaussian, colored_ar1 };

std::string_view to_string(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view name);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::white_gaussian;
    double target_snr_db = 10.0;  // +inf yields noiseless copies
    double ar_coefficient = 0.5;  // colored_ar1 only, in (-1, 1)
    std::uint64_t seed = 0;
};

/// Noise drawn per sample from its own substream and scaled by a single
/// global factor so the aggregate SNR over all samples hits the target.
std::vector<RealMatrix> add_noise(const std::vector<RealMatrix>& clean, const NoiseSpec& spec);

inline constexpr double kSnrInfinite = std::numeric_limits<double>::infinity();

/// 10 log10(sum |ref|^2 / sum |ref - est|^2) over every entry of every sample.
/// Returns kSnrInfinite when the error is exactly zero.
double snr_db(std::span<const RealMatrix> reference, std::span<const RealMatrix> estimate);
double snr_db(const RealMatrix& reference, const RealMatrix& estimate);
/// Mean of per-sample SNRs.
double mean_snr_db(std::span<const RealMatrix> reference, std::span<const RealMatrix> estimate);

/// Random combination of the `bandwidth` smoothest eigenvectors of the shift
/// (smallest eigenvalues for lap/nlap, largest for adj/rna/sna) with AR(1)
/// coefficients of unit stationary variance and the given smoothness.
RealMatrix synth_signal(const Graph& graph, ShiftKind kind, Index t_total, Index bandwidth,
                        double smoothness, std::uint64_t seed);

/// Comma-separated reals; an optional first row that fails to parse is
/// treated as a header. Throws ParseError with the offending row/column.
RealMatrix load_matrix_csv(const std::filesystem::path& path);
/// Writes with 17 significant digits.
void save_matrix_csv(const std::filesystem::path& path, const RealMatrix& m);

/// Rows are vertices, columns are time steps.
RealMatrix load_signal_csv(const std::filesystem::path& path);
void save_signal_csv(const std::filesystem::path& path, const RealMatrix& signal);
Graph load_adjacency_csv(const std::filesystem::path& path);

}  // namespace jfrf
