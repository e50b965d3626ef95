#include "jfrf/data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "jfrf/errors.hpp"
#include "jfrf/spectral_basis.hpp"

namespace jfrf {
namespace {

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view cell, double& out) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return false;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size();
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

void check_same_shape(std::span<const RealMatrix> a, std::span<const RealMatrix> b) {
    if (a.size() != b.size()) throw InvalidArgument("sample lists have different lengths");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].rows() != b[i].rows() || a[i].cols() != b[i].cols()) {
            throw InvalidArgument("sample " + std::to_string(i) + " shapes differ");
        }
    }
}

}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
    const std::uint64_t tag = fnv1a(name);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

void SampleSet::validate() const {
    if (clean.size() != noisy.size()) throw InvalidArgument("clean and noisy lists differ in length");
    for (std::size_t i = 0; i < clean.size(); ++i) {
        if (clean[i].rows() != clean.front().rows() || clean[i].cols() != clean.front().cols() ||
            noisy[i].rows() != clean[i].rows() || noisy[i].cols() != clean[i].cols()) {
            throw InvalidArgument("sample " + std::to_string(i) + " has an inconsistent shape");
        }
    }
}

SplitCounts split_counts(std::size_t m, const std::array<double, 3>& ratios) {
    const double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9 || ratios[0] < 0.0 || ratios[1] < 0.0 || ratios[2] < 0.0) {
        throw InvalidArgument("split ratios must be non-negative and sum to 1");
    }
    SplitCounts counts;
    counts.train = static_cast<std::size_t>(std::floor(ratios[0] * static_cast<double>(m) + 1e-9));
    counts.val = static_cast<std::size_t>(std::floor(ratios[1] * static_cast<double>(m) + 1e-9));
    if (counts.train + counts.val > m) throw InvalidArgument("split ratios exceed the sample count");
    counts.test = m - counts.train - counts.val;
    if (counts.train == 0 || counts.val == 0 || counts.test == 0) {
        throw InvalidArgument("split of " + std::to_string(m) + " samples leaves an empty set (" +
                              std::to_string(counts.train) + "/" + std::to_string(counts.val) + "/" +
                              std::to_string(counts.test) + ")");
    }
    return counts;
}

Splits<RealMatrix> split(const std::vector<RealMatrix>& samples, const std::array<double, 3>& ratios) {
    const SplitCounts counts = split_counts(samples.size(), ratios);
    Splits<RealMatrix> out;
    const auto first = samples.begin();
    const auto train_end = first + static_cast<std::ptrdiff_t>(counts.train);
    const auto val_end = train_end + static_cast<std::ptrdiff_t>(counts.val);
    out.train.assign(first, train_end);
    out.val.assign(train_end, val_end);
    out.test.assign(val_end, samples.end());
    return out;
}

std::vector<RealMatrix> window(const RealMatrix& signal, Index d) {
    if (d < 1) throw InvalidArgument("window length must be positive");
    if (signal.cols() < d) {
        throw InvalidArgument("signal of length " + std::to_string(signal.cols()) +
                              " is shorter than the window " + std::to_string(d));
    }
    std::vector<RealMatrix> out;
    const Index m = signal.cols() / d;
    out.reserve(static_cast<std::size_t>(m));
    for (Index k = 0; k < m; ++k) out.emplace_back(signal.middleCols(k * d, d));
    return out;
}

std::string_view to_string(NoiseKind kind) {
    return kind == NoiseKind::white_gaussian ? "white" : "ar1";
}

NoiseKind parse_noise_kind(std::string_view name) {
    if (name == "white" || name == "white_gaussian") return NoiseKind::white_gaussian;
    if (name == "ar1" || name == "colored_ar1") return NoiseKind::colored_ar1;
    throw InvalidArgument("unknown noise kind '" + std::string(name) + "' (expected white or ar1)");
}

std::vector<RealMatrix> add_noise(const std::vector<RealMatrix>& clean, const NoiseSpec& spec) {
    if (clean.empty()) throw InvalidArgument("add_noise: no samples");
    if (std::isnan(spec.target_snr_db) || spec.target_snr_db == -kSnrInfinite) {
        throw InvalidArgument("add_noise: target SNR must be a number or +inf");
    }
    if (spec.kind == NoiseKind::colored_ar1 && !(std::abs(spec.ar_coefficient) < 1.0)) {
        throw InvalidArgument("add_noise: AR(1) coefficient must lie in (-1, 1)");
    }
    double signal_energy = 0.0;
    for (const RealMatrix& x : clean) signal_energy += x.squaredNorm();
    if (!(signal_energy > 0.0)) {
        throw DegenerateInput("add_noise: clean signal is all zero; noise cannot be scaled to an SNR");
    }
    if (spec.target_snr_db == kSnrInfinite) return clean;

    std::vector<RealMatrix> noise;
    noise.reserve(clean.size());
    double noise_energy = 0.0;
    for (std::size_t s = 0; s < clean.size(); ++s) {
        auto rng = substream(spec.seed, "noise", s);
        std::normal_distribution<double> normal;
        RealMatrix w(clean[s].rows(), clean[s].cols());
        if (spec.kind == NoiseKind::white_gaussian) {
            for (Index j = 0; j < w.cols(); ++j) {
                for (Index i = 0; i < w.rows(); ++i) w(i, j) = normal(rng);
            }
        } else {
            const double a = spec.ar_coefficient;
            const double innovation = std::sqrt(1.0 - a * a);
            for (Index i = 0; i < w.rows(); ++i) {
                w(i, 0) = normal(rng);
                for (Index j = 1; j < w.cols(); ++j) w(i, j) = a * w(i, j - 1) + innovation * normal(rng);
            }
        }
        noise_energy += w.squaredNorm();
        noise.push_back(std::move(w));
    }
    const double scale =
        std::sqrt(signal_energy / (noise_energy * std::pow(10.0, spec.target_snr_db / 10.0)));
    for (std::size_t s = 0; s < clean.size(); ++s) noise[s] = clean[s] + scale * noise[s];
    return noise;
}

double snr_db(std::span<const RealMatrix> reference, std::span<const RealMatrix> estimate) {
    check_same_shape(reference, estimate);
    double signal = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        signal += reference[i].squaredNorm();
        error += (reference[i] - estimate[i]).squaredNorm();
    }
    if (!(signal > 0.0)) throw DegenerateInput("SNR is undefined for a zero-energy reference");
    if (error == 0.0) return kSnrInfinite;
    return 10.0 * std::log10(signal / error);
}

double snr_db(const RealMatrix& reference, const RealMatrix& estimate) {
    return snr_db(std::span<const RealMatrix>(&reference, 1), std::span<const RealMatrix>(&estimate, 1));
}

double mean_snr_db(std::span<const RealMatrix> reference, std::span<const RealMatrix> estimate) {
    check_same_shape(reference, estimate);
    if (reference.empty()) throw InvalidArgument("mean_snr_db: no samples");
    double total = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) total += snr_db(reference[i], estimate[i]);
    return total / static_cast<double>(reference.size());
}

RealMatrix synth_signal(const Graph& graph, ShiftKind kind, Index t_total, Index bandwidth,
                        double smoothness, std::uint64_t seed) {
    const Index n = graph.size();
    if (t_total < 1) throw InvalidArgument("synth_signal: length must be positive");
    if (bandwidth < 1 || bandwidth > n) {
        throw InvalidArgument("synth_signal: bandwidth must lie in [1, " + std::to_string(n) + "]");
    }
    if (!(smoothness >= 0.0 && smoothness <= 1.0)) {
        throw InvalidArgument("synth_signal: smoothness must lie in [0, 1]");
    }
    const SpectralBasis basis = eigendecompose(shift_operator(graph, kind));
    const bool ascending = kind == ShiftKind::lap || kind == ShiftKind::nlap;

    RealMatrix modes(n, bandwidth);
    for (Index k = 0; k < bandwidth; ++k) {
        const Index col = ascending ? k : n - 1 - k;
        RealVector v = basis.eigenvectors().col(col).real();
        modes.col(k) = v / v.norm();
    }

    auto rng = substream(seed, "synth");
    std::normal_distribution<double> normal;
    RealMatrix coeffs(bandwidth, t_total);
    const double innovation = std::sqrt(1.0 - smoothness * smoothness);
    for (Index k = 0; k < bandwidth; ++k) coeffs(k, 0) = normal(rng);
    for (Index t = 1; t < t_total; ++t) {
        for (Index k = 0; k < bandwidth; ++k) {
            coeffs(k, t) = smoothness * coeffs(k, t - 1) + innovation * normal(rng);
        }
    }
    return modes * coeffs;
}

RealMatrix load_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t first_data_line = 0;
    bool seen_first = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (trim(view).empty()) continue;

        const auto cells = split_cells(view);
        std::vector<double> values(cells.size());
        std::size_t bad_column = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_double(cells[c], values[c])) {
                bad_column = c + 1;
                break;
            }
        }
        if (!seen_first) {
            seen_first = true;
            if (bad_column != 0) continue;  // header
        }
        if (bad_column != 0) {
            throw ParseError(path.string() + ": row " + std::to_string(line_no) + ", column " +
                                 std::to_string(bad_column) + ": not a number",
                             line_no, bad_column);
        }
        if (!rows.empty() && values.size() != rows.front().size()) {
            throw ParseError(path.string() + ": row " + std::to_string(line_no) + " has " +
                                 std::to_string(values.size()) + " columns, expected " +
                                 std::to_string(rows.front().size()),
                             line_no, 0);
        }
        if (rows.empty()) first_data_line = line_no;
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw ParseError(path.string() + ": no numeric rows", first_data_line, 0);

    RealMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    return m;
}

void save_matrix_csv(const std::filesystem::path& path, const RealMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    char buf[40];
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

RealMatrix load_signal_csv(const std::filesystem::path& path) {
    RealMatrix m = load_matrix_csv(path);
    if (!m.allFinite()) throw ParseError(path.string() + ": signal has non-finite values");
    return m;
}

void save_signal_csv(const std::filesystem::path& path, const RealMatrix& signal) {
    save_matrix_csv(path, signal);
}

Graph load_adjacency_csv(const std::filesystem::path& path) {
    RealMatrix a = load_matrix_csv(path);
    if (a.rows() != a.cols()) {
        throw ParseError(path.string() + ": adjacency must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    return Graph(std::move(a));
}

}  // namespace jfrf
