#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "jfrf/graph.hpp"
#include "jfrf/network.hpp"
#include "jfrf/spectral_basis.hpp"

namespace jfrf {

inline constexpr int kCheckpointVersion = 1;

/// Self-describing model snapshot. Filters are stored as separate real and
/// imaginary arrays (column-major); all doubles round-trip bit-exactly.
struct Checkpoint {
    ModelKind model = ModelKind::jfrffnet;
    ShiftKind shift = ShiftKind::lap;
    std::string fingerprint;
    Index vertices = 0;
    Index window = 0;
    std::vector<Layer> layers;
    nlohmann::json config = nlohmann::json::object();
};

/// 64-bit FNV-1a over the sorted eigenvalues, each rounded to 10 significant
/// digits (values below 1e-9 of the spectral radius count as zero).
std::string basis_fingerprint(const SpectralBasis& basis);

Checkpoint make_checkpoint(const Network& net, ShiftKind shift, std::string fingerprint,
                           nlohmann::json config = nlohmann::json::object());
Network restore_network(const Checkpoint& checkpoint, JointOperator op);

nlohmann::json to_json(const Checkpoint& checkpoint);
/// Throws ParseError for anything that is not a valid version-1 checkpoint.
Checkpoint checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace jfrf
