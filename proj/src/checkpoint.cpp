#include "jfrf/checkpoint.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "jfrf/errors.hpp"

namespace jfrf {
namespace {

using nlohmann::json;

json filter_part(const ComplexMatrix& filter, bool imag) {
    json out = json::array();
    for (Index j = 0; j < filter.cols(); ++j) {
        for (Index i = 0; i < filter.rows(); ++i) {
            out.push_back(imag ? filter(i, j).imag() : filter(i, j).real());
        }
    }
    return out;
}

}  // namespace

std::string basis_fingerprint(const SpectralBasis& basis) {
    const ComplexVector& values = basis.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const char* text) {
        for (const char* c = text; *c; ++c) {
            h ^= static_cast<unsigned char>(*c);
            h *= 0x100000001b3ULL;
        }
    };
    char buf[64];
    std::snprintf(buf, sizeof buf, "n=%ld;", static_cast<long>(values.size()));
    mix(buf);
    for (Index k = 0; k < values.size(); ++k) {
        for (double part : {values(k).real(), values(k).imag()}) {
            const double snapped = std::abs(part) < 1e-9 * scale ? 0.0 : part;
            std::snprintf(buf, sizeof buf, "%.9e;", snapped);
            mix(buf);
        }
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Checkpoint make_checkpoint(const Network& net, ShiftKind shift, std::string fingerprint,
                           nlohmann::json config) {
    Checkpoint ck;
    ck.model = net.kind();
    ck.shift = shift;
    ck.fingerprint = std::move(fingerprint);
    ck.vertices = net.vertices();
    ck.window = net.window();
    ck.layers = net.layers();
    ck.config = std::move(config);
    return ck;
}

Network restore_network(const Checkpoint& checkpoint, JointOperator op) {
    if (op.vertices() != checkpoint.vertices || op.window() != checkpoint.window) {
        throw InvalidArgument("checkpoint dimensions do not match the operator");
    }
    return Network(std::move(op), checkpoint.model, checkpoint.layers);
}

nlohmann::json to_json(const Checkpoint& ck) {
    json layers = json::array();
    for (const Layer& layer : ck.layers) {
        layers.push_back({{"alpha", layer.alpha},
                          {"beta", layer.beta},
                          {"activation", std::string(to_string(layer.activation))},
                          {"filter_rows", layer.filter.rows()},
                          {"filter_cols", layer.filter.cols()},
                          {"filter_real", filter_part(layer.filter, false)},
                          {"filter_imag", filter_part(layer.filter, true)}});
    }
    const Index per_layer = ck.model == ModelKind::jfrffnet ? ck.vertices * ck.window + 2 : ck.vertices + 1;
    const Index per_layer_real =
        ck.model == ModelKind::jfrffnet ? 2 * ck.vertices * ck.window + 2 : 2 * ck.vertices + 1;
    return json{{"format", "jfrffnet-checkpoint"},
                {"version", kCheckpointVersion},
                {"model", std::string(to_string(ck.model))},
                {"shift_kind", std::string(to_string(ck.shift))},
                {"fingerprint", ck.fingerprint},
                {"vertices", ck.vertices},
                {"window", ck.window},
                {"parameters_per_layer", per_layer},
                {"parameters_per_layer_real", per_layer_real},
                {"config", ck.config},
                {"layers", layers}};
}

Checkpoint checkpoint_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "jfrffnet-checkpoint") {
            throw ParseError("not a jfrffnet checkpoint");
        }
        const int version = j.at("version").get<int>();
        if (version != kCheckpointVersion) {
            throw ParseError("unsupported checkpoint version " + std::to_string(version));
        }
        Checkpoint ck;
        ck.model = parse_model_kind(j.at("model").get<std::string>());
        ck.shift = parse_shift_kind(j.at("shift_kind").get<std::string>());
        ck.fingerprint = j.at("fingerprint").get<std::string>();
        ck.vertices = j.at("vertices").get<Index>();
        ck.window = j.at("window").get<Index>();
        ck.config = j.value("config", json::object());
        for (const json& lj : j.at("layers")) {
            Layer layer;
            layer.alpha = lj.at("alpha").get<double>();
            layer.beta = lj.at("beta").get<double>();
            layer.activation = parse_activation(lj.at("activation").get<std::string>());
            const auto rows = lj.at("filter_rows").get<Index>();
            const auto cols = lj.at("filter_cols").get<Index>();
            const auto re = lj.at("filter_real").get<std::vector<double>>();
            const auto im = lj.at("filter_imag").get<std::vector<double>>();
            if (rows < 1 || cols < 1 || re.size() != static_cast<std::size_t>(rows * cols) ||
                im.size() != re.size()) {
                throw ParseError("checkpoint layer filter has inconsistent size");
            }
            layer.filter.resize(rows, cols);
            for (Index k = 0; k < rows * cols; ++k) {
                layer.filter(k % rows, k / rows) =
                    Complex(re[static_cast<std::size_t>(k)], im[static_cast<std::size_t>(k)]);
            }
            ck.layers.push_back(std::move(layer));
        }
        if (ck.layers.empty()) throw ParseError("checkpoint has no layers");
        return ck;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("malformed checkpoint: ") + e.what());
    }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << to_json(checkpoint).dump(2) << '\n';
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open checkpoint '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("checkpoint '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return checkpoint_from_json(j);
}

}  // namespace jfrf
