#include "jfrf/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jfrf/checkpoint.hpp"
#include "jfrf/data.hpp"
#include "jfrf/errors.hpp"
#include "jfrf/graph.hpp"
#include "jfrf/spectral_basis.hpp"
#include "jfrf/training.hpp"
#include "jfrf/wiener.hpp"

namespace jfrf::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kMetricsSchemaVersion = 1;

// ---------------------------------------------------------------------------
// logging: JFRF_LOG_LEVEL = quiet | info | debug

enum class LogLevel { quiet, info, debug };

LogLevel log_level() {
    const char* env = std::getenv("JFRF_LOG_LEVEL");
    if (!env) return LogLevel::info;
    const std::string v(env);
    if (v == "quiet") return LogLevel::quiet;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::info;
}

void log(LogLevel level, const std::string& msg) {
    if (level != LogLevel::quiet && static_cast<int>(level) <= static_cast<int>(log_level())) {
        std::cerr << msg << '\n';
    }
}

// ---------------------------------------------------------------------------
// small output helpers

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// JSON has no infinity; the SNR sentinel is written as the string "inf".
json num(double v) {
    if (std::isfinite(v)) return v;
    return fmt_double(v);
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

std::string file_digest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "unreadable";
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        h ^= static_cast<unsigned char>(*it);
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Run manifest written next to every command's outputs.
class Manifest {
public:
    Manifest(const CLI::App& command, std::uint64_t seed) : started_(utc_now()) {
        body_["command"] = command.get_name();
        body_["seed"] = seed;
        body_["version"] = JFRF_VERSION;
        json flags = json::object();
        for (const CLI::Option* opt : command.get_options()) {
            const std::string name = opt->get_name(false, true);
            if (name.empty() || name == "--help" || name == "-h,--help") continue;
            std::string value;
            if (opt->count() > 0) {
                for (const std::string& r : opt->results()) value += (value.empty() ? "" : " ") + r;
            } else {
                value = opt->get_default_str();
            }
            flags[opt->get_name()] = value;
        }
        body_["flags"] = flags;
        body_["inputs"] = json::object();
    }

    void input(const fs::path& path) {
        if (!path.empty()) body_["inputs"][path.string()] = file_digest(path);
    }

    void write(const fs::path& dir) {
        json out = body_;
        out["started_at"] = started_;
        out["finished_at"] = utc_now();
        write_json(dir / (body_["command"].get<std::string>() + ".manifest.json"), out);
    }

private:
    json body_;
    std::string started_;
};

// ---------------------------------------------------------------------------
// shared dataset / operator plumbing

struct DataOptions {
    std::string signal;
    std::string adjacency;
    std::string noisy;
    std::string noise_kind = "white";
    double snr_db = 5.0;
    double ar_coefficient = 0.5;
    int window = 6;
    std::uint64_t seed = 0;
    double kappa_max = kDefaultKappaMax;

    void add_to(CLI::App& app, bool with_signal = true) {
        if (with_signal) {
            app.add_option("--signal", signal, "Clean signal CSV (vertices x time)")
                ->required()
                ->check(CLI::ExistingFile);
        }
        app.add_option("--adjacency", adjacency, "Adjacency CSV (N x N)")
            ->required()
            ->check(CLI::ExistingFile);
        app.add_option("--noisy", noisy, "Observed noisy signal CSV; synthesized from --snr if absent")
            ->check(CLI::ExistingFile);
        app.add_option("--noise", noise_kind, "Synthetic noise kind")
            ->check(CLI::IsMember({"white", "ar1"}))
            ->capture_default_str();
        app.add_option("--snr", snr_db, "Target input SNR in dB for synthetic noise (inf = none)")
            ->capture_default_str();
        app.add_option("--ar", ar_coefficient, "AR(1) coefficient for --noise ar1")
            ->check(CLI::Range(-0.999999, 0.999999))
            ->capture_default_str();
        app.add_option("--window", window, "Samples per window (D)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app.add_option("--seed", seed, "Master random seed")->capture_default_str();
        app.add_option("--kappa-max", kappa_max, "Largest accepted eigenvector condition number")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }

    json to_json() const {
        return json{{"window", window},       {"noise", noise_kind},
                    {"snr_db", num(snr_db)},  {"ar_coefficient", ar_coefficient},
                    {"seed", seed},           {"kappa_max", kappa_max},
                    {"noisy_file", !noisy.empty()}};
    }
};

struct Dataset {
    Graph graph;
    Splits<RealMatrix> clean;
    Splits<RealMatrix> noisy;
    std::size_t windows = 0;

    SampleSet set(Split which) const {
        switch (which) {
            case Split::train: return {clean.train, noisy.train};
            case Split::val: return {clean.val, noisy.val};
            case Split::test: return {clean.test, noisy.test};
        }
        return {};
    }
};

Dataset load_dataset(const DataOptions& opt, const std::string& signal_path) {
    Graph graph = load_adjacency_csv(opt.adjacency);
    const RealMatrix signal = load_signal_csv(signal_path);
    if (signal.rows() != graph.size()) {
        throw InvalidArgument("signal has " + std::to_string(signal.rows()) +
                              " rows but the graph has " + std::to_string(graph.size()) + " vertices");
    }
    const std::vector<RealMatrix> clean = window(signal, opt.window);
    std::vector<RealMatrix> noisy;
    if (!opt.noisy.empty()) {
        const RealMatrix observed = load_signal_csv(opt.noisy);
        if (observed.rows() != signal.rows() || observed.cols() != signal.cols()) {
            throw InvalidArgument("noisy signal shape differs from the clean signal");
        }
        noisy = window(observed, opt.window);
    } else {
        NoiseSpec spec;
        spec.kind = parse_noise_kind(opt.noise_kind);
        spec.target_snr_db = opt.snr_db;
        spec.ar_coefficient = opt.ar_coefficient;
        spec.seed = opt.seed;
        noisy = add_noise(clean, spec);
    }
    return Dataset{std::move(graph), split(clean), split(noisy), clean.size()};
}

struct Operators {
    SpectralBasis basis;
    JointOperator joint;
};

Operators build_operators(const Graph& graph, ShiftKind kind, Index window_length, double kappa_max) {
    try {
        SpectralBasis basis = eigendecompose(shift_operator(graph, kind), kappa_max);
        GfrftOperator graph_op(basis, kappa_max);
        return Operators{std::move(basis), JointOperator{std::move(graph_op), DfrftOperator(window_length)}};
    } catch (const IllConditioned& e) {
        std::string others;
        for (ShiftKind k : kAllShiftKinds) {
            if (k != kind) others += (others.empty() ? "" : ", ") + std::string(to_string(k));
        }
        throw IllConditioned("shift kind '" + std::string(to_string(kind)) + "': " + e.what() +
                                 "; try another shift kind (" + others + ")",
                             e.estimate());
    } catch (const BranchAmbiguity& e) {
        throw BranchAmbiguity("shift kind '" + std::string(to_string(kind)) + "': " + e.what());
    }
}

struct TrainOptions {
    std::string shift = "lap";
    std::string model = "jfrffnet";
    int layers = 3;
    TrainConfig config;

    void add_to(CLI::App& app, bool with_model) {
        app.add_option("--shift", shift, "Graph shift operator")
            ->check(CLI::IsMember({"adj", "lap", "rna", "sna", "nlap"}))
            ->capture_default_str();
        if (with_model) {
            app.add_option("--model", model, "Model variant")
                ->check(CLI::IsMember({"jfrffnet", "gfrffnet"}))
                ->capture_default_str();
        }
        app.add_option("--layers", layers, "Number of stacked layers")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app.add_option("--lr", config.learning_rate, "Adam learning rate")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app.add_option("--weight-decay", config.weight_decay, "Coupled weight decay on filters")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        app.add_option("--epochs", config.max_epochs, "Maximum epochs")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app.add_option("--patience", config.patience, "Early-stopping patience (epochs)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        app.add_option("--batch-size", config.batch_size, "Mini-batch size (0 = full batch)")
            ->capture_default_str();
    }

    json to_json() const {
        return json{{"layers", layers},
                    {"learning_rate", config.learning_rate},
                    {"weight_decay", config.weight_decay},
                    {"max_epochs", config.max_epochs},
                    {"patience", config.patience},
                    {"batch_size", config.batch_size},
                    {"adam_beta1", config.adam_beta1},
                    {"adam_beta2", config.adam_beta2},
                    {"adam_eps", config.adam_eps}};
    }
};

struct TrainRun {
    Network net;
    TrainHistory history;
    json metrics;
};

json snr_block(const Network& net, const Dataset& data) {
    const auto val_out = denoise(net, data.noisy.val);
    const auto test_out = denoise(net, data.noisy.test);
    return json{{"val_input", num(snr_db(data.clean.val, data.noisy.val))},
                {"val_output", num(snr_db(data.clean.val, val_out))},
                {"test_input", num(snr_db(data.clean.test, data.noisy.test))},
                {"test_output", num(snr_db(data.clean.test, test_out))},
                {"test_input_mean_per_sample", num(mean_snr_db(data.clean.test, data.noisy.test))},
                {"test_output_mean_per_sample", num(mean_snr_db(data.clean.test, test_out))}};
}

json layer_block(const Network& net) {
    json layers = json::array();
    for (const Layer& l : net.layers()) {
        json entry{{"alpha", l.alpha}};
        if (net.kind() == ModelKind::jfrffnet) entry["beta"] = l.beta;
        layers.push_back(entry);
    }
    return layers;
}

json parameter_block(const Network& net) {
    return json{{"per_layer", net.parameters_per_layer()},
                {"per_layer_real", net.real_parameters_per_layer()},
                {"total", net.parameter_count()},
                {"total_real", net.real_parameter_count()}};
}

TrainRun run_training(const Dataset& data, const Operators& ops, ShiftKind shift, ModelKind model,
                      const TrainOptions& topt, std::uint64_t seed) {
    TrainConfig config = topt.config;
    config.seed = seed;
    Network net = init_network(ops.joint, topt.layers, model);
    log(LogLevel::info, "training " + std::string(to_string(model)) + " on shift '" +
                            std::string(to_string(shift)) + "'");
    TrainHistory history = train(net, data.set(Split::train), data.set(Split::val), config);

    json metrics{{"schema", "jfrffnet.metrics"},
                 {"schema_version", kMetricsSchemaVersion},
                 {"model", std::string(to_string(model))},
                 {"shift_kind", std::string(to_string(shift))},
                 {"vertices", net.vertices()},
                 {"window", net.window()},
                 {"samples",
                  {{"train", data.clean.train.size()},
                   {"val", data.clean.val.size()},
                   {"test", data.clean.test.size()}}},
                 {"snr_db", snr_block(net, data)},
                 {"initial_val_snr_db", num(history.initial_val_snr_db)},
                 {"epochs_run", history.epochs.size()},
                 {"best_epoch", history.best_epoch},
                 {"layers", layer_block(net)},
                 {"parameters", parameter_block(net)}};
    return TrainRun{std::move(net), std::move(history), std::move(metrics)};
}

void write_history(const fs::path& path, const TrainHistory& history, std::size_t layers) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "epoch,train_loss,val_snr_db";
    for (std::size_t l = 1; l <= layers; ++l) out << ",alpha_" << l << ",beta_" << l;
    out << '\n';
    for (const EpochRecord& r : history.epochs) {
        out << r.epoch << ',' << fmt_double(r.train_loss) << ',' << fmt_double(r.val_snr_db);
        for (std::size_t l = 0; l < r.alphas.size(); ++l) {
            out << ',' << fmt_double(r.alphas[l]) << ',' << fmt_double(r.betas[l]);
        }
        out << '\n';
    }
}

fs::path prepare_out(const std::string& dir) {
    fs::path out(dir);
    fs::create_directories(out);
    return out;
}

// ---------------------------------------------------------------------------
// commands

struct SynthOptions {
    int nodes = 0;
    int time = 0;
    int window = 6;
    int bandwidth = 5;
    double smoothness = 0.9;
    std::string graph = "knn";
    int k = 5;
    double sigma = 0.2;
    double cutoff = 0.5;
    std::string shift = "lap";
    std::uint64_t seed = 0;
    std::string out = ".";
};

int cmd_synth(const SynthOptions& o, const CLI::App& app) {
    Manifest manifest(app, o.seed);
    if (o.bandwidth > o.nodes) throw InvalidArgument("--bandwidth cannot exceed --nodes");
    auto rng = substream(o.seed, "coords");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RealMatrix coords(o.nodes, 2);
    for (Index i = 0; i < coords.rows(); ++i) {
        coords(i, 0) = unit(rng);
        coords(i, 1) = unit(rng);
    }
    const Graph graph = o.graph == "knn" ? build_knn_adjacency(coords, o.k)
                                         : build_distance_adjacency(coords, o.sigma, o.cutoff);
    const RealMatrix signal =
        synth_signal(graph, parse_shift_kind(o.shift), o.time, o.bandwidth, o.smoothness, o.seed);

    const fs::path out = prepare_out(o.out);
    save_signal_csv(out / "signal.csv", signal);
    save_matrix_csv(out / "adjacency.csv", graph.adjacency());
    save_matrix_csv(out / "coords.csv", coords);
    manifest.write(out);
    std::cout << "N=" << o.nodes << " T=" << o.time << " D=" << o.window
              << " M=" << (o.time / o.window) << '\n';
    return kExitOk;
}

struct CommonRun {
    DataOptions data;
    TrainOptions train;
    std::string out = ".";
};

int cmd_train(const CommonRun& o, const CLI::App& app) {
    Manifest manifest(app, o.data.seed);
    manifest.input(o.data.signal);
    manifest.input(o.data.adjacency);
    manifest.input(o.data.noisy);

    const ShiftKind shift = parse_shift_kind(o.train.shift);
    const ModelKind model = parse_model_kind(o.train.model);
    const Dataset data = load_dataset(o.data, o.data.signal);
    const Operators ops = build_operators(data.graph, shift, o.data.window, o.data.kappa_max);
    TrainRun run = run_training(data, ops, shift, model, o.train, o.data.seed);

    const fs::path out = prepare_out(o.out);
    json config{{"data", o.data.to_json()}, {"train", o.train.to_json()}};
    save_checkpoint(out / "checkpoint.json",
                    make_checkpoint(run.net, shift, basis_fingerprint(ops.basis), config));
    write_history(out / "history.csv", run.history, run.net.layers().size());
    write_json(out / "metrics.json", run.metrics);
    manifest.write(out);

    const json& snr = run.metrics["snr_db"];
    std::cout << "test SNR: input " << snr["test_input"].dump() << " dB -> output "
              << snr["test_output"].dump() << " dB\n";
    return kExitOk;
}

struct EvalOptions {
    std::string checkpoint;
    std::string signal;
    std::string adjacency;
    std::string noisy;
    std::string out = ".";
};

int cmd_eval(const EvalOptions& o, const CLI::App& app) {
    const Checkpoint ck = load_checkpoint(o.checkpoint);
    const json& data_cfg = ck.config.value("data", json::object());

    DataOptions data;
    data.adjacency = o.adjacency;
    data.noisy = o.noisy;
    try {
        data.window = data_cfg.at("window").get<int>();
        data.noise_kind = data_cfg.at("noise").get<std::string>();
        const json& snr = data_cfg.at("snr_db");
        data.snr_db = snr.is_string() ? std::stod(snr.get<std::string>()) : snr.get<double>();
        data.ar_coefficient = data_cfg.at("ar_coefficient").get<double>();
        data.seed = data_cfg.at("seed").get<std::uint64_t>();
        data.kappa_max = data_cfg.at("kappa_max").get<double>();
    } catch (const std::exception& e) {
        throw ParseError(std::string("checkpoint data configuration is incomplete: ") + e.what());
    }
    if (data_cfg.value("noisy_file", false) && o.noisy.empty()) {
        throw InvalidArgument("the model was trained on a --noisy file; pass it again to evaluate");
    }
    Manifest manifest(app, data.seed);
    manifest.input(o.checkpoint);
    manifest.input(o.signal);
    manifest.input(o.adjacency);
    manifest.input(o.noisy);

    const Dataset dataset = load_dataset(data, o.signal);
    const Operators ops = build_operators(dataset.graph, ck.shift, data.window, data.kappa_max);
    const std::string fingerprint = basis_fingerprint(ops.basis);
    if (fingerprint != ck.fingerprint) {
        throw FingerprintMismatch("graph eigen-basis fingerprint " + fingerprint +
                                  " does not match the checkpoint (" + ck.fingerprint +
                                  "); was the model trained on a different graph?");
    }
    const Network net = restore_network(ck, ops.joint);
    const auto test_out = denoise(net, dataset.noisy.test);

    json metrics{{"schema", "jfrffnet.metrics"},
                 {"schema_version", kMetricsSchemaVersion},
                 {"model", std::string(to_string(ck.model))},
                 {"shift_kind", std::string(to_string(ck.shift))},
                 {"samples", {{"test", dataset.clean.test.size()}}},
                 {"snr_db",
                  {{"test_input", num(snr_db(dataset.clean.test, dataset.noisy.test))},
                   {"test_output", num(snr_db(dataset.clean.test, test_out))},
                   {"test_input_mean_per_sample",
                    num(mean_snr_db(dataset.clean.test, dataset.noisy.test))},
                   {"test_output_mean_per_sample", num(mean_snr_db(dataset.clean.test, test_out))}}},
                 {"layers", layer_block(net)},
                 {"parameters", parameter_block(net)}};
    const fs::path out = prepare_out(o.out);
    write_json(out / "eval_metrics.json", metrics);
    manifest.write(out);
    std::cout << "test SNR: input " << metrics["snr_db"]["test_input"].dump() << " dB -> output "
              << metrics["snr_db"]["test_output"].dump() << " dB\n";
    return kExitOk;
}

std::vector<double> parse_grid(const std::string& spec) {
    // "start:step:stop" or a comma-separated list
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        double start = 0, step = 0, stop = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(spec);
        if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || !(step > 0.0) ||
            stop < start) {
            throw InvalidArgument("grid '" + spec + "' must look like start:step:stop");
        }
        const long count = std::lround(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= count; ++i) values.push_back(start + static_cast<double>(i) * step);
        return values;
    }
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InvalidArgument("grid value '" + item + "' is not a number");
        }
    }
    if (values.empty()) throw InvalidArgument("empty grid");
    return values;
}

struct WienerCmdOptions {
    DataOptions data;
    std::string shift = "lap";
    std::string alphas = "0:0.1:2";
    std::string betas = "0:0.1:2";
    double regularization = 0.0;
    bool verify = false;
    std::string out = ".";
};

int cmd_wiener(const WienerCmdOptions& o, const CLI::App& app) {
    Manifest manifest(app, o.data.seed);
    manifest.input(o.data.signal);
    manifest.input(o.data.adjacency);
    manifest.input(o.data.noisy);

    const ShiftKind shift = parse_shift_kind(o.shift);
    const Dataset data = load_dataset(o.data, o.data.signal);
    const Operators ops = build_operators(data.graph, shift, o.data.window, o.data.kappa_max);
    const Index n = data.graph.size();
    const Index d = o.data.window;
    const ComplexMatrix g_graph = ComplexMatrix::Identity(n, n);
    const ComplexMatrix g_time = ComplexMatrix::Identity(d, d);

    const SecondOrderStats stats = empirical_stats(data.clean.train, data.noisy.train, g_graph, g_time);
    WienerOptions wopt;
    wopt.regularization = o.regularization;
    const GridSearchResult result =
        grid_search(stats, ops.joint, parse_grid(o.alphas), parse_grid(o.betas), wopt);

    if (o.verify) {
        for (const GridCell& cell : result.cells) {
            if (cell.ok && cell.objective < result.best.objective -
                                                  1e-12 * std::max(1.0, std::abs(result.best.objective))) {
                throw ContractViolation("grid search returned a non-minimal cell");
            }
        }
        log(LogLevel::info, "verified: reported objective is minimal over " +
                                std::to_string(result.cells.size()) + " grid cells");
    }

    std::vector<RealMatrix> test_out;
    test_out.reserve(data.noisy.test.size());
    for (const RealMatrix& y : data.noisy.test) {
        test_out.push_back(apply_filter(result.best, ops.joint, y.cast<Complex>()).real());
    }

    const fs::path out = prepare_out(o.out);
    {
        std::ofstream f(out / "wiener_filter.csv", std::ios::binary);
        f << "index,vertex,time,real,imag\n";
        for (Index k = 0; k < result.best.coefficients.size(); ++k) {
            f << k << ',' << (k % n) << ',' << (k / n) << ','
              << fmt_double(result.best.coefficients(k).real()) << ','
              << fmt_double(result.best.coefficients(k).imag()) << '\n';
        }
    }
    {
        std::ofstream f(out / "wiener_grid.csv", std::ios::binary);
        f << "alpha,beta,status,objective\n";
        for (const GridCell& c : result.cells) {
            f << fmt_double(c.alpha) << ',' << fmt_double(c.beta) << ','
              << (c.ok ? "ok" : "rank-deficient") << ',' << (c.ok ? fmt_double(c.objective) : "")
              << '\n';
        }
    }
    json metrics{{"schema", "jfrffnet.wiener_metrics"},
                 {"schema_version", kMetricsSchemaVersion},
                 {"shift_kind", std::string(to_string(shift))},
                 {"alpha", result.best.alpha},
                 {"beta", result.best.beta},
                 {"objective", result.best.objective},
                 {"grid_cells", result.cells.size()},
                 {"samples", {{"train", data.clean.train.size()}, {"test", data.clean.test.size()}}},
                 {"snr_db",
                  {{"test_input", num(snr_db(data.clean.test, data.noisy.test))},
                   {"test_output", num(snr_db(data.clean.test, test_out))}}}};
    write_json(out / "wiener_metrics.json", metrics);
    manifest.write(out);
    std::cout << "best (alpha, beta) = (" << result.best.alpha << ", " << result.best.beta
              << "), test SNR: input " << metrics["snr_db"]["test_input"].dump() << " dB -> output "
              << metrics["snr_db"]["test_output"].dump() << " dB\n";
    return kExitOk;
}

int cmd_sweep(const CommonRun& o, const CLI::App& app) {
    Manifest manifest(app, o.data.seed);
    manifest.input(o.data.signal);
    manifest.input(o.data.adjacency);
    manifest.input(o.data.noisy);

    const Dataset data = load_dataset(o.data, o.data.signal);
    const double input_snr = snr_db(data.clean.test, data.noisy.test);
    json rows = json::array();
    std::ostringstream csv;
    csv << "shift_kind,model,status,input_snr_db,output_snr_db\n";
    int succeeded = 0;
    for (ShiftKind kind : kAllShiftKinds) {
        std::optional<Operators> ops;
        std::string status = "ok";
        try {
            ops.emplace(build_operators(data.graph, kind, o.data.window, o.data.kappa_max));
        } catch (const IllConditioned& e) {
            status = "skipped: ill-conditioned";
            log(LogLevel::info, e.what());
        } catch (const BranchAmbiguity& e) {
            status = "skipped: branch-ambiguous";
            log(LogLevel::info, e.what());
        } catch (const SingularMatrix& e) {
            status = "skipped: singular";
            log(LogLevel::info, e.what());
        } catch (const DegenerateInput& e) {
            status = "skipped: degenerate";
            log(LogLevel::info, e.what());
        }
        for (ModelKind model : {ModelKind::jfrffnet, ModelKind::gfrffnet}) {
            json row{{"shift_kind", std::string(to_string(kind))},
                     {"model", std::string(to_string(model))},
                     {"status", status},
                     {"input_snr_db", num(input_snr)}};
            std::string output_cell;
            if (ops) {
                const TrainRun run = run_training(data, *ops, kind, model, o.train, o.data.seed);
                const json& out_snr = run.metrics["snr_db"]["test_output"];
                row["output_snr_db"] = out_snr;
                row["layers"] = run.metrics["layers"];
                output_cell = out_snr.is_string() ? out_snr.get<std::string>()
                                                  : fmt_double(out_snr.get<double>());
                ++succeeded;
            } else {
                row["output_snr_db"] = nullptr;
            }
            csv << to_string(kind) << ',' << to_string(model) << ',' << status << ','
                << fmt_double(input_snr) << ',' << output_cell << '\n';
            rows.push_back(row);
        }
    }
    if (succeeded == 0) throw Error("every shift kind failed to decompose; nothing to report");

    const fs::path out = prepare_out(o.out);
    {
        std::ofstream f(out / "sweep.csv", std::ios::binary);
        f << csv.str();
    }
    write_json(out / "sweep_metrics.json", json{{"schema", "jfrffnet.sweep"},
                                                {"schema_version", kMetricsSchemaVersion},
                                                {"rows", rows}});
    manifest.write(out);
    std::cout << csv.str();
    return kExitOk;
}

struct TransformOptions {
    DataOptions data;
    std::string shift = "lap";
    double alpha = 1.0;
    double beta = 1.0;
    std::string out = ".";
};

int cmd_transform(const TransformOptions& o, const CLI::App& app) {
    Manifest manifest(app, o.data.seed);
    manifest.input(o.data.signal);
    manifest.input(o.data.adjacency);
    const Graph graph = load_adjacency_csv(o.data.adjacency);
    const RealMatrix signal = load_signal_csv(o.data.signal);
    if (signal.rows() != graph.size()) throw InvalidArgument("signal rows do not match the graph");
    const Operators ops =
        build_operators(graph, parse_shift_kind(o.shift), o.data.window, o.data.kappa_max);
    const auto windows = window(signal, o.data.window);
    RealMatrix re(signal.rows(), static_cast<Index>(windows.size()) * o.data.window);
    RealMatrix im(re.rows(), re.cols());
    for (std::size_t k = 0; k < windows.size(); ++k) {
        const ComplexMatrix t = forward(ops.joint, windows[k].cast<Complex>(), o.alpha, o.beta);
        re.middleCols(static_cast<Index>(k) * o.data.window, o.data.window) = t.real();
        im.middleCols(static_cast<Index>(k) * o.data.window, o.data.window) = t.imag();
    }
    const fs::path out = prepare_out(o.out);
    save_matrix_csv(out / "transform_real.csv", re);
    save_matrix_csv(out / "transform_imag.csv", im);
    manifest.write(out);
    std::cout << "transformed " << windows.size() << " windows at (alpha, beta) = (" << o.alpha
              << ", " << o.beta << ")\n";
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Joint time-vertex fractional Fourier denoising (JFRFFNet and Wiener baseline)",
                 "jfrffnet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", JFRF_VERSION);

    SynthOptions synth;
    CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic sensor graph and signal");
    synth_cmd->add_option("--nodes", synth.nodes, "Vertex count")->required()->check(CLI::Range(2, 100000));
    synth_cmd->add_option("--time", synth.time, "Signal length")->required()->check(CLI::PositiveNumber);
    synth_cmd->add_option("--window", synth.window, "Window length used for the summary")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth_cmd->add_option("--bandwidth", synth.bandwidth, "Number of smooth graph modes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth_cmd->add_option("--smoothness", synth.smoothness, "AR(1) coefficient of the modes")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    synth_cmd->add_option("--graph", synth.graph, "Graph builder")
        ->check(CLI::IsMember({"knn", "distance"}))
        ->capture_default_str();
    synth_cmd->add_option("--k", synth.k, "Neighbours for --graph knn")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth_cmd->add_option("--sigma", synth.sigma, "Kernel width for --graph distance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth_cmd->add_option("--cutoff", synth.cutoff, "Distance cutoff for --graph distance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth_cmd->add_option("--shift", synth.shift, "Shift whose eigenvectors shape the signal")
        ->check(CLI::IsMember({"adj", "lap", "rna", "sna", "nlap"}))
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--out", synth.out, "Output directory")->capture_default_str();

    CommonRun train_opts;
    CLI::App* train_cmd = app.add_subcommand("train", "Train JFRFFNet or GFRFFNet");
    train_opts.data.add_to(*train_cmd);
    train_opts.train.add_to(*train_cmd, true);
    train_cmd->add_option("--out", train_opts.out, "Output directory")->capture_default_str();

    EvalOptions eval_opts;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on the test split");
    eval_cmd->add_option("--checkpoint", eval_opts.checkpoint, "Checkpoint JSON")
        ->required()
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--signal", eval_opts.signal, "Clean signal CSV")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--adjacency", eval_opts.adjacency, "Adjacency CSV")
        ->required()
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--noisy", eval_opts.noisy, "Noisy signal CSV (if training used one)")
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--out", eval_opts.out, "Output directory")->capture_default_str();

    WienerCmdOptions wiener_opts;
    CLI::App* wiener_cmd =
        app.add_subcommand("wiener", "Model-driven JFRFT-domain Wiener filter with order grid search");
    wiener_opts.data.add_to(*wiener_cmd);
    wiener_cmd->add_option("--shift", wiener_opts.shift, "Graph shift operator")
        ->check(CLI::IsMember({"adj", "lap", "rna", "sna", "nlap"}))
        ->capture_default_str();
    wiener_cmd->add_option("--alphas", wiener_opts.alphas, "Alpha grid (start:step:stop or list)")
        ->capture_default_str();
    wiener_cmd->add_option("--betas", wiener_opts.betas, "Beta grid (start:step:stop or list)")
        ->capture_default_str();
    wiener_cmd->add_option("--regularization", wiener_opts.regularization,
                           "Tikhonov term added to the normal equations")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    wiener_cmd->add_flag("--verify", wiener_opts.verify, "Re-check minimality over every grid cell");
    wiener_cmd->add_option("--out", wiener_opts.out, "Output directory")->capture_default_str();

    CommonRun sweep_opts;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep-shifts", "Train both models on every shift kind and tabulate test SNR");
    sweep_opts.data.add_to(*sweep_cmd);
    sweep_opts.train.add_to(*sweep_cmd, false);
    sweep_cmd->add_option("--out", sweep_opts.out, "Output directory")->capture_default_str();

    TransformOptions transform_opts;
    CLI::App* transform_cmd =
        app.add_subcommand("transform", "Apply the joint fractional transform window by window");
    transform_opts.data.add_to(*transform_cmd);
    transform_cmd->add_option("--shift", transform_opts.shift, "Graph shift operator")
        ->check(CLI::IsMember({"adj", "lap", "rna", "sna", "nlap"}))
        ->capture_default_str();
    transform_cmd->add_option("--alpha", transform_opts.alpha, "Graph order")->capture_default_str();
    transform_cmd->add_option("--beta", transform_opts.beta, "Time order")->capture_default_str();
    transform_cmd->add_option("--out", transform_opts.out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*synth_cmd) return cmd_synth(synth, *synth_cmd);
        if (*train_cmd) return cmd_train(train_opts, *train_cmd);
        if (*eval_cmd) return cmd_eval(eval_opts, *eval_cmd);
        if (*wiener_cmd) return cmd_wiener(wiener_opts, *wiener_cmd);
        if (*sweep_cmd) return cmd_sweep(sweep_opts, *sweep_cmd);
        if (*transform_cmd) return cmd_transform(transform_opts, *transform_cmd);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"jfrffnet"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace jfrf::cli
