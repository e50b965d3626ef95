#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "jfrf/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    auto* old_out = std::cout.rdbuf(out.rdbuf());
    auto* old_err = std::cerr.rdbuf(err.rdbuf());
    const int code = jfrf::cli::run(args);
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return {code, out.str(), err.str()};
}

fs::path workdir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "jfrf_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

// Small synthetic dataset shared by the tests below.
fs::path dataset() {
    static const fs::path dir = [] {
        const fs::path d = workdir() / "data";
        const Result r = run({"synth", "--nodes", "10", "--time", "120", "--window", "4", "--bandwidth", "3",
                              "--seed", "5", "--out", d.string()});
        REQUIRE(r.code == 0);
        return d;
    }();
    return dir;
}

std::vector<std::string> data_flags(const std::string& extra_signal = "") {
    const fs::path d = dataset();
    return {"--signal", extra_signal.empty() ? (d / "signal.csv").string() : extra_signal,
            "--adjacency", (d / "adjacency.csv").string(), "--window", "4", "--seed", "3"};
}

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST_CASE("synth writes the dataset and a summary") {
    const fs::path d = workdir() / "synth";
    const Result r = run({"synth", "--nodes", "30", "--time", "600", "--window", "6", "--out", d.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("M=100") != std::string::npos);
    std::ifstream in(d / "signal.csv");
    std::string line;
    int rows = 0;
    std::size_t commas = 0;
    while (std::getline(in, line)) {
        if (rows == 0) commas = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
        ++rows;
    }
    CHECK(rows == 30);
    CHECK(commas == 599);
    CHECK(fs::exists(d / "adjacency.csv"));
    CHECK(fs::exists(d / "synth.manifest.json"));
    const json m = load_json(d / "synth.manifest.json");
    CHECK(m["command"] == "synth");
    CHECK(m.contains("version"));
    CHECK(m.contains("started_at"));

    const fs::path d2 = workdir() / "synth2";
    REQUIRE(run({"synth", "--nodes", "30", "--time", "600", "--window", "6", "--out", d2.string()}).code == 0);
    CHECK(slurp(d / "signal.csv") == slurp(d2 / "signal.csv"));
    CHECK(slurp(d / "adjacency.csv") == slurp(d2 / "adjacency.csv"));
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"synth", "--time", "10"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run(cat({"train", "--model", "resnet"}, data_flags())).code == 2);
    CHECK(run(cat({"train", "--shift", "laplacian"}, data_flags())).code == 2);
    CHECK(run({"train", "--signal", "/nonexistent.csv", "--adjacency", "/nonexistent.csv"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("train, eval and the checkpoint contract") {
    const fs::path out = workdir() / "train";
    const Result r = run(cat({"train", "--epochs", "20", "--patience", "20", "--layers", "2", "--out", out.string()},
                             data_flags()));
    REQUIRE(r.code == 0);
    const json m = load_json(out / "metrics.json");
    CHECK(m["schema"] == "jfrffnet.metrics");
    CHECK(m["schema_version"] == 1);
    for (const char* key : {"val_input", "val_output", "test_input", "test_output"}) {
        CHECK(m["snr_db"][key].is_number());
    }
    CHECK(m["layers"].size() == 2);
    CHECK(m["layers"][0].contains("beta"));

    std::ifstream hist(out / "history.csv");
    std::string header;
    std::getline(hist, header);
    CHECK(header == "epoch,train_loss,val_snr_db,alpha_1,beta_1,alpha_2,beta_2");
    int rows = 0;
    for (std::string line; std::getline(hist, line);) ++rows;
    CHECK(rows == m["epochs_run"].get<int>());
    CHECK(fs::exists(out / "train.manifest.json"));

    const fs::path eval_out = workdir() / "eval";
    const fs::path d = dataset();
    const Result e = run({"eval", "--checkpoint", (out / "checkpoint.json").string(), "--signal",
                          (d / "signal.csv").string(), "--adjacency", (d / "adjacency.csv").string(), "--out",
                          eval_out.string()});
    REQUIRE(e.code == 0);
    const json em = load_json(eval_out / "eval_metrics.json");
    CHECK(em["snr_db"]["test_output"] == m["snr_db"]["test_output"]);
    CHECK(em["snr_db"]["test_input"] == m["snr_db"]["test_input"]);

    // a different graph with the same size
    const fs::path other = workdir() / "other";
    REQUIRE(run({"synth", "--nodes", "10", "--time", "120", "--seed", "99", "--out", other.string()}).code == 0);
    const Result mismatch = run({"eval", "--checkpoint", (out / "checkpoint.json").string(), "--signal",
                                 (d / "signal.csv").string(), "--adjacency", (other / "adjacency.csv").string(),
                                 "--out", eval_out.string()});
    CHECK(mismatch.code == 1);
    CHECK(mismatch.err.find("fingerprint") != std::string::npos);

    const fs::path broken = workdir() / "broken.json";
    std::ofstream(broken) << slurp(out / "checkpoint.json").substr(0, 100);
    CHECK(run({"eval", "--checkpoint", broken.string(), "--signal", (d / "signal.csv").string(), "--adjacency",
               (d / "adjacency.csv").string(), "--out", eval_out.string()})
              .code == 1);
}

TEST_CASE("gfrffnet checkpoint reports N + 1 parameters per layer") {
    const fs::path out = workdir() / "gtrain";
    REQUIRE(run(cat({"train", "--model", "gfrffnet", "--epochs", "3", "--patience", "3", "--out", out.string()},
                    data_flags()))
                .code == 0);
    const json ck = load_json(out / "checkpoint.json");
    CHECK(ck["parameters_per_layer"] == 11);
    CHECK(ck["model"] == "gfrffnet");
}

TEST_CASE("zero-noise training reports the infinite-SNR sentinel") {
    const fs::path out = workdir() / "clean";
    REQUIRE(run(cat({"train", "--snr", "inf", "--epochs", "5", "--patience", "5", "--out", out.string()},
                    data_flags()))
                .code == 0);
    const json m = load_json(out / "metrics.json");
    CHECK(m["snr_db"]["test_input"] == "inf");
    CHECK(m["snr_db"]["test_output"].is_number());
}

TEST_CASE("ill-conditioned shift fails with the kind named") {
    const Result r = run(cat({"train", "--shift", "rna", "--kappa-max", "1.0001", "--epochs", "2", "--out",
                              (workdir() / "ill").string()},
                             data_flags()));
    CHECK(r.code == 1);
    CHECK(r.err.find("rna") != std::string::npos);
    CHECK(r.err.find("lap") != std::string::npos);
}

TEST_CASE("wiener command") {
    const fs::path out = workdir() / "wiener";
    const Result r = run(cat({"wiener", "--alphas", "0", "--betas", "0", "--snr", "inf", "--out", out.string()},
                             data_flags()));
    REQUIRE(r.code == 0);
    const json m = load_json(out / "wiener_metrics.json");
    CHECK(m["snr_db"]["test_output"] == "inf");
    CHECK(m["alpha"] == 0.0);

    const fs::path out2 = workdir() / "wiener_grid";
    const Result v = run(cat({"wiener", "--alphas", "0:0.5:2", "--betas", "0:0.5:2", "--regularization", "1e-9",
                              "--verify", "--out", out2.string()},
                             data_flags()));
    REQUIRE(v.code == 0);
    const json m2 = load_json(out2 / "wiener_metrics.json");
    CHECK(m2["grid_cells"] == 25);
    CHECK(m2["snr_db"]["test_output"].get<double>() > m2["snr_db"]["test_input"].get<double>());
    std::ifstream grid(out2 / "wiener_grid.csv");
    int rows = 0;
    for (std::string line; std::getline(grid, line);) ++rows;
    CHECK(rows == 26);
    CHECK(run(cat({"wiener", "--alphas", "a:b"}, data_flags())).code == 1);
}

TEST_CASE("sweep tabulates every kind and records skips") {
    const fs::path out = workdir() / "sweep";
    const Result r = run(cat({"sweep-shifts", "--epochs", "2", "--patience", "2", "--layers", "1", "--kappa-max",
                              "1.0001", "--out", out.string()},
                             data_flags()));
    REQUIRE(r.code == 0);
    std::ifstream csv(out / "sweep.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "shift_kind,model,status,input_snr_db,output_snr_db");
    int rows = 0, skipped = 0;
    for (std::string line; std::getline(csv, line);) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
        if (line.find("skipped: ill-conditioned") != std::string::npos) {
            ++skipped;
            CHECK(line.rfind("rna", 0) == 0);
        }
    }
    CHECK(rows == 10);
    CHECK(skipped == 2);
}

TEST_CASE("transform command writes real and imaginary parts") {
    const fs::path out = workdir() / "transform";
    REQUIRE(run(cat({"transform", "--alpha", "0", "--beta", "0", "--out", out.string()}, data_flags())).code == 0);
    CHECK(slurp(out / "transform_imag.csv").find_first_not_of("0,\n") == std::string::npos);
}
