#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jfrf/data.hpp"
#include "jfrf/errors.hpp"
#include "jfrf/graph.hpp"
#include "jfrf/jfrft.hpp"
#include "jfrf/network.hpp"
#include "jfrf/training.hpp"
#include "jfrf/wiener.hpp"

namespace py = pybind11;
using namespace jfrf;

namespace {

JointOperator make_operator(const Graph& graph, const std::string& shift, Index window, double kappa_max) {
    const SpectralBasis basis = eigendecompose(shift_operator(graph, parse_shift_kind(shift)), kappa_max);
    return JointOperator{GfrftOperator(basis, kappa_max), DfrftOperator(window)};
}

py::dict history_dict(const TrainHistory& h) {
    py::list epochs;
    for (const EpochRecord& r : h.epochs) {
        py::dict e;
        e["epoch"] = r.epoch;
        e["train_loss"] = r.train_loss;
        e["val_snr_db"] = r.val_snr_db;
        e["alphas"] = r.alphas;
        e["betas"] = r.betas;
        epochs.append(e);
    }
    py::dict out;
    out["initial_val_snr_db"] = h.initial_val_snr_db;
    out["best_epoch"] = h.best_epoch;
    out["best_val_snr_db"] = h.best_val_snr_db;
    out["epochs"] = epochs;
    return out;
}

}  // namespace

PYBIND11_MODULE(_jfrffnet, m) {
    m.doc() = "Joint time-vertex fractional Fourier transforms and JFRFFNet denoising";
    m.attr("__version__") = JFRF_VERSION;

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
    py::register_exception<DegenerateInput>(m, "DegenerateInput", error.ptr());
    py::register_exception<IllConditioned>(m, "IllConditioned", error.ptr());
    py::register_exception<BranchAmbiguity>(m, "BranchAmbiguity", error.ptr());
    py::register_exception<SingularMatrix>(m, "SingularMatrix", error.ptr());
    py::register_exception<RankDeficient>(m, "RankDeficient", error.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", error.ptr());
    py::register_exception<ContractViolation>(m, "ContractViolation", error.ptr());
    py::register_exception<ParseError>(m, "ParseError", error.ptr());

    py::class_<Graph>(m, "Graph")
        .def(py::init<RealMatrix>(), py::arg("adjacency"))
        .def_property_readonly("adjacency", &Graph::adjacency)
        .def_property_readonly("size", &Graph::size)
        .def_property_readonly("symmetric", &Graph::is_symmetric)
        .def("degrees", &Graph::degrees)
        .def("__len__", &Graph::size);

    m.def("knn_graph", &build_knn_adjacency, py::arg("features"), py::arg("k"));
    m.def("correlation_graph", &build_correlation_adjacency, py::arg("series"), py::arg("threshold") = 0.5);
    m.def("distance_graph", &build_distance_adjacency, py::arg("coords"), py::arg("sigma"), py::arg("cutoff"));
    m.def(
        "shift_operator",
        [](const Graph& g, const std::string& kind) { return shift_operator(g, parse_shift_kind(kind)); },
        py::arg("graph"), py::arg("kind") = "lap");
    m.attr("SHIFT_KINDS") = std::vector<std::string>{"adj", "lap", "rna", "sna", "nlap"};

    m.def("dft_matrix", &unitary_dft, py::arg("d"));
    m.def(
        "dfrft_matrix", [](Index d, double beta) { return DfrftOperator(d).fractional_matrix(beta); },
        py::arg("d"), py::arg("beta"));

    py::class_<JointOperator>(m, "JointTransform")
        .def(py::init(&make_operator), py::arg("graph"), py::arg("shift") = "lap", py::arg("window") = 6,
             py::arg("kappa_max") = kDefaultKappaMax)
        .def_property_readonly("vertices", &JointOperator::vertices)
        .def_property_readonly("window", &JointOperator::window)
        .def_property_readonly("gft", [](const JointOperator& op) { return op.graph.gft(); })
        .def(
            "graph_matrix", [](const JointOperator& op, double a) { return op.graph.fractional_matrix(a); },
            py::arg("alpha"))
        .def(
            "time_matrix", [](const JointOperator& op, double b) { return op.time.fractional_matrix(b); },
            py::arg("beta"))
        .def(
            "forward", [](const JointOperator& op, const ComplexMatrix& x, double a, double b) {
                return forward(op, x, a, b);
            },
            py::arg("x"), py::arg("alpha"), py::arg("beta"))
        .def(
            "inverse", [](const JointOperator& op, const ComplexMatrix& x, double a, double b) {
                return inverse(op, x, a, b);
            },
            py::arg("x"), py::arg("alpha"), py::arg("beta"))
        .def("matrix", &explicit_matrix, py::arg("alpha"), py::arg("beta"));

    py::class_<Network>(m, "Network")
        .def(py::init([](const JointOperator& op, int layers, const std::string& model) {
                 return init_network(op, layers, parse_model_kind(model));
             }),
             py::arg("transform"), py::arg("layers") = 3, py::arg("model") = "jfrffnet")
        .def_property_readonly("model", [](const Network& n) { return std::string(to_string(n.kind())); })
        .def_property_readonly("layers", [](const Network& n) { return n.layers().size(); })
        .def_property_readonly("parameters_per_layer", &Network::parameters_per_layer)
        .def_property_readonly("parameter_count", &Network::parameter_count)
        .def_property_readonly("orders",
                               [](const Network& n) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const Layer& l : n.layers()) out.emplace_back(l.alpha, l.beta);
                                   return out;
                               })
        .def("filter", [](const Network& n, std::size_t l) { return n.layers().at(l).filter; }, py::arg("layer"))
        .def("get_parameters", &Network::parameters)
        .def("set_parameters", &Network::set_parameters, py::arg("params"))
        .def(
            "__call__", [](const Network& n, const RealMatrix& x) { return network_forward(n, x).output; },
            py::arg("x"))
        .def(
            "loss_and_gradient",
            [](const Network& n, const RealMatrix& x, const RealMatrix& target) {
                auto t = std::make_shared<const std::vector<LayerTransforms>>(n.transforms(true));
                const ForwardPass pass = network_forward(n, t, x);
                const RealVector g =
                    network_backward(n, pass, mse_gradient(pass.output, target)).flatten(n.kind());
                return std::make_pair(mse_loss(pass.output, target), g);
            },
            py::arg("x"), py::arg("target"));

    m.def(
        "train",
        [](Network& net, std::vector<RealMatrix> train_clean, std::vector<RealMatrix> train_noisy,
           std::vector<RealMatrix> val_clean, std::vector<RealMatrix> val_noisy, double lr, double wd, int epochs,
           int patience, std::size_t batch_size, std::uint64_t seed) {
            TrainConfig c;
            c.learning_rate = lr;
            c.weight_decay = wd;
            c.max_epochs = epochs;
            c.patience = patience;
            c.batch_size = batch_size;
            c.seed = seed;
            const SampleSet tr{std::move(train_clean), std::move(train_noisy)};
            const SampleSet va{std::move(val_clean), std::move(val_noisy)};
            TrainHistory h;
            {
                py::gil_scoped_release release;
                h = train(net, tr, va, c);
            }
            return history_dict(h);
        },
        py::arg("network"), py::arg("train_clean"), py::arg("train_noisy"), py::arg("val_clean"),
        py::arg("val_noisy"), py::arg("lr") = 1e-3, py::arg("weight_decay") = 1e-3, py::arg("epochs") = 500,
        py::arg("patience") = 50, py::arg("batch_size") = 0, py::arg("seed") = 0);
    m.def("denoise", &denoise, py::arg("network"), py::arg("noisy"));

    py::class_<SecondOrderStats>(m, "SecondOrderStats")
        .def_readonly("r_xx", &SecondOrderStats::r_xx)
        .def_readonly("r_nn", &SecondOrderStats::r_nn)
        .def_readonly("r_xn", &SecondOrderStats::r_xn)
        .def_property_readonly("r_yy", &SecondOrderStats::r_yy)
        .def_property_readonly("r_xy", &SecondOrderStats::r_xy);
    m.def(
        "empirical_stats",
        [](const std::vector<RealMatrix>& clean, const std::vector<RealMatrix>& noisy) {
            if (clean.empty()) throw InvalidArgument("empirical_stats needs samples");
            const Index n = clean.front().rows(), d = clean.front().cols();
            return empirical_stats(clean, noisy, ComplexMatrix::Identity(n, n), ComplexMatrix::Identity(d, d));
        },
        py::arg("clean"), py::arg("noisy"), "Second moments under an identity channel.");
    m.def(
        "wiener_filter",
        [](const SecondOrderStats& s, const JointOperator& op, double a, double b, double reg) {
            WienerOptions o;
            o.regularization = reg;
            const DiagonalFilter f = optimal_diagonal_filter(s, op, a, b, o);
            return std::make_pair(f.coefficients, f.objective);
        },
        py::arg("stats"), py::arg("transform"), py::arg("alpha"), py::arg("beta"), py::arg("regularization") = 0.0);
    m.def(
        "wiener_grid_search",
        [](const SecondOrderStats& s, const JointOperator& op, std::vector<double> alphas,
           std::vector<double> betas, double reg) {
            WienerOptions o;
            o.regularization = reg;
            const GridSearchResult r = grid_search(s, op, std::move(alphas), std::move(betas), o);
            py::dict out;
            out["alpha"] = r.best.alpha;
            out["beta"] = r.best.beta;
            out["objective"] = r.best.objective;
            out["coefficients"] = r.best.coefficients;
            return out;
        },
        py::arg("stats"), py::arg("transform"), py::arg("alphas") = default_order_grid(),
        py::arg("betas") = default_order_grid(), py::arg("regularization") = 0.0);
    m.def(
        "apply_filter",
        [](const JointOperator& op, const ComplexVector& h, double a, double b, const ComplexMatrix& y) {
            DiagonalFilter f;
            f.coefficients = h;
            f.alpha = a;
            f.beta = b;
            return apply_filter(f, op, y);
        },
        py::arg("transform"), py::arg("coefficients"), py::arg("alpha"), py::arg("beta"), py::arg("y"));

    m.def("window", &window, py::arg("signal"), py::arg("d"));
    m.def(
        "split",
        [](const std::vector<RealMatrix>& samples) {
            Splits<RealMatrix> s = split(samples);
            return py::make_tuple(s.train, s.val, s.test);
        },
        py::arg("samples"));
    m.def(
        "add_noise",
        [](const std::vector<RealMatrix>& clean, double snr, const std::string& kind, double ar, std::uint64_t seed) {
            NoiseSpec spec;
            spec.kind = parse_noise_kind(kind);
            spec.target_snr_db = snr;
            spec.ar_coefficient = ar;
            spec.seed = seed;
            return add_noise(clean, spec);
        },
        py::arg("clean"), py::arg("snr_db"), py::arg("kind") = "white", py::arg("ar") = 0.5, py::arg("seed") = 0);
    m.def(
        "snr_db",
        [](const std::vector<RealMatrix>& ref, const std::vector<RealMatrix>& est) { return snr_db(ref, est); },
        py::arg("reference"), py::arg("estimate"));
    m.def(
        "synth_signal",
        [](const Graph& g, const std::string& kind, Index t, Index bandwidth, double smoothness, std::uint64_t seed) {
            return synth_signal(g, parse_shift_kind(kind), t, bandwidth, smoothness, seed);
        },
        py::arg("graph"), py::arg("shift") = "lap", py::arg("time") = 1200, py::arg("bandwidth") = 5,
        py::arg("smoothness") = 0.9, py::arg("seed") = 0);
}
