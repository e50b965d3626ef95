#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "jfrf/errors.hpp"
#include "jfrf/graph.hpp"

using namespace jfrf;

namespace {

// Brute force: for each vertex, sort every other vertex by (distance, index).
RealMatrix knn_oracle(const RealMatrix& pts, int k) {
    const Index n = pts.rows();
    RealMatrix a = RealMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        std::vector<std::pair<double, Index>> cand;
        for (Index j = 0; j < n; ++j) {
            if (j != i) cand.emplace_back((pts.row(i) - pts.row(j)).squaredNorm(), j);
        }
        std::sort(cand.begin(), cand.end());
        for (int m = 0; m < k; ++m) {
            a(i, cand[m].second) = 1.0;
            a(cand[m].second, i) = 1.0;
        }
    }
    return a;
}

RealMatrix path2() {
    RealMatrix a(2, 2);
    a << 0, 1, 1, 0;
    return a;
}

}  // namespace

TEST_CASE("knn on a line") {
    RealMatrix pts(3, 1);
    pts << 0, 1, 10;
    const Graph g = build_knn_adjacency(pts, 1);
    RealMatrix expected(3, 3);
    expected << 0, 1, 0, 1, 0, 1, 0, 1, 0;
    CHECK(g.adjacency() == expected);
}

TEST_CASE("knn with two points and k = N rejected") {
    RealMatrix pts(2, 2);
    pts << 0.3, 0.1, -2.0, 4.0;
    CHECK(build_knn_adjacency(pts, 1).adjacency() == path2());
    CHECK_THROWS_AS(build_knn_adjacency(pts, 2), InvalidArgument);
    CHECK_THROWS_AS(build_knn_adjacency(pts, 0), InvalidArgument);
}

TEST_CASE("knn ties go to the lower index") {
    RealMatrix pts(4, 1);
    pts << 0, 1, -1, 1;  // 1, 2 and 3 are all at distance 1 from vertex 0
    const Graph g = build_knn_adjacency(pts, 1);
    CHECK(g.adjacency()(0, 1) == 1.0);
    CHECK(g.adjacency()(0, 3) == 0.0);  // 1 and 3 tie for vertex 0
    // duplicate points 1 and 3 are each other's nearest
    CHECK(g.adjacency()(1, 3) == 1.0);
}

TEST_CASE("knn matches brute force on random clouds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const RealMatrix pts = fixtures::random_real(25, 3, seed);
        for (int k : {1, 3, 5}) {
            const Graph g = build_knn_adjacency(pts, k);
            CHECK(g.adjacency() == knn_oracle(pts, k));
            CHECK(g.is_symmetric());
            CHECK(g.adjacency().diagonal().isZero(0.0));
        }
    }
}

TEST_CASE("correlation graph") {
    RealMatrix s(2, 5);
    s.row(0) << 1, 3, 2, 5, 4;
    s.row(1) = 2.0 * s.row(0);
    CHECK(build_correlation_adjacency(s).adjacency()(0, 1) == doctest::Approx(1.0));
    s.row(1) = -s.row(0);
    CHECK(build_correlation_adjacency(s).adjacency()(0, 1) == doctest::Approx(1.0));
    CHECK(build_correlation_adjacency(fixtures::random_real(3, 50, 4), 1.01).adjacency().isZero(0.0));

    RealMatrix flat = fixtures::random_real(3, 10, 5);
    flat.row(2).setConstant(7.0);
    try {
        build_correlation_adjacency(flat);
        FAIL("expected DegenerateInput");
    } catch (const DegenerateInput& e) {
        CHECK(std::string(e.what()).find('2') != std::string::npos);
    }
}

TEST_CASE("distance graph kernel") {
    RealMatrix pts(2, 2);
    pts << 0.5, 0.5, 0.5, 0.5;
    CHECK(build_distance_adjacency(pts, 0.3, 1.0).adjacency()(0, 1) == doctest::Approx(1.0));

    const double sigma = 0.7;
    pts << 0, 0, sigma * std::sqrt(2.0 * std::log(2.0)), 0;
    CHECK(build_distance_adjacency(pts, sigma, 100.0).adjacency()(0, 1) == doctest::Approx(0.5));

    pts << 0, 0, 2, 0;
    CHECK(build_distance_adjacency(pts, 1.0, 1.5).adjacency()(0, 1) == 0.0);
    CHECK_THROWS_AS(build_distance_adjacency(pts, 0.0, 1.5), InvalidArgument);
}

TEST_CASE("shift operators on a unit 2-path") {
    const Graph g(path2());
    RealMatrix lap(2, 2);
    lap << 1, -1, -1, 1;
    CHECK(shift_operator(g, ShiftKind::lap) == lap);
    CHECK(shift_operator(g, ShiftKind::rna) == path2());
    CHECK(shift_operator(g, ShiftKind::nlap) == lap);
    CHECK(shift_operator(g, ShiftKind::adj) == path2());
    CHECK(shift_operator(g, ShiftKind::sna) == path2());
}

TEST_CASE("shift operator properties on random graphs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = fixtures::knn_graph(20, 4, seed);
        const RealMatrix lap = shift_operator(g, ShiftKind::lap);
        const RealMatrix sna = shift_operator(g, ShiftKind::sna);
        const RealMatrix nlap = shift_operator(g, ShiftKind::nlap);
        const RealMatrix rna = shift_operator(g, ShiftKind::rna);
        CHECK(lap == lap.transpose());
        CHECK(sna == sna.transpose());
        CHECK(nlap == nlap.transpose());
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(lap);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);
        CHECK((rna.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
        CHECK(nlap == (RealMatrix::Identity(20, 20) - sna));
    }
}

TEST_CASE("invalid graphs and shift preconditions") {
    RealMatrix loop = path2();
    loop(0, 0) = 1.0;
    CHECK_THROWS_AS(Graph{loop}, InvalidArgument);
    CHECK_THROWS_AS(Graph(RealMatrix::Zero(2, 3)), InvalidArgument);
    RealMatrix bad = path2();
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(Graph{bad}, InvalidArgument);

    RealMatrix isolated = RealMatrix::Zero(3, 3);
    isolated(0, 1) = isolated(1, 0) = 1.0;
    const Graph gi(isolated);
    CHECK_NOTHROW(shift_operator(gi, ShiftKind::adj));
    for (ShiftKind k : {ShiftKind::rna, ShiftKind::sna, ShiftKind::nlap}) {
        CHECK_THROWS_AS(shift_operator(gi, k), DegenerateInput);
    }

    RealMatrix directed(3, 3);
    directed << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    const Graph gd(directed);
    CHECK_FALSE(gd.is_symmetric());
    CHECK_NOTHROW(shift_operator(gd, ShiftKind::adj));
    CHECK_NOTHROW(shift_operator(gd, ShiftKind::rna));
    CHECK_THROWS_AS(shift_operator(gd, ShiftKind::lap), InvalidArgument);
    CHECK_THROWS_AS(shift_operator(gd, ShiftKind::sna), InvalidArgument);
}

TEST_CASE("shift kind names round-trip") {
    for (ShiftKind k : kAllShiftKinds) CHECK(parse_shift_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_shift_kind("laplacian"), InvalidArgument);
}
