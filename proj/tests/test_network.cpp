#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "qmc/io.hpp"
#include "qmc/network.hpp"
#include "qmc/rng.hpp"

using namespace qmc;

namespace {

const std::string kDataDir = QMC_DATA_DIR;

NetworkSpec golden_network() { return read_network_file(kDataDir + "/multicast15.net"); }

/// A two-edge path s -> a -> t.
NetworkSpec path2(const Ring& ring) {
    std::istringstream in(ring.spec_string() + " 1\nedge s a\nedge a t\nsource s\nsink t\n");
    return read_network(in);
}

}  // namespace

TEST_CASE("network loading") {
    auto net = golden_network();
    CHECK(net.edge_count() == 15);
    CHECK(net.m == 2);
    CHECK(net.sinks.size() == 2);
    CHECK(net.ring == Ring::prime_field(2));
    CHECK(net.sink_edges(net.sinks[0]) == std::vector<int>{5, 7});        // edges 6 and 8
    CHECK(net.sink_edges(net.sinks[1]) == std::vector<int>{12, 13, 14});  // edges 13..15

    SECTION("declared m must match the source degree") {
        std::istringstream in("f2 3\nedge s a\nedge a t\nsource s\nsink t\n");
        CHECK_THROWS_AS(read_network(in), FormatError);
    }
    SECTION("cycles are rejected") {
        std::istringstream in("f2 1\nedge s a\nedge a b\nedge b a\nedge a t\nsource s\nsink t\n");
        CHECK_THROWS_AS(read_network(in), FormatError);
    }
    SECTION("sources with incoming edges are rejected") {
        std::istringstream in("f2 1\nedge s a\nedge a s\nsource s\nsink a\n");
        CHECK_THROWS_AS(read_network(in), FormatError);
    }
}

TEST_CASE("edge order canonicalization") {
    // the golden file shuffled: loader must restore a topological order with
    // source edges first, and the shuffled network must carry the same
    // pattern up to its own indices
    std::string shuffled =
        "f2 1\n"
        "edge a t\n"
        "edge s a\n"
        "source s\nsink t\n";
    std::istringstream in(shuffled);
    auto net = read_network(in);
    CHECK(net.edges[0].first == net.source);
    auto pattern = line_graph_pattern(net);
    CHECK(pattern[0][1]);
    CHECK_FALSE(pattern[1][0]);

    SECTION("keep_order rejects invalid orders") {
        std::istringstream again(shuffled);
        CHECK_THROWS_AS(read_network(again, /*keep_order=*/true), FormatError);
    }
    SECTION("valid orders are preserved verbatim") {
        std::istringstream good("f2 1\nedge s a\nedge a t\nsource s\nsink t\n");
        auto net2 = read_network(good, /*keep_order=*/true);
        CHECK(net2.node_names[net2.edges[0].second] == "a");
    }
    SECTION("coefficients follow the reordering") {
        std::istringstream withc("z4 1\nedge a t\nedge s a\nsource s\nsink t\ncoeff 2 1 3\n");
        auto net3 = read_network(withc);
        // file edge 2 (s->a) and edge 1 (a->t) become positions 1 and 2
        auto k = assign_coefficients(net3, CoeffMode::from_file());
        CHECK(k.at(0, 1) == 3);
    }
}

TEST_CASE("line_graph_pattern") {
    SECTION("golden network matches the fixture's nonzero pattern") {
        auto net = golden_network();
        auto pattern = line_graph_pattern(net);
        auto k = read_matrix_file(kDataDir + "/multicast15_K.txt");
        for (int i = 0; i < 15; ++i)
            for (int j = 0; j < 15; ++j)
                CHECK(static_cast<bool>(pattern[i][j]) == (k.at(i, j) != 0));
    }
    SECTION("single edge") {
        std::istringstream in("f2 1\nedge s t\nsource s\nsink t\n");
        auto net = read_network(in);
        auto pattern = line_graph_pattern(net);
        CHECK_FALSE(pattern[0][0]);
    }
    SECTION("two-edge path") {
        auto net = path2(Ring::prime_field(2));
        auto pattern = line_graph_pattern(net);
        CHECK(pattern[0][1]);
        int trues = pattern[0][0] + pattern[0][1] + pattern[1][0] + pattern[1][1];
        CHECK(trues == 1);
    }
}

TEST_CASE("assign_coefficients") {
    SECTION("ones over F2 reproduce the golden matrix") {
        auto net = golden_network();
        auto k = assign_coefficients(net, CoeffMode::ones());
        CHECK(k == read_matrix_file(kDataDir + "/multicast15_K.txt"));
    }
    SECTION("random is deterministic per seed and fits the pattern") {
        auto net = path2(Ring::residue(8));
        auto k1 = assign_coefficients(net, CoeffMode::random(42));
        auto k2 = assign_coefficients(net, CoeffMode::random(42));
        auto k3 = assign_coefficients(net, CoeffMode::random(43));
        CHECK(k1 == k2);
        CHECK(k1.at(0, 1) != 0);
        CHECK((k3.at(0, 1) != 0 && k3.at(1, 0) == 0));
    }
    SECTION("off-pattern explicit coefficients are rejected") {
        auto net = path2(Ring::residue(4));
        net.coefficients[{1, 0}] = 2;
        CHECK_THROWS_AS(assign_coefficients(net, CoeffMode::from_file()),
                        PatternViolationError);
    }
    SECTION("empty pattern yields K = 0") {
        std::istringstream in("z4 2\nedge s t\nedge s t\nsource s\nsink t\n");
        auto net = read_network(in);
        CHECK(assign_coefficients(net, CoeffMode::ones()).is_zero());
    }
}

TEST_CASE("transfer_matrix") {
    SECTION("golden network, bit-exact") {
        auto net = golden_network();
        auto k = assign_coefficients(net, CoeffMode::from_file());
        auto f = transfer_matrix(k);
        CHECK(f == read_matrix_file(kDataDir + "/multicast15_F.txt"));
        CHECK(mat_mul(f, mat_sub(RingMatrix::identity(net.ring, 15), k)) ==
              RingMatrix::identity(net.ring, 15));
        CHECK(f == mat_inverse(mat_sub(RingMatrix::identity(net.ring, 15), k)));
    }
    SECTION("zero coefficients give the identity") {
        CHECK(transfer_matrix(RingMatrix(Ring::residue(4), 3, 3)) ==
              RingMatrix::identity(Ring::residue(4), 3));
    }
    SECTION("a two-edge path propagates once") {
        auto net = path2(Ring::prime_field(2));
        auto f = transfer_matrix(assign_coefficients(net, CoeffMode::ones()));
        CHECK(f.row(0) == Vec{1, 1});
        CHECK(f.row(1) == Vec{0, 1});
    }
    SECTION("pattern-fitting matrices are nilpotent") {
        auto net = golden_network();
        SplitMix64 rng(8);
        auto k = assign_coefficients(net, CoeffMode::random(rng.next()));
        RingMatrix power = k;
        for (int i = 1; i < 15; ++i) power = mat_mul(power, k);
        CHECK(power.is_zero());
    }
    SECTION("non-triangular input is rejected") {
        RingMatrix k(Ring::residue(4), 2, 2);
        k.at(1, 0) = 1;
        CHECK_THROWS_AS(transfer_matrix(k), OutOfRangeError);
    }
}

TEST_CASE("sink_view") {
    auto net = golden_network();
    auto f = transfer_matrix(assign_coefficients(net, CoeffMode::from_file()));
    auto w = homogeneous_weight(net.ring, rat(1, 2));
    auto msgs = all_messages(net.ring, 2);
    SECTION("generator matrices of both sinks") {
        auto v1 = sink_view(net, f, net.sinks[0], msgs, w);
        CHECK(v1.Ft.cols() == 2);
        CHECK(v1.Ft.row(0) == Vec{0, 1});
        CHECK(v1.Ft.row(1) == Vec{1, 1});
        auto v2 = sink_view(net, f, net.sinks[1], msgs, w);
        CHECK(v2.Ft.row(0) == Vec{0, 0, 1});
        CHECK(v2.Ft.row(1) == Vec{1, 1, 1});
    }
    SECTION("kernels annihilate their sink columns") {
        for (int t : net.sinks) {
            auto view = sink_view(net, f, t, msgs, w);
            Vec zero(view.Ft.cols(), 0);
            for (const auto& g : view.Kt.generators()) CHECK(vec_mat_mul(g, view.Ft) == zero);
        }
        CHECK(sink_view(net, f, net.sinks[0], msgs, w).Kt.size() == 8192);
        CHECK(sink_view(net, f, net.sinks[1], msgs, w).Kt.size() == 4096);
    }
    SECTION("messages collapse to one coset per codeword") {
        auto v = sink_view(net, f, net.sinks[0], {{0, 0}}, w);
        CHECK(v.Ct.size() == 1);
    }
    SECTION("non-sinks are rejected") {
        CHECK_THROWS_AS(sink_view(net, f, net.source, msgs, w), NotASinkError);
    }
}

TEST_CASE("multicast_check") {
    auto net = golden_network();
    auto f = transfer_matrix(assign_coefficients(net, CoeffMode::from_file()));
    auto msgs = all_messages(net.ring, 2);
    SECTION("the golden network multicasts") {
        for (auto [t, ok] : multicast_check(net, f, msgs)) CHECK(ok);
    }
    SECTION("a sink with fewer edges than messages fails by pigeonhole") {
        std::istringstream in("f2 2\nedge s a\nedge s a\nedge a t\nsource s\nsink t\n");
        auto small = read_network(in);
        auto fs = transfer_matrix(assign_coefficients(small, CoeffMode::ones()));
        auto check = multicast_check(small, fs, all_messages(small.ring, 2));
        CHECK_FALSE(check.begin()->second);
    }
    SECTION("a single message is vacuously injective") {
        std::istringstream in("f2 2\nedge s a\nedge s a\nedge a t\nsource s\nsink t\n");
        auto small = read_network(in);
        auto fs = transfer_matrix(assign_coefficients(small, CoeffMode::ones()));
        CHECK(multicast_check(small, fs, {{0, 0}}).begin()->second);
    }
}

TEST_CASE("network_code_params") {
    SECTION("golden network summary line") {
        auto net = golden_network();
        auto f = transfer_matrix(assign_coefficients(net, CoeffMode::from_file()));
        auto w = homogeneous_weight(net.ring, rat(1, 2));
        auto params = network_code_params(net, f, all_messages(net.ring, 2), w);
        CHECK(params.summary_line() == "(15, {(2,15,4,1),(3,15,4,1)}) network code of size 4");
        REQUIRE(params.per_sink.size() == 2);
        CHECK(params.per_sink[0].ell_t == 15);
        CHECK(params.per_sink[1].ell_t == 15);
        // with s = l and d < gamma*l none of the three bound cases applies
        for (const auto& p : params.per_sink) {
            REQUIRE(p.bound.has_value());
            CHECK_FALSE(p.bound->applicable);
        }
    }
    SECTION("identity network with trivial kernels") {
        std::istringstream in("z4 2\nedge s t\nedge s t\nsource s\nsink t\n");
        auto net = read_network(in);
        auto f = transfer_matrix(assign_coefficients(net, CoeffMode::ones()));
        auto w = homogeneous_weight(net.ring, rat(1));
        std::vector<Vec> msgs = {{0, 0}, {1, 2}, {2, 0}};
        auto view = sink_view(net, f, net.sinks[0], msgs, w);
        CHECK(view.Kt.size() == 1);  // m = n_t makes the kernel trivial
        auto params = network_code_params(net, f, msgs, w);
        CHECK(params.per_sink[0].ell_t == 0);
        // distance = plain minimum Lee distance between messages
        CHECK(*params.per_sink[0].d == rat(2));
        CHECK(params.code_size == 3);
    }
    SECTION("a single message yields a size-1 code with undefined distance") {
        std::istringstream in("z4 2\nedge s t\nedge s t\nsource s\nsink t\n");
        auto net = read_network(in);
        auto f = transfer_matrix(assign_coefficients(net, CoeffMode::ones()));
        auto w = homogeneous_weight(net.ring, rat(1));
        auto params = network_code_params(net, f, {{1, 3}}, w);
        CHECK(params.code_size == 1);
        CHECK_FALSE(params.per_sink[0].d.has_value());
        CHECK(params.summary_line() == "(2, {(2,2,1,-)}) network code of size 1");
    }
}

TEST_CASE("the first sink's kernel has the known closed form") {
    // e is invisible to sink 1 exactly when e6 = e2 and
    // e8 = e1 + e2 + e4 + e5 + e7; the remaining 13 coordinates are free.
    auto net = golden_network();
    auto f = transfer_matrix(assign_coefficients(net, CoeffMode::from_file()));
    auto w = homogeneous_weight(net.ring, rat(1, 2));
    auto view = sink_view(net, f, net.sinks[0], all_messages(net.ring, 2), w);
    REQUIRE(view.Kt.size() == 8192);
    for (const auto& e : view.Kt.elements()) {
        CHECK(e[5] == e[1]);
        CHECK(e[7] == net.ring.add(net.ring.add(e[0], e[1]),
                                   net.ring.add(net.ring.add(e[3], e[4]), e[6])));
    }
}

TEST_CASE("kernel errors are invisible to the sink map") {
    auto net = golden_network();
    auto f = transfer_matrix(assign_coefficients(net, CoeffMode::from_file()));
    auto w = homogeneous_weight(net.ring, rat(1, 2));
    auto msgs = all_messages(net.ring, 2);
    SplitMix64 rng(123);
    for (int t : net.sinks) {
        auto view = sink_view(net, f, t, msgs, w);
        for (int trial = 0; trial < 50; ++trial) {
            Vec x(15);
            for (auto& c : x) c = rng.below(2);
            const auto& e = view.Kt.elements()[rng.below(view.Kt.size())];
            CHECK(vec_mat_mul(vec_add(net.ring, x, e), view.Ft) == vec_mat_mul(x, view.Ft));
        }
    }
}
