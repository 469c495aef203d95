#include <catch2/catch_amalgamated.hpp>

#include "qmc/io.hpp"
#include "qmc/network.hpp"
#include "qmc/simulator.hpp"

using namespace qmc;

namespace {

const std::string kDataDir = QMC_DATA_DIR;

struct GoldenSetup {
    NetworkSpec net;
    RingMatrix f;
    WeightFunction w;
    std::vector<Vec> messages;   // length m
    std::vector<Vec> embedded;   // length n
    std::vector<SinkView> views;
};

GoldenSetup golden_setup() {
    auto net = read_network_file(kDataDir + "/multicast15.net");
    auto f = transfer_matrix(assign_coefficients(net, CoeffMode::from_file()));
    auto w = homogeneous_weight(net.ring, rat(1, 2));
    auto messages = all_messages(net.ring, 2);
    std::vector<Vec> embedded;
    for (const auto& m : messages) embedded.push_back(embed_message(m, net.edge_count()));
    std::vector<SinkView> views;
    for (int t : net.sinks) views.push_back(sink_view(net, f, t, messages, w));
    return {net, f, w, messages, embedded, views};
}

/// One-sink view for the Z4 quotient code, through the fixture matrix whose
/// left kernel is exactly the code's kernel.
struct Z4Setup {
    WeightFunction w;
    Submodule kernel;
    std::vector<Vec> reps;
    SinkView view;
};

Z4Setup z4_setup() {
    auto code_file = read_code_file(kDataDir + "/z4d8_code.txt");
    auto fmap = read_matrix_file(kDataDir + "/z4d8_map.txt");
    auto w = homogeneous_weight(code_file.ring, rat(1));
    auto kernel = submodule_span(code_file.ring, code_file.n, code_file.kernel_generators);
    // the fixture matrix realizes the quotient: its kernel is the code's
    auto from_map = submodule_span(code_file.ring, code_file.n, left_kernel(fmap).row_list());
    REQUIRE(from_map.elements() == kernel.elements());
    QuotientCode code(kernel, code_file.representatives, w);
    SinkView view{-1, {}, fmap, kernel, code};
    return {w, kernel, code_file.representatives, view};
}

}  // namespace

TEST_CASE("propagate") {
    auto setup = golden_setup();
    const Ring& f2 = setup.net.ring;
    SECTION("the transmitted word spreads as the hand-derived pattern") {
        for (const auto& msg : setup.messages) {
            Vec x = embed_message(msg, 15);
            Vec c = propagate(setup.f, x, Vec(15, 0));
            std::int64_t x1 = msg[0], x2 = msg[1], x12 = f2.add(msg[0], msg[1]);
            CHECK(c == Vec{x1, x2, x1, x1, x2, x2, x12, x12, x12, 0, x1, x2, x2, x2, x12});
        }
    }
    SECTION("zero message carries the propagated error") {
        Vec e(15, 0);
        e[2] = 1;
        CHECK(propagate(setup.f, Vec(15, 0), e) == vec_mat_mul(e, setup.f));
    }
}

TEST_CASE("decode") {
    auto setup = golden_setup();
    SECTION("received codewords decode to themselves") {
        for (std::size_t vi = 0; vi < setup.views.size(); ++vi) {
            SinkDecoder dec(setup.views[vi], setup.w);
            for (std::size_t ci = 0; ci < setup.views[vi].Ct.size(); ++ci) {
                auto got = dec.decode(dec.codeword_image(ci));
                REQUIRE(got.has_value());
                CHECK(*got == ci);
            }
        }
    }
    SECTION("kernel errors do not disturb decoding at the first sink") {
        const auto& view = setup.views[0];
        SinkDecoder dec(view, setup.w);
        for (std::size_t mi = 0; mi < setup.embedded.size(); ++mi) {
            for (std::size_t ei = 0; ei < view.Kt.size(); ei += 257) {
                Vec y = vec_mat_mul(vec_add(setup.net.ring, setup.embedded[mi],
                                            view.Kt.elements()[ei]),
                                    view.Ft);
                auto got = dec.decode(y);
                REQUIRE(got.has_value());
                CHECK(view.Kt.contains(
                    vec_sub(setup.net.ring, setup.embedded[mi], view.Ct.reps()[*got])));
            }
        }
    }
    SECTION("second sink: received words differing in the first two positions are ties") {
        SinkDecoder dec(setup.views[1], setup.w);
        Vec y(3, 0);
        do {
            if (y[0] != y[1]) {
                CHECK_FALSE(dec.decode(y).has_value());
            } else {
                CHECK(dec.decode(y).has_value());
            }
        } while (vec_next(setup.net.ring, y));
    }
}

TEST_CASE("run_trials outcomes") {
    auto setup = golden_setup();
    SECTION("no error means every sink decodes correctly") {
        auto res = run_trials(setup.views, setup.embedded, setup.w,
                              ErrorModel::fixed(Vec(15, 0)), 0);
        CHECK(res.trials == 4);
        for (const auto& c : res.per_sink) {
            CHECK(c.correct == 4);
            CHECK(c.miscorrected + c.detected + c.invisible == 0);
        }
    }
    SECTION("weight-one errors at the first sink: kernel ones invisible, others uncorrected") {
        auto res = run_trials(setup.views, setup.embedded, setup.w,
                              ErrorModel::exhaustive(rat(1)), 0, true);
        CHECK(res.trials == 4 * 16);  // 4 messages, zero plus 15 unit errors
        const auto& c1 = res.per_sink[0];
        // 8 of the 15 unit vectors lie in K1
        CHECK(c1.invisible == 4 * 8);
        CHECK(c1.correct == 4);  // only the error-free trials
        CHECK(c1.miscorrected + c1.detected == 4 * 7);
        for (const auto& tr : res.log) {
            bool in_kernel = setup.views[0].Kt.contains(tr.error);
            bool zero = vec_is_zero(tr.error);
            if (zero) CHECK(tr.per_sink[0].kind == TrialOutcome::Kind::correct);
            else if (in_kernel) CHECK(tr.per_sink[0].kind == TrialOutcome::Kind::invisible);
            else CHECK(tr.per_sink[0].kind != TrialOutcome::Kind::correct);
        }
    }
    SECTION("identical seeds give identical trial streams") {
        auto r1 = run_trials(setup.views, setup.embedded, setup.w,
                             ErrorModel::random_edges(3, 999), 300, true);
        auto r2 = run_trials(setup.views, setup.embedded, setup.w,
                             ErrorModel::random_edges(3, 999), 300, true);
        REQUIRE(r1.log.size() == r2.log.size());
        for (std::size_t i = 0; i < r1.log.size(); ++i) {
            CHECK(r1.log[i].message_index == r2.log[i].message_index);
            CHECK(r1.log[i].error == r2.log[i].error);
        }
        auto r3 = run_trials(setup.views, setup.embedded, setup.w,
                             ErrorModel::random_edges(3, 1000), 300, true);
        bool all_same = true;
        for (std::size_t i = 0; i < r1.log.size(); ++i)
            if (r1.log[i].error != r3.log[i].error) all_same = false;
        CHECK_FALSE(all_same);
    }
    SECTION("random errors corrupt exactly the requested number of edges") {
        auto res = run_trials(setup.views, setup.embedded, setup.w,
                              ErrorModel::random_edges(3, 7), 100, true);
        for (const auto& tr : res.log) {
            int nonzero = 0;
            for (auto v : tr.error) nonzero += v != 0;
            CHECK(nonzero == 3);
        }
    }
}

TEST_CASE("the distance-8 quotient code corrects low-weight errors") {
    auto z4 = z4_setup();
    CHECK(min_induced_distance(z4.view.Ct) == rat(8));
    auto res = run_trials({z4.view}, z4.reps, z4.w, ErrorModel::exhaustive(rat(3)), 0);
    const auto& c = res.per_sink[0];
    CHECK(res.trials == 940);  // 2 messages x 470 error words of Lee weight <= 3
    CHECK(c.correct == res.trials);
    CHECK(c.miscorrected + c.detected + c.invisible == 0);
}

TEST_CASE("decoding succeeds strictly below half the distance") {
    auto z4 = z4_setup();
    SinkDecoder dec(z4.view, z4.w);
    WeightGrid grid(z4.w);
    // exhaustively: every error of induced weight < 4 = d/2 decodes correctly
    detail::enumerate_bounded_errors(
        z4.w.ring, grid, 7, 3 * grid.scale, std::size_t{1} << 22, [&](const Vec& e) {
            for (std::size_t mi = 0; mi < z4.reps.size(); ++mi) {
                Vec y = vec_mat_mul(vec_add(z4.w.ring, z4.reps[mi], e), z4.view.Ft);
                auto got = dec.decode(y);
                REQUIRE(got.has_value());
                REQUIRE(*got == mi);
            }
        });
}

TEST_CASE("simulation csv shape") {
    auto setup = golden_setup();
    auto res = run_trials(setup.views, setup.embedded, setup.w, ErrorModel::fixed(Vec(15, 0)), 0);
    auto csv = simulation_csv({"t1", "t2"}, res);
    CHECK(csv == "sink,trials,correct,miscorrected,detected,invisible\n"
                 "t1,4,4,0,0,0\n"
                 "t2,4,4,0,0,0\n");
}
