#include <catch2/catch_amalgamated.hpp>

#include "qmc/bounds.hpp"
#include "qmc/codes.hpp"
#include "qmc/io.hpp"
#include "qmc/network.hpp"
#include "qmc/rng.hpp"
#include "qmc/search.hpp"

using namespace qmc;

namespace {

QuotientCode z4_example() {
    Ring z4 = Ring::residue(4);
    auto lee = homogeneous_weight(z4, rat(1));
    auto k = submodule_span(z4, 7, {{0, 1, 1, 1, 3, 3, 3}});
    return QuotientCode(k, {{1, 0, 2, 2, 0, 1, 2}, {3, 3, 3, 1, 3, 2, 1}}, lee);
}

}  // namespace

TEST_CASE("code construction validates cosets") {
    Ring z4 = Ring::residue(4);
    auto lee = homogeneous_weight(z4, rat(1));
    auto k = submodule_span(z4, 2, {{0, 2}});
    CHECK_NOTHROW(QuotientCode(k, {{0, 0}, {1, 0}}, lee));
    // {0,0} and {0,2} share a coset
    CHECK_THROWS_AS(QuotientCode(k, {{0, 0}, {0, 2}}, lee), OutOfRangeError);
    CHECK_THROWS_AS(QuotientCode(k, {{0, 0, 0}}, lee), OutOfRangeError);  // length
}

TEST_CASE("min_induced_distance") {
    SECTION("the Z4 quotient code has distance 8") {
        CHECK(min_induced_distance(z4_example()) == rat(8));
    }
    SECTION("sink code of the golden network has distance 1") {
        auto net = read_network_file(std::string(QMC_DATA_DIR) + "/multicast15.net");
        auto f = transfer_matrix(assign_coefficients(net, CoeffMode::from_file()));
        auto w = homogeneous_weight(net.ring, rat(1, 2));
        auto view = sink_view(net, f, net.sinks[0], all_messages(net.ring, 2), w);
        CHECK(min_induced_distance(view.Ct) == rat(1));
    }
    SECTION("trivial kernel reduces to plain distance") {
        Ring f2 = Ring::prime_field(2);
        auto w = homogeneous_weight(f2, rat(1, 2));
        auto k = submodule_span(f2, 4, {});
        QuotientCode c(k, {{0, 0, 0, 0}, {1, 0, 0, 0}}, w);
        CHECK(min_induced_distance(c) == rat(1));
    }
    SECTION("one-word codes are degenerate") {
        Ring f2 = Ring::prime_field(2);
        auto w = homogeneous_weight(f2, rat(1, 2));
        QuotientCode c(submodule_span(f2, 2, {}), {{0, 0}}, w);
        CHECK_THROWS_AS(min_induced_distance(c), DegenerateCodeError);
    }
}

TEST_CASE("the two cosets enumerate to the known eight words") {
    auto code = z4_example();
    std::set<Vec> words;
    for (const auto& rep : code.reps())
        for (const auto& z : code.kernel().elements())
            words.insert(vec_add(code.ring(), rep, z));
    std::set<Vec> expected = {
        {1, 0, 2, 2, 0, 1, 2}, {1, 2, 0, 0, 2, 3, 0}, {1, 3, 1, 1, 1, 2, 3},
        {1, 1, 3, 3, 3, 0, 1}, {3, 3, 3, 1, 3, 2, 1}, {3, 1, 1, 3, 1, 0, 3},
        {3, 0, 0, 2, 2, 1, 0}, {3, 2, 2, 0, 0, 3, 2}};
    CHECK(words == expected);
}

TEST_CASE("distance is invariant under representative shifts") {
    auto code = z4_example();
    Rat d = min_induced_distance(code);
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto reps = code.reps();
        for (auto& r : reps) {
            const auto& shift = code.kernel().elements()[rng.below(code.kernel().size())];
            r = vec_add(code.ring(), r, shift);
        }
        QuotientCode shifted(code.kernel(), reps, code.weight());
        CHECK(min_induced_distance(shifted) == d);
    }
}

TEST_CASE("code_params") {
    SECTION("Z4 example") {
        auto p = code_params(z4_example());
        CHECK(p.n == 7);
        CHECK(p.s == 7);
        CHECK(p.ell == 6);
        CHECK(p.size == 2);
        CHECK(*p.d == rat(8));
    }
    SECTION("trivial code") {
        Ring f2 = Ring::prime_field(2);
        auto w = homogeneous_weight(f2, rat(1, 2));
        QuotientCode c(submodule_span(f2, 5, {}), {Vec(5, 0)}, w);
        auto p = code_params(c);
        CHECK(p.n == 5);
        CHECK(p.s == 0);
        CHECK(p.ell == 0);
        CHECK(p.size == 1);
        CHECK_FALSE(p.d.has_value());
    }
}

TEST_CASE("puncture_to_support") {
    SECTION("full-support codes are unchanged") {
        auto code = z4_example();
        auto punct = puncture_to_support(code);
        CHECK(punct.length() == 7);
        CHECK(punct.reps() == code.reps());
    }
    SECTION("dead coordinates are dropped, size and distance preserved") {
        Ring z4 = Ring::residue(4);
        auto lee = homogeneous_weight(z4, rat(1));
        auto k = submodule_span(z4, 4, {{0, 2, 0, 2}});
        QuotientCode c(k, {{0, 0, 0, 0}, {1, 1, 0, 3}}, lee);  // coordinate 2 is dead
        auto p_before = code_params(c);
        auto punct = puncture_to_support(c);
        auto p_after = code_params(punct);
        CHECK(punct.length() == 3);
        CHECK(p_after.size == p_before.size);
        CHECK(*p_after.d == *p_before.d);
        CHECK(p_after.s == p_before.s);
        CHECK(p_after.ell == p_before.ell);
    }
    SECTION("the zero code punctures to length zero") {
        Ring f2 = Ring::prime_field(2);
        auto w = homogeneous_weight(f2, rat(1, 2));
        QuotientCode c(submodule_span(f2, 3, {}), {Vec(3, 0)}, w);
        auto punct = puncture_to_support(c);
        CHECK(punct.length() == 0);
        CHECK(punct.size() == 1);
    }
    SECTION("random codes keep their size and distance") {
        SplitMix64 rng(314);
        int built = 0;
        while (built < 25) {
            Ring ring = built % 2 ? Ring::residue(4) : Ring::prime_field(2);
            auto w = homogeneous_weight(ring);
            int n = 3 + static_cast<int>(rng.below(3));
            Vec gen(n, 0);
            // leave a dead coordinate so the puncturing is nontrivial
            for (int i = 1; i < n; ++i) gen[i] = rng.below(ring.cardinality());
            auto k = submodule_span(ring, n, {gen});
            std::vector<Vec> reps;
            for (int tries = 0; tries < 8 && reps.size() < 3; ++tries) {
                Vec r(n, 0);
                for (int i = 1; i < n; ++i) r[i] = rng.below(ring.cardinality());
                bool fresh = true;
                for (const auto& prev : reps)
                    if (k.contains(vec_sub(ring, r, prev))) fresh = false;
                if (fresh) reps.push_back(r);
            }
            if (reps.size() < 2) continue;
            QuotientCode c(k, reps, w);
            auto before = code_params(c);
            auto after = code_params(puncture_to_support(c));
            CHECK(after.size == before.size);
            CHECK(after.s == before.s);
            CHECK(after.ell == before.ell);
            if (before.d) CHECK(*after.d == *before.d);
            ++built;
        }
    }
}

TEST_CASE("is_delta_error_correcting") {
    Ring f2 = Ring::prime_field(2);
    auto w = homogeneous_weight(f2, rat(1, 2));
    SECTION("repetition code corrects within half its distance") {
        auto k = submodule_span(f2, 3, {});
        QuotientCode rep3(k, {{0, 0, 0}, {1, 1, 1}}, w);
        CHECK(is_delta_error_correcting(rep3, rat(3, 2)).ok);
        CHECK(is_delta_error_correcting(rep3, rat(2)).ok);
        // at delta=5/2 a double flip sits closer to the wrong codeword
        auto fail = is_delta_error_correcting(rep3, rat(5, 2));
        REQUIRE_FALSE(fail.ok);
        CHECK(vector_weight(w, vec_sub(f2, fail.z, fail.c)) >= rat(2));
    }
    SECTION("distance-1 codes correct nothing beyond delta=1") {
        auto k = submodule_span(f2, 2, {});
        QuotientCode c(k, {{0, 0}, {1, 0}}, w);
        CHECK(is_delta_error_correcting(c, rat(1)).ok);
        CHECK_FALSE(is_delta_error_correcting(c, rat(3, 2)).ok);
    }
    SECTION("single codeword is vacuously correcting") {
        auto k = submodule_span(f2, 2, {});
        QuotientCode c(k, {{1, 1}}, w);
        CHECK(is_delta_error_correcting(c, rat(100)).ok);
    }
    SECTION("cap is enforced") {
        auto k = submodule_span(f2, 14, {});
        QuotientCode c(k, {Vec(14, 0)}, w);
        CHECK_THROWS_AS(is_delta_error_correcting(c, rat(1), 1000), CapExceededError);
    }
}

TEST_CASE("golden network code is 0-error-correcting but not more") {
    auto net = read_network_file(std::string(QMC_DATA_DIR) + "/multicast15.net");
    auto f = transfer_matrix(assign_coefficients(net, CoeffMode::from_file()));
    auto w = homogeneous_weight(net.ring, rat(1, 2));
    auto view = sink_view(net, f, net.sinks[0], all_messages(net.ring, 2), w);
    CHECK(is_delta_error_correcting(view.Ct, rat(1)).ok);
    CHECK_FALSE(is_delta_error_correcting(view.Ct, rat(3, 2)).ok);
}

TEST_CASE("exhaustive_optimum") {
    Ring f2 = Ring::prime_field(2);
    auto w2 = homogeneous_weight(f2, rat(1, 2));
    SECTION("repetition code is optimal at full distance") {
        CHECK(exhaustive_optimum(f2, w2, 3, 3, 0, rat(3)) == 2);
    }
    SECTION("support-1 kernel over two coordinates") {
        CHECK(exhaustive_optimum(f2, w2, 2, 2, 1, rat(1)) == 2);
    }
    SECTION("unachievable distance leaves only singletons") {
        CHECK(exhaustive_optimum(f2, w2, 2, 2, 0, rat(100)) == 1);
    }
    SECTION("classical values at length 4") {
        CHECK(exhaustive_optimum(f2, w2, 4, 4, 0, rat(2)) == 8);   // even-weight code
        CHECK(exhaustive_optimum(f2, w2, 4, 4, 0, rat(3)) == 2);
        CHECK(exhaustive_optimum(f2, w2, 4, 4, 0, rat(4)) == 2);   // {0000, 1111}
    }
}

TEST_CASE("search results stay below every applicable bound") {
    struct Instance {
        Ring ring;
        Rat gamma;
        int n;
    };
    std::vector<Instance> instances = {{Ring::prime_field(2), rat(1, 2), 4},
                                       {Ring::prime_field(3), rat(2, 3), 3},
                                       {Ring::residue(4), rat(1), 3}};
    for (const auto& inst : instances) {
        auto w = homogeneous_weight(inst.ring, inst.gamma);
        ExhaustiveSearch search(inst.ring, w, inst.n);
        WeightGrid grid(w);
        std::int64_t max_total = grid.max_scaled * inst.n;
        for (int s = 0; s <= inst.n; ++s) {
            for (int ell = 0; ell <= s; ++ell) {
                for (std::int64_t dnum = 1; dnum <= max_total; ++dnum) {
                    Rat d = rat(dnum, grid.scale);
                    std::int64_t opt = search.optimum(s, ell, d);
                    if (opt < 2) continue;  // bounds presuppose a defined distance
                    auto combined = combined_bound(w, inst.n, s, ell, d);
                    if (combined.applicable) CHECK(Int(opt) <= combined.value);
                    auto plotkin = plotkin_bound(d, s, ell, w.gamma);
                    if (plotkin.applicable) CHECK(Int(opt) <= plotkin.value);
                    auto elias = elias_bound_optimized(w, s, ell, d);
                    if (elias.applicable) CHECK(Int(opt) <= elias.value);
                    auto sphere = sphere_packing_bound(w, s, ell, d);
                    if (sphere.applicable) CHECK(Int(opt) <= sphere.value);
                }
            }
        }
        CHECK(search.plotkin_inequality_violations() == 0);
    }
}
