#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qmc/bounds.hpp"
#include "qmc/errors.hpp"
#include "qmc/matrix.hpp"
#include "qmc/network.hpp"
#include "qmc/rng.hpp"
#include "qmc/vec.hpp"
#include "qmc/weights.hpp"

namespace qmc {

/// Network transmission of x corrupted by e: (x+e)F. Errors propagate.
inline Vec propagate(const RingMatrix& f, const Vec& x, const Vec& e) {
    return vec_mat_mul(vec_add(f.ring(), x, e), f);
}

/// Minimum-induced-distance decoder for one sink, backed by a table of coset
/// leader weights indexed by received-word encoding (every received word
/// identifies a coset of Kt since Ft is surjective on ring^n).
class SinkDecoder {
  public:
    SinkDecoder(const SinkView& view, const WeightFunction& w,
                std::size_t table_cap = std::size_t{1} << 20)
        : view_(&view), grid_(w) {
        const Ring& ring = w.ring;
        const int n = view.Ft.rows();
        const int nt = view.Ft.cols();
        auto ambient = power_within(ring, n, table_cap);
        auto image_space = power_within(ring, nt, table_cap);
        if (!ambient || !image_space)
            throw CapExceededError("decoder table exceeds cap", table_cap);
        table_.assign(static_cast<std::size_t>(*image_space), -1);
        Vec x(n, 0);
        do {
            std::int64_t wt = 0;
            for (auto a : x) wt += grid_.scaled[a];
            std::uint64_t key = vec_encode(ring, vec_mat_mul(x, view.Ft));
            if (table_[key] < 0 || wt < table_[key]) table_[key] = wt;
        } while (vec_next(ring, x));
        for (const auto& rep : view.Ct.reps())
            images_.push_back(vec_mat_mul(rep, view.Ft));
    }

    std::int64_t scale() const { return grid_.scale; }
    const Vec& codeword_image(std::size_t i) const { return images_[i]; }

    /// Induced distance from received word y to codeword i, times scale().
    /// Words outside the image of Ft are at infinite distance.
    std::int64_t scaled_distance(const Vec& y, std::size_t i) const {
        const Ring& ring = view_->Ft.ring();
        std::int64_t d = table_[vec_encode(ring, vec_sub(ring, y, images_[i]))];
        return d < 0 ? std::numeric_limits<std::int64_t>::max() : d;
    }

    /// Index of the unique closest codeword, or nullopt on a tie. The
    /// decoder refuses rather than guesses; ties surface as `detected`.
    std::optional<std::size_t> decode(const Vec& y) const {
        std::optional<std::size_t> best;
        std::int64_t best_d = 0;
        bool tie = false;
        for (std::size_t i = 0; i < images_.size(); ++i) {
            std::int64_t d = scaled_distance(y, i);
            if (!best || d < best_d) {
                best = i;
                best_d = d;
                tie = false;
            } else if (d == best_d) {
                tie = true;
            }
        }
        if (tie) return std::nullopt;
        return best;
    }

  private:
    const SinkView* view_;
    WeightGrid grid_;
    std::vector<std::int64_t> table_;
    std::vector<Vec> images_;
};

/// Adversarial error generation: one fixed word, seeded random edge
/// corruption, or exhaustive enumeration up to a weight budget.
struct ErrorModel {
    enum class Kind { fixed, random_edges, exhaustive };
    Kind kind = Kind::fixed;
    Vec fixed_error;
    int edge_count = 0;
    std::uint64_t seed = 0;
    Rat weight_budget = 0;

    static ErrorModel fixed(Vec e) {
        ErrorModel m;
        m.kind = Kind::fixed;
        m.fixed_error = std::move(e);
        return m;
    }
    static ErrorModel random_edges(int count, std::uint64_t seed) {
        ErrorModel m;
        m.kind = Kind::random_edges;
        m.edge_count = count;
        m.seed = seed;
        return m;
    }
    static ErrorModel exhaustive(Rat budget) {
        ErrorModel m;
        m.kind = Kind::exhaustive;
        m.weight_budget = std::move(budget);
        return m;
    }
};

struct TrialOutcome {
    enum class Kind { correct, miscorrected, detected, invisible };
    Kind kind = Kind::correct;
    std::optional<std::size_t> decoded;  // codeword index when decoding happened
};

struct TrialResult {
    std::size_t message_index = 0;
    Vec error;
    std::vector<TrialOutcome> per_sink;
};

struct SinkCounts {
    std::uint64_t correct = 0, miscorrected = 0, detected = 0, invisible = 0;
};

struct SimulationResult {
    std::uint64_t trials = 0;
    std::vector<SinkCounts> per_sink;    // aligned with the views
    std::vector<TrialResult> log;        // filled when keep_log is set
};

namespace detail {

/// Enumerates, in lexicographic order, every error word whose weight stays
/// within the budget, invoking fn on each (the zero word included).
inline void enumerate_bounded_errors(const Ring& ring, const WeightGrid& grid, int n,
                                     std::int64_t scaled_budget, std::size_t cap,
                                     const std::function<void(const Vec&)>& fn) {
    Vec current(n, 0);
    std::size_t emitted = 0;
    std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t remaining) {
        if (pos == n) {
            if (++emitted > cap) throw CapExceededError("error enumeration exceeds cap", cap);
            fn(current);
            return;
        }
        for (std::int64_t a = 0; a < ring.cardinality(); ++a) {
            if (grid.scaled[a] > remaining) continue;
            current[pos] = a;
            rec(pos + 1, remaining - grid.scaled[a]);
        }
        current[pos] = 0;
    };
    rec(0, scaled_budget);
}

}  // namespace detail

/// Runs the error model against every sink view. Messages are full-length
/// embedded words; each trial transmits one of them, applies one error word
/// and classifies the outcome at every sink:
///   invisible     nonzero error inside the sink kernel (received as if
///                 error-free),
///   correct       decoder returned the transmitted codeword,
///   miscorrected  decoder returned another codeword,
///   detected      decoder refused (no strict minimizer).
/// Random trials draw an index-derived substream per trial, so runs with the
/// same seed are identical regardless of execution order.
inline SimulationResult run_trials(const std::vector<SinkView>& views,
                                   const std::vector<Vec>& messages, const WeightFunction& w,
                                   const ErrorModel& model, std::uint64_t trials,
                                   bool keep_log = false,
                                   std::size_t cap = std::size_t{1} << 22) {
    if (views.empty()) throw OutOfRangeError("run_trials: no sink views");
    if (messages.empty()) throw OutOfRangeError("run_trials: no messages");
    const Ring& ring = w.ring;
    const int n = views.front().Ft.rows();

    std::vector<SinkDecoder> decoders;
    decoders.reserve(views.size());
    for (const auto& v : views) decoders.emplace_back(v, w);

    SimulationResult result;
    result.per_sink.resize(views.size());

    auto run_one = [&](std::size_t msg_idx, const Vec& e) {
        const Vec& x = messages[msg_idx];
        TrialResult tr;
        tr.message_index = msg_idx;
        if (keep_log) tr.error = e;
        tr.per_sink.resize(views.size());
        bool zero_error = vec_is_zero(e);
        for (std::size_t vi = 0; vi < views.size(); ++vi) {
            TrialOutcome& out = tr.per_sink[vi];
            if (!zero_error && views[vi].Kt.contains(e)) {
                out.kind = TrialOutcome::Kind::invisible;
            } else {
                Vec y = vec_mat_mul(vec_add(ring, x, e), views[vi].Ft);
                auto decoded = decoders[vi].decode(y);
                out.decoded = decoded;
                if (!decoded) {
                    out.kind = TrialOutcome::Kind::detected;
                } else {
                    // the transmitted codeword's index within this view
                    std::size_t sent = 0;
                    for (std::size_t ci = 0; ci < views[vi].Ct.size(); ++ci)
                        if (views[vi].Kt.contains(vec_sub(ring, x, views[vi].Ct.reps()[ci]))) {
                            sent = ci;
                            break;
                        }
                    out.kind = *decoded == sent ? TrialOutcome::Kind::correct
                                                : TrialOutcome::Kind::miscorrected;
                }
            }
            SinkCounts& c = result.per_sink[vi];
            switch (out.kind) {
                case TrialOutcome::Kind::correct: ++c.correct; break;
                case TrialOutcome::Kind::miscorrected: ++c.miscorrected; break;
                case TrialOutcome::Kind::detected: ++c.detected; break;
                case TrialOutcome::Kind::invisible: ++c.invisible; break;
            }
        }
        ++result.trials;
        if (keep_log) result.log.push_back(std::move(tr));
    };

    switch (model.kind) {
        case ErrorModel::Kind::fixed: {
            if (static_cast<int>(model.fixed_error.size()) != n)
                throw OutOfRangeError("fixed error length mismatch");
            for (std::size_t mi = 0; mi < messages.size(); ++mi) run_one(mi, model.fixed_error);
            break;
        }
        case ErrorModel::Kind::random_edges: {
            if (trials < 1) throw OutOfRangeError("random model needs trials >= 1");
            if (model.edge_count < 0 || model.edge_count > n)
                throw OutOfRangeError("corrupted edge count must lie in [0, n]");
            std::vector<int> positions(n);
            for (std::uint64_t t = 0; t < trials; ++t) {
                SplitMix64 rng = SplitMix64::substream(model.seed, t);
                std::size_t mi = rng.below(messages.size());
                for (int i = 0; i < n; ++i) positions[i] = i;
                Vec e(n, 0);
                for (int k = 0; k < model.edge_count; ++k) {
                    int j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - k)));
                    std::swap(positions[k], positions[j]);
                    e[positions[k]] = 1 + static_cast<std::int64_t>(
                                              rng.below(static_cast<std::uint64_t>(ring.cardinality()) - 1));
                }
                run_one(mi, e);
            }
            break;
        }
        case ErrorModel::Kind::exhaustive: {
            if (model.weight_budget < 0)
                throw OutOfRangeError("exhaustive weight budget must be nonnegative");
            WeightGrid grid(w);
            Rat scaled = model.weight_budget * rat(grid.scale);
            std::int64_t budget = floor_rat(scaled).get_si();
            for (std::size_t mi = 0; mi < messages.size(); ++mi)
                detail::enumerate_bounded_errors(ring, grid, n, budget, cap,
                                                 [&](const Vec& e) { run_one(mi, e); });
            break;
        }
    }
    return result;
}

/// CSV: one row per sink with outcome counts.
inline std::string simulation_csv(const std::vector<std::string>& sink_names,
                                  const SimulationResult& result) {
    std::string out = "sink,trials,correct,miscorrected,detected,invisible\n";
    for (std::size_t i = 0; i < result.per_sink.size(); ++i) {
        const SinkCounts& c = result.per_sink[i];
        std::uint64_t row_trials = c.correct + c.miscorrected + c.detected + c.invisible;
        out += (i < sink_names.size() ? sink_names[i] : "view" + std::to_string(i)) + "," +
               std::to_string(row_trials) + "," + std::to_string(c.correct) + "," +
               std::to_string(c.miscorrected) + "," + std::to_string(c.detected) + "," +
               std::to_string(c.invisible) + "\n";
    }
    return out;
}

}  // namespace qmc
