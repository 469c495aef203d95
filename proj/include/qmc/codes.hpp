#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmc/errors.hpp"
#include "qmc/rational.hpp"
#include "qmc/submodule.hpp"
#include "qmc/vec.hpp"
#include "qmc/weights.hpp"

namespace qmc {

/// A code in the quotient ring^n / K: a submodule K plus coset
/// representatives, one per codeword, measured by the induced weight of W.
/// Codes are plain coset unions; the representative set need not be a module.
class QuotientCode {
  public:
    QuotientCode(Submodule k, std::vector<Vec> reps, WeightFunction w)
        : k_(std::move(k)), reps_(std::move(reps)), w_(std::move(w)) {
        if (k_.ring() != w_.ring) throw OutOfRangeError("code: ring mismatch between K and W");
        for (const auto& r : reps_) {
            if (static_cast<int>(r.size()) != k_.length())
                throw OutOfRangeError("code: representative length mismatch");
            for (auto x : r)
                if (x < 0 || x >= k_.ring().cardinality())
                    throw OutOfRangeError("code: representative entry out of range");
        }
        for (std::size_t i = 0; i < reps_.size(); ++i)
            for (std::size_t j = i + 1; j < reps_.size(); ++j)
                if (k_.contains(vec_sub(ring(), reps_[i], reps_[j])))
                    throw OutOfRangeError("code: representatives " + std::to_string(i) + " and " +
                                          std::to_string(j) + " lie in the same coset");
    }

    const Ring& ring() const { return k_.ring(); }
    int length() const { return k_.length(); }
    const Submodule& kernel() const { return k_; }
    const std::vector<Vec>& reps() const { return reps_; }
    const WeightFunction& weight() const { return w_; }
    std::size_t size() const { return reps_.size(); }

    /// Support of M = union of all codeword cosets (0-based).
    std::set<int> message_support() const {
        std::set<int> supp = k_.support();
        for (const auto& r : reps_)
            for (int i = 0; i < length(); ++i)
                if (r[i] != 0) supp.insert(i);
        return supp;
    }

  private:
    Submodule k_;
    std::vector<Vec> reps_;
    WeightFunction w_;
};

/// The five parameters (n, s, l, |C|, d); d is absent for one-word codes.
struct CodeParams {
    int n = 0;
    int s = 0;
    int ell = 0;
    std::size_t size = 0;
    std::optional<Rat> d;
};

/// Minimum induced distance: min over distinct codeword pairs of the induced
/// weight of their difference coset. Independent of representative choice.
inline Rat min_induced_distance(const QuotientCode& c) {
    if (c.size() < 2) throw DegenerateCodeError("minimum distance needs at least two codewords");
    std::optional<Rat> best;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            Rat d = induced_weight(c.weight(), c.kernel(),
                                   vec_sub(c.ring(), c.reps()[i], c.reps()[j]));
            if (!best || d < *best) best = d;
        }
    return *best;
}

inline CodeParams code_params(const QuotientCode& c) {
    CodeParams p;
    p.n = c.length();
    p.s = static_cast<int>(c.message_support().size());
    p.ell = c.kernel().support_size();
    p.size = c.size();
    if (c.size() >= 2) p.d = min_induced_distance(c);
    return p;
}

/// Drops the coordinates outside supp(M). Size and minimum induced distance
/// are preserved exactly.
inline QuotientCode puncture_to_support(const QuotientCode& c) {
    std::set<int> dead;
    std::set<int> supp = c.message_support();
    for (int i = 0; i < c.length(); ++i)
        if (!supp.count(i)) dead.insert(i);
    std::vector<Vec> reps;
    reps.reserve(c.size());
    for (const auto& r : c.reps()) reps.push_back(puncture(r, dead));
    return QuotientCode(c.kernel().punctured(dead), std::move(reps), c.weight());
}

/// Witnessed outcome of the delta-error-correction test.
struct DeltaCheck {
    bool ok = true;
    Vec z, c, c_other;  // violating received coset and codeword pair
    explicit operator bool() const { return ok; }
};

/// Exhaustive check over all cosets z + K of ring^n: whenever some codeword
/// c has induced distance to z below delta, that distance must be strictly
/// smaller than the distance from z to every other codeword.
inline DeltaCheck is_delta_error_correcting(const QuotientCode& code, const Rat& delta,
                                            std::size_t cap = std::size_t{1} << 20) {
    const Ring& ring = code.ring();
    const int n = code.length();
    auto total = power_within(ring, n, cap);
    if (!total) throw CapExceededError("ambient space exceeds cap", cap);

    // One scan of ring^n: group vectors into cosets of K, recording each
    // coset's first (lexicographically least) representative and its leader
    // weight. Coset ids are assigned in scan order.
    std::map<Vec, std::size_t> coset_of;
    std::vector<Vec> coset_rep;
    std::vector<Rat> coset_weight;
    Vec v(n, 0);
    do {
        if (coset_of.count(v)) continue;
        std::size_t id = coset_rep.size();
        coset_rep.push_back(v);
        Rat best = vector_weight(code.weight(), v);
        for (const auto& z : code.kernel().elements()) {
            Vec member = vec_add(ring, v, z);
            Rat wz = vector_weight(code.weight(), member);
            if (wz < best) best = wz;
            coset_of.emplace(std::move(member), id);
        }
        coset_weight.push_back(best);
    } while (vec_next(ring, v));

    auto distance = [&](const Vec& a, const Vec& b) {
        return coset_weight[coset_of.at(vec_sub(ring, a, b))];
    };

    DeltaCheck out;
    for (const auto& z : coset_rep) {
        for (std::size_t i = 0; i < code.size(); ++i) {
            Rat di = distance(z, code.reps()[i]);
            if (!(di < delta)) continue;
            for (std::size_t j = 0; j < code.size(); ++j) {
                if (j == i) continue;
                if (!(di < distance(z, code.reps()[j]))) {
                    out.ok = false;
                    out.z = z;
                    out.c = code.reps()[i];
                    out.c_other = code.reps()[j];
                    return out;
                }
            }
        }
    }
    return out;
}

}  // namespace qmc
