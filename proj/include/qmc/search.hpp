#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "qmc/codes.hpp"
#include "qmc/errors.hpp"
#include "qmc/rational.hpp"
#include "qmc/submodule.hpp"
#include "qmc/vec.hpp"
#include "qmc/weights.hpp"

namespace qmc {

/// Every submodule of ring^n, found by closing the submodule lattice upward
/// from {0}. Feasible only for tiny ambient spaces.
inline std::vector<Submodule> enumerate_submodules(const Ring& ring, int n,
                                                   std::size_t ambient_cap = std::size_t{1} << 16) {
    auto total = power_within(ring, n, ambient_cap);
    if (!total) throw CapExceededError("ambient space exceeds cap", ambient_cap);

    std::vector<Vec> ambient;
    ambient.reserve(static_cast<std::size_t>(*total));
    Vec v(n, 0);
    do ambient.push_back(v);
    while (vec_next(ring, v));

    std::map<std::vector<Vec>, std::vector<Vec>> seen;  // element list -> generators
    std::deque<std::vector<Vec>> queue;
    std::vector<Vec> zero_elems = {Vec(n, 0)};
    seen.emplace(zero_elems, std::vector<Vec>{});
    queue.push_back(zero_elems);

    while (!queue.empty()) {
        std::vector<Vec> elems = std::move(queue.front());
        queue.pop_front();
        std::vector<Vec> gens = seen.at(elems);
        for (const auto& cand : ambient) {
            if (std::binary_search(elems.begin(), elems.end(), cand)) continue;
            // closure of elems + cand: one scalar pass suffices over a
            // commutative ring since elems is already a submodule
            std::set<Vec> next;
            for (std::int64_t r = 0; r < ring.cardinality(); ++r) {
                Vec rc = vec_scale(ring, r, cand);
                for (const auto& s : elems) next.insert(vec_add(ring, s, rc));
            }
            std::vector<Vec> next_elems(next.begin(), next.end());
            if (seen.count(next_elems)) continue;
            std::vector<Vec> next_gens = gens;
            next_gens.push_back(cand);
            seen.emplace(next_elems, next_gens);
            queue.push_back(std::move(next_elems));
        }
    }

    std::vector<Submodule> out;
    out.reserve(seen.size());
    for (const auto& [elems, gens] : seen) out.push_back(Submodule::span(ring, n, gens));
    return out;
}

/// Brute-force search context for the true optimum A(ring: n, s, l, d):
/// the largest code over any submodule K with |supp K| = l, message support
/// exactly s and minimum induced distance >= d. Along the way every visited
/// partial code is checked against the Plotkin inequality
/// (|C|-1) d <= (|C| s - l) gamma; violations are counted.
class ExhaustiveSearch {
  public:
    ExhaustiveSearch(Ring ring, WeightFunction w, int n,
                     std::size_t ambient_cap = std::size_t{1} << 16)
        : ring_(std::move(ring)), w_(std::move(w)), n_(n) {
        if (n_ > 30) throw OutOfRangeError("exhaustive search limited to short lengths");
        submodules_ = enumerate_submodules(ring_, n_, ambient_cap);
        // integer weight grid
        Int scale_lcm = 1;
        for (const auto& q : w_.table)
            mpz_lcm(scale_lcm.get_mpz_t(), scale_lcm.get_mpz_t(), q.get_den().get_mpz_t());
        scale_ = scale_lcm.get_si();
        scaled_.resize(w_.table.size());
        for (std::size_t a = 0; a < w_.table.size(); ++a)
            scaled_[a] = Rat(w_.table[a] * scale_).get_num().get_si();
    }

    const std::vector<Submodule>& submodules() const { return submodules_; }
    std::size_t plotkin_inequality_violations() const { return eq2_violations_; }

    /// Maximum code size; 0 when no code matches the support constraints.
    std::int64_t optimum(int s, int ell, const Rat& d) {
        if (s > n_ || ell > s || ell < 0) return 0;
        // smallest integer scaled weight that still satisfies >= d
        Rat dscaled = d * rat(scale_);
        Int ceil_d = -floor_rat(-dscaled);
        std::int64_t dmin = ceil_d.get_si();

        std::int64_t best = 0;
        for (std::size_t ki = 0; ki < submodules_.size(); ++ki) {
            if (submodules_[ki].support_size() != ell) continue;
            const PerKernel& pk = kernel_data(ki);
            best = std::max(best, search_kernel(pk, s, ell, dmin));
        }
        return best;
    }

  private:
    struct PerKernel {
        std::vector<std::uint32_t> supp_mask;      // per coset
        std::vector<std::int64_t> leader_scaled;   // per coset
        std::unordered_map<std::uint64_t, std::uint32_t> coset_of;  // encoded vec -> id
        std::vector<Vec> rep;
    };

    const PerKernel& kernel_data(std::size_t ki) {
        auto it = cache_.find(ki);
        if (it != cache_.end()) return it->second;
        const Submodule& k = submodules_[ki];
        PerKernel pk;
        std::uint32_t ksupp = 0;
        for (int i : k.support()) ksupp |= 1u << i;
        Vec v(n_, 0);
        do {
            std::uint64_t key = vec_encode(ring_, v);
            if (pk.coset_of.count(key)) continue;
            auto id = static_cast<std::uint32_t>(pk.rep.size());
            std::uint32_t mask = ksupp;
            std::int64_t leader = scaled_weight(v);
            for (const auto& z : k.elements()) {
                Vec member = vec_add(ring_, v, z);
                leader = std::min(leader, scaled_weight(member));
                pk.coset_of.emplace(vec_encode(ring_, member), id);
            }
            for (int i = 0; i < n_; ++i)
                if (v[i] != 0 && !(ksupp & (1u << i))) mask |= 1u << i;
            pk.rep.push_back(v);
            pk.supp_mask.push_back(mask);
            pk.leader_scaled.push_back(leader);
        } while (vec_next(ring_, v));
        return cache_.emplace(ki, std::move(pk)).first->second;
    }

    std::int64_t scaled_weight(const Vec& v) const {
        std::int64_t sum = 0;
        for (auto x : v) sum += scaled_[x];
        return sum;
    }

    std::int64_t search_kernel(const PerKernel& pk, int s, int ell, std::int64_t dmin) {
        const auto count = static_cast<std::uint32_t>(pk.rep.size());
        std::vector<std::uint32_t> all(count);
        for (std::uint32_t i = 0; i < count; ++i) all[i] = i;
        best_ = 0;
        target_s_ = s;
        ell_ = ell;
        dmin_ = dmin;
        pk_ = &pk;
        chosen_.clear();
        extend(all, 0u, std::numeric_limits<std::int64_t>::max());
        return best_;
    }

    std::int64_t pair_distance(std::uint32_t a, std::uint32_t b) const {
        Vec diff = vec_sub(ring_, pk_->rep[a], pk_->rep[b]);
        return pk_->leader_scaled[pk_->coset_of.at(vec_encode(ring_, diff))];
    }

    void extend(const std::vector<std::uint32_t>& candidates, std::uint32_t mask,
                std::int64_t mind) {
        if (!chosen_.empty() && std::popcount(mask) == target_s_)
            best_ = std::max(best_, static_cast<std::int64_t>(chosen_.size()));
        if (chosen_.size() >= 2) check_plotkin_inequality(mask, mind);
        for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
            if (static_cast<std::int64_t>(chosen_.size() + candidates.size() - idx) <= best_)
                return;  // cannot beat the incumbent
            std::uint32_t c = candidates[idx];
            std::uint32_t nmask = mask | pk_->supp_mask[c];
            if (std::popcount(nmask) > target_s_) continue;
            std::vector<std::uint32_t> ncand;
            std::int64_t nmind = mind;
            bool feasible = true;
            for (std::size_t j = idx + 1; j < candidates.size(); ++j) {
                if (pair_distance(c, candidates[j]) >= dmin_) ncand.push_back(candidates[j]);
            }
            if (!chosen_.empty()) {
                // distance to previously chosen; candidates were prefiltered,
                // only the new pairings with c need the minimum update
                for (auto prev : chosen_) {
                    std::int64_t pd = pair_distance(c, prev);
                    if (pd < dmin_) {
                        feasible = false;
                        break;
                    }
                    nmind = std::min(nmind, pd);
                }
            }
            if (!feasible) continue;
            chosen_.push_back(c);
            extend(ncand, nmask, nmind);
            chosen_.pop_back();
        }
    }

    void check_plotkin_inequality(std::uint32_t mask, std::int64_t mind_scaled) {
        // (|C|-1) d <= (|C| s - l) gamma with the partial code's own support
        long size = static_cast<long>(chosen_.size());
        Rat lhs = rat(size - 1) * rat(mind_scaled, scale_);
        Rat rhs = (rat(size) * rat(std::popcount(mask)) - rat(ell_)) * w_.gamma;
        if (lhs > rhs) ++eq2_violations_;
    }

    Ring ring_;
    WeightFunction w_;
    int n_;
    std::vector<Submodule> submodules_;
    std::map<std::size_t, PerKernel> cache_;
    std::int64_t scale_ = 1;
    std::vector<std::int64_t> scaled_;

    // search state
    const PerKernel* pk_ = nullptr;
    std::vector<std::uint32_t> chosen_;
    std::int64_t best_ = 0;
    int target_s_ = 0;
    int ell_ = 0;
    std::int64_t dmin_ = 0;
    std::size_t eq2_violations_ = 0;
};

/// One-shot wrapper around ExhaustiveSearch.
inline std::int64_t exhaustive_optimum(const Ring& ring, const WeightFunction& w, int n, int s,
                                       int ell, const Rat& d,
                                       std::size_t ambient_cap = std::size_t{1} << 16) {
    ExhaustiveSearch search(ring, w, n, ambient_cap);
    return search.optimum(s, ell, d);
}

}  // namespace qmc
