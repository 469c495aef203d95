#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "qmc/errors.hpp"
#include "qmc/ring.hpp"
#include "qmc/vec.hpp"

namespace qmc {

inline constexpr std::size_t kDefaultSpanCap = std::size_t{1} << 24;

/// A finitely generated submodule of ring^n with its full element
/// enumeration (sorted for membership tests) and support set.
class Submodule {
  public:
    /// Closure of the generators under addition and scalar multiplication.
    /// Throws CapExceededError when the closure grows past `cap`.
    static Submodule span(const Ring& ring, int n, const std::vector<Vec>& generators,
                          std::size_t cap = kDefaultSpanCap) {
        if (!ring.is_commutative())
            throw OutOfRangeError("submodules require a commutative coefficient ring");
        for (const auto& g : generators)
            if (static_cast<int>(g.size()) != n) throw OutOfRangeError("generator length mismatch");

        // For commutative rings span = { sum r_i g_i }, so one pass per
        // generator suffices: S <- union over r of (S + r*g).
        std::set<Vec> closure;
        closure.insert(Vec(n, 0));
        for (const auto& g : generators) {
            if (closure.count(g)) continue;  // already spanned
            std::set<Vec> next;
            for (std::int64_t r = 0; r < ring.cardinality(); ++r) {
                Vec rg = vec_scale(ring, r, g);
                for (const auto& s : closure) {
                    next.insert(vec_add(ring, s, rg));
                    if (next.size() > cap)
                        throw CapExceededError("submodule closure exceeds cap", next.size());
                }
            }
            closure = std::move(next);
        }

        Submodule out;
        out.ring_ = ring;
        out.n_ = n;
        out.generators_ = generators;
        out.elements_.assign(closure.begin(), closure.end());
        for (const auto& v : out.elements_)
            for (int i = 0; i < n; ++i)
                if (v[i] != 0) out.support_.insert(i);
        return out;
    }

    static Submodule trivial(const Ring& ring, int n) { return span(ring, n, {}); }

    const Ring& ring() const { return ring_; }
    int length() const { return n_; }
    const std::vector<Vec>& generators() const { return generators_; }

    /// All elements in ascending lexicographic order.
    const std::vector<Vec>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    /// 0-based coordinate support.
    const std::set<int>& support() const { return support_; }
    int support_size() const { return static_cast<int>(support_.size()); }

    bool contains(const Vec& v) const {
        return std::binary_search(elements_.begin(), elements_.end(), v);
    }

    /// Submodule punctured on the coordinates in `drop`; element count is
    /// preserved when drop avoids the support.
    Submodule punctured(const std::set<int>& drop) const {
        std::vector<Vec> gens;
        gens.reserve(generators_.size());
        for (const auto& g : generators_) gens.push_back(puncture(g, drop));
        int kept = n_ - static_cast<int>(drop.size());
        return span(ring_, kept, gens);
    }

  private:
    Ring ring_ = Ring::residue(2);
    int n_ = 0;
    std::vector<Vec> generators_;
    std::vector<Vec> elements_;
    std::set<int> support_;
};

inline Submodule submodule_span(const Ring& ring, int n, const std::vector<Vec>& generators,
                                std::size_t cap = kDefaultSpanCap) {
    return Submodule::span(ring, n, generators, cap);
}

}  // namespace qmc
