#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "qmc/errors.hpp"
#include "qmc/ring.hpp"

namespace qmc {

/// A word over a ring: element encodings, coordinatewise.
using Vec = std::vector<std::int64_t>;

inline Vec vec_add(const Ring& ring, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.add(a[i], b[i]);
    return out;
}

inline Vec vec_sub(const Ring& ring, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.sub(a[i], b[i]);
    return out;
}

inline Vec vec_neg(const Ring& ring, const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.neg(a[i]);
    return out;
}

inline Vec vec_scale(const Ring& ring, std::int64_t c, const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.mul(c, a[i]);
    return out;
}

inline bool vec_is_zero(const Vec& a) {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

/// 0-based indices of nonzero coordinates.
inline std::set<int> vec_support(const Vec& a) {
    std::set<int> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) out.insert(static_cast<int>(i));
    return out;
}

/// Drops the coordinates listed in `drop` (0-based), preserving order.
inline Vec puncture(const Vec& v, const std::set<int>& drop) {
    Vec out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!drop.count(static_cast<int>(i))) out.push_back(v[i]);
    return out;
}

/// Keeps only the coordinates listed in `keep` (0-based), preserving order.
inline Vec project_onto(const Vec& v, const std::vector<int>& keep) {
    Vec out;
    out.reserve(keep.size());
    for (int i : keep) out.push_back(v[i]);
    return out;
}

/// Little-endian base-|ring| integer key for hashing and table indexing.
/// Callers must ensure |ring|^n fits (see encodable_length).
inline std::uint64_t vec_encode(const Ring& ring, const Vec& v) {
    std::uint64_t key = 0;
    std::uint64_t place = 1;
    std::uint64_t card = static_cast<std::uint64_t>(ring.cardinality());
    for (auto x : v) {
        key += static_cast<std::uint64_t>(x) * place;
        place *= card;
    }
    return key;
}

inline Vec vec_decode(const Ring& ring, std::uint64_t key, int n) {
    Vec out(n);
    std::uint64_t card = static_cast<std::uint64_t>(ring.cardinality());
    for (int i = 0; i < n; ++i) {
        out[i] = static_cast<std::int64_t>(key % card);
        key /= card;
    }
    return out;
}

/// Largest n with |ring|^n < 2^62.
inline int encodable_length(const Ring& ring) {
    std::uint64_t card = static_cast<std::uint64_t>(ring.cardinality());
    std::uint64_t limit = 1ULL << 62;
    int n = 0;
    std::uint64_t place = 1;
    while (place < limit / card) {
        place *= card;
        ++n;
    }
    return n;
}

/// |ring|^n if it fits below the cap, otherwise nullopt.
inline std::optional<std::uint64_t> power_within(const Ring& ring, int n, std::uint64_t cap) {
    std::uint64_t card = static_cast<std::uint64_t>(ring.cardinality());
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > cap / card) return std::nullopt;
        total *= card;
    }
    if (total > cap) return std::nullopt;
    return total;
}

/// Next word in lexicographic odometer order; false after the last one.
inline bool vec_next(const Ring& ring, Vec& v) {
    std::int64_t card = ring.cardinality();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (++v[i] < card) return true;
        v[i] = 0;
    }
    return false;
}

}  // namespace qmc
