#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmc/errors.hpp"
#include "qmc/rational.hpp"
#include "qmc/ring.hpp"
#include "qmc/submodule.hpp"
#include "qmc/vec.hpp"

namespace qmc {

/// A per-element exact-rational weight table together with its average
/// cyclic-submodule weight gamma. Weight tables extend to words
/// coordinatewise (vector_weight) and descend to quotients (induced_weight).
struct WeightFunction {
    Ring ring;
    std::vector<Rat> table;  // indexed by element encoding
    Rat gamma;

    const Rat& weight(std::int64_t element) const { return table[element]; }
};

namespace detail {

inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int k = 0;
        while (n % d == 0) {
            n /= d;
            ++k;
        }
        out.push_back({d, k});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t out = n;
    for (auto [p, k] : factorize(n)) out = out / p * (p - 1);
    return out;
}

/// Moebius function; 0 on non-squarefree arguments.
inline int moebius(std::int64_t n) {
    int sign = 1;
    for (auto [p, k] : factorize(n)) {
        if (k > 1) return 0;
        sign = -sign;
    }
    return sign;
}

/// Ramanujan sum c_m(a): the sum of a*u-th roots of unity over units u of
/// Z_m, an integer. Hoelder's evaluation.
inline std::int64_t ramanujan_sum(std::int64_t m, std::int64_t a) {
    std::int64_t g = std::gcd(a, m);
    if (a == 0) g = m;
    std::int64_t q = m / g;
    return static_cast<std::int64_t>(moebius(q)) * (euler_phi(m) / euler_phi(q));
}

/// Same quantity through the divisor-sum identity; kept as an independent
/// cross-check for tests.
inline std::int64_t ramanujan_sum_divisor_form(std::int64_t m, std::int64_t a) {
    std::int64_t g = std::gcd(a, m);
    if (a == 0) g = m;
    std::int64_t acc = 0;
    for (std::int64_t d = 1; d <= g; ++d)
        if (g % d == 0 && m % d == 0) acc += moebius(m / d) * d;
    return acc;
}

}  // namespace detail

/// The customary gamma for each alphabet: (q-1)/q on fields (making the
/// table the Hamming weight), 1 on residue rings (the Lee weight on Z_4),
/// (q^2-1)/q on 2x2 matrix rings.
inline Rat default_gamma(const Ring& ring) {
    switch (ring.kind()) {
        case Ring::Kind::field: {
            std::int64_t q = ring.cardinality();
            return rat(q - 1, q);
        }
        case Ring::Kind::residue: return rat(1);
        case Ring::Kind::matrix2: {
            std::int64_t q = ring.base_field().cardinality();
            return rat(q * q - 1, q);
        }
    }
    return rat(1);
}

/// The homogeneous weight of normalization gamma on the given alphabet,
/// evaluated exactly:
///   - fields: gamma * q/(q-1) on every nonzero element;
///   - Z_m: via the integer-valued unit-character sum (a Ramanujan sum),
///     which reproduces the closed p^k tables;
///   - 2x2 matrix rings over F_q: the rank-based table.
inline WeightFunction homogeneous_weight(const Ring& ring, const Rat& gamma) {
    if (gamma <= 0) throw OutOfRangeError("gamma must be positive");
    WeightFunction w{ring, {}, gamma};
    w.table.resize(ring.cardinality());
    switch (ring.kind()) {
        case Ring::Kind::field: {
            std::int64_t q = ring.cardinality();
            Rat nonzero = gamma * rat(q, q - 1);
            for (std::int64_t a = 1; a < q; ++a) w.table[a] = nonzero;
            break;
        }
        case Ring::Kind::residue: {
            std::int64_t m = ring.modulus_m();
            std::int64_t phi = detail::euler_phi(m);
            for (std::int64_t a = 1; a < m; ++a)
                w.table[a] = gamma * (rat(1) - rat(detail::ramanujan_sum(m, a), phi));
            break;
        }
        case Ring::Kind::matrix2: {
            std::int64_t q = ring.base_field().cardinality();
            // natural normalization is (q^2-1)/q; rescale the standard table
            Rat scale = gamma * rat(q, q * q - 1);
            Rat rank2 = scale * rat(q * q - q - 1, q - 1);
            Rat rank1 = scale * rat(q);
            for (std::int64_t a = 1; a < ring.cardinality(); ++a)
                w.table[a] = ring.matrix_rank(a) == 2 ? rank2 : rank1;
            break;
        }
    }
    return w;
}

inline WeightFunction homogeneous_weight(const Ring& ring) {
    return homogeneous_weight(ring, default_gamma(ring));
}

/// Rank-based weight on 2x2 matrices over the given field, rescaled to the
/// requested gamma. At gamma=(q^2-1)/q and q=2 this is the Bachoc weight.
inline WeightFunction matrix_ring_weight(const Ring& base_field, const Rat& gamma) {
    return homogeneous_weight(Ring::matrix_ring2(base_field), gamma);
}

inline WeightFunction matrix_ring_weight(std::int64_t prime_q, const Rat& gamma) {
    return matrix_ring_weight(Ring::prime_field(prime_q), gamma);
}

/// Outcome of the homogeneity check; on failure carries the violated axiom
/// and a witness element (pair, for the invariance axiom).
struct HomogeneityReport {
    bool ok = true;
    std::string axiom;              // "w(0)=0", "H1" or "H2"
    std::int64_t witness_x = 0;
    std::int64_t witness_y = 0;
    std::string detail;

    explicit operator bool() const { return ok; }
};

/// Exhaustively checks w(0)=0, H1 (constant on elements generating the same
/// cyclic left submodule) and H2 (cyclic submodules average to gamma).
inline HomogeneityReport verify_homogeneous(const WeightFunction& w,
                                            std::size_t cap = std::size_t{1} << 16) {
    const Ring& ring = w.ring;
    const std::int64_t card = ring.cardinality();
    if (static_cast<std::size_t>(card) > cap)
        throw CapExceededError("verify_homogeneous alphabet too large", card);

    HomogeneityReport rep;
    if (w.table[0] != 0) {
        rep.ok = false;
        rep.axiom = "w(0)=0";
        rep.detail = "weight of zero is " + w.table[0].get_str();
        return rep;
    }

    // left cyclic submodule R*x per element
    std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> classes;
    for (std::int64_t x = 0; x < card; ++x) {
        std::vector<std::int64_t> rx;
        rx.reserve(card);
        for (std::int64_t r = 0; r < card; ++r) rx.push_back(ring.mul(r, x));
        std::sort(rx.begin(), rx.end());
        rx.erase(std::unique(rx.begin(), rx.end()), rx.end());
        classes[rx].push_back(x);
    }

    for (const auto& [rx, members] : classes) {
        for (std::size_t i = 1; i < members.size(); ++i) {
            if (w.table[members[i]] != w.table[members[0]]) {
                rep.ok = false;
                rep.axiom = "H1";
                rep.witness_x = members[0];
                rep.witness_y = members[i];
                rep.detail = "equal cyclic submodules but weights " +
                             w.table[members[0]].get_str() + " vs " + w.table[members[i]].get_str();
                return rep;
            }
        }
    }

    for (std::int64_t x = 1; x < card; ++x) {
        std::set<std::int64_t> rx;
        for (std::int64_t r = 0; r < card; ++r) rx.insert(ring.mul(r, x));
        Rat sum = 0;
        for (auto y : rx) sum += w.table[y];
        if (sum != w.gamma * rat(static_cast<long>(rx.size()))) {
            rep.ok = false;
            rep.axiom = "H2";
            rep.witness_x = x;
            rep.detail = "cyclic submodule of " + std::to_string(x) + " averages " +
                         Rat(sum / rat(static_cast<long>(rx.size()))).get_str() + ", expected " +
                         w.gamma.get_str();
            return rep;
        }
    }
    return rep;
}

/// Coordinatewise weight of a word.
inline Rat vector_weight(const WeightFunction& w, const Vec& v) {
    Rat sum = 0;
    for (auto x : v) sum += w.table[x];
    return sum;
}

/// Minimum weight over the coset x + K (the coset leader's weight).
inline Rat induced_weight(const WeightFunction& w, const Submodule& k, const Vec& x) {
    if (k.ring() != w.ring) throw OutOfRangeError("induced_weight: ring mismatch");
    std::optional<Rat> best;
    for (const auto& z : k.elements()) {
        Rat cand = vector_weight(w, vec_add(w.ring, x, z));
        if (!best || cand < *best) best = cand;
    }
    return *best;
}

/// Average weight over the coset x + K, computed both by enumeration and by
/// the closed form gamma*|supp K| + w(x punctured onto supp K). The two must
/// agree exactly; disagreement means the table is not homogeneous.
inline Rat avg_coset_weight(const WeightFunction& w, const Submodule& k, const Vec& x) {
    Rat sum = 0;
    for (const auto& z : k.elements()) sum += vector_weight(w, vec_add(w.ring, x, z));
    Rat enumerated = sum / rat(static_cast<long>(k.size()));

    Rat closed = w.gamma * rat(static_cast<long>(k.support_size())) +
                 vector_weight(w, puncture(x, k.support()));
    if (enumerated != closed)
        throw LemmaViolationError("coset average " + enumerated.get_str() +
                                  " differs from closed form " + closed.get_str() +
                                  "; weight table is not homogeneous");
    return enumerated;
}

/// CSV export: element,weight-numerator,weight-denominator.
inline std::string weight_table_csv(const WeightFunction& w) {
    std::string out = "element,weight_num,weight_den\n";
    for (std::int64_t a = 0; a < w.ring.cardinality(); ++a) {
        out += std::to_string(a);
        out += ",";
        out += w.table[a].get_num().get_str();
        out += ",";
        out += w.table[a].get_den().get_str();
        out += "\n";
    }
    return out;
}

}  // namespace qmc
