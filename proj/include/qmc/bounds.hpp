#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmc/codes.hpp"
#include "qmc/errors.hpp"
#include "qmc/rational.hpp"
#include "qmc/weights.hpp"

namespace qmc {

/// Integer rescaling of a weight table: scale is the LCM of the table's
/// denominators, so scale * w(a) is a nonnegative integer for every a.
/// All ball computations run on this grid; any real radius between grid
/// points yields the same ball.
struct WeightGrid {
    std::int64_t scale = 1;
    std::vector<std::int64_t> scaled;  // per element encoding
    std::int64_t max_scaled = 0;

    explicit WeightGrid(const WeightFunction& w) {
        Int l = 1;
        for (const auto& q : w.table)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
        scale = l.get_si();
        scaled.resize(w.table.size());
        for (std::size_t a = 0; a < w.table.size(); ++a) {
            scaled[a] = Rat(w.table[a] * scale).get_num().get_si();
            max_scaled = std::max(max_scaled, scaled[a]);
        }
    }
};

/// |{z in ring^k : w(z) <= r}|, exactly, by convolution over the integer
/// weight grid.
inline Int ball_size(const WeightFunction& w, int k, const Rat& r) {
    if (k < 0) throw OutOfRangeError("ball_size: negative length");
    if (r < 0) return 0;
    WeightGrid grid(w);
    std::vector<Int> dp(1, 1);  // dp[t] = words of scaled weight t
    for (int i = 0; i < k; ++i) {
        std::vector<Int> next(dp.size() + grid.max_scaled, 0);
        for (std::size_t t = 0; t < dp.size(); ++t) {
            if (dp[t] == 0) continue;
            for (std::size_t a = 0; a < grid.scaled.size(); ++a)
                next[t + grid.scaled[a]] += dp[t];
        }
        dp = std::move(next);
    }
    Int limit = floor_rat(r * rat(grid.scale));
    Int total = 0;
    for (std::size_t t = 0; t < dp.size(); ++t)
        if (Int(static_cast<long>(t)) <= limit) total += dp[t];
    return total;
}

/// Number of cosets of K in ring^s whose average weight is at most r:
/// |B^{s-l}(r - gamma*l)| * |ring|^l / |K|. Requires r >= gamma*l.
inline Rat avg_ball_size(const WeightFunction& w, int s, int ell, const Int& k_size,
                         const Rat& r) {
    if (r < w.gamma * rat(ell))
        throw NotApplicableError("average-ball radius below gamma*l");
    Int inner = ball_size(w, s - ell, r - w.gamma * rat(ell));
    return rat(inner * pow_int(w.ring.cardinality(), static_cast<unsigned long>(ell)), k_size);
}

/// One evaluated upper bound on |C| with its applicability flag and the
/// parameters it was evaluated at (for auditability).
struct BoundReport {
    std::string name;
    bool applicable = false;
    Int value = 0;     // floor of the exact bound, meaningful iff applicable
    Rat exact = 0;     // the bound before flooring
    std::optional<Rat> radius;  // the r used, when the bound has one
    std::string detail;         // winning case, or why not applicable
    // inputs echoed
    Rat d = 0, gamma = 0;
    int s = 0, ell = 0;
};

/// (d - gamma*l) / (d - gamma*s), floored; applicable iff d > gamma*s.
inline BoundReport plotkin_bound(const Rat& d, int s, int ell, const Rat& gamma) {
    if (d <= 0 || gamma <= 0 || ell < 0 || s < ell)
        throw OutOfRangeError("plotkin_bound: need d > 0, gamma > 0, s >= l >= 0");
    BoundReport rep;
    rep.name = "plotkin";
    rep.d = d;
    rep.gamma = gamma;
    rep.s = s;
    rep.ell = ell;
    if (d > gamma * rat(s)) {
        rep.applicable = true;
        rep.exact = (d - gamma * rat(ell)) / (d - gamma * rat(s));
        rep.value = floor_rat(rep.exact);
    } else {
        rep.detail = "requires d > gamma*s";
    }
    return rep;
}

/// The inequality (|C|-1) d <= (|C| s - l) gamma for a concrete code.
inline bool plotkin_inequality_holds(const QuotientCode& c) {
    if (c.size() < 2) throw DegenerateCodeError("inequality check needs at least two codewords");
    CodeParams p = code_params(c);
    Rat lhs = rat(static_cast<long>(p.size) - 1) * *p.d;
    Rat rhs = (rat(static_cast<long>(p.size)) * rat(p.s) - rat(p.ell)) * c.weight().gamma;
    return lhs <= rhs;
}

/// h(r,s,l,d) = (d - gamma l) gamma (s-l) / ((r - gamma l)^2 - gamma (s-l)(2r - d - gamma l)).
/// Requires r <= gamma*s and a positive denominator.
inline Rat elias_h(const Rat& r, int s, int ell, const Rat& d, const Rat& gamma) {
    Rat gl = gamma * rat(ell);
    if (r > gamma * rat(s)) throw NotApplicableError("elias_h: requires r <= gamma*s");
    Rat denom = (r - gl) * (r - gl) - gamma * rat(s - ell) * (rat(2) * r - d - gl);
    if (denom <= 0) throw NotApplicableError("elias_h: nonpositive denominator");
    return (d - gl) * gamma * rat(s - ell) / denom;
}

/// |C| <= h(r,s,l,d) |ring|^{s-l} / |B^{s-l}(r - gamma l)|, floored.
inline BoundReport elias_bound(const WeightFunction& w, const Rat& r, int s, int ell,
                               const Rat& d) {
    BoundReport rep;
    rep.name = "elias";
    rep.d = d;
    rep.gamma = w.gamma;
    rep.s = s;
    rep.ell = ell;
    rep.radius = r;
    if (r < w.gamma * rat(ell)) {
        rep.detail = "requires r >= gamma*l";
        return rep;
    }
    Rat h;
    try {
        h = elias_h(r, s, ell, d, w.gamma);
    } catch (const NotApplicableError& e) {
        rep.detail = e.what();
        return rep;
    }
    Int ball = ball_size(w, s - ell, r - w.gamma * rat(ell));
    rep.applicable = true;
    rep.exact = h * rat(pow_int(w.ring.cardinality(), static_cast<unsigned long>(s - ell)), ball);
    rep.value = floor_rat(rep.exact);
    return rep;
}

/// Minimizes elias_bound over the radius grid
/// { gamma*l + j/scale : j = 0 .. scale*gamma*(s-l) }; reports the best r.
inline BoundReport elias_bound_optimized(const WeightFunction& w, int s, int ell, const Rat& d) {
    WeightGrid grid(w);
    BoundReport best;
    best.name = "elias";
    best.d = d;
    best.gamma = w.gamma;
    best.s = s;
    best.ell = ell;
    best.detail = "no admissible radius on the weight grid";
    Rat gl = w.gamma * rat(ell);
    Int jmax = floor_rat(w.gamma * rat(s - ell) * rat(grid.scale));
    if (jmax > (1 << 22)) throw OutOfRangeError("elias radius grid too large");
    for (Int j = 0; j <= jmax; ++j) {
        Rat r = gl + rat(j, grid.scale);
        BoundReport rep = elias_bound(w, r, s, ell, d);
        if (!rep.applicable) continue;
        if (!best.applicable || rep.exact < best.exact) best = rep;
    }
    return best;
}

/// Sphere packing: |C| <= |ring|^{s-l} / |B^{s-l}(r - gamma l)| for any
/// radius with (d-1)/2 >= r > gamma*l; the largest admissible grid radius
/// gives the smallest bound.
inline BoundReport sphere_packing_bound(const WeightFunction& w, int s, int ell, const Rat& d) {
    WeightGrid grid(w);
    BoundReport rep;
    rep.name = "sphere";
    rep.d = d;
    rep.gamma = w.gamma;
    rep.s = s;
    rep.ell = ell;
    Rat gl = w.gamma * rat(ell);
    Rat rmax = (d - 1) / rat(2);
    if (rmax <= gl) {
        rep.detail = "requires (d-1)/2 > gamma*l";
        return rep;
    }
    Int j = floor_rat((rmax - gl) * rat(grid.scale));
    if (j < 1) {
        rep.detail = "no grid radius strictly above gamma*l";
        return rep;
    }
    Rat r = gl + rat(j, grid.scale);
    Int ball = ball_size(w, s - ell, r - gl);
    rep.applicable = true;
    rep.radius = r;
    rep.exact = rat(pow_int(w.ring.cardinality(), static_cast<unsigned long>(s - ell)), ball);
    rep.value = floor_rat(rep.exact);
    return rep;
}

/// Three-case combined bound on A(ring: n,s,l,d): evaluates each case whose
/// hypothesis holds and returns the minimum, naming the winner.
inline BoundReport combined_bound(const WeightFunction& w, int n, int s, int ell, const Rat& d) {
    if (n < s || s < ell || ell < 0) throw OutOfRangeError("combined_bound: need n >= s >= l >= 0");
    BoundReport best;
    best.name = "combined";
    best.d = d;
    best.gamma = w.gamma;
    best.s = s;
    best.ell = ell;
    best.detail = "no case applies";

    auto consider = [&](const BoundReport& rep, const char* label) {
        if (!rep.applicable) return;
        if (!best.applicable || rep.exact < best.exact) {
            best = rep;
            best.name = "combined";
            best.detail = label;
        }
    };
    consider(plotkin_bound(d, s, ell, w.gamma), "plotkin");
    consider(elias_bound_optimized(w, s, ell, d), "elias");
    consider(sphere_packing_bound(w, s, ell, d), "sphere");
    return best;
}

}  // namespace qmc
