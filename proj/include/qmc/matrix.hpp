#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qmc/errors.hpp"
#include "qmc/ring.hpp"
#include "qmc/vec.hpp"

namespace qmc {

/// Dense matrix over a commutative ring (residue or field kind).
class RingMatrix {
  public:
    RingMatrix(Ring ring, int rows, int cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols),
          entries_(static_cast<std::size_t>(rows) * cols, 0) {
        if (!ring_.is_commutative())
            throw OutOfRangeError("matrices require a commutative coefficient ring");
        if (rows < 0 || cols < 0) throw OutOfRangeError("negative matrix dimension");
    }

    static RingMatrix identity(const Ring& ring, int n) {
        RingMatrix m(ring, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static RingMatrix from_rows(const Ring& ring, const std::vector<Vec>& rows, int cols) {
        RingMatrix m(ring, static_cast<int>(rows.size()), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(rows[i].size()) != cols)
                throw OutOfRangeError("row length mismatch");
            for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
        }
        return m;
    }

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::int64_t& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
    std::int64_t at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    Vec row(int i) const {
        Vec out(cols_);
        for (int j = 0; j < cols_; ++j) out[j] = at(i, j);
        return out;
    }

    Vec col(int j) const {
        Vec out(rows_);
        for (int i = 0; i < rows_; ++i) out[i] = at(i, j);
        return out;
    }

    std::vector<Vec> row_list() const {
        std::vector<Vec> out;
        out.reserve(rows_);
        for (int i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    RingMatrix columns(const std::vector<int>& which) const {
        RingMatrix out(ring_, rows_, static_cast<int>(which.size()));
        for (int i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < which.size(); ++k) out.at(i, static_cast<int>(k)) = at(i, which[k]);
        return out;
    }

    bool is_zero() const {
        for (auto e : entries_)
            if (e != 0) return false;
        return true;
    }

    friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
        return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.entries_ == b.entries_;
    }
    friend bool operator!=(const RingMatrix& a, const RingMatrix& b) { return !(a == b); }

  private:
    Ring ring_;
    int rows_, cols_;
    std::vector<std::int64_t> entries_;
};

inline RingMatrix mat_add(const RingMatrix& a, const RingMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.ring() != b.ring())
        throw OutOfRangeError("matrix add: shape or ring mismatch");
    RingMatrix out(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.ring().add(a.at(i, j), b.at(i, j));
    return out;
}

inline RingMatrix mat_sub(const RingMatrix& a, const RingMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.ring() != b.ring())
        throw OutOfRangeError("matrix sub: shape or ring mismatch");
    RingMatrix out(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.ring().sub(a.at(i, j), b.at(i, j));
    return out;
}

inline RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b) {
    if (a.cols() != b.rows() || a.ring() != b.ring())
        throw OutOfRangeError("matrix mul: shape or ring mismatch");
    const Ring& r = a.ring();
    RingMatrix out(r, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            std::int64_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                out.at(i, j) = r.add(out.at(i, j), r.mul(aik, b.at(k, j)));
        }
    return out;
}

/// Row vector times matrix.
inline Vec vec_mat_mul(const Vec& x, const RingMatrix& m) {
    if (static_cast<int>(x.size()) != m.rows()) throw OutOfRangeError("vec*mat: length mismatch");
    const Ring& r = m.ring();
    Vec out(m.cols(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < m.cols(); ++j) out[j] = r.add(out[j], r.mul(x[i], m.at(i, j)));
    }
    return out;
}

namespace detail {

/// Extended gcd over the integers: returns (g, s, t) with s*a + t*b = g > 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> xgcd(std::int64_t a, std::int64_t b) {
    std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    return {r0, s0, t0};
}

/// Reduced row echelon form over a field, in place on a row list.
inline std::vector<Vec> rref_rows(const Ring& ring, std::vector<Vec> rows, int cols) {
    int pivot_row = 0;
    for (int c = 0; c < cols && pivot_row < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int i = pivot_row; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[pivot_row], rows[sel]);
        std::int64_t inv = ring.inverse(rows[pivot_row][c]);
        rows[pivot_row] = vec_scale(ring, inv, rows[pivot_row]);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == pivot_row || rows[i][c] == 0) continue;
            std::int64_t f = rows[i][c];
            for (int j = 0; j < cols; ++j)
                rows[i][j] = ring.sub(rows[i][j], ring.mul(f, rows[pivot_row][j]));
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

/// Finds a unit u of Z_m with u*v == gcd(v, m) (mod m).
inline std::int64_t unit_normalizer(std::int64_t v, std::int64_t m) {
    std::int64_t g = std::gcd(v, m);
    std::int64_t a = v / g;          // coprime to m/g
    std::int64_t step = m / g;
    // lift a^{-1} mod (m/g) to a unit mod m
    auto [gg, s, t] = xgcd(a % step == 0 ? 1 : a % step, step);
    (void)gg;
    (void)t;
    std::int64_t base = step == 1 ? 1 : ((s % step) + step) % step;
    for (std::int64_t k = 0; k < g; ++k) {
        std::int64_t cand = (base + k * step) % m;
        if (cand != 0 && std::gcd(cand, m) == 1 && (cand * v) % m == g) return cand;
    }
    // exhaustive fallback
    for (std::int64_t u = 1; u < m; ++u)
        if (std::gcd(u, m) == 1 && (u * v) % m == g) return u;
    throw Error("unit_normalizer: no unit found (unreachable)");
}

/// Howell form over Z_m: the canonical row form whose equality characterizes
/// equality of row spans. Incremental gcd elimination plus annihilator
/// closure, then pivot/off-pivot normalization.
inline std::vector<Vec> howell_rows(const Ring& ring, std::vector<Vec> input, int cols) {
    const std::int64_t m = ring.modulus_m();
    std::vector<std::optional<Vec>> pivot(cols);
    std::vector<Vec> work = std::move(input);

    auto push_annihilator = [&](const Vec& v, int c) {
        std::int64_t g = std::gcd(v[c], m);
        if (g == 1) return;  // unit pivot: the annihilator multiple is zero
        std::int64_t ann = m / g;
        Vec w(cols);
        bool nonzero = false;
        for (int j = 0; j < cols; ++j) {
            w[j] = (v[j] * ann) % m;
            nonzero |= (w[j] != 0);
        }
        if (nonzero) work.push_back(std::move(w));
    };

    while (!work.empty()) {
        Vec v = std::move(work.back());
        work.pop_back();
        for (int c = 0; c < cols; ++c) {
            if (v[c] == 0) continue;
            if (!pivot[c]) {
                pivot[c] = v;
                push_annihilator(*pivot[c], c);
                break;
            }
            Vec& u = *pivot[c];
            if (v[c] % u[c] == 0) {
                // plain elimination
                std::int64_t f = v[c] / u[c];
                for (int j = c; j < cols; ++j) v[j] = ((v[j] - f * u[j]) % m + m) % m;
            } else {
                auto [g, s, t] = xgcd(u[c], v[c]);
                std::int64_t fu = u[c] / g, fv = v[c] / g;
                Vec np(cols), no(cols);
                for (int j = 0; j < cols; ++j) {
                    np[j] = ((s * u[j] + t * v[j]) % m + m) % m;
                    no[j] = ((fu * v[j] - fv * u[j]) % m + m) % m;
                }
                pivot[c] = std::move(np);
                push_annihilator(*pivot[c], c);
                v = std::move(no);
            }
            if (vec_is_zero(v)) break;
        }
    }

    // normalize pivots to divisors of m via unit scaling
    for (int c = 0; c < cols; ++c) {
        if (!pivot[c]) continue;
        Vec& v = *pivot[c];
        std::int64_t g = std::gcd(v[c], m);
        if (v[c] != g) {
            std::int64_t u = unit_normalizer(v[c], m);
            for (int j = c; j < cols; ++j) v[j] = (v[j] * u) % m;
        }
    }
    // reduce entries above each pivot into [0, pivot)
    for (int c = 0; c < cols; ++c) {
        if (!pivot[c]) continue;
        std::int64_t p = (*pivot[c])[c];
        for (int c2 = 0; c2 < c; ++c2) {
            if (!pivot[c2]) continue;
            Vec& u = *pivot[c2];
            std::int64_t f = u[c] / p;
            if (f == 0) continue;
            for (int j = c; j < cols; ++j) u[j] = ((u[j] - f * (*pivot[c])[j]) % m + m) % m;
        }
    }

    std::vector<Vec> out;
    for (int c = 0; c < cols; ++c)
        if (pivot[c]) out.push_back(std::move(*pivot[c]));
    return out;
}

inline std::vector<Vec> canonical_rows(const Ring& ring, const std::vector<Vec>& rows, int cols) {
    if (ring.kind() == Ring::Kind::field) return rref_rows(ring, rows, cols);
    return howell_rows(ring, rows, cols);
}

}  // namespace detail

/// Canonical row form: reduced row echelon form over fields, Howell form
/// over residue rings. Two matrices have equal row span iff their canonical
/// forms are identical. Zero rows are dropped.
inline RingMatrix row_canonical(const RingMatrix& m) {
    auto rows = detail::canonical_rows(m.ring(), m.row_list(), m.cols());
    return RingMatrix::from_rows(m.ring(), rows, m.cols());
}

/// Inverse of a square matrix, by unit-pivot elimination on [M | I] with
/// gcd row combinations to surface a unit pivot when one exists.
inline RingMatrix mat_inverse(const RingMatrix& m) {
    if (m.rows() != m.cols()) throw OutOfRangeError("mat_inverse: matrix not square");
    const Ring& ring = m.ring();
    const int n = m.rows();
    std::vector<Vec> aug(n, Vec(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = m.at(i, j);
        aug[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int sel = -1;
        for (int i = c; i < n; ++i)
            if (ring.is_unit(aug[i][c])) {
                sel = i;
                break;
            }
        if (sel < 0 && ring.kind() == Ring::Kind::residue) {
            // combine rows to bring the column gcd to the pivot slot
            const std::int64_t mod = ring.modulus_m();
            for (int i = c + 1; i < n; ++i) {
                if (aug[i][c] == 0) continue;
                if (aug[c][c] == 0) {
                    std::swap(aug[c], aug[i]);
                    continue;
                }
                auto [g, s, t] = detail::xgcd(aug[c][c], aug[i][c]);
                std::int64_t fu = aug[c][c] / g, fv = aug[i][c] / g;
                Vec np(2 * n), no(2 * n);
                for (int j = 0; j < 2 * n; ++j) {
                    np[j] = ((s * aug[c][j] + t * aug[i][j]) % mod + mod) % mod;
                    no[j] = ((fu * aug[i][j] - fv * aug[c][j]) % mod + mod) % mod;
                }
                aug[c] = std::move(np);
                aug[i] = std::move(no);
            }
            if (ring.is_unit(aug[c][c])) sel = c;
        }
        if (sel < 0) throw NotInvertibleError("matrix has no unit pivot in column " +
                                              std::to_string(c) + "; determinant is not a unit");
        std::swap(aug[c], aug[sel]);
        std::int64_t inv = ring.inverse(aug[c][c]);
        aug[c] = vec_scale(ring, inv, aug[c]);
        for (int i = 0; i < n; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            std::int64_t f = aug[i][c];
            for (int j = 0; j < 2 * n; ++j) aug[i][j] = ring.sub(aug[i][j], ring.mul(f, aug[c][j]));
        }
    }
    RingMatrix out(ring, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = aug[i][n + j];
    return out;
}

/// Generators of the left kernel {e : e*M = 0}, as rows of a matrix with
/// M.rows() columns (possibly zero rows). Computed from the canonical form
/// of [M | I]: rows whose left part vanished span exactly the kernel.
inline RingMatrix left_kernel(const RingMatrix& m) {
    const Ring& ring = m.ring();
    const int k = m.rows(), n = m.cols();
    std::vector<Vec> aug(k, Vec(n + k, 0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = m.at(i, j);
        aug[i][n + i] = 1;
    }
    auto rows = detail::canonical_rows(ring, aug, n + k);
    std::vector<Vec> gens;
    for (const auto& r : rows) {
        bool left_zero = true;
        for (int j = 0; j < n && left_zero; ++j) left_zero = (r[j] == 0);
        if (!left_zero) continue;
        gens.emplace_back(r.begin() + n, r.end());
    }
    return RingMatrix::from_rows(ring, gens, k);
}

/// Solves x*M = v if possible.
inline std::optional<Vec> left_solve(const RingMatrix& m, const Vec& v) {
    if (static_cast<int>(v.size()) != m.cols()) throw OutOfRangeError("left_solve: length mismatch");
    const Ring& ring = m.ring();
    const int k = m.rows(), n = m.cols();
    std::vector<Vec> aug(k, Vec(n + k, 0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = m.at(i, j);
        aug[i][n + i] = 1;
    }
    auto rows = detail::canonical_rows(ring, aug, n + k);
    Vec residual = v;
    Vec x(k, 0);
    for (const auto& r : rows) {
        int lead = -1;
        for (int j = 0; j < n; ++j)
            if (r[j] != 0) {
                lead = j;
                break;
            }
        if (lead < 0) continue;
        if (residual[lead] == 0) continue;
        std::int64_t coef;
        if (ring.kind() == Ring::Kind::field) {
            coef = ring.mul(residual[lead], ring.inverse(r[lead]));
        } else {
            // pivot divides the modulus after normalization
            if (residual[lead] % r[lead] != 0) return std::nullopt;
            coef = residual[lead] / r[lead];
        }
        for (int j = 0; j < n; ++j) residual[j] = ring.sub(residual[j], ring.mul(coef, r[j]));
        for (int i = 0; i < k; ++i) x[i] = ring.add(x[i], ring.mul(coef, r[n + i]));
    }
    if (!vec_is_zero(residual)) return std::nullopt;
    return x;
}

}  // namespace qmc
