#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qmc/errors.hpp"

namespace qmc {

/// A finite coefficient alphabet with exact element arithmetic.
///
/// Three kinds are supported:
///   - residue:  Z_m, elements are canonical representatives 0..m-1;
///   - field:    F_{p^e} given by an explicit monic irreducible modulus
///               polynomial, elements encoded as little-endian base-p
///               integers of their coefficient vectors;
///   - matrix2:  2x2 matrices over a base field, encoded as four base-q
///               digits [[a,b],[c,d]] -> a + b q + c q^2 + d q^3. This kind
///               is non-commutative and carries no vector arithmetic; it
///               exists to host rank-based weight tables.
///
/// Rings are immutable values; copies share state and compare structurally.
class Ring {
  public:
    enum class Kind { residue, field, matrix2 };

    static Ring residue(std::int64_t m) {
        if (m < 2) throw OutOfRangeError("residue ring needs modulus >= 2");
        if (m > kMaxModulus) throw OutOfRangeError("residue modulus beyond supported size");
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::residue;
        impl->m = m;
        impl->card = m;
        return Ring(std::move(impl));
    }

    /// Builds F_{p^e} with the given modulus coefficients c0..ce (monic,
    /// irreducible over F_p; verified by exhaustive factor checks, which is
    /// enough for the supported degrees e <= 4).
    static Ring field(std::int64_t p, int e, std::vector<std::int64_t> modulus) {
        if (!is_prime(p)) throw OutOfRangeError("field characteristic must be prime");
        if (e < 1 || e > 4) throw OutOfRangeError("field extension degree must be 1..4");
        if (static_cast<int>(modulus.size()) != e + 1)
            throw OutOfRangeError("modulus polynomial must have degree e");
        for (auto& c : modulus) {
            c %= p;
            if (c < 0) c += p;
        }
        if (modulus.back() != 1) throw OutOfRangeError("modulus polynomial must be monic");
        std::int64_t card = 1;
        for (int i = 0; i < e; ++i) {
            card *= p;
            if (card > kMaxModulus) throw OutOfRangeError("field cardinality beyond supported size");
        }
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::field;
        impl->p = p;
        impl->e = e;
        impl->modulus = std::move(modulus);
        impl->card = card;
        if (e > 1 && !irreducible(*impl))
            throw OutOfRangeError("modulus polynomial is reducible over F_p");
        return Ring(std::move(impl));
    }

    static Ring prime_field(std::int64_t p) { return field(p, 1, {0, 1}); }

    /// 2x2 matrix ring over a base field.
    static Ring matrix_ring2(const Ring& base_field) {
        if (base_field.kind() != Kind::field)
            throw OutOfRangeError("matrix ring requires a field base");
        std::int64_t q = base_field.cardinality();
        if (q * q * q * q > kMaxModulus)
            throw OutOfRangeError("matrix ring cardinality beyond supported size");
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::matrix2;
        impl->base = std::make_shared<Ring>(base_field);
        impl->card = q * q * q * q;
        return Ring(std::move(impl));
    }

    Kind kind() const { return impl_->kind; }
    std::int64_t cardinality() const { return impl_->card; }
    bool is_commutative() const { return impl_->kind != Kind::matrix2; }

    /// Residue modulus m (residue kind only).
    std::int64_t modulus_m() const { return impl_->m; }
    std::int64_t characteristic() const {
        return impl_->kind == Kind::field ? impl_->p : impl_->m;
    }
    int extension_degree() const { return impl_->e; }
    const std::vector<std::int64_t>& modulus_poly() const { return impl_->modulus; }
    const Ring& base_field() const { return *impl_->base; }

    std::int64_t zero() const { return 0; }

    std::int64_t one() const {
        switch (impl_->kind) {
            case Kind::residue:
            case Kind::field: return 1;
            case Kind::matrix2: {
                std::int64_t q = impl_->base->cardinality();
                return 1 + q * q * q;  // [[1,0],[0,1]]
            }
        }
        return 1;
    }

    std::int64_t add(std::int64_t a, std::int64_t b) const {
        switch (impl_->kind) {
            case Kind::residue: return (a + b) % impl_->m;
            case Kind::field: {
                std::int64_t p = impl_->p, out = 0, place = 1;
                for (int i = 0; i < impl_->e; ++i) {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                return out;
            }
            case Kind::matrix2: {
                const Ring& f = *impl_->base;
                std::int64_t q = f.cardinality(), out = 0, place = 1;
                for (int i = 0; i < 4; ++i) {
                    out += f.add(a % q, b % q) * place;
                    a /= q;
                    b /= q;
                    place *= q;
                }
                return out;
            }
        }
        return 0;
    }

    std::int64_t neg(std::int64_t a) const {
        switch (impl_->kind) {
            case Kind::residue: return a == 0 ? 0 : impl_->m - a;
            case Kind::field: {
                std::int64_t p = impl_->p, out = 0, place = 1;
                for (int i = 0; i < impl_->e; ++i) {
                    std::int64_t d = a % p;
                    out += (d == 0 ? 0 : p - d) * place;
                    a /= p;
                    place *= p;
                }
                return out;
            }
            case Kind::matrix2: {
                const Ring& f = *impl_->base;
                std::int64_t q = f.cardinality(), out = 0, place = 1;
                for (int i = 0; i < 4; ++i) {
                    out += f.neg(a % q) * place;
                    a /= q;
                    place *= q;
                }
                return out;
            }
        }
        return 0;
    }

    std::int64_t sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }

    std::int64_t mul(std::int64_t a, std::int64_t b) const {
        switch (impl_->kind) {
            case Kind::residue: return (a * b) % impl_->m;
            case Kind::field: {
                auto pa = decode_poly(a), pb = decode_poly(b);
                return encode_poly(poly_mul_mod(pa, pb));
            }
            case Kind::matrix2: {
                const Ring& f = *impl_->base;
                auto ma = decode_mat2(a), mb = decode_mat2(b);
                std::array<std::int64_t, 4> out{};
                // [[a0,a1],[a2,a3]] * [[b0,b1],[b2,b3]]
                out[0] = f.add(f.mul(ma[0], mb[0]), f.mul(ma[1], mb[2]));
                out[1] = f.add(f.mul(ma[0], mb[1]), f.mul(ma[1], mb[3]));
                out[2] = f.add(f.mul(ma[2], mb[0]), f.mul(ma[3], mb[2]));
                out[3] = f.add(f.mul(ma[2], mb[1]), f.mul(ma[3], mb[3]));
                return encode_mat2(out);
            }
        }
        return 0;
    }

    bool is_unit(std::int64_t a) const {
        switch (impl_->kind) {
            case Kind::residue: return std::gcd(a, impl_->m) == 1;
            case Kind::field: return a != 0;
            case Kind::matrix2: {
                const Ring& f = *impl_->base;
                auto m = decode_mat2(a);
                std::int64_t det = f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
                return det != 0;
            }
        }
        return false;
    }

    std::optional<std::int64_t> try_inverse(std::int64_t a) const {
        switch (impl_->kind) {
            case Kind::residue: {
                auto [g, x] = ext_gcd(a, impl_->m);
                if (g != 1) return std::nullopt;
                std::int64_t inv = x % impl_->m;
                if (inv < 0) inv += impl_->m;
                return inv;
            }
            case Kind::field: {
                if (a == 0) return std::nullopt;
                return encode_poly(poly_inverse(decode_poly(a)));
            }
            case Kind::matrix2: {
                const Ring& f = *impl_->base;
                auto m = decode_mat2(a);
                std::int64_t det = f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
                auto idet = f.try_inverse(det);
                if (!idet) return std::nullopt;
                std::array<std::int64_t, 4> out{};
                out[0] = f.mul(*idet, m[3]);
                out[1] = f.mul(*idet, f.neg(m[1]));
                out[2] = f.mul(*idet, f.neg(m[2]));
                out[3] = f.mul(*idet, m[0]);
                return encode_mat2(out);
            }
        }
        return std::nullopt;
    }

    std::int64_t inverse(std::int64_t a) const {
        auto inv = try_inverse(a);
        if (!inv) throw NotInvertibleError("element " + std::to_string(a) + " is not a unit");
        return *inv;
    }

    /// All multiplicatively invertible elements, ascending by encoding.
    std::vector<std::int64_t> units() const {
        std::vector<std::int64_t> out;
        for (std::int64_t a = 0; a < impl_->card; ++a)
            if (is_unit(a)) out.push_back(a);
        return out;
    }

    /// Rank of a matrix2 element over the base field (0, 1 or 2).
    int matrix_rank(std::int64_t a) const {
        if (impl_->kind != Kind::matrix2) throw OutOfRangeError("matrix_rank: not a matrix ring");
        if (a == 0) return 0;
        return is_unit(a) ? 2 : 1;
    }

    /// Descriptor round-trippable through parse_ring_spec().
    std::string spec_string() const {
        switch (impl_->kind) {
            case Kind::residue: return "z" + std::to_string(impl_->m);
            case Kind::field: {
                if (impl_->e == 1) return "f" + std::to_string(impl_->p);
                std::string s = "f:" + std::to_string(impl_->p) + ":" + std::to_string(impl_->e) + ":";
                for (std::size_t i = 0; i < impl_->modulus.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(impl_->modulus[i]);
                }
                return s;
            }
            case Kind::matrix2: {
                const Ring& f = *impl_->base;
                if (f.extension_degree() == 1) return "m2:" + std::to_string(f.characteristic());
                std::string s = "m2:" + std::to_string(f.characteristic()) + ":" +
                                std::to_string(f.extension_degree()) + ":";
                const auto& mod = f.modulus_poly();
                for (std::size_t i = 0; i < mod.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(mod[i]);
                }
                return s;
            }
        }
        return "?";
    }

    friend bool operator==(const Ring& a, const Ring& b) {
        if (a.impl_ == b.impl_) return true;
        if (a.kind() != b.kind()) return false;
        switch (a.kind()) {
            case Kind::residue: return a.impl_->m == b.impl_->m;
            case Kind::field:
                return a.impl_->p == b.impl_->p && a.impl_->e == b.impl_->e &&
                       a.impl_->modulus == b.impl_->modulus;
            case Kind::matrix2: return *a.impl_->base == *b.impl_->base;
        }
        return false;
    }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

    static bool is_prime(std::int64_t n) {
        if (n < 2) return false;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

  private:
    static constexpr std::int64_t kMaxModulus = 1 << 20;

    struct Impl {
        Kind kind = Kind::residue;
        std::int64_t m = 0;                  // residue modulus
        std::int64_t p = 0;                  // field characteristic
        int e = 0;                           // field extension degree
        std::vector<std::int64_t> modulus;   // field modulus polynomial c0..ce
        std::shared_ptr<Ring> base;          // matrix2 base field
        std::int64_t card = 0;
    };

    explicit Ring(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

    static std::pair<std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
        // returns (g, x) with x*a == g (mod b)
        std::int64_t r0 = b, r1 = a % b, s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t r2 = r0 - q * r1, s2 = s0 - q * s1;
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
        }
        return {r0, s0};
    }

    std::vector<std::int64_t> decode_poly(std::int64_t a) const {
        std::vector<std::int64_t> digits(impl_->e);
        for (int i = 0; i < impl_->e; ++i) {
            digits[i] = a % impl_->p;
            a /= impl_->p;
        }
        return digits;
    }

    std::int64_t encode_poly(const std::vector<std::int64_t>& digits) const {
        std::int64_t out = 0, place = 1;
        for (int i = 0; i < impl_->e; ++i) {
            out += (i < static_cast<int>(digits.size()) ? digits[i] : 0) * place;
            place *= impl_->p;
        }
        return out;
    }

    std::array<std::int64_t, 4> decode_mat2(std::int64_t a) const {
        std::int64_t q = impl_->base->cardinality();
        std::array<std::int64_t, 4> out{};
        for (int i = 0; i < 4; ++i) {
            out[i] = a % q;
            a /= q;
        }
        return out;
    }

    std::int64_t encode_mat2(const std::array<std::int64_t, 4>& m) const {
        std::int64_t q = impl_->base->cardinality(), out = 0, place = 1;
        for (int i = 0; i < 4; ++i) {
            out += m[i] * place;
            place *= q;
        }
        return out;
    }

    // --- dense polynomial helpers over F_p (coefficients 0..p-1) ---

    static void poly_trim(std::vector<std::int64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }

    std::vector<std::int64_t> poly_mul_mod(const std::vector<std::int64_t>& a,
                                           const std::vector<std::int64_t>& b) const {
        std::int64_t p = impl_->p;
        std::vector<std::int64_t> prod(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        poly_reduce(prod);
        prod.resize(impl_->e, 0);
        return prod;
    }

    /// In-place reduction modulo the (monic) modulus polynomial.
    void poly_reduce(std::vector<std::int64_t>& v) const {
        std::int64_t p = impl_->p;
        int e = impl_->e;
        for (int d = static_cast<int>(v.size()) - 1; d >= e; --d) {
            std::int64_t c = v[d];
            if (c == 0) continue;
            v[d] = 0;
            for (int i = 0; i < e; ++i) {
                v[d - e + i] = (v[d - e + i] - c * impl_->modulus[i]) % p;
                if (v[d - e + i] < 0) v[d - e + i] += p;
            }
        }
    }

    std::vector<std::int64_t> poly_inverse(std::vector<std::int64_t> a) const {
        // extended Euclid in F_p[x] against the modulus
        std::int64_t p = impl_->p;
        std::vector<std::int64_t> r0 = impl_->modulus, r1 = a;
        poly_trim(r1);
        std::vector<std::int64_t> t0, t1 = {1};
        auto scalar_inv = [p](std::int64_t c) {
            auto [g, x] = ext_gcd(c, p);
            (void)g;
            std::int64_t inv = x % p;
            return inv < 0 ? inv + p : inv;
        };
        while (!r1.empty()) {
            // divide r0 by r1
            std::vector<std::int64_t> q(std::max<std::size_t>(r0.size(), 1), 0);
            std::vector<std::int64_t> rem = r0;
            std::int64_t lead_inv = scalar_inv(r1.back());
            while (rem.size() >= r1.size() && !rem.empty()) {
                std::int64_t c = (rem.back() * lead_inv) % p;
                std::size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (std::size_t i = 0; i < r1.size(); ++i) {
                    rem[shift + i] = (rem[shift + i] - c * r1[i]) % p;
                    if (rem[shift + i] < 0) rem[shift + i] += p;
                }
                poly_trim(rem);
                if (rem.empty()) break;
            }
            poly_trim(q);
            // t2 = t0 - q*t1
            std::vector<std::int64_t> qt(q.size() + t1.size(), 0);
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < t1.size(); ++j)
                    qt[i + j] = (qt[i + j] + q[i] * t1[j]) % p;
            std::vector<std::int64_t> t2(std::max(t0.size(), qt.size()), 0);
            for (std::size_t i = 0; i < t2.size(); ++i) {
                std::int64_t lhs = i < t0.size() ? t0[i] : 0;
                std::int64_t rhs = i < qt.size() ? qt[i] : 0;
                t2[i] = (lhs - rhs) % p;
                if (t2[i] < 0) t2[i] += p;
            }
            poly_trim(t2);
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        // r0 is the gcd (a nonzero constant for irreducible modulus)
        std::int64_t norm = scalar_inv(r0.empty() ? 1 : r0[0]);
        for (auto& c : t0) c = (c * norm) % p;
        t0.resize(impl_->e, 0);
        return t0;
    }

    /// Irreducibility of the modulus: by explicit root and quadratic-factor
    /// checks, exhaustive at the supported degrees.
    static bool irreducible(const Impl& impl) {
        std::int64_t p = impl.p;
        int e = impl.e;
        auto eval = [&](std::int64_t x) {
            std::int64_t acc = 0;
            for (int i = e; i >= 0; --i) acc = (acc * x + impl.modulus[i]) % p;
            return acc;
        };
        for (std::int64_t x = 0; x < p; ++x)
            if (eval(x) == 0) return false;  // linear factor
        if (e < 4) return true;              // degrees 2,3: no root suffices
        // degree 4: also rule out irreducible quadratic divisors
        for (std::int64_t b = 0; b < p; ++b) {
            for (std::int64_t c = 0; c < p; ++c) {
                // candidate q(x) = x^2 + b x + c, irreducible iff rootless
                bool has_root = false;
                for (std::int64_t x = 0; x < p && !has_root; ++x)
                    if ((x * x + b * x + c) % p == 0) has_root = true;
                if (has_root) continue;
                if (divides_quadratic(impl, b, c)) return false;
            }
        }
        return true;
    }

    static bool divides_quadratic(const Impl& impl, std::int64_t b, std::int64_t c) {
        // long division of the degree-4 modulus by x^2 + b x + c over F_p
        std::int64_t p = impl.p;
        std::vector<std::int64_t> rem(impl.modulus);
        for (int d = 4; d >= 2; --d) {
            std::int64_t k = rem[d] % p;
            if (k == 0) continue;
            rem[d] = 0;
            rem[d - 1] = ((rem[d - 1] - k * b) % p + p) % p;
            rem[d - 2] = ((rem[d - 2] - k * c) % p + p) % p;
        }
        return rem[0] == 0 && rem[1] == 0;
    }

    std::shared_ptr<const Impl> impl_;
};

}  // namespace qmc
