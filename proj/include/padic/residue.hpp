#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "padic/common.hpp"

namespace padic {

struct PrimePower {
    u64 p;
    u32 alpha;

    PrimePower(u64 p_, u32 alpha_) : p(p_), alpha(alpha_) {
        if (!is_prime_u64(p)) throw BadInput("p = " + std::to_string(p) + " is not prime");
        if (alpha < 1) throw BadInput("alpha must be >= 1");
    }

    BigInt modulus() const { return big_pow(BigInt(p), alpha); }

    // Enumeration engines evaluate residues in 64-bit arithmetic and need
    // headroom for one addition, hence 2^62.
    u64 modulus_u64() const {
        BigInt m = modulus();
        if (m >= (BigInt(1) << 62))
            throw CapExceeded("modulus exceeds the 64-bit evaluation range", m,
                              BigInt(1) << 62);
        return m.convert_to<u64>();
    }

    bool operator==(const PrimePower&) const = default;
};

inline int legendre_symbol(const BigInt& a, u64 p) {
    if (p == 2 || !is_prime_u64(p)) throw BadInput("legendre_symbol needs an odd prime");
    u64 r = mod_reduce(a, p);
    if (r == 0) return 0;
    u64 e = powmod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

// Exact value num * p^(-denomExp). Canonical form: denomExp == 0, or the
// numerator is a nonzero integer coprime to p. Integer values keep their
// p-part in the numerator (denomExp never goes negative).
class PPowRational {
  public:
    PPowRational(u64 p, BigInt num, i64 denomExp) : p_(p), num_(std::move(num)), k_(denomExp) {
        if (!is_prime_u64(p_)) throw BadInput("PPowRational: p must be prime");
        if (k_ < 0) throw BadInput("PPowRational: denomExp must be >= 0");
        canonicalize();
    }

    static PPowRational from_integer(u64 p, BigInt v) { return PPowRational(p, std::move(v), 0); }
    static PPowRational zero(u64 p) { return PPowRational(p, 0, 0); }
    static PPowRational pow_of_p(u64 p, i64 e) {
        return e >= 0 ? PPowRational(p, big_pow(BigInt(p), static_cast<u64>(e)), 0)
                      : PPowRational(p, 1, -e);
    }

    u64 p() const { return p_; }
    const BigInt& num() const { return num_; }
    i64 denom_exp() const { return k_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return k_ == 0; }

    PPowRational operator+(const PPowRational& o) const {
        require_same_p(o);
        i64 k = std::max(k_, o.k_);
        BigInt n = num_ * big_pow(BigInt(p_), static_cast<u64>(k - k_)) +
                   o.num_ * big_pow(BigInt(p_), static_cast<u64>(k - o.k_));
        return PPowRational(p_, std::move(n), k);
    }

    PPowRational operator-() const { return PPowRational(p_, -num_, k_); }
    PPowRational operator-(const PPowRational& o) const { return *this + (-o); }

    PPowRational operator*(const PPowRational& o) const {
        require_same_p(o);
        return PPowRational(p_, num_ * o.num_, k_ + o.k_);
    }

    // Multiplies by p^j (j of either sign).
    PPowRational scale_pow(i64 j) const {
        if (j >= 0) {
            i64 fromDenom = std::min(j, k_);
            BigInt n = num_ * big_pow(BigInt(p_), static_cast<u64>(j - fromDenom));
            return PPowRational(p_, std::move(n), k_ - fromDenom);
        }
        return PPowRational(p_, num_, k_ - j);
    }

    // Value times p^e, required to be an integer.
    BigInt times_pow_integral(i64 e) const {
        PPowRational s = scale_pow(e);
        if (!s.is_integer())
            throw BadInput("value * p^" + std::to_string(e) + " is not an integer");
        return s.num_;
    }

    BigRational to_rational() const {
        return BigRational(num_, big_pow(BigInt(p_), static_cast<u64>(k_)));
    }

    double approx() const { return to_rational().convert_to<double>(); }

    bool operator==(const PPowRational& o) const {
        require_same_p(o);
        return num_ == o.num_ && k_ == o.k_;
    }

    std::strong_ordering operator<=>(const PPowRational& o) const {
        require_same_p(o);
        PPowRational d = *this - o;
        if (d.num_ < 0) return std::strong_ordering::less;
        if (d.num_ > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        std::string s = num_.str();
        if (k_ > 0) s += "/" + std::to_string(p_) + "^" + std::to_string(k_);
        return s;
    }

  private:
    void canonicalize() {
        if (num_ == 0) {
            k_ = 0;
            return;
        }
        while (k_ > 0 && num_ % p_ == 0) {
            num_ /= p_;
            --k_;
        }
    }

    void require_same_p(const PPowRational& o) const {
        if (p_ != o.p_)
            throw BadInput("mixed primes in PPowRational arithmetic: " +
                           std::to_string(p_) + " vs " + std::to_string(o.p_));
    }

    u64 p_;
    BigInt num_;
    i64 k_;
};

struct FieldElt {
    u64 p;
    u32 k;
    std::vector<u64> coeffs;  // length k, ascending degree

    bool operator==(const FieldElt&) const = default;
};

namespace detail {

// Dense univariate polynomials over F_p, coefficients ascending. Used only
// for irreducible search and extension-field reduction.
inline void poly_trim(std::vector<u64>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<u64> poly_rem(std::vector<u64> f, const std::vector<u64>& g, u64 p) {
    u64 lead = g.back();
    u64 leadInv = powmod(lead, p - 2, p);
    while (f.size() >= g.size()) {
        u64 q = mulmod(f.back(), leadInv, p);
        std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = submod(f[shift + i], mulmod(q, g[i], p), p);
        poly_trim(f);
        if (f.empty()) break;
    }
    return f;
}

inline u64 poly_eval(const std::vector<u64>& f, u64 x, u64 p) {
    u64 acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = addmod(mulmod(acc, x, p), *it, p);
    return acc;
}

}  // namespace detail

// Lexicographically smallest monic irreducible of degree k over F_p, the
// lower-degree coefficients compared first. Returned ascending, length k+1.
inline std::vector<u64> canonical_irreducible(u64 p, u32 k, u64 cap = 1'000'000) {
    if (!is_prime_u64(p)) throw BadInput("canonical_irreducible: p must be prime");
    if (k < 1) throw BadInput("canonical_irreducible: k must be >= 1");
    BigInt size = big_pow(BigInt(p), k);
    if (size > cap) throw CapExceeded("field size p^k over the search cap", size, BigInt(cap));
    if (k == 1) return {0, 1};  // X

    u64 total = size.convert_to<u64>();
    for (u64 ord = 0; ord < total; ++ord) {
        // ord encodes (c_0, ..., c_{k-1}) with c_0 most significant, so
        // ascending ord is ascending low-degree-first lex order.
        std::vector<u64> f(k + 1, 0);
        f[k] = 1;
        u64 t = ord;
        for (u32 i = 0; i < k; ++i) {
            f[k - 1 - i] = t % p;  // c_{k-1} varies fastest
            t /= p;
        }
        bool hasRoot = false;
        for (u64 x = 0; x < p && !hasRoot; ++x) hasRoot = detail::poly_eval(f, x, p) == 0;
        if (hasRoot) continue;
        bool reducible = false;
        // No linear factor at this point; trial-divide by higher degrees.
        for (u32 d = 2; d <= k / 2 && !reducible; ++d) {
            u64 count = u64_pow_checked(p, d);
            for (u64 g = 0; g < count && !reducible; ++g) {
                std::vector<u64> div(d + 1, 0);
                div[d] = 1;
                u64 s = g;
                for (u32 i = 0; i < d; ++i) {
                    div[i] = s % p;
                    s /= p;
                }
                reducible = detail::poly_rem(f, div, p).empty();
            }
        }
        if (!reducible) return f;
    }
    throw BadInput("no irreducible found (unreachable for k >= 1)");
}

// Arithmetic context for F_{p^k} with the canonical modulus. Elements are
// plain FieldElt values; all operations validate that they belong here.
class GaloisField {
  public:
    GaloisField(u64 p, u32 k, u64 cap = 1'000'000)
        : p_(p), k_(k), irred_(canonical_irreducible(p, k, cap)) {
        size_ = u64_pow_checked(p_, k_);
    }

    u64 p() const { return p_; }
    u32 k() const { return k_; }
    u64 size() const { return size_; }
    const std::vector<u64>& modulus_poly() const { return irred_; }

    FieldElt zero() const { return {p_, k_, std::vector<u64>(k_, 0)}; }
    FieldElt one() const { return from_residue(1); }

    FieldElt from_residue(u64 v) const {
        FieldElt e = zero();
        e.coeffs[0] = v % p_;
        return e;
    }

    FieldElt from_index(u64 idx) const {
        FieldElt e = zero();
        for (u32 i = 0; i < k_; ++i) {
            e.coeffs[i] = idx % p_;
            idx /= p_;
        }
        return e;
    }

    u64 to_index(const FieldElt& a) const {
        check(a);
        u64 idx = 0;
        for (u32 i = k_; i-- > 0;) idx = idx * p_ + a.coeffs[i];
        return idx;
    }

    bool is_zero(const FieldElt& a) const {
        check(a);
        return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](u64 c) { return c == 0; });
    }

    FieldElt add(const FieldElt& a, const FieldElt& b) const {
        check(a);
        check(b);
        FieldElt r = zero();
        for (u32 i = 0; i < k_; ++i) r.coeffs[i] = addmod(a.coeffs[i], b.coeffs[i], p_);
        return r;
    }

    FieldElt sub(const FieldElt& a, const FieldElt& b) const {
        check(a);
        check(b);
        FieldElt r = zero();
        for (u32 i = 0; i < k_; ++i) r.coeffs[i] = submod(a.coeffs[i], b.coeffs[i], p_);
        return r;
    }

    FieldElt neg(const FieldElt& a) const { return sub(zero(), a); }

    FieldElt scalar_mul(u64 c, const FieldElt& a) const {
        check(a);
        FieldElt r = zero();
        for (u32 i = 0; i < k_; ++i) r.coeffs[i] = mulmod(c % p_, a.coeffs[i], p_);
        return r;
    }

    FieldElt mul(const FieldElt& a, const FieldElt& b) const {
        check(a);
        check(b);
        std::vector<u64> prod(2 * k_ - 1, 0);
        for (u32 i = 0; i < k_; ++i) {
            if (a.coeffs[i] == 0) continue;
            for (u32 j = 0; j < k_; ++j)
                prod[i + j] = addmod(prod[i + j], mulmod(a.coeffs[i], b.coeffs[j], p_), p_);
        }
        // Monic modulus: fold X^t = -irred[<k] * X^(t-k) downward.
        for (u32 t = 2 * k_ - 2; t >= k_ && t < prod.size(); --t) {
            u64 c = prod[t];
            if (c == 0) continue;
            prod[t] = 0;
            for (u32 j = 0; j < k_; ++j)
                prod[t - k_ + j] = submod(prod[t - k_ + j], mulmod(c, irred_[j], p_), p_);
        }
        FieldElt r = zero();
        for (u32 i = 0; i < k_; ++i) r.coeffs[i] = prod[i];
        return r;
    }

    FieldElt pow(FieldElt a, u64 e) const {
        FieldElt r = one();
        while (e != 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    FieldElt inv(const FieldElt& a) const {
        if (is_zero(a)) throw BadInput("inverse of zero field element");
        // Multiplicative group has order size-1.
        return pow(a, size_ - 2);
    }

  private:
    void check(const FieldElt& a) const {
        if (a.p != p_ || a.k != k_ || a.coeffs.size() != k_)
            throw BadInput("field element does not belong to F_{" + std::to_string(p_) +
                           "^" + std::to_string(k_) + "}");
    }

    u64 p_;
    u32 k_;
    std::vector<u64> irred_;
    u64 size_;
};

}  // namespace padic
