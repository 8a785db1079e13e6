#pragma once

#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "padic/common.hpp"

namespace padic {

struct Monomial {
    std::vector<u32> exponents;  // one entry per variable
    BigInt coeff;

    bool operator==(const Monomial&) const = default;

    u64 total_degree() const {
        return std::accumulate(exponents.begin(), exponents.end(), u64{0});
    }
};

// Sparse multivariate polynomial with integer coefficients, kept in a
// canonical form: terms sorted lexicographically by exponent vector, no
// repeated exponent vectors, no zero coefficients.
class MultiPoly {
  public:
    explicit MultiPoly(u32 nvars) : nvars_(nvars) {}

    static MultiPoly from_terms(u32 nvars, std::vector<Monomial> terms) {
        MultiPoly f(nvars);
        std::map<std::vector<u32>, BigInt> acc;
        for (auto& t : terms) {
            if (t.exponents.size() != nvars)
                throw BadInput("monomial arity does not match the polynomial");
            acc[t.exponents] += t.coeff;
        }
        for (auto& [e, c] : acc)
            if (c != 0) f.terms_.push_back({e, c});
        return f;
    }

    static MultiPoly zero(u32 nvars) { return MultiPoly(nvars); }

    static MultiPoly constant(u32 nvars, BigInt c) {
        return from_terms(nvars, {{std::vector<u32>(nvars, 0), std::move(c)}});
    }

    static MultiPoly variable(u32 nvars, u32 j, u32 power = 1) {
        std::vector<u32> e(nvars, 0);
        e.at(j) = power;
        return from_terms(nvars, {{std::move(e), 1}});
    }

    u32 nvars() const { return nvars_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    u64 degree() const {
        u64 d = 0;
        for (const auto& t : terms_) d = std::max(d, t.total_degree());
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        u64 d = terms_.front().total_degree();
        for (const auto& t : terms_)
            if (t.total_degree() != d) return false;
        return true;
    }

    MultiPoly operator+(const MultiPoly& o) const {
        require_same_arity(o);
        std::vector<Monomial> all = terms_;
        all.insert(all.end(), o.terms_.begin(), o.terms_.end());
        return from_terms(nvars_, std::move(all));
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }

    MultiPoly operator*(const MultiPoly& o) const {
        require_same_arity(o);
        std::vector<Monomial> prod;
        prod.reserve(terms_.size() * o.terms_.size());
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) {
                Monomial m;
                m.exponents.resize(nvars_);
                for (u32 i = 0; i < nvars_; ++i) m.exponents[i] = a.exponents[i] + b.exponents[i];
                m.coeff = a.coeff * b.coeff;
                prod.push_back(std::move(m));
            }
        return from_terms(nvars_, std::move(prod));
    }

    MultiPoly scaled(const BigInt& c) const {
        if (c == 0) return zero(nvars_);
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    MultiPoly derivative(u32 var) const {
        std::vector<Monomial> d;
        for (const auto& t : terms_) {
            if (t.exponents.at(var) == 0) continue;
            Monomial m = t;
            m.coeff *= m.exponents[var];
            m.exponents[var] -= 1;
            d.push_back(std::move(m));
        }
        return from_terms(nvars_, std::move(d));
    }

    BigInt evaluate(std::span<const BigInt> point) const {
        if (point.size() != nvars_) throw BadInput("evaluation point has the wrong arity");
        BigInt acc = 0;
        for (const auto& t : terms_) {
            BigInt v = t.coeff;
            for (u32 i = 0; i < nvars_; ++i)
                for (u32 e = 0; e < t.exponents[i]; ++e) v *= point[i];
            acc += v;
        }
        return acc;
    }

    u64 evaluate_mod(std::span<const u64> point, u64 m) const {
        if (point.size() != nvars_) throw BadInput("evaluation point has the wrong arity");
        u64 acc = 0;
        for (const auto& t : terms_) {
            u64 v = mod_reduce(t.coeff, m);
            for (u32 i = 0; i < nvars_; ++i) {
                if (t.exponents[i] == 0) continue;
                v = mulmod(v, powmod(point[i], t.exponents[i], m), m);
            }
            acc = addmod(acc, v, m);
        }
        return acc;
    }

    bool operator==(const MultiPoly&) const = default;

  private:
    void require_same_arity(const MultiPoly& o) const {
        if (nvars_ != o.nvars_) throw BadInput("mixed arities in polynomial arithmetic");
    }

    u32 nvars_;
    std::vector<Monomial> terms_;
};

inline MultiPoly power_sum(u32 n, u32 k) {
    if (n < 1 || k < 1) throw BadInput("power_sum needs n >= 1, k >= 1");
    std::vector<Monomial> terms;
    for (u32 i = 0; i < n; ++i) {
        std::vector<u32> e(n, 0);
        e[i] = k;
        terms.push_back({std::move(e), 1});
    }
    return MultiPoly::from_terms(n, std::move(terms));
}

inline MultiPoly elementary_symmetric(u32 n, u32 k) {
    if (k > n) throw BadInput("elementary_symmetric needs k <= n");
    if (k == 0) return MultiPoly::constant(n, 1);
    std::vector<Monomial> terms;
    std::vector<u32> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<u32> e(n, 0);
        for (u32 i : idx) e[i] = 1;
        terms.push_back({std::move(e), 1});
        // next k-combination of {0..n-1}
        i64 pos = static_cast<i64>(k) - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (u32 j = static_cast<u32>(pos) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return MultiPoly::from_terms(n, std::move(terms));
}

// Homogeneous system f_1, ..., f_m with nondecreasing degrees.
struct PolySystem {
    u32 nvars = 0;
    std::vector<MultiPoly> polys;
    std::vector<u32> degrees;

    static PolySystem make(u32 nvars, std::vector<MultiPoly> polys) {
        if (nvars < 1) throw BadInput("system needs at least one variable");
        if (polys.empty()) throw BadInput("system needs at least one polynomial");
        PolySystem s;
        s.nvars = nvars;
        u64 prev = 0;
        for (const auto& f : polys) {
            if (f.nvars() != nvars) throw BadInput("system polynomials disagree on arity");
            if (f.is_zero() || !f.is_homogeneous())
                throw BadInput("system polynomials must be nonzero and homogeneous");
            u64 d = f.degree();
            if (d < 1 || d < prev)
                throw BadInput("system degrees must be >= 1 and nondecreasing");
            prev = d;
            s.degrees.push_back(static_cast<u32>(d));
        }
        s.polys = std::move(polys);
        return s;
    }

    // P_1, ..., P_m in n variables (m defaults to n).
    static PolySystem power_sums(u32 n, u32 m = 0) {
        if (m == 0) m = n;
        std::vector<MultiPoly> ps;
        for (u32 k = 1; k <= m; ++k) ps.push_back(power_sum(n, k));
        return make(n, std::move(ps));
    }

    // e_1, ..., e_n in n variables; same zero set as coefficient comparison
    // against X^n, valid at every prime.
    static PolySystem elementary_system(u32 n) {
        std::vector<MultiPoly> es;
        for (u32 k = 1; k <= n; ++k) es.push_back(elementary_symmetric(n, k));
        return make(n, std::move(es));
    }

    u32 m() const { return static_cast<u32>(polys.size()); }

    PolySystem prefix(u32 r) const {
        if (r < 1 || r > m()) throw BadInput("prefix length out of range");
        return make(nvars, std::vector<MultiPoly>(polys.begin(), polys.begin() + r));
    }
};

// Coefficients of prod_j (X - y_j) mod m, leading coefficient first
// (so index i holds the coefficient of X^(n-i); index 0 is always 1).
inline std::vector<BigInt> expand_linear_product(std::span<const BigInt> roots, const BigInt& m) {
    if (m < 2) throw BadInput("modulus must be >= 2");
    std::vector<BigInt> c{1};
    for (const BigInt& y : roots) {
        BigInt yr = ((-y) % m + m) % m;
        c.push_back(0);
        for (std::size_t i = c.size() - 1; i >= 1; --i) c[i] = (c[i] + c[i - 1] * yr) % m;
    }
    return c;
}

inline std::vector<BigInt> powersums_from_roots(std::span<const BigInt> roots, const BigInt& m,
                                                u32 upTo = 0) {
    if (m < 2) throw BadInput("modulus must be >= 2");
    if (upTo == 0) upTo = static_cast<u32>(roots.size());
    std::vector<BigInt> reduced(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) reduced[i] = (roots[i] % m + m) % m;
    std::vector<BigInt> pk(upTo, 0);
    std::vector<BigInt> pw(roots.size(), 1);
    for (u32 k = 0; k < upTo; ++k) {
        for (std::size_t i = 0; i < roots.size(); ++i) {
            pw[i] = pw[i] * reduced[i] % m;
            pk[k] += pw[i];
        }
        pk[k] %= m;
    }
    return pk;
}

// Rows are gradients of the system polynomials, columns the variables.
inline std::vector<std::vector<MultiPoly>> jacobian(const PolySystem& s) {
    std::vector<std::vector<MultiPoly>> rows;
    rows.reserve(s.m());
    for (const auto& f : s.polys) {
        std::vector<MultiPoly> row;
        row.reserve(s.nvars);
        for (u32 j = 0; j < s.nvars; ++j) row.push_back(f.derivative(j));
        rows.push_back(std::move(row));
    }
    return rows;
}

// (sum_i a_i) e_n - sum_{k=1}^n (-1)^(k-1) e_{n-k} P_{a,k}, where
// P_{a,k} = sum_i a_i X_i^k. Identically zero for every weight vector.
inline MultiPoly weighted_newton_girard_residual(u32 n, std::span<const BigInt> weights) {
    if (weights.size() != n) throw BadInput("weight vector must have length n");
    BigInt total = 0;
    for (const BigInt& a : weights) total += a;
    MultiPoly acc = elementary_symmetric(n, n).scaled(total);
    for (u32 k = 1; k <= n; ++k) {
        std::vector<Monomial> terms;
        for (u32 i = 0; i < n; ++i) {
            if (weights[i] == 0) continue;
            std::vector<u32> e(n, 0);
            e[i] = k;
            terms.push_back({std::move(e), weights[i]});
        }
        MultiPoly pak = MultiPoly::from_terms(n, std::move(terms));
        MultiPoly piece = elementary_symmetric(n, n - k) * pak;
        acc = (k % 2 == 1) ? acc - piece : acc + piece;
    }
    return acc;
}

}  // namespace padic
