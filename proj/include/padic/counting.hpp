#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "padic/config.hpp"
#include "padic/exponents.hpp"
#include "padic/nondegeneracy.hpp"
#include "padic/polynomial.hpp"
#include "padic/residue.hpp"

namespace padic {

enum class CountMethod { bruteforce, lifting, closedform };

inline std::string method_name(CountMethod m) {
    switch (m) {
        case CountMethod::bruteforce: return "bruteforce";
        case CountMethod::lifting: return "lifting";
        case CountMethod::closedform: return "closedform";
    }
    return "?";
}

struct CountReport {
    CountMethod method = CountMethod::bruteforce;
    u32 nvars = 0;
    BigInt modulus;
    std::optional<PrimePower> primePower;  // present when the modulus is one
    BigInt rawCount;
    std::optional<PPowRational> normalized;  // rawCount * p^(-alpha n), prime-power case
    double elapsedSeconds = 0.0;

    bool same_value(const CountReport& o) const {
        return nvars == o.nvars && modulus == o.modulus && rawCount == o.rawCount;
    }
};

inline CountReport with_prime_power(CountReport rep, const PrimePower& pp) {
    rep.primePower = pp;
    rep.normalized = PPowRational(pp.p, rep.rawCount, static_cast<i64>(pp.alpha) * rep.nvars);
    return rep;
}

// Raw solution counts of the prefix systems over F_p; perPrefix[0] = p^n.
struct BaseCounts {
    u64 p = 0;
    u32 n = 0;
    std::vector<BigInt> perPrefix;

    u32 m() const { return static_cast<u32>(perPrefix.size()) - 1; }

    PPowRational normalized(u32 r) const { return PPowRational(p, perPrefix.at(r), n); }
};

// Per-level lifting diagnostics. A frontier element is a unit when some
// coordinate is a p-adic unit; on a non-degenerate system those extend to
// exactly p^(n-m) children.
struct LiftLevelStats {
    u32 level = 0;  // solutions mod p^level being extended
    u64 frontierSize = 0;
    u64 unitCount = 0;
    u64 unitChildrenMin = 0;
    u64 unitChildrenMax = 0;
};

using LiftStats = std::vector<LiftLevelStats>;

namespace detail {

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

struct ReducedTerm {
    u64 coeff;
    std::vector<u32> exponents;
};

// A system is separable when every monomial involves a single variable;
// power sums are the motivating case. Such systems evaluate through
// per-variable lookup tables and a prefix-sum walk.
inline bool is_separable(const PolySystem& s) {
    for (const auto& f : s.polys)
        for (const auto& t : f.terms()) {
            u32 active = 0;
            for (u32 e : t.exponents) active += e > 0;
            if (active > 1) return false;
        }
    return true;
}

inline constexpr u64 kMaxTableEntries = 1u << 24;

struct ReducedSystem {
    u32 n = 0;
    u32 m = 0;
    u64 M = 0;
    std::vector<u64> targets;
    bool tabled = false;
    // tabled: tab[(j*n + i)*M + v] = contribution of x_i = v to poly j
    std::vector<u64> septab;
    std::vector<std::vector<ReducedTerm>> generic;

    u64 eval(u32 j, const std::vector<u64>& x) const {
        if (tabled) {
            u64 acc = 0;
            for (u32 i = 0; i < n; ++i)
                acc = addmod(acc, septab[(static_cast<std::size_t>(j) * n + i) * M + x[i]], M);
            return acc;
        }
        u64 acc = 0;
        for (const auto& t : generic[j]) {
            u64 v = t.coeff;
            for (u32 i = 0; i < n; ++i) {
                if (t.exponents[i] == 0) continue;
                v = mulmod(v, powmod(x[i], t.exponents[i], M), M);
            }
            acc = addmod(acc, v, M);
        }
        return acc;
    }
};

inline ReducedSystem reduce_system(const PolySystem& s, u64 M,
                                   const std::vector<BigInt>& targets) {
    ReducedSystem rs;
    rs.n = s.nvars;
    rs.m = s.m();
    rs.M = M;
    rs.targets.resize(rs.m, 0);
    for (std::size_t j = 0; j < targets.size(); ++j) rs.targets[j] = mod_reduce(targets[j], M);
    rs.tabled = is_separable(s) &&
                static_cast<u64>(rs.m) * rs.n <= kMaxTableEntries / M;
    if (rs.tabled) {
        rs.septab.assign(static_cast<std::size_t>(rs.m) * rs.n * M, 0);
        for (u32 j = 0; j < rs.m; ++j)
            for (const auto& t : s.polys[j].terms()) {
                u64 c = mod_reduce(t.coeff, M);
                for (u32 i = 0; i < rs.n; ++i) {
                    if (t.exponents[i] == 0) continue;
                    u64* tab = rs.septab.data() + (static_cast<std::size_t>(j) * rs.n + i) * M;
                    for (u64 v = 0; v < M; ++v)
                        tab[v] = addmod(tab[v], mulmod(c, powmod(v, t.exponents[i], M), M), M);
                }
            }
    } else {
        rs.generic.resize(rs.m);
        for (u32 j = 0; j < rs.m; ++j)
            for (const auto& t : s.polys[j].terms())
                rs.generic[j].push_back({mod_reduce(t.coeff, M), t.exponents});
    }
    return rs;
}

// Walks x_(depth..n-1) with the running sums of each polynomial over the
// fixed prefix; counts points where every polynomial hits its target.
inline u64 tabled_walk(const ReducedSystem& rs, u32 depth, std::vector<u64>& partial) {
    const u64 M = rs.M;
    const u32 m = rs.m;
    u64 count = 0;
    if (depth == rs.n - 1) {
        for (u64 v = 0; v < M; ++v) {
            bool hit = true;
            for (u32 j = 0; j < m && hit; ++j) {
                const u64* tab =
                    rs.septab.data() + (static_cast<std::size_t>(j) * rs.n + depth) * M;
                hit = addmod(partial[j], tab[v], M) == rs.targets[j];
            }
            count += hit;
        }
        return count;
    }
    std::vector<u64> next(m);
    for (u64 v = 0; v < M; ++v) {
        for (u32 j = 0; j < m; ++j) {
            const u64* tab = rs.septab.data() + (static_cast<std::size_t>(j) * rs.n + depth) * M;
            next[j] = addmod(partial[j], tab[v], M);
        }
        std::swap(partial, next);
        count += tabled_walk(rs, depth + 1, partial);
        std::swap(partial, next);
    }
    return count;
}

inline u64 tabled_count_range(const ReducedSystem& rs, u64 first, u64 last) {
    if (rs.n == 1) {
        u64 count = 0;
        for (u64 v = first; v < last; ++v) {
            bool hit = true;
            for (u32 j = 0; j < rs.m && hit; ++j)
                hit = rs.septab[static_cast<std::size_t>(j) * rs.M + v] == rs.targets[j];
            count += hit;
        }
        return count;
    }
    u64 count = 0;
    std::vector<u64> partial(rs.m);
    for (u64 v = first; v < last; ++v) {
        for (u32 j = 0; j < rs.m; ++j)
            partial[j] = rs.septab[(static_cast<std::size_t>(j) * rs.n) * rs.M + v];
        count += tabled_walk(rs, 1, partial);
    }
    return count;
}

inline u64 generic_count_range(const ReducedSystem& rs, u64 first, u64 last) {
    u64 count = 0;
    std::vector<u64> x(rs.n, 0);
    x[0] = first;
    BigInt span = (BigInt(last) - first) * big_pow(BigInt(rs.M), rs.n - 1);
    u64 total = span.convert_to<u64>();
    for (u64 it = 0; it < total; ++it) {
        bool hit = true;
        for (u32 j = 0; j < rs.m && hit; ++j) hit = rs.eval(j, x) == rs.targets[j];
        count += hit;
        for (u32 i = rs.n; i-- > 0;) {
            if (++x[i] < rs.M) break;
            x[i] = 0;
        }
    }
    return count;
}

inline void enforce_modulus_range(const BigInt& modulus) {
    if (modulus >= (BigInt(1) << 62))
        throw CapExceeded("modulus exceeds the 64-bit evaluation range", modulus,
                          BigInt(1) << 62);
}

inline void enforce_candidate_budget(const BigInt& candidates, const RunConfig& cfg,
                                     const char* what) {
    if (candidates > cfg.maxCandidates)
        throw CapExceeded(std::string(what) + " budget exceeded", candidates,
                          BigInt(cfg.maxCandidates));
}

}  // namespace detail

// Exhaustive enumeration over (Z/M)^n, targets defaulting to zero. Exact for
// any modulus >= 2; refuses when M^n leaves the candidate budget.
inline CountReport brute_force_system_count(const PolySystem& s, const BigInt& modulus,
                                            const RunConfig& cfg = {},
                                            const std::vector<BigInt>& targets = {}) {
    if (modulus < 2) throw BadInput("modulus must be >= 2");
    if (!targets.empty() && targets.size() != s.m())
        throw BadInput("target vector length must match the system");
    detail::Stopwatch sw;
    BigInt candidates = big_pow(modulus, s.nvars);
    detail::enforce_candidate_budget(candidates, cfg, "brute force");
    detail::enforce_modulus_range(modulus);
    const u64 M = modulus.convert_to<u64>();

    detail::ReducedSystem rs = detail::reduce_system(s, M, targets);
    auto chunkCounts = run_chunked<u64>(M, cfg.resolved_workers(), [&](u64 b, u64 e, u64& out) {
        out = rs.tabled ? detail::tabled_count_range(rs, b, e)
                        : detail::generic_count_range(rs, b, e);
    });
    u64 raw = 0;
    for (u64 c : chunkCounts) raw += c;

    CountReport rep;
    rep.method = CountMethod::bruteforce;
    rep.nvars = s.nvars;
    rep.modulus = modulus;
    rep.rawCount = raw;
    rep.elapsedSeconds = sw.seconds();
    return rep;
}

// Counts root multisets: tuples x with prod (X - x_i) = prod (X - y_i)
// as polynomials over Z/M, by direct coefficient comparison.
inline CountReport brute_force_factorisation_count(const std::vector<BigInt>& roots,
                                                   const BigInt& modulus,
                                                   const RunConfig& cfg = {}) {
    if (roots.empty()) throw BadInput("factorisation count needs n >= 1 roots");
    if (modulus < 2) throw BadInput("modulus must be >= 2");
    const u32 n = static_cast<u32>(roots.size());
    detail::Stopwatch sw;
    BigInt candidates = big_pow(modulus, n);
    detail::enforce_candidate_budget(candidates, cfg, "brute force");
    detail::enforce_modulus_range(modulus);
    const u64 M = modulus.convert_to<u64>();

    std::vector<BigInt> targetBig = expand_linear_product(roots, modulus);
    std::vector<u64> target(n);
    for (u32 i = 0; i < n; ++i) target[i] = targetBig[i + 1].convert_to<u64>();

    // c[d] holds the coefficients of prod_(i<d) (X - x_i), leading first;
    // appending a root v maps c'[j] = c[j] + (M - v) c[j-1].
    struct Walker {
        const u64 M;
        const u32 n;
        const std::vector<u64>& target;
        std::vector<std::vector<u64>> c;

        Walker(u64 M_, u32 n_, const std::vector<u64>& t) : M(M_), n(n_), target(t) {
            c.resize(n + 1);
            for (u32 d = 0; d <= n; ++d) c[d].assign(d + 1, 0);
            c[0][0] = 1;
        }

        void append(u32 depth, u64 v) {
            u64 neg = v == 0 ? 0 : M - v;
            auto& src = c[depth];
            auto& dst = c[depth + 1];
            dst[0] = 1;
            for (u32 j = 1; j <= depth; ++j)
                dst[j] = addmod(src[j], mulmod(neg, src[j - 1], M), M);
            dst[depth + 1] = mulmod(neg, src[depth], M);
        }

        u64 walk(u32 depth) {
            if (depth == n) {
                for (u32 j = 0; j < n; ++j)
                    if (c[n][j + 1] != target[j]) return 0;
                return 1;
            }
            u64 count = 0;
            for (u64 v = 0; v < M; ++v) {
                append(depth, v);
                count += walk(depth + 1);
            }
            return count;
        }
    };

    auto chunkCounts = run_chunked<u64>(M, cfg.resolved_workers(), [&](u64 b, u64 e, u64& out) {
        Walker w(M, n, target);
        out = 0;
        for (u64 v = b; v < e; ++v) {
            w.append(0, v);
            out += w.walk(1);
        }
    });
    u64 raw = 0;
    for (u64 c : chunkCounts) raw += c;

    CountReport rep;
    rep.method = CountMethod::bruteforce;
    rep.nvars = n;
    rep.modulus = modulus;
    rep.rawCount = raw;
    rep.elapsedSeconds = sw.seconds();
    return rep;
}

// Raw counts of every prefix system over F_p in one pass.
inline BaseCounts base_counts(const PolySystem& s, u64 p, const RunConfig& cfg = {}) {
    if (!is_prime_u64(p)) throw BadInput("base_counts needs a prime p");
    BigInt candidates = big_pow(BigInt(p), s.nvars);
    detail::enforce_candidate_budget(candidates, cfg, "base count");
    const u64 total = candidates.convert_to<u64>();
    const u32 m = s.m();

    detail::ReducedSystem rs = detail::reduce_system(s, p, {});
    auto chunkCounts = run_chunked<std::vector<u64>>(
        total, cfg.resolved_workers(), [&](u64 b, u64 e, std::vector<u64>& out) {
            out.assign(m + 1, 0);
            std::vector<u64> x(rs.n, 0);
            u64 t = b;
            for (u32 i = rs.n; i-- > 0;) {
                x[i] = t % p;
                t /= p;
            }
            for (u64 it = b; it < e; ++it) {
                u32 run = 0;
                while (run < m && rs.eval(run, x) == 0) ++run;
                for (u32 r = 1; r <= run; ++r) ++out[r];
                for (u32 i = rs.n; i-- > 0;) {
                    if (++x[i] < p) break;
                    x[i] = 0;
                }
            }
        });

    BaseCounts bc;
    bc.p = p;
    bc.n = s.nvars;
    bc.perPrefix.assign(m + 1, 0);
    bc.perPrefix[0] = candidates;
    for (const auto& chunk : chunkCounts)
        for (u32 r = 1; r <= m; ++r) bc.perPrefix[r] += chunk[r];
    return bc;
}

// Level-by-level refinement: solutions mod p^(j+1) are found among
// u + p^j v over solutions u mod p^j, each offset block checked exhaustively.
// Exact at every level; no Taylor shortcut, so it stays independent of the
// closed form.
inline CountReport lifting_count(const PolySystem& s, const PrimePower& pp,
                                 const RunConfig& cfg = {},
                                 const std::vector<BigInt>& targets = {},
                                 LiftStats* stats = nullptr) {
    if (!targets.empty() && targets.size() != s.m())
        throw BadInput("target vector length must match the system");
    detail::Stopwatch sw;
    detail::enforce_modulus_range(pp.modulus());
    const u32 n = s.nvars;
    const u64 p = pp.p;
    const u64 pn = u64_pow_checked(p, n);

    BigInt level1 = big_pow(BigInt(p), n);
    detail::enforce_candidate_budget(level1, cfg, "lifting level 1");

    detail::ReducedSystem rs1 = detail::reduce_system(s, p, targets);
    std::vector<u64> frontier;  // flat, stride n, coordinates mod p^level
    {
        std::vector<u64> x(n, 0);
        for (u64 it = 0; it < pn; ++it) {
            bool hit = true;
            for (u32 j = 0; j < s.m() && hit; ++j) hit = rs1.eval(j, x) == rs1.targets[j];
            if (hit) frontier.insert(frontier.end(), x.begin(), x.end());
            for (u32 i = n; i-- > 0;) {
                if (++x[i] < p) break;
                x[i] = 0;
            }
        }
    }

    u64 Mj = p;
    for (u32 level = 1; level < pp.alpha; ++level) {
        const u64 frontierSize = frontier.size() / n;
        BigInt work = BigInt(frontierSize) * pn;
        if (work > cfg.maxFrontier)
            throw CapExceeded(
                "lifting frontier budget exceeded at level " + std::to_string(level + 1), work,
                BigInt(cfg.maxFrontier));
        const u64 Mnext = Mj * p;
        detail::ReducedSystem rsNext = detail::reduce_system(s, Mnext, targets);

        LiftLevelStats ls;
        ls.level = level;
        ls.frontierSize = frontierSize;
        ls.unitChildrenMin = UINT64_MAX;

        auto chunkResults = run_chunked<std::pair<std::vector<u64>, LiftLevelStats>>(
            frontierSize, cfg.resolved_workers(),
            [&](u64 b, u64 e, std::pair<std::vector<u64>, LiftLevelStats>& out) {
                auto& [next, st] = out;
                st.unitChildrenMin = UINT64_MAX;
                std::vector<u64> x(n);
                std::vector<u64> v(n, 0);
                for (u64 fi = b; fi < e; ++fi) {
                    const u64* u = frontier.data() + fi * n;
                    bool unit = false;
                    for (u32 i = 0; i < n; ++i) unit = unit || (u[i] % p != 0);
                    u64 children = 0;
                    std::fill(v.begin(), v.end(), 0);
                    for (u64 off = 0; off < pn; ++off) {
                        for (u32 i = 0; i < n; ++i) x[i] = u[i] + Mj * v[i];
                        bool hit = true;
                        for (u32 j = 0; j < s.m() && hit; ++j)
                            hit = rsNext.eval(j, x) == rsNext.targets[j];
                        if (hit) {
                            next.insert(next.end(), x.begin(), x.end());
                            ++children;
                        }
                        for (u32 i = n; i-- > 0;) {
                            if (++v[i] < p) break;
                            v[i] = 0;
                        }
                    }
                    if (unit) {
                        ++st.unitCount;
                        st.unitChildrenMin = std::min(st.unitChildrenMin, children);
                        st.unitChildrenMax = std::max(st.unitChildrenMax, children);
                    }
                }
            });

        std::vector<u64> merged;
        for (auto& [chunk, st] : chunkResults) {
            merged.insert(merged.end(), chunk.begin(), chunk.end());
            ls.unitCount += st.unitCount;
            if (st.unitCount > 0) {
                ls.unitChildrenMin = std::min(ls.unitChildrenMin, st.unitChildrenMin);
                ls.unitChildrenMax = std::max(ls.unitChildrenMax, st.unitChildrenMax);
            }
        }
        if (ls.unitCount == 0) ls.unitChildrenMin = 0;
        if (stats) stats->push_back(ls);
        frontier = std::move(merged);
        Mj = Mnext;
    }

    CountReport rep;
    rep.method = CountMethod::lifting;
    rep.nvars = n;
    rep.modulus = pp.modulus();
    rep.primePower = pp;
    rep.rawCount = frontier.size() / n;
    rep.normalized = PPowRational(pp.p, rep.rawCount, static_cast<i64>(pp.alpha) * n);
    rep.elapsedSeconds = sw.seconds();
    return rep;
}

// Exact rational evaluation of the annulus decomposition: with base-field
// prefix counts N_r and cut levels alpha_r for the degree profile,
//   normalized = p^(-n alpha_1)
//              + sum_r (N_r - p^(-n)) p^(-r(alpha-1)) sum_l p^(-l(n-sigma_r)),
// the inner sum over alpha_(r+1) <= l < alpha_r. Exact under base-field
// non-degeneracy, hence the certificate gate.
inline CountReport closed_form_count(const DegreeProfile& dp, const BaseCounts& base, u32 alpha,
                                     const NonDegCertificate& cert) {
    if (!cert.usable())
        throw NonDegeneracyUnavailable(
            "closed form needs a usable non-degeneracy certificate for " + cert.systemId);
    if (base.p != cert.p) throw BadInput("certificate and base counts disagree on p");
    if (base.n != dp.n) throw BadInput("base counts and degree profile disagree on n");
    if (base.m() != dp.m()) throw BadInput("base counts and degree profile disagree on m");
    detail::Stopwatch sw;

    ExponentProfile ep = build_exponent_profile(dp, alpha);
    const u64 p = base.p;
    const i64 n = dp.n;

    PPowRational total = PPowRational::pow_of_p(p, -n * ep.alphaCuts[1]);
    PPowRational pInvN = PPowRational::pow_of_p(p, -n);
    for (u32 r = 1; r <= dp.m(); ++r) {
        i64 lo = ep.alphaCuts[r + 1];
        i64 hi = ep.alphaCuts[r] - 1;
        if (lo > hi) continue;
        PPowRational diff = base.normalized(r) - pInvN;
        if (diff.is_zero()) continue;
        PPowRational inner = PPowRational::zero(p);
        i64 drop = n - static_cast<i64>(dp.sigma(r));
        for (i64 l = lo; l <= hi; ++l) inner = inner + PPowRational::pow_of_p(p, -l * drop);
        total = total + diff.scale_pow(-static_cast<i64>(r) * (static_cast<i64>(alpha) - 1)) * inner;
    }

    PPowRational scaled = total.scale_pow(static_cast<i64>(alpha) * n);
    if (!scaled.is_integer() || scaled.num() < 0)
        throw BadInput(
            "closed form produced a non-integral raw count; base counts are "
            "inconsistent with a non-degenerate system");

    CountReport rep;
    rep.method = CountMethod::closedform;
    rep.nvars = dp.n;
    rep.modulus = big_pow(BigInt(p), alpha);
    rep.primePower = PrimePower(p, alpha);
    rep.rawCount = scaled.num();
    rep.normalized = total;
    rep.elapsedSeconds = sw.seconds();
    return rep;
}

// Monomial factorisation counts: tuples whose linear factors multiply to
// X^n mod p^alpha. For p > n this equals the power-sum system count; for
// p <= n only the elementary-symmetric formulation is valid, which rules
// out the closed form there.
inline CountReport count_monomial_factorisations(u32 n, const PrimePower& pp, CountMethod method,
                                                 const RunConfig& cfg = {}) {
    if (n < 1) throw BadInput("need n >= 1");
    switch (method) {
        case CountMethod::bruteforce: {
            // Name the budget in p^k form up front; the raw decimal alone is
            // unreadable once alpha n gets large.
            BigInt need = big_pow(BigInt(pp.p), static_cast<u64>(pp.alpha) * n);
            if (need > cfg.maxCandidates)
                throw CapExceeded("brute force needs " + std::to_string(pp.p) + "^" +
                                      std::to_string(static_cast<u64>(pp.alpha) * n) +
                                      " candidate evaluations",
                                  need, BigInt(cfg.maxCandidates));
            return with_prime_power(
                brute_force_factorisation_count(std::vector<BigInt>(n, 0), pp.modulus(), cfg),
                pp);
        }
        case CountMethod::lifting: {
            PolySystem s = pp.p > n ? PolySystem::power_sums(n) : PolySystem::elementary_system(n);
            return lifting_count(s, pp, cfg);
        }
        case CountMethod::closedform: {
            if (pp.p <= n)
                throw NonDegeneracyUnavailable(
                    "closed form needs p > n for the power-sum reduction (p = " +
                    std::to_string(pp.p) + ", n = " + std::to_string(n) + ")");
            PolySystem s = PolySystem::power_sums(n);
            BaseCounts bc = base_counts(s, pp.p, cfg);
            NonDegCertificate cert = powersum_certificate(n, pp.p, 2, cfg);
            return closed_form_count(DegreeProfile::power_sums(n), bc, pp.alpha, cert);
        }
    }
    throw BadInput("unknown counting method");
}

}  // namespace padic
