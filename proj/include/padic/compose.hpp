#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "padic/counting.hpp"
#include "padic/exponents.hpp"

namespace padic {

struct FactoredModulus {
    BigInt N;
    std::vector<std::pair<u64, u32>> factors;  // (p, ord_p N), primes increasing

    u32 omega() const { return static_cast<u32>(factors.size()); }
};

// Trial division to 10^6, then a deterministic primality test on the
// cofactor. Desk-scale tool: N with a large composite cofactor is rejected.
inline FactoredModulus factor_modulus(const BigInt& N) {
    if (N < 2) throw BadInput("modulus must be >= 2");
    FactoredModulus fm;
    fm.N = N;
    BigInt rest = N;
    auto take = [&](u64 p) {
        u32 a = 0;
        while (rest % p == 0) {
            rest /= p;
            ++a;
        }
        if (a > 0) fm.factors.emplace_back(p, a);
    };
    take(2);
    for (u64 p = 3; p <= 1'000'000 && rest > 1; p += 2)
        if (rest % p == 0) take(p);
    if (rest > 1) {
        if (rest > UINT64_MAX || !is_prime_u64(rest.convert_to<u64>()))
            throw BadInput("modulus has a factor beyond the trial-division range that is "
                           "not a provable prime; refusing " + N.str());
        fm.factors.emplace_back(rest.convert_to<u64>(), 1);
    }
    return fm;
}

struct CrtResult {
    CountReport total;  // modulus N; rawCount = product of per-prime counts
    BigRational normalized;  // rawCount / N^n
    std::vector<CountReport> perPrime;
};

// Multiplicativity in the modulus: the count mod N is the product of the
// counts mod p^(ord_p N). Per-prime counts use the requested method; when
// the closed form is unavailable at a prime and fallback is allowed, that
// prime is enumerated instead.
inline CrtResult crt_count(u32 n, const FactoredModulus& fm, CountMethod method,
                           const RunConfig& cfg = {}) {
    if (n < 1) throw BadInput("need n >= 1");
    CrtResult out;
    out.total.method = method;
    out.total.nvars = n;
    out.total.modulus = fm.N;
    out.total.rawCount = 1;
    for (const auto& [p, a] : fm.factors) {
        PrimePower pp(p, a);
        CountReport rep;
        try {
            rep = count_monomial_factorisations(n, pp, method, cfg);
        } catch (const NonDegeneracyUnavailable&) {
            if (!cfg.allowFallback) throw;
            rep = count_monomial_factorisations(n, pp, CountMethod::bruteforce, cfg);
        }
        out.total.rawCount *= rep.rawCount;
        out.total.elapsedSeconds += rep.elapsedSeconds;
        out.perPrime.push_back(std::move(rep));
    }
    out.normalized = BigRational(out.total.rawCount, big_pow(fm.N, n));
    return out;
}

struct EpsilonBoundRow {
    u64 p = 0;
    u32 alpha = 0;
    i64 exponent = 0;     // e_n(alpha)
    u64 deltaFactor = 1;  // alpha^delta
    BigInt rawCount;
};

struct EpsilonBoundReport {
    BigInt N;
    u32 n = 0;
    double epsilon = 0.0;
    double constant = 0.0;      // the configured C_(eps,n)
    BigRational exact;          // normalized count mod N
    BigRational productBound;   // prod p^(-e_n(ord_p N))
    BigRational ratio;          // exact / productBound
    double ratioApprox = 0.0;
    double omegaTerm = 0.0;     // (logN / (omega log 2))^omega, >= prod ord_p
    bool withinBound = false;   // ratio <= C N^eps
    std::vector<EpsilonBoundRow> rows;
};

// Diagnostic for the multiplicative envelope: the normalized count mod N
// against prod_p p^(-e_n(ord_p N)), with the slack attributable to the
// per-prime delta factors, whose product is at most (logN / (omega log2))^omega.
inline EpsilonBoundReport epsilon_bound_report(u32 n, const FactoredModulus& fm, double epsilon,
                                               double constant = 16.0,
                                               const RunConfig& cfg = {}) {
    if (epsilon <= 0) throw BadInput("epsilon must be positive");
    for (const auto& [p, a] : fm.factors)
        if (p <= n)
            throw BadInput("epsilon_bound_report needs every prime factor > n (found " +
                           std::to_string(p) + ")");

    EpsilonBoundReport rep;
    rep.N = fm.N;
    rep.n = n;
    rep.epsilon = epsilon;
    rep.constant = constant;
    rep.productBound = 1;

    CrtResult crt = crt_count(n, fm, CountMethod::closedform, cfg);
    rep.exact = crt.normalized;
    for (std::size_t i = 0; i < fm.factors.size(); ++i) {
        auto [p, a] = fm.factors[i];
        auto [e, delta] = e_n_alpha(n, a);
        EpsilonBoundRow row;
        row.p = p;
        row.alpha = a;
        row.exponent = e;
        row.deltaFactor = delta;
        row.rawCount = crt.perPrime[i].rawCount;
        rep.rows.push_back(row);
        rep.productBound /= big_pow(BigInt(p), static_cast<u64>(e));
    }
    rep.ratio = rep.exact / rep.productBound;
    rep.ratioApprox = rep.ratio.convert_to<double>();

    double logN = std::log(rep.N.convert_to<double>());
    double om = fm.omega();
    rep.omegaTerm = std::pow(logN / (om * std::log(2.0)), om);
    double budget = constant * std::pow(rep.N.convert_to<double>(), epsilon);
    rep.withinBound = rep.ratioApprox <= budget;
    return rep;
}

}  // namespace padic
