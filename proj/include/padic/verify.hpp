#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "padic/common.hpp"
#include "padic/compose.hpp"
#include "padic/config.hpp"
#include "padic/counting.hpp"
#include "padic/cubic.hpp"
#include "padic/exponents.hpp"
#include "padic/nondegeneracy.hpp"
#include "padic/polynomial.hpp"

// Self-check suites shared by the `verify` CLI subcommand and the acceptance
// runner. Every suite is deterministic for a fixed RunConfig::seed and uses
// exact arithmetic wherever a check has tolerance zero.

namespace padic {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    double elapsedSeconds = 0.0;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    }
};

namespace detail {

class SuiteTimer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

  private:
    using Clock = std::chrono::steady_clock;
    Clock::time_point start_ = Clock::now();
};

inline BigInt factorial(u32 n) {
    BigInt f = 1;
    for (u32 i = 2; i <= n; ++i) f *= i;
    return f;
}

template <typename... Args>
inline std::string cat(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

}  // namespace detail

// Cross-checks the closed form against both enumeration engines on small
// prime-power grids. Brute force and lifting are skipped (not failed) where
// the work would leave the configured budgets; the closed form always runs.
inline SuiteReport verify_grid(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "grid";

    struct GridRow {
        u32 n;
        std::vector<u64> primes;
        u32 maxAlpha;
    };
    const std::vector<GridRow> grid = {
        {2, {3, 5, 7, 11}, 6},
        {3, {5, 7, 11, 13}, 4},
        {4, {5, 7, 11}, 3},
        {5, {7}, 2},
    };

    for (const auto& row : grid) {
        for (u64 p : row.primes) {
            CheckResult check;
            check.name = detail::cat("grid n=", row.n, " p=", p, " alpha<=", row.maxAlpha);
            check.pass = true;
            u32 bruteTo = 0;
            u32 liftTo = 0;
            for (u32 alpha = 1; alpha <= row.maxAlpha; ++alpha) {
                PrimePower pp(p, alpha);
                CountReport closed =
                    count_monomial_factorisations(row.n, pp, CountMethod::closedform, cfg);
                try {
                    CountReport lift =
                        count_monomial_factorisations(row.n, pp, CountMethod::lifting, cfg);
                    if (lift.rawCount != closed.rawCount) {
                        check.pass = false;
                        check.details = detail::cat("lifting ", lift.rawCount, " != closed ",
                                                    closed.rawCount, " at alpha=", alpha);
                    }
                    liftTo = alpha;
                } catch (const CapExceeded&) {
                }
                try {
                    CountReport brute =
                        count_monomial_factorisations(row.n, pp, CountMethod::bruteforce, cfg);
                    if (brute.rawCount != closed.rawCount) {
                        check.pass = false;
                        check.details = detail::cat("brute ", brute.rawCount, " != closed ",
                                                    closed.rawCount, " at alpha=", alpha);
                    }
                    bruteTo = alpha;
                } catch (const CapExceeded&) {
                }
            }
            if (check.pass)
                check.details =
                    detail::cat("agree; brute to alpha=", bruteTo, ", lifting to alpha=", liftTo);
            rep.checks.push_back(std::move(check));
        }
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

// Two-variable counts have a closed answer: p^floor(alpha/2) solutions,
// normalized p^-(alpha + ceil(alpha/2)). Exact comparison.
inline SuiteReport verify_quadratic(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "quadratic";

    for (u64 p : {3ull, 5ull, 7ull, 11ull}) {
        CheckResult check;
        check.name = detail::cat("quadratic p=", p, " alpha<=10");
        check.pass = true;
        for (u32 alpha = 1; alpha <= 10 && check.pass; ++alpha) {
            CountReport closed =
                count_monomial_factorisations(2, PrimePower(p, alpha), CountMethod::closedform,
                                              cfg);
            i64 e = static_cast<i64>(alpha) + ceil_div(alpha, 2);
            PPowRational want = PPowRational::pow_of_p(p, -e);
            BigInt wantRaw = big_pow(BigInt(p), alpha / 2);
            if (!closed.normalized || !(*closed.normalized == want) ||
                closed.rawCount != wantRaw) {
                check.pass = false;
                check.details = detail::cat("alpha=", alpha, ": got raw ", closed.rawCount,
                                            ", want p^", alpha / 2);
            }
        }
        if (check.pass) check.details = "exact match for all alpha";
        rep.checks.push_back(std::move(check));
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

// Three-variable counts against the predicted decay exponent, split by
// whether -3 is a square mod p. The ratio to the prediction must stay within
// a factor of 8 across alpha <= 8; the base count formula is also checked
// against direct enumeration.
inline SuiteReport verify_cubic(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "cubic";

    for (u64 p : {7ull, 13ull, 31ull, 5ull, 11ull, 17ull}) {
        CheckResult check;
        check.name = detail::cat("cubic p=", p, " (kappa=", cubic_kappa(p), ") alpha<=8");
        check.pass = true;
        BigRational lo(1, 8), hi(8);
        double worst = 1.0;
        for (u32 alpha = 1; alpha <= 8; ++alpha) {
            CubicCount cc = cubic_count(p, alpha);
            if (cc.ratio < lo || cc.ratio > hi) {
                check.pass = false;
                check.details = detail::cat("alpha=", alpha, ": ratio ", cc.ratioApprox,
                                            " outside [1/8, 8]");
                break;
            }
            if (std::abs(std::log(cc.ratioApprox)) > std::abs(std::log(worst)))
                worst = cc.ratioApprox;
        }
        if (check.pass) check.details = detail::cat("worst ratio ", worst);
        rep.checks.push_back(std::move(check));

        CheckResult base;
        base.name = detail::cat("cubic base count p=", p, " matches enumeration");
        BaseCounts bc = base_counts(PolySystem::power_sums(3), p, cfg);
        PPowRational formula = quadratic_pair_basecount(p);
        base.pass = bc.normalized(2) == formula;
        base.details = detail::cat("enumerated raw ", bc.perPrefix[2], ", formula raw ",
                                   formula.times_pow_integral(3));
        rep.checks.push_back(std::move(base));
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

// Upper envelope: normalized count <= n! 2^n delta(alpha) p^-e_n(alpha),
// with delta(alpha) the alpha factor when the triangular cut is admissible.
// For n=6 the normalized count times p^(3 alpha) / alpha must stay below the
// same constant across the sweep.
inline SuiteReport verify_envelope(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "envelope";

    for (u32 n : {2u, 4u, 5u, 6u}) {
        u64 p = next_prime_after(n);
        CheckResult check;
        check.name = detail::cat("envelope n=", n, " p=", p, " alpha<=12");
        check.pass = true;
        BigInt cn = detail::factorial(n) << n;  // n! 2^n
        PolySystem s = PolySystem::power_sums(n);
        BaseCounts bc = base_counts(s, p, cfg);
        NonDegCertificate cert = powersum_certificate(n, p, 2, cfg);
        DegreeProfile dp = DegreeProfile::power_sums(n);
        for (u32 alpha = 1; alpha <= 12 && check.pass; ++alpha) {
            CountReport closed = closed_form_count(dp, bc, alpha, cert);
            auto [e, delta] = e_n_alpha(n, alpha);
            BigRational bound(cn * delta, big_pow(BigInt(p), static_cast<u64>(e)));
            if (closed.normalized->to_rational() > bound) {
                check.pass = false;
                check.details = detail::cat("alpha=", alpha, ": normalized exceeds envelope");
            }
        }
        if (check.pass) check.details = "within envelope for all alpha";
        rep.checks.push_back(std::move(check));
    }

    {
        CheckResult check;
        check.name = "n=6 sweep: normalized * p^(3 alpha) / alpha bounded";
        check.pass = true;
        const u64 p = 7;
        const BigRational cap(46080);  // 6! * 2^6
        PolySystem s = PolySystem::power_sums(6);
        BaseCounts bc = base_counts(s, p, cfg);
        NonDegCertificate cert = powersum_certificate(6, p, 2, cfg);
        DegreeProfile dp = DegreeProfile::power_sums(6);
        BigRational worst(0);
        for (u32 alpha = 1; alpha <= 12; ++alpha) {
            CountReport closed = closed_form_count(dp, bc, alpha, cert);
            BigRational ratio =
                closed.normalized->scale_pow(3 * static_cast<i64>(alpha)).to_rational() /
                alpha;
            worst = std::max(worst, ratio);
            if (ratio > cap) {
                check.pass = false;
                check.details = detail::cat("alpha=", alpha, ": ratio ",
                                            ratio.convert_to<double>(), " exceeds 46080");
            }
        }
        if (check.pass)
            check.details = detail::cat("max ratio ", worst.convert_to<double>(), " <= 46080");
        rep.checks.push_back(std::move(check));
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

// Base-field facts: for p > n the full power-sum system has only the origin;
// prefix counts respect the n! p^(n-r) ceiling; prefix varieties respect the
// degree-product bound on their projective point counts.
inline SuiteReport verify_finite_field(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "finite-field";

    for (u32 n = 2; n <= 5; ++n) {
        for (u64 p : {7ull, 11ull, 13ull}) {
            CheckResult check;
            check.name = detail::cat("base field n=", n, " p=", p);
            check.pass = true;
            PolySystem s = PolySystem::power_sums(n);

            CountReport brute = brute_force_system_count(s, BigInt(p), cfg);
            if (brute.rawCount != 1) {
                check.pass = false;
                check.details =
                    detail::cat("full system has ", brute.rawCount, " solutions, want 1");
            }

            BaseCounts bc = base_counts(s, p, cfg);
            BigInt nf = detail::factorial(n);
            for (u32 r = 0; r <= n && check.pass; ++r) {
                if (bc.perPrefix[r] > nf * big_pow(BigInt(p), n - r)) {
                    check.pass = false;
                    check.details = detail::cat("prefix r=", r, " count ", bc.perPrefix[r],
                                                " exceeds n! p^(n-r)");
                }
            }

            for (u32 r = 1; r < n && check.pass; ++r) {
                VarietyCensus census = variety_census(s, r, p, cfg);
                std::vector<u32> degrees(s.degrees.begin(), s.degrees.end());
                if (!schwarz_zippel_check(census, degrees)) {
                    check.pass = false;
                    check.details = detail::cat("degree bound fails at r=", r, " (proj count ",
                                                census.projCount, ")");
                }
                if (census.affineCount != bc.perPrefix[r]) {
                    check.pass = false;
                    check.details = detail::cat("census ", census.affineCount,
                                                " != base count ", bc.perPrefix[r], " at r=", r);
                }
            }
            if (check.pass) check.details = "trivial solution, ceilings, degree bounds all hold";
            rep.checks.push_back(std::move(check));
        }
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

// Projective point counts of the first-two-power-sums variety against the
// dimension prediction: deviation / p^(n - r - 3/2) stays below 8 across
// p = 7..31.
inline SuiteReport verify_langweil(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "langweil";

    const std::vector<u64> primes = {7, 11, 13, 17, 19, 23, 29, 31};
    for (u32 n : {4u, 5u}) {
        CheckResult check;
        check.name = detail::cat("surface growth n=", n, " r=2, p in 7..31");
        PolySystem s = PolySystem::power_sums(n, 2);
        std::vector<VarietyCensus> censuses;
        for (u64 p : primes) censuses.push_back(variety_census(s, 2, p, cfg));
        std::vector<u32> degrees(s.degrees.begin(), s.degrees.end());
        LangWeilReport lw = lang_weil_check(censuses, degrees, 2, 8.0);
        check.pass = lw.pass;
        check.details = detail::cat("max |deviation| / p^(n-7/2) = ", lw.maxRatio);
        rep.checks.push_back(std::move(check));
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

// Algebraic identities behind the counting reductions: the weighted
// recurrence relating power sums to elementary symmetric polynomials, and
// the homogeneity identity sum_i x_i df/dx_i = deg(f) f.
inline SuiteReport verify_newton_girard(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "newton-girard";

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> coeff(-9, 9);

    for (u32 n = 1; n <= 6; ++n) {
        CheckResult check;
        check.name = detail::cat("weighted recurrence n=", n, ", 50 random weights");
        check.pass = true;
        for (u32 trial = 0; trial < 50 && check.pass; ++trial) {
            std::vector<BigInt> weights(n);
            for (auto& w : weights) w = coeff(rng);
            MultiPoly residual = weighted_newton_girard_residual(n, weights);
            if (!residual.is_zero()) {
                check.pass = false;
                check.details = detail::cat("nonzero residual at trial ", trial);
            }
        }
        if (check.pass) check.details = "residual identically zero";
        rep.checks.push_back(std::move(check));
    }

    {
        CheckResult check;
        check.name = "homogeneity identity, 100 random polynomials";
        check.pass = true;
        std::uniform_int_distribution<u32> nvars(1, 5);
        std::uniform_int_distribution<u32> deg(1, 6);
        std::uniform_int_distribution<u32> termCount(1, 5);
        for (u32 trial = 0; trial < 100 && check.pass; ++trial) {
            u32 n = nvars(rng);
            u32 d = deg(rng);
            std::vector<Monomial> terms;
            for (u32 t = 0, tc = termCount(rng); t < tc; ++t) {
                Monomial mono;
                mono.exponents.assign(n, 0);
                // random composition of d into n parts
                u32 remaining = d;
                for (u32 i = 0; i + 1 < n; ++i) {
                    std::uniform_int_distribution<u32> part(0, remaining);
                    mono.exponents[i] = part(rng);
                    remaining -= mono.exponents[i];
                }
                mono.exponents[n - 1] = remaining;
                int c = coeff(rng);
                mono.coeff = c == 0 ? 1 : c;
                terms.push_back(std::move(mono));
            }
            MultiPoly f = MultiPoly::from_terms(n, std::move(terms));
            if (f.is_zero()) continue;
            MultiPoly lhs = MultiPoly::zero(n);
            for (u32 i = 0; i < n; ++i)
                lhs = lhs + MultiPoly::variable(n, i) * f.derivative(i);
            if (!(lhs == f.scaled(BigInt(d)))) {
                check.pass = false;
                check.details = detail::cat("identity fails at trial ", trial);
            }
        }
        if (check.pass) check.details = "holds on all trials";
        rep.checks.push_back(std::move(check));
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

// Certificate behaviour on knowns: power sums certify structurally for
// p > n, a smooth-away-from-origin quadric verifies by enumeration, and a
// double line is rejected with the singular point as witness.
inline SuiteReport verify_nondegeneracy(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "nondegeneracy";

    {
        CheckResult check;
        check.name = "power sums certify structurally for p > n, n <= 10";
        check.pass = true;
        for (u32 n = 1; n <= 10 && check.pass; ++n) {
            u64 p = next_prime_after(n);
            NonDegCertificate cert = powersum_certificate(n, p, 2, cfg);
            if (cert.status != CertStatus::CertifiedStructural || !cert.usable()) {
                check.pass = false;
                check.details = detail::cat("n=", n, " p=", p, ": ", cert.detail);
            }
        }
        if (check.pass) check.details = "all structural";
        rep.checks.push_back(std::move(check));
    }

    {
        CheckResult check;
        check.name = "(x-y)^2 + xz verifies over F_7";
        MultiPoly x = MultiPoly::variable(3, 0);
        MultiPoly y = MultiPoly::variable(3, 1);
        MultiPoly z = MultiPoly::variable(3, 2);
        MultiPoly f = (x - y) * (x - y) + x * z;
        PolySystem s = PolySystem::make(3, {f});
        NonDegCertificate cert = check_nondegeneracy(s, 7, 1, cfg);
        check.pass = cert.status == CertStatus::VerifiedUpToK && cert.usable() &&
                     !cert.witness.has_value();
        check.details = cert.detail;
        rep.checks.push_back(std::move(check));
    }

    {
        CheckResult check;
        check.name = "x^2 in two variables rejected with witness [0:1]";
        MultiPoly x = MultiPoly::variable(2, 0);
        PolySystem s = PolySystem::make(2, {x * x});
        NonDegCertificate cert = check_nondegeneracy(s, 7, 1, cfg);
        check.pass = cert.status == CertStatus::Failed && cert.witness.has_value() &&
                     cert.witness->coordIndices == std::vector<u64>{0, 1};
        check.details = cert.detail;
        rep.checks.push_back(std::move(check));
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

// Composite moduli: the per-prime product must equal direct enumeration over
// Z/N, exactly.
inline SuiteReport verify_crt(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "crt";

    for (u64 N : {35ull, 45ull, 63ull, 75ull, 175ull, 225ull}) {
        CheckResult check;
        check.name = detail::cat("crt N=", N, " n=2");
        CrtResult crt = crt_count(2, factor_modulus(N), CountMethod::closedform, cfg);
        CountReport brute =
            brute_force_factorisation_count(std::vector<BigInt>(2, 0), BigInt(N), cfg);
        check.pass = crt.total.rawCount == brute.rawCount;
        check.details = detail::cat("product ", crt.total.rawCount, ", direct ", brute.rawCount);
        rep.checks.push_back(std::move(check));
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

// Budget behaviour: closed form answers fast once base counts exist, the
// base-count pass itself is a single sweep of F_p^n, and infeasible brute
// force refuses with the work it would have needed.
inline SuiteReport verify_performance(const RunConfig& cfg = {}) {
    detail::SuiteTimer timer;
    SuiteReport rep;
    rep.suite = "performance";

    RunConfig single = cfg;
    single.workers = 1;

    BaseCounts bc;
    {
        CheckResult check;
        check.name = "base-count sweep of 7^6 points, single worker";
        detail::SuiteTimer t;
        bc = base_counts(PolySystem::power_sums(6), 7, single);
        double s = t.seconds();
        check.pass = s < 10.0;
        check.details = detail::cat(s, " s (budget 10)");
        rep.checks.push_back(std::move(check));
    }

    {
        CheckResult check;
        check.name = "closed form n=6 p=7 alpha=12 from existing base counts";
        NonDegCertificate cert = powersum_certificate(6, 7, 2, single);
        detail::SuiteTimer t;
        CountReport closed = closed_form_count(DegreeProfile::power_sums(6), bc, 12, cert);
        double s = t.seconds();
        check.pass = s < 1.0 && closed.rawCount > 0;
        check.details = detail::cat(s, " s (budget 1), raw count ", closed.rawCount);
        rep.checks.push_back(std::move(check));
    }

    {
        CheckResult check;
        check.name = "brute force n=6 alpha=12 refuses and names the budget";
        try {
            count_monomial_factorisations(6, PrimePower(7, 12), CountMethod::bruteforce, single);
            check.pass = false;
            check.details = "no refusal";
        } catch (const CapExceeded& e) {
            BigInt want = big_pow(BigInt(7), 72);
            std::string msg = e.what();
            check.pass = e.required == want && msg.find("7^72") != std::string::npos;
            check.details = msg.substr(0, 60);
        }
        rep.checks.push_back(std::move(check));
    }
    rep.elapsedSeconds = timer.seconds();
    return rep;
}

struct SuiteSpec {
    std::string name;
    std::function<SuiteReport(const RunConfig&)> run;
};

inline const std::vector<SuiteSpec>& all_suites() {
    static const std::vector<SuiteSpec> suites = {
        {"grid", verify_grid},
        {"quadratic", verify_quadratic},
        {"cubic", verify_cubic},
        {"envelope", verify_envelope},
        {"finite-field", verify_finite_field},
        {"langweil", verify_langweil},
        {"newton-girard", verify_newton_girard},
        {"nondegeneracy", verify_nondegeneracy},
        {"crt", verify_crt},
        {"performance", verify_performance},
    };
    return suites;
}

inline SuiteReport run_suite(const std::string& name, const RunConfig& cfg = {}) {
    for (const auto& s : all_suites())
        if (s.name == name) return s.run(cfg);
    throw BadInput("unknown verify suite: " + name);
}

}  // namespace padic
