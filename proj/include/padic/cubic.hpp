#pragma once

#include <string>

#include "padic/counting.hpp"
#include "padic/exponents.hpp"
#include "padic/residue.hpp"

namespace padic {

// kappa = 1 iff p = 1 mod 3, equivalently -3 is a square mod p.
inline int cubic_kappa(u64 p) {
    if (p <= 3) throw BadInput("kappa needs p > 3");
    int viaMod = p % 3 == 1 ? 1 : 0;
    int viaSymbol = legendre_symbol(-3, p) == 1 ? 1 : 0;
    if (viaMod != viaSymbol)
        throw std::logic_error("quadratic reciprocity check failed for p = " + std::to_string(p));
    return viaMod;
}

// N(P1,P2;p) in three variables: 2 p^-2 - p^-3 when -3 is a square mod p,
// p^-3 otherwise.
inline PPowRational quadratic_pair_basecount(u64 p) {
    if (p <= 3) throw BadInput("quadratic_pair_basecount needs p > 3");
    if (!is_prime_u64(p)) throw BadInput("quadratic_pair_basecount needs a prime");
    if (cubic_kappa(p) == 1)
        return PPowRational(p, 2 * BigInt(p) - 1, 3);  // 2 p^-2 - p^-3
    return PPowRational(p, 1, 3);
}

// Error term of N(P1,P2;p) = p^-2 + E over F_p^n: zero for even n; for odd
// n the Gauss-sum evaluation collapses to a rational, eps_p^(n+1) (-n|p)
// (p-1) p^(-(n+3)/2), with eps_p^(n+1) = (-1|p)^((n+1)/2).
inline PPowRational gauss_E(u32 n, u64 p) {
    if (!is_prime_u64(p) || p == 2) throw BadInput("gauss_E needs an odd prime");
    if (n < 1) throw BadInput("gauss_E needs n >= 1");
    if (n % p == 0) throw BadInput("gauss_E needs p not dividing n");
    if (n % 2 == 0) return PPowRational::zero(p);
    int sign = 1;
    if (p % 4 == 3 && ((n + 1) / 2) % 2 == 1) sign = -sign;  // eps_p^(n+1)
    sign *= legendre_symbol(-static_cast<i64>(n), p);
    BigInt num = sign * (BigInt(p) - 1);
    return PPowRational(p, num, static_cast<i64>(n + 3) / 2);
}

struct CubicProfile {
    u64 p = 0;
    int kappa = 0;
    u32 alpha = 0;
    int lambda = 0;             // 1 iff alpha odd and > 1
    i64 predictedExponent = 0;  // e_3(alpha) + lambda (1 - kappa)
    u64 predictedDeltaFactor = 1;  // alpha^(delta_3 * kappa)
};

struct CubicCount {
    CountReport report;
    CubicProfile profile;
    BigRational ratio;  // normalized / (predictedDeltaFactor p^-predictedExponent)
    double ratioApprox = 0.0;
};

// Exact count of cubic monomial factorisations via the closed form, with
// the base counts taken from the Gauss-sum formulas instead of enumeration;
// works for arbitrarily large p.
inline CubicCount cubic_count(u64 p, u32 alpha) {
    if (p <= 3) throw BadInput("cubic_count needs p > 3");
    if (alpha < 1) throw BadInput("cubic_count needs alpha >= 1");

    BaseCounts bc;
    bc.p = p;
    bc.n = 3;
    bc.perPrefix = {big_pow(BigInt(p), 3), BigInt(p) * p,
                    quadratic_pair_basecount(p).times_pow_integral(3), 1};

    NonDegCertificate cert = powersum_certificate(3, p);
    CountReport rep = closed_form_count(DegreeProfile::power_sums(3), bc, alpha, cert);

    CubicCount out;
    out.report = rep;
    out.profile.p = p;
    out.profile.kappa = cubic_kappa(p);
    out.profile.alpha = alpha;
    out.profile.lambda = (alpha > 1 && alpha % 2 == 1) ? 1 : 0;
    auto [e3, delta] = e_n_alpha(3, alpha);
    out.profile.predictedExponent = e3 + out.profile.lambda * (1 - out.profile.kappa);
    out.profile.predictedDeltaFactor = out.profile.kappa == 1 ? delta : 1;

    BigRational predicted = BigRational(out.profile.predictedDeltaFactor) /
                            big_pow(BigInt(p), static_cast<u64>(out.profile.predictedExponent));
    out.ratio = rep.normalized->to_rational() / predicted;
    out.ratioApprox = out.ratio.convert_to<double>();
    return out;
}

}  // namespace padic
