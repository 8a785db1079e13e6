#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "padic/common.hpp"

namespace padic {

// alpha_0 is "+infinity"; every finite cut compares below it.
inline constexpr i64 kAlphaInfinity = std::numeric_limits<i64>::max();

struct DegreeProfile {
    u32 n = 0;
    std::vector<u32> degrees;  // d_1 <= ... <= d_m, each >= 1

    DegreeProfile(u32 n_, std::vector<u32> degrees_) : n(n_), degrees(std::move(degrees_)) {
        if (n < 1) throw BadInput("degree profile needs n >= 1");
        if (degrees.empty()) throw BadInput("degree profile needs at least one degree");
        u32 prev = 1;
        for (u32 d : degrees) {
            if (d < 1 || d < prev) throw BadInput("degrees must be >= 1 and nondecreasing");
            prev = d;
        }
    }

    static DegreeProfile power_sums(u32 n) {
        std::vector<u32> d(n);
        for (u32 k = 0; k < n; ++k) d[k] = k + 1;
        return DegreeProfile(n, std::move(d));
    }

    u32 m() const { return static_cast<u32>(degrees.size()); }

    // sigma_r = d_1 + ... + d_r
    u64 sigma(u32 r) const {
        u64 s = 0;
        for (u32 k = 0; k < r; ++k) s += degrees.at(k);
        return s;
    }

    // The exponent formulas need at least one form and no more than n.
    bool fits_variables() const { return m() >= 1 && m() <= n; }
};

struct ExponentProfile {
    DegreeProfile profile;
    i64 alpha = 0;
    // alphaCuts[r] for r = 0..m+1; [0] is the infinity sentinel, [m+1] = 0.
    std::vector<i64> alphaCuts;
    // Candidate exponents e(alpha, r) for r = 0..min(m, n-1).
    std::vector<i64> exponents;
    std::vector<u32> admissible;  // r with alphaCuts[r+1] < alphaCuts[r]
    i64 minimal = 0;              // min over admissible r
    std::vector<u32> argmins;     // every admissible r attaining the minimum
    u64 deltaFactor = 1;          // alpha when some admissible r >= 1 has sigma_r = n, else 1
    std::vector<i64> cCoeffs;     // alphaCuts[r] - alphaCuts[r+1] where sigma_r = n, else 1

    u32 r_max() const { return static_cast<u32>(exponents.size()) - 1; }
};

inline ExponentProfile build_exponent_profile(const DegreeProfile& dp, i64 alpha) {
    if (alpha < 1) throw BadInput("alpha must be >= 1");
    if (!dp.fits_variables())
        throw BadInput("exponent profile needs 1 <= m <= n (got m = " +
                       std::to_string(dp.m()) + ", n = " + std::to_string(dp.n) + ")");
    const u32 m = dp.m();
    const i64 n = dp.n;

    ExponentProfile ep{dp, alpha, {}, {}, {}, 0, {}, 1, {}};
    ep.alphaCuts.assign(m + 2, 0);
    ep.alphaCuts[0] = kAlphaInfinity;
    for (u32 r = 1; r <= m; ++r) ep.alphaCuts[r] = ceil_div(alpha, dp.degrees[r - 1]);
    ep.alphaCuts[m + 1] = 0;

    const u32 rMax = std::min<u32>(m, dp.n - 1);
    for (u32 r = 0; r <= rMax; ++r) {
        i64 sigma = static_cast<i64>(dp.sigma(r));
        i64 level = sigma <= n ? ep.alphaCuts[r + 1] : ep.alphaCuts[r] - 1;
        ep.exponents.push_back(static_cast<i64>(r) * alpha + (n - sigma) * level);
        ep.cCoeffs.push_back(sigma == n ? ep.alphaCuts[r] - ep.alphaCuts[r + 1] : 1);
        if (ep.alphaCuts[r + 1] < ep.alphaCuts[r]) ep.admissible.push_back(r);
    }

    ep.minimal = kAlphaInfinity;
    for (u32 r : ep.admissible) ep.minimal = std::min(ep.minimal, ep.exponents[r]);
    for (u32 r : ep.admissible)
        if (ep.exponents[r] == ep.minimal) ep.argmins.push_back(r);
    for (u32 r : ep.admissible)
        if (r >= 1 && static_cast<i64>(dp.sigma(r)) == n) ep.deltaFactor = static_cast<u64>(alpha);
    return ep;
}

inline ExponentProfile powersum_profile(u32 n, i64 alpha) {
    return build_exponent_profile(DegreeProfile::power_sums(n), alpha);
}

// (e_n(alpha), delta factor) for the full power-sum profile.
inline std::pair<i64, u64> e_n_alpha(u32 n, i64 alpha) {
    ExponentProfile ep = powersum_profile(n, alpha);
    return {ep.minimal, ep.deltaFactor};
}

inline i64 triangle(i64 r) { return r * (r + 1) / 2; }

struct TriangularData {
    u32 n = 0;
    u32 rMinus = 0;  // max r with r(r+1)/2 <= n
    u32 rPlus = 0;   // min r with r(r+1)/2 >= n
    u32 s = 0;       // n = triangle(rPlus - 1) + s, 1 <= s <= rPlus
    i64 t = 0;       // rPlus^2 - 5 rPlus + 2 (s + 1)
    bool isTriangular = false;
};

inline TriangularData triangular_data(u32 n) {
    if (n < 1) throw BadInput("triangular_data needs n >= 1");
    TriangularData td;
    td.n = n;
    u32 r = 0;
    while (triangle(r + 1) <= n) ++r;
    td.rMinus = r;
    td.rPlus = triangle(r) == static_cast<i64>(n) ? r : r + 1;
    td.isTriangular = triangle(td.rPlus) == static_cast<i64>(n);
    td.s = static_cast<u32>(n - triangle(td.rPlus - 1));
    td.t = static_cast<i64>(td.rPlus) * td.rPlus - 5 * static_cast<i64>(td.rPlus) +
           2 * (static_cast<i64>(td.s) + 1);
    return td;
}

// Minimal exponent for a single homogeneous form of degree d in n >= 3
// variables. Case split checked against the general profile.
inline i64 single_poly_exponent(u32 n, u32 d, i64 alpha) {
    if (n < 3) throw BadInput("single_poly_exponent needs n >= 3");
    if (d < 1 || alpha < 1) throw BadInput("single_poly_exponent needs d >= 1, alpha >= 1");
    i64 direct;
    if (d <= n) {
        direct = alpha;
    } else {
        i64 a1 = ceil_div(alpha, d);
        i64 j = alpha - (a1 - 1) * d;  // 1 <= j <= d
        direct = n * (a1 - 1) + std::min<i64>(j, n);
    }
    i64 viaProfile = build_exponent_profile(DegreeProfile(n, {d}), alpha).minimal;
    if (direct != viaProfile)
        throw std::logic_error("single-form exponent case split disagrees with the profile");
    return direct;
}

}  // namespace padic
