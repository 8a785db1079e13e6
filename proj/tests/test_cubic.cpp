#include <catch2/catch_amalgamated.hpp>

#include <padic/counting.hpp>
#include <padic/cubic.hpp>

using namespace padic;

TEST_CASE("quadratic pair base count splits on p mod 3") {
    RunConfig cfg;
    CHECK(quadratic_pair_basecount(7).times_pow_integral(3) == 13);
    CHECK(quadratic_pair_basecount(11).times_pow_integral(3) == 1);
    CHECK(quadratic_pair_basecount(13).times_pow_integral(3) == 25);
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull, 31ull}) {
        CHECK(quadratic_pair_basecount(p) ==
              base_counts(PolySystem::power_sums(3), p, cfg).normalized(2));
    }
    CHECK_THROWS_AS(quadratic_pair_basecount(2), BadInput);
    CHECK_THROWS_AS(quadratic_pair_basecount(3), BadInput);
}

TEST_CASE("kappa matches its character formulation") {
    std::vector<u64> ones, zeros;
    for (u64 p = 5; p < 100; ++p) {
        if (!is_prime_u64(p)) continue;
        // cubic_kappa cross-checks the congruence against the Legendre
        // symbol internally and throws logic_error on any mismatch.
        u32 k = cubic_kappa(p);
        CHECK(k == (p % 3 == 1 ? 1 : 0));
        (k ? ones : zeros).push_back(p);
    }
    CHECK(ones.front() == 7);
    CHECK(zeros.front() == 5);
    CHECK_THROWS_AS(cubic_kappa(3), BadInput);
}

TEST_CASE("quadratic exponential sum correction") {
    CHECK(gauss_E(3, 7) == PPowRational(7, 6, 3));
    CHECK(gauss_E(3, 11) == PPowRational(11, -10, 3));
    CHECK(gauss_E(3, 5) == PPowRational(5, -4, 3));
    CHECK(gauss_E(5, 7) == PPowRational(7, -6, 4));
    CHECK(gauss_E(2, 7).is_zero());
    CHECK(gauss_E(4, 13).is_zero());
    CHECK_THROWS_AS(gauss_E(3, 2), BadInput);
    CHECK_THROWS_AS(gauss_E(5, 5), BadInput);
    CHECK_THROWS_AS(gauss_E(0, 7), BadInput);
}

TEST_CASE("two-equation prefix count equals main term plus correction") {
    RunConfig cfg;
    for (u32 n : {2u, 3u, 4u, 5u}) {
        for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
            if (n % p == 0) continue;
            BaseCounts base = base_counts(PolySystem::power_sums(n, 2), p, cfg);
            PPowRational expected =
                PPowRational::pow_of_p(p, -2) + gauss_E(n, p);
            CHECK(base.perPrefix[2] == expected.times_pow_integral(n));
        }
    }
    // one value worth holding by hand: n=5, p=7 gives 7^3 - 42 = 301
    BaseCounts b57 = base_counts(PolySystem::power_sums(5, 2), 7, cfg);
    CHECK(b57.perPrefix[2] == 301);
    CHECK(quadratic_pair_basecount(7) ==
          PPowRational::pow_of_p(7, -2) + gauss_E(3, 7));
    CHECK(quadratic_pair_basecount(11) ==
          PPowRational::pow_of_p(11, -2) + gauss_E(3, 11));
}

TEST_CASE("cubic closed form at split and inert primes") {
    CubicCount c72 = cubic_count(7, 2);
    CHECK(c72.report.rawCount == 49);
    CHECK(c72.profile.kappa == 1);
    CHECK(c72.profile.predictedExponent == 4);
    CHECK(c72.profile.predictedDeltaFactor == 1);
    CHECK(c72.ratio == BigRational(1));

    // inert prime, odd exponent: the parity term lifts the exponent by one
    CubicCount c113 = cubic_count(11, 3);
    CHECK(c113.profile.kappa == 0);
    CHECK(c113.profile.predictedExponent == 7);
    REQUIRE(c113.report.normalized.has_value());
    CHECK(*c113.report.normalized == PPowRational(11, 1, 7));
    CHECK(c113.ratio == BigRational(1));

    CHECK_THROWS_AS(cubic_count(3, 2), BadInput);
    CHECK_THROWS_AS(cubic_count(7, 0), BadInput);
}

TEST_CASE("cubic closed form agrees with exhaustive search") {
    RunConfig cfg;
    auto brute = [&](u64 p, u32 alpha) {
        return count_monomial_factorisations(3, PrimePower(p, alpha),
                                             CountMethod::bruteforce, cfg)
            .rawCount;
    };
    for (u64 p : {5ull, 7ull})
        for (u32 alpha = 1; alpha <= 3; ++alpha)
            CHECK(cubic_count(p, alpha).report.rawCount == brute(p, alpha));
    for (u64 p : {11ull, 13ull})
        for (u32 alpha = 1; alpha <= 2; ++alpha)
            CHECK(cubic_count(p, alpha).report.rawCount == brute(p, alpha));
}
