#include <catch2/catch_amalgamated.hpp>

#include <map>

#include <padic/compose.hpp>
#include <padic/counting.hpp>

using namespace padic;

TEST_CASE("modulus factoring") {
    FactoredModulus f45 = factor_modulus(BigInt(45));
    CHECK(f45.factors == std::vector<std::pair<u64, u32>>{{3, 2}, {5, 1}});
    CHECK(f45.omega() == 2);

    FactoredModulus f175 = factor_modulus(BigInt(175));
    CHECK(f175.factors == std::vector<std::pair<u64, u32>>{{5, 2}, {7, 1}});

    FactoredModulus f97 = factor_modulus(BigInt(97));
    CHECK(f97.factors == std::vector<std::pair<u64, u32>>{{97, 1}});

    CHECK_THROWS_AS(factor_modulus(BigInt(1)), BadInput);

    // prime cofactor past the trial-division bound is accepted,
    // a composite one is refused rather than silently mis-factored
    FactoredModulus big = factor_modulus(BigInt(1000003));
    CHECK(big.factors == std::vector<std::pair<u64, u32>>{{1000003, 1}});
    CHECK_THROWS_AS(factor_modulus(BigInt(1000003) * 1000033), BadInput);
}

TEST_CASE("composite counts multiply across prime powers") {
    RunConfig cfg;
    const std::map<u64, u64> known = {{35, 1},  {45, 3},  {63, 3},
                                      {75, 5},  {175, 5}, {225, 15}};
    for (auto [N, expected] : known) {
        CrtResult via_closed =
            crt_count(2, factor_modulus(BigInt(N)), CountMethod::closedform, cfg);
        CHECK(via_closed.total.rawCount == expected);
        CHECK(brute_force_factorisation_count({0, 0}, BigInt(N), cfg).rawCount ==
              expected);
    }
}

TEST_CASE("composite closed form matches direct walk for every modulus to 400") {
    RunConfig cfg;
    for (u64 N = 2; N <= 400; ++N) {
        CrtResult crt =
            crt_count(2, factor_modulus(BigInt(N)), CountMethod::closedform, cfg);
        BigInt direct =
            brute_force_factorisation_count({0, 0}, BigInt(N), cfg).rawCount;
        INFO("N = " << N);
        CHECK(crt.total.rawCount == direct);
    }
}

TEST_CASE("small primes fall back to enumeration unless strict") {
    RunConfig cfg;
    CrtResult r8 = crt_count(3, factor_modulus(BigInt(8)), CountMethod::closedform, cfg);
    REQUIRE(r8.perPrime.size() == 1);
    CHECK(r8.perPrime[0].method == CountMethod::bruteforce);
    CHECK(r8.total.rawCount ==
          brute_force_factorisation_count({0, 0, 0}, BigInt(8), cfg).rawCount);

    RunConfig strict;
    strict.allowFallback = false;
    CHECK_THROWS_AS(
        crt_count(3, factor_modulus(BigInt(8)), CountMethod::closedform, strict),
        NonDegeneracyUnavailable);

    CHECK_THROWS_AS(crt_count(0, factor_modulus(BigInt(8)), CountMethod::closedform, cfg),
                    BadInput);
}

TEST_CASE("epsilon bound report") {
    RunConfig cfg;

    // single prime power: prediction is exact, ratio is exactly one
    EpsilonBoundReport single =
        epsilon_bound_report(2, factor_modulus(big_pow(BigInt(7), 6)), 0.5, 16.0, cfg);
    CHECK(single.ratio == BigRational(1));
    CHECK(single.withinBound);
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0].exponent == 9);
    CHECK(single.rows[0].deltaFactor == 1);

    // squarefree composite: every local factor is exact too
    EpsilonBoundReport sqfree =
        epsilon_bound_report(2, factor_modulus(BigInt(105)), 0.5, 16.0, cfg);
    CHECK(sqfree.ratio == BigRational(1));
    CHECK(sqfree.withinBound);

    EpsilonBoundReport n225 =
        epsilon_bound_report(2, factor_modulus(BigInt(225)), 0.5, 16.0, cfg);
    CHECK(n225.ratio == BigRational(1));
    CHECK(n225.withinBound);

    // cubic case mixes a split prime (exponent slack 13/7) with an inert
    // one (parity lift, slack 1/11)
    EpsilonBoundReport cubic = epsilon_bound_report(
        3, factor_modulus(big_pow(BigInt(7), 3) * big_pow(BigInt(11), 3)), 0.5, 16.0,
        cfg);
    CHECK(cubic.ratio == BigRational(13, 77));
    CHECK(cubic.withinBound);
    // the delta-factor envelope dominates the product of the ordinates
    CHECK(cubic.omegaTerm >= 9.0);

    CHECK_THROWS_AS(epsilon_bound_report(2, factor_modulus(BigInt(45)), 0.0, 16.0, cfg),
                    BadInput);
    // prime factor at or below n has no nondegenerate local model
    CHECK_THROWS_AS(epsilon_bound_report(3, factor_modulus(BigInt(8)), 0.5, 16.0, cfg),
                    BadInput);
    CHECK_THROWS_AS(epsilon_bound_report(3, factor_modulus(BigInt(45)), 0.5, 16.0, cfg),
                    BadInput);
}
