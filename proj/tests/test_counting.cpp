#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <vector>

#include <padic/counting.hpp>
#include <padic/nondegeneracy.hpp>

using namespace padic;

namespace {

// Library tests must not pick up a worker override from the environment.
struct EnvGuard {
    EnvGuard() { ::unsetenv("PADIC_COUNT_THREADS"); }
} envGuard;

PolySystem fermat_quintic() {
    std::vector<Monomial> terms = {{{5, 0, 0}, 1}, {{0, 5, 0}, 1}, {{0, 0, 5}, 1}};
    return PolySystem::make(3, {MultiPoly::from_terms(3, std::move(terms))});
}

}  // namespace

TEST_CASE("monomial factorisation counts, all methods agree on knowns") {
    RunConfig cfg;
    for (CountMethod m :
         {CountMethod::bruteforce, CountMethod::lifting, CountMethod::closedform}) {
        CHECK(count_monomial_factorisations(2, PrimePower(3, 2), m, cfg).rawCount == 3);
        CHECK(count_monomial_factorisations(3, PrimePower(7, 2), m, cfg).rawCount == 49);
    }
    // p <= n admits lifting through the elementary-symmetric system but the
    // power-sum reduction behind the closed form is unavailable.
    CHECK(count_monomial_factorisations(2, PrimePower(5, 3), CountMethod::lifting, cfg)
              .rawCount == 5);
    CHECK(count_monomial_factorisations(2, PrimePower(5, 3), CountMethod::bruteforce, cfg)
              .rawCount == 5);
    CHECK_THROWS_AS(
        count_monomial_factorisations(3, PrimePower(3, 2), CountMethod::closedform, cfg),
        NonDegeneracyUnavailable);
    for (u32 alpha = 1; alpha <= 3; ++alpha) {
        CountReport lift =
            count_monomial_factorisations(3, PrimePower(2, alpha), CountMethod::lifting, cfg);
        CountReport brute =
            count_monomial_factorisations(3, PrimePower(2, alpha), CountMethod::bruteforce, cfg);
        CHECK(lift.rawCount == brute.rawCount);
    }
}

TEST_CASE("base counts over small primes") {
    RunConfig cfg;
    PolySystem s = PolySystem::power_sums(3);
    struct Row {
        u64 p;
        std::vector<i64> counts;
    };
    for (const Row& row : {Row{7, {343, 49, 13, 1}},
                           Row{11, {1331, 121, 1, 1}},
                           Row{13, {2197, 169, 25, 1}}}) {
        BaseCounts bc = base_counts(s, row.p, cfg);
        REQUIRE(bc.perPrefix.size() == row.counts.size());
        for (std::size_t r = 0; r < row.counts.size(); ++r)
            CHECK(bc.perPrefix[r] == row.counts[r]);
    }
    CHECK(base_counts(s, 7, cfg).normalized(2) == PPowRational(7, 13, 3));
    CHECK_THROWS_AS(base_counts(s, 6, cfg), BadInput);
}

TEST_CASE("single quintic form: closed form against enumeration") {
    RunConfig cfg;
    PolySystem s = fermat_quintic();
    DegreeProfile dp(3, {5});
    BaseCounts bc = base_counts(s, 7, cfg);
    NonDegCertificate cert = check_nondegeneracy(s, 7, 2, cfg);
    REQUIRE(cert.usable());

    std::vector<BigInt> expected = {49, 2695, 232897};
    for (u32 alpha = 1; alpha <= 3; ++alpha) {
        CountReport closed = closed_form_count(dp, bc, alpha, cert);
        CHECK(closed.rawCount == expected[alpha - 1]);
        CountReport brute =
            brute_force_system_count(s, big_pow(BigInt(7), alpha), cfg);
        CHECK(brute.rawCount == closed.rawCount);
    }
}

TEST_CASE("prefix pair system: closed form, lifting, and unit children") {
    RunConfig cfg;
    PolySystem s = PolySystem::power_sums(3, 2);
    DegreeProfile dp(3, {1, 2});
    BaseCounts bc = base_counts(s, 7, cfg);
    NonDegCertificate cert = check_nondegeneracy(s, 7, 2, cfg);
    REQUIRE(cert.usable());

    CountReport closed = closed_form_count(dp, bc, 2, cert);
    CHECK(closed.rawCount == 133);  // 12 unit points * 7 children + 49 over the origin
    CHECK(*closed.normalized == PPowRational(7, 19, 5));

    LiftStats stats;
    CountReport lift = lifting_count(s, PrimePower(7, 2), cfg, {}, &stats);
    CHECK(lift.rawCount == 133);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].frontierSize == 13);
    CHECK(stats[0].unitCount == 12);
    // Units on a non-degenerate system extend to exactly p^(n-m) children.
    CHECK(stats[0].unitChildrenMin == 7);
    CHECK(stats[0].unitChildrenMax == 7);
}

TEST_CASE("factorisations with prescribed roots") {
    RunConfig cfg;
    std::vector<BigInt> roots = {1, 2};
    CHECK(brute_force_factorisation_count(roots, BigInt(5), cfg).rawCount == 2);

    // Mod 25 the same count through three formulations: coefficient
    // comparison, the power-sum system with matching targets, and lifting.
    CountReport brute = brute_force_factorisation_count(roots, BigInt(25), cfg);
    CHECK(brute.rawCount == 2);
    CountReport system =
        brute_force_system_count(PolySystem::power_sums(2), BigInt(25), cfg, {3, 5});
    CHECK(system.rawCount == 2);

    LiftStats stats;
    CountReport lift =
        lifting_count(PolySystem::power_sums(2), PrimePower(5, 2), cfg, {3, 5}, &stats);
    CHECK(lift.rawCount == 2);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].frontierSize == 2);
    CHECK(stats[0].unitCount == 2);
    CHECK(stats[0].unitChildrenMin == 1);
    CHECK(stats[0].unitChildrenMax == 1);

    CHECK(brute_force_factorisation_count(std::vector<BigInt>(2, 0), BigInt(45), cfg)
              .rawCount == 3);
    CHECK_THROWS_AS(brute_force_factorisation_count({}, BigInt(5), cfg), BadInput);
    CHECK_THROWS_AS(brute_force_factorisation_count(roots, BigInt(1), cfg), BadInput);
}

TEST_CASE("lifting on the monomial system stays non-unit") {
    RunConfig cfg;
    LiftStats stats;
    CountReport rep =
        lifting_count(PolySystem::elementary_system(2), PrimePower(5, 3), cfg, {}, &stats);
    CHECK(rep.rawCount == 5);
    REQUIRE(stats.size() == 2);
    CHECK(stats[1].frontierSize == 5);
    CHECK(stats[1].unitCount == 0);
}

TEST_CASE("normalized counts never grow with alpha") {
    RunConfig cfg;
    for (auto [n, p] : {std::pair<u32, u64>{2, 3}, {3, 7}, {4, 5}}) {
        CountMethod m = p > n ? CountMethod::closedform : CountMethod::lifting;
        PPowRational prev = count_monomial_factorisations(n, PrimePower(p, 1), m, cfg)
                                .normalized.value();
        for (u32 alpha = 2; alpha <= 6; ++alpha) {
            PPowRational cur =
                count_monomial_factorisations(n, PrimePower(p, alpha), m, cfg)
                    .normalized.value();
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}

TEST_CASE("budgets and ranges refuse loudly") {
    RunConfig cfg;

    // Infeasible brute force names the power it would have to enumerate.
    try {
        count_monomial_factorisations(6, PrimePower(7, 12), CountMethod::bruteforce, cfg);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(e.required == big_pow(BigInt(7), 72));
        CHECK(std::string(e.what()).find("7^72") != std::string::npos);
    }

    // Moduli past the 64-bit evaluation range are rejected even when the
    // candidate budget would allow a single variable.
    RunConfig wide;
    wide.maxCandidates = UINT64_MAX;
    CHECK_THROWS_AS(
        brute_force_factorisation_count({BigInt(0)}, BigInt(1) << 62, wide),
        CapExceeded);

    // The lifting frontier budget counts frontier size times p^n per level;
    // the first level over budget is the three-point frontier mod 9.
    RunConfig tight;
    tight.maxFrontier = 10;
    try {
        lifting_count(PolySystem::power_sums(2), PrimePower(3, 3), tight);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(std::string(e.what()).find("level 3") != std::string::npos);
        CHECK(e.required == 27);
    }

    CHECK_THROWS_AS(
        brute_force_system_count(PolySystem::power_sums(2), BigInt(5), cfg, {1, 2, 3}),
        BadInput);
}

TEST_CASE("worker count does not change any count") {
    RunConfig one;
    one.workers = 1;
    RunConfig three;
    three.workers = 3;

    PolySystem s = PolySystem::power_sums(3);
    CHECK(base_counts(s, 11, one).perPrefix == base_counts(s, 11, three).perPrefix);
    CHECK(brute_force_system_count(s, BigInt(121), one).rawCount ==
          brute_force_system_count(s, BigInt(121), three).rawCount);
    CHECK(lifting_count(s, PrimePower(7, 3), one).rawCount ==
          lifting_count(s, PrimePower(7, 3), three).rawCount);
    CHECK(brute_force_factorisation_count({1, 2, 3}, BigInt(49), one).rawCount ==
          brute_force_factorisation_count({1, 2, 3}, BigInt(49), three).rawCount);
}

TEST_CASE("closed form demands consistent inputs") {
    RunConfig cfg;
    BaseCounts bc = base_counts(PolySystem::power_sums(3), 7, cfg);
    NonDegCertificate cert = powersum_certificate(3, 7, 2, cfg);
    CHECK_THROWS_AS(closed_form_count(DegreeProfile::power_sums(4), bc, 2, cert), BadInput);

    NonDegCertificate wrongP = powersum_certificate(3, 11, 2, cfg);
    CHECK_THROWS_AS(closed_form_count(DegreeProfile::power_sums(3), bc, 2, wrongP), BadInput);

    NonDegCertificate failed;
    failed.status = CertStatus::Failed;
    CHECK_THROWS_AS(closed_form_count(DegreeProfile::power_sums(3), bc, 2, failed),
                    NonDegeneracyUnavailable);
}
