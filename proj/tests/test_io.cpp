#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <padic/compose.hpp>
#include <padic/counting.hpp>
#include <padic/cubic.hpp>
#include <padic/io.hpp>
#include <padic/nondegeneracy.hpp>

using namespace padic;

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& text) {
        static int seq = 0;
        path = "/tmp/padic_io_test_" + std::to_string(::getpid()) + "_" +
               std::to_string(seq++) + ".json";
        std::ofstream(path) << text;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("p-power rationals survive a JSON round trip") {
    PPowRational v(5, 24, 6);
    CHECK(ppow_from_json(ppow_to_json(v)) == v);

    // canonicalization happens before serialization
    PPowRational reducible(7, 49, 3);
    json j = ppow_to_json(reducible);
    CHECK(j["num"] == "1");
    CHECK(j["denomExp"] == 1);
    CHECK(ppow_from_json(j) == reducible);

    CHECK_THROWS_AS(ppow_from_json(json{{"p", 5}, {"num", "1"}}), BadInput);
    CHECK_THROWS_AS(ppow_from_json(json{{"p", 5}, {"num", "1"}, {"denomExp", -2}}),
                    BadInput);
    CHECK_THROWS_AS(ppow_from_json(json{{"p", 6}, {"num", "1"}, {"denomExp", 0}}),
                    BadInput);
}

TEST_CASE("count reports survive a JSON round trip") {
    RunConfig cfg;
    CountReport pp =
        count_monomial_factorisations(3, PrimePower(7, 2), CountMethod::closedform, cfg);
    CountReport ppBack = count_report_from_json(count_report_to_json(pp));
    CHECK(reports_equal(pp, ppBack));

    CountReport composite = brute_force_factorisation_count({0, 0}, BigInt(45), cfg);
    json cj = count_report_to_json(composite);
    CHECK_FALSE(cj.contains("p"));
    CHECK(cj["normalized"].contains("den"));
    CHECK(reports_equal(composite, count_report_from_json(cj)));

    CountReport other = ppBack;
    other.rawCount += 1;
    CHECK_FALSE(reports_equal(pp, other));
    CHECK_FALSE(reports_equal(pp, composite));
}

TEST_CASE("system JSON forms") {
    PolySystem expect = PolySystem::power_sums(3);
    PolySystem shorthand = system_from_json(json{{"powersums", 3}});
    REQUIRE(shorthand.polys.size() == 3);
    CHECK(shorthand.nvars == expect.nvars);
    CHECK(shorthand.degrees == expect.degrees);
    for (std::size_t i = 0; i < 3; ++i) CHECK(shorthand.polys[i] == expect.polys[i]);

    json explicitJson = {
        {"n", 3},
        {"polys",
         {{{"terms",
            {{{"e", {1, 0, 0}}, {"c", 1}},
             {{"e", {0, 1, 0}}, {"c", 1}},
             {{"e", {0, 0, 1}}, {"c", 1}}}}},
          {{"terms",
            {{{"e", {2, 0, 0}}, {"c", 1}},
             {{"e", {0, 2, 0}}, {"c", 1}},
             {{"e", {0, 0, 2}}, {"c", 1}}}}},
          {{"terms",
            {{{"e", {3, 0, 0}}, {"c", 1}},
             {{"e", {0, 3, 0}}, {"c", 1}},
             {{"e", {0, 0, 3}}, {"c", 1}}}}}}}};
    PolySystem parsed = system_from_json(explicitJson);
    for (std::size_t i = 0; i < 3; ++i) CHECK(parsed.polys[i] == expect.polys[i]);

    // huge coefficients arrive as strings
    PolySystem big = system_from_json(
        json{{"n", 2},
             {"polys",
              {{{"terms", {{{"e", {3, 0}}, {"c", "123456789012345678901234567890"}}}}}}}});
    CHECK(big.polys[0].terms()[0].coeff == BigInt("123456789012345678901234567890"));

    CHECK_THROWS_AS(system_from_json(json::array()), BadInput);
    CHECK_THROWS_AS(system_from_json(json{{"powersums", 0}}), BadInput);
    CHECK_THROWS_AS(system_from_json(json{{"n", 2}}), BadInput);
    // mixed-degree polynomial is not homogeneous
    CHECK_THROWS_AS(
        system_from_json(json{
            {"n", 2},
            {"polys",
             {{{"terms", {{{"e", {1, 0}}, {"c", 1}}, {{"e", {2, 0}}, {"c", 1}}}}}}}}),
        BadInput);
    // exponent vector arity must match n
    CHECK_THROWS_AS(
        system_from_json(
            json{{"n", 2}, {"polys", {{{"terms", {{{"e", {1, 0, 0}}, {"c", 1}}}}}}}}),
        BadInput);

    CHECK_THROWS_AS(system_from_file("/nonexistent/system.json"), BadInput);
    TempFile bad("this is not json");
    CHECK_THROWS_AS(system_from_file(bad.path), BadInput);
    TempFile good("{\"powersums\": 2}");
    CHECK(system_from_file(good.path).nvars == 2);
}

TEST_CASE("exponent profile JSON uses an explicit infinity sentinel") {
    json j = exponent_profile_to_json(powersum_profile(4, 3));
    CHECK(j["alphaCuts"][0] == "inf");
    CHECK(j["alphaCuts"][1] == 3);
    CHECK(j["minimal"] == 7);
    CHECK(j["argmins"] == json::array({2}));
    CHECK(j["deltaFactor"] == 1);

    json t = triangular_to_json(triangular_data(6));
    CHECK(t["isTriangular"] == true);
    CHECK(t["s"] == 3);
    CHECK(t["t"] == 2);
}

TEST_CASE("CSV rows match the documented header") {
    RunConfig cfg;
    CHECK(count_report_csv_header() ==
          "method,n,modulus,rawCount,p,num,denomExp,approx,elapsedSeconds");
    CHECK(sweep_csv_header() == "alpha,rawCount,num,denomExp,exponent,deltaFactor,ratio");

    CountReport pp =
        count_monomial_factorisations(3, PrimePower(7, 2), CountMethod::closedform, cfg);
    std::vector<std::string> f = split_csv(count_report_csv_row(pp));
    REQUIRE(f.size() == 9);
    CHECK(f[0] == "closedform");
    CHECK(f[1] == "3");
    CHECK(f[2] == "49");
    CHECK(f[3] == "49");
    CHECK(f[4] == "7");
    CHECK(f[5] == "1");
    CHECK(f[6] == "4");
    // the CSV prints approx at default stream precision (6 significant digits)
    CHECK(std::stod(f[7]) == Catch::Approx(1.0 / 2401).epsilon(1e-4));
    CHECK(std::stod(f[8]) >= 0.0);

    // composite rows leave the prime-power columns empty
    CountReport composite = brute_force_factorisation_count({0, 0}, BigInt(45), cfg);
    std::vector<std::string> g = split_csv(count_report_csv_row(composite));
    REQUIRE(g.size() == 9);
    CHECK(g[0] == "bruteforce");
    CHECK(g[2] == "45");
    CHECK(g[3] == "3");
    CHECK(g[4].empty());
    CHECK(g[5].empty());
    CHECK(g[6].empty());
    CHECK(std::stod(g[7]) == Catch::Approx(3.0 / 2025).epsilon(1e-4));
}

TEST_CASE("structured reports carry their key fields into JSON") {
    RunConfig cfg;

    json cert = certificate_to_json(powersum_certificate(4, 7, 2, cfg));
    CHECK(cert["status"] == "certified-structural");
    CHECK_FALSE(cert.contains("witness"));

    MultiPoly x = MultiPoly::variable(2, 0);
    json failed =
        certificate_to_json(check_nondegeneracy(PolySystem::make(2, {x * x}), 7, 1, cfg));
    CHECK(failed["status"] == "failed");
    REQUIRE(failed.contains("witness"));
    CHECK(failed["witness"]["extensionDegree"] == 1);
    CHECK(failed["witnessPrefix"] == 1);

    json census = census_to_json(variety_census(PolySystem::power_sums(3), 2, 7, cfg));
    CHECK(census["affineCount"] == "13");
    CHECK(census["deviation"] == "1");

    json crt = crt_to_json(crt_count(2, factor_modulus(BigInt(45)),
                                     CountMethod::closedform, cfg));
    CHECK(crt["total"]["rawCount"] == "3");
    // the rational 3/45^2 arrives reduced
    CHECK(crt["normalized"]["num"] == "1");
    CHECK(crt["normalized"]["den"] == "675");
    CHECK(crt["perPrime"].size() == 2);

    json cubic = cubic_to_json(cubic_count(7, 2));
    CHECK(cubic["report"]["rawCount"] == "49");
    CHECK(cubic["profile"]["kappa"] == 1);
    CHECK(cubic["ratio"] == 1.0);

    json eps = epsilon_report_to_json(
        epsilon_bound_report(2, factor_modulus(BigInt(105)), 0.5, 16.0, cfg));
    CHECK(eps["withinBound"] == true);
    CHECK(eps["perPrime"].size() == 3);
}
