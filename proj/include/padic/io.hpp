#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "padic/compose.hpp"
#include "padic/counting.hpp"
#include "padic/cubic.hpp"
#include "padic/exponents.hpp"
#include "padic/nondegeneracy.hpp"

namespace padic {

using json = nlohmann::json;

inline CountMethod method_from_name(const std::string& s) {
    if (s == "bruteforce") return CountMethod::bruteforce;
    if (s == "lifting") return CountMethod::lifting;
    if (s == "closedform") return CountMethod::closedform;
    throw BadInput("unknown method '" + s + "'");
}

inline BigInt bigint_from_json(const json& v) {
    if (v.is_number_integer()) return BigInt(v.get<i64>());
    if (v.is_string()) {
        try {
            return BigInt(v.get<std::string>());
        } catch (const std::exception&) {
            throw BadInput("malformed integer literal '" + v.get<std::string>() + "'");
        }
    }
    throw BadInput("expected an integer or integer string");
}

// {"powersums": n} or {"n": ..., "polys": [{"terms": [{"e": [...], "c": ...}]}]}
inline PolySystem system_from_json(const json& j) {
    if (!j.is_object()) throw BadInput("system must be a JSON object");
    if (j.contains("powersums")) {
        if (!j["powersums"].is_number_integer() || j["powersums"].get<i64>() < 1)
            throw BadInput("powersums shorthand needs a positive integer");
        return PolySystem::power_sums(static_cast<u32>(j["powersums"].get<i64>()));
    }
    if (!j.contains("n") || !j.contains("polys"))
        throw BadInput("system object needs fields 'n' and 'polys'");
    if (!j["n"].is_number_integer() || j["n"].get<i64>() < 1)
        throw BadInput("'n' must be a positive integer");
    u32 n = static_cast<u32>(j["n"].get<i64>());
    if (!j["polys"].is_array() || j["polys"].empty())
        throw BadInput("'polys' must be a nonempty array");
    std::vector<MultiPoly> polys;
    for (const auto& pj : j["polys"]) {
        if (!pj.is_object() || !pj.contains("terms") || !pj["terms"].is_array())
            throw BadInput("each polynomial needs a 'terms' array");
        std::vector<Monomial> terms;
        for (const auto& tj : pj["terms"]) {
            if (!tj.contains("e") || !tj.contains("c"))
                throw BadInput("each term needs fields 'e' and 'c'");
            Monomial t;
            if (!tj["e"].is_array() || tj["e"].size() != n)
                throw BadInput("exponent vector must have length n");
            for (const auto& e : tj["e"]) {
                if (!e.is_number_integer() || e.get<i64>() < 0)
                    throw BadInput("exponents must be nonnegative integers");
                t.exponents.push_back(static_cast<u32>(e.get<i64>()));
            }
            t.coeff = bigint_from_json(tj["c"]);
            terms.push_back(std::move(t));
        }
        polys.push_back(MultiPoly::from_terms(n, std::move(terms)));
    }
    return PolySystem::make(n, std::move(polys));
}

inline PolySystem system_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open system file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw BadInput("malformed JSON in " + path + ": " + e.what());
    }
    return system_from_json(j);
}

inline json ppow_to_json(const PPowRational& v) {
    return json{{"p", v.p()},
                {"num", v.num().str()},
                {"denomExp", v.denom_exp()},
                {"approx", v.approx()}};
}

inline PPowRational ppow_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("num") || !j.contains("denomExp"))
        throw BadInput("p-power rational needs fields p, num, denomExp");
    return PPowRational(j["p"].get<u64>(), bigint_from_json(j["num"]),
                        j["denomExp"].get<i64>());
}

inline json count_report_to_json(const CountReport& r) {
    json j{{"method", method_name(r.method)},
           {"n", r.nvars},
           {"modulus", r.modulus.str()},
           {"rawCount", r.rawCount.str()},
           {"elapsedSeconds", r.elapsedSeconds}};
    if (r.primePower) {
        j["p"] = r.primePower->p;
        j["alpha"] = r.primePower->alpha;
    }
    if (r.normalized) {
        j["normalized"] = ppow_to_json(*r.normalized);
    } else {
        BigInt den = big_pow(r.modulus, r.nvars);
        j["normalized"] = json{{"num", r.rawCount.str()},
                               {"den", den.str()},
                               {"approx", BigRational(r.rawCount, den).convert_to<double>()}};
    }
    return j;
}

inline CountReport count_report_from_json(const json& j) {
    CountReport r;
    r.method = method_from_name(j.at("method").get<std::string>());
    r.nvars = j.at("n").get<u32>();
    r.modulus = bigint_from_json(j.at("modulus"));
    r.rawCount = bigint_from_json(j.at("rawCount"));
    if (j.contains("elapsedSeconds")) r.elapsedSeconds = j["elapsedSeconds"].get<double>();
    if (j.contains("p")) {
        r.primePower = PrimePower(j["p"].get<u64>(), j.at("alpha").get<u32>());
        r.normalized = ppow_from_json(j.at("normalized"));
    }
    return r;
}

inline bool reports_equal(const CountReport& a, const CountReport& b) {
    bool eq = a.method == b.method && a.same_value(b) &&
              a.primePower.has_value() == b.primePower.has_value() &&
              a.normalized.has_value() == b.normalized.has_value();
    if (eq && a.primePower) eq = *a.primePower == *b.primePower;
    if (eq && a.normalized) eq = *a.normalized == *b.normalized;
    return eq;
}

inline json exponent_profile_to_json(const ExponentProfile& ep) {
    json cuts = json::array();
    for (i64 c : ep.alphaCuts) {
        if (c == kAlphaInfinity)
            cuts.push_back("inf");
        else
            cuts.push_back(c);
    }
    return json{{"n", ep.profile.n},
                {"degrees", ep.profile.degrees},
                {"alpha", ep.alpha},
                {"alphaCuts", cuts},
                {"admissible", ep.admissible},
                {"exponents", ep.exponents},
                {"minimal", ep.minimal},
                {"argmins", ep.argmins},
                {"deltaFactor", ep.deltaFactor},
                {"cCoeffs", ep.cCoeffs}};
}

inline json triangular_to_json(const TriangularData& td) {
    return json{{"n", td.n},       {"rMinus", td.rMinus},
                {"rPlus", td.rPlus}, {"s", td.s},
                {"t", td.t},       {"isTriangular", td.isTriangular}};
}

inline json base_counts_to_json(const BaseCounts& bc) {
    json per = json::array();
    json norm = json::array();
    for (u32 r = 0; r < bc.perPrefix.size(); ++r) {
        per.push_back(bc.perPrefix[r].str());
        norm.push_back(ppow_to_json(bc.normalized(r)));
    }
    return json{{"p", bc.p}, {"n", bc.n}, {"perPrefix", per}, {"normalized", norm}};
}

inline std::string cert_status_name(CertStatus s) {
    switch (s) {
        case CertStatus::CertifiedStructural: return "certified-structural";
        case CertStatus::VerifiedUpToK: return "verified-up-to-k";
        case CertStatus::Failed: return "failed";
    }
    return "?";
}

inline json certificate_to_json(const NonDegCertificate& c) {
    json j{{"system", c.systemId},
           {"p", c.p},
           {"status", cert_status_name(c.status)},
           {"requestedExtension", c.requestedExtension},
           {"checkedExtensions", c.checkedExtensions},
           {"capReached", c.capReached},
           {"detail", c.detail}};
    if (c.witness) {
        j["witness"] = json{{"extensionDegree", c.witness->extensionDegree},
                            {"coordIndices", c.witness->coordIndices}};
        j["witnessPrefix"] = *c.witnessPrefix;
    }
    return j;
}

inline json census_to_json(const VarietyCensus& c) {
    return json{{"n", c.n},
                {"r", c.r},
                {"p", c.p},
                {"affineCount", c.affineCount.str()},
                {"projCount", c.projCount.str()},
                {"expected", c.expected.str()},
                {"deviation", c.deviation.str()}};
}

inline json crt_to_json(const CrtResult& r) {
    json per = json::array();
    for (const auto& rep : r.perPrime) per.push_back(count_report_to_json(rep));
    return json{{"total", count_report_to_json(r.total)},
                {"normalized",
                 json{{"num", BigInt(boost::multiprecision::numerator(r.normalized)).str()},
                      {"den", BigInt(boost::multiprecision::denominator(r.normalized)).str()},
                      {"approx", r.normalized.convert_to<double>()}}},
                {"perPrime", per}};
}

inline json cubic_to_json(const CubicCount& c) {
    return json{{"report", count_report_to_json(c.report)},
                {"profile", json{{"p", c.profile.p},
                                 {"kappa", c.profile.kappa},
                                 {"alpha", c.profile.alpha},
                                 {"lambda", c.profile.lambda},
                                 {"predictedExponent", c.profile.predictedExponent},
                                 {"predictedDeltaFactor", c.profile.predictedDeltaFactor}}},
                {"ratio", c.ratioApprox}};
}

inline json epsilon_report_to_json(const EpsilonBoundReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"p", row.p},
                            {"alpha", row.alpha},
                            {"exponent", row.exponent},
                            {"deltaFactor", row.deltaFactor},
                            {"rawCount", row.rawCount.str()}});
    return json{{"N", r.N.str()},
                {"n", r.n},
                {"epsilon", r.epsilon},
                {"constant", r.constant},
                {"exactNum", BigInt(boost::multiprecision::numerator(r.exact)).str()},
                {"exactDen", BigInt(boost::multiprecision::denominator(r.exact)).str()},
                {"ratio", r.ratioApprox},
                {"omegaTerm", r.omegaTerm},
                {"withinBound", r.withinBound},
                {"perPrime", rows}};
}

// CSV column sets are documented in the README and kept stable.
inline std::string count_report_csv_header() {
    return "method,n,modulus,rawCount,p,num,denomExp,approx,elapsedSeconds";
}

inline std::string count_report_csv_row(const CountReport& r) {
    std::ostringstream os;
    os << method_name(r.method) << ',' << r.nvars << ',' << r.modulus.str() << ','
       << r.rawCount.str() << ',';
    if (r.primePower && r.normalized)
        os << r.primePower->p << ',' << r.normalized->num().str() << ','
           << r.normalized->denom_exp() << ',' << r.normalized->approx();
    else
        os << ",,," << BigRational(r.rawCount, big_pow(r.modulus, r.nvars)).convert_to<double>();
    os << ',' << r.elapsedSeconds;
    return os.str();
}

inline std::string sweep_csv_header() {
    return "alpha,rawCount,num,denomExp,exponent,deltaFactor,ratio";
}

}  // namespace padic
