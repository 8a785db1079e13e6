// padic-count: solution counts for monomial factorisations and homogeneous
// systems over Z/p^alpha and composite moduli.
//
// Exit codes: 0 success, 2 bad input, 3 work budget exceeded,
// 4 verification or certificate failure.

#include <CLI11.hpp>

#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <padic/padic.hpp>

namespace {

using namespace padic;

BigInt parse_bigint(const std::string& text) {
    try {
        return BigInt(text);
    } catch (const std::exception&) {
        throw BadInput("malformed integer '" + text + "'");
    }
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw BadInput(std::string("empty entry in ") + what);
        if constexpr (std::is_same_v<T, BigInt>) {
            out.push_back(parse_bigint(item));
        } else {
            BigInt v = parse_bigint(item);
            if (v < 0 || v > std::numeric_limits<T>::max())
                throw BadInput(std::string(what) + " entry out of range: " + item);
            out.push_back(v.convert_to<T>());
        }
    }
    if (out.empty()) throw BadInput(std::string(what) + " must be a comma-separated list");
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json suite_report_to_json(const SuiteReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
    return json{{"suite", rep.suite},
                {"pass", rep.all_pass()},
                {"elapsedSeconds", rep.elapsedSeconds},
                {"checks", checks}};
}

struct CountArgs {
    u32 n = 0;
    u64 p = 0;
    u32 alpha = 1;
    std::string modText;
    std::string method = "all";
    std::string systemPath;
    std::string rootsText;
};

// Targets for the elementary-symmetric formulation: e_i = (-1)^i c_i where
// c_i is the X^(n-i) coefficient of prod (X - y_i).
std::vector<BigInt> elementary_targets(const std::vector<BigInt>& roots, const BigInt& M) {
    std::vector<BigInt> coeffs = expand_linear_product(roots, M);
    std::vector<BigInt> targets;
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        targets.push_back(i % 2 == 1 && coeffs[i] != 0 ? M - coeffs[i] : coeffs[i]);
    return targets;
}

struct MethodOutcome {
    std::vector<CountReport> reports;
    std::vector<std::pair<std::string, std::string>> skipped;
    std::optional<CapExceeded> firstCap;
    std::optional<NonDegeneracyUnavailable> firstUnavailable;

    template <typename Fn>
    void attempt(const std::string& name, Fn&& fn) {
        try {
            reports.push_back(fn());
        } catch (const CapExceeded& e) {
            skipped.emplace_back(name, e.what());
            if (!firstCap) firstCap = e;
        } catch (const NonDegeneracyUnavailable& e) {
            skipped.emplace_back(name, e.what());
            if (!firstUnavailable) firstUnavailable = e;
        }
    }

    bool agree() const {
        for (const auto& r : reports)
            if (r.rawCount != reports.front().rawCount) return false;
        return true;
    }

    // With nothing to show, surface the reason everything was skipped.
    void require_any() const {
        if (!reports.empty()) return;
        if (firstCap) throw *firstCap;
        if (firstUnavailable) throw *firstUnavailable;
        throw BadInput("no counting method applicable");
    }
};

int emit_outcome(const MethodOutcome& out, const RunConfig& cfg, json header) {
    if (cfg.output == OutputFormat::csv) {
        std::cout << count_report_csv_header() << "\n";
        for (const auto& r : out.reports) std::cout << count_report_csv_row(r) << "\n";
        for (const auto& [m, why] : out.skipped)
            std::cerr << "skipped " << m << ": " << why << "\n";
    } else {
        json reports = json::array();
        for (const auto& r : out.reports) reports.push_back(count_report_to_json(r));
        json skipped = json::array();
        for (const auto& [m, why] : out.skipped)
            skipped.push_back(json{{"method", m}, {"reason", why}});
        header["reports"] = reports;
        header["skipped"] = skipped;
        header["agree"] = out.agree();
        emit(header);
    }
    return out.agree() ? 0 : 4;
}

int run_count(const CountArgs& a, const RunConfig& cfg) {
    const bool haveSystem = !a.systemPath.empty();
    const bool haveRoots = !a.rootsText.empty();
    if (haveSystem && haveRoots)
        throw BadInput("--system and --roots are mutually exclusive");

    BigInt N;
    std::optional<FactoredModulus> fm;
    std::optional<PrimePower> pp;
    if (!a.modText.empty()) {
        if (a.p != 0) throw BadInput("give either --mod or --p/--alpha, not both");
        N = parse_bigint(a.modText);
        fm = factor_modulus(N);
        if (fm->factors.size() == 1)
            pp = PrimePower(fm->factors[0].first, fm->factors[0].second);
    } else {
        if (a.p == 0) throw BadInput("need --mod N or --p P [--alpha A]");
        pp = PrimePower(a.p, a.alpha);
        N = pp->modulus();
    }

    std::optional<PolySystem> system;
    u32 n = a.n;
    if (haveSystem) {
        system = system_from_file(a.systemPath);
        if (n != 0 && n != system->nvars)
            throw BadInput("--n disagrees with the system file");
        n = system->nvars;
    }
    if (n == 0) throw BadInput("need --n (or --system)");

    std::vector<BigInt> roots;
    if (haveRoots) {
        roots = parse_list<BigInt>(a.rootsText, "--roots");
        if (roots.size() != n) throw BadInput("--roots needs exactly n entries");
        for (auto& r : roots) r = ((r % N) + N) % N;
        if (a.method == "closedform")
            throw BadInput("the closed form covers monomial factorisations only; "
                           "drop --roots or pick an enumeration method");
    }

    const bool wantAll = a.method == "all";
    MethodOutcome out;
    json header{{"n", n}, {"modulus", N.str()}};

    if (system) {
        header["system"] = system_label(*system);
        if (!pp) {
            if (!wantAll && a.method != "bruteforce")
                throw BadInput("composite moduli with --system support bruteforce only");
            out.attempt("bruteforce",
                        [&] { return brute_force_system_count(*system, N, cfg); });
        } else {
            if (wantAll || a.method == "closedform")
                out.attempt("closedform", [&] {
                    DegreeProfile dp(n, std::vector<u32>(system->degrees.begin(),
                                                         system->degrees.end()));
                    BaseCounts bc = base_counts(*system, pp->p, cfg);
                    NonDegCertificate cert = check_nondegeneracy(*system, pp->p, 2, cfg);
                    return closed_form_count(dp, bc, pp->alpha, cert);
                });
            if (wantAll || a.method == "lifting")
                out.attempt("lifting", [&] { return lifting_count(*system, *pp, cfg); });
            if (wantAll || a.method == "bruteforce")
                out.attempt("bruteforce", [&] {
                    return with_prime_power(brute_force_system_count(*system, N, cfg), *pp);
                });
        }
        out.require_any();
        return emit_outcome(out, cfg, std::move(header));
    }

    if (haveRoots) {
        json rootsJson = json::array();
        for (const auto& r : roots) rootsJson.push_back(r.str());
        header["roots"] = rootsJson;
        if (!pp) {
            if (!wantAll && a.method != "bruteforce")
                throw BadInput("composite moduli with --roots support bruteforce only");
            out.attempt("bruteforce",
                        [&] { return brute_force_factorisation_count(roots, N, cfg); });
        } else {
            if (wantAll || a.method == "lifting")
                out.attempt("lifting", [&] {
                    if (pp->p > n)
                        return lifting_count(PolySystem::power_sums(n), *pp, cfg,
                                             powersums_from_roots(roots, N));
                    return lifting_count(PolySystem::elementary_system(n), *pp, cfg,
                                         elementary_targets(roots, N));
                });
            if (wantAll || a.method == "bruteforce")
                out.attempt("bruteforce", [&] {
                    return with_prime_power(brute_force_factorisation_count(roots, N, cfg),
                                            *pp);
                });
        }
        out.require_any();
        return emit_outcome(out, cfg, std::move(header));
    }

    // Monomial factorisation counts.
    if (pp) {
        auto methods = wantAll
                           ? std::vector<std::string>{"closedform", "lifting", "bruteforce"}
                           : std::vector<std::string>{a.method};
        for (const auto& m : methods)
            out.attempt(m, [&] {
                return count_monomial_factorisations(n, *pp, method_from_name(m), cfg);
            });
        out.require_any();
        return emit_outcome(out, cfg, std::move(header));
    }

    // Composite modulus: per-prime product, cross-checked against direct
    // enumeration when the budget allows.
    if (a.method == "bruteforce") {
        out.attempt("bruteforce",
                    [&] { return brute_force_factorisation_count(
                              std::vector<BigInt>(n, 0), N, cfg); });
        out.require_any();
        return emit_outcome(out, cfg, std::move(header));
    }

    CountMethod perPrime =
        wantAll ? CountMethod::closedform : method_from_name(a.method);
    CrtResult crt = crt_count(n, *fm, perPrime, cfg);
    bool agree = true;
    header["crt"] = crt_to_json(crt);
    if (wantAll) {
        try {
            CountReport direct =
                brute_force_factorisation_count(std::vector<BigInt>(n, 0), N, cfg);
            agree = direct.rawCount == crt.total.rawCount;
            header["direct"] = count_report_to_json(direct);
        } catch (const CapExceeded& e) {
            header["directSkipped"] = e.what();
        }
    }
    header["agree"] = agree;
    if (cfg.output == OutputFormat::csv) {
        std::cout << count_report_csv_header() << "\n"
                  << count_report_csv_row(crt.total) << "\n";
        for (const auto& r : crt.perPrime) std::cout << count_report_csv_row(r) << "\n";
    } else {
        emit(header);
    }
    return agree ? 0 : 4;
}

int run_predict(u32 n, u32 alpha, const std::string& degreesText) {
    DegreeProfile dp = degreesText.empty()
                           ? DegreeProfile::power_sums(n)
                           : DegreeProfile(n, parse_list<u32>(degreesText, "--degrees"));
    ExponentProfile ep = build_exponent_profile(dp, alpha);
    json j = exponent_profile_to_json(ep);
    j["triangular"] = triangular_to_json(triangular_data(n));
    emit(j);
    return 0;
}

int run_basecounts(u32 n, u64 p, const std::string& systemPath, const RunConfig& cfg) {
    if (systemPath.empty() && n == 0) throw BadInput("need --n (or --system)");
    PolySystem s = systemPath.empty() ? PolySystem::power_sums(n)
                                      : system_from_file(systemPath);
    emit(base_counts_to_json(base_counts(s, p, cfg)));
    return 0;
}

int run_nondeg(u32 n, u64 p, u32 maxExtension, const std::string& systemPath,
               const RunConfig& cfg) {
    NonDegCertificate cert;
    if (!systemPath.empty()) {
        cert = check_nondegeneracy(system_from_file(systemPath), p, maxExtension, cfg);
    } else {
        if (n == 0) throw BadInput("need --n (or --system)");
        cert = powersum_certificate(n, p, maxExtension, cfg);
    }
    emit(certificate_to_json(cert));
    return cert.status == CertStatus::Failed ? 4 : 0;
}

int run_sweep(u32 n, u64 p, u32 alphaMax, const std::string& method, const RunConfig& cfg) {
    if (alphaMax < 1) throw BadInput("--alpha-max must be >= 1");
    std::vector<CountReport> reports;
    if (method == "closedform") {
        PolySystem s = PolySystem::power_sums(n);
        if (p <= n)
            throw NonDegeneracyUnavailable("closed form needs p > n for the power-sum "
                                           "reduction");
        BaseCounts bc = base_counts(s, p, cfg);
        NonDegCertificate cert = powersum_certificate(n, p, 2, cfg);
        DegreeProfile dp = DegreeProfile::power_sums(n);
        for (u32 alpha = 1; alpha <= alphaMax; ++alpha)
            reports.push_back(closed_form_count(dp, bc, alpha, cert));
    } else {
        for (u32 alpha = 1; alpha <= alphaMax; ++alpha)
            reports.push_back(count_monomial_factorisations(n, PrimePower(p, alpha),
                                                            method_from_name(method), cfg));
    }

    if (cfg.output == OutputFormat::csv) {
        std::cout << sweep_csv_header() << "\n";
        for (const auto& r : reports) {
            auto [e, delta] = e_n_alpha(n, static_cast<i64>(r.primePower->alpha));
            double ratio =
                (r.normalized->scale_pow(e).to_rational() / delta).convert_to<double>();
            std::cout << r.primePower->alpha << ',' << r.rawCount.str() << ','
                      << r.normalized->num().str() << ',' << r.normalized->denom_exp() << ','
                      << e << ',' << delta << ',' << ratio << "\n";
        }
    } else {
        json rows = json::array();
        for (const auto& r : reports) {
            auto [e, delta] = e_n_alpha(n, static_cast<i64>(r.primePower->alpha));
            double ratio =
                (r.normalized->scale_pow(e).to_rational() / delta).convert_to<double>();
            json row = count_report_to_json(r);
            row["exponent"] = e;
            row["deltaFactor"] = delta;
            row["ratio"] = ratio;
            rows.push_back(std::move(row));
        }
        emit(json{{"n", n}, {"p", p}, {"method", method}, {"rows", rows}});
    }
    return 0;
}

int run_verify(std::vector<std::string> names, const RunConfig& cfg) {
    if (names.empty())
        for (const auto& s : all_suites()) names.push_back(s.name);
    bool allPass = true;
    json suites = json::array();
    for (const auto& name : names) {
        SuiteReport rep = run_suite(name, cfg);
        allPass = allPass && rep.all_pass();
        if (cfg.output == OutputFormat::json) {
            suites.push_back(suite_report_to_json(rep));
        } else {
            for (const auto& c : rep.checks)
                std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << rep.suite << ": " << c.name
                          << " (" << c.details << ")\n";
        }
    }
    if (cfg.output == OutputFormat::json)
        emit(json{{"pass", allPass}, {"suites", suites}});
    else
        std::cout << (allPass ? "all suites pass" : "some checks failed") << "\n";
    return allPass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"counts of factorisations of X^n and of homogeneous system solutions "
                 "over Z/p^alpha and composite moduli"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json";
    bool strict = false;
    app.add_option("--max-candidates", cfg.maxCandidates,
                   "budget on enumeration candidates")
        ->capture_default_str();
    app.add_option("--max-frontier", cfg.maxFrontier,
                   "budget on lifting work per level (frontier size times p^n)")
        ->capture_default_str();
    app.add_option("--threads", cfg.workers,
                   "worker threads; 0 = auto, PADIC_COUNT_THREADS overrides");
    app.add_option("--seed", cfg.seed, "seed for randomized identity checks")
        ->capture_default_str();
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_flag("--strict", strict,
                 "refuse to substitute enumeration when the closed form is unavailable");

    CountArgs countArgs;
    auto* count = app.add_subcommand("count", "count solutions by one or all methods");
    count->fallthrough();
    count->add_option("--n", countArgs.n, "number of variables / linear factors");
    count->add_option("--p", countArgs.p, "prime modulus base");
    count->add_option("--alpha", countArgs.alpha, "prime power exponent")
        ->capture_default_str();
    count->add_option("--mod", countArgs.modText, "modulus, prime power or composite");
    count->add_option("--method", countArgs.method, "all, closedform, lifting, bruteforce")
        ->check(CLI::IsMember({"all", "closedform", "lifting", "bruteforce"}))
        ->capture_default_str();
    count->add_option("--system", countArgs.systemPath, "JSON system file to count instead");
    count->add_option("--roots", countArgs.rootsText,
                      "comma-separated target roots y_1,...,y_n");

    u32 predictN = 0, predictAlpha = 0;
    std::string predictDegrees;
    auto* predict = app.add_subcommand("predict", "exponent profile for a degree profile");
    predict->fallthrough();
    predict->add_option("--n", predictN, "number of variables")->required();
    predict->add_option("--alpha", predictAlpha, "prime power exponent")->required();
    predict->add_option("--degrees", predictDegrees,
                        "comma-separated degrees d_1<=...<=d_m (default 1..n)");

    u32 baseN = 0;
    u64 baseP = 0;
    std::string baseSystem;
    auto* base = app.add_subcommand("basecounts", "prefix counts over F_p");
    base->fallthrough();
    base->add_option("--n", baseN, "power-sum system size");
    base->add_option("--p", baseP, "prime")->required();
    base->add_option("--system", baseSystem, "JSON system file");

    u32 nondegN = 0, nondegExt = 2;
    u64 nondegP = 0;
    std::string nondegSystem;
    auto* nondeg = app.add_subcommand("nondeg", "non-degeneracy certificate over F_p");
    nondeg->fallthrough();
    nondeg->add_option("--n", nondegN, "power-sum system size");
    nondeg->add_option("--p", nondegP, "prime")->required();
    nondeg->add_option("--max-extension", nondegExt, "largest extension degree to check")
        ->capture_default_str();
    nondeg->add_option("--system", nondegSystem, "JSON system file");

    u32 sweepN = 0, sweepAlphaMax = 0;
    u64 sweepP = 0;
    std::string sweepMethod = "closedform";
    auto* sweep = app.add_subcommand("sweep", "counts across alpha = 1..A for fixed n, p");
    sweep->fallthrough();
    sweep->add_option("--n", sweepN, "number of linear factors")->required();
    sweep->add_option("--p", sweepP, "prime")->required();
    sweep->add_option("--alpha-max", sweepAlphaMax, "largest exponent")->required();
    sweep->add_option("--method", sweepMethod, "closedform, lifting, bruteforce")
        ->check(CLI::IsMember({"closedform", "lifting", "bruteforce"}))
        ->capture_default_str();

    std::vector<std::string> suiteNames;
    auto* verify = app.add_subcommand("verify", "run self-check suites");
    verify->fallthrough();
    verify->add_option("--suite", suiteNames,
                       "suite name (repeatable); default runs every suite");

    try {
        app.parse(argc, argv);
        cfg.output = format == "csv" ? OutputFormat::csv : OutputFormat::json;
        cfg.allowFallback = !strict;

        if (*count) return run_count(countArgs, cfg);
        if (*predict) return run_predict(predictN, predictAlpha, predictDegrees);
        if (*base) return run_basecounts(baseN, baseP, baseSystem, cfg);
        if (*nondeg) return run_nondeg(nondegN, nondegP, nondegExt, nondegSystem, cfg);
        if (*sweep) return run_sweep(sweepN, sweepP, sweepAlphaMax, sweepMethod, cfg);
        if (*verify) return run_verify(suiteNames, cfg);
        throw BadInput("no subcommand given");
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const NonDegeneracyUnavailable& e) {
        std::cerr << "unavailable: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
