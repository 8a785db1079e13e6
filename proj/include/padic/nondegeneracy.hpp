#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "padic/config.hpp"
#include "padic/polynomial.hpp"
#include "padic/residue.hpp"

namespace padic {

enum class CertStatus { CertifiedStructural, VerifiedUpToK, Failed };

// Witness location: a projective point over F_{p^j}, coordinates stored as
// field-element indices (for j = 1 the index is the residue itself).
struct ProjectivePoint {
    u32 extensionDegree = 1;
    std::vector<u64> coordIndices;
};

struct NonDegCertificate {
    std::string systemId;
    u64 p = 0;
    u32 requestedExtension = 0;
    std::vector<u32> checkedExtensions;
    CertStatus status = CertStatus::Failed;
    bool capReached = false;
    std::optional<ProjectivePoint> witness;
    // Shortest prefix f_1..f_r whose Jacobian drops rank at the witness.
    std::optional<u32> witnessPrefix;
    std::string detail;

    bool usable() const {
        return status == CertStatus::CertifiedStructural ||
               (status == CertStatus::VerifiedUpToK && !checkedExtensions.empty());
    }
};

namespace detail {

inline FieldElt eval_poly_fq(const GaloisField& fq, const MultiPoly& f,
                             const std::vector<FieldElt>& point) {
    FieldElt acc = fq.zero();
    for (const auto& t : f.terms()) {
        FieldElt v = fq.from_residue(mod_reduce(t.coeff, fq.p()));
        for (u32 i = 0; i < f.nvars(); ++i) {
            if (t.exponents[i] == 0) continue;
            v = fq.mul(v, fq.pow(point[i], t.exponents[i]));
        }
        acc = fq.add(acc, v);
    }
    return acc;
}

// Incremental row reduction over F_q. Feeding rows one at a time; a row that
// reduces to zero witnesses a rank drop at that prefix length.
class IncrementalRank {
  public:
    explicit IncrementalRank(const GaloisField& fq) : fq_(&fq) {}

    bool add_row(std::vector<FieldElt> row) {
        for (const auto& [col, pivot] : pivots_) {
            if (fq_->is_zero(row[col])) continue;
            FieldElt c = row[col];
            for (std::size_t j = 0; j < row.size(); ++j)
                row[j] = fq_->sub(row[j], fq_->mul(c, pivot[j]));
        }
        std::size_t lead = row.size();
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!fq_->is_zero(row[j])) {
                lead = j;
                break;
            }
        if (lead == row.size()) return false;
        FieldElt inv = fq_->inv(row[lead]);
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = fq_->mul(inv, row[j]);
        pivots_.emplace_back(lead, std::move(row));
        return true;
    }

  private:
    const GaloisField* fq_;
    std::vector<std::pair<std::size_t, std::vector<FieldElt>>> pivots_;
};

}  // namespace detail

inline std::string system_label(const PolySystem& s) {
    std::string id = "system(n=" + std::to_string(s.nvars) + ",deg=";
    for (std::size_t i = 0; i < s.degrees.size(); ++i)
        id += (i ? "," : "") + std::to_string(s.degrees[i]);
    return id + ")";
}

// Checks the rank condition at every projective point of the prefix
// varieties over F_{p^j}, j = 1..maxExtension. Enumeration is decisive for
// the extensions it covers; it certifies nothing beyond them.
inline NonDegCertificate check_nondegeneracy(const PolySystem& s, u64 p, u32 maxExtension = 2,
                                             const RunConfig& cfg = {},
                                             const std::string& label = "") {
    if (!is_prime_u64(p)) throw BadInput("check_nondegeneracy needs a prime p");
    if (maxExtension < 1) throw BadInput("maxExtension must be >= 1");
    const u32 n = s.nvars;
    const u32 m = s.m();
    auto jac = jacobian(s);

    NonDegCertificate cert;
    cert.systemId = label.empty() ? system_label(s) : label;
    cert.p = p;
    cert.requestedExtension = maxExtension;
    cert.status = CertStatus::VerifiedUpToK;

    BigInt budgetUsed = 0;
    for (u32 j = 1; j <= maxExtension; ++j) {
        BigInt points = (big_pow(BigInt(p), static_cast<u64>(j) * n) - 1) /
                        (big_pow(BigInt(p), j) - 1);
        if (budgetUsed + points > cfg.maxCandidates) {
            if (j == 1)
                throw CapExceeded("non-degeneracy check budget exceeded at the base field",
                                  points, BigInt(cfg.maxCandidates));
            cert.capReached = true;
            cert.detail = "budget stopped the check before extension degree " + std::to_string(j);
            break;
        }
        budgetUsed += points;

        GaloisField fq(p, j, std::max<u64>(1'000'000, u64_pow_checked(p, j)));
        const u64 q = fq.size();
        std::vector<FieldElt> point(n, fq.zero());
        // Representatives: first nonzero coordinate normalized to 1.
        for (u32 pivotVar = 0; pivotVar < n; ++pivotVar) {
            for (u32 i = 0; i < pivotVar; ++i) point[i] = fq.zero();
            point[pivotVar] = fq.one();
            u32 freeVars = n - pivotVar - 1;
            u64 combos = 1;
            for (u32 i = 0; i < freeVars; ++i) combos *= q;
            for (u64 idx = 0; idx < combos; ++idx) {
                u64 t = idx;
                for (u32 i = pivotVar + 1; i < n; ++i) {
                    point[i] = fq.from_index(t % q);
                    t /= q;
                }
                u32 vanishing = 0;
                while (vanishing < m &&
                       fq.is_zero(detail::eval_poly_fq(fq, s.polys[vanishing], point)))
                    ++vanishing;
                if (vanishing == 0) continue;
                detail::IncrementalRank rank(fq);
                for (u32 r = 0; r < vanishing; ++r) {
                    std::vector<FieldElt> row(n, fq.zero());
                    for (u32 c = 0; c < n; ++c)
                        row[c] = detail::eval_poly_fq(fq, jac[r][c], point);
                    if (!rank.add_row(std::move(row))) {
                        cert.status = CertStatus::Failed;
                        ProjectivePoint w;
                        w.extensionDegree = j;
                        for (u32 c = 0; c < n; ++c) w.coordIndices.push_back(fq.to_index(point[c]));
                        cert.witness = std::move(w);
                        cert.witnessPrefix = r + 1;
                        cert.detail = "Jacobian of the first " + std::to_string(r + 1) +
                                      " forms drops rank on their common zero";
                        return cert;
                    }
                }
            }
        }
        cert.checkedExtensions.push_back(j);
    }
    return cert;
}

// Power sums P_1..P_n are non-degenerate whenever p > n: any projective zero
// of a prefix has r distinct nonzero coordinate values, and the Jacobian
// minor on those columns is a scaled Vandermonde determinant, nonzero since
// r! and the value differences are units. No enumeration needed.
inline NonDegCertificate powersum_certificate(u32 n, u64 p, u32 maxExtension = 2,
                                              const RunConfig& cfg = {}) {
    if (!is_prime_u64(p)) throw BadInput("powersum_certificate needs a prime p");
    if (n < 1) throw BadInput("powersum_certificate needs n >= 1");
    std::string id = "powersums(n=" + std::to_string(n) + ")";
    if (p > n) {
        NonDegCertificate cert;
        cert.systemId = id;
        cert.p = p;
        cert.requestedExtension = 0;
        cert.status = CertStatus::CertifiedStructural;
        cert.detail = "p > n: Vandermonde minors of the power-sum Jacobian are units";
        return cert;
    }
    return check_nondegeneracy(PolySystem::power_sums(n), p, maxExtension, cfg, id);
}

struct VarietyCensus {
    u32 n = 0;
    u32 r = 0;
    u64 p = 0;
    BigInt affineCount;  // zeros of f_1..f_r in F_p^n, origin included
    BigInt projCount;    // (affineCount - 1) / (p - 1)
    BigInt expected;     // |P^(n-r-1)(F_p)|
    BigInt deviation;    // projCount - expected
};

// Pedestrian census of the prefix variety over F_p. Deliberately independent
// of the tuned counting engines so the two can cross-check each other.
inline VarietyCensus variety_census(const PolySystem& s, u32 r, u64 p,
                                    const RunConfig& cfg = {}) {
    if (!is_prime_u64(p)) throw BadInput("variety_census needs a prime p");
    if (r < 1 || r > s.m()) throw BadInput("prefix length out of range");
    const u32 n = s.nvars;
    BigInt total = big_pow(BigInt(p), n);
    if (total > cfg.maxCandidates)
        throw CapExceeded("census budget exceeded", total, BigInt(cfg.maxCandidates));

    // coefficients reduced once; the walk itself stays a plain odometer
    std::vector<std::vector<std::pair<u64, std::vector<u32>>>> reduced(r);
    for (u32 i = 0; i < r; ++i)
        for (const auto& t : s.polys[i].terms())
            reduced[i].emplace_back(mod_reduce(t.coeff, p), t.exponents);

    u64 count = 0;
    std::vector<u64> x(n, 0);
    u64 totalPts = total.convert_to<u64>();
    for (u64 it = 0; it < totalPts; ++it) {
        bool vanishes = true;
        for (u32 i = 0; i < r && vanishes; ++i) {
            u64 acc = 0;
            for (const auto& [c, exps] : reduced[i]) {
                u64 v = c;
                for (u32 k = 0; k < n; ++k)
                    if (exps[k] != 0) v = mulmod(v, powmod(x[k], exps[k], p), p);
                acc = addmod(acc, v, p);
            }
            vanishes = acc == 0;
        }
        count += vanishes;
        for (u32 i = n; i-- > 0;) {
            if (++x[i] < p) break;
            x[i] = 0;
        }
    }

    VarietyCensus c;
    c.n = n;
    c.r = r;
    c.p = p;
    c.affineCount = count;
    if ((c.affineCount - 1) % (p - 1) != 0)
        throw std::logic_error("homogeneous zero set not a union of punctured lines");
    c.projCount = (c.affineCount - 1) / (p - 1);
    c.expected = (big_pow(BigInt(p), n - r) - 1) / (p - 1);
    c.deviation = c.projCount - c.expected;
    return c;
}

// |V_r(F_p)| <= (prod of the first r degrees) * |P^(n-r-1)(F_p)|.
inline bool schwarz_zippel_check(const VarietyCensus& c, std::span<const u32> degrees) {
    if (degrees.size() < c.r) throw BadInput("degree list shorter than the prefix");
    BigInt prod = 1;
    for (u32 i = 0; i < c.r; ++i) prod *= degrees[i];
    return c.projCount <= prod * c.expected;
}

struct LangWeilRow {
    u64 p = 0;
    BigInt deviation;
    double ratio = 0.0;  // |deviation| / p^(n - r - 3/2)
};

struct LangWeilReport {
    u32 r = 0;
    double threshold = 0.0;
    double maxRatio = 0.0;
    bool pass = false;
    std::vector<LangWeilRow> rows;
};

// Deviations of |V_r| from |P^(n-r-1)| should sit inside C * p^(n-r-3/2).
// Default C = 4 (prod degrees)^2; the comparison itself is exact.
inline LangWeilReport lang_weil_check(const std::vector<VarietyCensus>& censuses,
                                      std::span<const u32> degrees, u32 r,
                                      std::optional<double> threshold = std::nullopt) {
    if (censuses.size() < 3) throw BadInput("lang_weil_check needs at least three primes");
    const u32 n = censuses.front().n;
    if (r < 1 || r > degrees.size() || r + 2 > n)
        throw BadInput("lang_weil_check needs 1 <= r <= min(m, n-2)");
    for (std::size_t i = 0; i < censuses.size(); ++i) {
        if (censuses[i].n != n || censuses[i].r != r)
            throw BadInput("census entries disagree on n or r");
        for (std::size_t j = i + 1; j < censuses.size(); ++j)
            if (censuses[i].p == censuses[j].p) throw BadInput("census primes must be distinct");
    }

    LangWeilReport rep;
    rep.r = r;
    if (threshold) {
        rep.threshold = *threshold;
    } else {
        double prod = 1.0;
        for (u32 i = 0; i < r; ++i) prod *= degrees[i];
        rep.threshold = 4.0 * prod * prod;
    }
    rep.pass = true;
    for (const auto& c : censuses) {
        LangWeilRow row;
        row.p = c.p;
        row.deviation = c.deviation;
        // ratio^2 = deviation^2 / p^(2(n-r) - 3), kept exact for the verdict
        BigInt dev2 = c.deviation * c.deviation;
        BigInt scale = big_pow(BigInt(c.p), 2 * (static_cast<u64>(n) - r) - 3);
        row.ratio = std::sqrt(BigRational(dev2, scale).convert_to<double>());
        if (BigRational(dev2, scale) > BigRational(rep.threshold) * BigRational(rep.threshold))
            rep.pass = false;
        rep.maxRatio = std::max(rep.maxRatio, row.ratio);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// Number of z in F_p^n with <g_i, z> = c_i for all i. No constraints means all of F_p^n.
inline BigInt hyperplane_count(u32 n, const std::vector<std::vector<u64>>& gradients,
                               const std::vector<u64>& targets, u64 p) {
    if (!is_prime_u64(p)) throw BadInput("hyperplane_count needs a prime p");
    if (n == 0) throw BadInput("hyperplane_count needs at least one variable");
    if (gradients.size() != targets.size())
        throw BadInput("gradient and target counts disagree");
    if (gradients.empty()) return big_pow(BigInt(p), n);
    std::vector<std::vector<u64>> mat;
    for (std::size_t i = 0; i < gradients.size(); ++i) {
        if (gradients[i].size() != n) throw BadInput("gradient rows disagree on arity");
        std::vector<u64> row = gradients[i];
        for (auto& v : row) v %= p;
        row.push_back(targets[i] % p);
        mat.push_back(std::move(row));
    }

    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < mat.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < mat.size() && mat[pivot][col] == 0) ++pivot;
        if (pivot == mat.size()) continue;
        std::swap(mat[rank], mat[pivot]);
        u64 inv = powmod(mat[rank][col], p - 2, p);
        for (auto& v : mat[rank]) v = mulmod(v, inv, p);
        for (std::size_t i = 0; i < mat.size(); ++i) {
            if (i == rank || mat[i][col] == 0) continue;
            u64 c = mat[i][col];
            for (std::size_t j = col; j <= n; ++j)
                mat[i][j] = submod(mat[i][j], mulmod(c, mat[rank][j], p), p);
        }
        ++rank;
    }
    for (std::size_t i = rank; i < mat.size(); ++i)
        if (mat[i][n] != 0) return 0;  // inconsistent
    return big_pow(BigInt(p), n - rank);
}

}  // namespace padic
