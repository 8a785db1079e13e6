#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace padic {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Exit-code mapping used by the CLI: BadInput -> 2, CapExceeded -> 3.
// Verification failures are an outcome (exit 4), not an exception.
struct BadInput : std::runtime_error {
    explicit BadInput(const std::string& what) : std::runtime_error(what) {}
};

struct CapExceeded : std::runtime_error {
    BigInt required;
    BigInt limit;
    CapExceeded(const std::string& what, BigInt required_, BigInt limit_)
        : std::runtime_error(what + " (required " + required_.str() +
                             ", limit " + limit_.str() + ")"),
          required(std::move(required_)),
          limit(std::move(limit_)) {}
};

// Raised when a closed-form evaluation is requested without a usable
// non-degeneracy certificate. Callers may catch it and fall back to an
// enumeration method.
struct NonDegeneracyUnavailable : std::runtime_error {
    explicit NonDegeneracyUnavailable(const std::string& what)
        : std::runtime_error(what) {}
};

inline u64 addmod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    u64 s = a + b;  // no overflow for m < 2^63
    return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : a + m - b;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin; the base set below decides primality for all
// 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline u64 next_prime_after(u64 n) {
    u64 c = n + 1;
    while (!is_prime_u64(c)) ++c;
    return c;
}

// Ceiling division for a >= 0, b > 0.
inline i64 ceil_div(i64 a, i64 b) { return (a + b - 1) / b; }

inline BigInt big_pow(const BigInt& base, u64 exp) {
    BigInt r = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// Returns base^exp if it fits in u64, throws otherwise.
inline u64 u64_pow_checked(u64 base, u32 exp) {
    u64 r = 1;
    for (u32 i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base)
            throw CapExceeded("power exceeds 64-bit range",
                              big_pow(BigInt(base), exp), BigInt(UINT64_MAX));
        r *= base;
    }
    return r;
}

inline u64 mod_reduce(const BigInt& v, u64 m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r.convert_to<u64>();
}

// Splits [0, total) into at most `workers` contiguous chunks.
inline std::vector<std::pair<u64, u64>> split_range(u64 total, unsigned workers) {
    if (workers == 0) workers = 1;
    std::vector<std::pair<u64, u64>> chunks;
    u64 per = total / workers;
    u64 extra = total % workers;
    u64 begin = 0;
    for (unsigned w = 0; w < workers && begin < total; ++w) {
        u64 len = per + (w < extra ? 1 : 0);
        if (len == 0) continue;
        chunks.emplace_back(begin, begin + len);
        begin += len;
    }
    return chunks;
}

// Runs fn(begin, end, slot) over the chunks of [0, total), in parallel when
// workers > 1. Results land in chunk order, so any later reduction is
// deterministic regardless of scheduling.
template <typename Result, typename Fn>
std::vector<Result> run_chunked(u64 total, unsigned workers, Fn&& fn) {
    auto chunks = split_range(total, workers);
    std::vector<Result> results(chunks.size());
    if (chunks.size() <= 1) {
        if (!chunks.empty()) fn(chunks[0].first, chunks[0].second, results[0]);
        return results;
    }
    std::vector<std::thread> threads;
    threads.reserve(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        threads.emplace_back([&, i] { fn(chunks[i].first, chunks[i].second, results[i]); });
    }
    for (auto& t : threads) t.join();
    return results;
}

}  // namespace padic
