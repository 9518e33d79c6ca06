#include "chatelet/sieve.hpp"

#include <algorithm>
#include <mutex>

namespace chatelet {
namespace sieve {

static std::mutex table_mutex;

const std::vector<int32_t>& spf_table() {
    static std::vector<int32_t> table;
    std::lock_guard<std::mutex> lock(table_mutex);
    if (table.empty()) {
        table.assign(SPF_LIMIT + 1, 0);
        for (i64 i = 2; i <= SPF_LIMIT; ++i) {
            if (table[i]) continue;
            for (i64 j = i; j <= SPF_LIMIT; j += i)
                if (!table[j]) table[j] = (int32_t)i;
        }
    }
    return table;
}

const std::vector<int32_t>& prime_list() {
    static std::vector<int32_t> primes;
    const auto& spf = spf_table();
    std::lock_guard<std::mutex> lock(table_mutex);
    if (primes.empty()) {
        for (i64 i = 2; i <= SPF_LIMIT; ++i)
            if (spf[i] == i) primes.push_back((int32_t)i);
    }
    return primes;
}

const std::vector<int32_t>& prime_list_large() {
    static std::vector<int32_t> primes;
    std::lock_guard<std::mutex> lock(table_mutex);
    if (primes.empty()) {
        std::vector<bool> comp(PRIME_LIMIT + 1, false);
        for (i64 i = 2; i * i <= PRIME_LIMIT; ++i)
            if (!comp[i])
                for (i64 j = i * i; j <= PRIME_LIMIT; j += i) comp[j] = true;
        for (i64 i = 2; i <= PRIME_LIMIT; ++i)
            if (!comp[i]) primes.push_back((int32_t)i);
    }
    return primes;
}

} // namespace sieve

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 0) n = -n;
    if (n == 0) throw DomainError("factorize(0)");
    std::vector<std::pair<i64, int>> out;
    const auto& spf = sieve::spf_table();
    if (n <= sieve::SPF_LIMIT) {
        while (n > 1) {
            i64 p = spf[(size_t)n];
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
        return out;
    }
    // large n: trial division by sieved primes, remainder must be prime
    for (int32_t p : sieve::prime_list()) {
        if ((i64)p * p > n) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
        if (n <= sieve::SPF_LIMIT) {
            for (auto& [q, e] : factorize(n)) out.emplace_back(q, e);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    std::sort(out.begin(), out.end());
    return out;
}

bool all_factors_1mod4(i64 n) {
    if (n < 1) return false;
    if (n % 2 == 0) return false;
    const auto& spf = sieve::spf_table();
    if (n <= sieve::SPF_LIMIT) {
        while (n > 1) {
            i64 p = spf[(size_t)n];
            if (p % 4 != 1) return false;
            while (n % p == 0) n /= p;
        }
        return true;
    }
    for (auto& [p, e] : factorize(n)) {
        (void)e;
        if (p % 4 != 1) return false;
    }
    return true;
}

} // namespace chatelet
