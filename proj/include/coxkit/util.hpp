#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace coxkit {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed DSL input, bad CLI polynomial literals, etc.
struct ParseError : Error {
    using Error::Error;
};

// Precondition violations: non-finite group where finite required,
// pole in specialize_limit, rewrite of a non-kernel word, ...
struct DomainError : Error {
    using Error::Error;
};

// Enumeration or materialization exceeds the configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

// BFS/enumeration cap; COXKIT_ORACLE_CAP overrides the default.
inline std::uint64_t oracle_cap() {
    static const std::uint64_t cap = [] {
        if (const char* env = std::getenv("COXKIT_ORACLE_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
            throw ParseError("COXKIT_ORACLE_CAP must be a positive integer");
        }
        return static_cast<std::uint64_t>(100000);
    }();
    return cap;
}

// Worker count used by parallel loops. 0 = all cores. Set once by the CLI;
// library default is single-threaded so results never depend on machine size.
inline unsigned& thread_count() {
    static unsigned n = 1;
    return n;
}

inline void set_thread_count(unsigned n) {
    thread_count() = n ? n : std::max(1u, std::thread::hardware_concurrency());
}

// Static partition of [0,n) over the configured workers. Deterministic:
// the caller combines per-index results in index order afterwards.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// FNV-1a, used for diagram fingerprints in reports.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace coxkit
