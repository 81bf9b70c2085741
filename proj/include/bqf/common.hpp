#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bqf {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128_t;

inline std::string to_string(i128 x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    if (neg) x = -x;
    std::string s;
    while (x) {
        s += char('0' + int(x % 10));
        x /= 10;
    }
    if (neg) s += '-';
    return {s.rbegin(), s.rend()};
}

// floor(sqrt(n)) exactly, for n >= 0
inline i64 isqrt(i64 n) {
    if (n <= 0) return 0;
    i64 r = i64(std::sqrt(double(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// 12 significant digits, shortest spelling %g gives; all report floats go
// through here so outputs diff cleanly
inline std::string format_float(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline int default_thread_count() {
    if (const char* env = std::getenv("BQF_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Run fn(job) for job = 0..n_jobs-1 on `threads` workers. Jobs are claimed
// through an atomic counter; fn must not assume any ordering. The first
// exception thrown by any job is rethrown on the calling thread.
template <class Fn>
void parallel_jobs(std::size_t n_jobs, int threads, Fn&& fn) {
    if (threads <= 1 || n_jobs <= 1) {
        for (std::size_t j = 0; j < n_jobs; ++j) fn(j);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t j = next.fetch_add(1);
            if (j >= n_jobs || failed.load()) return;
            try {
                fn(j);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mu);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(threads, n_jobs);
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace bqf
