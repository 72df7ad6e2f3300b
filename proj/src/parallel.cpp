#include "tirls/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tirls {

namespace {

int threads_from_env() {
    const char* env = std::getenv("TIRLS_NUM_THREADS");
    if (env == nullptr) {
        return 1;
    }
    try {
        return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
        return 1;
    }
}

std::atomic<int>& configured() {
    static std::atomic<int> n{threads_from_env()};
    return n;
}

}  // namespace

int thread_count() { return configured().load(); }

void set_thread_count(int n) { configured().store(std::max(1, n)); }

void parallel_for(Index count, const std::function<void(Index)>& body) {
    const int workers = static_cast<int>(std::min<Index>(thread_count(), count));
    if (workers <= 1) {
        for (Index j = 0; j < count; ++j) {
            body(j);
        }
        return;
    }
    std::atomic<Index> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (Index j = next++; j < count; j = next++) {
            try {
                body(j);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back(run);
    }
    run();
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace tirls
