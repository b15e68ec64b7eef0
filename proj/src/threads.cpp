#include "stefankpp/threads.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace stefankpp {

unsigned thread_budget() {
    static const unsigned budget = [] {
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("STEFANKPP_THREADS")) {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
        }
        return hw;
    }();
    return budget;
}

namespace {

// Minimal persistent pool: workers wake on a generation counter, run their
// fixed chunk, and report completion.
class Pool {
public:
    explicit Pool(unsigned workers) : n_workers_(workers) {
        threads_.reserve(workers);
        for (unsigned i = 0; i < workers; ++i)
            threads_.emplace_back([this, i] { worker(i); });
    }

    ~Pool() {
        {
            std::lock_guard lk(m_);
            stop_ = true;
            ++generation_;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    void run(long n, const std::function<void(long, long)>& fn) {
        {
            std::lock_guard lk(m_);
            n_ = n;
            fn_ = &fn;
            pending_ = n_workers_;
            ++generation_;
        }
        cv_.notify_all();
        std::unique_lock lk(m_);
        done_cv_.wait(lk, [this] { return pending_ == 0; });
        fn_ = nullptr;
    }

private:
    void worker(unsigned idx) {
        unsigned long seen = 0;
        for (;;) {
            const std::function<void(long, long)>* fn;
            long n;
            {
                std::unique_lock lk(m_);
                cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
                if (stop_) return;
                seen = generation_;
                fn = fn_;
                n = n_;
            }
            const long chunk = (n + n_workers_ - 1) / n_workers_;
            const long b = std::min<long>(n, idx * chunk);
            const long e = std::min<long>(n, b + chunk);
            if (b < e) (*fn)(b, e);
            {
                std::lock_guard lk(m_);
                if (--pending_ == 0) done_cv_.notify_one();
            }
        }
    }

    unsigned n_workers_;
    std::vector<std::thread> threads_;
    std::mutex m_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    const std::function<void(long, long)>* fn_ = nullptr;
    long n_ = 0;
    unsigned pending_ = 0;
    unsigned long generation_ = 0;
    bool stop_ = false;
};

} // namespace

void parallel_for(long n, const std::function<void(long, long)>& fn) {
    const unsigned budget = thread_budget();
    if (budget <= 1 || n < 64) {
        fn(0, n);
        return;
    }
    static Pool pool(thread_budget());
    pool.run(n, fn);
}

} // namespace stefankpp
