#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace wvlt {

/// Fixed pool of p workers for bulk-synchronous phases. run(f) calls
/// f(c) for every worker id c in [0, p) and returns once all calls have
/// finished, so consecutive run() calls are separated by a full barrier.
/// Worker 0 is the calling thread; a pool of size 1 spawns nothing.
class worker_pool {
public:
    explicit worker_pool(std::size_t p) : size_(p == 0 ? 1 : p) {
        threads_.reserve(size_ - 1);
        for(std::size_t c = 1; c < size_; ++c)
            threads_.emplace_back([this, c] { loop(c); });
    }

    worker_pool(const worker_pool&) = delete;
    worker_pool& operator=(const worker_pool&) = delete;

    ~worker_pool() {
        {
            std::lock_guard lock(mutex_);
            stop_ = true;
            ++generation_;
        }
        wake_.notify_all();
        for(auto& t : threads_) t.join();
    }

    std::size_t size() const { return size_; }

    template<typename F>
    void run(F&& f) {
        if(size_ == 1) {
            f(std::size_t{0});
            return;
        }
        {
            std::lock_guard lock(mutex_);
            task_ = std::ref(f);
            pending_ = size_ - 1;
            error_ = nullptr;
            ++generation_;
        }
        wake_.notify_all();
        std::exception_ptr local;
        try {
            f(std::size_t{0});
        } catch(...) {
            local = std::current_exception();
        }
        std::unique_lock lock(mutex_);
        done_.wait(lock, [this] { return pending_ == 0; });
        task_ = nullptr;
        if(local) std::rethrow_exception(local);
        if(error_) std::rethrow_exception(error_);
    }

private:
    void loop(std::size_t id) {
        std::size_t seen = 0;
        for(;;) {
            std::function<void(std::size_t)> task;
            {
                std::unique_lock lock(mutex_);
                wake_.wait(lock, [&] { return generation_ != seen; });
                seen = generation_;
                if(stop_) return;
                task = task_;
            }
            std::exception_ptr err;
            try {
                task(id);
            } catch(...) {
                err = std::current_exception();
            }
            {
                std::lock_guard lock(mutex_);
                if(err && !error_) error_ = err;
                if(--pending_ == 0) done_.notify_one();
            }
        }
    }

    std::size_t size_;
    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable wake_, done_;
    std::function<void(std::size_t)> task_;
    std::size_t generation_ = 0;
    std::size_t pending_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

/// Half-open index range.
struct index_range {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
};

/// Splits [0, n) into p consecutive slices whose lengths are multiples of
/// granule (except the last one, which absorbs the remainder). Trailing
/// slices may be empty.
inline std::vector<index_range> granule_slices(std::size_t n, std::size_t p, std::size_t granule) {
    if(p == 0) p = 1;
    const auto per = (n + p - 1) / p;
    const auto len = (per + granule - 1) / granule * granule;
    std::vector<index_range> out(p);
    for(std::size_t c = 0; c < p; ++c) {
        const auto b = std::min(n, c * len);
        out[c] = {b, std::min(n, b + len)};
    }
    return out;
}

} // namespace wvlt
