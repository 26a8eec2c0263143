#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <new>
#include <utility>
#include <vector>

namespace wvlt {

// Categories of auxiliary memory used during construction. Output bit
// vectors are not auxiliary and are never tracked.
enum class aux_tag : unsigned {
    positions = 0, // histograms, borders, interval starts
    symbols,       // scratch copies of the text
    permutation,   // bit-reversal tables
    misc,          // O(p) bookkeeping, merge segment lists, partial levels
    count_
};

inline constexpr std::size_t num_aux_tags = static_cast<std::size_t>(aux_tag::count_);

struct aux_counters {
    std::array<std::atomic<std::uint64_t>, num_aux_tags> bytes_total{};
    std::array<std::atomic<std::uint64_t>, num_aux_tags> allocations{};
    std::atomic<std::int64_t> current{0};
    std::atomic<std::int64_t> peak{0};

    void reset() {
        for(auto& b : bytes_total) b = 0;
        for(auto& a : allocations) a = 0;
        current = 0;
        peak = 0;
    }

    std::uint64_t bytes(aux_tag t) const {
        return bytes_total[static_cast<std::size_t>(t)].load();
    }
    std::uint64_t allocs(aux_tag t) const {
        return allocations[static_cast<std::size_t>(t)].load();
    }
};

inline aux_counters& aux_stats() {
    static aux_counters counters;
    return counters;
}

// Minimal allocator that reports every allocation to aux_stats().
template<typename T, aux_tag Tag>
struct tracking_allocator {
    using value_type = T;

    tracking_allocator() noexcept = default;
    template<typename U>
    tracking_allocator(const tracking_allocator<U, Tag>&) noexcept {}

    template<typename U>
    struct rebind { using other = tracking_allocator<U, Tag>; };

    T* allocate(std::size_t n) {
        const auto bytes = n * sizeof(T);
        auto& s = aux_stats();
        s.bytes_total[static_cast<std::size_t>(Tag)] += bytes;
        ++s.allocations[static_cast<std::size_t>(Tag)];
        const auto now = s.current.fetch_add(static_cast<std::int64_t>(bytes)) +
                         static_cast<std::int64_t>(bytes);
        auto prev = s.peak.load();
        while(now > prev && !s.peak.compare_exchange_weak(prev, now)) {}
        return std::allocator<T>{}.allocate(n);
    }

    void deallocate(T* p, std::size_t n) noexcept {
        aux_stats().current -= static_cast<std::int64_t>(n * sizeof(T));
        std::allocator<T>{}.deallocate(p, n);
    }

    template<typename U>
    bool operator==(const tracking_allocator<U, Tag>&) const noexcept { return true; }
};

/// Charges memory that lives outside a tracking_allocator (for example the
/// bit vectors of partial structures) to the counters for its lifetime.
class scoped_aux_charge {
public:
    scoped_aux_charge() = default;
    scoped_aux_charge(aux_tag tag, std::uint64_t bytes) : bytes_(bytes) {
        auto& s = aux_stats();
        s.bytes_total[static_cast<std::size_t>(tag)] += bytes;
        ++s.allocations[static_cast<std::size_t>(tag)];
        const auto now = s.current.fetch_add(static_cast<std::int64_t>(bytes)) + static_cast<std::int64_t>(bytes);
        auto prev = s.peak.load();
        while(now > prev && !s.peak.compare_exchange_weak(prev, now)) {}
    }
    scoped_aux_charge(const scoped_aux_charge&) = delete;
    scoped_aux_charge& operator=(const scoped_aux_charge&) = delete;
    scoped_aux_charge(scoped_aux_charge&& o) noexcept : bytes_(std::exchange(o.bytes_, 0)) {}
    scoped_aux_charge& operator=(scoped_aux_charge&& o) noexcept {
        release();
        bytes_ = std::exchange(o.bytes_, 0);
        return *this;
    }
    ~scoped_aux_charge() { release(); }

    void release() {
        if(bytes_ != 0) aux_stats().current -= static_cast<std::int64_t>(bytes_);
        bytes_ = 0;
    }

private:
    std::uint64_t bytes_ = 0;
};

template<typename T, aux_tag Tag>
using aux_vector = std::vector<T, tracking_allocator<T, Tag>>;

using position_t = std::uint64_t;
using position_array = aux_vector<position_t, aux_tag::positions>;

} // namespace wvlt
