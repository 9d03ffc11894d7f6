// Copyright 2026 The qzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <chrono>
#include <complex>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qzsim {

using Amplitude = std::complex<double>;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// FNV-1a over a byte span; `state` allows chaining across spans.
uint64_t fnv1a64(std::span<const uint8_t> bytes,
                 uint64_t state = 0xcbf29ce484222325ULL);

/// CRC-32 (zlib polynomial) of a byte span.
uint32_t crc32_of(std::span<const uint8_t> bytes);

/// Inserts a zero bit at position `bit`, shifting higher bits up.
constexpr uint64_t insert_zero_bit(uint64_t x, uint32_t bit) {
    uint64_t low = x & ((uint64_t(1) << bit) - 1);
    return ((x >> bit) << (bit + 1)) | low;
}

/// Scatters the low bits of `value` into `positions` (ascending order):
/// bit i of `value` lands at positions[i].
uint64_t scatter_bits(uint64_t value, std::span<const uint32_t> positions);

/// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

/// Accumulates elapsed seconds atomically from multiple threads.
class PhaseClock {
  public:
    void add(double s) {
        double cur = seconds_.load(std::memory_order_relaxed);
        while (!seconds_.compare_exchange_weak(cur, cur + s)) {
        }
    }
    double seconds() const { return seconds_.load(std::memory_order_relaxed); }

  private:
    std::atomic<double> seconds_{0.0};
};

class ThreadPool {
  public:
    explicit ThreadPool(unsigned workers);
    ~ThreadPool();
    ThreadPool(const ThreadPool &) = delete;
    ThreadPool &operator=(const ThreadPool &) = delete;

    std::future<void> submit(std::function<void()> task);
    unsigned size() const { return static_cast<unsigned>(threads_.size()); }

  private:
    void worker_loop();

    std::vector<std::thread> threads_;
    std::deque<std::packaged_task<void()>> tasks_;
    std::mutex mutex_;
    std::condition_variable cv_;
    bool stop_ = false;
};

} // namespace qzsim
