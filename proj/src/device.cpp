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
#include "qzsim/device.hpp"

#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

#include "qzsim/kernels.hpp"
#include "qzsim/util.hpp"

namespace qzsim {

std::string_view strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Synchronous: return "synchronous";
    case Strategy::PerElement: return "per-element";
    case Strategy::Buffered: return "buffered";
    }
    return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
    if (name == "synchronous" || name == "sync") return Strategy::Synchronous;
    if (name == "per-element" || name == "per_element")
        return Strategy::PerElement;
    if (name == "buffered") return Strategy::Buffered;
    return std::nullopt;
}

namespace detail {

struct CommandState {
    std::mutex mutex;
    std::condition_variable cv;
    CommandStatus status = CommandStatus::Pending;
    std::string error;
};

} // namespace detail

CommandStatus CommandHandle::status() const {
    if (!state_) return CommandStatus::Done;
    std::lock_guard lk(state_->mutex);
    return state_->status;
}

namespace {

using Clock = std::chrono::steady_clock;

enum class OpKind : uint8_t { H2D, D2H, Kernel };

enum class CmdType : uint8_t {
    OpBegin,
    OpEnd,
    Copy,    // one host<->device copy; op count and bytes charged per command
    BulkIn,  // all chunks into the staging area, one op
    BulkOut, // staging area back to all chunks, one op
    PermuteIn,  // staging -> buffer mapping pass (device-side)
    PermuteOut, // buffer -> staging mapping pass
    Kernel,
    Stop,
};

struct Command {
    CmdType type = CmdType::Stop;
    OpKind op = OpKind::H2D;
    const Amplitude *src = nullptr;
    Amplitude *dst = nullptr;
    uint64_t amps = 0;
    // BulkIn/BulkOut chunk lists and kernel gates live out-of-line.
    std::shared_ptr<std::vector<const Amplitude *>> in_chunks;
    std::shared_ptr<std::vector<Amplitude *>> out_chunks;
    std::shared_ptr<Gate> gate;
    std::shared_ptr<detail::CommandState> handle_state;
};

} // namespace

class ReferenceDevice final : public Device {
  public:
    explicit ReferenceDevice(const DeviceConfig &config)
        : config_(config),
          kernel_pool_(config.kernel_workers > 1 ? config.kernel_workers - 1
                                                 : 1) {
        if (config.kernel_workers < 1)
            throw DeviceError("kernel worker count must be >= 1");
        if (::pipe(doorbell_) != 0)
            throw DeviceError("cannot create device doorbell pipe");
        worker_ = std::thread([this] { worker_loop(); });
    }

    ~ReferenceDevice() override {
        Command stop;
        stop.type = CmdType::Stop;
        enqueue(std::move(stop));
        worker_.join();
        ::close(doorbell_[0]);
        ::close(doorbell_[1]);
    }

    CommandHandle gather(std::vector<const Amplitude *> chunks,
                         uint64_t chunk_len) override {
        const uint64_t total = chunks.size() * chunk_len;
        reserve_buffers(total);
        auto state = std::make_shared<detail::CommandState>();
        begin_op(OpKind::H2D);
        switch (config_.strategy) {
        case Strategy::Synchronous:
            for (size_t j = 0; j < chunks.size(); ++j) {
                Command cmd;
                cmd.type = CmdType::Copy;
                cmd.op = OpKind::H2D;
                cmd.src = chunks[j];
                cmd.dst = buffer_.data() + j * chunk_len;
                cmd.amps = chunk_len;
                enqueue(std::move(cmd));
            }
            break;
        case Strategy::PerElement:
            for (size_t j = 0; j < chunks.size(); ++j) {
                for (uint64_t e = 0; e < chunk_len; ++e) {
                    Command cmd;
                    cmd.type = CmdType::Copy;
                    cmd.op = OpKind::H2D;
                    cmd.src = chunks[j] + e;
                    cmd.dst = buffer_.data() + j * chunk_len + e;
                    cmd.amps = 1;
                    enqueue(std::move(cmd));
                }
            }
            break;
        case Strategy::Buffered: {
            Command bulk;
            bulk.type = CmdType::BulkIn;
            bulk.op = OpKind::H2D;
            bulk.amps = chunk_len;
            bulk.in_chunks = std::make_shared<std::vector<const Amplitude *>>(
                std::move(chunks));
            enqueue(std::move(bulk));
            // The mapping pass is device-side compute, not transfer time.
            end_op(OpKind::H2D, nullptr);
            begin_op(OpKind::Kernel);
            Command permute;
            permute.type = CmdType::PermuteIn;
            permute.amps = total;
            enqueue(std::move(permute));
            end_op(OpKind::Kernel, state);
            buffer_amps_ = total;
            return CommandHandle(std::move(state));
        }
        }
        end_op(OpKind::H2D, state);
        buffer_amps_ = total;
        return CommandHandle(std::move(state));
    }

    CommandHandle apply_gates(std::vector<Gate> gates) override {
        uint32_t bits = 0;
        while ((uint64_t(1) << bits) < buffer_amps_) ++bits;
        for (const Gate &g : gates) {
            for (uint32_t q : g.qubits) {
                if (q >= bits)
                    throw DeviceError("buffer bit " + std::to_string(q) +
                                      " out of range for batch of 2^" +
                                      std::to_string(bits) + " amplitudes");
            }
        }
        auto state = std::make_shared<detail::CommandState>();
        begin_op(OpKind::Kernel);
        for (Gate &g : gates) {
            Command cmd;
            cmd.type = CmdType::Kernel;
            cmd.amps = buffer_amps_;
            cmd.gate = std::make_shared<Gate>(std::move(g));
            enqueue(std::move(cmd));
        }
        end_op(OpKind::Kernel, state);
        return CommandHandle(std::move(state));
    }

    CommandHandle scatter(std::vector<Amplitude *> chunks,
                          uint64_t chunk_len) override {
        const uint64_t total = chunks.size() * chunk_len;
        if (total != buffer_amps_)
            throw DeviceError("scatter size disagrees with gathered batch");
        auto state = std::make_shared<detail::CommandState>();
        if (config_.strategy == Strategy::Buffered) {
            begin_op(OpKind::Kernel);
            Command permute;
            permute.type = CmdType::PermuteOut;
            permute.amps = total;
            enqueue(std::move(permute));
            end_op(OpKind::Kernel, nullptr);
            begin_op(OpKind::D2H);
            Command bulk;
            bulk.type = CmdType::BulkOut;
            bulk.op = OpKind::D2H;
            bulk.amps = chunk_len;
            bulk.out_chunks =
                std::make_shared<std::vector<Amplitude *>>(std::move(chunks));
            enqueue(std::move(bulk));
            end_op(OpKind::D2H, state);
            return CommandHandle(std::move(state));
        }
        begin_op(OpKind::D2H);
        switch (config_.strategy) {
        case Strategy::Synchronous:
            for (size_t j = 0; j < chunks.size(); ++j) {
                Command cmd;
                cmd.type = CmdType::Copy;
                cmd.op = OpKind::D2H;
                cmd.src = buffer_.data() + j * chunk_len;
                cmd.dst = chunks[j];
                cmd.amps = chunk_len;
                enqueue(std::move(cmd));
            }
            break;
        case Strategy::PerElement:
            for (size_t j = 0; j < chunks.size(); ++j) {
                for (uint64_t e = 0; e < chunk_len; ++e) {
                    Command cmd;
                    cmd.type = CmdType::Copy;
                    cmd.op = OpKind::D2H;
                    cmd.src = buffer_.data() + j * chunk_len + e;
                    cmd.dst = chunks[j] + e;
                    cmd.amps = 1;
                    enqueue(std::move(cmd));
                }
            }
            break;
        case Strategy::Buffered:
            break; // handled above
        }
        end_op(OpKind::D2H, state);
        return CommandHandle(std::move(state));
    }

    void wait(const CommandHandle &handle) override {
        if (!handle.state_) return;
        std::unique_lock lk(handle.state_->mutex);
        handle.state_->cv.wait(lk, [&] {
            return handle.state_->status != CommandStatus::Pending;
        });
        if (handle.state_->status == CommandStatus::Failed)
            throw DeviceError(handle.state_->error);
    }

    TransferStats stats() const override {
        std::lock_guard lk(stats_mutex_);
        return stats_;
    }

  private:
    void reserve_buffers(uint64_t total_amps) {
        uint64_t needed = total_amps * 16;
        if (config_.strategy == Strategy::Buffered) needed *= 2;
        if (needed > config_.memory_limit_bytes)
            throw DeviceError(
                "batch exceeds device memory limit: needs " +
                std::to_string(needed) + " bytes, limit " +
                std::to_string(config_.memory_limit_bytes));
        // Resizing while the worker still runs older commands would move the
        // buffer under them; the coordinator waits per batch, and batch sizes
        // are fixed per run, so growth only happens on an idle queue.
        if (buffer_.size() < total_amps) {
            if (buffer_amps_ != 0) drain();
            buffer_.assign(total_amps, Amplitude{});
            if (config_.strategy == Strategy::Buffered)
                staging_.assign(total_amps, Amplitude{});
            assert_memory_bound();
        }
    }

    void assert_memory_bound() const {
        uint64_t held = (buffer_.size() + staging_.size()) * 16;
        if (held > config_.memory_limit_bytes)
            throw DeviceError("device memory bound violated: " +
                              std::to_string(held) + " > " +
                              std::to_string(config_.memory_limit_bytes));
    }

    void drain() {
        auto state = std::make_shared<detail::CommandState>();
        begin_op(OpKind::Kernel);
        end_op(OpKind::Kernel, state);
        wait(CommandHandle(state));
    }

    void begin_op(OpKind op) {
        Command cmd;
        cmd.type = CmdType::OpBegin;
        cmd.op = op;
        enqueue(std::move(cmd));
    }

    void end_op(OpKind op, std::shared_ptr<detail::CommandState> state) {
        Command cmd;
        cmd.type = CmdType::OpEnd;
        cmd.op = op;
        cmd.handle_state = std::move(state);
        enqueue(std::move(cmd));
    }

    // Every command rings the doorbell: one byte through a pipe, read by the
    // worker before execution. This is the per-command issue cost that makes
    // the per-element strategy measurably slower than bulk copies.
    void enqueue(Command cmd) {
        {
            std::lock_guard lk(queue_mutex_);
            queue_.push_back(std::move(cmd));
        }
        char byte = 1;
        for (;;) {
            ssize_t w = ::write(doorbell_[1], &byte, 1);
            if (w == 1) return;
            if (w < 0 && errno == EINTR) continue;
            throw DeviceError("device doorbell write failed");
        }
    }

    void worker_loop() {
        Clock::time_point op_start{};
        std::string op_error;
        bool op_failed = false;
        for (;;) {
            char byte;
            ssize_t r = ::read(doorbell_[0], &byte, 1);
            if (r < 0 && errno == EINTR) continue;
            if (r != 1) return;
            Command cmd;
            {
                std::lock_guard lk(queue_mutex_);
                cmd = std::move(queue_.front());
                queue_.pop_front();
            }
            switch (cmd.type) {
            case CmdType::Stop:
                return;
            case CmdType::OpBegin:
                op_start = Clock::now();
                break;
            case CmdType::OpEnd: {
                double elapsed =
                    std::chrono::duration<double>(Clock::now() - op_start)
                        .count();
                {
                    std::lock_guard lk(stats_mutex_);
                    switch (cmd.op) {
                    case OpKind::H2D: stats_.h2d_seconds += elapsed; break;
                    case OpKind::D2H: stats_.d2h_seconds += elapsed; break;
                    case OpKind::Kernel:
                        stats_.kernel_seconds += elapsed;
                        break;
                    }
                }
                if (cmd.handle_state) {
                    {
                        std::lock_guard lk(cmd.handle_state->mutex);
                        cmd.handle_state->status =
                            op_failed ? CommandStatus::Failed
                                      : CommandStatus::Done;
                        cmd.handle_state->error = op_error;
                        cmd.handle_state->cv.notify_all();
                    }
                    // failure state persists across split op brackets until
                    // it has been reported to a handle
                    op_failed = false;
                    op_error.clear();
                }
                break;
            }
            default:
                if (op_failed) break; // fail-fast within the op
                try {
                    execute(cmd);
                } catch (const std::exception &e) {
                    op_failed = true;
                    op_error = e.what();
                }
                break;
            }
        }
    }

    void execute(const Command &cmd) {
        switch (cmd.type) {
        case CmdType::Copy: {
            std::memcpy(cmd.dst, cmd.src, cmd.amps * sizeof(Amplitude));
            std::lock_guard lk(stats_mutex_);
            if (cmd.op == OpKind::H2D)
                ++stats_.h2d_op_count;
            else
                ++stats_.d2h_op_count;
            stats_.bytes_moved += cmd.amps * sizeof(Amplitude);
            break;
        }
        case CmdType::BulkIn: {
            const auto &chunks = *cmd.in_chunks;
            for (size_t j = 0; j < chunks.size(); ++j)
                std::memcpy(staging_.data() + j * cmd.amps, chunks[j],
                            cmd.amps * sizeof(Amplitude));
            std::lock_guard lk(stats_mutex_);
            ++stats_.h2d_op_count;
            stats_.bytes_moved += chunks.size() * cmd.amps * sizeof(Amplitude);
            break;
        }
        case CmdType::BulkOut: {
            const auto &chunks = *cmd.out_chunks;
            for (size_t j = 0; j < chunks.size(); ++j)
                std::memcpy(chunks[j], staging_.data() + j * cmd.amps,
                            cmd.amps * sizeof(Amplitude));
            std::lock_guard lk(stats_mutex_);
            ++stats_.d2h_op_count;
            stats_.bytes_moved += chunks.size() * cmd.amps * sizeof(Amplitude);
            break;
        }
        case CmdType::PermuteIn:
        case CmdType::PermuteOut: {
            // Device-side mapping pass between staging order and layout
            // positions. The gather layout keeps each chunk contiguous, so
            // the index map is one-to-one over the whole batch.
            Amplitude *src = cmd.type == CmdType::PermuteIn ? staging_.data()
                                                            : buffer_.data();
            Amplitude *dst = cmd.type == CmdType::PermuteIn ? buffer_.data()
                                                            : staging_.data();
            parallel_over(cmd.amps, [&](uint64_t begin, uint64_t end) {
                for (uint64_t i = begin; i < end; ++i) dst[i] = src[i];
            });
            break;
        }
        case CmdType::Kernel: {
            const Gate &g = *cmd.gate;
            GateMatrix mat = gate_matrix(g);
            std::span<Amplitude> buf(buffer_.data(), cmd.amps);
            if (mat.dim == 2) {
                parallel_over(cmd.amps / 2, [&](uint64_t begin, uint64_t end) {
                    apply_single_qubit(buf, g.qubits[0], mat, begin, end);
                });
            } else {
                parallel_over(cmd.amps / 4, [&](uint64_t begin, uint64_t end) {
                    apply_two_qubit(buf, g.qubits[0], g.qubits[1], mat, begin,
                                    end);
                });
            }
            break;
        }
        default:
            break;
        }
    }

    template <typename Fn> void parallel_over(uint64_t total, Fn &&fn) {
        const uint32_t workers = config_.kernel_workers;
        if (workers <= 1 || total < (uint64_t(1) << 14)) {
            fn(0, total);
            return;
        }
        std::vector<std::future<void>> futures;
        uint64_t per = (total + workers - 1) / workers;
        for (uint32_t w = 1; w < workers; ++w) {
            uint64_t begin = std::min<uint64_t>(w * per, total);
            uint64_t end = std::min<uint64_t>(begin + per, total);
            if (begin >= end) break;
            futures.push_back(
                kernel_pool_.submit([&fn, begin, end] { fn(begin, end); }));
        }
        fn(0, std::min<uint64_t>(per, total));
        for (auto &f : futures) f.get();
    }

    DeviceConfig config_;
    ThreadPool kernel_pool_;
    std::vector<Amplitude> buffer_;
    std::vector<Amplitude> staging_;
    uint64_t buffer_amps_ = 0;

    std::thread worker_;
    int doorbell_[2] = {-1, -1};
    std::deque<Command> queue_;
    std::mutex queue_mutex_;

    mutable std::mutex stats_mutex_;
    TransferStats stats_;
};

std::unique_ptr<Device> make_reference_device(const DeviceConfig &config) {
    return std::make_unique<ReferenceDevice>(config);
}

} // namespace qzsim
