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

#include <memory>
#include <optional>
#include <string>

#include "qzsim/gates.hpp"

namespace qzsim {

class DeviceError : public Error {
  public:
    using Error::Error;
};

enum class Strategy : uint8_t {
    Synchronous, // one bulk transfer per contiguous chunk
    PerElement,  // one transfer command per amplitude
    Buffered,    // one bulk transfer + one device-side permutation pass
};

std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

struct DeviceConfig {
    uint64_t memory_limit_bytes = uint64_t(1) << 30;
    uint32_t kernel_workers = 1;
    Strategy strategy = Strategy::Synchronous;
};

struct TransferStats {
    double h2d_seconds = 0.0;
    double d2h_seconds = 0.0;
    double kernel_seconds = 0.0;
    uint64_t h2d_op_count = 0;
    uint64_t d2h_op_count = 0;
    uint64_t bytes_moved = 0;
};

enum class CommandStatus { Pending, Done, Failed };

namespace detail {
struct CommandState;
}

/// Completion token for one submitted operation. Commands complete in
/// submission order (single in-order queue).
class CommandHandle {
  public:
    CommandHandle() = default;
    CommandStatus status() const;

  private:
    friend class ReferenceDevice;
    explicit CommandHandle(std::shared_ptr<detail::CommandState> state)
        : state_(std::move(state)) {}
    std::shared_ptr<detail::CommandState> state_;
};

/// Bounded-memory execution backend. The batch occupies the device buffer
/// in gather-layout order: member j of the chunk list covers buffer
/// positions [j * chunk_len, (j + 1) * chunk_len).
class Device {
  public:
    virtual ~Device() = default;

    virtual CommandHandle gather(std::vector<const Amplitude *> chunks,
                                 uint64_t chunk_len) = 0;
    /// Gates must already be remapped to buffer bits.
    virtual CommandHandle apply_gates(std::vector<Gate> gates) = 0;
    virtual CommandHandle scatter(std::vector<Amplitude *> chunks,
                                  uint64_t chunk_len) = 0;
    /// Blocks until the handle (and all earlier submissions) complete;
    /// rethrows the originating error for failed commands.
    virtual void wait(const CommandHandle &handle) = 0;
    virtual TransferStats stats() const = 0;
};

/// In-process backend with a real worker thread, real memory movement, and
/// a per-command issue cost, so transfer-strategy timing differences are
/// physically measurable.
std::unique_ptr<Device> make_reference_device(const DeviceConfig &config);

} // namespace qzsim
