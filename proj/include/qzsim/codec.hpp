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

#include <cstdint>
#include <span>
#include <vector>

#include "qzsim/util.hpp"

namespace qzsim {

class CodecError : public Error {
  public:
    using Error::Error;
};

enum class CodecId : uint8_t {
    LossyPQ = 1,     // previous-value predictor + uniform quantizer
    LosslessRLE = 2, // byte-plane shuffle + run-length encoding
};

/// One independently compressed amplitude chunk.
///
/// Payload layout (little-endian throughout):
///   u8  codec_id
///   f64 error_bound
///   u32 element_count
///   u32 unpredictable_count
///   code planes (see codec.cpp), then raw unpredictable values in order
///   of occurrence.
struct CompressedChunk {
    uint64_t chunk_index = 0;
    CodecId codec_id = CodecId::LosslessRLE;
    double error_bound = 0.0;
    uint32_t element_count = 0;
    std::vector<uint8_t> payload;
    uint32_t checksum = 0; // CRC-32 of payload

    size_t stored_bytes() const { return payload.size(); }
};

/// Compresses a chunk of 2^c amplitudes. error_bound == 0 selects the
/// lossless codec; otherwise every reconstructed real/imaginary component
/// is within error_bound of the original.
///
/// `forced_raw` lists flat component indices (real plane [0, N), imaginary
/// plane [N, 2N)) that must take the raw-value path and therefore
/// reconstruct bit-exactly even in lossy mode.
CompressedChunk compress(uint64_t chunk_index,
                         std::span<const Amplitude> amplitudes,
                         double error_bound,
                         std::span<const uint64_t> forced_raw = {});

/// Inverse of compress. Verifies the checksum first.
std::vector<Amplitude> decompress(const CompressedChunk &chunk);

/// Dense bytes (element_count * 16) over stored payload bytes.
double ratio(const CompressedChunk &chunk);

} // namespace qzsim
