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
#include "qzsim/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

static_assert(std::endian::native == std::endian::little,
              "payload format assumes a little-endian host");

namespace qzsim {

namespace {

constexpr int32_t kRawSentinel = -32768; // emitted for unpredictable values
constexpr size_t kHeaderBytes = 1 + 8 + 4 + 4;

uint16_t zigzag(int32_t code) {
    return static_cast<uint16_t>((code << 1) ^ (code >> 15));
}

int32_t unzigzag(uint16_t z) {
    return static_cast<int32_t>(z >> 1) ^ -static_cast<int32_t>(z & 1);
}

void append_u32(std::vector<uint8_t> &out, uint32_t v) {
    uint8_t b[4];
    std::memcpy(b, &v, 4);
    out.insert(out.end(), b, b + 4);
}

void append_f64(std::vector<uint8_t> &out, double v) {
    uint8_t b[8];
    std::memcpy(b, &v, 8);
    out.insert(out.end(), b, b + 8);
}

/// (byte, count) pairs, count in [1, 255].
void rle_encode(std::vector<uint8_t> &out, std::span<const uint8_t> bytes) {
    size_t i = 0;
    while (i < bytes.size()) {
        uint8_t b = bytes[i];
        size_t run = 1;
        while (run < 255 && i + run < bytes.size() && bytes[i + run] == b)
            ++run;
        out.push_back(b);
        out.push_back(static_cast<uint8_t>(run));
        i += run;
    }
}

void rle_decode(std::span<const uint8_t> payload, size_t &pos, uint8_t *out,
                size_t count) {
    size_t produced = 0;
    while (produced < count) {
        if (pos + 2 > payload.size())
            throw CodecError("malformed payload: truncated RLE stream");
        uint8_t b = payload[pos];
        uint8_t run = payload[pos + 1];
        pos += 2;
        if (run == 0 || produced + run > count)
            throw CodecError("malformed payload: bad RLE run length");
        std::memset(out + produced, b, run);
        produced += run;
    }
}

bool is_power_of_two(size_t v) { return v != 0 && (v & (v - 1)) == 0; }

double component(std::span<const Amplitude> amps, size_t flat) {
    size_t n = amps.size();
    return flat < n ? amps[flat].real() : amps[flat - n].imag();
}

// Quantizer and decoder must share this expression exactly.
double reconstruct(double pred, int32_t code, double error_bound) {
    return pred + static_cast<double>(code) * 2.0 * error_bound;
}

} // namespace

CompressedChunk compress(uint64_t chunk_index,
                         std::span<const Amplitude> amplitudes,
                         double error_bound,
                         std::span<const uint64_t> forced_raw) {
    if (!is_power_of_two(amplitudes.size()))
        throw CodecError("chunk length must be a power of two, got " +
                         std::to_string(amplitudes.size()));
    if (!(error_bound >= 0.0) || !std::isfinite(error_bound))
        throw CodecError("error bound must be finite and non-negative");

    const size_t n = amplitudes.size();
    const size_t total = 2 * n; // real plane then imaginary plane

    CompressedChunk chunk;
    chunk.chunk_index = chunk_index;
    chunk.element_count = static_cast<uint32_t>(n);
    chunk.error_bound = error_bound;
    chunk.codec_id =
        error_bound > 0.0 ? CodecId::LossyPQ : CodecId::LosslessRLE;

    std::vector<uint8_t> &payload = chunk.payload;
    payload.reserve(kHeaderBytes + total);
    payload.push_back(static_cast<uint8_t>(chunk.codec_id));
    append_f64(payload, error_bound);
    append_u32(payload, chunk.element_count);

    if (chunk.codec_id == CodecId::LossyPQ) {
        std::vector<uint16_t> zz(total);
        std::vector<double> raws;
        std::vector<bool> forced(total, false);
        for (uint64_t idx : forced_raw) {
            if (idx >= total)
                throw CodecError("forced raw index out of range");
            forced[idx] = true;
        }
        for (size_t plane = 0; plane < 2; ++plane) {
            double pred = 0.0;
            for (size_t j = 0; j < n; ++j) {
                size_t flat = plane * n + j;
                double v = component(amplitudes, flat);
                bool raw = forced[flat];
                int32_t code = 0;
                if (!raw) {
                    double q = std::round((v - pred) / (2.0 * error_bound));
                    if (!(std::fabs(q) < 32768.0)) {
                        raw = true;
                    } else {
                        code = static_cast<int32_t>(q);
                        double r = reconstruct(pred, code, error_bound);
                        if (!(std::fabs(r - v) <= error_bound)) {
                            raw = true; // guards rounding at the quantizer edge
                        } else {
                            pred = r;
                        }
                    }
                }
                if (raw) {
                    raws.push_back(v);
                    pred = v;
                    zz[flat] = zigzag(kRawSentinel);
                } else {
                    zz[flat] = zigzag(code);
                }
            }
        }
        append_u32(payload, static_cast<uint32_t>(raws.size()));
        std::vector<uint8_t> plane_bytes(total);
        for (size_t i = 0; i < total; ++i)
            plane_bytes[i] = static_cast<uint8_t>(zz[i] & 0xff);
        rle_encode(payload, plane_bytes);
        for (size_t i = 0; i < total; ++i)
            plane_bytes[i] = static_cast<uint8_t>(zz[i] >> 8);
        rle_encode(payload, plane_bytes);
        for (double v : raws) append_f64(payload, v);
    } else {
        append_u32(payload, 0); // unpredictable_count
        std::vector<uint8_t> plane_bytes(total);
        for (size_t k = 0; k < 8; ++k) {
            for (size_t i = 0; i < total; ++i) {
                double v = component(amplitudes, i);
                uint64_t bits;
                std::memcpy(&bits, &v, 8);
                plane_bytes[i] = static_cast<uint8_t>(bits >> (8 * k));
            }
            rle_encode(payload, plane_bytes);
        }
    }

    chunk.checksum = crc32_of(payload);
    return chunk;
}

std::vector<Amplitude> decompress(const CompressedChunk &chunk) {
    if (crc32_of(chunk.payload) != chunk.checksum)
        throw CodecError("checksum mismatch on chunk " +
                         std::to_string(chunk.chunk_index));
    const std::vector<uint8_t> &payload = chunk.payload;
    if (payload.size() < kHeaderBytes)
        throw CodecError("malformed payload: truncated header");

    size_t pos = 0;
    auto codec_id = static_cast<CodecId>(payload[pos]);
    pos += 1;
    double error_bound;
    std::memcpy(&error_bound, payload.data() + pos, 8);
    pos += 8;
    uint32_t element_count;
    std::memcpy(&element_count, payload.data() + pos, 4);
    pos += 4;
    uint32_t raw_count;
    std::memcpy(&raw_count, payload.data() + pos, 4);
    pos += 4;

    if (codec_id != CodecId::LossyPQ && codec_id != CodecId::LosslessRLE)
        throw CodecError("malformed payload: unknown codec id");
    if (codec_id != chunk.codec_id || element_count != chunk.element_count)
        throw CodecError("payload header disagrees with chunk metadata");

    const size_t n = element_count;
    const size_t total = 2 * n;
    std::vector<Amplitude> out(n);

    if (codec_id == CodecId::LossyPQ) {
        std::vector<uint8_t> lo(total), hi(total);
        rle_decode(payload, pos, lo.data(), total);
        rle_decode(payload, pos, hi.data(), total);
        if (pos + size_t(raw_count) * 8 > payload.size())
            throw CodecError("malformed payload: missing raw values");
        size_t raw_pos = pos;
        size_t raw_used = 0;
        std::vector<double> planes(total);
        for (size_t plane = 0; plane < 2; ++plane) {
            double pred = 0.0;
            for (size_t j = 0; j < n; ++j) {
                size_t flat = plane * n + j;
                uint16_t z = static_cast<uint16_t>(lo[flat]) |
                             (static_cast<uint16_t>(hi[flat]) << 8);
                int32_t code = unzigzag(z);
                if (code == kRawSentinel) {
                    if (raw_used >= raw_count)
                        throw CodecError(
                            "malformed payload: raw value underflow");
                    double v;
                    std::memcpy(&v, payload.data() + raw_pos + raw_used * 8, 8);
                    ++raw_used;
                    pred = v;
                } else {
                    pred = reconstruct(pred, code, error_bound);
                }
                planes[flat] = pred;
            }
        }
        if (raw_used != raw_count)
            throw CodecError("malformed payload: unused raw values");
        for (size_t j = 0; j < n; ++j) out[j] = {planes[j], planes[n + j]};
    } else {
        std::vector<uint64_t> bits(total, 0);
        std::vector<uint8_t> plane_bytes(total);
        for (size_t k = 0; k < 8; ++k) {
            rle_decode(payload, pos, plane_bytes.data(), total);
            for (size_t i = 0; i < total; ++i)
                bits[i] |= static_cast<uint64_t>(plane_bytes[i]) << (8 * k);
        }
        for (size_t j = 0; j < n; ++j) {
            double re, im;
            std::memcpy(&re, &bits[j], 8);
            std::memcpy(&im, &bits[n + j], 8);
            out[j] = {re, im};
        }
    }
    return out;
}

double ratio(const CompressedChunk &chunk) {
    return (static_cast<double>(chunk.element_count) * 16.0) /
           static_cast<double>(chunk.payload.size());
}

} // namespace qzsim
