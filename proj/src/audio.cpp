// Copyright (c) 2026 The cskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cskit/audio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cskit/errors.hpp"
#include "cskit/io.hpp"

namespace cskit {

namespace {

constexpr uint16_t kWaveFormatPcm = 1;

struct RationalRatio {
  int64_t up;    // L
  int64_t down;  // M
};

RationalRatio ratio_to_16k(int source_rate) {
  switch (source_rate) {
    case 16000: return {1, 1};
    case 22050: return {320, 441};
    case 24000: return {2, 3};
    case 44100: return {160, 441};
    case 48000: return {1, 3};
    default:
      throw UnsupportedFormat("unsupported source sample rate: " +
                              std::to_string(source_rate));
  }
}

double bessel_i0(double x) {
  // Power series; converges fast for the beta used here.
  double sum = 1.0;
  double term = 1.0;
  const double half_x = x / 2.0;
  for (int m = 1; m < 64; ++m) {
    term *= (half_x / m) * (half_x / m);
    sum += term;
    if (term < sum * 1e-14) break;
  }
  return sum;
}

constexpr int kTapsPerPhase = 16;
constexpr int kHalfTaps = kTapsPerPhase / 2;  // kernel support [-8, 8]
constexpr double kKaiserBeta = 8.0;

// Per-phase filter bank for one L/M ratio. Phase p holds the windowed-sinc
// kernel sampled at offsets (i - p/L), i in [-7, 8], normalized to unit DC
// gain so constant signals pass through exactly.
std::vector<double> build_phase_taps(const RationalRatio& r) {
  const double cutoff =
      0.5 * std::min<double>(1.0, static_cast<double>(r.up) / r.down);
  const double i0_beta = bessel_i0(kKaiserBeta);
  std::vector<double> taps(static_cast<size_t>(r.up) * kTapsPerPhase);
  for (int64_t p = 0; p < r.up; ++p) {
    const double frac = static_cast<double>(p) / static_cast<double>(r.up);
    double sum = 0.0;
    for (int i = 0; i < kTapsPerPhase; ++i) {
      const double u = (i - (kHalfTaps - 1)) - frac;  // offsets -7-f .. 8-f
      double sinc;
      if (std::abs(u) < 1e-12) {
        sinc = 2.0 * cutoff;
      } else {
        sinc = std::sin(2.0 * M_PI * cutoff * u) / (M_PI * u);
      }
      const double w = u / kHalfTaps;
      const double window =
          (std::abs(w) <= 1.0)
              ? bessel_i0(kKaiserBeta * std::sqrt(1.0 - w * w)) / i0_beta
              : 0.0;
      const double v = sinc * window;
      taps[static_cast<size_t>(p) * kTapsPerPhase + i] = v;
      sum += v;
    }
    for (int i = 0; i < kTapsPerPhase; ++i) {
      taps[static_cast<size_t>(p) * kTapsPerPhase + i] /= sum;
    }
  }
  return taps;
}

int16_t clamp_to_i16(double v) {
  const long long r = std::llround(v);
  if (r > 32767) return 32767;
  if (r < -32768) return -32768;
  return static_cast<int16_t>(r);
}

}  // namespace

PcmBuffer parse_wav(const std::string& bytes) {
  ByteReader r(bytes);
  r.expect_magic("RIFF", "wav");
  r.u32();  // riff payload size; the data chunk is validated directly
  if (r.read_string(4, "wav") != "WAVE") throw ParseError("wav: not a WAVE file");

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  PcmBuffer out;
  bool have_data = false;

  while (r.remaining() > 0) {
    if (r.remaining() < 8) throw ParseError("wav: truncated chunk header");
    const std::string id = r.read_string(4, "wav");
    const uint32_t size = r.u32();
    if (id == "fmt ") {
      if (size < 16) throw ParseError("wav: fmt chunk too small");
      format = r.u16();
      channels = r.u16();
      rate = r.u32();
      r.u32();  // byte rate
      r.u16();  // block align
      bits = r.u16();
      if (size > 16) r.read_string(size - 16, "wav: fmt extension");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw ParseError("wav: data chunk before fmt chunk");
      if (format != kWaveFormatPcm) throw UnsupportedFormat("wav: not PCM");
      if (channels != 1) throw UnsupportedFormat("wav: expected mono");
      if (bits != 16) throw UnsupportedFormat("wav: expected 16-bit samples");
      if (rate == 0) throw ParseError("wav: zero sample rate");
      if (size % 2 != 0) throw ParseError("wav: odd data chunk size");
      if (r.remaining() < size) throw ParseError("wav: truncated data chunk");
      out.samples.resize(size / 2);
      if (size > 0) r.read_into(out.samples.data(), size, "wav: data");
      out.sample_rate = static_cast<int>(rate);
      have_data = true;
    } else {
      if (r.remaining() < size) throw ParseError("wav: truncated chunk: " + id);
      r.read_string(size, "wav: chunk");
    }
    // RIFF pads odd chunks to even offsets; tolerate a missing final pad.
    if (size % 2 == 1 && r.remaining() > 0) r.read_string(1, "wav: pad");
  }
  if (!have_data) throw ParseError("wav: missing data chunk");
  return out;
}

PcmBuffer read_wav(const std::string& path) {
  return parse_wav(read_file_bytes(path));
}

std::string serialize_wav(const PcmBuffer& buf) {
  if (buf.sample_rate <= 0) throw DataError("wav: invalid sample rate");
  const uint32_t data_size = static_cast<uint32_t>(buf.samples.size() * 2);
  ByteWriter w;
  w.magic("RIFF");
  w.u32(36 + data_size);
  w.magic("WAVE");
  w.magic("fmt ");
  w.u32(16);
  w.u16(kWaveFormatPcm);
  w.u16(1);
  w.u32(static_cast<uint32_t>(buf.sample_rate));
  w.u32(static_cast<uint32_t>(buf.sample_rate) * 2);
  w.u16(2);
  w.u16(16);
  w.magic("data");
  w.u32(data_size);
  w.bytes(buf.samples.data(), data_size);
  return w.str();
}

void write_wav(const std::string& path, const PcmBuffer& buf) {
  write_file_bytes(path, serialize_wav(buf));
}

PcmBuffer resample_to_16k(const PcmBuffer& buf) {
  const RationalRatio ratio = ratio_to_16k(buf.sample_rate);
  if (ratio.up == 1 && ratio.down == 1) return buf;

  const int64_t in_len = buf.size();
  PcmBuffer out;
  out.sample_rate = kTargetSampleRate;
  if (in_len == 0) return out;

  const int64_t out_len = std::llround(static_cast<double>(in_len) * ratio.up /
                                       static_cast<double>(ratio.down));
  out.samples.resize(static_cast<size_t>(out_len));

  const std::vector<double> taps = build_phase_taps(ratio);
  for (int64_t n = 0; n < out_len; ++n) {
    const int64_t num = n * ratio.down;
    const int64_t q = num / ratio.up;       // integer input position
    const int64_t p = num % ratio.up;       // phase
    const double* h = &taps[static_cast<size_t>(p) * kTapsPerPhase];
    double acc = 0.0;
    for (int i = 0; i < kTapsPerPhase; ++i) {
      const int64_t idx = q + i - (kHalfTaps - 1);
      if (idx < 0 || idx >= in_len) continue;
      acc += h[i] * buf.samples[static_cast<size_t>(idx)];
    }
    out.samples[static_cast<size_t>(n)] = clamp_to_i16(acc);
  }
  return out;
}

std::pair<int64_t, int64_t> slice_bounds(double start_s, double end_s,
                                         int64_t n_samples, int sample_rate) {
  const int64_t start = std::llround(start_s * sample_rate);
  int64_t len = std::llround((end_s - start_s) * sample_rate);
  if (start + len == n_samples + 1) len -= 1;  // half-sample tail overshoot
  if (start < 0 || len < 0 || start + len > n_samples) {
    throw RangeError("slice out of range: [" + std::to_string(start_s) + ", " +
                     std::to_string(end_s) + ") over " +
                     std::to_string(n_samples) + " samples");
  }
  return {start, len};
}

PcmBuffer slice_clip(const PcmBuffer& buf, double start_s, double end_s) {
  if (start_s < 0 || end_s <= start_s) {
    throw RangeError("slice span must satisfy 0 <= start < end");
  }
  const auto [start, len] = slice_bounds(start_s, end_s, buf.size(), buf.sample_rate);
  PcmBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.assign(buf.samples.begin() + start, buf.samples.begin() + start + len);
  return out;
}

PcmBuffer concat_clips(const std::vector<PcmBuffer>& clips) {
  if (clips.empty()) throw EmptyInput("concat_clips: empty clip list");
  const int rate = clips.front().sample_rate;
  int64_t total = 0;
  for (const PcmBuffer& c : clips) {
    if (c.sample_rate != rate) {
      throw UnsupportedFormat("concat_clips: mixed sample rates");
    }
    total += c.size();
  }
  PcmBuffer out;
  out.sample_rate = rate;
  out.samples.reserve(static_cast<size_t>(total));
  for (const PcmBuffer& c : clips) {
    out.samples.insert(out.samples.end(), c.samples.begin(), c.samples.end());
  }
  return out;
}

}  // namespace cskit
