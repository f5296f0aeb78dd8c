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

#ifndef CSKIT_AUDIO_HPP_
#define CSKIT_AUDIO_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cskit {

inline constexpr int kTargetSampleRate = 16000;

struct PcmBuffer {
  std::vector<int16_t> samples;
  int sample_rate = 0;

  int64_t size() const { return static_cast<int64_t>(samples.size()); }
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// RIFF/WAVE, PCM signed 16-bit little-endian, mono. Anything else is
// UnsupportedFormat; structural damage (bad magic, truncated chunks) is
// ParseError.
PcmBuffer read_wav(const std::string& path);
PcmBuffer parse_wav(const std::string& bytes);

void write_wav(const std::string& path, const PcmBuffer& buf);
std::string serialize_wav(const PcmBuffer& buf);

// Polyphase windowed-sinc (Kaiser, 16 taps per phase) rational resampler.
// Source rates: 16000 (returned verbatim), 22050, 24000, 44100, 48000.
PcmBuffer resample_to_16k(const PcmBuffer& buf);

// Second -> sample conversion for a clip, rounding half away from zero,
// applied once here so concatenation cannot accumulate drift. When both
// endpoints round up the tail can exceed the buffer by one sample; the
// length is clamped to the buffer in that case. Returns {start, length}.
std::pair<int64_t, int64_t> slice_bounds(double start_s, double end_s,
                                         int64_t n_samples, int sample_rate);

PcmBuffer slice_clip(const PcmBuffer& buf, double start_s, double end_s);

PcmBuffer concat_clips(const std::vector<PcmBuffer>& clips);

}  // namespace cskit

#endif  // CSKIT_AUDIO_HPP_
