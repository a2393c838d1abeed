/*
 * Copyright 2026 The TwinForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TWINFORGE_SENSORS_ENCODER_HPP_
#define TWINFORGE_SENSORS_ENCODER_HPP_

#include <cstdint>

namespace twinforge {

struct EncoderParams {
  double pulses_per_revolution = 16.0;  // PPR
  double gear_ratio = 120.0;            // CGR, cumulative
};

// floor(PPR * CGR * N_rev).
std::int64_t encoder_read(double revolutions, const EncoderParams& params);

}  // namespace twinforge

#endif  // TWINFORGE_SENSORS_ENCODER_HPP_
