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

#include "twinforge/sensors/encoder.hpp"

#include <cmath>

namespace twinforge {

std::int64_t encoder_read(double revolutions, const EncoderParams& params) {
  return static_cast<std::int64_t>(std::floor(
      params.pulses_per_revolution * params.gear_ratio * revolutions));
}

}  // namespace twinforge
