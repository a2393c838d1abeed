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

#ifndef TWINFORGE_SENSORS_NOISE_HPP_
#define TWINFORGE_SENSORS_NOISE_HPP_

#include <cstdint>
#include <random>

namespace twinforge {

// Additive zero-mean Gaussian noise. sigma == 0 returns the input untouched
// and does not consume random numbers.
class GaussianNoise {
 public:
  explicit GaussianNoise(std::uint64_t seed = 0) : engine_(seed) {}

  double Apply(double value, double sigma) {
    if (sigma <= 0.0) return value;
    return value + sigma * unit_(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> unit_{0.0, 1.0};
};

}  // namespace twinforge

#endif  // TWINFORGE_SENSORS_NOISE_HPP_
