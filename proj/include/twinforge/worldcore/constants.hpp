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

#ifndef TWINFORGE_WORLDCORE_CONSTANTS_HPP_
#define TWINFORGE_WORLDCORE_CONSTANTS_HPP_

namespace twinforge {

inline constexpr double kGravity = 9.81;  // m/s^2

}  // namespace twinforge

#endif  // TWINFORGE_WORLDCORE_CONSTANTS_HPP_
