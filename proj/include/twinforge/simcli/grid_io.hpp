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

#ifndef TWINFORGE_SIMCLI_GRID_IO_HPP_
#define TWINFORGE_SIMCLI_GRID_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "twinforge/autonomy/occupancy_grid.hpp"

namespace twinforge {

inline constexpr std::uint8_t kPixelOccupied = 0;
inline constexpr std::uint8_t kPixelFree = 254;
inline constexpr std::uint8_t kPixelUnknown = 205;

// Row 0 of the image is the top (largest y) grid row.
std::vector<std::uint8_t> GridToPixels(const OccupancyGrid& grid,
                                       const ClassThresholds& t = {});

// Binary P5 image plus a "<stem>.yaml" sidecar next to it (image,
// resolution, origin, thresholds). Both files are written atomically.
void save_grid(const OccupancyGrid& grid, const std::filesystem::path& pgm_path,
               const ClassThresholds& t = {});

// Accepts the .pgm or the .yaml path. Cells load as max log-odds (occupied),
// min (free) or 0 (unknown), so classes survive a round trip exactly. A
// malformed image or sidecar throws kBadFormat "bad map file".
OccupancyGrid load_grid(const std::filesystem::path& path);

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_GRID_IO_HPP_
