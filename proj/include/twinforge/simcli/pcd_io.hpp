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

#ifndef TWINFORGE_SIMCLI_PCD_IO_HPP_
#define TWINFORGE_SIMCLI_PCD_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "twinforge/sensors/lidar.hpp"

namespace twinforge {

// ASCII PCD v0.7, fields x y z as 4-byte floats, points in cloud order.
void WriteCloud(std::ostream& out, const PointCloud& cloud);
void save_cloud(const PointCloud& cloud, const std::filesystem::path& path);

// Reads the ASCII x y z subset written above.
PointCloud ParseCloud(std::istream& in);
PointCloud load_cloud(const std::filesystem::path& path);

}  // namespace twinforge

#endif  // TWINFORGE_SIMCLI_PCD_IO_HPP_
