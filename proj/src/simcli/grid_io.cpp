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

#include "twinforge/simcli/grid_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include <yaml-cpp/yaml.h>

#include "twinforge/common/error.hpp"
#include "twinforge/simcli/artifacts.hpp"

namespace twinforge {
namespace {

// Pixel probability convention of ROS map_server (negate = 0).
constexpr double kOccupiedThresh = 0.65;
constexpr double kFreeThresh = 0.196;

[[noreturn]] void BadMap(const std::string& detail) {
  throw Error(ErrorCode::kBadFormat, "bad map file: " + detail);
}

// Next header token, skipping whitespace and '#' comments.
std::string HeaderToken(const std::string& data, std::size_t& pos) {
  while (pos < data.size()) {
    if (data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(data[pos]))) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos])) &&
         data[pos] != '#') {
    ++pos;
  }
  return data.substr(start, pos - start);
}

int HeaderInt(const std::string& data, std::size_t& pos, const char* what) {
  const std::string tok = HeaderToken(data, pos);
  if (tok.empty() || tok.size() > 9 ||
      tok.find_first_not_of("0123456789") != std::string::npos) {
    BadMap(std::string("invalid ") + what);
  }
  return std::stoi(tok);
}

struct Pgm {
  int width = 0;
  int height = 0;
  std::string pixels;
};

Pgm ReadPgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open map image " + path.string());
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  if (HeaderToken(data, pos) != "P5") BadMap("expected P5 magic");
  Pgm pgm;
  pgm.width = HeaderInt(data, pos, "width");
  pgm.height = HeaderInt(data, pos, "height");
  const int maxval = HeaderInt(data, pos, "maxval");
  if (pgm.width <= 0 || pgm.height <= 0 || maxval != 255) BadMap("unsupported dimensions or maxval");
  if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos]))) {
    BadMap("truncated header");
  }
  ++pos;
  const std::size_t n = static_cast<std::size_t>(pgm.width) * static_cast<std::size_t>(pgm.height);
  if (data.size() - pos != n) BadMap("pixel count does not match header");
  pgm.pixels = data.substr(pos);
  return pgm;
}

}  // namespace

std::vector<std::uint8_t> GridToPixels(const OccupancyGrid& grid,
                                       const ClassThresholds& t) {
  const int w = grid.width();
  const int h = grid.height();
  std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int row = 0; row < h; ++row) {
    const int y = h - 1 - row;
    for (int x = 0; x < w; ++x) {
      std::uint8_t px = kPixelUnknown;
      switch (grid.Classify({x, y}, t)) {
        case CellClass::kOccupied:
          px = kPixelOccupied;
          break;
        case CellClass::kFree:
          px = kPixelFree;
          break;
        case CellClass::kUnknown:
          break;
      }
      out[static_cast<std::size_t>(row) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] = px;
    }
  }
  return out;
}

void save_grid(const OccupancyGrid& grid, const std::filesystem::path& pgm_path,
               const ClassThresholds& t) {
  const auto pixels = GridToPixels(grid, t);
  std::filesystem::path yaml_path = pgm_path;
  yaml_path.replace_extension(".yaml");

  AtomicFile image(pgm_path, true);
  image.stream() << "P5\n" << grid.width() << ' ' << grid.height() << "\n255\n";
  image.stream().write(reinterpret_cast<const char*>(pixels.data()),
                       static_cast<std::streamsize>(pixels.size()));

  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "image" << YAML::Value << pgm_path.filename().string();
  e << YAML::Key << "resolution" << YAML::Value << FormatDouble(grid.resolution());
  e << YAML::Key << "origin" << YAML::Value << YAML::Flow << YAML::BeginSeq
    << FormatDouble(grid.origin().x) << FormatDouble(grid.origin().y)
    << FormatDouble(grid.origin().yaw) << YAML::EndSeq;
  e << YAML::Key << "negate" << YAML::Value << 0;
  e << YAML::Key << "occupied_thresh" << YAML::Value << kOccupiedThresh;
  e << YAML::Key << "free_thresh" << YAML::Value << kFreeThresh;
  e << YAML::Key << "mode" << YAML::Value << "trinary";
  e << YAML::Key << "log_odds_occupied" << YAML::Value << FormatDouble(t.occupied);
  e << YAML::Key << "log_odds_free" << YAML::Value << FormatDouble(t.free);
  e << YAML::Key << "log_odds_min" << YAML::Value << FormatDouble(grid.min_log_odds());
  e << YAML::Key << "log_odds_max" << YAML::Value << FormatDouble(grid.max_log_odds());
  e << YAML::EndMap;
  AtomicFile sidecar(yaml_path);
  sidecar.stream() << e.c_str() << '\n';

  image.Commit();
  sidecar.Commit();
}

OccupancyGrid load_grid(const std::filesystem::path& path) {
  std::filesystem::path yaml_path = path;
  if (path.extension() != ".yaml" && path.extension() != ".yml") {
    yaml_path.replace_extension(".yaml");
  }
  if (!std::filesystem::exists(yaml_path)) {
    throw Error(ErrorCode::kNotFound, "missing map metadata " + yaml_path.string());
  }

  YAML::Node meta;
  try {
    meta = YAML::LoadFile(yaml_path.string());
  } catch (const YAML::Exception& e) {
    BadMap(e.what());
  }
  double resolution = 0.0;
  double ox = 0.0, oy = 0.0, oyaw = 0.0;
  double occ = kOccupiedThresh, fre = kFreeThresh;
  double lmin = -4.0, lmax = 4.0;
  bool negate = false;
  std::string image;
  try {
    if (!meta.IsMap() || !meta["image"] || !meta["resolution"] || !meta["origin"]) {
      BadMap("sidecar needs image, resolution and origin");
    }
    image = meta["image"].as<std::string>();
    resolution = meta["resolution"].as<double>();
    const YAML::Node origin = meta["origin"];
    if (!origin.IsSequence() || origin.size() != 3) BadMap("origin must be [x, y, yaw]");
    ox = origin[0].as<double>();
    oy = origin[1].as<double>();
    oyaw = origin[2].as<double>();
    if (meta["occupied_thresh"]) occ = meta["occupied_thresh"].as<double>();
    if (meta["free_thresh"]) fre = meta["free_thresh"].as<double>();
    if (meta["negate"]) negate = meta["negate"].as<int>() != 0;
    if (meta["log_odds_min"]) lmin = meta["log_odds_min"].as<double>();
    if (meta["log_odds_max"]) lmax = meta["log_odds_max"].as<double>();
  } catch (const YAML::Exception& e) {
    BadMap(e.what());
  }
  if (!(resolution > 0.0)) BadMap("resolution must be positive");

  std::filesystem::path image_path(image);
  if (image_path.is_relative()) image_path = yaml_path.parent_path() / image_path;
  const Pgm pgm = ReadPgm(image_path);

  OccupancyGrid grid(pgm.width, pgm.height, resolution, {ox, oy, oyaw}, lmin, lmax);
  for (int row = 0; row < pgm.height; ++row) {
    const int y = pgm.height - 1 - row;
    for (int x = 0; x < pgm.width; ++x) {
      const auto v = static_cast<std::uint8_t>(
          pgm.pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(pgm.width) +
                     static_cast<std::size_t>(x)]);
      const double p = negate ? v / 255.0 : (255.0 - v) / 255.0;
      if (p > occ) {
        grid.Set({x, y}, lmax);
      } else if (p < fre) {
        grid.Set({x, y}, lmin);
      }
    }
  }
  grid.TakeDirty();
  return grid;
}

}  // namespace twinforge
