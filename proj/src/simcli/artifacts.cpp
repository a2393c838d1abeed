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

#include "twinforge/simcli/artifacts.hpp"

#include <array>
#include <cstdio>
#include <memory>

#include <openssl/evp.h>

#include "twinforge/common/error.hpp"

namespace twinforge {

AtomicFile::AtomicFile(std::filesystem::path path, bool binary)
    : path_(std::move(path)), temp_(path_.string() + ".tmp") {
  if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  out_.open(temp_, binary ? std::ios::out | std::ios::binary | std::ios::trunc
                          : std::ios::out | std::ios::trunc);
  if (!out_) {
    throw Error(ErrorCode::kUnavailable, "cannot write " + temp_.string());
  }
}

AtomicFile::~AtomicFile() {
  if (committed_) return;
  out_.close();
  std::error_code ec;
  std::filesystem::remove(temp_, ec);
}

void AtomicFile::Commit() {
  out_.flush();
  if (!out_) throw Error(ErrorCode::kUnavailable, "write failed: " + temp_.string());
  out_.close();
  std::filesystem::rename(temp_, path_);
  committed_ = true;
}

std::string FormatDouble(double value) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return buf.data();
}

std::string FormatFloat(float value) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.9g", static_cast<double>(value));
  return buf.data();
}

namespace {

std::string Digest(const auto& feed) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kUnavailable, "sha256 unavailable");
  }
  feed([&](const char* data, std::size_t n) {
    EVP_DigestUpdate(ctx.get(), data, n);
  });
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

}  // namespace

std::string Sha256Hex(const std::string& bytes) {
  return Digest([&](auto update) { update(bytes.data(), bytes.size()); });
}

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path.string());
  return Digest([&](auto update) {
    std::array<char, 1 << 16> buf{};
    while (in) {
      in.read(buf.data(), buf.size());
      if (in.gcount() > 0) update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
  });
}

}  // namespace twinforge
