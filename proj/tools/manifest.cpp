#include "manifest.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "ramlab/errors.hpp"

#ifndef RAMLAB_VERSION
#define RAMLAB_VERSION "unknown"
#endif

namespace ramlab::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string() + " for checksumming");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw IoError("sha256 unavailable");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  std::string hex;
  char pair[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(pair, sizeof pair, "%02x", digest[i]);
    hex += pair;
  }
  return hex;
}

Manifest::Manifest(std::string command, Json config) : command_(std::move(command)), config_(std::move(config)) {}

void Manifest::add_output(const std::filesystem::path& path) { outputs_.push_back(path); }

void Manifest::write(const std::filesystem::path& path, double wall_seconds) const {
  Json files = Json::array();
  for (const auto& out : outputs_) {
    files.push_back({{"file", out.filename().string()},
                     {"bytes", std::filesystem::file_size(out)},
                     {"sha256", sha256_file(out)}});
  }
  Json j;
  j["schema"] = "ramlab-manifest/1";
  j["command"] = command_;
  j["version"] = {{"ramlab", RAMLAB_VERSION}, {"compiler", __VERSION__}, {"cplusplus", __cplusplus}};
  j["config"] = config_;
  j["wall_seconds"] = wall_seconds;
  j["outputs"] = files;
  write_json(path, j);
}

}  // namespace ramlab::cli
