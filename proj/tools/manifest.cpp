#include "manifest.hpp"

#include <array>
#include <memory>

#include <openssl/evp.h>

#include "keyforge/error.hpp"

namespace keyforge::cli {

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw std::runtime_error("sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string RunManifest::read_input(const std::filesystem::path& path) {
  std::string content = read_text_file(path);
  inputs_.push_back({path.generic_string(), sha256_hex(content)});
  return content;
}

void RunManifest::write_output(const std::filesystem::path& path, std::string_view content) {
  write_text_file(path, content);
  outputs_.push_back({path.generic_string(), sha256_hex(content)});
}

Json RunManifest::to_json() const {
  auto entries = [](const std::vector<Entry>& list) {
    Json arr = Json::array();
    for (const auto& e : list) arr.push_back({{"path", e.path}, {"sha256", e.sha256}});
    return arr;
  };
  Json j;
  j["command"] = command_;
  j["version"] = kToolVersion;
  j["config"] = config_;
  j["inputs"] = entries(inputs_);
  j["outputs"] = entries(outputs_);
  if (!diagnostics_.empty()) j["diagnostics"] = diagnostics_;
  return j;
}

std::filesystem::path RunManifest::finish(const std::filesystem::path& primary) const {
  std::filesystem::path out = primary;
  out += ".manifest.json";
  write_text_file(out, dump_json(to_json()));
  return out;
}

}  // namespace keyforge::cli
