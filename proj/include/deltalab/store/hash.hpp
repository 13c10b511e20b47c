#pragma once

#include <openssl/evp.h>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace deltalab {

inline std::string sha1_hex(const std::string &data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr) != 1) throw std::runtime_error("sha1 failed");
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

/// SHA-1 of "blob <size>\0<content>", the object id git assigns to `content`.
inline std::string git_blob_sha1(const std::string &content) {
  std::string obj = "blob " + std::to_string(content.size());
  obj.push_back('\0');
  obj += content;
  return sha1_hex(obj);
}

} // namespace deltalab
