#include "ontoform/hash.hpp"

#include <array>
#include <stdexcept>

#include <openssl/evp.h>

#include "ontoform/turtle.hpp"

namespace ontoform {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string graph_hash(const Graph& graph) {
  return sha256_hex(serialize_turtle(canonicalize_blanks(graph)));
}

}  // namespace ontoform
