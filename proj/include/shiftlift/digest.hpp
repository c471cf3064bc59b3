#pragma once

#include <openssl/evp.h>

#include <array>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "shiftlift/graph.hpp"

namespace shiftlift {

/// Lowercase hex SHA-256 of bytes.
inline std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
    throw std::runtime_error("sha256: OpenSSL digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

/// Digest of the canonical edge-list form: "n m", sorted edges, then the
/// bipartition classes if present.
inline std::string graph_digest(const Graph& g) {
  std::ostringstream os;
  os << g.n() << ' ' << g.m() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  if (const auto& bp = g.bipartition()) {
    os << "L";
    for (Vertex v : bp->left) os << ' ' << v;
    os << "\nR";
    for (Vertex v : bp->right) os << ' ' << v;
    os << '\n';
  }
  return sha256_hex(os.str());
}

}  // namespace shiftlift
