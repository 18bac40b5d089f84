#include "argimpact/sha1.hpp"

#include <array>
#include <cstdint>
#include <cstring>

namespace argimpact {

namespace {

inline std::uint32_t rol(std::uint32_t v, int bits) {
  return (v << bits) | (v >> (32 - bits));
}

struct Sha1State {
  std::array<std::uint32_t, 5> h{0x67452301u, 0xEFCDAB89u, 0x98BADCFEu,
                                 0x10325476u, 0xC3D2E1F0u};
  std::uint64_t total_bits = 0;

  void process_block(const unsigned char* p) {
    std::uint32_t w[80];
    for (int i = 0; i < 16; ++i) {
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    }
    for (int i = 16; i < 80; ++i) {
      w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
    }
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
    for (int i = 0; i < 80; ++i) {
      std::uint32_t f, k;
      if (i < 20) {
        f = (b & c) | (~b & d);
        k = 0x5A827999u;
      } else if (i < 40) {
        f = b ^ c ^ d;
        k = 0x6ED9EBA1u;
      } else if (i < 60) {
        f = (b & c) | (b & d) | (c & d);
        k = 0x8F1BBCDCu;
      } else {
        f = b ^ c ^ d;
        k = 0xCA62C1D6u;
      }
      const std::uint32_t tmp = rol(a, 5) + f + e + k + w[i];
      e = d;
      d = c;
      c = rol(b, 30);
      b = a;
      a = tmp;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
  }
};

}  // namespace

std::string sha1_hex(std::string_view data) {
  Sha1State st;
  st.total_bits = std::uint64_t(data.size()) * 8;

  const unsigned char* p = reinterpret_cast<const unsigned char*>(data.data());
  std::size_t n = data.size();
  while (n >= 64) {
    st.process_block(p);
    p += 64;
    n -= 64;
  }

  unsigned char tail[128];
  std::memset(tail, 0, sizeof(tail));
  std::memcpy(tail, p, n);
  tail[n] = 0x80;
  const std::size_t tail_len = (n < 56) ? 64 : 128;
  for (int i = 0; i < 8; ++i) {
    tail[tail_len - 1 - i] =
        static_cast<unsigned char>((st.total_bits >> (8 * i)) & 0xFF);
  }
  st.process_block(tail);
  if (tail_len == 128) st.process_block(tail + 64);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(40);
  for (std::uint32_t word : st.h) {
    for (int shift = 28; shift >= 0; shift -= 4) {
      out.push_back(hex[(word >> shift) & 0xF]);
    }
  }
  return out;
}

std::string git_blob_sha1(std::string_view data) {
  std::string framed = "blob " + std::to_string(data.size());
  framed.push_back('\0');
  framed.append(data);
  return sha1_hex(framed);
}

}  // namespace argimpact
