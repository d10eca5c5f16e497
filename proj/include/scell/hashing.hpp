#pragma once

#include <cstdint>
#include <string>

namespace scell {

// Stable 64-bit FNV-1a. Used to derive per-trial RNG seeds from run
// parameters, so results are reproducible across platforms and runs.
// std::hash is deliberately avoided: it is not specified to be stable.
class StableHash {
 public:
  StableHash& bytes(const void* data, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state_ ^= b[i];
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  StableHash& u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    return bytes(b, 8);
  }
  StableHash& i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v)); }
  StableHash& str(const std::string& s) {
    u64(s.size());
    return bytes(s.data(), s.size());
  }
  std::uint64_t get() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

// splitmix64: tiny, fast, and fully specified, so streams are identical
// on every platform. Raw engine behind all sampling in this project.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Modulo bias is < 2^-32 for bound < 2^32,
  // far below anything observable at our sample counts.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace scell
