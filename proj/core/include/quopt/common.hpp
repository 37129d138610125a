/**
 * @file common.hpp
 * @brief Shared error types, deterministic RNG helpers, and bitstring
 *        conventions used across the library.
 *
 * Conventions fixed here and relied on everywhere else:
 *  - Basis states are indexed little-endian: qubit 0 is the least
 *    significant bit of the state index.
 *  - Human-readable bitstrings are rendered most-significant-qubit first,
 *    i.e. format_bits / parse_bits are the single place the order flips.
 *  - All randomness flows through Rng so that results are reproducible
 *    byte-for-byte across platforms and worker counts.
 */

#pragma once

#include <charconv>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace quopt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: wrong shape, unknown kind, out-of-range value.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// A configured resource cap was exceeded (qubits, search space, ...).
class CapacityError : public Error {
public:
  using Error::Error;
};

/// A symbolic parameter was missing or superfluous in a binding.
class BindingError : public Error {
public:
  using Error::Error;
};

/// Malformed or inconsistent persisted data.
class DataError : public Error {
public:
  using Error::Error;
};

/// Deterministic pseudo-random source. Wraps std::mt19937_64 (whose output
/// sequence is pinned by the standard) and derives doubles/ints with fixed
/// arithmetic instead of the implementation-defined std distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t next_index(std::uint64_t n) {
    // Modulo bias is irrelevant for the small n used here; determinism is
    // what matters.
    return next_u64() % n;
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_index(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Fisher-Yates shuffle with this generator.
  template <typename T> void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_index(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent seeds from (seed, salt).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a over a byte string; used to salt seeds with record ids.
inline std::uint64_t hash_string(const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Renders basis-state `index` of an `n`-qubit register as a human-readable
/// bitstring, most significant qubit first ("q_{n-1} ... q_1 q_0").
inline std::string format_bits(std::uint64_t index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if ((index >> q) & 1ULL)
      s[static_cast<std::size_t>(n - 1 - q)] = '1';
  return s;
}

/// Inverse of format_bits.
inline std::uint64_t parse_bits(const std::string &bits) {
  std::uint64_t index = 0;
  int n = static_cast<int>(bits.size());
  for (int i = 0; i < n; ++i) {
    char c = bits[static_cast<std::size_t>(i)];
    if (c != '0' && c != '1')
      throw ParameterError("bitstring must contain only '0'/'1': " + bits);
    if (c == '1')
      index |= 1ULL << (n - 1 - i);
  }
  return index;
}

/// Shortest round-trip decimal representation of a double ("1.5", "-1", ...).
inline std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

} // namespace quopt
