#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace pasflab {

/// Subset of {1, ..., N} stored as a bitmask: bit k-1 holds membership of
/// index k.  N is capped at 64 (the supported enumeration envelope).
class IndexSet {
 public:
  IndexSet(std::uint64_t bits, int ambient) : bits_(bits), ambient_(ambient) {
    if (ambient < 1 || ambient > 64)
      throw std::invalid_argument("IndexSet ambient size must be in [1, 64]");
    if (ambient < 64 && (bits >> ambient) != 0)
      throw std::invalid_argument("IndexSet bitmask has bits beyond the ambient size");
  }

  static IndexSet empty(int ambient) { return IndexSet(0, ambient); }

  static IndexSet full(int ambient) {
    return IndexSet(ambient == 64 ? ~0ULL : (1ULL << ambient) - 1ULL, ambient);
  }

  /// Builds from 1-based member indices.
  static IndexSet of(std::initializer_list<int> members, int ambient) {
    std::uint64_t b = 0;
    for (int k : members) {
      if (k < 1 || k > ambient) throw std::invalid_argument("IndexSet member out of range");
      b |= 1ULL << (k - 1);
    }
    return IndexSet(b, ambient);
  }

  std::uint64_t bits() const { return bits_; }
  int ambient() const { return ambient_; }
  int size() const { return std::popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }

  /// Membership of the 1-based index k.
  bool contains(int k) const {
    return k >= 1 && k <= ambient_ && ((bits_ >> (k - 1)) & 1ULL) != 0;
  }

  IndexSet complement() const {
    return IndexSet(full(ambient_).bits() & ~bits_, ambient_);
  }

  /// Ascending 1-based members.
  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int k = 1; k <= ambient_; ++k)
      if (contains(k)) out.push_back(k);
    return out;
  }

  std::string to_hex() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(bits_));
    return buf;
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::uint64_t bits_;
  int ambient_;
};

}  // namespace pasflab
