#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace chaosbox {

inline constexpr int kSBoxSize = 256;
inline constexpr int kSBoxBits = 8;

using SBoxTable = std::array<std::uint8_t, kSBoxSize>;

// An 8x8 substitution table. Constructed checked (must be a permutation of
// 0..255) unless built through unchecked(), which exists so that broken
// boxes can still be inspected.
class SBox {
 public:
  explicit SBox(const SBoxTable& table);

  static SBox unchecked(const SBoxTable& table);
  static SBox identity();

  std::uint8_t operator()(int x) const { return table_[static_cast<std::size_t>(x)]; }
  std::uint8_t operator[](int x) const { return table_[static_cast<std::size_t>(x)]; }

  const SBoxTable& table() const { return table_; }
  std::span<const std::uint8_t, kSBoxSize> values() const { return table_; }

  bool is_bijective() const;

  void swap_entries(int i, int j) {
    std::swap(table_[static_cast<std::size_t>(i)], table_[static_cast<std::size_t>(j)]);
  }

  friend bool operator==(const SBox&, const SBox&) = default;

 private:
  struct NoCheck {};
  SBox(const SBoxTable& table, NoCheck) : table_(table) {}

  SBoxTable table_;
};

bool is_permutation(std::span<const std::uint8_t, kSBoxSize> table);

// Throws NotBijective unless the box is a permutation or allow is set.
void require_bijective(const SBox& box, bool allow_non_bijective);

inline int parity8(unsigned v) {
  v ^= v >> 4;
  v ^= v >> 2;
  v ^= v >> 1;
  return static_cast<int>(v & 1U);
}

// Truth table of parity(mask & S(x)).
class BooleanComponent {
 public:
  BooleanComponent(const SBox& box, std::uint8_t mask);
  explicit BooleanComponent(const std::array<std::uint8_t, kSBoxSize>& bits,
                            std::uint8_t mask = 0);

  int operator()(int x) const { return bits_[static_cast<std::size_t>(x)]; }
  std::uint8_t mask() const { return mask_; }
  const std::array<std::uint8_t, kSBoxSize>& bits() const { return bits_; }

  BooleanComponent operator^(const BooleanComponent& other) const;

 private:
  std::array<std::uint8_t, kSBoxSize> bits_{};
  std::uint8_t mask_ = 0;
};

}  // namespace chaosbox
