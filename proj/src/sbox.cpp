#include "chaosbox/sbox.hpp"

#include <bitset>
#include <string>

#include "chaosbox/error.hpp"

namespace chaosbox {

bool is_permutation(std::span<const std::uint8_t, kSBoxSize> table) {
  std::bitset<kSBoxSize> seen;
  for (std::uint8_t v : table) seen.set(v);
  return seen.all();
}

SBox::SBox(const SBoxTable& table) : table_(table) {
  if (!is_permutation(table_)) {
    throw Error(ErrorKind::NotBijective, "table is not a permutation of 0..255");
  }
}

SBox SBox::unchecked(const SBoxTable& table) { return SBox(table, NoCheck{}); }

SBox SBox::identity() {
  SBoxTable t{};
  for (int i = 0; i < kSBoxSize; ++i) t[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return SBox(t, NoCheck{});
}

bool SBox::is_bijective() const { return is_permutation(table_); }

void require_bijective(const SBox& box, bool allow_non_bijective) {
  if (!allow_non_bijective && !box.is_bijective()) {
    throw Error(ErrorKind::NotBijective,
                "S-box is not a permutation (use --allow-non-bijective to inspect anyway)");
  }
}

BooleanComponent::BooleanComponent(const SBox& box, std::uint8_t mask) : mask_(mask) {
  for (int x = 0; x < kSBoxSize; ++x) {
    bits_[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(parity8(box(x) & mask));
  }
}

BooleanComponent::BooleanComponent(const std::array<std::uint8_t, kSBoxSize>& bits,
                                   std::uint8_t mask)
    : bits_(bits), mask_(mask) {
  for (std::uint8_t b : bits_) {
    if (b > 1) throw Error(ErrorKind::InvalidArgument, "Boolean truth table entries must be 0 or 1");
  }
}

BooleanComponent BooleanComponent::operator^(const BooleanComponent& other) const {
  std::array<std::uint8_t, kSBoxSize> out{};
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = bits_[x] ^ other.bits_[x];
  return BooleanComponent(out, static_cast<std::uint8_t>(mask_ ^ other.mask_));
}

}  // namespace chaosbox
