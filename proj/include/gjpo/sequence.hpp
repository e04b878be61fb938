#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gjpo {

/// One period of a binary periodic sequence.
///
/// The stored period is always the least period: constructors reduce the
/// input, so two sequences are equal as objects iff they are bit-identical
/// periods, and shift-equivalent iff their canonical rotations are equal.
class PeriodicSequence {
 public:
  explicit PeriodicSequence(std::vector<std::uint8_t> bits, std::optional<unsigned> declared_order = {});

  /// Accepts '0'/'1' characters; whitespace and '~' group separators are skipped.
  static PeriodicSequence parse(std::string_view text, std::optional<unsigned> declared_order = {});

  std::size_t period() const noexcept { return bits_.size(); }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  /// Cyclic access.
  bool bit(std::size_t i) const noexcept { return bits_[i % bits_.size()]; }

  /// Order of the register that produced the sequence, when known. Never inferred.
  std::optional<unsigned> declared_order() const noexcept { return declared_order_; }

  PeriodicSequence rotated(std::size_t shift) const;
  PeriodicSequence rotation_canonical() const;
  bool shift_equivalent(const PeriodicSequence& other) const;

  std::string to_string() const;
  /// Display form with a space every `group` bits.
  std::string grouped(std::size_t group = 4) const;

  friend bool operator==(const PeriodicSequence& a, const PeriodicSequence& b) { return a.bits_ == b.bits_; }
  friend auto operator<=>(const PeriodicSequence& a, const PeriodicSequence& b) { return a.bits_ <=> b.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::optional<unsigned> declared_order_;
};

/// Least k such that every cyclic window of length k determines the bit that
/// follows it. For a periodic sequence this equals the smallest number of
/// stages of any feedback shift register generating it.
std::size_t nonlinear_complexity(const PeriodicSequence& s);

/// Period is 2^n and all 2^n cyclic n-windows are distinct.
bool is_de_bruijn(const PeriodicSequence& s, unsigned n);

PeriodicSequence rotation_canonical(const PeriodicSequence& s);

/// Start index of the lexicographically least rotation (Booth).
std::size_t least_rotation(std::span<const std::uint8_t> bits);

/// Smallest p dividing the length such that the sequence is p-periodic.
std::size_t least_period(std::span<const std::uint8_t> bits);

/// ids[i] identifies the cyclic window of length k starting at position i:
/// ids are equal iff the windows are. For k <= 64 the id is the window
/// itself packed most-significant-first, so ids order like the windows.
std::vector<std::uint64_t> window_ids(std::span<const std::uint8_t> bits, std::size_t k);

}  // namespace gjpo
