#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gjpo/bit_array.hpp"

namespace gjpo {

using StateId = std::uint32_t;

// States are packed into 32-bit ids, which caps the order independently of
// the (much smaller) configurable limit used for state-graph construction.
inline constexpr unsigned kMaxSupportedOrder = 30;
inline constexpr unsigned kDefaultMaxOrder = 20;

/// An n-bit shift-register state s_0 s_1 ... s_{n-1}.
///
/// Bit convention: s_0 is the most significant bit of id(), s_{n-1} the
/// least significant, so the printed string reads left to right as s_0..s_{n-1}
/// and the numeric order of ids is the lexicographic order of the strings.
class RegisterState {
 public:
  RegisterState(unsigned order, StateId id);

  static RegisterState parse(std::string_view text);
  static RegisterState zeros(unsigned order) { return {order, 0}; }
  static RegisterState ones(unsigned order);

  unsigned order() const noexcept { return order_; }
  StateId id() const noexcept { return id_; }

  bool bit(unsigned i) const noexcept { return (id_ >> (order_ - 1 - i)) & 1u; }
  bool first() const noexcept { return bit(0); }
  bool last() const noexcept { return id_ & 1u; }

  /// Flips s_{n-1}.
  RegisterState companion() const noexcept { return RegisterState(order_, id_ ^ 1u, Unchecked{}); }
  /// Flips s_0.
  RegisterState conjugate() const noexcept {
    return RegisterState(order_, id_ ^ (StateId{1} << (order_ - 1)), Unchecked{});
  }
  /// s_1, ..., s_{n-1}, bit.
  RegisterState shift_in(bool bit) const noexcept {
    return RegisterState(order_, ((id_ << 1) & mask()) | static_cast<StateId>(bit), Unchecked{});
  }

  std::string to_string() const;

  friend bool operator==(const RegisterState&, const RegisterState&) = default;
  friend auto operator<=>(const RegisterState&, const RegisterState&) = default;

 private:
  struct Unchecked {};
  RegisterState(unsigned order, StateId id, Unchecked) noexcept : order_(order), id_(id) {}
  StateId mask() const noexcept { return (StateId{1} << order_) - 1; }

  unsigned order_;
  StateId id_;
};

/// Algebraic normal form: XOR of monomials. A monomial is a mask over the
/// variables using the state bit convention (x_i at bit n-1-i), so the empty
/// mask is the constant term 1.
struct Anf {
  unsigned order = 0;
  std::vector<StateId> monomials;  // sorted, pairwise distinct

  std::string to_string() const;
  friend bool operator==(const Anf&, const Anf&) = default;
};

/// Parses `term ('+' term)*` with `term ::= '0' | '1' | factor ('*' factor)*`
/// and `factor ::= 'x' digits`. Repeated monomials cancel over GF(2).
Anf parse_anf(std::string_view text, unsigned order);

/// A Boolean feedback function of order n stored as its truth table, indexed
/// by the state id.
class FeedbackFunction {
 public:
  FeedbackFunction(unsigned order, BitArray truth_table, std::optional<Anf> source_form = {});

  static FeedbackFunction from_anf(const Anf& anf);
  static FeedbackFunction constant(unsigned order, bool value);
  static FeedbackFunction tabulate(unsigned order, const std::function<bool(StateId)>& rule);

  unsigned order() const noexcept { return order_; }
  std::size_t state_count() const noexcept { return table_.size(); }

  bool eval(StateId state) const noexcept { return table_.test(state); }
  bool operator()(const RegisterState& state) const;

  /// True iff the value never depends on x_0.
  bool is_standard() const noexcept { return standard_; }
  /// True iff f = x_0 + g(x_1, ..., x_{n-1}).
  bool is_nonsingular() const noexcept { return nonsingular_; }

  const BitArray& truth_table() const noexcept { return table_; }
  const std::optional<Anf>& source_form() const noexcept { return source_form_; }

  /// ANF recovered from the truth table by the binary Moebius transform.
  Anf anf() const;
  /// Truth table as hex, entry 0 in the most significant nibble position.
  std::string table_hex() const;

  friend bool operator==(const FeedbackFunction& a, const FeedbackFunction& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  unsigned order_;
  BitArray table_;
  std::optional<Anf> source_form_;
  bool standard_ = false;
  bool nonsingular_ = false;
};

bool eval(const FeedbackFunction& f, const RegisterState& s);
RegisterState fsr_successor(const FeedbackFunction& f, const RegisterState& s);

/// Checks 1 <= order <= limit (and the packed-id limit), raising Resource otherwise.
void check_order(unsigned order, unsigned limit = kMaxSupportedOrder);

}  // namespace gjpo
