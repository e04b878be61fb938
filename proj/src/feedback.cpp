#include "gjpo/feedback.hpp"

#include <algorithm>
#include <cctype>

#include "gjpo/error.hpp"

namespace gjpo {

void check_order(unsigned order, unsigned limit) {
  if (order == 0) fail(ErrorKind::InvalidArgument, "order must be positive");
  const unsigned cap = std::min(limit, kMaxSupportedOrder);
  if (order > cap) {
    fail(ErrorKind::Resource,
         "order " + std::to_string(order) + " exceeds the maximum of " + std::to_string(cap));
  }
}

// ---------------------------------------------------------------------------
// RegisterState

RegisterState::RegisterState(unsigned order, StateId id) : order_(order), id_(id) {
  check_order(order);
  if (id >= (StateId{1} << order)) {
    fail(ErrorKind::Dimension,
         "state id " + std::to_string(id) + " does not fit in " + std::to_string(order) + " bits");
  }
}

RegisterState RegisterState::ones(unsigned order) {
  check_order(order);
  return {order, (StateId{1} << order) - 1};
}

RegisterState RegisterState::parse(std::string_view text) {
  if (text.empty()) fail(ErrorKind::Parse, "empty state");
  if (text.size() > kMaxSupportedOrder) fail(ErrorKind::Resource, "state too long");
  StateId id = 0;
  for (char c : text) {
    if (c != '0' && c != '1') fail(ErrorKind::Parse, "state must be a 0/1 string: '" + std::string(text) + "'");
    id = (id << 1) | static_cast<StateId>(c == '1');
  }
  return {static_cast<unsigned>(text.size()), id};
}

std::string RegisterState::to_string() const {
  std::string out(order_, '0');
  for (unsigned i = 0; i < order_; ++i) {
    if (bit(i)) out[i] = '1';
  }
  return out;
}

// ---------------------------------------------------------------------------
// ANF

namespace {

std::vector<unsigned> monomial_variables(StateId mask, unsigned order) {
  std::vector<unsigned> vars;
  for (unsigned i = 0; i < order; ++i) {
    if ((mask >> (order - 1 - i)) & 1u) vars.push_back(i);
  }
  return vars;
}

class AnfParser {
 public:
  AnfParser(std::string_view text, unsigned order) : text_(text), order_(order) {}

  Anf parse() {
    std::vector<StateId> terms;
    skip_space();
    if (at_end()) error("empty expression");
    terms.push_back(term());
    skip_space();
    while (!at_end()) {
      expect('+');
      terms.push_back(term());
      skip_space();
    }
    // Over GF(2) a monomial that occurs an even number of times vanishes.
    std::sort(terms.begin(), terms.end());
    Anf anf{order_, {}};
    for (std::size_t i = 0; i < terms.size();) {
      std::size_t j = i;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      if ((j - i) % 2 == 1 && terms[i] != kZeroTerm) anf.monomials.push_back(terms[i]);
      i = j;
    }
    return anf;
  }

 private:
  // Sentinel for the literal 0; never a valid mask because masks fit in order bits.
  static constexpr StateId kZeroTerm = ~StateId{0};

  StateId term() {
    skip_space();
    if (peek() == '0' || peek() == '1') {
      const char c = text_[pos_++];
      return c == '1' ? StateId{0} : kZeroTerm;
    }
    StateId mask = factor();
    skip_space();
    while (!at_end() && peek() == '*') {
      ++pos_;
      mask |= factor();
      skip_space();
    }
    return mask;
  }

  StateId factor() {
    skip_space();
    if (peek() != 'x') error("expected variable 'x<index>'");
    ++pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) error("expected variable index");
    unsigned long index = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      index = index * 10 + static_cast<unsigned long>(text_[pos_++] - '0');
      if (index > 1000000) error("variable index too large");
    }
    if (index >= order_) {
      error("variable x" + std::to_string(index) + " out of range for order " + std::to_string(order_));
    }
    return StateId{1} << (order_ - 1 - index);
  }

  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  unsigned order_;
  std::size_t pos_ = 0;
};

}  // namespace

Anf parse_anf(std::string_view text, unsigned order) {
  check_order(order);
  return AnfParser(text, order).parse();
}

std::string Anf::to_string() const {
  if (monomials.empty()) return "0";
  std::vector<std::vector<unsigned>> terms;
  terms.reserve(monomials.size());
  for (auto m : monomials) terms.push_back(monomial_variables(m, order));
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::string out;
  for (const auto& vars : terms) {
    if (!out.empty()) out += " + ";
    if (vars.empty()) {
      out += '1';
      continue;
    }
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (k > 0) out += '*';
      out += 'x' + std::to_string(vars[k]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// FeedbackFunction

FeedbackFunction::FeedbackFunction(unsigned order, BitArray truth_table, std::optional<Anf> source_form)
    : order_(order), table_(std::move(truth_table)), source_form_(std::move(source_form)) {
  check_order(order);
  if (table_.size() != (std::size_t{1} << order)) {
    fail(ErrorKind::Dimension, "truth table length must be 2^" + std::to_string(order));
  }
  if (source_form_ && source_form_->order != order) {
    fail(ErrorKind::Dimension, "source form order differs from function order");
  }
  const std::size_t half = table_.size() / 2;
  standard_ = true;
  nonsingular_ = true;
  for (std::size_t v = 0; v < half; ++v) {
    const bool low = table_.test(v);
    const bool high = table_.test(v + half);
    if (low != high) standard_ = false;
    if (low == high) nonsingular_ = false;
  }
}

FeedbackFunction FeedbackFunction::from_anf(const Anf& anf) {
  check_order(anf.order);
  const std::size_t size = std::size_t{1} << anf.order;
  // Coefficients indexed by monomial mask, then the GF(2) subset-sum
  // transform turns them into values: f(v) = XOR over masks m contained in v.
  std::vector<std::uint8_t> values(size, 0);
  for (auto m : anf.monomials) values[m] ^= 1u;
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t v = 0; v < size; ++v) {
      if (v & bit) values[v] ^= values[v ^ bit];
    }
  }
  BitArray table(size);
  for (std::size_t v = 0; v < size; ++v) {
    if (values[v]) table.set(v);
  }
  return FeedbackFunction(anf.order, std::move(table), anf);
}

FeedbackFunction FeedbackFunction::constant(unsigned order, bool value) {
  check_order(order);
  Anf anf{order, {}};
  if (value) anf.monomials.push_back(0);
  return FeedbackFunction(order, BitArray(std::size_t{1} << order, value), std::move(anf));
}

FeedbackFunction FeedbackFunction::tabulate(unsigned order, const std::function<bool(StateId)>& rule) {
  check_order(order);
  const std::size_t size = std::size_t{1} << order;
  BitArray table(size);
  for (std::size_t v = 0; v < size; ++v) {
    if (rule(static_cast<StateId>(v))) table.set(v);
  }
  return FeedbackFunction(order, std::move(table));
}

bool FeedbackFunction::operator()(const RegisterState& state) const {
  if (state.order() != order_) {
    fail(ErrorKind::Dimension, "state of order " + std::to_string(state.order()) +
                                   " passed to function of order " + std::to_string(order_));
  }
  return eval(state.id());
}

Anf FeedbackFunction::anf() const {
  const std::size_t size = table_.size();
  std::vector<std::uint8_t> coeff(size);
  for (std::size_t v = 0; v < size; ++v) coeff[v] = table_.test(v);
  // The transform is an involution over GF(2).
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t v = 0; v < size; ++v) {
      if (v & bit) coeff[v] ^= coeff[v ^ bit];
    }
  }
  Anf out{order_, {}};
  for (std::size_t m = 0; m < size; ++m) {
    if (coeff[m]) out.monomials.push_back(static_cast<StateId>(m));
  }
  return out;
}

std::string FeedbackFunction::table_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t size = table_.size();
  std::string out;
  for (std::size_t base = 0; base < size; base += 4) {
    unsigned nibble = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      nibble <<= 1;
      if (base + k < size && table_.test(base + k)) nibble |= 1u;
    }
    // Order-1 tables hold two entries; they occupy the high bits of one digit.
    out += kDigits[nibble];
  }
  return out;
}

bool eval(const FeedbackFunction& f, const RegisterState& s) { return f(s); }

RegisterState fsr_successor(const FeedbackFunction& f, const RegisterState& s) { return s.shift_in(f(s)); }

}  // namespace gjpo
