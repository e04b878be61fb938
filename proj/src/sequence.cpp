#include "gjpo/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_map>
#include <utility>

#include "gjpo/bit_array.hpp"
#include "gjpo/error.hpp"

namespace gjpo {

std::size_t least_period(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (n == 0) return 0;
  // KMP failure function: n - border is the smallest shift, and it is a
  // period of the cyclic word only when it divides n.
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = border[i - 1];
    while (k > 0 && bits[i] != bits[k]) k = border[k - 1];
    if (bits[i] == bits[k]) ++k;
    border[i] = k;
  }
  const std::size_t p = n - border[n - 1];
  return n % p == 0 ? p : n;
}

std::size_t least_rotation(std::span<const std::uint8_t> bits) {
  const auto n = static_cast<std::ptrdiff_t>(bits.size());
  if (n == 0) return 0;
  auto at = [&](std::ptrdiff_t i) { return bits[static_cast<std::size_t>(i % n)]; };
  std::vector<std::ptrdiff_t> failure(static_cast<std::size_t>(2 * n), -1);
  std::ptrdiff_t k = 0;
  for (std::ptrdiff_t j = 1; j < 2 * n; ++j) {
    const auto sj = at(j);
    std::ptrdiff_t i = failure[static_cast<std::size_t>(j - k - 1)];
    while (i != -1 && sj != at(k + i + 1)) {
      if (sj < at(k + i + 1)) k = j - i - 1;
      i = failure[static_cast<std::size_t>(i)];
    }
    if (sj != at(k + i + 1)) {
      if (sj < at(k)) k = j;
      failure[static_cast<std::size_t>(j - k)] = -1;
    } else {
      failure[static_cast<std::size_t>(j - k)] = i + 1;
    }
  }
  return static_cast<std::size_t>(k % n);
}

std::vector<std::uint64_t> window_ids(std::span<const std::uint8_t> bits, std::size_t k) {
  const std::size_t n = bits.size();
  std::vector<std::uint64_t> ids(n, 0);
  if (n == 0 || k == 0) return ids;
  if (k <= 64) {
    const std::uint64_t mask = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    std::uint64_t id = 0;
    for (std::size_t j = 0; j < k; ++j) id = (id << 1) | bits[j % n];
    for (std::size_t i = 0; i < n; ++i) {
      ids[i] = id & mask;
      id = (id << 1) | bits[(i + k) % n];
    }
    return ids;
  }
  std::string doubled;
  doubled.reserve(n + k);
  for (std::size_t j = 0; j < n + k; ++j) doubled.push_back(static_cast<char>('0' + bits[j % n]));
  std::unordered_map<std::string_view, std::uint64_t> dense;
  dense.reserve(n);
  const std::string_view view(doubled);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = dense.try_emplace(view.substr(i, k), dense.size());
    ids[i] = it->second;
  }
  return ids;
}

// ---------------------------------------------------------------------------

PeriodicSequence::PeriodicSequence(std::vector<std::uint8_t> bits, std::optional<unsigned> declared_order)
    : bits_(std::move(bits)), declared_order_(declared_order) {
  if (bits_.empty()) fail(ErrorKind::InvalidArgument, "a periodic sequence needs at least one bit");
  for (auto& b : bits_) {
    if (b > 1) fail(ErrorKind::InvalidArgument, "sequence entries must be 0 or 1");
  }
  bits_.resize(least_period(bits_));
}

PeriodicSequence PeriodicSequence::parse(std::string_view text, std::optional<unsigned> declared_order) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c)) && c != '~') {
      fail(ErrorKind::Parse, std::string("unexpected character '") + c + "' in bit string");
    }
  }
  if (bits.empty()) fail(ErrorKind::Parse, "empty bit string");
  return PeriodicSequence(std::move(bits), declared_order);
}

PeriodicSequence PeriodicSequence::rotated(std::size_t shift) const {
  std::vector<std::uint8_t> out(bits_.size());
  const std::size_t n = bits_.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = bits_[(i + shift) % n];
  return PeriodicSequence(std::move(out), declared_order_);
}

PeriodicSequence PeriodicSequence::rotation_canonical() const { return rotated(least_rotation(bits_)); }

bool PeriodicSequence::shift_equivalent(const PeriodicSequence& other) const {
  return period() == other.period() && rotation_canonical() == other.rotation_canonical();
}

std::string PeriodicSequence::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

std::string PeriodicSequence::grouped(std::size_t group) const {
  const std::string plain = to_string();
  if (group == 0) return plain;
  std::string out;
  for (std::size_t i = 0; i < plain.size(); ++i) {
    if (i > 0 && i % group == 0) out += ' ';
    out += plain[i];
  }
  return out;
}

PeriodicSequence rotation_canonical(const PeriodicSequence& s) { return s.rotation_canonical(); }

namespace {

// Whether every cyclic window of length k is followed by a single bit value.
bool windows_determine_next(const PeriodicSequence& s, std::size_t k) {
  const auto bits = s.bits();
  const std::size_t n = bits.size();
  if (k == 0) return std::all_of(bits.begin(), bits.end(), [&](auto b) { return b == bits[0]; });
  const auto ids = window_ids(bits, k);
  std::vector<std::pair<std::uint64_t, std::uint8_t>> followers(n);
  for (std::size_t i = 0; i < n; ++i) followers[i] = {ids[i], bits[(i + k) % n]};
  std::sort(followers.begin(), followers.end());
  for (std::size_t i = 1; i < n; ++i) {
    if (followers[i].first == followers[i - 1].first && followers[i].second != followers[i - 1].second) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::size_t nonlinear_complexity(const PeriodicSequence& s) {
  // The predicate is monotone in k (a longer window ends with the shorter
  // one) and holds at k = period, where all windows are distinct rotations.
  std::size_t lo = 0;
  std::size_t hi = s.period();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (windows_determine_next(s, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

bool is_de_bruijn(const PeriodicSequence& s, unsigned n) {
  if (n == 0 || n >= 63) return false;
  const std::size_t states = std::size_t{1} << n;
  if (s.period() != states) return false;
  const auto ids = window_ids(s.bits(), n);
  BitArray seen(states);
  for (auto id : ids) {
    if (seen.test(id)) return false;
    seen.set(id);
  }
  return true;
}

}  // namespace gjpo
