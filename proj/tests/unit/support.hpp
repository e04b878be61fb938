#pragma once

#include <doctest.h>

#include <functional>
#include <random>
#include <string>

#include "gjpo/error.hpp"
#include "gjpo/feedback.hpp"
#include "gjpo/sequence.hpp"
#include "oracles.hpp"

namespace test_support {

/// Kind of the gjpo::Error thrown by `action`; a test failure if none is thrown.
inline gjpo::ErrorKind kind_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const gjpo::Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return gjpo::ErrorKind::InvalidArgument;
}

inline oracle::Rule rule_of(const gjpo::FeedbackFunction& f) {
  return [&f](const oracle::Bits& s) { return f.eval(oracle::to_value(s)) ? '1' : '0'; };
}

inline std::vector<int> table_of(const gjpo::FeedbackFunction& f) {
  std::vector<int> t(f.state_count());
  for (gjpo::StateId v = 0; v < t.size(); ++v) t[v] = f.eval(v);
  return t;
}

inline gjpo::FeedbackFunction random_function(std::mt19937& rng, unsigned n, bool standard) {
  gjpo::BitArray table(std::size_t{1} << n);
  const std::size_t half = table.size() / 2;
  for (std::size_t v = 0; v < table.size(); ++v) {
    if (standard && v >= half) {
      if (table.test(v - half)) table.set(v);
    } else if (rng() & 1u) {
      table.set(v);
    }
  }
  return gjpo::FeedbackFunction(n, table);
}

inline gjpo::FeedbackFunction from_table_index(unsigned n, std::uint64_t index, bool standard) {
  // Standard tables are determined by their lower half.
  gjpo::BitArray table(std::size_t{1} << n);
  const std::size_t half = table.size() / 2;
  for (std::size_t v = 0; v < table.size(); ++v) {
    const std::size_t source = standard ? v % half : v;
    if ((index >> source) & 1u) table.set(v);
  }
  return gjpo::FeedbackFunction(n, table);
}

}  // namespace test_support
