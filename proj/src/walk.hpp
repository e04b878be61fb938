#pragma once

#include <cstddef>

#include "gjpo/bit_array.hpp"
#include "gjpo/gpo.hpp"

namespace gjpo::detail {

// The prefer-opposite loop shared by GPO and GJPO. When `forced` is given,
// an f-successor found in it is taken unconditionally and cleared. With
// `strict`, revisiting any state other than the initial one is an internal
// invariant violation and throws std::logic_error.
GpoRun greedy_walk(const FeedbackFunction& f, StateId initial, BitArray* forced, std::size_t max_steps,
                   bool strict);

}  // namespace gjpo::detail
