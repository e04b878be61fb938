#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gjpo/feedback.hpp"
#include "gjpo/graph_join.hpp"
#include "gjpo/state_graph.hpp"

namespace gjpo {

enum class FamilyKind {
  Zero,                // f = 0
  One,                 // f = 1
  PreferSame,          // f = x_{n-1} + 1
  PreferOpposite,      // f = x_{n-1}
  Product,             // x_1 ... x_{n-1} + x_k x_l,            0 < k < l < n
  GeneralizedProduct,  // x_1 ... x_{n-1} + x_{k_1} ... x_{k_t}, 0 < k_1 < ... < k_t < n
  Lift,                // h(x_{n-m}, ..., x_{n-1}) for a base h of order m < n
  Example4,            // x_{n-3} + x_{n-2} x_{n-1},                       n >= 4
  Example6,            // x_{n-3} x_{n-2} + x_{n-3} x_{n-1} + x_{n-2} x_{n-1}, n >= 4
};

/// A named family member, independent of the target order until materialized.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Zero;
  std::vector<unsigned> indices;  // k, l or k_1..k_t
  std::optional<Anf> base;        // Lift only

  /// Round-trips through parse_family.
  std::string to_string() const;
};

/// Recognizes "zero", "one", "prefer-same", "prefer-opposite", "product:k,l",
/// "gproduct:k1,k2,...", "lift:<anf>@m", "example4" and "example6". Returns
/// nullopt for anything else (plain ANF text); malformed family syntax is a
/// Parse error.
std::optional<FamilySpec> parse_family(std::string_view text);

/// Throws InvalidArgument when the parameters do not fit order n.
FeedbackFunction materialize(const FamilySpec& spec, unsigned n);

/// A family spec or an ANF over x0..x{n-1}. Orders outside 1..max_order are
/// a Resource error.
FeedbackFunction parse_function(std::string_view text, unsigned n, unsigned max_order = kDefaultMaxOrder);

/// f(x_0..x_{n-1}) = h(x_{n-m}..x_{n-1}). Requires m < n.
FeedbackFunction lift(const FeedbackFunction& h, unsigned n);

/// The order-4 function 1 + x0 + x2 + x3 + x1x2 + x1x3 + x2x3 + x1x2x3, whose
/// register has a single cycle of length 16.
FeedbackFunction de_bruijn_base_order4();

/// gcd(n - k, l - k) == 1, the unique-loop criterion of the product family.
bool product_unique_loop(unsigned n, unsigned k, unsigned l);
/// gcd(n - k_1, k_2 - k_1, ..., k_t - k_1) == 1.
bool generalized_product_unique_loop(unsigned n, const std::vector<unsigned>& k);

/// Pairing between the cycles of a nonsingular h (order m) and the
/// components of its lift to order n.
struct LiftCycle {
  ComponentId base = 0;    // component of G_h
  ComponentId lifted = 0;  // component of G_{F_h}
  std::size_t length = 0;  // common cycle length
};

struct LiftReport {
  unsigned base_order = 0;
  unsigned order = 0;
  std::vector<LiftCycle> cycles;  // ascending by lifted component
  std::size_t tree_size = 0;      // expected states per cycle-rooted tree, 2^(n-m)
  std::size_t tree_leaves = 0;    // expected leaves per tree, 2^(n-m-1)
  /// Every cycle state roots a tree of exactly tree_size states and tree_leaves leaves.
  bool trees_match = false;
  /// The pairing is a bijection preserving cycle lengths.
  bool bijective = false;
};

/// Throws NonsingularRequired unless h is nonsingular.
LiftReport base_cycles_of_lift(const FeedbackFunction& h, unsigned n);

/// Companion pairs {v, v^1} of a nonsingular h whose states lie on distinct
/// cycles; one undirected edge per pair between the cycles' components.
UndirectedGraph adjacency_multigraph(const FeedbackFunction& h);
std::size_t companion_pair_count(const FeedbackFunction& h);

/// Every parameterization of every family that is valid at order n, as spec
/// strings. Lifts are excluded since they need a base function.
std::vector<std::string> builtin_family_specs(unsigned n);

}  // namespace gjpo
