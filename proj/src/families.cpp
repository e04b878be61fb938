#include "gjpo/families.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "gjpo/error.hpp"

namespace gjpo {

namespace {

constexpr std::string_view kProduct = "product:";
constexpr std::string_view kGeneralizedProduct = "gproduct:";
constexpr std::string_view kLift = "lift:";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

unsigned parse_unsigned(std::string_view text, std::string_view context) {
  text = trim(text);
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    fail(ErrorKind::Parse, "expected a number in " + std::string(context) + ", got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<unsigned> parse_index_list(std::string_view text, std::string_view context) {
  std::vector<unsigned> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_unsigned(text.substr(0, comma), context));
    if (comma == std::string_view::npos) return out;
    text.remove_prefix(comma + 1);
  }
}

StateId variable(unsigned n, unsigned i) { return StateId{1} << (n - 1 - i); }

// Sorted, with repeated monomials cancelled in pairs.
Anf make_anf(unsigned order, std::vector<StateId> monomials) {
  std::sort(monomials.begin(), monomials.end());
  Anf out{order, {}};
  for (auto m : monomials) {
    if (!out.monomials.empty() && out.monomials.back() == m) {
      out.monomials.pop_back();
    } else {
      out.monomials.push_back(m);
    }
  }
  return out;
}

void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::InvalidArgument, message);
}

void check_increasing_indices(const std::vector<unsigned>& k, unsigned n, std::string_view family) {
  require(!k.empty(), std::string(family) + " needs at least one index");
  for (std::size_t i = 0; i < k.size(); ++i) {
    require(k[i] > 0 && k[i] < n, std::string(family) + " indices must lie in 1.." + std::to_string(n - 1));
    require(i == 0 || k[i - 1] < k[i], std::string(family) + " indices must be strictly increasing");
  }
}

std::string join_indices(const std::vector<unsigned>& k) {
  std::string out;
  for (auto i : k) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

}  // namespace

std::string FamilySpec::to_string() const {
  switch (kind) {
    case FamilyKind::Zero: return "zero";
    case FamilyKind::One: return "one";
    case FamilyKind::PreferSame: return "prefer-same";
    case FamilyKind::PreferOpposite: return "prefer-opposite";
    case FamilyKind::Product: return std::string(kProduct) + join_indices(indices);
    case FamilyKind::GeneralizedProduct: return std::string(kGeneralizedProduct) + join_indices(indices);
    case FamilyKind::Lift:
      return std::string(kLift) + (base ? base->to_string() : "?") + "@" + std::to_string(base ? base->order : 0);
    case FamilyKind::Example4: return "example4";
    case FamilyKind::Example6: return "example6";
  }
  return {};
}

std::optional<FamilySpec> parse_family(std::string_view text) {
  text = unquote(text);
  if (text == "zero") return FamilySpec{FamilyKind::Zero, {}, {}};
  if (text == "one") return FamilySpec{FamilyKind::One, {}, {}};
  if (text == "prefer-same") return FamilySpec{FamilyKind::PreferSame, {}, {}};
  if (text == "prefer-opposite") return FamilySpec{FamilyKind::PreferOpposite, {}, {}};
  if (text == "example4") return FamilySpec{FamilyKind::Example4, {}, {}};
  if (text == "example6") return FamilySpec{FamilyKind::Example6, {}, {}};
  if (text.starts_with(kProduct)) {
    auto k = parse_index_list(text.substr(kProduct.size()), "product:k,l");
    if (k.size() != 2) fail(ErrorKind::Parse, "product takes exactly two indices k,l");
    return FamilySpec{FamilyKind::Product, std::move(k), {}};
  }
  if (text.starts_with(kGeneralizedProduct)) {
    return FamilySpec{FamilyKind::GeneralizedProduct,
                      parse_index_list(text.substr(kGeneralizedProduct.size()), "gproduct:k1,k2,..."), {}};
  }
  if (text.starts_with(kLift)) {
    const auto body = text.substr(kLift.size());
    const auto at = body.rfind('@');
    if (at == std::string_view::npos) fail(ErrorKind::Parse, "lift needs the form lift:<anf>@m");
    const unsigned m = parse_unsigned(body.substr(at + 1), "lift:<anf>@m");
    return FamilySpec{FamilyKind::Lift, {}, parse_anf(unquote(body.substr(0, at)), m)};
  }
  return std::nullopt;
}

FeedbackFunction materialize(const FamilySpec& spec, unsigned n) {
  check_order(n);
  const StateId all_but_first = variable(n, 0) - 1;  // x_1 ... x_{n-1}
  switch (spec.kind) {
    case FamilyKind::Zero: return FeedbackFunction::from_anf(make_anf(n, {}));
    case FamilyKind::One: return FeedbackFunction::from_anf(make_anf(n, {0}));
    case FamilyKind::PreferSame:
      require(n >= 2, "prefer-same needs n >= 2");
      return FeedbackFunction::from_anf(make_anf(n, {variable(n, n - 1), 0}));
    case FamilyKind::PreferOpposite:
      require(n >= 2, "prefer-opposite needs n >= 2");
      return FeedbackFunction::from_anf(make_anf(n, {variable(n, n - 1)}));
    case FamilyKind::Product: {
      require(spec.indices.size() == 2, "product takes two indices");
      check_increasing_indices(spec.indices, n, "product");
      return FeedbackFunction::from_anf(
          make_anf(n, {all_but_first, variable(n, spec.indices[0]) | variable(n, spec.indices[1])}));
    }
    case FamilyKind::GeneralizedProduct: {
      check_increasing_indices(spec.indices, n, "gproduct");
      StateId term = 0;
      for (auto k : spec.indices) term |= variable(n, k);
      return FeedbackFunction::from_anf(make_anf(n, {all_but_first, term}));
    }
    case FamilyKind::Lift: {
      require(spec.base.has_value(), "lift needs a base function");
      return lift(FeedbackFunction::from_anf(*spec.base), n);
    }
    case FamilyKind::Example4:
      require(n >= 4, "example4 needs n >= 4");
      return FeedbackFunction::from_anf(
          make_anf(n, {variable(n, n - 3), variable(n, n - 2) | variable(n, n - 1)}));
    case FamilyKind::Example6: {
      require(n >= 4, "example6 needs n >= 4");
      const StateId a = variable(n, n - 3), b = variable(n, n - 2), c = variable(n, n - 1);
      return FeedbackFunction::from_anf(make_anf(n, {a | b, a | c, b | c}));
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown family");
}

FeedbackFunction parse_function(std::string_view text, unsigned n, unsigned max_order) {
  check_order(n, max_order);
  if (auto family = parse_family(text)) return materialize(*family, n);
  return FeedbackFunction::from_anf(parse_anf(unquote(text), n));
}

FeedbackFunction lift(const FeedbackFunction& h, unsigned n) {
  const unsigned m = h.order();
  check_order(n);
  require(m < n, "lift target order must exceed the base order " + std::to_string(m));
  // x_i of h sits at bit m-1-i, and x_{n-m+i} of the lift sits at bit
  // n-1-(n-m+i) = m-1-i, so monomial masks carry over unchanged.
  return FeedbackFunction::from_anf(Anf{n, h.anf().monomials});
}

FeedbackFunction de_bruijn_base_order4() {
  return FeedbackFunction::from_anf(parse_anf("1 + x0 + x2 + x3 + x1*x2 + x1*x3 + x2*x3 + x1*x2*x3", 4));
}

bool product_unique_loop(unsigned n, unsigned k, unsigned l) {
  check_increasing_indices({k, l}, n, "product");
  return std::gcd(n - k, l - k) == 1;
}

bool generalized_product_unique_loop(unsigned n, const std::vector<unsigned>& k) {
  check_increasing_indices(k, n, "gproduct");
  unsigned g = n - k[0];
  for (std::size_t i = 1; i < k.size(); ++i) g = std::gcd(g, k[i] - k[0]);
  return g == 1;
}

namespace {

void require_nonsingular(const FeedbackFunction& h) {
  if (!h.is_nonsingular()) fail(ErrorKind::NonsingularRequired, "h must have the form x0 + g(x1, ..., x_{m-1})");
}

}  // namespace

LiftReport base_cycles_of_lift(const FeedbackFunction& h, unsigned n) {
  require_nonsingular(h);
  const unsigned m = h.order();
  const StateGraph base = build_state_graph(h, kMaxSupportedOrder);
  const StateGraph lifted = build_state_graph(lift(h, n), kMaxSupportedOrder);
  const StateId low_mask = (StateId{1} << m) - 1;

  LiftReport report;
  report.base_order = m;
  report.order = n;
  report.tree_size = std::size_t{1} << (n - m);
  report.tree_leaves = report.tree_size / 2;

  std::vector<std::uint8_t> covered(base.components().size(), 0);
  report.bijective = base.components().size() == lifted.components().size();
  for (const auto& c : lifted.components()) {
    const ComponentId b = base.component_of(c.cycle.front() & low_mask);
    report.cycles.push_back(LiftCycle{b, c.id, c.cycle.size()});
    if (covered[b] || base.component(b).cycle.size() != c.cycle.size()) report.bijective = false;
    covered[b] = 1;
  }

  // root[v]: the cycle state where v's path first meets the cycle.
  const std::size_t size = lifted.state_count();
  constexpr StateId kUnknown = ~StateId{0};
  std::vector<StateId> root(size, kUnknown);
  std::vector<StateId> path;
  for (StateId v = 0; v < size; ++v) {
    StateId x = v;
    path.clear();
    while (root[x] == kUnknown && !lifted.on_cycle(x)) {
      path.push_back(x);
      x = lifted.successor(x);
    }
    const StateId r = lifted.on_cycle(x) ? x : root[x];
    root[x] = r;
    for (auto p : path) root[p] = r;
  }
  std::vector<std::size_t> members(size, 0), leaves(size, 0);
  for (StateId v = 0; v < size; ++v) {
    ++members[root[v]];
    if (lifted.is_leaf(v)) ++leaves[root[v]];
  }
  report.trees_match = true;
  for (const auto& c : lifted.components()) {
    for (auto r : c.cycle) {
      if (members[r] != report.tree_size || leaves[r] != report.tree_leaves) report.trees_match = false;
    }
  }
  return report;
}

UndirectedGraph adjacency_multigraph(const FeedbackFunction& h) {
  require_nonsingular(h);
  const StateGraph g = build_state_graph(h, kMaxSupportedOrder);
  UndirectedGraph out{g.components().size(), {}};
  for (StateId v = 0; v < g.state_count(); v += 2) {
    const ComponentId a = g.component_of(v), b = g.component_of(v ^ 1u);
    if (a != b) out.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::size_t companion_pair_count(const FeedbackFunction& h) { return adjacency_multigraph(h).edges.size(); }

std::vector<std::string> builtin_family_specs(unsigned n) {
  check_order(n);
  std::vector<std::string> out{"zero", "one"};
  if (n >= 2) {
    out.emplace_back("prefer-same");
    out.emplace_back("prefer-opposite");
  }
  for (unsigned k = 1; k < n; ++k) {
    for (unsigned l = k + 1; l < n; ++l) out.push_back("product:" + std::to_string(k) + "," + std::to_string(l));
  }
  // Subsets of {1..n-1} in mask order.
  if (n >= 2 && n <= 16) {
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
      std::vector<unsigned> k;
      for (unsigned i = 0; i + 1 < n; ++i) {
        if (mask & (1u << i)) k.push_back(i + 1);
      }
      out.push_back("gproduct:" + join_indices(k));
    }
  }
  if (n >= 4) {
    out.emplace_back("example4");
    out.emplace_back("example6");
  }
  return out;
}

}  // namespace gjpo
