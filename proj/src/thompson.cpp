#include "cogrowth/groups/thompson.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

#include "cogrowth/groups/key_codec.hpp"

namespace cogrowth {

namespace {

using Gap = std::int32_t;
constexpr Gap kExterior = -1;

std::size_t tree_end(const Forest& f, std::size_t first_leaf) {
  std::size_t q = first_leaf;
  while (q < f.gaps.size() && f.gaps[q] >= 0) ++q;
  return q;
}

std::size_t tree_begin(const Forest& f, std::size_t last_leaf) {
  std::size_t p = last_leaf;
  while (p > 0 && f.gaps[p - 1] >= 0) --p;
  return p;
}

Gap leaf_depth(const Forest& f, std::size_t leaf) {
  Gap d = -1;
  if (leaf > 0) d = std::max(d, f.gaps[leaf - 1]);
  if (leaf < f.gaps.size()) d = std::max(d, f.gaps[leaf]);
  return d + 1;
}

bool exposed(const Forest& f, std::size_t gap) {
  const Gap d = f.gaps[gap];
  if (d < 0) return false;
  const bool left_leaf = gap == 0 || f.gaps[gap - 1] < d;
  const bool right_leaf = gap + 1 == f.gaps.size() || f.gaps[gap + 1] < d;
  return left_leaf && right_leaf;
}

void insert_gap(ForestDiagram& x, std::size_t at, Gap top, Gap bottom) {
  x.top.gaps.insert(x.top.gaps.begin() + static_cast<std::ptrdiff_t>(at), top);
  x.bottom.gaps.insert(x.bottom.gaps.begin() + static_cast<std::ptrdiff_t>(at), bottom);
  if (static_cast<std::size_t>(x.top.pointer) > at) ++x.top.pointer;
  if (static_cast<std::size_t>(x.bottom.pointer) > at) ++x.bottom.pointer;
}

void erase_gap(ForestDiagram& x, std::size_t at) {
  x.top.gaps.erase(x.top.gaps.begin() + static_cast<std::ptrdiff_t>(at));
  x.bottom.gaps.erase(x.bottom.gaps.begin() + static_cast<std::ptrdiff_t>(at));
  if (static_cast<std::size_t>(x.top.pointer) > at) --x.top.pointer;
  if (static_cast<std::size_t>(x.bottom.pointer) > at) --x.bottom.pointer;
}

void extend_left(ForestDiagram& x) {
  x.top.gaps.insert(x.top.gaps.begin(), kExterior);
  x.bottom.gaps.insert(x.bottom.gaps.begin(), kExterior);
  ++x.top.pointer;
  ++x.bottom.pointer;
}

void extend_right(ForestDiagram& x) {
  x.top.gaps.push_back(kExterior);
  x.bottom.gaps.push_back(kExterior);
}

// Shrinks the window to the smallest leaf interval holding both pointers and
// every caret.
void trim(ForestDiagram& x) {
  const std::size_t n = x.top.gaps.size();
  std::size_t lo = static_cast<std::size_t>(std::min(x.top.pointer, x.bottom.pointer));
  std::size_t hi = static_cast<std::size_t>(std::max(x.top.pointer, x.bottom.pointer));
  for (std::size_t i = 0; i < n; ++i) {
    if (x.top.gaps[i] >= 0 || x.bottom.gaps[i] >= 0) {
      lo = std::min(lo, i);
      break;
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    if (x.top.gaps[i] >= 0 || x.bottom.gaps[i] >= 0) {
      hi = std::max(hi, i + 1);
      break;
    }
  }
  if (hi < n) {
    x.top.gaps.resize(hi);
    x.bottom.gaps.resize(hi);
  }
  if (lo > 0) {
    x.top.gaps.erase(x.top.gaps.begin(), x.top.gaps.begin() + static_cast<std::ptrdiff_t>(lo));
    x.bottom.gaps.erase(x.bottom.gaps.begin(), x.bottom.gaps.begin() + static_cast<std::ptrdiff_t>(lo));
    x.top.pointer -= static_cast<std::int32_t>(lo);
    x.bottom.pointer -= static_cast<std::int32_t>(lo);
  }
}

// Tree-pair view used by the length formula. A forest with its pointer is
// the middle of one binary tree: trees left of the pointer hang as right
// children off the left spine, the pointed tree and those to its right hang
// as left children off the right spine, and one extra leaf closes each spine.
std::vector<Gap> spine_tree(const Forest& f) {
  const std::size_t n = f.gaps.size() + 1;
  std::vector<Gap> g(n + 1, kExterior);
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < n; i = tree_end(f, i) + 1) starts.push_back(i);
  std::size_t pointed = 0;
  while (starts[pointed] != static_cast<std::size_t>(f.pointer)) ++pointed;
  g[starts[pointed]] = 0;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const std::size_t first = starts[k];
    const std::size_t last = tree_end(f, first);
    // Left trees sit under spine caret k' = pointed - k; right trees under
    // spine caret k - pointed + 1.
    const Gap spine = k < pointed ? static_cast<Gap>(pointed - k) : static_cast<Gap>(k - pointed + 1);
    if (k < pointed) {
      g[first] = spine;
    } else {
      g[last + 1] = spine;
    }
    for (std::size_t i = first; i < last; ++i) g[i + 1] = f.gaps[i] + spine + 1;
  }
  return g;
}

// Cancels exposed caret pairs with matching leaves until none remain.
void reduce_pair(std::vector<Gap>& a, std::vector<Gap>& b) {
  std::vector<Gap> ra;
  std::vector<Gap> rb;
  ra.reserve(a.size());
  rb.reserve(b.size());
  // Stack pass: a cancelled caret can only expose its parent, which is the
  // shallower neighbour already on the stack or the next gap to arrive.
  auto top_exposed = [](const std::vector<Gap>& g, std::size_t i, Gap next) {
    return (i == 0 || g[i - 1] < g[i]) && next < g[i];
  };
  for (std::size_t i = 0; i <= a.size(); ++i) {
    const Gap na = i < a.size() ? a[i] : kExterior;
    const Gap nb = i < b.size() ? b[i] : kExterior;
    while (!ra.empty() && top_exposed(ra, ra.size() - 1, na) && top_exposed(rb, rb.size() - 1, nb)) {
      ra.pop_back();
      rb.pop_back();
    }
    if (i < a.size()) {
      ra.push_back(na);
      rb.push_back(nb);
    }
  }
  a = std::move(ra);
  b = std::move(rb);
}

enum CaretType : int { kL0 = 0, kLL, kR0, kRNI, kRI, kI0, kIR };

// Caret weights for a pair of carets with the same infix position.
constexpr std::array<std::array<int, 7>, 7> kPairWeight{{
    //  L0 LL R0 RNI RI I0 IR
    {{0, 2, 2, 2, 2, 1, 3}},  // L0
    {{2, 2, 1, 1, 1, 2, 2}},  // LL
    {{2, 1, 0, 2, 2, 1, 3}},  // R0
    {{2, 1, 2, 2, 2, 1, 3}},  // RNI
    {{2, 1, 2, 2, 2, 3, 3}},  // RI
    {{1, 2, 1, 1, 3, 2, 4}},  // I0
    {{3, 2, 3, 3, 3, 4, 4}},  // IR
}};

// Carets listed in infix order (one per gap of a single tree).
std::vector<CaretType> caret_types(const std::vector<Gap>& g) {
  const std::size_t m = g.size();
  std::vector<bool> right_side(m, false);
  Gap suffix_min = std::numeric_limits<Gap>::max();
  for (std::size_t i = m; i-- > 0;) {
    right_side[i] = g[i] < suffix_min;
    suffix_min = std::min(suffix_min, g[i]);
  }
  std::vector<CaretType> out(m);
  Gap prefix_min = std::numeric_limits<Gap>::max();
  for (std::size_t i = 0; i < m; ++i) {
    const bool left_side = g[i] < prefix_min;
    prefix_min = std::min(prefix_min, g[i]);
    const bool right_child = i + 1 < m && g[i + 1] > g[i];
    if (left_side) {
      out[i] = i == 0 ? kL0 : kLL;
    } else if (right_side[i]) {
      // The infix successor of a caret with a right child is gap i + 1.
      out[i] = !right_child ? kR0 : (right_side[i + 1] ? kRNI : kRI);
    } else {
      out[i] = right_child ? kIR : kI0;
    }
  }
  return out;
}

bool valid_forest(const Forest& f) {
  // Within each tree the gap depths must form a Cartesian tree whose children
  // sit exactly one level below their parent.
  const std::size_t n = f.gaps.size();
  std::size_t i = 0;
  while (i < n) {
    if (f.gaps[i] < 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && f.gaps[j] >= 0) ++j;
    // gaps [i, j) form one tree; verify recursively with an explicit stack.
    struct Range {
      std::size_t lo, hi;
      Gap depth;
    };
    std::vector<Range> stack{{i, j, 0}};
    while (!stack.empty()) {
      const Range r = stack.back();
      stack.pop_back();
      if (r.lo == r.hi) continue;
      std::size_t root = r.hi;
      for (std::size_t k = r.lo; k < r.hi; ++k) {
        if (f.gaps[k] == r.depth) {
          if (root != r.hi) return false;
          root = k;
        } else if (f.gaps[k] < r.depth) {
          return false;
        }
      }
      if (root == r.hi) return false;
      stack.push_back({r.lo, root, r.depth + 1});
      stack.push_back({root + 1, r.hi, r.depth + 1});
    }
    i = j;
  }
  return true;
}

}  // namespace

ForestDiagram ThompsonF::identity() const { return {}; }

void ThompsonF::apply(Element& x, Symbol s) const {
  Forest& bottom = x.bottom;
  switch (s) {
    case 1: {  // x0^-1: pointer to the next tree
      const std::size_t q = tree_end(bottom, static_cast<std::size_t>(bottom.pointer));
      if (q == bottom.gaps.size()) extend_right(x);
      bottom.pointer = static_cast<std::int32_t>(q + 1);
      break;
    }
    case 0: {  // x0: pointer to the previous tree
      if (bottom.pointer == 0) extend_left(x);
      bottom.pointer = static_cast<std::int32_t>(tree_begin(bottom, static_cast<std::size_t>(bottom.pointer) - 1));
      break;
    }
    case 3: {  // x1^-1: join the pointed tree with its right neighbour
      const auto p = static_cast<std::size_t>(bottom.pointer);
      const std::size_t q = tree_end(bottom, p);
      if (q == bottom.gaps.size()) extend_right(x);
      const std::size_t r = tree_end(bottom, q + 1);
      for (std::size_t i = p; i < r; ++i)
        if (i != q) ++bottom.gaps[i];
      bottom.gaps[q] = 0;
      if (p == q && r == q + 1 && exposed(x.top, q)) erase_gap(x, q);
      break;
    }
    case 2: {  // x1: drop the root caret of the pointed tree
      const auto p = static_cast<std::size_t>(bottom.pointer);
      const std::size_t q = tree_end(bottom, p);
      if (q > p) {
        for (std::size_t i = p; i < q; ++i) --bottom.gaps[i];
      } else {
        // Trivial pointed tree: split the leaf in both forests first, which
        // leaves a new top caret and two separate bottom leaves.
        insert_gap(x, p, leaf_depth(x.top, p), kExterior);
      }
      break;
    }
    default:
      throw std::out_of_range("thompson: symbol index out of range");
  }
  trim(x);
}

void ThompsonF::append_key(const Element& x, std::string& out) const {
  put_varint(out, x.top.gaps.size());
  put_varint(out, static_cast<std::uint64_t>(x.top.pointer));
  put_varint(out, static_cast<std::uint64_t>(x.bottom.pointer));
  for (Gap g : x.top.gaps) put_varint(out, static_cast<std::uint64_t>(g + 1));
  for (Gap g : x.bottom.gaps) put_varint(out, static_cast<std::uint64_t>(g + 1));
}

std::size_t ThompsonF::carets(const Element& x) const noexcept {
  std::size_t n = 0;
  for (Gap g : x.top.gaps) n += g >= 0;
  for (Gap g : x.bottom.gaps) n += g >= 0;
  return n;
}

std::size_t ThompsonF::geodesic_length(const Element& x) const {
  auto top = spine_tree(x.top);
  auto bottom = spine_tree(x.bottom);
  reduce_pair(top, bottom);
  const auto top_types = caret_types(top);
  const auto bottom_types = caret_types(bottom);
  std::size_t length = 0;
  for (std::size_t i = 0; i < top_types.size(); ++i)
    length += static_cast<std::size_t>(kPairWeight[top_types[i]][bottom_types[i]]);
  return length;
}

bool ThompsonF::is_reduced(const Element& x) const {
  if (x.top.gaps.size() != x.bottom.gaps.size()) return false;
  const auto n = static_cast<std::int32_t>(x.top.gaps.size());
  if (x.top.pointer < 0 || x.top.pointer > n || x.bottom.pointer < 0 || x.bottom.pointer > n) return false;
  if (!valid_forest(x.top) || !valid_forest(x.bottom)) return false;
  for (const Forest* f : {&x.top, &x.bottom}) {
    const auto p = static_cast<std::size_t>(f->pointer);
    if (p > 0 && f->gaps[p - 1] >= 0) return false;  // pointer must mark a tree's first leaf
  }
  for (std::size_t i = 0; i < x.top.gaps.size(); ++i)
    if (exposed(x.top, i) && exposed(x.bottom, i)) return false;
  ForestDiagram trimmed = x;
  trim(trimmed);
  return trimmed == x;
}

std::string ThompsonF::debug_string(const Element& x) const {
  auto side = [](const Forest& f) {
    std::string out = "[p=" + std::to_string(f.pointer) + ":";
    for (Gap g : f.gaps) out += g < 0 ? std::string(" .") : " " + std::to_string(g);
    return out + "]";
  };
  return "top" + side(x.top) + " bottom" + side(x.bottom);
}

}  // namespace cogrowth
