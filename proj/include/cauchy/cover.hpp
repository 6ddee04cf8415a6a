#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <functional>
#include <vector>

#include "cauchy/error.hpp"
#include "cauchy/geometry.hpp"

namespace cauchy {

/// Verdict of a set test S ∩ A. Unknown is expanded as if nonempty.
enum class SetMeet { Empty, Nonempty, Unknown };

/// The family F (in_family) and the set A (meets) as seen by the quadtree.
struct SquarePredicate {
  std::function<bool(const Rectangle&)> in_family;
  std::function<SetMeet(const Rectangle&)> meets;
};

/// Same contract on the binary halving tree of a segment.
struct SegmentPredicate {
  std::function<bool(const Segment&)> in_family;
  std::function<SetMeet(const Segment&)> meets;
};

inline constexpr unsigned kDefaultMaxDepth = 40;

struct CoverResult {
  std::vector<Rectangle> squares;
  /// True when some branch reached max_depth without meeting F.
  bool truncated = false;
};

namespace detail {

template <class Cell>
struct TreeNode {
  Cell cell;
  unsigned depth;
  std::ptrdiff_t parent;
};

inline std::array<Segment, 2> halves(const Segment& s) {
  const Complex m = s.point(0.5);
  return {Segment(s.a(), m), Segment(m, s.b())};
}

template <class Cell>
std::vector<Cell> ancestor_chain(const std::vector<TreeNode<Cell>>& nodes, std::ptrdiff_t leaf) {
  std::vector<Cell> chain;
  for (std::ptrdiff_t i = leaf; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
    chain.push_back(nodes[static_cast<std::size_t>(i)].cell);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Breadth-first expansion of U, the subtree of cells that meet A and are not
// in F. Returns the children of U-nodes that meet A and are in F, in BFS
// order (children visited in the order `split` yields them).
template <class Cell, class Split, class InF, class Meets>
std::vector<Cell> konig(const Cell& root, Split split, InF in_family, Meets meets,
                        unsigned max_depth) {
  if (max_depth == 0) throw Error(ErrorCode::InvalidArgument, "max_depth must be positive");
  if (in_family(root)) return {root};
  std::vector<TreeNode<Cell>> nodes{{root, 0, -1}};
  std::deque<std::size_t> frontier{0};
  std::vector<Cell> out;
  while (!frontier.empty()) {
    const std::size_t at = frontier.front();
    frontier.pop_front();
    const unsigned depth = nodes[at].depth + 1;
    for (const Cell& child : split(nodes[at].cell)) {
      if (meets(child) == SetMeet::Empty) continue;
      if (in_family(child)) {
        out.push_back(child);
        continue;
      }
      nodes.push_back({child, depth, static_cast<std::ptrdiff_t>(at)});
      if (depth >= max_depth)
        throw DepthExhausted<Cell>(
            "no cover found within depth " + std::to_string(max_depth),
            ancestor_chain(nodes, static_cast<std::ptrdiff_t>(nodes.size() - 1)));
      frontier.push_back(nodes.size() - 1);
    }
  }
  return out;
}

inline void require_square(const Rectangle& r) {
  if (!r.is_square()) throw Error(ErrorCode::NotSquare, "root rectangle must be a square");
}

}  // namespace detail

/// A finite subfamily G of quadtree squares of R, each in F and meeting A,
/// with pairwise disjoint interiors and union containing A. Throws
/// DepthExhausted<Rectangle> with the nested chain of offending squares when
/// some branch stays outside F down to max_depth.
inline std::vector<Rectangle> konig_finite_cover(const Rectangle& r, const SquarePredicate& pred,
                                                 unsigned max_depth = kDefaultMaxDepth) {
  detail::require_square(r);
  return detail::konig(
      r, [](const Rectangle& s) { return quarters(s); },
      [&](const Rectangle& s) { return pred.in_family(s); },
      [&](const Rectangle& s) { return pred.meets(s); }, max_depth);
}

/// Maximal quadtree squares (up to max_depth) that are in F and meet A, in
/// depth-first SW, SE, NW, NE order.
inline CoverResult countable_cover(const Rectangle& r, const SquarePredicate& pred,
                                   unsigned max_depth = kDefaultMaxDepth) {
  detail::require_square(r);
  CoverResult out;
  std::function<void(const Rectangle&, unsigned)> visit = [&](const Rectangle& s, unsigned depth) {
    if (pred.meets(s) == SetMeet::Empty) return;
    if (pred.in_family(s)) {
      out.squares.push_back(s);
      return;
    }
    if (depth == max_depth) {
      out.truncated = true;
      return;
    }
    for (const auto& q : quarters(s)) visit(q, depth + 1);
  };
  visit(r, 0);
  return out;
}

/// The binary-halving analogue of konig_finite_cover; output is ordered from
/// L.a() to L.b().
inline std::vector<Segment> segment_cover(const Segment& l, const SegmentPredicate& pred,
                                          unsigned max_depth = kDefaultMaxDepth) {
  auto out = detail::konig(
      l, [](const Segment& s) { return detail::halves(s); },
      [&](const Segment& s) { return pred.in_family(s); },
      [&](const Segment& s) { return pred.meets(s); }, max_depth);
  const Complex d = l.delta();
  auto position = [&](const Segment& s) {
    return ((s.a() - l.a()) * std::conj(d)).real() / std::norm(d);
  };
  std::sort(out.begin(), out.end(),
            [&](const Segment& x, const Segment& y) { return position(x) < position(y); });
  return out;
}

}  // namespace cauchy
