#include "catq/spans.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "catq/errors.hpp"

namespace catq {

namespace {

std::string span_label(const SpanCell& s) {
  return s.left_foot().label() + " <- " + s.apex().label() + " -> " + s.right_foot().label();
}

}  // namespace

void require_span(const SpanCell& s) {
  if (s.left.from != s.right.from)
    throw MalformedInput("span legs do not share an apex: " + s.left.from.label() +
                         " vs " + s.right.from.label());
}

SpanCell identity_span(const Context& c) {
  return SpanCell{SetMap::identity(c), SetMap::identity(c)};
}

SpanCell span_compose(const SpanCell& s, const SpanCell& t) {
  require_span(s);
  require_span(t);
  if (t.right_foot() != s.left_foot())
    throw FeetMismatch("span composition: middle feet differ: " + t.right_foot().label() +
                       " vs " + s.left_foot().label());
  std::vector<Elem> apex;
  std::vector<int> ltab, rtab;
  for (int u = 0; u < t.apex().size(); ++u) {
    for (int v = 0; v < s.apex().size(); ++v) {
      if (t.right.apply_index(u) != s.left.apply_index(v)) continue;
      apex.push_back(Elem::pair(t.apex().elements[static_cast<std::size_t>(u)],
                                s.apex().elements[static_cast<std::size_t>(v)]));
      ltab.push_back(t.left.apply_index(u));
      rtab.push_back(s.right.apply_index(v));
    }
  }
  Context a(std::move(apex));
  return SpanCell{SetMap(a, t.left_foot(), std::move(ltab)),
                  SetMap(a, s.right_foot(), std::move(rtab))};
}

void require_span_morphism(const SpanMorphism& m) {
  require_span(m.from);
  require_span(m.to);
  if (m.from.left_foot() != m.to.left_foot() || m.from.right_foot() != m.to.right_foot())
    throw MalformedInput("span 2-cell: spans are not parallel");
  if (m.map.from != m.from.apex() || m.map.to != m.to.apex())
    throw MalformedInput("span 2-cell: apex map endpoints do not match the spans");
  if (!(compose_maps(m.to.left, m.map) == m.from.left))
    throw MalformedInput("span 2-cell: left leg triangle does not commute");
  if (!(compose_maps(m.to.right, m.map) == m.from.right))
    throw MalformedInput("span 2-cell: right leg triangle does not commute");
}

SpanMorphism identity_cell(const SpanCell& s) {
  require_span(s);
  return SpanMorphism{s, s, SetMap::identity(s.apex())};
}

bool is_invertible_cell(const SpanMorphism& m) {
  if (m.map.from.size() != m.map.to.size()) return false;
  std::vector<bool> hit(static_cast<std::size_t>(m.map.to.size()), false);
  for (int i = 0; i < m.map.from.size(); ++i) {
    int j = m.map.apply_index(i);
    if (hit[static_cast<std::size_t>(j)]) return false;
    hit[static_cast<std::size_t>(j)] = true;
  }
  return true;
}

SpanMorphism invert_cell(const SpanMorphism& m) {
  require_span_morphism(m);
  if (!is_invertible_cell(m))
    throw MalformedInput("span 2-cell is not invertible");
  std::vector<int> inv(static_cast<std::size_t>(m.map.to.size()), -1);
  for (int i = 0; i < m.map.from.size(); ++i)
    inv[static_cast<std::size_t>(m.map.apply_index(i))] = i;
  return SpanMorphism{m.to, m.from, SetMap(m.map.to, m.map.from, std::move(inv))};
}

SpanMorphism vcomp(const SpanMorphism& b, const SpanMorphism& a) {
  require_span_morphism(a);
  require_span_morphism(b);
  if (a.to != b.from)
    throw MalformedInput("vertical composition: cells do not chain");
  return SpanMorphism{a.from, b.to, compose_maps(b.map, a.map)};
}

SpanMorphism hcomp(const SpanMorphism& q, const SpanMorphism& p) {
  require_span_morphism(p);
  require_span_morphism(q);
  if (p.from.right_foot() != q.from.left_foot())
    throw FeetMismatch("horizontal composition: middle feet differ");
  SpanCell from_span = span_compose(q.from, p.from);
  SpanCell to_span = span_compose(q.to, p.to);
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(from_span.apex().size()));
  for (const Elem& e : from_span.apex().elements) {
    int u = p.from.apex().index_of(e.first());
    int v = q.from.apex().index_of(e.second());
    Elem image = Elem::pair(
        p.to.apex().elements[static_cast<std::size_t>(p.map.apply_index(u))],
        q.to.apex().elements[static_cast<std::size_t>(q.map.apply_index(v))]);
    tab.push_back(to_span.apex().index_of(image));
  }
  SpanMorphism r;
  r.map = SetMap(from_span.apex(), to_span.apex(), std::move(tab));
  r.from = std::move(from_span);
  r.to = std::move(to_span);
  require_span_morphism(r);
  return r;
}

SpanMorphism associator(const SpanCell& s, const SpanCell& t, const SpanCell& u) {
  SpanCell st = span_compose(s, t);
  SpanCell tu = span_compose(t, u);
  SpanCell from_span = span_compose(st, u);   // (s o t) o u
  SpanCell to_span = span_compose(s, tu);     // s o (t o u)
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(from_span.apex().size()));
  for (const Elem& e : from_span.apex().elements) {
    const Elem& a = e.first();              // in u's apex
    const Elem& bc = e.second();            // pair in (s o t)'s apex
    Elem image = Elem::pair(Elem::pair(a, bc.first()), bc.second());
    tab.push_back(to_span.apex().index_of(image));
  }
  SpanMorphism r;
  r.from = from_span;
  r.to = to_span;
  r.map = SetMap(from_span.apex(), to_span.apex(), std::move(tab));
  require_span_morphism(r);
  if (!is_invertible_cell(r))
    throw MalformedInput("re-association cell failed to be a bijection");
  return r;
}

SpanMorphism left_unitor(const SpanCell& s) {
  require_span(s);
  SpanCell from_span = span_compose(identity_span(s.right_foot()), s);
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(from_span.apex().size()));
  for (const Elem& e : from_span.apex().elements)
    tab.push_back(s.apex().index_of(e.first()));
  SpanMorphism r;
  r.from = from_span;
  r.to = s;
  r.map = SetMap(from_span.apex(), s.apex(), std::move(tab));
  require_span_morphism(r);
  if (!is_invertible_cell(r))
    throw MalformedInput("left unit cell failed to be a bijection");
  return r;
}

SpanMorphism right_unitor(const SpanCell& s) {
  require_span(s);
  SpanCell from_span = span_compose(s, identity_span(s.left_foot()));
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(from_span.apex().size()));
  for (const Elem& e : from_span.apex().elements)
    tab.push_back(s.apex().index_of(e.second()));
  SpanMorphism r;
  r.from = from_span;
  r.to = s;
  r.map = SetMap(from_span.apex(), s.apex(), std::move(tab));
  require_span_morphism(r);
  if (!is_invertible_cell(r))
    throw MalformedInput("right unit cell failed to be a bijection");
  return r;
}

LawReport check_pentagon(const SpanCell& r, const SpanCell& s, const SpanCell& t,
                         const SpanCell& u) {
  LawReport rep;
  rep.note_law("pentagon");
  SpanCell rs = span_compose(r, s);
  SpanCell st = span_compose(s, t);
  SpanCell tu = span_compose(t, u);
  // Route 1: ((r o s) o t) o u -> (r o s) o (t o u) -> r o (s o (t o u)).
  SpanMorphism route1 = vcomp(associator(r, s, tu), associator(rs, t, u));
  // Route 2: whisker a(r,s,t) by u, re-associate around (s o t), then whisker
  // a(s,t,u) by r.
  SpanMorphism route2 = vcomp(
      hcomp(identity_cell(r), associator(s, t, u)),
      vcomp(associator(r, st, u), hcomp(associator(r, s, t), identity_cell(u))));
  ++rep.instances;
  if (!(route1 == route2))
    rep.fail("pentagon", {},
             "re-association routes differ on " + span_label(u) + " ; " + span_label(t) +
                 " ; " + span_label(s) + " ; " + span_label(r));
  return rep;
}

LawReport check_triangle(const SpanCell& s, const SpanCell& t) {
  LawReport rep;
  rep.note_law("triangle");
  if (t.right_foot() != s.left_foot())
    throw FeetMismatch("triangle law: cells are not composable");
  SpanCell mid = identity_span(t.right_foot());
  SpanMorphism route1 =
      vcomp(hcomp(identity_cell(s), left_unitor(t)), associator(s, mid, t));
  SpanMorphism route2 = hcomp(right_unitor(s), identity_cell(t));
  ++rep.instances;
  if (!(route1 == route2))
    rep.fail("triangle", {},
             "unit routes differ on " + span_label(t) + " ; " + span_label(s));
  return rep;
}

bool interchange_check(const SpanMorphism& bp, const SpanMorphism& b,
                       const SpanMorphism& ap, const SpanMorphism& a) {
  require_span_morphism(a);
  require_span_morphism(b);
  require_span_morphism(ap);
  require_span_morphism(bp);
  if (!(a.to == b.from) || !(ap.to == bp.from))
    throw GridMismatch("interchange: cells do not stack vertically");
  if (a.from.right_foot() != ap.from.left_foot())
    throw GridMismatch("interchange: columns do not share a middle foot");
  SpanMorphism lhs = vcomp(hcomp(bp, b), hcomp(ap, a));
  SpanMorphism rhs = hcomp(vcomp(bp, ap), vcomp(b, a));
  return lhs == rhs;
}

void require_path(const PathCell& p) {
  for (const SpanCell& c : p.cells) require_span(c);
  if (!p.cells.empty() && p.at != p.cells.front().left_foot())
    throw MalformedInput("path start does not match its first cell");
  for (std::size_t i = 0; i + 1 < p.cells.size(); ++i)
    if (p.cells[i].right_foot() != p.cells[i + 1].left_foot())
      throw FeetMismatch("path cells " + std::to_string(i) + " and " + std::to_string(i + 1) +
                         " do not chain");
}

PathCell path_identity(const Context& c) { return PathCell{c, {}}; }

PathCell path_compose(const PathCell& q, const PathCell& p) {
  require_path(p);
  require_path(q);
  if (p.target() != q.source())
    throw FeetMismatch("path composition: paths do not chain");
  PathCell r;
  r.at = p.at;
  r.cells = p.cells;
  r.cells.insert(r.cells.end(), q.cells.begin(), q.cells.end());
  return r;
}

SpanCell eval_path(const PathCell& p) {
  require_path(p);
  if (p.cells.empty()) return identity_span(p.at);
  SpanCell acc = p.cells.front();
  for (std::size_t i = 1; i < p.cells.size(); ++i) acc = span_compose(p.cells[i], acc);
  return acc;
}

SpanMorphism concat_comparison(const PathCell& q, const PathCell& p) {
  require_path(p);
  require_path(q);
  if (p.target() != q.source())
    throw FeetMismatch("path comparison: paths do not chain");
  SpanCell ep = eval_path(p);
  SpanCell eq = eval_path(q);
  if (q.cells.empty()) {
    // eval(p . id) = eval(p); target is id o eval(p): the inverse left unitor.
    return invert_cell(left_unitor(ep));
  }
  if (p.cells.empty()) {
    // eval(id . q) = eval(q); target is eval(q) o id: the inverse right unitor.
    return invert_cell(right_unitor(eq));
  }
  // Peel q's cells one at a time: maintain iso_k from the evaluation of
  // p ++ q[0..k) to eval(q[0..k)) o eval(p).
  SpanCell eqk = q.cells.front();
  SpanMorphism iso = identity_cell(span_compose(eqk, ep));
  for (std::size_t k = 1; k < q.cells.size(); ++k) {
    const SpanCell& next = q.cells[k];
    iso = vcomp(invert_cell(associator(next, eqk, ep)),
                hcomp(identity_cell(next), iso));
    eqk = span_compose(next, eqk);
  }
  require_span_morphism(iso);
  if (!is_invertible_cell(iso))
    throw MalformedInput("path comparison cell failed to be a bijection");
  return iso;
}

namespace {

// Full bracketings of a cell list, represented as binary trees whose in-order
// leaves are the cells in path order.
struct TreeNode {
  int leaf = -1;
  std::shared_ptr<const TreeNode> l, r;
};
using TreePtr = std::shared_ptr<const TreeNode>;

TreePtr make_leaf(int i) {
  auto n = std::make_shared<TreeNode>();
  n->leaf = i;
  return n;
}

TreePtr make_node(TreePtr l, TreePtr r) {
  auto n = std::make_shared<TreeNode>();
  n->l = std::move(l);
  n->r = std::move(r);
  return n;
}

std::string encode(const TreePtr& t) {
  if (t->leaf >= 0) return std::to_string(t->leaf);
  return "(" + encode(t->l) + "." + encode(t->r) + ")";
}

void enumerate_trees(int i, int j, std::map<std::pair<int, int>, std::vector<TreePtr>>& memo) {
  auto key = std::make_pair(i, j);
  if (memo.count(key)) return;
  std::vector<TreePtr> out;
  if (i == j) {
    out.push_back(make_leaf(i));
  } else {
    for (int k = i; k < j; ++k) {
      enumerate_trees(i, k, memo);
      enumerate_trees(k + 1, j, memo);
      for (const TreePtr& l : memo[{i, k}])
        for (const TreePtr& r : memo[{k + 1, j}]) out.push_back(make_node(l, r));
    }
  }
  memo[key] = std::move(out);
}

SpanCell eval_tree(const TreePtr& t, const std::vector<SpanCell>& cells,
                   std::map<std::string, SpanCell>& memo) {
  std::string e = encode(t);
  auto it = memo.find(e);
  if (it != memo.end()) return it->second;
  SpanCell v = t->leaf >= 0
                   ? cells[static_cast<std::size_t>(t->leaf)]
                   : span_compose(eval_tree(t->r, cells, memo), eval_tree(t->l, cells, memo));
  memo.emplace(std::move(e), v);
  return v;
}

// One re-association move applied at any position: a subtree (A.(B.C))
// becomes ((A.B).C), carrying the whiskered associator cell.
void collect_moves(const TreePtr& t, const std::vector<SpanCell>& cells,
                   std::map<std::string, SpanCell>& eval_memo,
                   std::vector<std::pair<TreePtr, SpanMorphism>>& out) {
  if (t->leaf >= 0) return;
  const TreePtr& a = t->l;
  const TreePtr& rsub = t->r;
  if (rsub->leaf < 0) {
    const TreePtr& b = rsub->l;
    const TreePtr& c = rsub->r;
    SpanMorphism cell = associator(eval_tree(c, cells, eval_memo),
                                   eval_tree(b, cells, eval_memo),
                                   eval_tree(a, cells, eval_memo));
    out.emplace_back(make_node(make_node(a, b), c), std::move(cell));
  }
  // Moves inside the left block, whiskered by the right block's value.
  std::vector<std::pair<TreePtr, SpanMorphism>> sub;
  collect_moves(t->l, cells, eval_memo, sub);
  for (auto& [nt, m] : sub)
    out.emplace_back(make_node(nt, t->r),
                     hcomp(identity_cell(eval_tree(t->r, cells, eval_memo)), m));
  sub.clear();
  collect_moves(t->r, cells, eval_memo, sub);
  for (auto& [nt, m] : sub)
    out.emplace_back(make_node(t->l, nt),
                     hcomp(m, identity_cell(eval_tree(t->l, cells, eval_memo))));
}

}  // namespace

LawReport check_path_coherence(const PathCell& p, int max_cells) {
  require_path(p);
  LawReport rep;
  rep.note_law("bracketing-coherence");
  int n = static_cast<int>(p.cells.size());
  if (n > max_cells)
    throw ShapeCapExceeded("path of " + std::to_string(n) +
                           " cells exceeds the re-association cap of " +
                           std::to_string(max_cells));
  if (n <= 1) {
    ++rep.instances;
    return rep;
  }
  std::map<std::pair<int, int>, std::vector<TreePtr>> trees;
  enumerate_trees(0, n - 1, trees);
  const std::vector<TreePtr>& all = trees[{0, n - 1}];
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[encode(all[i])] = static_cast<int>(i);

  std::map<std::string, SpanCell> eval_memo;
  // Directed move edges u -> v with their comparison cells.
  struct Edge {
    int from, to;
    SpanMorphism cell;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::vector<std::pair<TreePtr, SpanMorphism>> moves;
    collect_moves(all[i], p.cells, eval_memo, moves);
    for (auto& [nt, m] : moves) {
      auto it = index.find(encode(nt));
      if (it == index.end())
        throw MalformedInput("re-association produced an unknown bracketing");
      edges.push_back(Edge{static_cast<int>(i), it->second, std::move(m)});
    }
  }

  // The canonical bracketing is the left comb, i.e. the evaluation order of
  // eval_path; locate it.
  TreePtr comb = make_leaf(0);
  for (int i = 1; i < n; ++i) comb = make_node(comb, make_leaf(i));
  int root = index.at(encode(comb));

  // Breadth-first search assigning each bracketing the comparison cell from
  // the canonical one; every edge not used by the search tree must agree
  // with the already-assigned cells (all re-association routes coincide).
  std::vector<std::vector<std::pair<int, SpanMorphism>>> adj(all.size());
  for (const Edge& e : edges) {
    adj[static_cast<std::size_t>(e.from)].emplace_back(e.to, e.cell);
    adj[static_cast<std::size_t>(e.to)].emplace_back(e.from, invert_cell(e.cell));
  }
  std::vector<bool> seen(all.size(), false);
  std::vector<SpanMorphism> iso(all.size());
  std::queue<int> bfs;
  seen[static_cast<std::size_t>(root)] = true;
  iso[static_cast<std::size_t>(root)] =
      identity_cell(eval_tree(all[static_cast<std::size_t>(root)], p.cells, eval_memo));
  bfs.push(root);
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (const auto& [v, m] : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = true;
      iso[static_cast<std::size_t>(v)] = vcomp(m, iso[static_cast<std::size_t>(u)]);
      bfs.push(v);
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    ++rep.instances;
    if (!seen[i])
      rep.fail("bracketing-coherence", {static_cast<long long>(i)},
               "bracketing " + encode(all[i]) + " is unreachable by re-association");
  }
  for (const Edge& e : edges) {
    ++rep.instances;
    SpanMorphism via = vcomp(e.cell, iso[static_cast<std::size_t>(e.from)]);
    if (!(via == iso[static_cast<std::size_t>(e.to)]))
      rep.fail("bracketing-coherence",
               {static_cast<long long>(e.from), static_cast<long long>(e.to)},
               "routes from " + encode(all[static_cast<std::size_t>(e.from)]) + " to " +
                   encode(all[static_cast<std::size_t>(e.to)]) + " disagree");
  }
  return rep;
}

}  // namespace catq
