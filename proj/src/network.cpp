#include "netsyn/network.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace netsyn {

namespace {

using NodePair = std::pair<int, int>;

NodePair ordered(int i, int j) { return i < j ? NodePair{i, j} : NodePair{j, i}; }

void check_element(const Element& e) {
  if (e.i == e.j) throw std::invalid_argument("element: nodes must be distinct");
  if (!(e.value > 0.0) || !std::isfinite(e.value))
    throw std::invalid_argument("element: value must be positive and finite");
}

std::set<int> reachable(int start, const std::vector<NodePair>& edges,
                        const std::set<int>& blocked) {
  std::set<int> seen;
  if (blocked.count(start)) return seen;
  seen.insert(start);
  std::vector<int> queue{start};
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (const auto& [i, j] : edges) {
      if (i != v && j != v) continue;
      int w = (i == v) ? j : i;
      if (blocked.count(w) || seen.count(w)) continue;
      seen.insert(w);
      queue.push_back(w);
    }
  }
  return seen;
}

std::vector<NodePair> edge_pairs(const Netlist& n) {
  std::vector<NodePair> out;
  out.reserve(n.elements.size());
  for (const auto& e : n.elements) out.emplace_back(e.i, e.j);
  return out;
}

}  // namespace

const char* element_kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::damper: return "damper";
    case ElementKind::spring: return "spring";
    case ElementKind::inerter: return "inerter";
  }
  return "?";
}

int Netlist::node_count() const {
  int m = 1;  // terminals 0, 1 always exist
  for (const auto& e : elements) m = std::max({m, e.i, e.j});
  return m + 1;
}

int Netlist::storage_count() const {
  int n = 0;
  for (const auto& e : elements)
    if (e.kind != ElementKind::damper) ++n;
  return n;
}

RatFun element_impedance(const Element& e) {
  check_element(e);
  switch (e.kind) {
    case ElementKind::damper: return RatFun(Poly({1.0}), Poly({e.value}));
    case ElementKind::spring: return RatFun(Poly({0.0, 1.0}), Poly({e.value}));
    case ElementKind::inerter: return RatFun(Poly({1.0}), Poly({0.0, e.value}));
  }
  throw std::logic_error("element_impedance: bad kind");
}

namespace {

// --- series-parallel reduction over rational impedances ---

struct ZEdge {
  int i, j;
  RatFun z;
};

int sp_degree(const std::vector<ZEdge>& edges, int v) {
  int d = 0;
  for (const auto& e : edges)
    if (e.i == v || e.j == v) ++d;
  return d;
}

// Reduces to a single 0-1 edge when the graph is series-parallel.
// Dangling internal chains carry no force and are dropped.
bool sp_reduce(std::vector<ZEdge>& edges, double tau_gcd) {
  bool changed = true;
  while (edges.size() > 1 && changed) {
    changed = false;

    for (size_t k = 0; k < edges.size(); ++k) {
      if (edges[k].i == edges[k].j) {  // dead loop from a collapsed chain
        edges.erase(edges.begin() + static_cast<long>(k));
        changed = true;
        break;
      }
    }
    if (changed) continue;

    for (size_t k = 0; k < edges.size() && !changed; ++k) {
      for (int v : {edges[k].i, edges[k].j}) {
        if (v <= 1) continue;
        if (sp_degree(edges, v) == 1) {  // dangling
          edges.erase(edges.begin() + static_cast<long>(k));
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;

    for (size_t a = 0; a < edges.size() && !changed; ++a) {
      for (size_t b = a + 1; b < edges.size(); ++b) {
        if (ordered(edges[a].i, edges[a].j) != ordered(edges[b].i, edges[b].j)) continue;
        RatFun y = ratfun_add(ratfun_inv(edges[a].z), ratfun_inv(edges[b].z), tau_gcd);
        edges[a].z = ratfun_inv(y);
        edges.erase(edges.begin() + static_cast<long>(b));
        changed = true;
        break;
      }
    }
    if (changed) continue;

    std::set<int> nodes;
    for (const auto& e : edges) {
      nodes.insert(e.i);
      nodes.insert(e.j);
    }
    for (int v : nodes) {
      if (v <= 1 || sp_degree(edges, v) != 2) continue;
      size_t a = edges.size(), b = edges.size();
      for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].i != v && edges[k].j != v) continue;
        (a == edges.size() ? a : b) = k;
      }
      int u = (edges[a].i == v) ? edges[a].j : edges[a].i;
      int w = (edges[b].i == v) ? edges[b].j : edges[b].i;
      if (u == w) continue;  // parallel pair, handled above
      edges[a] = ZEdge{u, w, ratfun_add(edges[a].z, edges[b].z, tau_gcd)};
      edges.erase(edges.begin() + static_cast<long>(b));
      changed = true;
      break;
    }
  }
  return edges.size() == 1 && ordered(edges[0].i, edges[0].j) == NodePair{0, 1};
}

// --- nodal analysis with polynomial entries ---

Poly poly_form_admittance(const Element& e) {
  switch (e.kind) {
    case ElementKind::damper: return Poly({0.0, e.value});        // c*s
    case ElementKind::spring: return Poly({e.value});             // k
    case ElementKind::inerter: return Poly({0.0, 0.0, e.value});  // b*s^2
  }
  throw std::logic_error("bad kind");
}

Poly det_poly(const std::vector<std::vector<Poly>>& m) {
  const size_t n = m.size();
  if (n == 0) return Poly({1.0});
  if (n == 1) return m[0][0];
  Poly acc;
  for (size_t r = 0; r < n; ++r) {
    if (m[r][0].is_zero()) continue;
    std::vector<std::vector<Poly>> sub;
    sub.reserve(n - 1);
    for (size_t rr = 0; rr < n; ++rr) {
      if (rr == r) continue;
      sub.emplace_back(m[rr].begin() + 1, m[rr].end());
    }
    Poly term = poly_mul(m[r][0], det_poly(sub));
    if (r % 2 == 1) term = poly_scale(term, -1.0);
    acc = poly_add(acc, term);
  }
  return acc;
}

RatFun nodal_impedance(const Netlist& n, double tau_gcd) {
  std::map<int, int> idx{{0, 0}, {1, 1}};
  for (const auto& e : n.elements) {
    for (int v : {e.i, e.j})
      if (!idx.count(v)) {
        int next = static_cast<int>(idx.size());
        idx[v] = next;
      }
  }
  const size_t m = idx.size();
  std::vector<std::vector<Poly>> y(m, std::vector<Poly>(m));
  for (const auto& e : n.elements) {
    const Poly ye = poly_form_admittance(e);
    const int a = idx.at(e.i), b = idx.at(e.j);
    y[a][a] = poly_add(y[a][a], ye);
    y[b][b] = poly_add(y[b][b], ye);
    y[a][b] = poly_sub(y[a][b], ye);
    y[b][a] = poly_sub(y[b][a], ye);
  }

  // Ground terminal 1; the driving-point impedance at terminal 0 is
  // s * det(grounded matrix less node-0 row/col) / det(grounded matrix).
  auto strike = [](const std::vector<std::vector<Poly>>& src, size_t cut) {
    std::vector<std::vector<Poly>> out;
    for (size_t r = 0; r < src.size(); ++r) {
      if (r == cut) continue;
      std::vector<Poly> row;
      for (size_t c = 0; c < src.size(); ++c)
        if (c != cut) row.push_back(src[r][c]);
      out.push_back(std::move(row));
    }
    return out;
  };
  const auto grounded = strike(y, 1);
  Poly den = det_poly(grounded);
  Poly num = poly_mul(Poly({0.0, 1.0}), det_poly(strike(grounded, 0)));
  return ratfun_normalize(ratfun_reduce(RatFun(std::move(num), std::move(den)), tau_gcd));
}

}  // namespace

RatFun impedance_of(const Netlist& n, double tau_gcd) {
  for (const auto& e : n.elements) check_element(e);
  const auto pairs = edge_pairs(n);
  if (!reachable(0, pairs, {}).count(1))
    throw std::invalid_argument("impedance_of: terminals disconnected");

  std::vector<ZEdge> edges;
  edges.reserve(n.elements.size());
  for (const auto& e : n.elements) edges.push_back(ZEdge{e.i, e.j, element_impedance(e)});
  if (sp_reduce(edges, tau_gcd))
    return ratfun_normalize(ratfun_reduce(std::move(edges[0].z), tau_gcd));
  return nodal_impedance(n, tau_gcd);
}

namespace {

// --- graph dualization: series-parallel tree or the 4-node bridge ---

struct TreeNode {
  char op;  // 'L' leaf, 'S' series, 'P' parallel
  int elem = -1;
  std::vector<int> kids;
};

struct TEdge {
  int i, j, t;
};

int sp_tree_parse(const Netlist& n, std::vector<TreeNode>& arena) {
  std::vector<TEdge> edges;
  for (size_t k = 0; k < n.elements.size(); ++k) {
    arena.push_back(TreeNode{'L', static_cast<int>(k), {}});
    edges.push_back(TEdge{n.elements[k].i, n.elements[k].j, static_cast<int>(arena.size()) - 1});
  }
  auto degree = [&edges](int v) {
    int d = 0;
    for (const auto& e : edges)
      if (e.i == v || e.j == v) ++d;
    return d;
  };
  bool changed = true;
  while (edges.size() > 1 && changed) {
    changed = false;
    for (size_t a = 0; a < edges.size() && !changed; ++a) {
      for (size_t b = a + 1; b < edges.size(); ++b) {
        if (ordered(edges[a].i, edges[a].j) != ordered(edges[b].i, edges[b].j)) continue;
        arena.push_back(TreeNode{'P', -1, {edges[a].t, edges[b].t}});
        edges[a].t = static_cast<int>(arena.size()) - 1;
        edges.erase(edges.begin() + static_cast<long>(b));
        changed = true;
        break;
      }
    }
    if (changed) continue;
    std::set<int> nodes;
    for (const auto& e : edges) {
      nodes.insert(e.i);
      nodes.insert(e.j);
    }
    for (int v : nodes) {
      if (v <= 1 || degree(v) != 2) continue;
      size_t a = edges.size(), b = edges.size();
      for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].i != v && edges[k].j != v) continue;
        (a == edges.size() ? a : b) = k;
      }
      int u = (edges[a].i == v) ? edges[a].j : edges[a].i;
      int w = (edges[b].i == v) ? edges[b].j : edges[b].i;
      if (u == w) continue;
      arena.push_back(TreeNode{'S', -1, {edges[a].t, edges[b].t}});
      edges[a] = TEdge{u, w, static_cast<int>(arena.size()) - 1};
      edges.erase(edges.begin() + static_cast<long>(b));
      changed = true;
      break;
    }
  }
  if (edges.size() == 1 && ordered(edges[0].i, edges[0].j) == NodePair{0, 1}) return edges[0].t;
  return -1;
}

void sp_tree_build(const std::vector<TreeNode>& arena, const Netlist& src, int t, int a, int b,
                   bool flip_op, Netlist& out, int& next_node) {
  const TreeNode& node = arena[static_cast<size_t>(t)];
  if (node.op == 'L') {
    Element e = src.elements[static_cast<size_t>(node.elem)];
    e.i = a;
    e.j = b;
    out.elements.push_back(e);
    return;
  }
  const char op = flip_op ? (node.op == 'S' ? 'P' : 'S') : node.op;
  if (op == 'P') {
    for (int kid : node.kids) sp_tree_build(arena, src, kid, a, b, flip_op, out, next_node);
    return;
  }
  int prev = a;
  for (size_t k = 0; k < node.kids.size(); ++k) {
    const int nxt = (k + 1 == node.kids.size()) ? b : next_node++;
    sp_tree_build(arena, src, node.kids[k], prev, nxt, flip_op, out, next_node);
    prev = nxt;
  }
}

// The 4-node bridge is self-dual as a graph: exchanging the elements on the
// two diagonal edges (0,y) and (x,1) realizes the dual network.
bool bridge_dualize(const Netlist& n, Netlist& out) {
  if (n.elements.size() != 5) return false;
  std::set<int> internal;
  for (const auto& e : n.elements)
    for (int v : {e.i, e.j})
      if (v > 1) internal.insert(v);
  if (internal.size() != 2) return false;
  const int x = *internal.begin();
  const int y = *internal.rbegin();
  const std::vector<NodePair> pattern{ordered(0, x), ordered(0, y), ordered(x, 1),
                                      ordered(y, 1), ordered(x, y)};
  std::map<NodePair, int> where;
  for (size_t k = 0; k < n.elements.size(); ++k) {
    const auto key = ordered(n.elements[k].i, n.elements[k].j);
    if (where.count(key)) return false;
    where[key] = static_cast<int>(k);
  }
  for (const auto& p : pattern)
    if (!where.count(p)) return false;
  out = n;
  auto& d1 = out.elements[static_cast<size_t>(where.at(ordered(0, y)))];
  auto& d2 = out.elements[static_cast<size_t>(where.at(ordered(x, 1)))];
  d1.i = x;
  d1.j = 1;
  d2.i = 0;
  d2.j = y;
  return true;
}

Netlist dual_graph(const Netlist& n) {
  std::vector<TreeNode> arena;
  const int root = sp_tree_parse(n, arena);
  if (root >= 0) {
    Netlist out;
    int next_node = 2;
    sp_tree_build(arena, n, root, 0, 1, /*flip_op=*/true, out, next_node);
    return out;
  }
  Netlist out;
  if (bridge_dualize(n, out)) return out;
  throw std::invalid_argument("transform: dual graph unsupported for this topology");
}

ElementKind swapped_kind(ElementKind k) {
  if (k == ElementKind::spring) return ElementKind::inerter;
  if (k == ElementKind::inerter) return ElementKind::spring;
  return k;
}

}  // namespace

Netlist transform(const Netlist& n, TransformKind t) {
  if (t == TransformKind::inv) {
    Netlist out = n;
    for (auto& e : out.elements) e.kind = swapped_kind(e.kind);
    return out;
  }
  Netlist out = dual_graph(n);
  for (auto& e : out.elements) {
    e.value = 1.0 / e.value;
    if (t == TransformKind::dual) e.kind = swapped_kind(e.kind);
  }
  return out;
}

Netlist instantiate(const ConfigTemplate& t, const std::vector<double>& values) {
  if (values.size() != t.slots.size())
    throw std::invalid_argument("instantiate: expected one value per slot");
  Netlist n;
  for (size_t k = 0; k < t.slots.size(); ++k) {
    Element e{t.slots[k].kind, values[k], t.slots[k].i, t.slots[k].j};
    check_element(e);
    n.elements.push_back(e);
  }
  return n;
}

std::vector<std::string> structural_guards(const Netlist& n) {
  std::vector<std::string> out;
  if (n.elements.size() < 5) out.push_back("element count");
  if (n.storage_count() < 3) out.push_back("storage count");

  const auto pairs = edge_pairs(n);
  auto kind_pairs = [&n](bool keep_spring, bool keep_inerter, bool keep_damper) {
    std::vector<NodePair> out_pairs;
    for (const auto& e : n.elements) {
      const bool keep = (e.kind == ElementKind::spring && keep_spring) ||
                        (e.kind == ElementKind::inerter && keep_inerter) ||
                        (e.kind == ElementKind::damper && keep_damper);
      if (keep) out_pairs.emplace_back(e.i, e.j);
    }
    return out_pairs;
  };

  if (reachable(0, kind_pairs(true, false, false), {}).count(1)) out.push_back("k-path");
  if (reachable(0, kind_pairs(false, true, false), {}).count(1)) out.push_back("b-path");
  if (reachable(0, pairs, {}).count(1)) {
    if (!reachable(0, kind_pairs(false, true, true), {}).count(1)) out.push_back("k-cutset");
    if (!reachable(0, kind_pairs(true, false, true), {}).count(1)) out.push_back("b-cutset");
  }

  // Series decomposition: terminal separators split the network into
  // segments; a segment without a damper is a lossless series block.
  std::set<int> internal;
  for (const auto& [i, j] : pairs)
    for (int v : {i, j})
      if (v > 1) internal.insert(v);
  std::vector<std::pair<size_t, int>> seps;  // (|reachable from 0|, node)
  for (int v : internal) {
    const auto from0 = reachable(0, pairs, {v});
    if (!from0.count(1)) seps.emplace_back(from0.size(), v);
  }
  std::sort(seps.begin(), seps.end());
  std::vector<int> bounds{0};
  for (const auto& [cnt, v] : seps) bounds.push_back(v);
  bounds.push_back(1);
  for (size_t k = 0; k + 1 < bounds.size(); ++k) {
    const int p = bounds[k], q = bounds[k + 1];
    const std::set<int> ap = (p == 0) ? std::set<int>{} : reachable(0, pairs, {p});
    const std::set<int> bq = (q == 1) ? std::set<int>{} : reachable(1, pairs, {q});
    bool has_damper = false, has_edge = false;
    for (const auto& e : n.elements) {
      if (ap.count(e.i) || ap.count(e.j) || bq.count(e.i) || bq.count(e.j)) continue;
      has_edge = true;
      if (e.kind == ElementKind::damper) has_damper = true;
    }
    if (has_edge && !has_damper) out.push_back("lossless-series");
  }

  // Parallel decomposition at the terminals: with two or more branches,
  // each terminal-to-terminal branch needs a damper.
  std::vector<std::vector<size_t>> branches;
  for (size_t k = 0; k < n.elements.size(); ++k)
    if (ordered(n.elements[k].i, n.elements[k].j) == NodePair{0, 1}) branches.push_back({k});
  std::set<int> assigned;
  for (int v : internal) {
    if (assigned.count(v)) continue;
    const auto comp = reachable(v, pairs, {0, 1});
    bool touches0 = false, touches1 = false;
    std::vector<size_t> branch;
    for (size_t k = 0; k < n.elements.size(); ++k) {
      const auto& e = n.elements[k];
      if (!comp.count(e.i) && !comp.count(e.j)) continue;
      branch.push_back(k);
      if (e.i == 0 || e.j == 0) touches0 = true;
      if (e.i == 1 || e.j == 1) touches1 = true;
    }
    for (int w : comp) assigned.insert(w);
    if (touches0 && touches1) branches.push_back(std::move(branch));
  }
  if (branches.size() >= 2) {
    for (const auto& branch : branches) {
      bool has_damper = false;
      for (size_t k : branch)
        if (n.elements[k].kind == ElementKind::damper) has_damper = true;
      if (!has_damper) out.push_back("lossless-parallel");
    }
  }
  return out;
}

}  // namespace netsyn
