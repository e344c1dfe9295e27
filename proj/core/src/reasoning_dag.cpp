#include "ghostlab/reasoning_dag.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "ghostlab/errors.hpp"

namespace ghostlab {

std::string_view to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pending:
      return "pending";
    case ClaimStatus::Validated:
      return "validated";
    case ClaimStatus::Rejected:
      return "rejected";
  }
  return "?";
}

namespace {

bool is_token(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == '=' || c == '#';
  });
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

std::size_t ClaimDag::index_of(std::string_view id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw DagError("unknown claim id '" + std::string(id) + "'");
  return it->second;
}

const ClaimNode* ClaimDag::find(std::string_view id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

void ClaimDag::add_claim(ClaimNode node) {
  if (!is_token(node.id)) throw DagError("claim id must be a non-empty token without whitespace, ',' or '='");
  if (index_.contains(node.id)) throw DagError("duplicate claim id '" + node.id + "'");
  std::set<std::string_view> seen;
  for (const auto& label : node.payload) {
    if (!is_token(label)) throw DagError("payload label '" + label + "' of claim '" + node.id + "' is malformed");
    if (!seen.insert(label).second) throw DagError("duplicate label '" + label + "' in claim '" + node.id + "'");
  }
  if (node.status != ClaimStatus::Pending) throw DagError("new claims must be Pending");
  index_.emplace(node.id, nodes_.size());
  nodes_.push_back(std::move(node));
  children_.emplace_back();
  parents_.emplace_back();
}

bool ClaimDag::reachable(std::string_view from, std::string_view to) const {
  const std::size_t start = index_of(from), goal = index_of(to);
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<std::size_t> stack{start};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v == goal) return true;
    if (seen[v]) continue;
    seen[v] = 1;
    for (std::size_t c : children_[v]) stack.push_back(c);
  }
  return false;
}

void ClaimDag::add_edge(ClaimEdge edge) {
  const std::size_t s = index_of(edge.source);
  const std::size_t t = index_of(edge.target);
  const ClaimNode& src = nodes_[s];
  const ClaimNode& dst = nodes_[t];

  for (const auto& label : src.payload) {
    if (!edge.mapping.contains(label)) {
      throw DagError("edge " + edge.source + "->" + edge.target + " does not map source label '" + label + "'");
    }
  }
  for (const auto& [from, to] : edge.mapping) {
    if (std::find(src.payload.begin(), src.payload.end(), from) == src.payload.end()) {
      throw DagError("edge " + edge.source + "->" + edge.target + " maps unknown source label '" + from + "'");
    }
    if (std::find(dst.payload.begin(), dst.payload.end(), to) == dst.payload.end()) {
      throw DagError("edge " + edge.source + "->" + edge.target + " maps into unknown target label '" + to + "'");
    }
  }
  if (s == t || reachable(edge.target, edge.source)) {
    throw DagError("edge " + edge.source + "->" + edge.target + " would create a cycle");
  }
  children_[s].push_back(t);
  parents_[t].push_back(s);
  edges_.push_back(std::move(edge));
}

std::vector<std::size_t> ClaimDag::topological_order() const {
  std::vector<std::size_t> indegree(nodes_.size(), 0);
  for (std::size_t v = 0; v < nodes_.size(); ++v) indegree[v] = parents_[v].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t c : children_[v]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  return order;
}

void ClaimDag::validate(const std::function<bool(const ClaimNode&)>& checker) {
  for (const auto& n : nodes_) {
    if (n.status != ClaimStatus::Pending) throw DagError("validate requires every claim to be Pending");
  }
  for (std::size_t v : topological_order()) {
    const bool parents_ok = std::all_of(parents_[v].begin(), parents_[v].end(),
                                        [&](std::size_t p) { return nodes_[p].status == ClaimStatus::Validated; });
    nodes_[v].status = (parents_ok && checker(nodes_[v])) ? ClaimStatus::Validated : ClaimStatus::Rejected;
  }
}

ColimitResult colimit(const ClaimDag& dag) {
  std::vector<TaggedLabel> elements;
  for (const auto& n : dag.nodes()) {
    if (n.status != ClaimStatus::Validated) continue;
    for (const auto& label : n.payload) elements.push_back({n.id, label});
  }
  bool any_validated = std::any_of(dag.nodes().begin(), dag.nodes().end(),
                                   [](const ClaimNode& n) { return n.status == ClaimStatus::Validated; });
  if (!any_validated) throw DagError("colimit needs at least one validated claim");

  std::sort(elements.begin(), elements.end());
  auto position = [&](const std::string& node, const std::string& label) {
    const TaggedLabel key{node, label};
    return static_cast<std::size_t>(std::lower_bound(elements.begin(), elements.end(), key) - elements.begin());
  };

  UnionFind uf(elements.size());
  for (const auto& e : dag.edges()) {
    if (dag.find(e.source)->status != ClaimStatus::Validated || dag.find(e.target)->status != ClaimStatus::Validated) {
      continue;
    }
    for (const auto& [from, to] : e.mapping) uf.unite(position(e.source, from), position(e.target, to));
  }

  // Elements are sorted, so the first time a root is met its class's least element is met.
  ColimitResult out;
  std::vector<std::size_t> class_of_root(elements.size(), SIZE_MAX);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const std::size_t root = uf.find(k);
    if (class_of_root[root] == SIZE_MAX) {
      class_of_root[root] = out.classes.size();
      out.classes.emplace_back();
    }
    const std::size_t cls = class_of_root[root];
    out.classes[cls].push_back(elements[k]);
    out.cocone[elements[k].node][elements[k].label] = cls;
  }
  for (const auto& n : dag.nodes()) {
    if (n.status == ClaimStatus::Validated) out.cocone.try_emplace(n.id);
  }
  return out;
}

}  // namespace ghostlab
