#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ghostlab {

enum class ClaimStatus { Pending, Validated, Rejected };

std::string_view to_string(ClaimStatus s);

/// A claim with a finite payload set of labels.
struct ClaimNode {
  std::string id;
  std::string statement;
  std::vector<std::string> payload;
  ClaimStatus status = ClaimStatus::Pending;
};

/// A morphism between payloads: a total map from source labels to target labels.
struct ClaimEdge {
  std::string source;
  std::string target;
  std::map<std::string, std::string> mapping;
};

/// Directed acyclic diagram of finite sets.  Single writer.
class ClaimDag {
 public:
  /// Throws DagError on duplicate or malformed id, or duplicate payload labels.
  void add_claim(ClaimNode node);
  /// Throws DagError when an endpoint is missing, the mapping is not a total
  /// function into the target payload, or the edge would close a cycle.
  void add_edge(ClaimEdge edge);

  const std::vector<ClaimNode>& nodes() const { return nodes_; }
  const std::vector<ClaimEdge>& edges() const { return edges_; }
  const ClaimNode* find(std::string_view id) const;
  bool reachable(std::string_view from, std::string_view to) const;

  /// Kahn order; ties broken by insertion order.
  std::vector<std::size_t> topological_order() const;

  /// Marks a node Validated iff checker(node) holds and every parent is
  /// Validated; Rejected otherwise.  Requires every node to be Pending.
  void validate(const std::function<bool(const ClaimNode&)>& checker);

 private:
  std::size_t index_of(std::string_view id) const;

  std::vector<ClaimNode> nodes_;
  std::vector<ClaimEdge> edges_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<std::size_t>> parents_;
};

/// An element of the disjoint union: a payload label tagged with its node.
struct TaggedLabel {
  std::string node;
  std::string label;

  auto operator<=>(const TaggedLabel&) const = default;
};

struct ColimitResult {
  /// Equivalence classes, each sorted, ordered by their least element.
  std::vector<std::vector<TaggedLabel>> classes;
  /// node id -> (label -> class index)
  std::map<std::string, std::map<std::string, std::size_t>> cocone;
};

/// Colimit of the validated subdiagram in finite sets: the disjoint union of
/// validated payloads modulo l ~ mapping_e(l) over validated edges.
/// Throws DagError when no node is validated.
ColimitResult colimit(const ClaimDag& dag);

// Text format, one directive per line ('#' starts a comment):
//   node <id> [label,label,...]
//   edge <src> <dst> <label=label,...>
//   reject <id>            (marks the node as failing the default checker)

struct DagDocument {
  ClaimDag dag;
  std::vector<std::string> rejected;
};

/// Throws ParseError (syntax) or DagError (structure).
DagDocument read_dag(std::istream& in);
void write_dag(std::ostream& out, const ClaimDag& dag);
/// "class <k>: node.label node.label ..." per class.
void write_colimit(std::ostream& out, const ColimitResult& result);

}  // namespace ghostlab
