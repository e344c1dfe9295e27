#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ghostlab/errors.hpp"
#include "ghostlab/reasoning_dag.hpp"

namespace ghostlab {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("DAG line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

DagDocument read_dag(std::istream& in) {
  DagDocument doc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string directive;
    if (!(words >> directive)) continue;

    std::vector<std::string> args;
    for (std::string w; words >> w;) args.push_back(w);

    try {
      if (directive == "node") {
        if (args.empty() || args.size() > 2) fail(line_no, "expected 'node <id> [label,...]'");
        ClaimNode node;
        node.id = args[0];
        if (args.size() == 2) node.payload = split(args[1], ',');
        doc.dag.add_claim(std::move(node));
      } else if (directive == "edge") {
        if (args.size() < 2 || args.size() > 3) fail(line_no, "expected 'edge <src> <dst> <label=label,...>'");
        ClaimEdge edge;
        edge.source = args[0];
        edge.target = args[1];
        if (args.size() == 3) {
          for (const auto& pair : split(args[2], ',')) {
            const auto eq = pair.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size()) {
              fail(line_no, "mapping entry '" + pair + "' is not label=label");
            }
            if (!edge.mapping.emplace(pair.substr(0, eq), pair.substr(eq + 1)).second) {
              fail(line_no, "label '" + pair.substr(0, eq) + "' mapped twice");
            }
          }
        }
        doc.dag.add_edge(std::move(edge));
      } else if (directive == "reject") {
        if (args.size() != 1) fail(line_no, "expected 'reject <id>'");
        if (!doc.dag.find(args[0])) fail(line_no, "reject names unknown claim '" + args[0] + "'");
        doc.rejected.push_back(args[0]);
      } else {
        fail(line_no, "unknown directive '" + directive + "'");
      }
    } catch (const DagError& e) {
      throw DagError("DAG line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return doc;
}

void write_dag(std::ostream& out, const ClaimDag& dag) {
  for (const auto& n : dag.nodes()) {
    out << "node " << n.id;
    for (std::size_t k = 0; k < n.payload.size(); ++k) out << (k == 0 ? ' ' : ',') << n.payload[k];
    out << '\n';
  }
  for (const auto& e : dag.edges()) {
    out << "edge " << e.source << ' ' << e.target;
    bool first = true;
    for (const auto& [from, to] : e.mapping) {
      out << (first ? ' ' : ',') << from << '=' << to;
      first = false;
    }
    out << '\n';
  }
  for (const auto& n : dag.nodes()) {
    if (n.status == ClaimStatus::Rejected) out << "reject " << n.id << '\n';
  }
}

void write_colimit(std::ostream& out, const ColimitResult& result) {
  for (std::size_t k = 0; k < result.classes.size(); ++k) {
    out << "class " << k << ':';
    for (const auto& el : result.classes[k]) out << ' ' << el.node << '.' << el.label;
    out << '\n';
  }
}

}  // namespace ghostlab
