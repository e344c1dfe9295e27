#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "colimit_oracle.hpp"
#include "ghostlab/errors.hpp"
#include "ghostlab/reasoning_dag.hpp"

using namespace ghostlab;

namespace {

ClaimNode claim(std::string id, std::vector<std::string> payload) { return {std::move(id), "", std::move(payload)}; }

auto pass_all = [](const ClaimNode&) { return true; };

oracle::Partition as_partition(const ColimitResult& r) {
  oracle::Partition p;
  for (const auto& cls : r.classes) {
    std::set<oracle::Element> s;
    for (const auto& el : cls) s.insert({el.node, el.label});
    p.insert(std::move(s));
  }
  return p;
}

oracle::PlainDiagram random_diagram(std::mt19937_64& rng) {
  oracle::PlainDiagram d;
  const int n = std::uniform_int_distribution<int>(1, 8)(rng);
  std::uniform_int_distribution<int> labels(0, 3);
  for (int k = 0; k < n; ++k) {
    d.ids.push_back("c" + std::to_string(k));
    std::vector<std::string> payload;
    const int count = labels(rng);
    for (int l = 0; l < count; ++l) payload.push_back("l" + std::to_string(l));
    d.payloads.push_back(payload);
  }
  std::bernoulli_distribution keep(0.35);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (!keep(rng)) continue;
      if (!d.payloads[s].empty() && d.payloads[t].empty()) continue;  // no total map into the empty set
      std::map<std::string, std::string> m;
      for (const auto& l : d.payloads[s]) {
        m[l] = d.payloads[t][std::uniform_int_distribution<std::size_t>(0, d.payloads[t].size() - 1)(rng)];
      }
      d.edges.emplace_back(s, t, m);
    }
  }
  return d;
}

ClaimDag build(const oracle::PlainDiagram& d, const std::vector<int>& node_order, const std::vector<int>& edge_order) {
  ClaimDag dag;
  for (int k : node_order) dag.add_claim(claim(d.ids[k], d.payloads[k]));
  for (int e : edge_order) {
    const auto& [s, t, m] = d.edges[e];
    dag.add_edge({d.ids[s], d.ids[t], m});
  }
  return dag;
}

std::vector<int> iota_vec(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<int>(k);
  return v;
}

}  // namespace

TEST(ClaimDag, RejectsDuplicatesAndMalformedIds) {
  ClaimDag dag;
  dag.add_claim(claim("a", {"x"}));
  EXPECT_THROW(dag.add_claim(claim("a", {})), DagError);
  EXPECT_THROW(dag.add_claim(claim("b c", {})), DagError);
  EXPECT_THROW(dag.add_claim(claim("", {})), DagError);
  EXPECT_THROW(dag.add_claim(claim("d", {"x", "x"})), DagError);
}

TEST(ClaimDag, RejectsCycles) {
  ClaimDag dag;
  for (const char* id : {"a", "b", "c"}) dag.add_claim(claim(id, {"x"}));
  dag.add_edge({"a", "b", {{"x", "x"}}});
  dag.add_edge({"b", "c", {{"x", "x"}}});
  EXPECT_THROW(dag.add_edge({"c", "a", {{"x", "x"}}}), DagError);
  EXPECT_THROW(dag.add_edge({"a", "a", {{"x", "x"}}}), DagError);
  EXPECT_EQ(dag.edges().size(), 2u);
}

TEST(ClaimDag, RejectsPartialOrForeignMappings) {
  ClaimDag dag;
  dag.add_claim(claim("a", {"x", "y"}));
  dag.add_claim(claim("b", {"z"}));
  EXPECT_THROW(dag.add_edge({"a", "b", {{"x", "z"}}}), DagError);
  EXPECT_THROW(dag.add_edge({"a", "b", {{"x", "z"}, {"y", "w"}}}), DagError);
  EXPECT_THROW(dag.add_edge({"a", "b", {{"x", "z"}, {"y", "z"}, {"q", "z"}}}), DagError);
  EXPECT_THROW(dag.add_edge({"a", "missing", {}}), DagError);
  EXPECT_NO_THROW(dag.add_edge({"a", "b", {{"x", "z"}, {"y", "z"}}}));
}

TEST(Validate, DiamondWithFailingBranch) {
  ClaimDag dag;
  for (const char* id : {"root", "left", "right", "join", "leaf"}) dag.add_claim(claim(id, {"x"}));
  dag.add_edge({"root", "left", {{"x", "x"}}});
  dag.add_edge({"root", "right", {{"x", "x"}}});
  dag.add_edge({"left", "join", {{"x", "x"}}});
  dag.add_edge({"right", "join", {{"x", "x"}}});
  dag.add_edge({"root", "leaf", {{"x", "x"}}});
  dag.validate([](const ClaimNode& n) { return n.id != "right"; });
  EXPECT_EQ(dag.find("root")->status, ClaimStatus::Validated);
  EXPECT_EQ(dag.find("left")->status, ClaimStatus::Validated);
  EXPECT_EQ(dag.find("right")->status, ClaimStatus::Rejected);
  EXPECT_EQ(dag.find("join")->status, ClaimStatus::Rejected);
  EXPECT_EQ(dag.find("leaf")->status, ClaimStatus::Validated);
  EXPECT_THROW(dag.validate(pass_all), DagError);
}

TEST(Colimit, SpanGluesThroughApex) {
  ClaimDag dag;
  dag.add_claim(claim("apex", {"u"}));
  dag.add_claim(claim("left", {"p", "q"}));
  dag.add_claim(claim("right", {"r", "s"}));
  dag.add_edge({"apex", "left", {{"u", "p"}}});
  dag.add_edge({"apex", "right", {{"u", "r"}}});
  dag.validate(pass_all);
  const auto r = colimit(dag);
  ASSERT_EQ(r.classes.size(), 3u);
  const std::vector<TaggedLabel> glued{{"apex", "u"}, {"left", "p"}, {"right", "r"}};
  EXPECT_EQ(r.classes[0], glued);
  EXPECT_EQ(r.cocone.at("left").at("p"), r.cocone.at("right").at("r"));
  EXPECT_NE(r.cocone.at("left").at("q"), r.cocone.at("right").at("s"));
}

TEST(Colimit, RejectedApexLeavesDisjointUnion) {
  ClaimDag dag;
  dag.add_claim(claim("apex", {"u"}));
  dag.add_claim(claim("left", {"p"}));
  dag.add_claim(claim("right", {"r"}));
  dag.add_edge({"apex", "left", {{"u", "p"}}});
  dag.add_claim(claim("free", {"r"}));
  dag.validate([](const ClaimNode& n) { return n.id != "apex"; });
  const auto r = colimit(dag);
  EXPECT_EQ(r.classes.size(), 2u);
  EXPECT_FALSE(r.cocone.contains("apex"));
  EXPECT_FALSE(r.cocone.contains("left"));
}

TEST(Colimit, NeedsAValidatedClaim) {
  ClaimDag dag;
  dag.add_claim(claim("a", {"x"}));
  EXPECT_THROW(colimit(dag), DagError);
  dag.validate([](const ClaimNode&) { return false; });
  EXPECT_THROW(colimit(dag), DagError);
}

TEST(Colimit, EmptyPayloadsGiveNoClasses) {
  ClaimDag dag;
  dag.add_claim(claim("a", {}));
  dag.validate(pass_all);
  const auto r = colimit(dag);
  EXPECT_TRUE(r.classes.empty());
  EXPECT_TRUE(r.cocone.contains("a"));
}

TEST(Colimit, MatchesFixpointOracleOnRandomDiagrams) {
  std::mt19937_64 rng(51);
  std::bernoulli_distribution passes_d(0.8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_diagram(rng);
    std::vector<bool> passes;
    for (std::size_t k = 0; k < d.ids.size(); ++k) passes.push_back(passes_d(rng));
    ClaimDag dag = build(d, iota_vec(d.ids.size()), iota_vec(d.edges.size()));
    dag.validate([&](const ClaimNode& n) { return passes[std::stoi(n.id.substr(1))]; });

    const auto want_valid = oracle::validated_nodes(d, passes);
    for (std::size_t k = 0; k < d.ids.size(); ++k) {
      ASSERT_EQ(dag.find(d.ids[k])->status == ClaimStatus::Validated, want_valid[k]) << "trial " << trial;
    }
    if (std::none_of(want_valid.begin(), want_valid.end(), [](bool b) { return b; })) {
      EXPECT_THROW(colimit(dag), DagError);
      continue;
    }
    const auto r = colimit(dag);
    ASSERT_EQ(as_partition(r), oracle::merge_to_fixpoint(d, want_valid)) << "trial " << trial;

    // Cocone legs commute with every validated edge.
    for (const auto& [s, t, m] : d.edges) {
      if (!want_valid[s] || !want_valid[t]) continue;
      for (const auto& [from, to] : m) {
        ASSERT_EQ(r.cocone.at(d.ids[s]).at(from), r.cocone.at(d.ids[t]).at(to));
      }
    }
    // Classes are sorted and ordered by least element.
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
      ASSERT_TRUE(std::is_sorted(r.classes[c].begin(), r.classes[c].end()));
      if (c > 0) ASSERT_LT(r.classes[c - 1].front(), r.classes[c].front());
    }
  }
}

TEST(Colimit, IndependentOfInsertionOrder) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = random_diagram(rng);
    ClaimDag a = build(d, iota_vec(d.ids.size()), iota_vec(d.edges.size()));
    auto nodes = iota_vec(d.ids.size());
    auto edges = iota_vec(d.edges.size());
    std::shuffle(nodes.begin(), nodes.end(), rng);
    std::shuffle(edges.begin(), edges.end(), rng);
    ClaimDag b = build(d, nodes, edges);
    a.validate(pass_all);
    b.validate(pass_all);
    const auto ra = colimit(a), rb = colimit(b);
    ASSERT_EQ(ra.classes, rb.classes) << "trial " << trial;
    ASSERT_EQ(ra.cocone, rb.cocone);
  }
}

TEST(DagText, RoundTrip) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = random_diagram(rng);
    const ClaimDag dag = build(d, iota_vec(d.ids.size()), iota_vec(d.edges.size()));
    std::stringstream s;
    write_dag(s, dag);
    const auto back = read_dag(s);
    ASSERT_EQ(back.dag.nodes().size(), dag.nodes().size());
    for (std::size_t k = 0; k < dag.nodes().size(); ++k) {
      EXPECT_EQ(back.dag.nodes()[k].id, dag.nodes()[k].id);
      EXPECT_EQ(back.dag.nodes()[k].payload, dag.nodes()[k].payload);
    }
    ASSERT_EQ(back.dag.edges().size(), dag.edges().size());
    for (std::size_t k = 0; k < dag.edges().size(); ++k) {
      EXPECT_EQ(back.dag.edges()[k].source, dag.edges()[k].source);
      EXPECT_EQ(back.dag.edges()[k].target, dag.edges()[k].target);
      EXPECT_EQ(back.dag.edges()[k].mapping, dag.edges()[k].mapping);
    }
  }
}

TEST(DagText, RejectDirectiveAndComments) {
  std::istringstream in("# header\nnode a x,y   # trailing\nnode b z\nedge a b x=z,y=z\nreject b\n");
  const auto doc = read_dag(in);
  EXPECT_EQ(doc.dag.nodes().size(), 2u);
  EXPECT_EQ(doc.rejected, std::vector<std::string>{"b"});
}

TEST(DagText, Errors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_dag(in);
  };
  EXPECT_THROW(parse("vertex a\n"), ParseError);
  EXPECT_THROW(parse("node\n"), ParseError);
  EXPECT_THROW(parse("node a x\nnode b y\nedge a b x\n"), ParseError);
  EXPECT_THROW(parse("node a x\nnode b y\nedge a b x=y,x=y\n"), ParseError);
  EXPECT_THROW(parse("node a x\nreject b\n"), ParseError);
  EXPECT_THROW(parse("node a x\nnode b y\nedge a b\n"), DagError);
  EXPECT_THROW(parse("node a x\nnode b y\nedge a b x=y\nedge b a y=x\n"), DagError);
  EXPECT_THROW(parse("node a x\nnode a y\n"), DagError);
}

TEST(DagText, SpanFileHasThreeClasses) {
  std::ifstream in(std::string(GHOSTLAB_CONFIG_DIR) + "/span.dag");
  ASSERT_TRUE(in);
  auto doc = read_dag(in);
  doc.dag.validate(pass_all);
  std::ostringstream out;
  write_colimit(out, colimit(doc.dag));
  EXPECT_EQ(out.str(), "class 0: apex.u left.p right.r\nclass 1: left.q\nclass 2: right.s\n");
}
