#include <gtest/gtest.h>

#include <vector>

#include "phantom/win_check.hpp"

using namespace phantom;

namespace {

BitMatrix cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return make_graph(n, e);
}

BitMatrix petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, i + 5});
    e.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return make_graph(10, e);
}

BitMatrix complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v});
  return make_graph(n, e);
}

}  // namespace

TEST(MinDegree, CountsEveryVertex) {
  const BitMatrix c5 = cycle(5);
  EXPECT_TRUE(check_mindegree(c5, 1));
  EXPECT_TRUE(check_mindegree(c5, 2));
  EXPECT_FALSE(check_mindegree(c5, 3));
  const std::vector<Edge> path{{0, 1}, {1, 2}};
  EXPECT_FALSE(check_mindegree(make_graph(3, path), 2));
  EXPECT_EQ(graph_degree(petersen(), 7), 3);
}

TEST(Connectivity, DetectsSplitGraphs) {
  EXPECT_TRUE(check_connectivity(cycle(6)));
  const std::vector<Edge> two_triangles{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  EXPECT_FALSE(check_connectivity(make_graph(6, two_triangles)));
  EXPECT_FALSE(check_connectivity(make_graph(2, std::vector<Edge>{})));
  EXPECT_TRUE(check_connectivity(petersen()));
}

TEST(PerfectMatching, ExactSearch) {
  EXPECT_TRUE(exact_has_perfect_matching(cycle(6)));
  EXPECT_TRUE(exact_has_perfect_matching(petersen()));
  // A star on 4 vertices has no perfect matching.
  const std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}};
  EXPECT_FALSE(exact_has_perfect_matching(make_graph(4, star)));
  // Two odd triangles.
  const std::vector<Edge> triangles{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  EXPECT_FALSE(exact_has_perfect_matching(make_graph(6, triangles)));
}

TEST(PerfectMatching, CertificateIsPreferredAndChecked) {
  const BitMatrix g = cycle(4);
  const std::vector<int> good{1, 0, 3, 2};
  const std::vector<int> bad{2, 3, 0, 1};  // 0-2 is not an edge of C4
  EXPECT_TRUE(verify_matching_certificate(g, good));
  EXPECT_FALSE(verify_matching_certificate(g, bad));
  EXPECT_TRUE(check_perfect_matching(g, 4, good));
  EXPECT_TRUE(check_perfect_matching(g, 4, bad));  // falls back to the exact search
}

TEST(PerfectMatching, OddOrderIsADomainError) {
  EXPECT_THROW(check_perfect_matching(cycle(5), 5), DomainError);
}

TEST(PerfectMatching, LargeGraphsWithoutCertificateAreUnsupported) {
  EXPECT_THROW(check_perfect_matching(cycle(26), 26), UnsupportedError);
  std::vector<int> partner(26);
  for (int v = 0; v < 26; ++v) partner[v] = v ^ 1;
  EXPECT_TRUE(check_perfect_matching(cycle(26), 26, partner));
}

TEST(Hamilton, KnownGraphs) {
  EXPECT_TRUE(exact_has_hamilton_cycle(cycle(5)));
  EXPECT_TRUE(exact_has_hamilton_cycle(complete(8)));
  EXPECT_FALSE(exact_has_hamilton_cycle(petersen()));
  // K_{2,3} has no Hamilton cycle.
  const std::vector<Edge> k23{{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}};
  EXPECT_FALSE(exact_has_hamilton_cycle(make_graph(5, k23)));
}

TEST(Hamilton, CertificateChecks) {
  const BitMatrix c6 = cycle(6);
  const std::vector<int> order{0, 1, 2, 3, 4, 5};
  const std::vector<int> wrong{0, 2, 1, 3, 4, 5};
  const std::vector<int> repeat{0, 1, 2, 3, 4, 4};
  EXPECT_TRUE(verify_cycle_certificate(c6, order));
  EXPECT_FALSE(verify_cycle_certificate(c6, wrong));
  EXPECT_FALSE(verify_cycle_certificate(c6, repeat));
  EXPECT_TRUE(check_hamilton(c6, 6, order));
}

TEST(Hamilton, LargeGraphsWithoutCertificateAreUnsupported) {
  EXPECT_THROW(check_hamilton(cycle(21), 21), UnsupportedError);
  std::vector<int> order(21);
  for (int i = 0; i < 21; ++i) order[i] = i;
  EXPECT_TRUE(check_hamilton(cycle(21), 21, order));
}

TEST(DeadPosition, BlockedVertexIsDetected) {
  GameConfig cfg;
  cfg.n = 4;
  cfg.b = 3;
  BoardState s(cfg);
  EXPECT_FALSE(blocked_mindegree(s, 1));
  s.claim_breaker({0, 1});
  s.claim_breaker({0, 2});
  EXPECT_FALSE(blocked_mindegree(s, 1));
  EXPECT_TRUE(blocked_mindegree(s, 2));
  s.claim_breaker({0, 3});
  EXPECT_TRUE(blocked_mindegree(s, 1));
}
