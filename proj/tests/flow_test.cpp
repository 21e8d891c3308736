#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace pdom {
namespace {

using testing::dy;

TEST(Flow, Bottleneck) {
  FlowNetwork net(1, 1);
  net.add_supply(0, dy("3/4"));
  net.add_link(0, 0, Dyadic(1));
  net.add_demand(0, dy("1/2"));
  const auto sol = solve_flow(net);
  EXPECT_EQ(sol.flow.value, dy("1/2"));
  EXPECT_EQ(sol.cut.value, dy("1/2"));
  // Source side {source, a, its target}; the sink is alone.
  EXPECT_TRUE(sol.cut.source_side[net.source()]);
  EXPECT_TRUE(sol.cut.source_side[net.left(0)]);
  EXPECT_FALSE(sol.cut.source_side[net.sink()]);
}

TEST(Flow, DiamondInstance) {
  FlowNetwork net(2, 1);
  net.add_supply(0, dy("1/2"));
  net.add_supply(1, dy("1/2"));
  const auto ea = net.add_link(0, 0, Dyadic(1));
  const auto eb = net.add_link(1, 0, Dyadic(1));
  net.add_demand(0, Dyadic(1));
  const auto flow = max_flow(net);
  EXPECT_EQ(flow.value, Dyadic(1));
  EXPECT_EQ(flow.edge_flows[ea], dy("1/2"));
  EXPECT_EQ(flow.edge_flows[eb], dy("1/2"));
  EXPECT_EQ(min_cut(net).value, Dyadic(1));
}

TEST(Flow, DisconnectedLeftNode) {
  FlowNetwork net(2, 1);
  net.add_supply(0, dy("1/2"));
  net.add_supply(1, dy("1/4"));
  net.add_link(0, 0, Dyadic(1));
  net.add_demand(0, Dyadic(1));
  const Dyadic expected = testing::min_cut_by_enumeration(net);
  EXPECT_EQ(expected, dy("1/2"));
  EXPECT_EQ(max_flow(net).value, expected);
}

TEST(Flow, EmptyNetwork) {
  FlowNetwork net(0, 0);
  EXPECT_TRUE(max_flow(net).value.is_zero());
  EXPECT_TRUE(min_cut(net).value.is_zero());
}

TEST(Flow, DotExport) {
  FlowNetwork net(1, 1);
  net.add_supply(0, dy("3/4"));
  net.add_link(0, 0, Dyadic(1));
  net.add_demand(0, dy("1/2"));
  const auto flow = max_flow(net);
  const auto dot = network_to_dot(net, &flow);
  EXPECT_NE(dot.find("1/2^1/3/2^2"), std::string::npos);
  EXPECT_NE(network_to_dot(net).find("label=\"3/2^2\""), std::string::npos);
}

FlowNetwork random_network(testing::Rng& rng, std::size_t left, std::size_t right) {
  FlowNetwork net(left, right);
  auto cap = [&] {
    return Dyadic::from_parts(std::uniform_int_distribution<int>(0, 16)(rng), std::uniform_int_distribution<int>(0, 4)(rng));
  };
  for (std::size_t i = 0; i < left; ++i) net.add_supply(i, cap());
  for (std::size_t i = 0; i < left; ++i) {
    for (std::size_t j = 0; j < right; ++j) {
      if (testing::coin(rng, 0.5)) net.add_link(i, j, cap());
    }
  }
  for (std::size_t j = 0; j < right; ++j) net.add_demand(j, cap());
  return net;
}

TEST(FlowProperty, MaxFlowEqualsEnumeratedMinCut) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t left = 1 + testing::uniform_index(rng, 6);
    const std::size_t right = 1 + testing::uniform_index(rng, 12 - left);
    const auto net = random_network(rng, left, right);
    const auto sol = solve_flow(net);
    EXPECT_EQ(sol.flow.value, testing::min_cut_by_enumeration(net));
    EXPECT_EQ(sol.cut.value, sol.flow.value);

    const std::uint32_t p = net.common_exponent();
    std::vector<Dyadic> balance_in(net.node_count()), balance_out(net.node_count());
    const auto& edges = net.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Dyadic& f = sol.flow.edge_flows[e];
      EXPECT_LE(f, edges[e].capacity);
      EXPECT_NO_THROW((void)f.rescale(p));
      balance_out[edges[e].from] += f;
      balance_in[edges[e].to] += f;
    }
    for (std::size_t v = 1; v + 1 < net.node_count(); ++v) EXPECT_EQ(balance_in[v], balance_out[v]);
    EXPECT_EQ(balance_out[net.source()], sol.flow.value);
    EXPECT_EQ(balance_in[net.sink()], sol.flow.value);
  }
}

TEST(FlowProperty, Deterministic) {
  testing::Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = random_network(rng, 4, 4);
    EXPECT_EQ(max_flow(net).edge_flows, max_flow(net).edge_flows);
  }
}

}  // namespace
}  // namespace pdom
