#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/successive_shortest_path_nonnegative_weights.hpp>

#include "spatialvote/election.hpp"
#include "spatialvote/errors.hpp"

namespace spatialvote {
namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, long,
                    boost::property<boost::edge_residual_capacity_t, long,
                                    boost::property<boost::edge_reverse_t, Traits::edge_descriptor,
                                                    boost::property<boost::edge_weight_t, long>>>>>;
using Edge = FlowGraph::edge_descriptor;

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t num_nodes) : graph_(num_nodes) {}

  Edge add_arc(std::size_t from, std::size_t to, long capacity, long cost) {
    auto capacity_map = boost::get(boost::edge_capacity, graph_);
    auto reverse_map = boost::get(boost::edge_reverse, graph_);
    auto weight_map = boost::get(boost::edge_weight, graph_);
    const Edge forward = boost::add_edge(from, to, graph_).first;
    const Edge backward = boost::add_edge(to, from, graph_).first;
    capacity_map[forward] = capacity;
    capacity_map[backward] = 0;
    weight_map[forward] = cost;
    weight_map[backward] = -cost;
    reverse_map[forward] = backward;
    reverse_map[backward] = forward;
    return forward;
  }

  void solve(std::size_t source, std::size_t sink) {
    boost::successive_shortest_path_nonnegative_weights(graph_, source, sink);
  }

  long flow(Edge e) const {
    return boost::get(boost::edge_capacity, graph_, e) - boost::get(boost::edge_residual_capacity, graph_, e);
  }

 private:
  FlowGraph graph_;
};

}  // namespace

// Transportation problem: voters are unit supplies, members are sinks with
// capacity floor(n/k), and an auxiliary node admits exactly (n mod k) extra
// voters, one per member. Total capacity equals n, so a maximum flow saturates
// every member's floor(n/k) arc. Arc cost pos - 1 = (m - 1) - beta_m(pos).
MonroeResult monroe_assignment(const Election& election, const Committee& committee) {
  const int n = election.num_voters();
  const int k = committee.size();
  if (k == 0) throw InputError("Monroe assignment needs a nonempty committee");
  if (k > n) throw InputError("Monroe assignment needs k <= n");
  if (committee.members().back() >= election.num_candidates()) {
    throw InputError("committee member out of range for election");
  }

  const int lower = n / k;
  const int extra = n % k;
  const std::size_t source = 0;
  const std::size_t first_voter = 1;
  const std::size_t first_member = first_voter + static_cast<std::size_t>(n);
  const std::size_t aux = first_member + static_cast<std::size_t>(k);
  const std::size_t sink = aux + 1;

  FlowNetwork net(sink + 1);
  std::vector<std::vector<Edge>> voter_arcs(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const std::size_t node = first_voter + static_cast<std::size_t>(v);
    net.add_arc(source, node, 1, 0);
    auto& arcs = voter_arcs[static_cast<std::size_t>(v)];
    arcs.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const int pos = election.position(v, committee.members()[static_cast<std::size_t>(i)]);
      arcs.push_back(net.add_arc(node, first_member + static_cast<std::size_t>(i), 1, pos - 1));
    }
  }
  for (int i = 0; i < k; ++i) {
    const std::size_t node = first_member + static_cast<std::size_t>(i);
    net.add_arc(node, sink, lower, 0);
    if (extra > 0) net.add_arc(node, aux, 1, 0);
  }
  if (extra > 0) net.add_arc(aux, sink, extra, 0);

  net.solve(source, sink);

  MonroeResult result{{std::vector<CandidateId>(static_cast<std::size_t>(n), -1), committee}, 0};
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < k; ++i) {
      if (net.flow(voter_arcs[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)]) > 0) {
        result.assignment.rep[static_cast<std::size_t>(v)] = committee.members()[static_cast<std::size_t>(i)];
      }
    }
    if (result.assignment.rep[static_cast<std::size_t>(v)] < 0) {
      throw std::logic_error("Monroe flow left a voter unassigned");
    }
  }
  result.score = assignment_score(election, result.assignment);
  return result;
}

}  // namespace spatialvote
