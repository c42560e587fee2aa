#include "netcontrol/treedecomp.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "netcontrol/rng.hpp"

namespace netcontrol {

namespace {

bool bag_contains(const std::vector<Voter>& bag, Voter v) {
    return std::binary_search(bag.begin(), bag.end(), v);
}

std::vector<Voter> sorted_copy(std::vector<Voter> vs) {
    std::sort(vs.begin(), vs.end());
    return vs;
}

// Generic tree-connectivity check shared by both decomposition flavors:
// for every vertex, the nodes whose bags contain it must form one subtree.
template <typename BagOf>
void check_subtree_connectivity(int num_nodes, int num_vertices,
                                const std::vector<std::vector<int>>& adjacent_nodes,
                                BagOf&& bag_of, std::vector<std::string>& out) {
    for (Voter v = 0; v < num_vertices; ++v) {
        int first = -1, holding = 0;
        for (int t = 0; t < num_nodes; ++t)
            if (bag_contains(bag_of(t), v)) {
                ++holding;
                if (first < 0) first = t;
            }
        if (first < 0) {
            out.push_back("vertex " + std::to_string(v) + " appears in no bag");
            continue;
        }
        std::vector<int> stack{first};
        std::vector<char> seen(num_nodes, 0);
        seen[first] = 1;
        int visited = 0;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            ++visited;
            for (int u : adjacent_nodes[t])
                if (!seen[u] && bag_contains(bag_of(u), v)) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
        if (visited != holding)
            out.push_back("vertex " + std::to_string(v) +
                          ": bags containing it are not connected in the tree");
    }
}

}  // namespace

int TreeDecomposition::root() const {
    for (int i = 0; i < num_nodes(); ++i)
        if (parent[i] < 0) return i;
    return -1;
}

int TreeDecomposition::width() const {
    size_t biggest = 0;
    for (const auto& bag : bags) biggest = std::max(biggest, bag.size());
    return static_cast<int>(biggest) - 1;
}

int NiceTreeDecomposition::width() const {
    size_t biggest = 0;
    for (const auto& node : nodes) biggest = std::max(biggest, node.bag.size());
    return static_cast<int>(biggest) - 1;
}

const char* node_kind_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::kLeaf: return "leaf";
        case NodeKind::kIntroduce: return "introduce";
        case NodeKind::kIntroduceEdge: return "introduce-edge";
        case NodeKind::kForget: return "forget";
        case NodeKind::kJoin: return "join";
    }
    return "?";
}

std::vector<std::string> validate(const VoterGraph& graph, const TreeDecomposition& td) {
    std::vector<std::string> out;
    const int nn = td.num_nodes();
    if (static_cast<int>(td.parent.size()) != nn) {
        out.push_back("parent table size does not match node count");
        return out;
    }
    if (nn == 0) {
        if (graph.num_vertices() > 0) out.push_back("decomposition has no nodes");
        return out;
    }

    int roots = 0;
    for (int i = 0; i < nn; ++i) {
        if (td.parent[i] < 0) {
            ++roots;
        } else if (td.parent[i] >= nn) {
            out.push_back("node " + std::to_string(i) + " has an out-of-range parent");
            return out;
        } else if (td.parent[i] == i) {
            out.push_back("node " + std::to_string(i) + " is its own parent");
            return out;
        }
    }
    if (roots != 1) {
        out.push_back("decomposition must have exactly one root, found " + std::to_string(roots));
        return out;
    }
    // Acyclicity: every node must reach the root by parent steps.
    for (int i = 0; i < nn; ++i) {
        int hops = 0, t = i;
        while (td.parent[t] >= 0 && ++hops <= nn) t = td.parent[t];
        if (hops > nn) {
            out.push_back("parent links contain a cycle");
            return out;
        }
    }

    for (int i = 0; i < nn; ++i) {
        if (!std::is_sorted(td.bags[i].begin(), td.bags[i].end()) ||
            std::adjacent_find(td.bags[i].begin(), td.bags[i].end()) != td.bags[i].end())
            out.push_back("bag of node " + std::to_string(i) + " is not sorted and duplicate-free");
        for (Voter v : td.bags[i])
            if (v < 0 || v >= graph.num_vertices())
                out.push_back("bag of node " + std::to_string(i) + " contains unknown vertex " +
                              std::to_string(v));
    }
    if (!out.empty()) return out;

    for (auto [u, v] : graph.edges()) {
        bool housed = false;
        for (int t = 0; t < nn && !housed; ++t)
            housed = bag_contains(td.bags[t], u) && bag_contains(td.bags[t], v);
        if (!housed)
            out.push_back("edge {" + std::to_string(u) + "," + std::to_string(v) +
                          "} is contained in no bag");
    }

    std::vector<std::vector<int>> adjacent(nn);
    for (int i = 0; i < nn; ++i)
        if (td.parent[i] >= 0) {
            adjacent[i].push_back(td.parent[i]);
            adjacent[td.parent[i]].push_back(i);
        }
    check_subtree_connectivity(nn, graph.num_vertices(), adjacent,
                               [&](int t) -> const std::vector<Voter>& { return td.bags[t]; }, out);
    return out;
}

std::vector<std::string> validate(const VoterGraph& graph, const NiceTreeDecomposition& ntd) {
    std::vector<std::string> out;
    const int nn = ntd.num_nodes();
    if (nn == 0) {
        out.push_back("decomposition has no nodes");
        return out;
    }

    std::vector<int> referenced(nn, 0);
    for (int i = 0; i < nn; ++i) {
        const NiceNode& node = ntd.nodes[i];
        for (int child : {node.left, node.right}) {
            if (child < 0) continue;
            if (child >= i) {
                out.push_back("node " + std::to_string(i) + " has child " + std::to_string(child) +
                              " violating post order");
                return out;
            }
            ++referenced[child];
        }
    }
    for (int i = 0; i < nn - 1; ++i)
        if (referenced[i] != 1) {
            out.push_back("node " + std::to_string(i) + " is referenced " +
                          std::to_string(referenced[i]) + " times");
            return out;
        }
    if (referenced[nn - 1] != 0) {
        out.push_back("root node is referenced as a child");
        return out;
    }

    std::vector<int> parent(nn, -1);
    for (int i = 0; i < nn; ++i) {
        if (ntd.nodes[i].left >= 0) parent[ntd.nodes[i].left] = i;
        if (ntd.nodes[i].right >= 0) parent[ntd.nodes[i].right] = i;
    }

    auto bag_of = [&](int t) -> const std::vector<Voter>& { return ntd.nodes[t].bag; };
    for (int i = 0; i < nn; ++i) {
        const NiceNode& node = ntd.nodes[i];
        const std::string where = "node " + std::to_string(i) + " (" + node_kind_name(node.kind) + ")";
        if (!std::is_sorted(node.bag.begin(), node.bag.end()) ||
            std::adjacent_find(node.bag.begin(), node.bag.end()) != node.bag.end())
            out.push_back(where + ": bag not sorted and duplicate-free");
        for (Voter v : node.bag)
            if (v < 0 || v >= graph.num_vertices())
                out.push_back(where + ": unknown vertex " + std::to_string(v) + " in bag");

        const bool unary = node.left >= 0 && node.right < 0;
        switch (node.kind) {
            case NodeKind::kLeaf:
                if (node.left >= 0 || node.right >= 0) out.push_back(where + ": leaf with children");
                if (!node.bag.empty()) out.push_back(where + ": leaf bag not empty");
                break;
            case NodeKind::kIntroduce: {
                if (!unary) {
                    out.push_back(where + ": needs exactly one child");
                    break;
                }
                auto expect = ntd.nodes[node.left].bag;
                if (bag_contains(expect, node.vertex))
                    out.push_back(where + ": vertex already present below");
                expect.push_back(node.vertex);
                if (sorted_copy(expect) != node.bag)
                    out.push_back(where + ": bag is not child bag plus vertex " +
                                  std::to_string(node.vertex));
                break;
            }
            case NodeKind::kIntroduceEdge: {
                if (!unary) {
                    out.push_back(where + ": needs exactly one child");
                    break;
                }
                if (node.bag != ntd.nodes[node.left].bag)
                    out.push_back(where + ": bag differs from child bag");
                if (!bag_contains(node.bag, node.edge_u) || !bag_contains(node.bag, node.edge_v))
                    out.push_back(where + ": edge endpoints not both in bag");
                if (node.edge_u >= 0 && node.edge_v >= 0 && !graph.has_edge(node.edge_u, node.edge_v))
                    out.push_back(where + ": {" + std::to_string(node.edge_u) + "," +
                                  std::to_string(node.edge_v) + "} is not a graph edge");
                break;
            }
            case NodeKind::kForget: {
                if (!unary) {
                    out.push_back(where + ": needs exactly one child");
                    break;
                }
                auto expect = node.bag;
                if (bag_contains(expect, node.vertex))
                    out.push_back(where + ": forgotten vertex still in bag");
                expect.push_back(node.vertex);
                if (sorted_copy(expect) != ntd.nodes[node.left].bag)
                    out.push_back(where + ": child bag is not bag plus vertex " +
                                  std::to_string(node.vertex));
                break;
            }
            case NodeKind::kJoin:
                if (node.left < 0 || node.right < 0) {
                    out.push_back(where + ": needs two children");
                    break;
                }
                if (ntd.nodes[node.left].bag != node.bag || ntd.nodes[node.right].bag != node.bag)
                    out.push_back(where + ": children bags differ from join bag");
                break;
        }
    }
    if (!out.empty()) return out;

    // Every graph edge appears on exactly one introduce-edge node.
    std::vector<std::pair<Voter, Voter>> introduced;
    for (const NiceNode& node : ntd.nodes)
        if (node.kind == NodeKind::kIntroduceEdge)
            introduced.emplace_back(std::min(node.edge_u, node.edge_v),
                                    std::max(node.edge_u, node.edge_v));
    std::sort(introduced.begin(), introduced.end());
    for (size_t i = 1; i < introduced.size(); ++i)
        if (introduced[i] == introduced[i - 1])
            out.push_back("edge {" + std::to_string(introduced[i].first) + "," +
                          std::to_string(introduced[i].second) + "} introduced more than once");
    for (auto edge : graph.edges())
        if (!std::binary_search(introduced.begin(), introduced.end(), edge))
            out.push_back("edge {" + std::to_string(edge.first) + "," +
                          std::to_string(edge.second) + "} never introduced");

    std::vector<std::vector<int>> adjacent(nn);
    for (int i = 0; i < nn; ++i)
        if (parent[i] >= 0) {
            adjacent[i].push_back(parent[i]);
            adjacent[parent[i]].push_back(i);
        }
    check_subtree_connectivity(nn, graph.num_vertices(), adjacent, bag_of, out);

    if (ntd.pinned >= 0) {
        const Voter x = ntd.pinned;
        if (ntd.nodes[ntd.root()].bag != std::vector<Voter>{x})
            out.push_back("pinned root bag is not {" + std::to_string(x) + "}");
        for (int i = 0; i < nn; ++i) {
            const NiceNode& node = ntd.nodes[i];
            if (node.kind == NodeKind::kLeaf) {
                int p = parent[i];
                if (p < 0 || ntd.nodes[p].kind != NodeKind::kIntroduce || ntd.nodes[p].vertex != x)
                    out.push_back("leaf " + std::to_string(i) +
                                  " is not guarded by an introduce of the pinned vertex");
            } else if (!bag_contains(node.bag, x)) {
                out.push_back("pinned vertex missing from bag of node " + std::to_string(i));
            }
            if (node.kind == NodeKind::kForget && node.vertex == x)
                out.push_back("pinned vertex forgotten at node " + std::to_string(i));
        }
    } else if (!ntd.nodes[ntd.root()].bag.empty()) {
        out.push_back("root bag of an unpinned decomposition must be empty");
    }
    return out;
}

namespace {

// Exact minimum-width elimination order for tiny graphs: subset DP where
// q(S, v) counts the vertices outside S reachable from v through S.
struct ExactSearch {
    int n;
    std::vector<std::uint32_t> nb;

    int q_degree(std::uint32_t through, int v) const {
        std::uint32_t component = 1u << v, frontier = 1u << v, boundary = 0;
        while (frontier) {
            std::uint32_t reach = 0;
            for (int u = 0; u < n; ++u)
                if (frontier >> u & 1) reach |= nb[u];
            reach &= ~component;
            boundary |= reach & ~through;
            frontier = reach & through & ~component;
            component |= frontier;
        }
        return std::popcount(boundary & ~(1u << v));
    }

    std::vector<int> order() const {
        const std::uint32_t full = (n == 32) ? ~0u : (1u << n) - 1;
        std::vector<int> best(full + 1, 0);
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            int value = n;
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1)
                    value = std::min(value,
                                     std::max(best[mask ^ (1u << v)], q_degree(mask ^ (1u << v), v)));
            best[mask] = value;
        }
        std::vector<int> order(n);
        std::uint32_t mask = full;
        for (int pos = n - 1; pos >= 0; --pos) {
            for (int v = 0; v < n; ++v) {
                if (!(mask >> v & 1)) continue;
                if (std::max(best[mask ^ (1u << v)], q_degree(mask ^ (1u << v), v)) == best[mask]) {
                    order[pos] = v;
                    mask ^= 1u << v;
                    break;
                }
            }
        }
        return order;
    }
};

std::vector<int> min_fill_order(const VoterGraph& graph, std::uint64_t seed) {
    const int n = graph.num_vertices();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : graph.edges()) adj[u][v] = adj[v][u] = 1;
    std::vector<char> alive(n, 1);
    std::vector<int> order;
    order.reserve(n);
    Rng rng(seed ^ 0x7d0c6e3f11a2b5c4ULL);

    for (int round = 0; round < n; ++round) {
        int best_fill = -1;
        std::vector<int> ties;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            std::vector<int> nbs;
            for (int u = 0; u < n; ++u)
                if (alive[u] && adj[v][u]) nbs.push_back(u);
            int fill = 0;
            for (size_t a = 0; a < nbs.size(); ++a)
                for (size_t b = a + 1; b < nbs.size(); ++b)
                    if (!adj[nbs[a]][nbs[b]]) ++fill;
            if (best_fill < 0 || fill < best_fill) {
                best_fill = fill;
                ties = {v};
            } else if (fill == best_fill) {
                ties.push_back(v);
            }
        }
        int v = ties[rng.below(ties.size())];
        order.push_back(v);
        std::vector<int> nbs;
        for (int u = 0; u < n; ++u)
            if (alive[u] && adj[v][u]) nbs.push_back(u);
        for (size_t a = 0; a < nbs.size(); ++a)
            for (size_t b = a + 1; b < nbs.size(); ++b) adj[nbs[a]][nbs[b]] = adj[nbs[b]][nbs[a]] = 1;
        alive[v] = 0;
    }
    return order;
}

// One bag per eliminated vertex: itself plus its not-yet-eliminated
// neighborhood in the fill graph; the bag hangs under the bag of the
// earliest-eliminated of those neighbors.
TreeDecomposition order_to_decomposition(const VoterGraph& graph, const std::vector<int>& order) {
    const int n = graph.num_vertices();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : graph.edges()) adj[u][v] = adj[v][u] = 1;
    std::vector<int> position(n);
    for (int i = 0; i < n; ++i) position[order[i]] = i;

    TreeDecomposition td;
    td.parent.assign(n, -1);
    td.bags.assign(n, {});
    std::vector<char> alive(n, 1);
    for (int i = 0; i < n; ++i) {
        const int v = order[i];
        std::vector<int> later;
        for (int u = 0; u < n; ++u)
            if (alive[u] && u != v && adj[v][u]) later.push_back(u);
        td.bags[i] = later;
        td.bags[i].push_back(v);
        std::sort(td.bags[i].begin(), td.bags[i].end());
        if (!later.empty()) {
            int next = *std::min_element(later.begin(), later.end(),
                                         [&](int a, int b) { return position[a] < position[b]; });
            td.parent[i] = position[next];
        } else if (i + 1 < n) {
            td.parent[i] = i + 1;  // new component; attach anywhere valid
        }
        for (size_t a = 0; a < later.size(); ++a)
            for (size_t b = a + 1; b < later.size(); ++b)
                adj[later[a]][later[b]] = adj[later[b]][later[a]] = 1;
        alive[v] = 0;
    }
    return td;
}

bool is_forest(const VoterGraph& graph) {
    std::vector<int> root(graph.num_vertices());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int a) {
        while (root[a] != a) a = root[a] = root[root[a]];
        return a;
    };
    for (auto [u, v] : graph.edges()) {
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        root[ru] = rv;
    }
    return true;
}

TreeDecomposition forest_decomposition(const VoterGraph& graph) {
    const int n = graph.num_vertices();
    TreeDecomposition td;
    td.parent.reserve(n);
    td.bags.reserve(n);
    std::vector<int> node_of(n, -1);
    for (Voter start = 0; start < n; ++start) {
        if (node_of[start] >= 0) continue;
        node_of[start] = td.num_nodes();
        td.parent.push_back(td.bags.empty() ? -1 : 0);  // later components hang off node 0
        td.bags.push_back({start});
        std::vector<Voter> queue{start};
        for (size_t head = 0; head < queue.size(); ++head) {
            Voter v = queue[head];
            for (Voter u : graph.neighbors(v)) {
                if (node_of[u] >= 0) continue;
                node_of[u] = td.num_nodes();
                td.parent.push_back(node_of[v]);
                td.bags.push_back(u < v ? std::vector<Voter>{u, v} : std::vector<Voter>{v, u});
                queue.push_back(u);
            }
        }
    }
    return td;
}

}  // namespace

TreeDecomposition decompose(const VoterGraph& graph, std::uint64_t seed) {
    if (graph.num_vertices() == 0) throw InvalidInput("cannot decompose an empty graph");
    if (is_forest(graph)) return forest_decomposition(graph);
    std::vector<int> order = graph.num_vertices() <= 12
                                 ? ExactSearch{graph.num_vertices(),
                                               [&] {
                                                   std::vector<std::uint32_t> nb(
                                                       graph.num_vertices(), 0);
                                                   for (auto [u, v] : graph.edges()) {
                                                       nb[u] |= 1u << v;
                                                       nb[v] |= 1u << u;
                                                   }
                                                   return nb;
                                               }()}
                                       .order()
                                 : min_fill_order(graph, seed);
    return order_to_decomposition(graph, order);
}

namespace {

struct NiceBuilder {
    std::vector<NiceNode> nodes;

    int push(NiceNode node) {
        nodes.push_back(std::move(node));
        return static_cast<int>(nodes.size()) - 1;
    }

    int chain_forget(int top, const std::vector<Voter>& from, const std::vector<Voter>& keep) {
        std::vector<Voter> bag = from;
        for (Voter v : from) {
            if (bag_contains(keep, v)) continue;
            bag.erase(std::find(bag.begin(), bag.end(), v));
            top = push({NodeKind::kForget, bag, top, -1, v, -1, -1});
        }
        return top;
    }

    int chain_introduce(int top, std::vector<Voter> bag, const std::vector<Voter>& want) {
        for (Voter v : want) {
            if (bag_contains(bag, v)) continue;
            bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
            top = push({NodeKind::kIntroduce, bag, top, -1, v, -1, -1});
        }
        return top;
    }
};

}  // namespace

NiceTreeDecomposition to_nice(const VoterGraph& graph, const TreeDecomposition& td) {
    auto violations = validate(graph, td);
    if (!violations.empty())
        throw InvalidInput("invalid decomposition: " + violations.front() +
                           (violations.size() > 1 ? " (and more)" : ""));

    // Splice out empty bags by re-hanging each node on its nearest non-empty
    // ancestor. No vertex subtree touches an empty bag, so regions separated
    // by one are independent and may be re-attached anywhere.
    const std::vector<int>& parent = td.parent;
    const std::vector<std::vector<Voter>>& bags = td.bags;
    std::vector<int> keep;
    std::vector<int> remap(bags.size(), -1);
    for (size_t t = 0; t < bags.size(); ++t)
        if (!bags[t].empty()) {
            remap[t] = static_cast<int>(keep.size());
            keep.push_back(static_cast<int>(t));
        }
    if (keep.empty())
        return NiceTreeDecomposition{{{NodeKind::kLeaf, {}, -1, -1, -1, -1, -1}}, -1};
    auto live_ancestor = [&](int t) {
        t = parent[t];
        while (t >= 0 && bags[t].empty()) t = parent[t];
        return t;
    };
    const int nn = static_cast<int>(keep.size());
    std::vector<std::vector<Voter>> bag(nn);
    std::vector<std::vector<int>> children(nn);
    std::vector<int> depth(nn, 0);
    int new_root = -1;
    for (int i = 0; i < nn; ++i) bag[i] = bags[keep[i]];
    for (int i = 0; i < nn; ++i) {
        int p = live_ancestor(keep[i]);
        if (p >= 0)
            children[remap[p]].push_back(i);
        else if (new_root < 0)
            new_root = i;
        else
            children[new_root].push_back(i);
    }

    std::vector<int> order;  // parents before children
    order.reserve(nn);
    order.push_back(new_root);
    for (size_t head = 0; head < order.size(); ++head)
        for (int c : children[order[head]]) {
            depth[c] = depth[order[head]] + 1;
            order.push_back(c);
        }

    // Each edge is introduced at the shallowest node holding both endpoints.
    std::vector<std::vector<std::pair<Voter, Voter>>> edges_at(nn);
    for (auto [u, v] : graph.edges()) {
        int best = -1;
        for (int t = 0; t < nn; ++t)
            if (bag_contains(bag[t], u) && bag_contains(bag[t], v) &&
                (best < 0 || depth[t] < depth[best]))
                best = t;
        edges_at[best].emplace_back(u, v);
    }
    for (auto& list : edges_at) std::sort(list.begin(), list.end());

    NiceBuilder builder;
    std::vector<int> top(nn, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int t = *it;
        int acc = -1;
        if (children[t].empty()) {
            acc = builder.push({NodeKind::kLeaf, {}, -1, -1, -1, -1, -1});
            acc = builder.chain_introduce(acc, {}, bag[t]);
        } else {
            for (int c : children[t]) {
                int adapted = builder.chain_forget(top[c], bag[c], bag[t]);
                adapted = builder.chain_introduce(adapted, [&] {
                    std::vector<Voter> shared;
                    for (Voter v : bag[c])
                        if (bag_contains(bag[t], v)) shared.push_back(v);
                    return shared;
                }(), bag[t]);
                acc = acc < 0 ? adapted
                              : builder.push({NodeKind::kJoin, bag[t], acc, adapted, -1, -1, -1});
            }
        }
        for (auto [u, v] : edges_at[t])
            acc = builder.push({NodeKind::kIntroduceEdge, bag[t], acc, -1, -1, u, v});
        top[t] = acc;
    }

    builder.chain_forget(top[new_root], bag[new_root], {});
    return NiceTreeDecomposition{std::move(builder.nodes), -1};
}

NiceTreeDecomposition pin_initiator(const NiceTreeDecomposition& ntd, Voter x) {
    if (ntd.pinned >= 0) throw InvalidInput("decomposition is already pinned");
    bool known = false;
    for (const NiceNode& node : ntd.nodes)
        if (bag_contains(node.bag, x)) known = true;
    if (!known) throw InvalidInput("pin vertex " + std::to_string(x) + " appears in no bag");

    std::vector<NiceNode> nodes = ntd.nodes;

    for (NiceNode& node : nodes)
        if (node.kind != NodeKind::kLeaf && !bag_contains(node.bag, x))
            node.bag.insert(std::upper_bound(node.bag.begin(), node.bag.end(), x), x);

    // Guard every leaf with an introduce-x node unless one is already there.
    const int original = static_cast<int>(nodes.size());
    for (int p = 0; p < original; ++p) {
        for (int side = 0; side < 2; ++side) {
            int leaf = side == 0 ? nodes[p].left : nodes[p].right;
            if (leaf < 0 || nodes[leaf].kind != NodeKind::kLeaf) continue;
            if (nodes[p].kind == NodeKind::kIntroduce && nodes[p].vertex == x) continue;
            nodes.push_back({NodeKind::kIntroduce, {x}, leaf, -1, x, -1, -1});
            (side == 0 ? nodes[p].left : nodes[p].right) = static_cast<int>(nodes.size()) - 1;
        }
    }

    // Splice out nodes made redundant by the bag extension: forget-x
    // everywhere, introduce-x anywhere but directly above a leaf.
    std::vector<char> dead(nodes.size(), 0);
    for (size_t t = 0; t < nodes.size(); ++t) {
        const NiceNode& node = nodes[t];
        if (node.kind == NodeKind::kForget && node.vertex == x) dead[t] = 1;
        if (node.kind == NodeKind::kIntroduce && node.vertex == x &&
            nodes[node.left].kind != NodeKind::kLeaf)
            dead[t] = 1;
    }
    auto live = [&](int t) {
        while (t >= 0 && dead[t]) t = nodes[t].left;
        return t;
    };

    // Renumber the survivors in post order.
    NiceTreeDecomposition out;
    out.pinned = x;
    std::vector<std::pair<int, int>> stack{{live(ntd.root()), 0}};
    std::vector<int> renumbered(nodes.size(), -1);
    while (!stack.empty()) {
        auto& [t, state] = stack.back();
        int child = state == 0 ? live(nodes[t].left) : (state == 1 ? live(nodes[t].right) : -1);
        if (state < 2 && child >= 0 && renumbered[child] < 0) {
            ++state;
            stack.emplace_back(child, 0);
            continue;
        }
        if (state < 2) {
            ++state;
            continue;
        }
        NiceNode copy = nodes[t];
        copy.left = nodes[t].left < 0 ? -1 : renumbered[live(nodes[t].left)];
        copy.right = nodes[t].right < 0 ? -1 : renumbered[live(nodes[t].right)];
        renumbered[t] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(std::move(copy));
        stack.pop_back();
    }
    return out;
}

}  // namespace netcontrol
