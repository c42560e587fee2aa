#include "netcontrol/dp_engine.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <thread>

namespace netcontrol {

void NodeTable::min_insert(DpKey key, Cost cost, BackRef ref) {
    if (cost > cap_) return;
    auto [it, fresh] = index_.try_emplace(key, static_cast<std::int32_t>(keys_.size()));
    if (fresh) {
        keys_.push_back(std::move(key));
        costs_.push_back(cost);
        refs_.push_back(ref);
    } else if (cost < costs_[it->second]) {  // ties keep the first transition
        costs_[it->second] = cost;
        refs_[it->second] = ref;
    }
}

int NodeTable::find(const DpKey& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
}

namespace {

int slot_of(const std::vector<Voter>& bag, Voter v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

struct Filler {
    const ControlInstance& instance;
    const NiceTreeDecomposition& ntd;
    const std::vector<std::int32_t>& voter_rows;
    const int R;
    const Cost cap;
    std::vector<NodeTable>& tables;

    void fill_node(int t) {
        const NiceNode& node = ntd.nodes[t];
        NodeTable table(cap);
        switch (node.kind) {
            case NodeKind::kLeaf:
                table.min_insert(DpKey{}, 0, {-1, -1, BackRef::kInit});
                break;
            case NodeKind::kIntroduce: {
                const NodeTable& child = tables[node.left];
                const Voter v = node.vertex;
                const int slot = slot_of(node.bag, v);
                const bool deletable = v != instance.initiator;
                for (int i = 0; i < child.size(); ++i) {
                    if (deletable) {  // v joins W; parts unaffected
                        DpKey gone = child.key(i);
                        gone.part_of.insert(gone.part_of.begin() + slot, DpKey::kNoPart);
                        table.min_insert(std::move(gone), child.cost(i) + instance.cost[v],
                                         {i, -1, BackRef::kDelete});
                    }
                    DpKey kept = child.key(i);  // v survives as an isolated singleton
                    kept.part_of.insert(kept.part_of.begin() + slot,
                                        static_cast<std::uint8_t>(kept.num_parts(R)));
                    kept.rows.insert(kept.rows.end(),
                                     voter_rows.begin() + static_cast<size_t>(v) * R,
                                     voter_rows.begin() + static_cast<size_t>(v + 1) * R);
                    table.min_insert(canonicalize(kept, R), child.cost(i),
                                     {i, -1, BackRef::kKeep});
                }
                break;
            }
            case NodeKind::kIntroduceEdge: {
                const NodeTable& child = tables[node.left];
                const int su = slot_of(node.bag, node.edge_u);
                const int sv = slot_of(node.bag, node.edge_v);
                for (int i = 0; i < child.size(); ++i)
                    table.min_insert(merge_edge(child.key(i), su, sv, R), child.cost(i),
                                     {i, -1, BackRef::kEdge});
                break;
            }
            case NodeKind::kForget: {
                const NodeTable& child = tables[node.left];
                const int slot = slot_of(ntd.nodes[node.left].bag, node.vertex);
                for (int i = 0; i < child.size(); ++i)
                    table.min_insert(forget_slot(child.key(i), slot, R).key, child.cost(i),
                                     {i, -1, BackRef::kForget});
                break;
            }
            case NodeKind::kJoin: {
                const NodeTable& left = tables[node.left];
                const NodeTable& right = tables[node.right];
                std::vector<std::int32_t> slot_rows(node.bag.size() * static_cast<size_t>(R));
                Cost bag_cost_total = 0;
                for (size_t s = 0; s < node.bag.size(); ++s) {
                    std::copy_n(voter_rows.begin() + static_cast<size_t>(node.bag[s]) * R, R,
                                slot_rows.begin() + s * R);
                    bag_cost_total += instance.cost[node.bag[s]];
                }
                std::unordered_map<std::uint64_t, std::vector<int>> by_mask;
                for (int j = 0; j < right.size(); ++j)
                    by_mask[right.key(j).covered_mask()].push_back(j);
                for (int i = 0; i < left.size(); ++i) {
                    auto bucket = by_mask.find(left.key(i).covered_mask());
                    if (bucket == by_mask.end()) continue;
                    Cost shared_deleted = 0;  // bag vertices deleted on both sides
                    for (size_t s = 0; s < node.bag.size(); ++s)
                        if (!left.key(i).covered(static_cast<int>(s)))
                            shared_deleted += instance.cost[node.bag[s]];
                    for (int j : bucket->second)
                        table.min_insert(join_keys(left.key(i), right.key(j), slot_rows, R),
                                         left.cost(i) + right.cost(j) - shared_deleted,
                                         {i, j, BackRef::kJoin});
                }
                break;
            }
        }
        tables[t] = std::move(table);
    }
};

}  // namespace

std::vector<NodeTable> fill_tables(const ControlInstance& instance,
                                   const NiceTreeDecomposition& ntd,
                                   const std::vector<std::int32_t>& voter_rows, int row_width,
                                   int jobs, Cost cap) {
    if (ntd.pinned != instance.initiator)
        throw InvalidInput("decomposition is not pinned at the initiator");
    if (!instance.budget.unlimited) cap = std::min(cap, instance.budget.amount);
    std::vector<NodeTable> tables(ntd.num_nodes(), NodeTable(cap));
    Filler filler{instance, ntd, voter_rows, row_width, cap, tables};

    if (jobs <= 1) {
        for (int t = 0; t < ntd.num_nodes(); ++t) filler.fill_node(t);
        return tables;
    }

    // Children-complete scheduling: a node becomes ready when its children
    // are filled; subtrees proceed in parallel.
    std::vector<int> pending(ntd.num_nodes(), 0);
    std::vector<int> parent(ntd.num_nodes(), -1);
    std::vector<int> ready;
    for (int t = 0; t < ntd.num_nodes(); ++t) {
        const NiceNode& node = ntd.nodes[t];
        for (int child : {node.left, node.right})
            if (child >= 0) {
                ++pending[t];
                parent[child] = t;
            }
        if (pending[t] == 0) ready.push_back(t);
    }
    std::mutex mutex;
    std::condition_variable wake;
    int remaining = ntd.num_nodes();
    auto worker = [&] {
        std::unique_lock lock(mutex);
        while (remaining > 0) {
            if (ready.empty()) {
                wake.wait(lock, [&] { return !ready.empty() || remaining == 0; });
                continue;
            }
            int t = ready.back();
            ready.pop_back();
            lock.unlock();
            filler.fill_node(t);
            lock.lock();
            --remaining;
            if (parent[t] >= 0 && --pending[parent[t]] == 0) ready.push_back(parent[t]);
            wake.notify_all();
        }
        wake.notify_all();
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
    return tables;
}

std::vector<Voter> extract_witness(const std::vector<NodeTable>& tables,
                                   const NiceTreeDecomposition& ntd, int root_entry) {
    std::vector<Voter> deleted;
    std::vector<std::pair<int, int>> stack{{ntd.root(), root_entry}};
    while (!stack.empty()) {
        auto [t, i] = stack.back();
        stack.pop_back();
        const BackRef ref = tables[t].ref(i);
        switch (ref.tag) {
            case BackRef::kInit:
                break;
            case BackRef::kDelete:
                deleted.push_back(ntd.nodes[t].vertex);
                [[fallthrough]];
            case BackRef::kKeep:
            case BackRef::kEdge:
            case BackRef::kForget:
                stack.emplace_back(ntd.nodes[t].left, ref.a);
                break;
            case BackRef::kJoin:
                stack.emplace_back(ntd.nodes[t].left, ref.a);
                stack.emplace_back(ntd.nodes[t].right, ref.b);
                break;
        }
    }
    std::sort(deleted.begin(), deleted.end());
    deleted.erase(std::unique(deleted.begin(), deleted.end()), deleted.end());
    return deleted;
}

}  // namespace netcontrol
