#include "netcontrol/dp_key.hpp"

#include <algorithm>
#include <array>

namespace netcontrol {

namespace {

int slot_of(const std::vector<Voter>& bag, Voter v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    return it != bag.end() && *it == v ? static_cast<int>(it - bag.begin()) : -1;
}

}  // namespace

std::uint64_t DpKey::covered_mask() const {
    std::uint64_t mask = 0;
    for (size_t s = 0; s < part_of.size(); ++s)
        if (part_of[s] != kNoPart) mask |= 1ull << s;
    return mask;
}

std::size_t DpKeyHash::operator()(const DpKey& key) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t byte) {
        h ^= byte;
        h *= 0x100000001b3ull;
    };
    for (std::uint8_t p : key.part_of) mix(p);
    for (std::int32_t v : key.rows) {
        mix(static_cast<std::uint32_t>(v) & 0xff);
        mix(static_cast<std::uint32_t>(v) >> 8 & 0xff);
        mix(static_cast<std::uint32_t>(v) >> 16 & 0xff);
        mix(static_cast<std::uint32_t>(v) >> 24 & 0xff);
    }
    return static_cast<std::size_t>(h);
}

DpKey canonicalize(const DpKey& key, int row_width) {
    std::array<std::uint8_t, 256> renamed;
    renamed.fill(DpKey::kNoPart);
    DpKey out;
    out.part_of.resize(key.part_of.size());
    std::uint8_t next = 0;
    for (size_t s = 0; s < key.part_of.size(); ++s) {
        if (key.part_of[s] == DpKey::kNoPart) {
            out.part_of[s] = DpKey::kNoPart;
            continue;
        }
        if (renamed[key.part_of[s]] == DpKey::kNoPart) renamed[key.part_of[s]] = next++;
        out.part_of[s] = renamed[key.part_of[s]];
    }
    out.rows.resize(static_cast<size_t>(next) * row_width);
    for (int old = 0; old < key.num_parts(row_width); ++old)
        if (renamed[old] != DpKey::kNoPart)
            std::copy_n(key.rows.begin() + static_cast<size_t>(old) * row_width, row_width,
                        out.rows.begin() + static_cast<size_t>(renamed[old]) * row_width);
    return out;
}

DpKey merge_edge(const DpKey& key, int slot_u, int slot_v, int row_width) {
    if (!key.covered(slot_u) || !key.covered(slot_v)) return key;
    std::uint8_t a = key.part_of[slot_u], b = key.part_of[slot_v];
    if (a == b) return key;
    if (a > b) std::swap(a, b);
    DpKey merged = key;
    for (std::uint8_t& p : merged.part_of)
        if (p == b) p = a;
    for (int j = 0; j < row_width; ++j)
        merged.rows[static_cast<size_t>(a) * row_width + j] +=
            merged.rows[static_cast<size_t>(b) * row_width + j];
    merged.rows.erase(merged.rows.begin() + static_cast<size_t>(b) * row_width,
                      merged.rows.begin() + static_cast<size_t>(b + 1) * row_width);
    for (std::uint8_t& p : merged.part_of)
        if (p != DpKey::kNoPart && p > b) --p;
    return canonicalize(merged, row_width);
}

ForgetResult forget_slot(const DpKey& key, int slot, int row_width) {
    ForgetResult result;
    const std::uint8_t part = key.part_of[slot];
    result.key.part_of = key.part_of;
    result.key.part_of.erase(result.key.part_of.begin() + slot);
    if (part == DpKey::kNoPart) {
        result.key.rows = key.rows;
        return result;  // vertex was deleted; nothing else changes
    }
    bool lone = std::count(key.part_of.begin(), key.part_of.end(), part) == 1;
    result.key.rows = key.rows;
    if (lone) {
        result.dropped_part = true;
        result.key.rows.erase(result.key.rows.begin() + static_cast<size_t>(part) * row_width,
                              result.key.rows.begin() + static_cast<size_t>(part + 1) * row_width);
        for (std::uint8_t& p : result.key.part_of)
            if (p != DpKey::kNoPart && p > part) --p;
    }
    result.key = canonicalize(result.key, row_width);
    return result;
}

std::vector<ForgetPreimage> forget_preimages(const DpKey& parent,
                                             const std::vector<Voter>& parent_bag, Voter v,
                                             int row_width) {
    if (slot_of(parent_bag, v) >= 0)
        throw InvalidInput("vertex " + std::to_string(v) + " is still in the key");
    const int slot = static_cast<int>(
        std::lower_bound(parent_bag.begin(), parent_bag.end(), v) - parent_bag.begin());
    std::vector<ForgetPreimage> out;

    DpKey deleted = parent;  // the forgotten vertex was in W
    deleted.part_of.insert(deleted.part_of.begin() + slot, DpKey::kNoPart);
    out.push_back({std::move(deleted), -1});

    for (int p = 0; p < parent.num_parts(row_width); ++p) {  // member of part p
        DpKey member = parent;
        member.part_of.insert(member.part_of.begin() + slot, static_cast<std::uint8_t>(p));
        out.push_back({canonicalize(member, row_width), -1});
    }

    DpKey lone = parent;  // lone part whose row was dropped: row unconstrained
    lone.part_of.insert(lone.part_of.begin() + slot,
                        static_cast<std::uint8_t>(parent.num_parts(row_width)));
    lone.rows.insert(lone.rows.end(), row_width, 0);
    lone = canonicalize(lone, row_width);
    int free_part = 0;
    for (int s = 0; s < slot; ++s)
        if (lone.part_of[s] != DpKey::kNoPart)
            free_part = std::max(free_part, lone.part_of[s] + 1);
    out.push_back({std::move(lone), free_part});
    return out;
}

std::vector<std::vector<Voter>> join_partitions(const std::vector<std::vector<Voter>>& p1,
                                                const std::vector<std::vector<Voter>>& p2) {
    std::vector<Voter> vertices;
    for (const auto& part : p1) vertices.insert(vertices.end(), part.begin(), part.end());
    std::sort(vertices.begin(), vertices.end());
    {
        std::vector<Voter> other;
        for (const auto& part : p2) other.insert(other.end(), part.begin(), part.end());
        std::sort(other.begin(), other.end());
        if (vertices != other) throw InvalidInput("partitions cover different vertex sets");
    }

    std::vector<int> root(vertices.size());
    for (size_t i = 0; i < root.size(); ++i) root[i] = static_cast<int>(i);
    auto find = [&](int a) {
        while (root[a] != a) a = root[a] = root[root[a]];
        return a;
    };
    auto link = [&](const std::vector<std::vector<Voter>>& parts) {
        for (const auto& part : parts)
            for (size_t i = 1; i < part.size(); ++i)
                root[find(static_cast<int>(std::lower_bound(vertices.begin(), vertices.end(),
                                                            part[i]) -
                                           vertices.begin()))] =
                    find(static_cast<int>(std::lower_bound(vertices.begin(), vertices.end(),
                                                           part[0]) -
                                          vertices.begin()));
    };
    link(p1);
    link(p2);

    std::vector<std::vector<Voter>> out;
    std::vector<int> part_index(vertices.size(), -1);
    for (size_t i = 0; i < vertices.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (part_index[r] < 0) {
            part_index[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[part_index[r]].push_back(vertices[i]);
    }
    return out;
}

DpKey join_keys(const DpKey& a, const DpKey& b, const std::vector<std::int32_t>& slot_rows,
                int row_width) {
    const int slots = static_cast<int>(a.part_of.size());
    if (a.covered_mask() != b.covered_mask())
        throw InvalidInput("join keys cover different vertex sets");

    std::vector<int> root(slots);
    for (int s = 0; s < slots; ++s) root[s] = s;
    auto find = [&](int s) {
        while (root[s] != s) s = root[s] = root[root[s]];
        return s;
    };
    auto link = [&](const DpKey& key) {
        std::array<int, 256> first;
        first.fill(-1);
        for (int s = 0; s < slots; ++s) {
            std::uint8_t p = key.part_of[s];
            if (p == DpKey::kNoPart) continue;
            if (first[p] < 0)
                first[p] = s;
            else
                root[find(s)] = find(first[p]);
        }
    };
    link(a);
    link(b);

    DpKey joined;
    joined.part_of.assign(slots, DpKey::kNoPart);
    std::vector<int> part_index(slots, -1);
    int parts = 0;
    for (int s = 0; s < slots; ++s) {
        if (!a.covered(s)) continue;
        int r = find(s);
        if (part_index[r] < 0) part_index[r] = parts++;
        joined.part_of[s] = static_cast<std::uint8_t>(part_index[r]);
    }
    joined.rows.assign(static_cast<size_t>(parts) * row_width, 0);

    auto add_rows = [&](const DpKey& key, int sign) {
        std::array<bool, 256> seen;
        seen.fill(false);
        for (int s = 0; s < slots; ++s) {
            std::uint8_t p = key.part_of[s];
            if (p == DpKey::kNoPart || seen[p]) continue;
            seen[p] = true;
            int j = joined.part_of[s];
            for (int k = 0; k < row_width; ++k)
                joined.rows[static_cast<size_t>(j) * row_width + k] +=
                    sign * key.rows[static_cast<size_t>(p) * row_width + k];
        }
    };
    add_rows(a, 1);
    add_rows(b, 1);
    for (int s = 0; s < slots; ++s) {  // both sides counted the bag vertices
        if (!joined.covered(s)) continue;
        int j = joined.part_of[s];
        for (int k = 0; k < row_width; ++k)
            joined.rows[static_cast<size_t>(j) * row_width + k] -=
                slot_rows[static_cast<size_t>(s) * row_width + k];
    }
    return joined;
}

DpKey encode(const BagKey& key, const std::vector<Voter>& bag, int row_width) {
    DpKey out;
    out.part_of.assign(bag.size(), DpKey::kNoPart);
    for (size_t p = 0; p < key.parts.size(); ++p) {
        if (static_cast<int>(key.rows[p].size()) != row_width)
            throw InvalidInput("row width mismatch");
        for (Voter v : key.parts[p]) {
            int slot = slot_of(bag, v);
            if (slot < 0) throw InvalidInput("part vertex " + std::to_string(v) + " not in bag");
            out.part_of[slot] = static_cast<std::uint8_t>(p);
        }
        out.rows.insert(out.rows.end(), key.rows[p].begin(), key.rows[p].end());
    }
    return canonicalize(out, row_width);
}

BagKey decode(const DpKey& key, const std::vector<Voter>& bag, int row_width) {
    BagKey out;
    out.parts.resize(key.num_parts(row_width));
    out.rows.resize(out.parts.size());
    for (size_t s = 0; s < key.part_of.size(); ++s)
        if (key.part_of[s] != DpKey::kNoPart) out.parts[key.part_of[s]].push_back(bag[s]);
    for (size_t p = 0; p < out.parts.size(); ++p)
        out.rows[p].assign(key.rows.begin() + p * row_width, key.rows.begin() + (p + 1) * row_width);
    return out;
}

}  // namespace netcontrol
