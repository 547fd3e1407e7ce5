#include "ppm/twirl.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppm {

namespace {

std::vector<int> by_position(const Permutation& host, std::vector<int> values) {
    std::sort(values.begin(), values.end(),
              [&](int a, int b) { return host.position_of(a) < host.position_of(b); });
    return values;
}

std::vector<int> group_values(const std::vector<std::vector<int>>& blocks, int first, int second) {
    std::vector<int> out;
    if (first < static_cast<int>(blocks.size()))
        out.insert(out.end(), blocks[static_cast<size_t>(first)].begin(),
                   blocks[static_cast<size_t>(first)].end());
    if (second < static_cast<int>(blocks.size()))
        out.insert(out.end(), blocks[static_cast<size_t>(second)].begin(),
                   blocks[static_cast<size_t>(second)].end());
    return out;
}

struct AxisPlan {
    // each entry is one group's element list, already in its final internal order
    std::vector<std::vector<int>> groups;

    std::vector<int> concat() const {
        std::vector<int> out;
        for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
        return out;
    }
};

// Horizontal groups pair blocks (2r-1, 2r); vertical groups pair (2r, 2r+1)
// with block 1 on its own. In the spiral the horizontal axis reads odd
// groups left to right and then even groups right to left; the vertical
// axis reads odd groups bottom up, then even groups top down, with block 1
// topmost. r counts groups from 1.
std::vector<int> spiral_axis_order(std::vector<std::vector<int>> groups, bool block1_group) {
    std::vector<std::vector<int>> arranged;
    const int g = static_cast<int>(groups.size());
    const int paired = block1_group ? g - 1 : g;  // groups beyond the lone block-1 group
    const int offset = block1_group ? 1 : 0;
    for (int r = 1; r <= paired; r += 2) arranged.push_back(std::move(groups[static_cast<size_t>(offset + r - 1)]));
    for (int r = paired - (paired % 2 == 0 ? 0 : 1); r >= 2; r -= 2)
        arranged.push_back(std::move(groups[static_cast<size_t>(offset + r - 1)]));
    if (block1_group) arranged.push_back(std::move(groups[0]));
    std::vector<int> out;
    for (auto& a : arranged) out.insert(out.end(), a.begin(), a.end());
    return out;
}

Permutation assemble(const std::vector<int>& horizontal, const std::vector<int>& vertical, int n,
                     std::vector<int>& pos_map, std::vector<int>& val_map,
                     const Permutation& old_host) {
    val_map.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) val_map[static_cast<size_t>(vertical[static_cast<size_t>(i)] - 1)] = i + 1;
    pos_map.assign(static_cast<size_t>(n), 0);
    std::vector<int> out_vals(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) {
        const int old_val = horizontal[static_cast<size_t>(p)];
        out_vals[static_cast<size_t>(p)] = val_map[static_cast<size_t>(old_val - 1)];
        pos_map[static_cast<size_t>(old_host.position_of(old_val))] = p;
    }
    return Permutation(std::move(out_vals));
}

std::vector<std::vector<int>> map_blocks(const std::vector<std::vector<int>>& blocks,
                                         const std::vector<int>& val_map) {
    std::vector<std::vector<int>> out(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) {
        out[i].reserve(blocks[i].size());
        for (int v : blocks[i]) out[i].push_back(val_map[static_cast<size_t>(v - 1)]);
        std::sort(out[i].begin(), out[i].end());
    }
    return out;
}

}  // namespace

TwirlResult twirl(const StairDecomposition& dec) {
    if (!validate_stair_relaxed(dec))
        throw std::invalid_argument("twirl: not a relaxed stair decomposition");
    const int n = dec.host.size();
    const int m = static_cast<int>(dec.blocks.size());
    TwirlResult res;
    if (n == 0) {
        res.out = SpiralDecomposition{dec.host, dec.blocks};
        return res;
    }

    // horizontal groups (blocks 2r-1, 2r): original left-to-right order,
    // reversed for even r
    std::vector<std::vector<int>> hgroups;
    for (int r = 1; 2 * r - 1 <= m; ++r) {
        auto g = by_position(dec.host, group_values(dec.blocks, 2 * r - 2, 2 * r - 1));
        if (r % 2 == 0) std::reverse(g.begin(), g.end());
        hgroups.push_back(std::move(g));
    }
    const std::vector<int> horizontal = spiral_axis_order(std::move(hgroups), false);

    // vertical groups: block 1 alone (flipped), then blocks (2r, 2r+1) in
    // original bottom-to-top order, reversed for even r
    std::vector<std::vector<int>> vgroups;
    {
        auto g1 = dec.blocks.empty() ? std::vector<int>{} : dec.blocks[0];  // ascending by value
        std::reverse(g1.begin(), g1.end());
        vgroups.push_back(std::move(g1));
    }
    for (int r = 1; 2 * r <= m; ++r) {
        auto g = group_values(dec.blocks, 2 * r - 1, 2 * r);
        std::sort(g.begin(), g.end());
        if (r % 2 == 0) std::reverse(g.begin(), g.end());
        vgroups.push_back(std::move(g));
    }
    const std::vector<int> vertical = spiral_axis_order(std::move(vgroups), true);

    res.out.host = assemble(horizontal, vertical, n, res.pos_map, res.val_map, dec.host);
    res.out.blocks = map_blocks(dec.blocks, res.val_map);
    return res;
}

UntwirlResult untwirl(const SpiralDecomposition& dec) {
    if (!validate_spiral_relaxed(dec))
        throw std::invalid_argument("untwirl: not a relaxed spiral decomposition");
    const int n = dec.host.size();
    const int m = static_cast<int>(dec.blocks.size());
    UntwirlResult res;
    if (n == 0) {
        res.out = StairDecomposition{dec.host, dec.blocks};
        return res;
    }

    // read spiral groups back in current order, undo the even-r reversals,
    // and lay groups out in plain ascending order on both axes
    std::vector<int> horizontal;
    for (int r = 1; 2 * r - 1 <= m; ++r) {
        auto g = by_position(dec.host, group_values(dec.blocks, 2 * r - 2, 2 * r - 1));
        if (r % 2 == 0) std::reverse(g.begin(), g.end());
        horizontal.insert(horizontal.end(), g.begin(), g.end());
    }

    std::vector<int> vertical;
    {
        auto g1 = dec.blocks.empty() ? std::vector<int>{} : dec.blocks[0];
        std::reverse(g1.begin(), g1.end());  // undo the block-1 flip
        vertical.insert(vertical.end(), g1.begin(), g1.end());
    }
    for (int r = 1; 2 * r <= m; ++r) {
        auto g = group_values(dec.blocks, 2 * r - 1, 2 * r);
        std::sort(g.begin(), g.end());
        if (r % 2 == 0) std::reverse(g.begin(), g.end());
        vertical.insert(vertical.end(), g.begin(), g.end());
    }

    res.out.host = assemble(horizontal, vertical, n, res.pos_map, res.val_map, dec.host);
    res.out.blocks = map_blocks(dec.blocks, res.val_map);
    return res;
}

}  // namespace ppm
