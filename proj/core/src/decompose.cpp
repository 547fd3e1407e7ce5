#include "ppm/decompose.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ppm/twirl.hpp"

namespace ppm {

namespace {

struct BlockBox {
    bool empty = true;
    int min_val = 0, max_val = 0, min_pos = 0, max_pos = 0;
};

std::vector<BlockBox> bounding_boxes(const Permutation& host,
                                     const std::vector<std::vector<int>>& blocks) {
    std::vector<BlockBox> out(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) {
        for (int v : blocks[i]) {
            const int p = host.position_of(v);
            if (out[i].empty) {
                out[i] = {false, v, v, p, p};
            } else {
                out[i].min_val = std::min(out[i].min_val, v);
                out[i].max_val = std::max(out[i].max_val, v);
                out[i].min_pos = std::min(out[i].min_pos, p);
                out[i].max_pos = std::max(out[i].max_pos, p);
            }
        }
    }
    return out;
}

bool above(const BlockBox& a, const BlockBox& b) {  // every element of a above every element of b
    return a.empty || b.empty || a.min_val > b.max_val;
}
bool right_of(const BlockBox& a, const BlockBox& b) {
    return a.empty || b.empty || a.min_pos > b.max_pos;
}
bool below(const BlockBox& a, const BlockBox& b) { return above(b, a); }
bool left_of(const BlockBox& a, const BlockBox& b) { return right_of(b, a); }

void check_partition(const Permutation& host, const std::vector<std::vector<int>>& blocks) {
    std::vector<char> seen(static_cast<size_t>(host.size()), 0);
    for (const auto& blk : blocks)
        for (int v : blk) {
            if (v < 1 || v > host.size() || seen[static_cast<size_t>(v - 1)])
                throw std::invalid_argument("decomposition blocks do not partition the elements");
            seen[static_cast<size_t>(v - 1)] = 1;
        }
    for (char c : seen)
        if (!c) throw std::invalid_argument("decomposition blocks do not cover all elements");
}

bool block_increasing(const Permutation& host, const std::vector<int>& blk) {
    // blk is ascending by value; increasing subsequence means positions ascend too
    for (size_t a = 1; a < blk.size(); ++a)
        if (host.position_of(blk[a - 1]) >= host.position_of(blk[a])) return false;
    return true;
}

bool block_decreasing(const Permutation& host, const std::vector<int>& blk) {
    for (size_t a = 1; a < blk.size(); ++a)
        if (host.position_of(blk[a - 1]) <= host.position_of(blk[a])) return false;
    return true;
}

bool stair_positions_ok(const std::vector<BlockBox>& box) {
    const int m = static_cast<int>(box.size());
    for (int i = 2; i <= m; i += 2)
        if (!above(box[static_cast<size_t>(i - 1)], box[static_cast<size_t>(i - 2)])) return false;
    for (int i = 3; i <= m; i += 2)
        if (!right_of(box[static_cast<size_t>(i - 1)], box[static_cast<size_t>(i - 2)])) return false;
    for (int i = 1; i + 2 <= m; ++i) {
        const auto& lo = box[static_cast<size_t>(i - 1)];
        const auto& hi = box[static_cast<size_t>(i + 1)];
        if (!above(hi, lo) || !right_of(hi, lo)) return false;
    }
    return true;
}

BlockBox merge_boxes(const std::vector<BlockBox>& box, size_t from) {
    BlockBox acc;
    for (size_t i = from; i < box.size(); ++i) {
        const auto& b = box[i];
        if (b.empty) continue;
        if (acc.empty)
            acc = b;
        else {
            acc.min_val = std::min(acc.min_val, b.min_val);
            acc.max_val = std::max(acc.max_val, b.max_val);
            acc.min_pos = std::min(acc.min_pos, b.min_pos);
            acc.max_pos = std::max(acc.max_pos, b.max_pos);
        }
    }
    return acc;
}

bool spiral_positions_ok(const std::vector<BlockBox>& box) {
    const int m = static_cast<int>(box.size());
    for (int i = 2; i <= m; ++i) {
        const auto& prev = box[static_cast<size_t>(i - 2)];
        const auto& cur = box[static_cast<size_t>(i - 1)];
        const BlockBox rest = merge_boxes(box, static_cast<size_t>(i));
        switch (i % 4) {
            case 0:
                if (!above(cur, prev)) return false;
                if (!(above(rest, prev) && left_of(rest, prev))) return false;
                break;
            case 1:
                if (!left_of(cur, prev)) return false;
                if (!(below(rest, prev) && left_of(rest, prev))) return false;
                break;
            case 2:
                if (!below(cur, prev)) return false;
                if (!(below(rest, prev) && right_of(rest, prev))) return false;
                break;
            default:  // 3
                if (!right_of(cur, prev)) return false;
                if (!(above(rest, prev) && right_of(rest, prev))) return false;
                break;
        }
    }
    return true;
}

}  // namespace

bool validate_stair(const StairDecomposition& dec) {
    if (!validate_stair_relaxed(dec)) return false;
    for (const auto& blk : dec.blocks)
        if (!block_increasing(dec.host, blk)) return false;
    return true;
}

bool validate_stair_relaxed(const StairDecomposition& dec) {
    check_partition(dec.host, dec.blocks);
    return stair_positions_ok(bounding_boxes(dec.host, dec.blocks));
}

bool validate_spiral(const SpiralDecomposition& dec) {
    if (!validate_spiral_relaxed(dec)) return false;
    for (size_t i = 0; i < dec.blocks.size(); ++i) {
        const bool ok = (i % 2 == 0) ? block_decreasing(dec.host, dec.blocks[i])
                                     : block_increasing(dec.host, dec.blocks[i]);
        if (!ok) return false;
    }
    return true;
}

bool validate_spiral_relaxed(const SpiralDecomposition& dec) {
    check_partition(dec.host, dec.blocks);
    return spiral_positions_ok(bounding_boxes(dec.host, dec.blocks));
}

StairDecomposition stair_decompose(const Permutation& perm) {
    static const Permutation p321({3, 2, 1});
    if (auto witness = contains_bruteforce(p321, perm)) {
        std::string msg = "stair_decompose: input contains 321 at positions";
        for (int idx : *witness) msg += " " + std::to_string(idx);
        throw std::invalid_argument(msg);
    }

    const int n = perm.size();
    std::vector<char> taken(static_cast<size_t>(n), 0);
    int remaining = n;
    std::vector<std::vector<int>> blocks;

    // B_1: longest interval [d] increasing as a subsequence
    {
        std::vector<int> b1;
        int last_pos = -1;
        for (int v = 1; v <= n; ++v) {
            const int p = perm.position_of(v);
            if (p < last_pos) break;
            last_pos = p;
            b1.push_back(v);
        }
        for (int v : b1) taken[static_cast<size_t>(v - 1)] = 1;
        remaining -= static_cast<int>(b1.size());
        if (n > 0) blocks.push_back(std::move(b1));
    }

    bool odd_step = false;  // next block index is even (prefix step) first
    while (remaining > 0) {
        std::vector<int> blk;
        if (!odd_step) {
            // maximal increasing prefix of the remainder, in position order
            int last_val = 0;
            for (int p = 0; p < n && remaining > 0; ++p) {
                const int v = perm[p];
                if (taken[static_cast<size_t>(v - 1)]) continue;
                if (v < last_val) break;
                last_val = v;
                blk.push_back(v);
            }
        } else {
            // maximal down-set of the remaining values increasing as a subsequence
            int last_pos = -1;
            for (int v = 1; v <= n; ++v) {
                if (taken[static_cast<size_t>(v - 1)]) continue;
                const int p = perm.position_of(v);
                if (p < last_pos) break;
                last_pos = p;
                blk.push_back(v);
            }
        }
        std::sort(blk.begin(), blk.end());
        for (int v : blk) taken[static_cast<size_t>(v - 1)] = 1;
        remaining -= static_cast<int>(blk.size());
        blocks.push_back(std::move(blk));
        odd_step = !odd_step;
    }
    return StairDecomposition{perm, std::move(blocks)};
}

StairDecomposition k_track(int k) {
    if (k <= 0) throw std::invalid_argument("k_track: k must be positive");
    std::vector<int> seq;
    seq.reserve(static_cast<size_t>(k) * static_cast<size_t>(k));
    if (k % 2 == 0) {
        for (int r = 1; r <= k * k / 2; ++r) {
            seq.push_back(2 * r - 1);
            seq.push_back(2 * k - 2 + 2 * r);
        }
    } else {
        for (int r = 1; r <= (k * k - k) / 2; ++r) {
            seq.push_back(2 * r - 1);
            seq.push_back(2 * k - 2 + 2 * r);
        }
        for (int j = 0; j < k; ++j) seq.push_back(k * k - k + 1 + 2 * j);
    }
    Permutation track = reduce_sequence(seq);

    // canonical blocks: pairs of vertically alternating blocks occupy 2k
    // consecutive positions (odd offsets / even offsets); odd k keeps the
    // final k positions as the last block
    std::vector<std::vector<int>> blocks(static_cast<size_t>(k));
    for (int r = 1; r <= k / 2; ++r) {
        const int base = (r - 1) * 2 * k;  // 0-based start of the position range
        for (int off = 0; off < 2 * k; ++off) {
            const int block_idx = 2 * (r - 1) + (off % 2);
            blocks[static_cast<size_t>(block_idx)].push_back(track[base + off]);
        }
    }
    if (k % 2 == 1)
        for (int p = k * k - k; p < k * k; ++p)
            blocks[static_cast<size_t>(k - 1)].push_back(track[p]);
    for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
    return StairDecomposition{std::move(track), std::move(blocks)};
}

std::vector<int> linear_extension(const StairDecomposition& dec) {
    const auto& host = dec.host;
    const auto& blocks = dec.blocks;
    const int m = static_cast<int>(blocks.size());
    std::vector<int> order;
    if (m == 0) return order;

    // start with B_1 left to right
    order = blocks[0];
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return host.position_of(a) < host.position_of(b); });

    std::vector<char> in_anchor(static_cast<size_t>(host.size() + 1), 0);
    for (int j = 1; j < m; ++j) {
        const auto& anchors = blocks[static_cast<size_t>(j - 1)];
        const auto& incoming = blocks[static_cast<size_t>(j)];
        if (incoming.empty()) continue;

        std::vector<int> merged;
        merged.reserve(anchors.size() + incoming.size());
        merged.insert(merged.end(), anchors.begin(), anchors.end());
        merged.insert(merged.end(), incoming.begin(), incoming.end());
        if (j % 2 == 1)  // left-to-right order on B_j u B_{j+1}
            std::sort(merged.begin(), merged.end(),
                      [&](int a, int b) { return host.position_of(a) < host.position_of(b); });
        else  // bottom-to-top order
            std::sort(merged.begin(), merged.end());

        for (int v : anchors) in_anchor[static_cast<size_t>(v)] = 1;

        auto list_index = [&](int value) {
            return static_cast<size_t>(std::find(order.begin(), order.end(), value) - order.begin());
        };

        // anchors must already appear in the list in merged order
        size_t prev_anchor_at = 0;
        bool first_anchor = true;
        for (int v : merged) {
            if (!in_anchor[static_cast<size_t>(v)]) continue;
            const size_t at = list_index(v);
            if (!first_anchor && at <= prev_anchor_at)
                throw std::invalid_argument("linear_extension: block orders are inconsistent");
            prev_anchor_at = at;
            first_anchor = false;
        }

        // insert each run of new elements next to its anchor neighbours
        size_t t = 0;
        while (t < merged.size()) {
            if (in_anchor[static_cast<size_t>(merged[t])]) { ++t; continue; }
            size_t run_end = t;
            while (run_end < merged.size() && !in_anchor[static_cast<size_t>(merged[run_end])]) ++run_end;
            // successor anchor, if any
            if (run_end < merged.size()) {
                const size_t at = list_index(merged[run_end]);
                order.insert(order.begin() + static_cast<long>(at), merged.begin() + static_cast<long>(t),
                             merged.begin() + static_cast<long>(run_end));
            } else if (t > 0 && in_anchor[static_cast<size_t>(merged[t - 1])]) {
                const size_t at = list_index(merged[t - 1]) + 1;
                order.insert(order.begin() + static_cast<long>(at), merged.begin() + static_cast<long>(t),
                             merged.begin() + static_cast<long>(run_end));
            } else {
                order.insert(order.end(), merged.begin() + static_cast<long>(t),
                             merged.begin() + static_cast<long>(run_end));
            }
            t = run_end;
        }

        for (int v : anchors) in_anchor[static_cast<size_t>(v)] = 0;
    }
    return order;
}

Occurrence embed_in_track(const StairDecomposition& dec, int q) {
    const int k = dec.host.size();
    const int m = static_cast<int>(dec.blocks.size());
    if (q < std::max(k, m))
        throw std::invalid_argument("embed_in_track: q must be at least max(host size, block count)");
    if (k == 0) return Occurrence{};

    const StairDecomposition track = k_track(q);
    const std::vector<int> order = linear_extension(dec);

    std::vector<int> rank(static_cast<size_t>(k + 1), 0);  // value -> 1-based rank in the order
    for (size_t j = 0; j < order.size(); ++j) rank[static_cast<size_t>(order[j])] = static_cast<int>(j) + 1;
    std::vector<int> block_of(static_cast<size_t>(k + 1), 0);
    for (int i = 0; i < m; ++i)
        for (int v : dec.blocks[static_cast<size_t>(i)]) block_of[static_cast<size_t>(v)] = i;

    Occurrence occ(static_cast<size_t>(k));
    for (int p = 0; p < k; ++p) {
        const int v = dec.host[p];
        const int target = track.blocks[static_cast<size_t>(block_of[static_cast<size_t>(v)])]
                                       [static_cast<size_t>(rank[static_cast<size_t>(v)] - 1)];
        occ[static_cast<size_t>(p)] = track.host.position_of(target) + 1;
    }
    return occ;
}

namespace {

// Fixed skew partition: label elements in position order, trying the
// decreasing side first; first feasible labeling wins.
bool skew_labels(const Permutation& perm, int pos, int last_dec, int last_inc, std::vector<char>& label) {
    if (pos == perm.size()) return true;
    const int v = perm[pos];
    if (last_dec == 0 || v < last_dec) {
        label[static_cast<size_t>(pos)] = 'D';
        if (skew_labels(perm, pos + 1, v, last_inc, label)) return true;
    }
    if (last_inc == 0 || v > last_inc) {
        label[static_cast<size_t>(pos)] = 'I';
        if (skew_labels(perm, pos + 1, last_dec, v, label)) return true;
    }
    return false;
}

[[noreturn]] void throw_with_witness(const Permutation& perm, const char* what) {
    static const std::vector<Permutation> basis = {
        Permutation({2, 1, 4, 3}), Permutation({3, 4, 1, 2}), Permutation({3, 1, 4, 2})};
    for (const auto& f : basis)
        if (auto w = contains_bruteforce(f, perm)) {
            std::string msg = std::string(what) + ": contains " + f.to_string() + " at positions";
            for (int idx : *w) msg += " " + std::to_string(idx);
            throw std::invalid_argument(msg);
        }
    throw std::invalid_argument(std::string(what) + ": internal inconsistency");
}

}  // namespace

SpiralDecomposition spiral_decompose(const Permutation& perm) {
    const int n = perm.size();
    if (n == 0) return SpiralDecomposition{perm, {}};

    std::vector<char> label(static_cast<size_t>(n), 0);
    if (!skew_labels(perm, 0, 0, 0, label))
        throw_with_witness(perm, "spiral_decompose");

    std::vector<char> in_dec(static_cast<size_t>(n + 1), 0);
    for (int p = 0; p < n; ++p)
        if (label[static_cast<size_t>(p)] == 'D') in_dec[static_cast<size_t>(perm[p])] = 1;

    std::vector<char> taken(static_cast<size_t>(n + 1), 0);
    int remaining = n;
    std::vector<std::vector<int>> blocks;
    int consecutive_empty = 0;

    for (int i = 1; remaining > 0; ++i) {
        // bounding data of the remaining I and D parts
        int d_min_pos = n, d_max_pos = -1, i_min_val = n + 1, i_max_val = 0;
        for (int v = 1; v <= n; ++v) {
            if (taken[static_cast<size_t>(v)]) continue;
            const int p = perm.position_of(v);
            if (in_dec[static_cast<size_t>(v)]) {
                d_min_pos = std::min(d_min_pos, p);
                d_max_pos = std::max(d_max_pos, p);
            } else {
                i_min_val = std::min(i_min_val, v);
                i_max_val = std::max(i_max_val, v);
            }
        }

        std::vector<int> blk;
        for (int v = 1; v <= n; ++v) {
            if (taken[static_cast<size_t>(v)]) continue;
            const int p = perm.position_of(v);
            const bool is_d = in_dec[static_cast<size_t>(v)] != 0;
            switch (i % 4) {
                case 0: if (!is_d && p > d_max_pos) blk.push_back(v); break;       // right of D
                case 1: if (is_d && v > i_max_val) blk.push_back(v); break;        // above I
                case 2: if (!is_d && p < d_min_pos) blk.push_back(v); break;       // left of D
                default: if (is_d && v < i_min_val) blk.push_back(v); break;       // below I
            }
        }
        if (blk.empty()) {
            if (++consecutive_empty == 4)
                throw_with_witness(perm, "spiral_decompose");
        } else {
            consecutive_empty = 0;
            for (int v : blk) taken[static_cast<size_t>(v)] = 1;
            remaining -= static_cast<int>(blk.size());
        }
        blocks.push_back(std::move(blk));
    }
    while (!blocks.empty() && blocks.back().empty()) blocks.pop_back();
    return SpiralDecomposition{perm, std::move(blocks)};
}

SpiralDecomposition k_spiral(int k) {
    if (k <= 0) throw std::invalid_argument("k_spiral: k must be positive");
    return twirl(k_track(k)).out;
}

Occurrence embed_in_spiral(const SpiralDecomposition& dec, int q) {
    const int k = dec.host.size();
    const int m = static_cast<int>(dec.blocks.size());
    if (q < std::max(k, m))
        throw std::invalid_argument("embed_in_spiral: q must be at least max(host size, block count)");
    if (k == 0) return Occurrence{};

    const UntwirlResult un = untwirl(dec);
    const Occurrence straight = embed_in_track(un.out, q);
    const TwirlResult tw = twirl(k_track(q));

    Occurrence occ(static_cast<size_t>(k));
    for (int a = 0; a < k; ++a) {
        const int stair_pos = un.pos_map[static_cast<size_t>(a)];
        const int track_pos = straight[static_cast<size_t>(stair_pos)];  // 1-based
        occ[static_cast<size_t>(a)] = tw.pos_map[static_cast<size_t>(track_pos - 1)] + 1;
    }
    return occ;
}

}  // namespace ppm
