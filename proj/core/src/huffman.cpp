// SPDX-License-Identifier: Apache-2.0
#include "splitedge/huffman.hpp"

#include <algorithm>
#include <queue>

namespace splitedge::huffman {

namespace {

struct Node {
    std::uint64_t freq{};
    std::uint32_t order{};  // creation order, makes heap ties deterministic
    int left{-1};
    int right{-1};
    std::uint16_t symbol{};
};

struct HeapEntry {
    std::uint64_t freq{};
    std::uint32_t order{};
    int index{};
    bool operator>(const HeapEntry& o) const {
        if (freq != o.freq) return freq > o.freq;
        return order > o.order;
    }
};

void collect_depths(const std::vector<Node>& nodes, int idx, int depth,
                    std::vector<std::pair<std::uint16_t, int>>& out) {
    const Node& n = nodes[idx];
    if (n.left < 0) {
        out.emplace_back(n.symbol, std::max(depth, 1));
        return;
    }
    collect_depths(nodes, n.left, depth + 1, out);
    collect_depths(nodes, n.right, depth + 1, out);
}

}  // namespace

CodeTable CodeTable::from_frequencies(const std::map<std::uint16_t, std::uint64_t>& freqs) {
    if (freqs.empty()) {
        throw CodecError("huffman table needs at least one symbol");
    }

    std::vector<Node> nodes;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
    std::uint32_t order = 0;
    for (const auto& [sym, freq] : freqs) {
        nodes.push_back(Node{freq, order, -1, -1, sym});
        heap.push(HeapEntry{freq, order, static_cast<int>(nodes.size()) - 1});
        ++order;
    }
    while (heap.size() > 1) {
        HeapEntry a = heap.top();
        heap.pop();
        HeapEntry b = heap.top();
        heap.pop();
        nodes.push_back(Node{a.freq + b.freq, order, a.index, b.index, 0});
        heap.push(HeapEntry{a.freq + b.freq, order, static_cast<int>(nodes.size()) - 1});
        ++order;
    }

    std::vector<std::pair<std::uint16_t, int>> depths;  // (symbol, length)
    collect_depths(nodes, heap.top().index, 0, depths);

    // Limit code lengths to kMaxCodeLength: count codes per length, push
    // overlong pairs up one level (keeps the Kraft sum <= 1), then hand the
    // adjusted length multiset back to symbols ordered by frequency.
    int max_len = 0;
    for (const auto& [sym, len] : depths) max_len = std::max(max_len, len);
    if (max_len > kMaxCodeLength) {
        std::vector<int> counts(max_len + 1, 0);
        for (const auto& [sym, len] : depths) counts[len]++;
        for (int len = max_len; len > kMaxCodeLength; --len) {
            while (counts[len] > 0) {
                int j = len - 2;
                while (j > 0 && counts[j] == 0) --j;
                counts[len] -= 2;
                counts[len - 1] += 1;
                counts[j] -= 1;
                counts[j + 1] += 2;
            }
        }
        // reassign: most frequent symbol gets the shortest length
        std::vector<std::pair<std::uint16_t, std::uint64_t>> by_freq(freqs.begin(), freqs.end());
        std::stable_sort(by_freq.begin(), by_freq.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        depths.clear();
        std::size_t next = 0;
        for (int len = 1; len <= kMaxCodeLength; ++len) {
            for (int k = 0; k < counts[len]; ++k) {
                depths.emplace_back(by_freq[next++].first, len);
            }
        }
    }

    std::vector<SymbolLength> entries;
    entries.reserve(depths.size());
    for (const auto& [sym, len] : depths) {
        entries.push_back(SymbolLength{sym, static_cast<std::uint8_t>(len)});
    }
    return from_lengths(std::move(entries));
}

CodeTable CodeTable::from_lengths(std::vector<SymbolLength> lengths) {
    if (lengths.empty()) {
        throw CodecError("huffman table is empty");
    }
    CodeTable t;
    t.entries_ = std::move(lengths);
    std::sort(t.entries_.begin(), t.entries_.end(),
              [](const SymbolLength& a, const SymbolLength& b) { return a.symbol < b.symbol; });
    for (std::size_t i = 1; i < t.entries_.size(); ++i) {
        if (t.entries_[i].symbol == t.entries_[i - 1].symbol) {
            throw CodecError("huffman table: duplicate symbol");
        }
    }
    t.assign_canonical_codes();
    return t;
}

void CodeTable::assign_canonical_codes() {
    std::vector<SymbolLength> order = entries_;
    std::sort(order.begin(), order.end(), [](const SymbolLength& a, const SymbolLength& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.symbol < b.symbol;
    });
    std::uint32_t code = 0;
    int prev_len = order.front().length;
    if (prev_len < 1 || prev_len > kMaxCodeLength) {
        throw CodecError("huffman table: invalid code length");
    }
    for (const SymbolLength& e : order) {
        if (e.length < prev_len || e.length > kMaxCodeLength || e.length == 0) {
            throw CodecError("huffman table: invalid code length");
        }
        code <<= (e.length - prev_len);
        prev_len = e.length;
        if (code >= (1u << e.length)) {
            throw CodecError("huffman table: code space overflow");
        }
        codes_[e.symbol] = Code{static_cast<std::uint16_t>(code), e.length};
        ++code;
    }
}

Code CodeTable::code_for(std::uint16_t symbol) const {
    auto it = codes_.find(symbol);
    if (it == codes_.end()) {
        throw CodecError("huffman table: symbol missing");
    }
    return it->second;
}

Decoder::Decoder(const CodeTable& table) {
    std::vector<SymbolLength> order = table.entries();
    std::sort(order.begin(), order.end(), [](const SymbolLength& a, const SymbolLength& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.symbol < b.symbol;
    });
    std::uint32_t code = 0;
    int prev_len = order.front().length;
    std::size_t index = 0;
    for (const SymbolLength& e : order) {
        code <<= (e.length - prev_len);
        prev_len = e.length;
        if (groups_[e.length].count == 0) {
            groups_[e.length].first_code = code;
            groups_[e.length].first_index = static_cast<std::uint32_t>(index);
        }
        groups_[e.length].count++;
        symbols_.push_back(e.symbol);
        ++code;
        ++index;
    }
}

std::uint16_t Decoder::decode(BitReader& br) const {
    std::uint32_t code = 0;
    for (int len = 1; len <= kMaxCodeLength; ++len) {
        code = (code << 1) | br.get_bit();
        const LengthGroup& g = groups_[len];
        if (g.count > 0 && code >= g.first_code && code < g.first_code + g.count) {
            return symbols_[g.first_index + (code - g.first_code)];
        }
    }
    throw CodecError("invalid huffman code in payload");
}

}  // namespace splitedge::huffman
