#include "rdh/codec.hpp"

#include <algorithm>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <string>

#include "rdh/errors.hpp"

namespace rdh {

void CodecParams::validate() const {
    if (t < 1) throw ParamError("t must be >= 1, got " + std::to_string(t));
    if (l_fix < 2 || l_fix > 8)
        throw ParamError("l_fix must be in [2, 8], got " + std::to_string(l_fix));
    if (l_run < 2 || l_run > 16)
        throw ParamError("l_run must be in [2, 16], got " + std::to_string(l_run));
}

bool HuffmanTable::empty() const { return present_symbols() == 0; }

std::size_t HuffmanTable::present_symbols() const {
    return static_cast<std::size_t>(
        std::count_if(code_lengths.begin(), code_lengths.end(),
                      [](std::uint8_t len) { return len != 0; }));
}

HuffmanTable HuffmanTable::from_lengths(int symbol_bits,
                                        std::vector<std::uint8_t> lengths) {
    const std::size_t n = std::size_t{1} << symbol_bits;
    if (lengths.size() != n) {
        throw CorruptionError("Huffman length profile has wrong size");
    }
    HuffmanTable table;
    table.symbol_bits = symbol_bits;
    table.code_lengths = std::move(lengths);
    table.codewords.resize(n);

    std::vector<std::size_t> order;
    for (std::size_t s = 0; s < n; ++s) {
        if (table.code_lengths[s] != 0) order.push_back(s);
    }
    if (order.empty()) return table;

    // One-symbol degenerate case: the single codeword is "0".
    if (order.size() == 1) {
        if (table.code_lengths[order[0]] != 1) {
            throw CorruptionError("degenerate Huffman table must use a 1-bit code");
        }
        table.codewords[order[0]] = Bits{0};
        return table;
    }

    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return table.code_lengths[a] < table.code_lengths[b];
    });

    // Canonical assignment on a binary-string counter; a carry past the MSB
    // means the length profile over-subscribes the code space.
    Bits code(table.code_lengths[order[0]], 0);
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        const std::size_t sym = order[idx];
        if (idx != 0) {
            std::size_t b = code.size();
            for (;;) {
                if (b == 0) throw CorruptionError("Huffman lengths violate Kraft inequality");
                --b;
                if (code[b] == 0) {
                    code[b] = 1;
                    break;
                }
                code[b] = 0;
            }
            code.resize(table.code_lengths[sym], 0);  // lengths ascend, pad zeros
        }
        table.codewords[sym] = code;
    }

    // Completeness: the next increment must exactly exhaust the code space.
    for (std::size_t b = code.size(); b-- > 0;) {
        if (code[b] == 0) {
            throw CorruptionError("Huffman lengths do not satisfy Kraft equality");
        }
    }
    return table;
}

HuffmanTable build_huffman(const std::vector<std::uint64_t>& freq, int symbol_bits) {
    const std::size_t n = std::size_t{1} << symbol_bits;
    if (freq.size() != n) {
        throw SizeError("frequency table size does not match symbol width");
    }

    struct Node {
        std::uint64_t count;
        std::uint32_t min_symbol;  // smallest symbol in the subtree, for determinism
        int left = -1, right = -1;
        int symbol = -1;
    };
    std::vector<Node> nodes;
    using Entry = std::tuple<std::uint64_t, std::uint32_t, int>;  // count, min_symbol, index
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

    for (std::size_t s = 0; s < n; ++s) {
        if (freq[s] == 0) continue;
        nodes.push_back({freq[s], static_cast<std::uint32_t>(s), -1, -1,
                         static_cast<int>(s)});
        queue.emplace(freq[s], static_cast<std::uint32_t>(s),
                      static_cast<int>(nodes.size() - 1));
    }

    std::vector<std::uint8_t> lengths(n, 0);
    if (nodes.empty()) {
        return HuffmanTable::from_lengths(symbol_bits, std::move(lengths));
    }
    if (nodes.size() == 1) {
        lengths[static_cast<std::size_t>(nodes[0].symbol)] = 1;
        return HuffmanTable::from_lengths(symbol_bits, std::move(lengths));
    }

    while (queue.size() > 1) {
        const auto [ca, ma, ia] = queue.top();
        queue.pop();
        const auto [cb, mb, ib] = queue.top();
        queue.pop();
        nodes.push_back({ca + cb, std::min(ma, mb), ia, ib, -1});
        queue.emplace(ca + cb, std::min(ma, mb), static_cast<int>(nodes.size() - 1));
    }

    // Depth-first walk assigns code lengths.
    std::vector<std::pair<int, std::uint8_t>> stack{{std::get<2>(queue.top()), 0}};
    while (!stack.empty()) {
        const auto [idx, depth] = stack.back();
        stack.pop_back();
        const Node& node = nodes[static_cast<std::size_t>(idx)];
        if (node.symbol >= 0) {
            lengths[static_cast<std::size_t>(node.symbol)] = depth;
        } else {
            stack.emplace_back(node.left, static_cast<std::uint8_t>(depth + 1));
            stack.emplace_back(node.right, static_cast<std::uint8_t>(depth + 1));
        }
    }
    return HuffmanTable::from_lengths(symbol_bits, std::move(lengths));
}

namespace {

inline std::size_t run_length(const Bits& seq, std::size_t pos) {
    const std::uint8_t bit = seq[pos];
    std::size_t end = pos + 1;
    while (end < seq.size() && seq[end] == bit) ++end;
    return end - pos;
}

inline std::uint32_t symbol_at(const Bits& seq, std::size_t pos, int width) {
    std::uint32_t sym = 0;
    for (int b = 0; b < width; ++b) {
        sym = (sym << 1) | seq[pos + static_cast<std::size_t>(b)];
    }
    return sym;
}

// Escaped run records carry their overshoot as an Elias-gamma value, so a
// run of any length fits one record and short overshoots stay cheap.
void append_gamma(Bits& out, std::uint64_t v) {  // v >= 1
    const int width = std::bit_width(v);
    for (int i = 1; i < width; ++i) out.push_back(0);
    append_uint(out, v, width);
}

std::uint64_t read_gamma(const Bits& in, std::size_t& pos) {
    int zeros = 0;
    for (;;) {
        if (pos >= in.size()) throw CorruptionError("truncated run record");
        if (in[pos++] != 0) break;
        if (++zeros > 62) throw CorruptionError("run record overshoot too large");
    }
    std::uint64_t v = 1;
    for (int i = 0; i < zeros; ++i) {
        if (pos >= in.size()) throw CorruptionError("truncated run record");
        v = (v << 1) | in[pos++];
    }
    return v;
}

// Shared scanner for counting and encoding. Calls on_symbol(symbol) for each
// short-run interception and on_run(length, bit) once per maximal run that
// becomes a run record.
template <typename OnSymbol, typename OnRun>
void scan(const Bits& seq, const CodecParams& params, OnSymbol&& on_symbol,
          OnRun&& on_run) {
    const std::size_t n = seq.size();
    const std::size_t l_fix = static_cast<std::size_t>(params.l_fix);

    std::size_t pos = 0;
    while (pos < n) {
        const std::size_t len = run_length(seq, pos);
        if (len >= l_fix || n - pos < l_fix) {
            on_run(len, seq[pos]);  // long run, or the tail rule
            pos += len;
        } else {
            on_symbol(symbol_at(seq, pos, params.l_fix));
            pos += l_fix;
        }
    }
}

}  // namespace

std::vector<std::uint64_t> count_symbols(std::span<const Bits> sequences,
                                         const CodecParams& params) {
    params.validate();
    std::vector<std::uint64_t> freq(params.symbol_count(), 0);
    for (const Bits& seq : sequences) {
        scan(
            seq, params, [&](std::uint32_t sym) { ++freq[sym]; },
            [](std::size_t, std::uint8_t) {});
    }
    return freq;
}

Bits encode(const Bits& seq, const CodecParams& params, const HuffmanTable& table) {
    params.validate();
    const std::uint64_t escape = (std::uint64_t{1} << params.l_run) - 1;
    Bits out;
    out.reserve(seq.size() / 4 + 16);
    scan(
        seq, params,
        [&](std::uint32_t sym) {
            if (table.code_lengths[sym] == 0) {
                throw std::logic_error("symbol " + std::to_string(sym) +
                                       " missing from Huffman table");
            }
            out.push_back(1);
            const Bits& cw = table.codewords[sym];
            out.insert(out.end(), cw.begin(), cw.end());
        },
        [&](std::size_t len, std::uint8_t bit) {
            out.push_back(0);
            if (len < escape) {
                append_uint(out, len, params.l_run);
            } else {
                append_uint(out, escape, params.l_run);
                append_gamma(out, len - escape + 1);
            }
            out.push_back(bit);
        });
    return out;
}

namespace {

// Prefix-code walker over explicit codewords; handles non-canonical tables.
struct DecodeTree {
    struct Node {
        int child[2] = {-1, -1};
        int symbol = -1;
    };
    std::vector<Node> nodes;

    explicit DecodeTree(const HuffmanTable& table) {
        nodes.emplace_back();
        const std::size_t n = table.code_lengths.size();
        for (std::size_t s = 0; s < n; ++s) {
            if (table.code_lengths[s] == 0) continue;
            int at = 0;
            for (std::uint8_t bit : table.codewords[s]) {
                if (nodes[static_cast<std::size_t>(at)].symbol >= 0) {
                    throw CorruptionError("Huffman codeword is not prefix-free");
                }
                int next = nodes[static_cast<std::size_t>(at)].child[bit];
                if (next < 0) {
                    next = static_cast<int>(nodes.size());
                    nodes[static_cast<std::size_t>(at)].child[bit] = next;
                    nodes.emplace_back();
                }
                at = next;
            }
            Node& leaf = nodes[static_cast<std::size_t>(at)];
            if (leaf.symbol >= 0 || leaf.child[0] >= 0 || leaf.child[1] >= 0) {
                throw CorruptionError("Huffman codeword is not prefix-free");
            }
            leaf.symbol = static_cast<int>(s);
        }
    }
};

}  // namespace

Bits decode(const Bits& coded, const CodecParams& params, const HuffmanTable& table,
            std::size_t target_len) {
    params.validate();
    const DecodeTree tree(table);
    const std::size_t l_fix = static_cast<std::size_t>(params.l_fix);
    const std::uint64_t escape = (std::uint64_t{1} << params.l_run) - 1;

    Bits out;
    out.reserve(target_len);
    std::size_t i = 0;
    while (out.size() < target_len) {
        if (i >= coded.size()) {
            throw CorruptionError("coded stream exhausted before target length");
        }
        const std::uint8_t prefix = coded[i++];
        if (prefix == 0) {
            if (i + static_cast<std::size_t>(params.l_run) + 1 > coded.size()) {
                throw CorruptionError("truncated run record");
            }
            std::uint64_t len = read_uint(coded, i, params.l_run);
            i += static_cast<std::size_t>(params.l_run);
            if (len == escape) {
                len = escape + read_gamma(coded, i) - 1;
            }
            if (i >= coded.size()) {
                throw CorruptionError("truncated run record");
            }
            const std::uint8_t bit = coded[i++];
            if (len == 0) {
                throw CorruptionError("run record with zero length");
            }
            if (out.size() + len > target_len) {
                throw CorruptionError("run record overflows target length");
            }
            out.insert(out.end(), static_cast<std::size_t>(len), bit);
        } else {
            int at = 0;
            while (tree.nodes[static_cast<std::size_t>(at)].symbol < 0) {
                if (i >= coded.size()) {
                    throw CorruptionError("truncated Huffman codeword");
                }
                at = tree.nodes[static_cast<std::size_t>(at)].child[coded[i++]];
                if (at < 0) {
                    throw CorruptionError("invalid Huffman codeword");
                }
            }
            if (out.size() + l_fix > target_len) {
                throw CorruptionError("symbol record overflows target length");
            }
            const auto sym = static_cast<std::uint32_t>(
                tree.nodes[static_cast<std::size_t>(at)].symbol);
            append_uint(out, sym, params.l_fix);
        }
    }
    if (i != coded.size()) {
        throw CorruptionError("trailing bits after decoded sequence");
    }
    return out;
}

CompressedPlane compress_plane(const BitPlane& plane, const CodecParams& params,
                               const HuffmanTable& table) {
    CompressedPlane best;
    bool have = false;
    for (int idx = 0; idx < 4; ++idx) {
        const RearrangeMode mode = RearrangeMode::from_index(idx);
        Bits payload = encode(rearrange(plane, params.t, mode), params, table);
        if (!have || payload.size() < best.payload.size()) {
            best = CompressedPlane{false, mode, std::move(payload)};
            have = true;
        }
    }
    if (best.payload.size() + 3 >= plane.bits.size() + 1) {
        return CompressedPlane{true, RearrangeMode{}, plane.bits};
    }
    return best;
}

}  // namespace rdh
