#include "tclt/partitions.hpp"

#include "tclt/errors.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace tclt {

namespace {

void check_pair_cap(int p, int cap) {
    if (cap > 64) throw std::invalid_argument("pair enumeration cap above 64 is not supported");
    if (p > cap) {
        throw CapExceededError("pair partition enumeration: p=" + std::to_string(p) +
                               " exceeds cap " + std::to_string(cap));
    }
}

void check_set_cap(int p, int cap) {
    if (p > cap) {
        throw CapExceededError("set partition enumeration: p=" + std::to_string(p) +
                               " exceeds cap " + std::to_string(cap));
    }
}

} // namespace

Partition Partition::from_blocks(int ground_size, std::vector<std::vector<int>> blocks) {
    if (ground_size < 0) throw std::invalid_argument("partition: negative ground size");
    std::vector<char> seen(static_cast<size_t>(ground_size) + 1, 0);
    int total = 0;
    for (auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("partition: empty block");
        std::sort(b.begin(), b.end());
        for (int x : b) {
            if (x < 1 || x > ground_size) {
                throw std::invalid_argument("partition: element " + std::to_string(x) +
                                            " outside 1.." + std::to_string(ground_size));
            }
            if (seen[static_cast<size_t>(x)]) {
                throw std::invalid_argument("partition: element " + std::to_string(x) + " repeated");
            }
            seen[static_cast<size_t>(x)] = 1;
            ++total;
        }
    }
    if (total != ground_size) throw std::invalid_argument("partition: blocks do not cover the ground set");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return Partition(ground_size, std::move(blocks));
}

Partition Partition::from_kernel(const std::vector<int>& word) {
    std::map<int, std::vector<int>> by_label;
    for (size_t i = 0; i < word.size(); ++i) by_label[word[i]].push_back(static_cast<int>(i) + 1);
    std::vector<std::vector<int>> blocks;
    blocks.reserve(by_label.size());
    for (auto& [label, elems] : by_label) blocks.push_back(std::move(elems));
    return from_blocks(static_cast<int>(word.size()), std::move(blocks));
}

bool Partition::is_pair_partition() const {
    for (const auto& b : blocks_)
        if (b.size() != 2) return false;
    return true;
}

std::vector<int> Partition::kernel() const {
    std::vector<int> word(static_cast<size_t>(ground_), -1);
    for (int bi = 0; bi < block_count(); ++bi)
        for (int x : blocks_[static_cast<size_t>(bi)]) word[static_cast<size_t>(x - 1)] = bi;
    return word;
}

std::string Partition::to_string() const {
    std::ostringstream os;
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
        if (bi) os << '|';
        for (size_t j = 0; j < blocks_[bi].size(); ++j) {
            if (j) os << ',';
            os << blocks_[bi][j];
        }
    }
    return os.str();
}

PairPartition::PairPartition(Partition p) : part_(std::move(p)) {
    if (!part_.is_pair_partition())
        throw std::invalid_argument("pair partition: block of size != 2 in " + part_.to_string());
    pairs_.reserve(static_cast<size_t>(part_.block_count()));
    for (const auto& b : part_.blocks()) pairs_.emplace_back(b[0], b[1]);
}

PairPartition PairPartition::from_pairs(int ground_size, std::vector<std::pair<int, int>> pairs) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(pairs.size());
    for (auto [a, b] : pairs) blocks.push_back({a, b});
    return PairPartition(Partition::from_blocks(ground_size, std::move(blocks)));
}

PairPartition PairPartition::parse(const std::string& text) {
    std::vector<std::vector<int>> blocks;
    std::string token;
    std::vector<int> current;
    auto flush_number = [&]() {
        if (token.empty()) throw std::invalid_argument("pairing: empty element in '" + text + "'");
        current.push_back(std::stoi(token));
        token.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == ',') {
            flush_number();
        } else if (c == '|') {
            flush_number();
            blocks.push_back(current);
            current.clear();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            token += c;
        } else {
            throw std::invalid_argument("pairing: unexpected character '" + std::string(1, c) + "'");
        }
    }
    flush_number();
    blocks.push_back(current);
    int ground = 0;
    for (const auto& b : blocks)
        for (int x : b) ground = std::max(ground, x);
    return PairPartition(Partition::from_blocks(ground, std::move(blocks)));
}

bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b) {
    // Walk the merged sequence; three or more ownership alternations mean
    // some v1 < w1 < v2 < w2 pattern exists.
    size_t i = 0, j = 0;
    int alternations = -1; // counts label switches; first element starts a run
    int last = -1;
    while (i < a.size() || j < b.size()) {
        int label;
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            label = 0;
            ++i;
        } else {
            label = 1;
            ++j;
        }
        if (label != last) {
            ++alternations;
            last = label;
        }
        if (alternations >= 3) return true;
    }
    return false;
}

CrossingGraph::CrossingGraph(const Partition& p) : n_(p.block_count()) {
    if (n_ > 64) throw CapExceededError("crossing graph: more than 64 blocks");
    adj_.assign(static_cast<size_t>(n_), 0);
    const auto& blocks = p.blocks();
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (blocks_cross(blocks[static_cast<size_t>(i)], blocks[static_cast<size_t>(j)])) {
                adj_[static_cast<size_t>(i)] |= 1ull << j;
                adj_[static_cast<size_t>(j)] |= 1ull << i;
            }
        }
    }
    comp_.assign(static_cast<size_t>(n_), -1);
    std::vector<int> color(static_cast<size_t>(n_), -1);
    std::vector<int> stack;
    for (int s = 0; s < n_; ++s) {
        if (comp_[static_cast<size_t>(s)] >= 0) continue;
        comp_[static_cast<size_t>(s)] = comp_count_;
        color[static_cast<size_t>(s)] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n_; ++w) {
                if (!adjacent(v, w)) continue;
                if (comp_[static_cast<size_t>(w)] < 0) {
                    comp_[static_cast<size_t>(w)] = comp_count_;
                    color[static_cast<size_t>(w)] = color[static_cast<size_t>(v)] ^ 1;
                    stack.push_back(w);
                } else if (color[static_cast<size_t>(w)] == color[static_cast<size_t>(v)]) {
                    bipartite_ = false;
                }
            }
        }
        ++comp_count_;
    }
}

int CrossingGraph::crossing_block_count() const {
    int c = 0;
    for (int i = 0; i < n_; ++i)
        if (adj_[static_cast<size_t>(i)] != 0) ++c;
    return c;
}

PartitionStats stats(const Partition& p) {
    CrossingGraph g(p);
    PartitionStats s;
    s.blocks = p.block_count();
    s.crossing_blocks = g.crossing_block_count();
    s.noncrossing_blocks = s.blocks - s.crossing_blocks;
    s.components = g.component_count();
    s.noncrossing = s.crossing_blocks == 0;
    s.connected = g.connected();
    s.bipartite = g.bipartite();
    return s;
}

bool is_noncrossing(const Partition& p) { return stats(p).noncrossing; }
bool is_connected(const Partition& p) { return stats(p).connected; }
bool is_bipartite(const Partition& p) { return stats(p).bipartite; }

bool is_connected_interval_definition(const Partition& p) {
    int n = p.ground_size();
    if (p.block_count() == 0) return false;
    // owner[x] = index of the block containing x; an interval [a,b] is a
    // union of blocks iff every block meeting it lies inside it.
    std::vector<int> owner(static_cast<size_t>(n) + 1, -1);
    for (int bi = 0; bi < p.block_count(); ++bi)
        for (int x : p.blocks()[static_cast<size_t>(bi)]) owner[static_cast<size_t>(x)] = bi;
    for (int a = 1; a <= n; ++a) {
        for (int b = a; b <= n; ++b) {
            if (a == 1 && b == n) continue; // proper subintervals only
            bool closed = true;
            for (int x = a; x <= b && closed; ++x) {
                const auto& blk = p.blocks()[static_cast<size_t>(owner[static_cast<size_t>(x)])];
                if (blk.front() < a || blk.back() > b) closed = false;
            }
            if (closed) return false;
        }
    }
    return true;
}

ClosureDecomposition noncrossing_closure(const PairPartition& p) {
    CrossingGraph g(p.partition());
    const auto& blocks = p.partition().blocks();
    int nc = g.component_count();
    std::vector<std::vector<int>> supports(static_cast<size_t>(nc));
    for (int bi = 0; bi < p.partition().block_count(); ++bi) {
        auto& sup = supports[static_cast<size_t>(g.component_labels()[static_cast<size_t>(bi)])];
        sup.insert(sup.end(), blocks[static_cast<size_t>(bi)].begin(), blocks[static_cast<size_t>(bi)].end());
    }
    for (auto& sup : supports) std::sort(sup.begin(), sup.end());
    // order components by least support element so they align with the
    // canonical order of the closure blocks
    std::vector<int> order(static_cast<size_t>(nc));
    for (int i = 0; i < nc; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return supports[static_cast<size_t>(a)].front() < supports[static_cast<size_t>(b)].front();
    });

    ClosureDecomposition d{Partition::from_blocks(p.ground_size(), supports), {}};
    d.components.reserve(static_cast<size_t>(nc));
    for (int oi = 0; oi < nc; ++oi) {
        int comp = order[static_cast<size_t>(oi)];
        const auto& sup = supports[static_cast<size_t>(comp)];
        std::vector<int> pos(static_cast<size_t>(p.ground_size()) + 1, 0);
        for (size_t k = 0; k < sup.size(); ++k) pos[static_cast<size_t>(sup[k])] = static_cast<int>(k) + 1;
        std::vector<std::pair<int, int>> pairs;
        for (int bi = 0; bi < p.partition().block_count(); ++bi) {
            if (g.component_labels()[static_cast<size_t>(bi)] != comp) continue;
            const auto& blk = blocks[static_cast<size_t>(bi)];
            pairs.emplace_back(pos[static_cast<size_t>(blk[0])], pos[static_cast<size_t>(blk[1])]);
        }
        d.components.push_back(
            PairPartition::from_pairs(static_cast<int>(sup.size()), std::move(pairs)));
    }
    return d;
}

PairPartition reassemble(const ClosureDecomposition& d) {
    std::vector<std::pair<int, int>> pairs;
    for (size_t ci = 0; ci < d.components.size(); ++ci) {
        const auto& sup = d.closure.blocks()[ci];
        for (auto [a, b] : d.components[ci].pairs()) {
            pairs.emplace_back(sup[static_cast<size_t>(a - 1)], sup[static_cast<size_t>(b - 1)]);
        }
    }
    return PairPartition::from_pairs(d.closure.ground_size(), std::move(pairs));
}

void for_each_pairing(int p, const PairingVisitor& visit, int cap) {
    if (p < 0 || p % 2 != 0) throw std::invalid_argument("pairing enumeration: p must be even and >= 0");
    check_pair_cap(p, cap);
    if (p == 0) {
        std::vector<std::pair<int, int>> empty;
        visit(empty);
        return;
    }
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(p / 2));
    std::uint32_t used = 0;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(pairs.size()) == p / 2) {
            visit(pairs);
            return;
        }
        int a = 1;
        while (used & (1u << a)) ++a;
        used |= 1u << a;
        for (int b = a + 1; b <= p; ++b) {
            if (used & (1u << b)) continue;
            used |= 1u << b;
            pairs.emplace_back(a, b);
            self(self);
            pairs.pop_back();
            used &= ~(1u << b);
        }
        used &= ~(1u << a);
    };
    rec(rec);
}

std::vector<PairPartition> enumerate_pair_partitions(int p, int cap) {
    std::vector<PairPartition> out;
    for_each_pairing(
        p, [&](const std::vector<std::pair<int, int>>& pairs) {
            out.push_back(PairPartition::from_pairs(p, pairs));
        },
        cap);
    return out;
}

void for_each_set_partition(int p, int min_block_size, const SetPartitionVisitor& visit, int cap) {
    if (p < 0) throw std::invalid_argument("set partition enumeration: negative p");
    if (min_block_size < 1) throw std::invalid_argument("set partition enumeration: min_block_size < 1");
    check_set_cap(p, cap);
    std::vector<std::vector<int>> blocks;
    if (p == 0) {
        visit(blocks);
        return;
    }
    // deficit = extra elements still owed to blocks below min_block_size;
    // prune when the remaining elements cannot cover it
    int deficit = 0;
    auto rec = [&](auto&& self, int next) -> void {
        int remaining = p - next + 1;
        if (deficit > remaining) return;
        if (next > p) {
            visit(blocks);
            return;
        }
        // index loop: deeper levels append to `blocks`, which may reallocate
        size_t existing = blocks.size();
        for (size_t bi = 0; bi < existing; ++bi) {
            int sz = static_cast<int>(blocks[bi].size());
            blocks[bi].push_back(next);
            if (sz < min_block_size) --deficit;
            self(self, next + 1);
            if (sz < min_block_size) ++deficit;
            blocks[bi].pop_back();
        }
        blocks.emplace_back(1, next);
        deficit += min_block_size - 1;
        self(self, next + 1);
        deficit -= min_block_size - 1;
        blocks.pop_back();
    };
    rec(rec, 1);
}

std::vector<Partition> enumerate_set_partitions(int p, int min_block_size, int cap) {
    std::vector<Partition> out;
    for_each_set_partition(
        p, min_block_size,
        [&](const std::vector<std::vector<int>>& blocks) {
            out.push_back(Partition::from_blocks(p, blocks));
        },
        cap);
    return out;
}

PairingClass classify_pairing(const std::vector<std::pair<int, int>>& pairs) {
    int k = static_cast<int>(pairs.size());
    PairingClass c;
    c.blocks = k;
    if (k == 0) {
        c.components = 0;
        c.bipartite = true;
        return c;
    }
    // pairs (a,b),(c,d) with a<b, c<d cross iff a<c<b<d or c<a<d<b
    std::vector<std::uint32_t> adj(static_cast<size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
        auto [a, b] = pairs[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            auto [cc, dd] = pairs[static_cast<size_t>(j)];
            bool crossing = (a < cc && cc < b && b < dd) || (cc < a && a < dd && dd < b);
            if (crossing) {
                adj[static_cast<size_t>(i)] |= 1u << j;
                adj[static_cast<size_t>(j)] |= 1u << i;
            }
        }
    }
    for (int i = 0; i < k; ++i)
        if (adj[static_cast<size_t>(i)]) ++c.crossing_blocks;
    std::vector<int> color(static_cast<size_t>(k), -1);
    c.bipartite = true;
    std::uint32_t unvisited = (k == 32) ? ~0u : ((1u << k) - 1);
    std::vector<int> stack;
    while (unvisited) {
        int s = std::countr_zero(unvisited);
        color[static_cast<size_t>(s)] = 0;
        unvisited &= unvisited - 1;
        stack.push_back(s);
        ++c.components;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            std::uint32_t nb = adj[static_cast<size_t>(v)];
            while (nb) {
                int w = std::countr_zero(nb);
                nb &= nb - 1;
                if (color[static_cast<size_t>(w)] < 0) {
                    color[static_cast<size_t>(w)] = color[static_cast<size_t>(v)] ^ 1;
                    unvisited &= ~(1u << w);
                    stack.push_back(w);
                } else if (color[static_cast<size_t>(w)] == color[static_cast<size_t>(v)]) {
                    c.bipartite = false;
                }
            }
        }
    }
    return c;
}

std::int64_t count_pair_partitions(int p) {
    if (p < 0 || p % 2 != 0) throw std::invalid_argument("count_pair_partitions: p must be even");
    std::int64_t r = 1;
    for (int j = 3; j <= p; j += 2) r *= j;
    return r;
}

namespace {

struct PairingCounts {
    std::int64_t noncrossing = 0;
    std::int64_t connected = 0;
    std::int64_t bipartite_connected = 0;
};

const PairingCounts& pairing_counts(int p, int cap) {
    static std::map<int, PairingCounts> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    PairingCounts pc;
    for_each_pairing(
        p,
        [&](const std::vector<std::pair<int, int>>& pairs) {
            PairingClass c = classify_pairing(pairs);
            if (c.crossing_blocks == 0) ++pc.noncrossing;
            if (c.components == 1) {
                ++pc.connected;
                if (c.bipartite) ++pc.bipartite_connected;
            }
        },
        cap);
    return cache.emplace(p, pc).first->second;
}

} // namespace

std::int64_t count_noncrossing_pairings(int p, int cap) { return pairing_counts(p, cap).noncrossing; }

std::int64_t count_connected_pairings(int p, int cap) { return pairing_counts(p, cap).connected; }

std::int64_t count_bipartite_connected_pairings(int p, int cap) {
    return pairing_counts(p, cap).bipartite_connected;
}

} // namespace tclt
