#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tclt {

// Enumeration guards: (p-1)!! and Bell(p) growth make these the practical
// ceilings for exact work; callers may lower them, raising needs intent.
inline constexpr int kPairEnumerationCap = 16;
inline constexpr int kSetEnumerationCap = 12;

// Set partition of {1,...,p}. Canonical form: elements sorted inside each
// block, blocks sorted by least element.
class Partition {
public:
    static Partition from_blocks(int ground_size, std::vector<std::vector<int>> blocks);
    // Word of block labels, one per ground point (labels by first occurrence).
    static Partition from_kernel(const std::vector<int>& word);

    int ground_size() const { return ground_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    bool is_pair_partition() const;
    // block label of each point, 0-based, in canonical block order
    std::vector<int> kernel() const;

    bool operator==(const Partition& o) const = default;
    std::string to_string() const; // "1,3|2,4"

private:
    Partition(int ground, std::vector<std::vector<int>> blocks)
        : ground_(ground), blocks_(std::move(blocks)) {}
    int ground_ = 0;
    std::vector<std::vector<int>> blocks_;
};

// Pair partition (perfect matching) of {1,...,p}, p even.
class PairPartition {
public:
    explicit PairPartition(Partition p);
    static PairPartition from_pairs(int ground_size, std::vector<std::pair<int, int>> pairs);
    static PairPartition parse(const std::string& text); // "1,3|2,4"

    const Partition& partition() const { return part_; }
    // sorted by first element; first < second within each pair
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    int ground_size() const { return part_.ground_size(); }
    std::string to_string() const { return part_.to_string(); }

    bool operator==(const PairPartition& o) const = default;

private:
    Partition part_;
    std::vector<std::pair<int, int>> pairs_;
};

// Blocks V,W cross when some v1 < w1 < v2 < w2 with v_i in V, w_i in W.
bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b);

// Crossing graph G(pi): vertices = blocks, edges = crossing pairs.
class CrossingGraph {
public:
    explicit CrossingGraph(const Partition& p);

    int vertex_count() const { return n_; }
    bool adjacent(int i, int j) const { return (adj_[i] >> j) & 1u; }
    // 0-based component index per block, components ordered by least block
    const std::vector<int>& component_labels() const { return comp_; }
    int component_count() const { return comp_count_; }
    bool connected() const { return comp_count_ == 1 && n_ > 0; }
    bool bipartite() const { return bipartite_; }
    int crossing_block_count() const; // blocks with at least one edge

private:
    int n_;
    std::vector<std::uint64_t> adj_; // row bitmasks; block counts stay <= 64 under the caps
    std::vector<int> comp_;
    int comp_count_ = 0;
    bool bipartite_ = true;
};

struct PartitionStats {
    int blocks = 0;
    int crossing_blocks = 0;    // cr: blocks crossed by at least one other
    int noncrossing_blocks = 0; // ncr = blocks - cr
    int components = 0;         // cc: components of the crossing graph
    bool noncrossing = false;
    bool connected = false; // crossing graph connected
    bool bipartite = false; // crossing graph two-colorable
};

PartitionStats stats(const Partition& p);
bool is_noncrossing(const Partition& p);
bool is_connected(const Partition& p);
bool is_bipartite(const Partition& p);

// Alternative connectedness: no proper subinterval of {1,...,p} is a union
// of blocks. Agrees with crossing-graph connectedness on pair partitions.
bool is_connected_interval_definition(const Partition& p);

// Noncrossing closure of a pairing: blocks = supports of the crossing-graph
// components. Each component is returned relabelled to {1,...,2k} through the
// order-preserving bijection with its support.
struct ClosureDecomposition {
    Partition closure;
    std::vector<PairPartition> components; // aligned with closure.blocks()
};

ClosureDecomposition noncrossing_closure(const PairPartition& p);
// Inverse of the decomposition; reassemble(noncrossing_closure(pi)) == pi.
PairPartition reassemble(const ClosureDecomposition& d);

// Streaming enumeration of pair partitions of {1,...,p} in canonical order
// (least free point pairs with each larger partner, ascending). The vector
// passed to the visitor is reused between calls.
using PairingVisitor = std::function<void(const std::vector<std::pair<int, int>>&)>;
void for_each_pairing(int p, const PairingVisitor& visit, int cap = kPairEnumerationCap);

std::vector<PairPartition> enumerate_pair_partitions(int p, int cap = kPairEnumerationCap);

// Set partitions of {1,...,p} whose blocks all have >= min_block_size
// elements, canonical order (restricted growth strings). Buffer reused.
using SetPartitionVisitor = std::function<void(const std::vector<std::vector<int>>&)>;
void for_each_set_partition(int p, int min_block_size, const SetPartitionVisitor& visit,
                            int cap = kSetEnumerationCap);

std::vector<Partition> enumerate_set_partitions(int p, int min_block_size = 1,
                                                int cap = kSetEnumerationCap);

// Classification of a pairing given as sorted pairs, without building a
// Partition. Independent of stats() on purpose: the two paths cross-check
// each other in the test suite.
struct PairingClass {
    int blocks = 0;
    int crossing_blocks = 0;
    int components = 0;
    bool bipartite = false;
};
PairingClass classify_pairing(const std::vector<std::pair<int, int>>& pairs);

std::int64_t count_pair_partitions(int p); // (p-1)!!
std::int64_t count_noncrossing_pairings(int p, int cap = kPairEnumerationCap);
std::int64_t count_connected_pairings(int p, int cap = kPairEnumerationCap);
std::int64_t count_bipartite_connected_pairings(int p, int cap = kPairEnumerationCap);

} // namespace tclt
