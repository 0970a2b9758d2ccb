#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ptflab {

using BitVec = std::vector<std::uint8_t>; // entries 0/1, index 0 = x_1

struct Literal {
    std::uint32_t var = 0; // 0-based internally; reports are 1-based
    bool negated = false;

    bool fires(const BitVec& x) const {
        bool v = x[var] != 0;
        return negated ? !v : v;
    }
    bool operator==(const Literal&) const = default;
};

inline void check_dim(std::size_t have, std::uint32_t want) {
    if (have != want)
        throw std::invalid_argument("input dimension mismatch: got " +
                                    std::to_string(have) + ", expected " +
                                    std::to_string(want));
}

// (ell_1,b_1),...,(ell_k,b_k), b_{k+1}
struct DecisionList {
    std::uint32_t n = 0;
    std::vector<std::pair<Literal, int>> items; // label in {-1,+1}
    int default_label = 1;

    std::size_t length() const { return items.size(); }

    int eval(const BitVec& x) const {
        check_dim(x.size(), n);
        for (const auto& [lit, b] : items)
            if (lit.fires(x)) return b;
        return default_label;
    }
};

// Same shape but falls to 0 when no literal fires.
struct ModifiedDecisionList {
    std::uint32_t n = 0;
    std::vector<std::pair<Literal, int>> items;

    std::size_t length() const { return items.size(); }

    int eval(const BitVec& x) const {
        check_dim(x.size(), n);
        for (const auto& [lit, b] : items)
            if (lit.fires(x)) return b;
        return 0;
    }
};

// Conjunction of literals over distinct variables.
struct Conjunction {
    std::vector<Literal> lits;

    bool eval(const BitVec& x) const {
        for (const auto& l : lits)
            if (!l.fires(x)) return false;
        return true;
    }
    std::size_t width() const { return lits.size(); }
};

struct RDecisionList {
    std::uint32_t n = 0;
    std::uint32_t r = 0; // max conjunction width
    std::vector<std::pair<Conjunction, int>> items;
    int default_label = 1;

    std::size_t length() const { return items.size(); }

    int eval(const BitVec& x) const {
        check_dim(x.size(), n);
        for (const auto& [c, b] : items)
            if (c.eval(x)) return b;
        return default_label;
    }
};

// Arena-allocated binary decision tree. A node is a leaf iff var < 0.
// child0 is taken when x_var = 0. Size = number of leaves.
struct DecisionTree {
    struct Node {
        int var = -1;       // -1 for leaf
        int label = 0;      // leaf payload
        int child0 = -1;
        int child1 = -1;
    };
    std::uint32_t n = 0;
    std::vector<Node> nodes;
    int root = -1;

    int add_leaf(int label) {
        nodes.push_back({-1, label, -1, -1});
        return int(nodes.size()) - 1;
    }
    int add_node(int var, int c0, int c1) {
        nodes.push_back({var, 0, c0, c1});
        return int(nodes.size()) - 1;
    }

    int eval(const BitVec& x) const {
        check_dim(x.size(), n);
        int i = root;
        while (nodes[i].var >= 0)
            i = x[nodes[i].var] ? nodes[i].child1 : nodes[i].child0;
        return nodes[i].label;
    }

    std::size_t size() const { // leaves
        std::size_t s = 0;
        for (const auto& nd : nodes)
            if (nd.var < 0) ++s;
        return s;
    }
};

struct ParityFunction {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> support; // sorted, distinct

    int eval(const BitVec& x) const {
        check_dim(x.size(), n);
        int ones = 0;
        for (auto i : support) ones ^= x[i];
        return ones ? -1 : +1;
    }
};

// (x_1,-1),(x_2,+1),...,(x_n,(-1)^n), default (-1)^{n+1}
inline DecisionList oddmaxbit(std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("oddmaxbit: n >= 1 required");
    DecisionList L;
    L.n = n;
    for (std::uint32_t i = 1; i <= n; ++i)
        L.items.push_back({Literal{i - 1, false}, (i % 2) ? -1 : +1});
    L.default_label = ((n + 1) % 2) ? -1 : +1;
    return L;
}

namespace detail {
// k distinct indices from [0,n), deterministic in the generator state.
inline std::vector<std::uint32_t> sample_distinct(std::uint32_t k, std::uint32_t n,
                                                  std::mt19937_64& g) {
    if (k > n) throw std::invalid_argument("need k <= n");
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::uint32_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::uint32_t> dist(i, n - 1);
        std::swap(pool[i], pool[dist(g)]);
    }
    pool.resize(k);
    return pool;
}
inline int coin_label(std::mt19937_64& g) {
    return (g() & 1) ? +1 : -1;
}
} // namespace detail

inline DecisionList random_decision_list(std::uint32_t k, std::uint32_t n,
                                         std::uint64_t seed) {
    std::mt19937_64 g(seed);
    DecisionList L;
    L.n = n;
    for (auto v : detail::sample_distinct(k, n, g))
        L.items.push_back({Literal{v, (g() & 1) != 0}, detail::coin_label(g)});
    L.default_label = detail::coin_label(g);
    return L;
}

inline ParityFunction random_parity(std::uint32_t k, std::uint32_t n,
                                    std::uint64_t seed) {
    std::mt19937_64 g(seed);
    ParityFunction p;
    p.n = n;
    p.support = detail::sample_distinct(k, n, g);
    std::sort(p.support.begin(), p.support.end());
    return p;
}

// Break L sequentially into ceil(k/h) blocks of length h; the final block
// may be shorter. The default label rides alongside.
struct SplitBlocks {
    std::vector<ModifiedDecisionList> blocks;
    int default_label;
};

inline SplitBlocks split_blocks(const DecisionList& L, std::uint32_t h) {
    if (h < 1) throw std::invalid_argument("split_blocks: h >= 1 required");
    SplitBlocks out{{}, L.default_label};
    for (std::size_t start = 0; start < L.items.size(); start += h) {
        ModifiedDecisionList f;
        f.n = L.n;
        std::size_t end = std::min(start + h, L.items.size());
        f.items.assign(L.items.begin() + start, L.items.begin() + end);
        out.blocks.push_back(std::move(f));
    }
    return out;
}

// rank(leaf) = 0; rank(node) = max(r0,r1) if r0 != r1, else r0 + 1.
inline int tree_rank(const DecisionTree& T, int node) {
    const auto& nd = T.nodes[node];
    if (nd.var < 0) return 0;
    int r0 = tree_rank(T, nd.child0);
    int r1 = tree_rank(T, nd.child1);
    return r0 == r1 ? r0 + 1 : std::max(r0, r1);
}

inline int tree_rank(const DecisionTree& T) { return tree_rank(T, T.root); }

namespace detail {
// Rank recursion: recurse into the lower-rank child first, guarding its
// items with the literal that routes there; the other child's list follows
// unguarded. Ties break toward child0.
inline void tree_to_rdl_rec(const DecisionTree& T, int node, RDecisionList& out) {
    const auto& nd = T.nodes[node];
    if (nd.var < 0) {
        out.default_label = nd.label;
        return;
    }
    int r0 = tree_rank(T, nd.child0);
    int r1 = tree_rank(T, nd.child1);
    bool low_first = r0 <= r1;
    int low = low_first ? nd.child0 : nd.child1;
    int high = low_first ? nd.child1 : nd.child0;
    Literal guard{std::uint32_t(nd.var), low_first}; // true iff x routes to `low`

    RDecisionList sub;
    sub.n = T.n;
    tree_to_rdl_rec(T, low, sub);
    for (auto& [c, b] : sub.items) {
        c.lits.insert(c.lits.begin(), guard);
        out.items.emplace_back(std::move(c), b);
    }
    out.items.push_back({Conjunction{{guard}}, sub.default_label});
    tree_to_rdl_rec(T, high, out);
}
} // namespace detail

inline RDecisionList tree_to_rdl(const DecisionTree& T) {
    RDecisionList out;
    out.n = T.n;
    detail::tree_to_rdl_rec(T, T.root, out);
    std::size_t r = 0;
    for (const auto& [c, b] : out.items) r = std::max(r, c.width());
    out.r = std::uint32_t(r);
    return out;
}

// Mask helpers for exhaustive sweeps: bit i of the mask is x_{i+1}.
inline BitVec mask_to_bits(std::uint64_t mask, std::uint32_t n) {
    BitVec x(n);
    for (std::uint32_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
    return x;
}

// Bit-vector <-> 0/1 string, x_1 leftmost.
inline std::string bits_to_string(const BitVec& x) {
    std::string s;
    s.reserve(x.size());
    for (auto b : x) s.push_back(b ? '1' : '0');
    return s;
}

inline BitVec bits_from_string(const std::string& s) {
    BitVec x;
    x.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit string must be 0/1");
        x.push_back(c == '1');
    }
    return x;
}

} // namespace ptflab
