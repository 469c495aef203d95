#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmc/bounds.hpp"
#include "qmc/codes.hpp"
#include "qmc/errors.hpp"
#include "qmc/matrix.hpp"
#include "qmc/rng.hpp"
#include "qmc/submodule.hpp"
#include "qmc/weights.hpp"

namespace qmc {

/// A single-source multicast network: a DAG whose edge order fixes the
/// coordinate indices of ring^n. Source edges occupy the first m positions
/// and the order is topological, so every pattern-fitting coefficient matrix
/// is strictly upper triangular.
struct NetworkSpec {
    Ring ring = Ring::prime_field(2);
    std::vector<std::string> node_names;
    std::vector<std::pair<int, int>> edges;  // (tail, head) node indices
    int source = -1;
    std::vector<int> sinks;  // in declaration order
    int m = 0;
    // explicit coefficients keyed by 0-based (edge i, edge j)
    std::map<std::pair<int, int>, std::int64_t> coefficients;

    int edge_count() const { return static_cast<int>(edges.size()); }

    std::vector<int> sink_edges(int t) const {
        std::vector<int> out;
        for (int i = 0; i < edge_count(); ++i)
            if (edges[i].second == t) out.push_back(i);
        return out;
    }

    bool is_sink(int node) const {
        return std::find(sinks.begin(), sinks.end(), node) != sinks.end();
    }
};

namespace detail {

/// Kahn ranks with the source forced to rank 0. Throws on cycles.
inline std::vector<int> node_ranks(const NetworkSpec& net) {
    int nn = static_cast<int>(net.node_names.size());
    std::vector<int> indeg(nn, 0);
    for (auto [tail, head] : net.edges) ++indeg[head];
    if (indeg[net.source] != 0) throw FormatError("source node has incoming edges");
    std::vector<int> order;
    std::vector<int> queue;
    queue.push_back(net.source);
    for (int v = 0; v < nn; ++v)
        if (v != net.source && indeg[v] == 0) queue.push_back(v);
    std::vector<int> rank(nn, -1);
    std::size_t qi = 0;
    int next_rank = 0;
    std::vector<int> deg = indeg;
    while (qi < queue.size()) {
        int v = queue[qi++];
        rank[v] = next_rank++;
        for (int i = 0; i < net.edge_count(); ++i) {
            if (net.edges[i].first != v) continue;
            if (--deg[net.edges[i].second] == 0) queue.push_back(net.edges[i].second);
        }
    }
    if (next_rank != nn) throw FormatError("network graph contains a cycle");
    return rank;
}

inline bool edge_order_valid(const NetworkSpec& net) {
    for (int i = 0; i < net.edge_count(); ++i) {
        bool is_source_edge = net.edges[i].first == net.source;
        if (is_source_edge != (i < net.m)) return false;
    }
    for (int i = 0; i < net.edge_count(); ++i)
        for (int j = 0; j <= i; ++j)
            if (net.edges[i].second == net.edges[j].first) return false;  // needs i < j
    return true;
}

}  // namespace detail

/// Validates a network and canonicalizes its edge order: source edges first,
/// then topological by tail. An already-valid order (such as a file written
/// in transmission order) is kept verbatim. With keep_order set, an invalid
/// order is an error instead.
inline void finalize_network(NetworkSpec& net, bool keep_order = false) {
    if (net.source < 0) throw FormatError("network has no source node");
    if (net.sinks.empty()) throw FormatError("network has no sink nodes");
    int source_edges = 0;
    for (auto [tail, head] : net.edges) {
        if (tail == head) throw FormatError("self-loop edge");
        if (tail == net.source) ++source_edges;
    }
    if (net.m == 0) net.m = source_edges;
    if (net.m != source_edges)
        throw FormatError("declared m=" + std::to_string(net.m) + " but source has " +
                          std::to_string(source_edges) + " outgoing edges");
    if (net.m == 0) throw FormatError("source has no outgoing edges");

    std::vector<int> rank = detail::node_ranks(net);  // also rejects cycles
    if (detail::edge_order_valid(net)) return;
    if (keep_order) throw FormatError("edge order is not topological with source edges first");

    std::vector<int> perm(net.edge_count());
    for (int i = 0; i < net.edge_count(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        bool sa = net.edges[a].first == net.source, sb = net.edges[b].first == net.source;
        if (sa != sb) return sa;
        return rank[net.edges[a].first] < rank[net.edges[b].first];
    });
    std::vector<std::pair<int, int>> edges(net.edge_count());
    std::vector<int> inv(net.edge_count());
    for (int i = 0; i < net.edge_count(); ++i) {
        edges[i] = net.edges[perm[i]];
        inv[perm[i]] = i;
    }
    net.edges = std::move(edges);
    std::map<std::pair<int, int>, std::int64_t> remapped;
    for (const auto& [key, val] : net.coefficients)
        remapped[{inv[key.first], inv[key.second]}] = val;
    net.coefficients = std::move(remapped);
    if (!detail::edge_order_valid(net))
        throw FormatError("edge order cannot be canonicalized");  // unreachable for valid DAGs
}

/// Adjacency pattern of the network's line graph: (i,j) set iff edge i ends
/// where edge j starts.
inline std::vector<std::vector<std::uint8_t>> line_graph_pattern(const NetworkSpec& net) {
    int n = net.edge_count();
    std::vector<std::vector<std::uint8_t>> pattern(n, std::vector<std::uint8_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (net.edges[i].second == net.edges[j].first) pattern[i][j] = 1;
    return pattern;
}

struct CoeffMode {
    enum class Kind { ones, from_file, random } kind = Kind::ones;
    std::uint64_t seed = 0;

    static CoeffMode ones() { return {Kind::ones, 0}; }
    static CoeffMode from_file() { return {Kind::from_file, 0}; }
    static CoeffMode random(std::uint64_t seed) { return {Kind::random, seed}; }
};

/// Local-coefficient matrix K fitting the line-graph pattern. In the
/// canonical edge order K is strictly upper triangular, so I-K is always
/// invertible. Modes: all ones; the file's explicit values (defaulting to 1
/// on unlisted pattern entries); or seeded uniform nonzero values.
inline RingMatrix assign_coefficients(const NetworkSpec& net, const CoeffMode& mode) {
    auto pattern = line_graph_pattern(net);
    int n = net.edge_count();
    RingMatrix k(net.ring, n, n);
    SplitMix64 rng(mode.seed);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!pattern[i][j]) continue;
            switch (mode.kind) {
                case CoeffMode::Kind::ones:
                case CoeffMode::Kind::from_file: k.at(i, j) = 1; break;
                case CoeffMode::Kind::random:
                    k.at(i, j) = 1 + static_cast<std::int64_t>(
                                          rng.below(static_cast<std::uint64_t>(net.ring.cardinality()) - 1));
                    break;
            }
        }
    if (mode.kind == CoeffMode::Kind::from_file) {
        for (const auto& [key, val] : net.coefficients) {
            auto [i, j] = key;
            if (i < 0 || j < 0 || i >= n || j >= n)
                throw FormatError("coefficient index out of range");
            if (!pattern[i][j] && val % net.ring.cardinality() != 0)
                throw PatternViolationError("coefficient (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) +
                                            ") lies outside the line-graph pattern");
            if (pattern[i][j]) k.at(i, j) = ((val % net.ring.cardinality()) +
                                              net.ring.cardinality()) % net.ring.cardinality();
        }
    }
    return k;
}

/// F = (I-K)^{-1} = I + K + K^2 + ...; terminates because pattern-fitting K
/// in topological edge order is nilpotent.
inline RingMatrix transfer_matrix(const RingMatrix& k) {
    int n = k.rows();
    if (n != k.cols()) throw OutOfRangeError("transfer_matrix: K must be square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (k.at(i, j) != 0)
                throw OutOfRangeError("transfer_matrix: K is not strictly upper triangular");
    RingMatrix f = RingMatrix::identity(k.ring(), n);
    RingMatrix term = RingMatrix::identity(k.ring(), n);
    for (int step = 0; step < n; ++step) {
        term = mat_mul(term, k);
        if (term.is_zero()) break;
        f = mat_add(f, term);
    }
    return f;
}

/// Embeds an m-length message as [x, 0] in ring^n.
inline Vec embed_message(const Vec& msg, int n) {
    Vec out(n, 0);
    for (std::size_t i = 0; i < msg.size(); ++i) out[i] = msg[i];
    return out;
}

/// All of ring^m, in lexicographic order.
inline std::vector<Vec> all_messages(const Ring& ring, int m,
                                     std::size_t cap = std::size_t{1} << 16) {
    if (!power_within(ring, m, cap)) throw CapExceededError("message space exceeds cap", cap);
    std::vector<Vec> out;
    Vec v(m, 0);
    do out.push_back(v);
    while (vec_next(ring, v));
    return out;
}

/// Everything a sink sees: its incident edge indices, the corresponding
/// columns of F, their left kernel (errors invisible to the sink), and the
/// sink's code as a quotient code with the embedded messages as coset
/// representatives (deduplicated by coset).
struct SinkView {
    int sink;                       // node index; -1 for synthetic views
    std::vector<int> edge_indices;  // 0-based positions of E_t
    RingMatrix Ft;                  // n x n_t
    Submodule Kt;
    QuotientCode Ct;
};

inline SinkView sink_view(const NetworkSpec& net, const RingMatrix& f, int t,
                          const std::vector<Vec>& messages, const WeightFunction& w,
                          std::size_t span_cap = kDefaultSpanCap) {
    if (!net.is_sink(t))
        throw NotASinkError("node " + net.node_names[t] + " is not a sink");
    std::vector<int> et = net.sink_edges(t);
    RingMatrix ft = f.columns(et);
    Submodule kt = Submodule::span(net.ring, net.edge_count(), left_kernel(ft).row_list(), span_cap);
    std::vector<Vec> reps;
    for (const auto& msg : messages) {
        Vec x = embed_message(msg, net.edge_count());
        bool duplicate = false;
        for (const auto& r : reps)
            if (kt.contains(vec_sub(net.ring, x, r))) {
                duplicate = true;
                break;
            }
        if (!duplicate) reps.push_back(std::move(x));
    }
    return SinkView{t, et, std::move(ft), kt, QuotientCode(kt, std::move(reps), w)};
}

/// Per sink: is the sink map injective on the embedded message set?
inline std::map<int, bool> multicast_check(const NetworkSpec& net, const RingMatrix& f,
                                           const std::vector<Vec>& messages) {
    std::map<int, bool> out;
    for (int t : net.sinks) {
        RingMatrix ft = f.columns(net.sink_edges(t));
        std::set<Vec> images;
        for (const auto& msg : messages)
            images.insert(vec_mat_mul(embed_message(msg, net.edge_count()), ft));
        out[t] = images.size() == messages.size();
    }
    return out;
}

struct SinkParams {
    int sink = -1;
    int n_t = 0;
    int s_t = 0;
    int ell_t = 0;
    std::size_t size = 0;
    std::optional<Rat> d;
    std::optional<BoundReport> bound;  // combined bound at (n, s_t, ell_t, d)
};

struct NetworkCodeParams {
    int n = 0;
    std::vector<SinkParams> per_sink;
    std::size_t code_size = 0;  // min over sinks of |C_t|

    /// e.g. "(15, {(2,15,4,1),(3,15,4,1)}) network code of size 4"
    std::string summary_line() const {
        std::string out = "(" + std::to_string(n) + ", {";
        for (std::size_t i = 0; i < per_sink.size(); ++i) {
            if (i) out += ",";
            const SinkParams& p = per_sink[i];
            out += "(" + std::to_string(p.n_t) + "," + std::to_string(p.s_t) + "," +
                   std::to_string(p.size) + "," + (p.d ? p.d->get_str() : "-") + ")";
        }
        out += "}) network code of size " + std::to_string(code_size);
        return out;
    }
};

/// The (n, {(n_t, s_t, l_t, |C_t|, d_t)}) parameter table of the network
/// code, plus the combined size bound evaluated per sink.
inline NetworkCodeParams network_code_params(const NetworkSpec& net, const RingMatrix& f,
                                             const std::vector<Vec>& messages,
                                             const WeightFunction& w,
                                             std::size_t span_cap = kDefaultSpanCap) {
    NetworkCodeParams out;
    out.n = net.edge_count();
    std::optional<std::size_t> min_size;
    for (int t : net.sinks) {
        SinkView view = sink_view(net, f, t, messages, w, span_cap);
        SinkParams p;
        p.sink = t;
        p.n_t = static_cast<int>(view.edge_indices.size());
        p.s_t = static_cast<int>(view.Ct.message_support().size());
        p.ell_t = view.Kt.support_size();
        p.size = view.Ct.size();
        if (view.Ct.size() >= 2) {
            p.d = min_induced_distance(view.Ct);
            p.bound = combined_bound(w, out.n, p.s_t, p.ell_t, *p.d);
        }
        if (!min_size || p.size < *min_size) min_size = p.size;
        out.per_sink.push_back(std::move(p));
    }
    out.code_size = min_size.value_or(0);
    return out;
}

}  // namespace qmc
