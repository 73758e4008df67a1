#include "mkcs/heur.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mkcs::heur {

int ColorAssignment::value() const {
    int v = 0;
    for (int c : color) v += (c != 0);
    return v;
}

bool ColorAssignment::proper(const Graph& g) const {
    if (static_cast<int>(color.size()) != g.n()) return false;
    for (int c : color)
        if (c < 0 || c > k) return false;
    for (auto [i, j] : g.edges())
        if (color[i] != 0 && color[i] == color[j]) return false;
    return true;
}

std::vector<int> min_degree_stable_set(const Graph& g) {
    const int n = g.n();
    std::vector<bool> alive(n, true);
    std::vector<int> deg = g.degrees();
    std::vector<int> picked;
    int remaining = n;
    while (remaining > 0) {
        int best = -1;
        long best_support = -1;
        int min_deg = n + 1;
        for (int v = 0; v < n; ++v)
            if (alive[v]) min_deg = std::min(min_deg, deg[v]);
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || deg[v] != min_deg) continue;
            long support = 0;
            for (int u : g.neighbors()[v])
                if (alive[u]) support += deg[u];
            if (support > best_support) {
                best = v;
                best_support = support;
            }
        }
        picked.push_back(best);
        // delete best and its neighbors
        std::vector<int> gone{best};
        for (int u : g.neighbors()[best])
            if (alive[u]) gone.push_back(u);
        for (int u : gone) {
            alive[u] = false;
            --remaining;
            for (int w : g.neighbors()[u])
                if (alive[w]) --deg[w];
        }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

ColorAssignment product_heuristic_lb(const Graph& g, int k, long long vertex_cap) {
    if (k < 1) throw std::invalid_argument("product heuristic: k must be >= 1");
    if (static_cast<long long>(g.n()) * k > vertex_cap)
        throw std::invalid_argument("product heuristic: k*n exceeds cap");
    Graph prod = cartesian_product_complete(k, g);
    auto set = min_degree_stable_set(prod);
    ColorAssignment out;
    out.k = k;
    out.color.assign(g.n(), 0);
    for (int v : set) out.color[v % g.n()] = v / g.n() + 1;
    if (!out.proper(g)) throw std::logic_error("product heuristic produced an improper coloring");
    return out;
}

namespace {

struct TabuState {
    const Graph& g;
    int k;
    std::vector<int> color;
    std::vector<std::vector<int>> used;  // used[v][c-1]: #neighbors of v with color c
    int colored = 0;

    explicit TabuState(const Graph& gg, int kk)
        : g(gg), k(kk), color(gg.n(), 0), used(gg.n(), std::vector<int>(kk, 0)) {}

    bool can_color(int v, int c) const { return used[v][c - 1] == 0; }
    void set_color(int v, int c) {
        color[v] = c;
        ++colored;
        for (int u : g.neighbors()[v]) ++used[u][c - 1];
    }
    void unset_color(int v) {
        int c = color[v];
        color[v] = 0;
        --colored;
        for (int u : g.neighbors()[v]) --used[u][c - 1];
    }
};

}  // namespace

ColorAssignment tabu_lb(const Graph& g, int k, const TabuParams& params) {
    if (k < 1) throw std::invalid_argument("tabu: k must be >= 1");
    if (params.tenure < 1) throw std::invalid_argument("tabu: tenure must be >= 1");
    const int n = g.n();
    TabuState st(g, k);

    // greedy init over the ascending-degree list, one color at a time
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto deg = g.degrees();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] < deg[b]; });
    if (params.rng_seed != 0) {
        std::mt19937 rng(params.rng_seed);
        std::size_t run = 0;
        while (run < order.size()) {
            std::size_t end = run + 1;
            while (end < order.size() && deg[order[end]] == deg[order[run]]) ++end;
            std::shuffle(order.begin() + run, order.begin() + end, rng);
            run = end;
        }
    }
    for (int c = 1; c <= k; ++c)
        for (int v : order)
            if (st.color[v] == 0 && st.can_color(v, c)) st.set_color(v, c);

    ColorAssignment best{st.color, k};
    int best_value = st.colored;
    if (best_value == n) return best;

    std::vector<int> tabu_until(n, 0);       // recently colored: protected from uncoloring
    std::vector<int> ban_until(n, 0);        // recently uncolored: old color off-limits
    std::vector<int> banned_color(n, 0);
    int stall = 0, stuck_rank = 0;
    for (int iter = 1; iter <= params.max_iterations; ++iter) {
        // rank colored, non-tabu vertices by uncolored-neighbor count
        std::vector<std::pair<int, int>> ranked;  // (-conflicts, v)
        for (int v = 0; v < n; ++v) {
            if (st.color[v] == 0 || tabu_until[v] >= iter) continue;
            int conf = 0;
            for (int u : g.neighbors()[v]) conf += (st.color[u] == 0);
            ranked.emplace_back(-conf, v);
        }
        if (ranked.empty()) break;
        std::sort(ranked.begin(), ranked.end());
        int w = ranked[std::min<std::size_t>(stuck_rank, ranked.size() - 1)].second;
        banned_color[w] = st.color[w];
        ban_until[w] = iter + params.tenure;
        st.unset_color(w);

        bool colored_any = false;
        for (int v : order) {
            if (st.color[v] != 0) continue;
            for (int c = 1; c <= k; ++c) {
                if (ban_until[v] >= iter && c == banned_color[v]) continue;
                if (st.can_color(v, c)) {
                    st.set_color(v, c);
                    tabu_until[v] = iter + params.tenure;
                    colored_any = true;
                    break;
                }
            }
        }
        stuck_rank = colored_any ? 0 : stuck_rank + 1;
        if (st.colored > best_value) {
            best_value = st.colored;
            best.color = st.color;
            stall = 0;
            if (best_value == n) break;
        } else if (++stall >= params.stall_limit) {
            break;
        }
    }
    if (!best.proper(g)) throw std::logic_error("tabu produced an improper coloring");
    return best;
}

namespace {

// Backtracking k-colorability of the induced subgraph on `verts`, colors
// introduced in increasing order. Writes a proper coloring into out.
bool color_subset(const Graph& g, const std::vector<int>& verts, int k, std::vector<int>& out) {
    const int m = static_cast<int>(verts.size());
    std::vector<int> assign(m, 0);
    std::vector<std::vector<int>> local_adj(m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < a; ++b)
            if (g.has_edge(verts[a], verts[b])) local_adj[a].push_back(b);
    int pos = 0;
    std::vector<int> maxused(m + 1, 0);
    while (pos >= 0) {
        if (pos == m) {
            out.assign(g.n(), 0);
            for (int a = 0; a < m; ++a) out[verts[a]] = assign[a];
            return true;
        }
        int limit = std::min(k, maxused[pos] + 1);
        int c = assign[pos] + 1;
        bool advanced = false;
        for (; c <= limit; ++c) {
            bool ok = true;
            for (int b : local_adj[pos])
                if (assign[b] == c) { ok = false; break; }
            if (ok) {
                assign[pos] = c;
                maxused[pos + 1] = std::max(maxused[pos], c);
                ++pos;
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            assign[pos] = 0;
            --pos;
        }
    }
    return false;
}

struct ExactSearch {
    const Graph& g;
    int k;
    std::vector<int> order;   // vertices by descending degree
    std::vector<int> chosen;
    int best = 0;
    std::vector<int> best_coloring;

    void dfs(int idx) {
        const int n = g.n();
        if (static_cast<int>(chosen.size()) + (n - idx) <= best) return;
        if (idx == n) return;
        // include order[idx] if the subset stays k-colorable
        chosen.push_back(order[idx]);
        std::vector<int> coloring;
        if (color_subset(g, chosen, k, coloring)) {
            if (static_cast<int>(chosen.size()) > best) {
                best = static_cast<int>(chosen.size());
                best_coloring = coloring;
            }
            dfs(idx + 1);
        }
        chosen.pop_back();
        dfs(idx + 1);  // exclude
    }
};

}  // namespace

ExactResult exact_alpha_k(const Graph& g, int k, const ExactCaps& caps) {
    if (g.n() > caps.max_n || k > caps.max_k)
        throw std::invalid_argument("exact_alpha_k: instance exceeds configured caps");
    if (k < 1) throw std::invalid_argument("exact_alpha_k: k must be >= 1");
    ExactSearch search{g, k};
    search.order.resize(g.n());
    std::iota(search.order.begin(), search.order.end(), 0);
    auto deg = g.degrees();
    std::stable_sort(search.order.begin(), search.order.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });
    search.best_coloring.assign(g.n(), 0);
    search.dfs(0);
    ExactResult res;
    res.value = search.best;
    res.witness.k = k;
    res.witness.color = search.best_coloring;
    if (!res.witness.proper(g)) throw std::logic_error("exact oracle produced an improper witness");
    return res;
}

}  // namespace mkcs::heur
