#include "mkcs/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace mkcs {

namespace {

std::vector<std::vector<int>> build_adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (auto [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

}  // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    for (auto& [i, j] : edges) {
        if (i == j) throw std::invalid_argument("graph: self-loop " + std::to_string(i));
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw std::invalid_argument("graph: endpoint out of range");
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    adj_ = build_adjacency(n_, edges_);
}

bool Graph::has_edge(int i, int j) const {
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n_, 0);
    for (auto [i, j] : edges_) {
        ++deg[i];
        ++deg[j];
    }
    return deg;
}

double Graph::density_percent() const {
    if (n_ <= 1) throw std::invalid_argument("density undefined for n <= 1");
    return 100.0 * 2.0 * static_cast<double>(edges_.size()) / (static_cast<double>(n_) * (n_ - 1));
}

Eigen::MatrixXd Graph::adjacency() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (auto [i, j] : edges_) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
    }
    return a;
}

Eigen::MatrixXd Graph::laplacian() const {
    Eigen::MatrixXd l = -adjacency();
    auto deg = degrees();
    for (int i = 0; i < n_; ++i) l(i, i) = deg[i];
    return l;
}

Graph Graph::complement() const {
    std::vector<std::pair<int, int>> comp;
    comp.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2 - edges_.size());
    auto it = edges_.begin();
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (it != edges_.end() && it->first == i && it->second == j) {
                ++it;
            } else {
                comp.emplace_back(i, j);
            }
        }
    }
    return Graph(n_, std::move(comp));
}

Graph cartesian_product_complete(int k, const Graph& g) {
    if (k < 1) throw std::invalid_argument("cartesian_product_complete: k must be >= 1");
    const int n = g.n();
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(k) * g.edge_count() +
                  static_cast<std::size_t>(n) * k * (k - 1) / 2);
    for (int r = 0; r < k; ++r)
        for (auto [i, j] : g.edges()) edges.emplace_back(r * n + i, r * n + j);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < k; ++r)
            for (int l = r + 1; l < k; ++l) edges.emplace_back(r * n + i, l * n + i);
    return Graph(k * n, std::move(edges));
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(edges));
}

std::uint64_t binomial_u64(int a, int b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    std::uint64_t r = 1;
    for (int i = 1; i <= b; ++i) {
        r = r * static_cast<std::uint64_t>(a - b + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

namespace {

std::vector<std::vector<int>> subsets_lex(int v, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(d);
    for (int i = 0; i < d; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int pos = d - 1;
        while (pos >= 0 && cur[pos] == v - d + pos) --pos;
        if (pos < 0) break;
        ++cur[pos];
        for (int i = pos + 1; i < d; ++i) cur[i] = cur[i - 1] + 1;
    }
    return out;
}

int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    int cnt = 0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] == b[ib]) {
            ++cnt;
            ++ia;
            ++ib;
        } else if (a[ia] < b[ib]) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return cnt;
}

}  // namespace

Graph johnson_graph(int v, int d, int q, int vertex_cap) {
    if (d < 1 || d > v) throw std::invalid_argument("johnson: need 1 <= d <= v");
    if (q < 0 || q >= d) throw std::invalid_argument("johnson: need 0 <= q < d");
    std::uint64_t n = binomial_u64(v, d);
    if (n == 0 || n > static_cast<std::uint64_t>(vertex_cap))
        throw std::invalid_argument("johnson: vertex count exceeds cap");
    auto sets = subsets_lex(v, d);
    std::vector<std::pair<int, int>> edges;
    const int nn = static_cast<int>(n);
    for (int i = 0; i < nn; ++i)
        for (int j = i + 1; j < nn; ++j)
            if (intersection_size(sets[i], sets[j]) == q) edges.emplace_back(i, j);
    return Graph(nn, std::move(edges));
}

Graph kneser_graph(int v, int d, int vertex_cap) { return johnson_graph(v, d, 0, vertex_cap); }

namespace {

std::vector<std::vector<std::uint8_t>> tuples_base_q(int d, int q) {
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> cur(d, 0);
    while (true) {
        out.push_back(cur);
        int pos = d - 1;
        while (pos >= 0 && cur[pos] == q - 1) {
            cur[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++cur[pos];
    }
    return out;
}

Graph hamming_impl(int d, int q, int j, bool up_to, int vertex_cap) {
    if (d < 1 || q < 2) throw std::invalid_argument("hamming: need d >= 1, q >= 2");
    if (j < 1 || j > d) throw std::invalid_argument("hamming: need 1 <= j <= d");
    double nf = std::pow(static_cast<double>(q), d);
    if (nf > static_cast<double>(vertex_cap))
        throw std::invalid_argument("hamming: vertex count exceeds cap");
    auto words = tuples_base_q(d, q);
    const int n = static_cast<int>(words.size());
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            int dist = 0;
            for (int p = 0; p < d && dist <= j; ++p) dist += (words[a][p] != words[b][p]);
            if (up_to ? (dist >= 1 && dist <= j) : (dist == j)) edges.emplace_back(a, b);
        }
    }
    return Graph(n, std::move(edges));
}

}  // namespace

Graph hamming_graph(int d, int q, int j, int vertex_cap) {
    return hamming_impl(d, q, j, false, vertex_cap);
}

Graph hamming_le_graph(int d, int q, int j, int vertex_cap) {
    return hamming_impl(d, q, j, true, vertex_cap);
}

Graph queen_graph(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("queen: bad board");
    const int n = rows * cols;
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a) {
        int ar = a / cols, ac = a % cols;
        for (int b = a + 1; b < n; ++b) {
            int br = b / cols, bc = b % cols;
            if (ar == br || ac == bc || ar - ac == br - bc || ar + ac == br + bc)
                edges.emplace_back(a, b);
        }
    }
    return Graph(n, std::move(edges));
}

Graph mycielski(const Graph& g) {
    const int n = g.n();
    std::vector<std::pair<int, int>> edges(g.edges());
    for (auto [i, j] : g.edges()) {
        edges.emplace_back(n + i, j);
        edges.emplace_back(i, n + j);
    }
    for (int i = 0; i < n; ++i) edges.emplace_back(n + i, 2 * n);
    return Graph(2 * n + 1, std::move(edges));
}

Graph mycielski_graph(int t) {
    if (t < 2 || t > 12) throw std::invalid_argument("mycielski: need 2 <= t <= 12");
    Graph g = complete_graph(2);
    for (int i = 1; i < t; ++i) g = mycielski(g);
    return g;
}

Graph insertions_graph(int r, int t) {
    if (r < 1 || t < 1) throw std::invalid_argument("insertions: need r >= 1, t >= 1");
    const int levels = r + 1;
    Graph g = complete_graph(2);
    for (int step = 1; step < t; ++step) {
        const int n = g.n();
        std::vector<std::pair<int, int>> edges(g.edges());
        for (int lev = 0; lev < levels; ++lev) {
            for (auto [i, j] : g.edges()) {
                edges.emplace_back(lev * n + i, (lev + 1) * n + j);
                edges.emplace_back(lev * n + j, (lev + 1) * n + i);
            }
        }
        const int apex = (levels + 1) * n;
        for (int i = 0; i < n; ++i) edges.emplace_back(levels * n + i, apex);
        g = Graph(apex + 1, std::move(edges));
        if (g.n() > 200000) throw std::invalid_argument("insertions: too large");
    }
    return g;
}

Graph keller_graph(int dim) {
    if (dim < 2 || dim > 6) throw std::invalid_argument("keller: need 2 <= dim <= 6");
    auto words = tuples_base_q(dim, 4);
    auto adjacent = [dim](const std::vector<std::uint8_t>& u, const std::vector<std::uint8_t>& v) {
        bool two = false;
        int ndiff = 0;
        for (int p = 0; p < dim; ++p) {
            if (u[p] != v[p]) ++ndiff;
            if (((u[p] - v[p]) & 3) == 2) two = true;
        }
        return two && ndiff >= 2;
    };
    const std::vector<std::uint8_t> zero(dim, 0);
    std::vector<std::vector<std::uint8_t>> verts;
    for (auto& w : words)
        if (adjacent(zero, w)) verts.push_back(w);
    const int n = static_cast<int>(verts.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adjacent(verts[i], verts[j])) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph fat_ring_graph(int n, int groups) {
    if (groups < 3 || groups > n) throw std::invalid_argument("fat_ring: need 3 <= groups <= n");
    const int base = n / groups, rem = n % groups;
    std::vector<int> gid(n);
    int v = 0;
    for (int g = 0; g < groups; ++g) {
        int size = base + (g >= groups - rem ? 1 : 0);
        for (int s = 0; s < size; ++s) gid[v++] = g;
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int d = gid[j] - gid[i];
            if (d == 0 || d == 1 || d == groups - 1) edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

namespace {

bool parse_int(std::string_view tok, long& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) toks.push_back(line.substr(start, i - start));
    }
    return toks;
}

}  // namespace

Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
    long n = -1, declared_m = -1;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string at_line = ", line " + std::to_string(lineno);
        if (toks[0] == "c") continue;
        if (toks[0] == "p") {
            if (n >= 0) throw ParseError("duplicate p line" + at_line);
            if (toks.size() != 4 || !parse_int(toks[2], n) || !parse_int(toks[3], declared_m) || n < 0)
                throw ParseError("malformed p line" + at_line);
            if (toks[1] != "edge" && warnings)
                warnings->push_back("p line format '" + std::string(toks[1]) + "' treated as 'edge'" + at_line);
            continue;
        }
        if (toks[0] == "e") {
            if (n < 0) throw ParseError("e line before p line" + at_line);
            long i, j;
            if (toks.size() != 3 || !parse_int(toks[1], i) || !parse_int(toks[2], j))
                throw ParseError("malformed e line" + at_line);
            if (i == j) throw ParseError("self-loop" + at_line);
            if (i < 1 || j < 1 || i > n || j > n)
                throw ParseError("vertex index out of range" + at_line);
            edges.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
            continue;
        }
        throw ParseError("malformed token '" + std::string(toks[0]) + "'" + at_line);
    }
    if (n < 0) throw ParseError("missing p line");
    Graph g(static_cast<int>(n), std::move(edges));
    if (warnings && declared_m >= 0 && static_cast<std::size_t>(declared_m) != g.edge_count()) {
        warnings->push_back("p line declares " + std::to_string(declared_m) + " edges, found " +
                            std::to_string(g.edge_count()));
    }
    return g;
}

std::string write_dimacs(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.n() << ' ' << g.edge_count() << '\n';
    for (auto [i, j] : g.edges()) out << "e " << i + 1 << ' ' << j + 1 << '\n';
    return out.str();
}

Graph load_dimacs_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dimacs(buf.str(), warnings);
}

bool is_family_spec(const std::string& spec) {
    return spec.rfind("family:", 0) == 0 || spec.rfind("complement:", 0) == 0;
}

Graph graph_from_spec(const std::string& spec) {
    if (spec.rfind("complement:", 0) == 0)
        return graph_from_spec(spec.substr(11)).complement();
    if (!is_family_spec(spec)) return load_dimacs_file(spec);
    std::string rest = spec.substr(7);
    auto colon = rest.find(':');
    std::string name = rest.substr(0, colon);
    std::vector<long> p;
    if (colon != std::string::npos) {
        std::string params = rest.substr(colon + 1);
        std::size_t i = 0;
        while (i <= params.size()) {
            auto comma = params.find(',', i);
            std::string_view tok(params.data() + i,
                                 (comma == std::string::npos ? params.size() : comma) - i);
            long val;
            if (!parse_int(tok, val)) throw std::invalid_argument("bad family parameter in " + spec);
            p.push_back(val);
            if (comma == std::string::npos) break;
            i = comma + 1;
        }
    }
    auto need = [&](std::size_t cnt) {
        if (p.size() != cnt)
            throw std::invalid_argument("family " + name + " expects " + std::to_string(cnt) +
                                        " parameters");
    };
    if (name == "kneser") { need(2); return kneser_graph(int(p[0]), int(p[1])); }
    if (name == "johnson") { need(3); return johnson_graph(int(p[0]), int(p[1]), int(p[2])); }
    if (name == "hamming") { need(3); return hamming_graph(int(p[0]), int(p[1]), int(p[2])); }
    if (name == "hamming_le") { need(3); return hamming_le_graph(int(p[0]), int(p[1]), int(p[2])); }
    if (name == "complete") { need(1); return complete_graph(int(p[0])); }
    if (name == "cycle") { need(1); return cycle_graph(int(p[0])); }
    if (name == "queen") { need(2); return queen_graph(int(p[0]), int(p[1])); }
    if (name == "myciel") { need(1); return mycielski_graph(int(p[0])); }
    if (name == "insertions") { need(2); return insertions_graph(int(p[0]), int(p[1])); }
    if (name == "keller") { need(1); return keller_graph(int(p[0])); }
    if (name == "fatring") { need(2); return fat_ring_graph(int(p[0]), int(p[1])); }
    if (name == "petersen") { need(0); return kneser_graph(5, 2); }
    throw std::invalid_argument("unknown graph family: " + name);
}

}  // namespace mkcs
