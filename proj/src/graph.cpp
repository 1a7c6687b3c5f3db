#include "qsym/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "qsym/error.hpp"

namespace qsym {

const Edge& DirectedMultigraph::edge(int id) const {
    if (id < 1 || id > static_cast<int>(edges_.size()))
        throw InvalidArgument("unknown edge id " + std::to_string(id));
    return edges_[static_cast<std::size_t>(id - 1)];
}

VertexMatrix::VertexMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : VertexMatrix(static_cast<int>(rows.size())) {
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n_) throw DimensionMismatch("vertex matrix must be square");
        int j = 0;
        for (long long v : row) {
            if (v < 0) throw InvalidArgument("vertex matrix entries must be nonnegative");
            (*this)(i, j++) = v;
        }
        ++i;
    }
}

VertexMatrix VertexMatrix::identity(int n) {
    VertexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

long long VertexMatrix::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0LL); }

DirectedMultigraph build_graph(int num_vertices, const std::vector<std::pair<int, int>>& edge_list) {
    if (num_vertices < 1) throw InvalidArgument("graph needs at least one vertex");
    DirectedMultigraph g;
    g.num_vertices_ = num_vertices;
    g.edges_.reserve(edge_list.size());
    int id = 1;
    for (auto [s, t] : edge_list) {
        if (s < 1 || s > num_vertices || t < 1 || t > num_vertices)
            throw InvalidArgument("edge (" + std::to_string(s) + ", " + std::to_string(t) +
                                  ") out of range for " + std::to_string(num_vertices) + " vertices");
        g.edges_.push_back({id++, s, t});
    }
    return g;
}

DirectedMultigraph loops_graph(int n) {
    if (n < 1) throw InvalidArgument("loops graph needs n >= 1");
    std::vector<std::pair<int, int>> loops;
    for (int i = 1; i <= n; ++i) loops.emplace_back(i, i);
    return build_graph(n, loops);
}

VertexMatrix vertex_matrix(const DirectedMultigraph& g) {
    VertexMatrix d(g.num_vertices());
    for (const Edge& e : g.edges()) d(e.source - 1, e.target - 1) += 1;
    return d;
}

bool has_sink(const DirectedMultigraph& g) {
    std::vector<bool> emits(static_cast<std::size_t>(g.num_vertices()), false);
    for (const Edge& e : g.edges()) emits[static_cast<std::size_t>(e.source - 1)] = true;
    return std::find(emits.begin(), emits.end(), false) != emits.end();
}

bool is_connected(const DirectedMultigraph& g) {
    // union-find over the underlying undirected graph
    std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    int components = g.num_vertices();
    for (const Edge& e : g.edges()) {
        int a = find(e.source - 1), b = find(e.target - 1);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

bool is_disjoint_loops(const DirectedMultigraph& g) {
    return vertex_matrix(g) == VertexMatrix::identity(g.num_vertices());
}

DirectedMultigraph graph_from_matrix(const VertexMatrix& d) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < d.size(); ++i)
        for (int j = 0; j < d.size(); ++j)
            for (long long k = 0; k < d(i, j); ++k) edges.emplace_back(i + 1, j + 1);
    return build_graph(d.size(), edges);
}

DirectedMultigraph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int vertices = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string keyword;
        if (!(ls >> keyword)) continue;
        auto fail = [&](const std::string& what) {
            return ParseError("line " + std::to_string(line_no) + ": " + what);
        };
        std::string extra;
        if (keyword == "vertices") {
            if (vertices != -1) throw fail("duplicate 'vertices' line");
            if (!(ls >> vertices) || (ls >> extra)) throw fail("expected 'vertices <n>'");
        } else if (keyword == "edge") {
            if (vertices == -1) throw fail("'edge' before 'vertices'");
            int s = 0, t = 0;
            if (!(ls >> s >> t) || (ls >> extra)) throw fail("expected 'edge <source> <target>'");
            edges.emplace_back(s, t);
        } else {
            throw fail("unknown keyword '" + keyword + "'");
        }
    }
    if (vertices == -1) throw ParseError("missing 'vertices' line");
    return build_graph(vertices, edges);
}

DirectedMultigraph parse_adjacency_document(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("adjacency document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("adjacency"))
        throw ParseError("adjacency document needs \"vertices\" and \"adjacency\"");
    if (!doc["vertices"].is_number_integer()) throw ParseError("\"vertices\" must be an integer");
    int n = doc["vertices"].get<int>();
    if (n < 1) throw InvalidArgument("graph needs at least one vertex");
    const auto& rows = doc["adjacency"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ParseError("\"adjacency\" must have " + std::to_string(n) + " rows");
    VertexMatrix d(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("adjacency row " + std::to_string(i + 1) + " must have " + std::to_string(n) +
                             " entries");
        for (int j = 0; j < n; ++j) {
            const auto& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw ParseError("adjacency entries must be nonnegative integers");
            d(i, j) = v.get<long long>();
        }
    }
    return graph_from_matrix(d);
}

DirectedMultigraph parse_graph(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_adjacency_document(text);
    return parse_edge_list(text);
}

DirectedMultigraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read graph file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

std::string to_edge_list(const DirectedMultigraph& g) {
    std::ostringstream out;
    out << "vertices " << g.num_vertices() << '\n';
    for (const Edge& e : g.edges()) out << "edge " << e.source << ' ' << e.target << '\n';
    return out.str();
}

}  // namespace qsym
