#include "gtx/canonical.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gtx {

namespace {

std::string color_of(const std::map<Id, std::string>& colors, const Id& id) {
    auto it = colors.find(id);
    return it == colors.end() ? std::string{} : it->second;
}

// Iterated neighbourhood refinement. Produces an isomorphism-invariant
// partition of the nodes; cell order is fixed by the signature strings.
std::map<Id, std::string> refine(const Hypergraph& g, const Coloring& coloring) {
    std::map<Id, std::string> col;
    for (const Id& v : g.nodes()) col[v] = color_of(coloring.node, v);

    for (std::size_t round = 0; round <= g.node_count(); ++round) {
        std::map<Id, std::string> sig;
        for (const Id& v : g.nodes()) {
            std::vector<std::string> inc;
            for (const auto& [e, data] : g.edges()) {
                for (std::size_t i = 0; i < data.tentacles.size(); ++i) {
                    if (data.tentacles[i] != v) continue;
                    std::ostringstream os;
                    os << color_of(coloring.edge, e) << '/' << data.label << '@' << i << '(';
                    for (const Id& t : data.tentacles) os << col.at(t) << ',';
                    os << ')';
                    inc.push_back(os.str());
                }
            }
            std::sort(inc.begin(), inc.end());
            std::ostringstream os;
            os << col.at(v) << '|';
            for (const auto& s : inc) os << s << ';';
            sig[v] = os.str();
        }
        // compress signatures to ranks, keeping the base color visible
        std::set<std::string> distinct;
        for (const auto& [v, s] : sig) distinct.insert(s);
        std::map<std::string, int> rank;
        int r = 0;
        for (const auto& s : distinct) rank[s] = r++;
        std::map<Id, std::string> next;
        for (const Id& v : g.nodes())
            next[v] = color_of(coloring.node, v) + "#" + std::to_string(rank.at(sig.at(v)));
        if (next == col) break;
        col = std::move(next);
    }
    return col;
}

struct Search {
    const Hypergraph& g;
    const Coloring& coloring;
    std::vector<std::vector<Id>> cells; // refined cells in canonical cell order
    std::vector<Id> order;              // node assignment under construction
    std::string best_key;
    std::vector<Id> best_order;

    void encode_and_keep() {
        std::map<Id, std::size_t> index;
        for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
        std::ostringstream os;
        os << "V" << order.size() << '[';
        for (const Id& v : order) os << color_of(coloring.node, v) << ',';
        os << "]E[";
        std::vector<std::string> encs;
        for (const auto& [e, data] : g.edges()) {
            std::ostringstream es;
            es << color_of(coloring.edge, e) << '/' << data.label << '(';
            for (const Id& t : data.tentacles) es << index.at(t) << ',';
            es << ')';
            encs.push_back(es.str());
        }
        std::sort(encs.begin(), encs.end());
        for (const auto& s : encs) os << s << ';';
        os << ']';
        std::string key = os.str();
        if (best_key.empty() || key < best_key) {
            best_key = std::move(key);
            best_order = order;
        }
    }

    void run(std::size_t cell_idx) {
        if (cell_idx == cells.size()) {
            encode_and_keep();
            return;
        }
        std::vector<Id>& cell = cells[cell_idx];
        std::sort(cell.begin(), cell.end());
        do {
            for (const Id& v : cell) order.push_back(v);
            run(cell_idx + 1);
            order.resize(order.size() - cell.size());
        } while (std::next_permutation(cell.begin(), cell.end()));
    }
};

} // namespace

CanonicalResult canonicalize(const Hypergraph& g, const Coloring& coloring) {
    auto refined = refine(g, coloring);
    std::map<std::string, std::vector<Id>> by_color;
    for (const Id& v : g.nodes()) by_color[refined.at(v)].push_back(v);

    Search search{g, coloring, {}, {}, {}, {}};
    unsigned long long work = 1;
    for (auto& [c, members] : by_color) {
        for (std::size_t k = 2; k <= members.size(); ++k) {
            work *= k;
            if (work > 5'000'000ULL)
                throw std::logic_error("canonicalization search space too large");
        }
        search.cells.push_back(members);
    }
    search.run(0);

    CanonicalResult result;
    result.key = search.best_key;
    std::map<Id, std::size_t> index;
    for (std::size_t i = 0; i < search.best_order.size(); ++i)
        index[search.best_order[i]] = i;
    for (const auto& [v, i] : index) result.node_map[v] = "n" + std::to_string(i);

    for (const Id& v : g.nodes()) result.graph.add_node(result.node_map.at(v));

    // edges sorted by their encoding, ties broken by original id
    std::vector<std::pair<std::string, Id>> encs;
    for (const auto& [e, data] : g.edges()) {
        std::ostringstream es;
        es << color_of(coloring.edge, e) << '/' << data.label << '(';
        for (const Id& t : data.tentacles) es << index.at(t) << ',';
        es << ')';
        encs.emplace_back(es.str(), e);
    }
    std::sort(encs.begin(), encs.end());
    std::size_t j = 0;
    for (const auto& [enc, e] : encs) {
        Id canon = "e" + std::to_string(j++);
        result.edge_map[e] = canon;
        const Edge& data = g.edge(e);
        std::vector<Id> mapped;
        for (const Id& t : data.tentacles) mapped.push_back(result.node_map.at(t));
        result.graph.add_edge(canon, data.label, mapped);
    }
    return result;
}

std::string canonical_key(const Hypergraph& g, const Coloring& coloring) {
    return canonicalize(g, coloring).key;
}

Hypergraph iso_canonical(const Hypergraph& g) {
    return canonicalize(g).graph;
}

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b) {
    return canonical_key(a) == canonical_key(b);
}

} // namespace gtx
