#include "gtx/dot.hpp"

#include <sstream>

namespace gtx {

namespace {

void emit_graph(std::ostringstream& os, const Hypergraph& g, const Hypergraph& interface_,
                const std::string& prefix, const std::string& indent) {
    for (const Id& v : g.nodes()) {
        os << indent << '"' << prefix << "v_" << v << "\" [shape=circle,label=\"" << v << '"';
        if (interface_.has_node(v)) os << ",peripheries=2";
        os << "];\n";
    }
    for (const auto& [e, data] : g.edges()) {
        os << indent << '"' << prefix << "e_" << e << "\" [shape=box,label=\"" << data.label
           << ':' << e << '"';
        if (interface_.has_edge(e)) os << ",peripheries=2";
        os << "];\n";
        for (std::size_t i = 0; i < data.tentacles.size(); ++i)
            os << indent << '"' << prefix << "e_" << e << "\" -> \"" << prefix << "v_"
               << data.tentacles[i] << "\" [label=\"" << (i + 1) << "\"];\n";
    }
}

} // namespace

std::string to_dot(const Hypergraph& g, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    emit_graph(os, g, Hypergraph{}, "", "  ");
    os << "}\n";
    return os.str();
}

std::string to_dot(const State& st, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    emit_graph(os, st.graph, st.interface_, "", "  ");
    os << "}\n";
    return os.str();
}

std::string to_dot(const Rule& r) {
    std::ostringstream os;
    os << "digraph \"" << r.name << "\" {\n";
    const char* parts[] = {"left", "interface", "right"};
    const Hypergraph* graphs[] = {&r.left, &r.interface_, &r.right};
    for (int i = 0; i < 3; ++i) {
        os << "  subgraph \"cluster_" << parts[i] << "\" {\n";
        os << "    label=\"" << parts[i] << "\";\n";
        emit_graph(os, *graphs[i], r.interface_, std::string(parts[i]) + "_", "    ");
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace gtx
