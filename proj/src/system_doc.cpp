#include "gtx/system_doc.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace gtx {

namespace {

struct Token {
    enum Kind { Name, Int, Punct, End } kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= text_.size()) {
            current_ = Token{Token::End, "", line_, col_};
            return;
        }
        char c = text_[pos_];
        int line = line_;
        int col = col_;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                name += text_[pos_++];
                ++col_;
            }
            current_ = Token{Token::Name, std::move(name), line, col};
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_++];
                ++col_;
            }
            current_ = Token{Token::Int, std::move(digits), line, col};
        } else if (std::string("{}();:=,").find(c) != std::string::npos) {
            ++pos_;
            ++col_;
            current_ = Token{Token::Punct, std::string(1, c), line, col};
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_{Token::End, "", 1, 1};
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    SystemDocument run() {
        while (lex_.peek().kind != Token::End) {
            Token t = expect_name("section keyword");
            if (t.text == "labels")
                parse_labels();
            else if (t.text == "graph")
                parse_graph();
            else if (t.text == "rule")
                parse_rule();
            else if (t.text == "state")
                parse_state();
            else
                throw ParseError(t.line, t.column, "unknown section '" + t.text + "'");
        }
        resolve_states();
        validate_all();
        return std::move(doc_);
    }

private:
    Token expect_name(const std::string& what) {
        Token t = lex_.next();
        if (t.kind != Token::Name)
            throw ParseError(t.line, t.column, "expected " + what);
        return t;
    }

    Token expect_punct(const std::string& p) {
        Token t = lex_.next();
        if (t.kind != Token::Punct || t.text != p)
            throw ParseError(t.line, t.column, "expected '" + p + "'");
        return t;
    }

    bool peek_punct(const std::string& p) {
        return lex_.peek().kind == Token::Punct && lex_.peek().text == p;
    }

    bool peek_keyword(const std::string& kw) {
        return lex_.peek().kind == Token::Name && lex_.peek().text == kw;
    }

    void parse_labels() {
        expect_punct("{");
        while (!peek_punct("}")) {
            Token name = expect_name("label name");
            expect_punct(":");
            Token arity = lex_.next();
            if (arity.kind != Token::Int)
                throw ParseError(arity.line, arity.column, "expected arity");
            if (doc_.alphabet.arity(name.text))
                throw ParseError(name.line, name.column, "duplicate label '" + name.text + "'");
            doc_.alphabet.set(name.text, std::stoi(arity.text));
        }
        expect_punct("}");
    }

    Hypergraph parse_graph_body() {
        Hypergraph g;
        expect_punct("{");
        Token kw = expect_name("'nodes'");
        if (kw.text != "nodes") throw ParseError(kw.line, kw.column, "expected 'nodes'");
        while (lex_.peek().kind == Token::Name) {
            Token v = lex_.next();
            if (g.has_node(v.text))
                throw ParseError(v.line, v.column, "duplicate node '" + v.text + "'");
            g.add_node(v.text);
        }
        expect_punct(";");
        while (peek_keyword("edge")) {
            lex_.next();
            Token e = expect_name("edge name");
            expect_punct("=");
            Token label = expect_name("label name");
            expect_punct("(");
            std::vector<Id> tentacles;
            while (lex_.peek().kind == Token::Name) {
                Token v = lex_.next();
                if (!g.has_node(v.text))
                    throw ParseError(v.line, v.column, "unknown node '" + v.text + "'");
                tentacles.push_back(v.text);
            }
            expect_punct(")");
            expect_punct(";");
            auto arity = doc_.alphabet.arity(label.text);
            if (!arity)
                throw ParseError(label.line, label.column, "unknown label '" + label.text + "'");
            if (static_cast<std::size_t>(*arity) != tentacles.size())
                throw ParseError(label.line, label.column,
                                 "arity mismatch for label '" + label.text + "'");
            if (g.has_edge(e.text))
                throw ParseError(e.line, e.column, "duplicate edge '" + e.text + "'");
            g.add_edge(e.text, label.text, tentacles);
        }
        expect_punct("}");
        return g;
    }

    void parse_graph() {
        Token name = expect_name("graph name");
        if (doc_.graphs.contains(name.text))
            throw ParseError(name.line, name.column, "duplicate graph '" + name.text + "'");
        doc_.graphs.emplace(name.text, parse_graph_body());
    }

    void parse_rule() {
        Token name = expect_name("rule name");
        if (doc_.rules.contains(name.text))
            throw ParseError(name.line, name.column, "duplicate rule '" + name.text + "'");
        expect_punct("{");
        auto keyword = [&](const char* kw) {
            Token t = expect_name(kw);
            if (t.text != kw) throw ParseError(t.line, t.column, std::string("expected '") + kw + "'");
            return t;
        };
        keyword("left");
        Hypergraph left = parse_graph_body();
        keyword("interface");
        Token at = lex_.peek();
        Hypergraph interface_ = parse_graph_body();
        keyword("right");
        Hypergraph right = parse_graph_body();
        expect_punct("}");
        Rule r{name.text, std::move(left), std::move(interface_), std::move(right)};
        ValidationReport report = validate_rule(r, doc_.alphabet);
        if (!report.ok())
            throw ParseError(at.line, at.column, report.violations.front());
        doc_.rules.emplace(name.text, std::move(r));
    }

    struct PendingState {
        std::string name;
        std::string graph;
        std::vector<Token> nodes;
        std::vector<Token> edges;
        Token at;
    };

    void parse_state() {
        Token name = expect_name("state name");
        if (doc_.states.contains(name.text) ||
            std::any_of(pending_.begin(), pending_.end(),
                        [&](const PendingState& p) { return p.name == name.text; }))
            throw ParseError(name.line, name.column, "duplicate state '" + name.text + "'");
        PendingState p;
        p.name = name.text;
        p.at = name;
        expect_punct("{");
        Token kw = expect_name("'graph'");
        if (kw.text != "graph") throw ParseError(kw.line, kw.column, "expected 'graph'");
        Token gname = expect_name("graph name");
        p.graph = gname.text;
        p.at = gname;
        expect_punct(";");
        kw = expect_name("'interface'");
        if (kw.text != "interface") throw ParseError(kw.line, kw.column, "expected 'interface'");
        expect_punct("{");
        kw = expect_name("'nodes'");
        if (kw.text != "nodes") throw ParseError(kw.line, kw.column, "expected 'nodes'");
        while (lex_.peek().kind == Token::Name) p.nodes.push_back(lex_.next());
        expect_punct(";");
        if (peek_keyword("edges")) {
            lex_.next();
            while (lex_.peek().kind == Token::Name) p.edges.push_back(lex_.next());
            expect_punct(";");
        }
        expect_punct("}");
        expect_punct("}");
        pending_.push_back(std::move(p));
    }

    void resolve_states() {
        for (const PendingState& p : pending_) {
            auto git = doc_.graphs.find(p.graph);
            if (git == doc_.graphs.end())
                throw ParseError(p.at.line, p.at.column, "unresolved graph '" + p.graph + "'");
            const Hypergraph& g = git->second;
            Hypergraph interface_;
            for (const Token& v : p.nodes) {
                if (!g.has_node(v.text))
                    throw ParseError(v.line, v.column,
                                     "interface node '" + v.text + "' is not in the graph");
                interface_.add_node(v.text);
            }
            for (const Token& e : p.edges) {
                if (!g.has_edge(e.text))
                    throw ParseError(e.line, e.column,
                                     "interface edge '" + e.text + "' is not in the graph");
                const Edge& data = g.edge(e.text);
                for (const Id& v : data.tentacles)
                    if (!interface_.has_node(v))
                        throw ParseError(e.line, e.column,
                                         "interface edge '" + e.text +
                                             "' needs node '" + v + "' in the interface");
                interface_.add_edge(e.text, data.label, data.tentacles);
            }
            doc_.states.emplace(p.name, State{std::move(interface_), g});
            doc_.state_graph_names.emplace(p.name, p.graph);
        }
    }

    void validate_all() {
        for (const auto& [name, g] : doc_.graphs) {
            ValidationReport report = validate(g, doc_.alphabet);
            if (!report.ok())
                throw ParseError(1, 1, "graph " + name + ": " + report.violations.front());
        }
    }

    Lexer lex_;
    SystemDocument doc_;
    std::vector<PendingState> pending_;
};

void print_graph_body(std::ostringstream& os, const Hypergraph& g, const std::string& indent) {
    os << indent << "nodes";
    for (const Id& v : g.nodes()) os << ' ' << v;
    os << ";\n";
    for (const auto& [e, data] : g.edges()) {
        os << indent << "edge " << e << " = " << data.label << "(";
        bool first = true;
        for (const Id& v : data.tentacles) {
            if (!first) os << ' ';
            os << v;
            first = false;
        }
        os << ");\n";
    }
}

} // namespace

Gts SystemDocument::gts() const {
    std::vector<Rule> list;
    for (const auto& [name, r] : rules) list.push_back(r);
    return Gts::make(alphabet, std::move(list));
}

SystemDocument parse_system(const std::string& text) { return Parser(text).run(); }

std::string print_system(const SystemDocument& doc) {
    std::ostringstream os;
    os << "labels {\n";
    for (const auto& [label, arity] : doc.alphabet.entries())
        os << "  " << label << ":" << arity << "\n";
    os << "}\n";
    for (const auto& [name, g] : doc.graphs) {
        os << "graph " << name << " {\n";
        print_graph_body(os, g, "  ");
        os << "}\n";
    }
    for (const auto& [name, r] : doc.rules) {
        os << "rule " << name << " {\n";
        os << "  left {\n";
        print_graph_body(os, r.left, "    ");
        os << "  }\n  interface {\n";
        print_graph_body(os, r.interface_, "    ");
        os << "  }\n  right {\n";
        print_graph_body(os, r.right, "    ");
        os << "  }\n}\n";
    }
    for (const auto& [name, st] : doc.states) {
        os << "state " << name << " {\n";
        os << "  graph " << doc.state_graph_names.at(name) << ";\n";
        os << "  interface {\n    nodes";
        for (const Id& v : st.interface_.nodes()) os << ' ' << v;
        os << ";\n";
        if (!st.interface_.edges().empty()) {
            os << "    edges";
            for (const auto& [e, data] : st.interface_.edges()) os << ' ' << e;
            os << ";\n";
        }
        os << "  }\n}\n";
    }
    return os.str();
}

} // namespace gtx
