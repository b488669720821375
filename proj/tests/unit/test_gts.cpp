#include <doctest.h>

#include <set>

#include "gtx/canonical.hpp"
#include "gtx/colimit.hpp"
#include "gtx/errors.hpp"
#include "gtx/gts.hpp"
#include "../support/oracles.hpp"

using namespace gtx;

namespace {

const SystemDocument& sex() {
    static SystemDocument doc = oracles::load_corpus("sex.gts");
    return doc;
}

std::set<std::string> rules_firing_on(const Gts& s, const Hypergraph& host) {
    std::set<std::string> out;
    for (const RewriteStep& step : enumerate_rewrites(s, host)) out.insert(step.rule);
    return out;
}

} // namespace

TEST_CASE("validate_rule") {
    LabelAlphabet ab{{"alpha", 2}};
    SUBCASE("identity rule is fine") {
        Hypergraph g;
        g.add_node("v");
        Rule r{"id", g, g, g};
        CHECK(validate_rule(r, ab).ok());
    }
    SUBCASE("left and right sharing an edge outside the interface") {
        Hypergraph l;
        l.add_node("u");
        l.add_node("v");
        l.add_edge("e", "alpha", {"u", "v"});
        Hypergraph i;
        i.add_node("u");
        i.add_node("v");
        Rule r{"bad", l, i, l}; // same edge id on both sides, not in interface
        REQUIRE_FALSE(validate_rule(r, ab).ok());
    }
    SUBCASE("corpus rules validate") {
        for (const auto& [name, r] : sex().rules)
            CHECK(validate_rule(r, sex().alphabet).ok());
    }
}

TEST_CASE("rewrite") {
    Gts s = sex().gts();
    SUBCASE("identity rule reproduces the host") {
        Hypergraph g;
        g.add_node("v");
        Gts id_sys = Gts::make(LabelAlphabet{{"alpha", 2}}, {Rule{"id", g, g, g}});
        Hypergraph host;
        host.add_node("x");
        host.add_node("y");
        auto steps = enumerate_rewrites(id_sys, host);
        CHECK(steps.size() == 2);
        for (const RewriteStep& step : steps)
            CHECK(are_isomorphic(step.result, host));
    }
    SUBCASE("rule applied to exactly its left-hand side yields its right-hand side") {
        const Rule& ab = s.rule("ab");
        std::vector<Morphism> monos = find_monos(ab.left, ab.left);
        REQUIRE(!monos.empty());
        RewriteStep step = rewrite(s, ab.left, "ab", monos.front());
        CHECK(are_isomorphic(step.result, ab.right));
    }
    SUBCASE("context outside the match is preserved") {
        const Rule& ab = s.rule("ab");
        Hypergraph host = ab.left;
        host.add_node("w");
        host.add_edge("extra", "gamma", {"w"});
        std::map<Id, Id> idn, ide;
        for (const Id& v : ab.left.nodes()) idn[v] = v;
        for (const auto& [e, d] : ab.left.edges()) ide[e] = e;
        RewriteStep step = rewrite(s, host, "ab", Morphism::make(ab.left, host, idn, ide));
        Hypergraph expected = ab.right;
        expected.add_node("w");
        expected.add_edge("extra", "gamma", {"w"});
        CHECK(are_isomorphic(step.result, expected));
    }
    SUBCASE("result is stable under isomorphic presentation of the host") {
        const Rule& ag = s.rule("ag");
        Hypergraph host = ag.left;
        RenamedCopy other = rename_apart(host, host, Hypergraph{});
        auto steps1 = enumerate_rewrites(s, host);
        auto steps2 = enumerate_rewrites(s, other.graph);
        REQUIRE(!steps1.empty());
        REQUIRE(steps1.size() == steps2.size());
        CHECK(iso_canonical(steps1.front().result) == iso_canonical(steps2.front().result));
    }
}

TEST_CASE("enumerate_rewrites on the running example") {
    Gts s = sex().gts();
    SUBCASE("no rule fits a single unary edge") {
        Hypergraph g;
        g.add_node("x");
        g.add_edge("e", "gamma", {"x"});
        CHECK(enumerate_rewrites(s, g).empty());
    }
    SUBCASE("hub at the two-edge-rule ports fires the three binary rules") {
        Hypergraph g;
        for (const char* v : {"a", "c", "d", "x"}) g.add_node(v);
        g.add_edge("e1", "alpha", {"a", "x"});
        g.add_edge("e2", "beta", {"c", "d", "x"});
        g.add_edge("e3", "gamma", {"x"});
        CHECK(rules_firing_on(s, g) == std::set<std::string>{"ab", "ag", "bg"});
    }
    SUBCASE("hub at the three-edge rule's ports fires it and alpha/gamma") {
        Hypergraph g;
        for (const char* v : {"a", "c", "d", "x"}) g.add_node(v);
        g.add_edge("e1", "alpha", {"a", "x"});
        g.add_edge("e2", "beta", {"c", "x", "d"});
        g.add_edge("e3", "gamma", {"x"});
        CHECK(rules_firing_on(s, g) == std::set<std::string>{"abg", "ag"});
    }
    SUBCASE("every step's deletion square verifies") {
        Hypergraph g;
        for (const char* v : {"a", "c", "d", "x"}) g.add_node(v);
        g.add_edge("e1", "alpha", {"a", "x"});
        g.add_edge("e2", "beta", {"c", "d", "x"});
        g.add_edge("e3", "gamma", {"x"});
        auto steps = enumerate_rewrites(s, g);
        REQUIRE(!steps.empty());
        for (const RewriteStep& step : steps) {
            const Rule& r = s.rule(step.rule);
            Hypergraph l_img = image(step.match, r.left);
            Hypergraph i_img = image(step.match, r.interface_);
            CHECK(is_pushout_square(i_img, l_img, step.intermediate, g));
        }
    }
}

TEST_CASE("rule instantiation") {
    Gts s = sex().gts();
    const Rule& ab = s.rule("ab");
    Hypergraph avoid;
    for (const Id& v : ab.left.nodes()) avoid.add_node(v);
    SUBCASE("instance is isomorphic and fresh") {
        RuleInstance inst = instantiate_rule(ab, {}, {}, avoid);
        CHECK(are_isomorphic(inst.left, ab.left));
        CHECK(are_isomorphic(inst.right, ab.right));
        for (const Id& v : inst.left.nodes()) CHECK_FALSE(avoid.has_node(v));
    }
    SUBCASE("pinning keeps prescribed identifiers") {
        RuleInstance pinned = instantiate_rule(ab, {{"v", "hub"}}, {}, avoid);
        CHECK(pinned.left.has_node("hub"));
        CHECK_FALSE(pinned.left.has_node("v"));
    }
}
