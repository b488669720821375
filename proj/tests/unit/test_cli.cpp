#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gtx/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::initializer_list<std::string> args) {
    std::ostringstream out, err;
    int code = gtx::cli::run(std::vector<std::string>(args), out, err);
    return Run{code, out.str(), err.str()};
}

std::string corpus(const char* name) { return std::string(GTX_CORPUS_DIR) + "/" + name; }

} // namespace

TEST_CASE("validate") {
    Run r = cli({"validate", corpus("sex.gts")});
    CHECK(r.code == 0);
    CHECK(r.out.find("rules=4") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(cli({"unknown-subcommand"}).code == 2);
    CHECK(cli({"lts", corpus("sex.gts")}).code == 2); // missing --state
}

TEST_CASE("domain errors exit with 1") {
    Run r = cli({"lts", corpus("sex.gts"), "--state", "NoSuchState"});
    CHECK(r.code == 1);
    CHECK(r.err.find("NoSuchState") != std::string::npos);
}

TEST_CASE("parse diagnostics carry positions") {
    std::string path = "/tmp/gtx_broken.gts";
    {
        std::ofstream out(path);
        out << "labels {\n  a:1\n}\ngraph G {\n  nodes v;\n  edge e = b(v);\n}\n";
    }
    Run text = cli({"validate", path});
    CHECK(text.code == 1);
    CHECK(text.err.find("6:") != std::string::npos); // line of the bad edge
    Run json = cli({"--format", "json", "validate", path});
    CHECK(json.code == 1);
    CHECK(json.err.find("\"line\":6") != std::string::npos);
}

TEST_CASE("equiv prints the agreed count") {
    Run r = cli({"equiv", corpus("sex.gts"), "--state", "S1"});
    CHECK(r.code == 0);
    CHECK(r.out == "EQUAL n=3\n");
}

TEST_CASE("classify emits the flags") {
    Run r = cli({"classify", corpus("ccs.gts")});
    CHECK(r.code == 0);
    CHECK(r.out.find("unique_partners=true") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
    Run a = cli({"lts", corpus("sex.gts"), "--state", "S4a", "--depth", "2"});
    Run b = cli({"lts", corpus("sex.gts"), "--state", "S4a", "--depth", "2"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("json output is one object per line") {
    Run r = cli({"--format", "json", "equiv", corpus("ccs.gts"), "--state", "SA"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"equal\":true") != std::string::npos);
}

TEST_CASE("export-dot renders objects") {
    Run graph = cli({"export-dot", corpus("sex.gts"), "--object", "G1"});
    CHECK(graph.code == 0);
    CHECK(graph.out.find("digraph") != std::string::npos);
    CHECK(graph.out.find("shape=box") != std::string::npos);

    Run state = cli({"export-dot", corpus("sex.gts"), "--object", "S1"});
    CHECK(state.out.find("peripheries=2") != std::string::npos);

    Run rule = cli({"export-dot", corpus("sex.gts"), "--object", "ab"});
    CHECK(rule.out.find("cluster_left") != std::string::npos);
}

TEST_CASE("compose runs on the wire-discipline corpus") {
    Run r = cli({"compose", corpus("lafont.gts"), "--t1", "SLa:0", "--t2", "SLb:0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("composed tau") != std::string::npos);
}

TEST_CASE("rewrite lists steps") {
    Run r = cli({"rewrite", corpus("ccs.gts"), "--graph", "GAB"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rewrite comm") != std::string::npos);
}

TEST_CASE("admissible reports the rule count") {
    Run r = cli({"admissible", corpus("sex.gts"), "--state", "S3", "--borrow", "F3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("total rules=2") != std::string::npos);
}
