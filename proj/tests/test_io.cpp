#include "pursuit/errors.hpp"
#include "pursuit/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

using namespace pursuit;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pursuit-io-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int value = 0;
        return value;
    }
    fs::path file(const std::string& name, const std::string& text) const {
        fs::path p = path / name;
        std::ofstream out(p);
        out << text;
        return p;
    }
};

std::string data_file(const char* name) {
    return std::string(PURSUIT_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("tree files load and renumber to BFS order from the root") {
    TempDir dir;
    // Parents 0 1 1 describe edges 0-1, 1-2, 1-3: a star hung off vertex 1.
    fs::path p = dir.file("a.tree", "# comment line\ntree 4 0 1 1\n");
    TreeSpec spec = load_tree_file(p);
    CHECK(spec.vertex_count == 4);
    CHECK(spec.parents == std::vector<Vertex>{0, 1, 1});
    Graph g = spec.to_graph();
    CHECK(g.is_tree());
    CHECK(g.degree(1) == 3);
}

TEST_CASE("tree files reject malformed input with the offending line") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(load_tree_file(dir.file("bad1.tree", "tree 3 0\n")),
                         doctest::Contains(":1:"), ParseError);
    CHECK_THROWS_WITH_AS(load_tree_file(dir.file("bad2.tree", "# header\ngraph 3\n")),
                         doctest::Contains(":2:"), ParseError);
    CHECK_THROWS_AS(load_tree_file(dir.file("bad3.tree", "tree 3 0 5\n")), ParseError);
    CHECK_THROWS_AS(load_tree_file(dir.file("bad4.tree", "tree 3 0 1 9\n")), ParseError);
    CHECK_THROWS_AS(load_tree_file(dir.file("empty.tree", "\n# nothing\n")), ParseError);
    CHECK_THROWS_AS(load_tree_file(dir.path / "missing.tree"), ParseError);
}

TEST_CASE("graph files load edge lists and reject garbage") {
    TempDir dir;
    Graph g = load_graph_file(dir.file("a.g", "graph 4\n0 1\n# middle comment\n2 3\n1 2\n"));
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(1, 2));

    CHECK_THROWS_AS(load_graph_file(dir.file("b1.g", "graph 3\n0 0\n")), ParseError);
    CHECK_THROWS_AS(load_graph_file(dir.file("b2.g", "graph 3\n0 1\n0 1\n")), ParseError);
    CHECK_THROWS_WITH_AS(load_graph_file(dir.file("b3.g", "graph 3\n0 7\n")),
                         doctest::Contains(":2:"), ParseError);
    CHECK_THROWS_AS(load_graph_file(dir.file("b4.g", "graph 3\n0 1 junk\n")), ParseError);
    CHECK_THROWS_AS(load_graph_file(dir.file("b5.g", "")), ParseError);
}

TEST_CASE("load_any_graph_file dispatches on the header keyword") {
    TempDir dir;
    Graph from_tree = load_any_graph_file(dir.file("t.tree", "tree 3 0 1\n"));
    CHECK(from_tree.is_tree());
    Graph from_graph = load_any_graph_file(dir.file("g.g", "graph 3\n0 1\n1 2\n"));
    CHECK(from_graph.edge_count() == 2);
    CHECK_THROWS_AS(load_any_graph_file(dir.file("x.g", "digraph 3\n")), ParseError);
}

TEST_CASE("product files resolve factor paths relative to themselves") {
    TempDir dir;
    dir.file("leg.tree", "tree 2 0\n");
    fs::path prod = dir.file("square.prod", "# two legs\nleg.tree\nleg.tree\n");
    ProductGraph p = load_product_file(prod);
    CHECK(p.factor_count() == 2);
    CHECK(p.vertex_count() == 4);

    CHECK_THROWS_AS(load_product_file(dir.file("none.prod", "# empty\n")), ParseError);
    CHECK_THROWS_WITH_AS(load_product_file(dir.file("dangling.prod", "nowhere.tree\n")),
                         doctest::Contains("while loading factor"), ParseError);
}

TEST_CASE("shipped data files load to the advertised sizes") {
    CHECK(load_tree_file(data_file("p3.tree")).vertex_count == 3);
    CHECK(load_any_graph_file(data_file("c4.g")).edge_count() == 4);
    ProductGraph q3 = load_product_file(data_file("q3.prod"));
    CHECK(q3.factor_count() == 3);
    CHECK(q3.flat().vertex_count() == 8);
    CHECK(q3.flat().edge_count() == 12);
    CHECK(load_product_file(data_file("p4p3p2.prod")).vertex_count() == 24);
}

TEST_CASE("edge pair lists parse and validate") {
    using Pairs = std::vector<std::pair<Vertex, Vertex>>;
    CHECK(parse_edge_pairs("0-1") == Pairs{{0, 1}});
    CHECK(parse_edge_pairs("0-1,2-10,3-4") == Pairs{{0, 1}, {2, 10}, {3, 4}});
    CHECK_THROWS_AS(parse_edge_pairs("01"), ParseError);
    CHECK_THROWS_AS(parse_edge_pairs("0-1,abc-2"), ParseError);
    CHECK_THROWS_AS(parse_edge_pairs("0-1x"), ParseError);
}
