#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <regex>

#include "dimer/builders.hpp"
#include "dimer/io.hpp"
#include "dimer/strands.hpp"
#include "fixtures.hpp"

using namespace dimer;

namespace {

size_t occurrences(const std::string& text, const std::string& needle) {
    size_t n = 0;
    for (size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + needle.size())) ++n;
    return n;
}

// vertex counts of the drawn polygons, read back out of the SVG
std::vector<int> polygon_sizes(const std::string& svg) {
    std::vector<int> out;
    std::regex re("<polygon[^>]*points=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
        std::string pts = (*it)[1];
        out.push_back(static_cast<int>(std::count(pts.begin(), pts.end(), ',')));
    }
    return out;
}

}  // namespace

TEST_CASE("serialization round trip") {
    std::vector<Quiver> corpus{fixtures::triangle(), fixtures::two_components(), bridge_quiver(3), grid_quiver(3, 6),
                               fan_quiver(5), annulus_quiver({2, 6, 1}).quiver};
    for (const auto& q : corpus) {
        std::string text = serialize(q);
        Quiver back = parse(text);
        CHECK(back == q);
        CHECK(serialize(back) == text);
        CHECK(text.back() == '\n');
    }
}

TEST_CASE("canonical text") {
    const std::string f =
        "{\n"
        "  \"format\": \"dimer-quiver/1\",\n"
        "  \"vertices\": [\n"
        "    {\n      \"id\": 0\n    },\n"
        "    {\n      \"id\": 1\n    },\n"
        "    {\n      \"id\": 2,\n      \"label\": \"c\"\n    }\n"
        "  ],\n"
        "  \"arrows\": [\n"
        "    {\n      \"id\": 0,\n      \"src\": 0,\n      \"tgt\": 1,\n      \"names\": [\n        \"x\"\n      ]\n    },\n"
        "    {\n      \"id\": 1,\n      \"src\": 1,\n      \"tgt\": 2\n    },\n"
        "    {\n      \"id\": 2,\n      \"src\": 2,\n      \"tgt\": 0\n    }\n"
        "  ],\n"
        "  \"faces\": [\n"
        "    {\n      \"id\": 0,\n      \"sign\": \"+\",\n      \"arrows\": [\n        0,\n        1,\n        2\n      ]\n    }\n"
        "  ]\n"
        "}\n";
    Quiver q = parse(f);
    CHECK(q.num_vertices() == 3);
    CHECK(q.vertices[2].label == "c");
    CHECK(q.arrow("x") == 0);
    CHECK(serialize(q) == f);

    // records may come in any order; serialization sorts them
    Quiver r = parse(R"({"faces":[{"arrows":[0,1,2],"sign":"+","id":0}],
        "arrows":[{"id":2,"src":2,"tgt":0},{"id":0,"src":0,"tgt":1,"names":["x"]},{"tgt":2,"src":1,"id":1}],
        "vertices":[{"id":2,"label":"c"},{"id":1},{"id":0}]})");
    CHECK(serialize(r) == f);
}

TEST_CASE("parse errors") {
    SUBCASE("dangling vertex id names the arrow") {
        try {
            parse(R"({"vertices":[{"id":0},{"id":1}],"arrows":[{"id":0,"src":0,"tgt":1},{"id":1,"src":1,"tgt":5}],"faces":[]})");
            FAIL("accepted a dangling id");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()) == "arrow 1: tgt refers to missing vertex 5");
            CHECK(e.line == 0);
        }
    }
    SUBCASE("dangling arrow id names the face") {
        CHECK_THROWS_WITH_AS(parse(R"({"vertices":[{"id":0}],"arrows":[],"faces":[{"id":0,"sign":"+","arrows":[3]}]})"),
                             "face 0: refers to missing arrow 3", ParseError);
    }
    SUBCASE("syntax errors carry a position") {
        try {
            parse("{\n  \"vertices\": [\n    {\"id\": 0,}\n  ]\n}\n");
            FAIL("accepted bad syntax");
        } catch (const ParseError& e) {
            CHECK(e.line == 3);
            CHECK(e.column > 1);
            CHECK(std::string(e.what()).rfind("line 3, column", 0) == 0);
        }
    }
    SUBCASE("other structural problems") {
        CHECK_THROWS_AS(parse(R"({"format":"other/2","vertices":[],"arrows":[],"faces":[]})"), ParseError);
        CHECK_THROWS_AS(parse(R"({"vertices":[{"id":0},{"id":0}],"arrows":[],"faces":[]})"), ParseError);
        CHECK_THROWS_AS(parse(R"({"vertices":[],"arrows":[]})"), ParseError);
        CHECK_THROWS_AS(parse(R"({"vertices":[{"id":0}],"arrows":[],"faces":[{"id":0,"sign":"*","arrows":[]}]})"),
                        ParseError);
        CHECK_THROWS_AS(parse("[1, 2]"), ParseError);
    }
}

TEST_CASE("builder output survives a file round trip") {
    auto dir = std::filesystem::temp_directory_path() / "dimer_io_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "theta3.json").string();
    write_text_file(path, serialize(bridge_quiver(3)));
    Quiver q = read_quiver_file(path);
    CHECK(validate(q).ok());
    CHECK(q == bridge_quiver(3));
    CHECK(q.find_arrow("r_1").has_value());
    CHECK_THROWS_AS(read_quiver_file((dir / "missing.json").string()), ParseError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("drawing the bridge") {
    Quiver q = bridge_quiver(3);
    std::string svg = export_svg(q);
    CHECK(svg == export_svg(q));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(occurrences(svg, "<polygon") == static_cast<size_t>(q.num_faces()));
    CHECK(occurrences(svg, "class=\"arrow\"") == static_cast<size_t>(q.num_arrows()));
    CHECK(occurrences(svg, "<circle") == static_cast<size_t>(q.num_vertices()));
    CHECK(occurrences(svg, "class=\"face plus\"") + occurrences(svg, "class=\"face minus\"") ==
          static_cast<size_t>(q.num_faces()));
    // triangles at the two corners, squares in between
    auto sizes = polygon_sizes(svg);
    CHECK(std::count(sizes.begin(), sizes.end(), 3) >= 2);
    for (int s : sizes) CHECK((s == 3 || s == 4));
    // stored lattice coordinates are used directly
    auto pos = layout(q);
    for (int v = 0; v < q.num_vertices(); ++v) CHECK(pos[v] == *q.vertices[v].coord);
    CHECK(export_tikz(q) == export_tikz(q));
    CHECK(occurrences(export_tikz(q), "\\draw[->") == static_cast<size_t>(q.num_arrows()));
}

TEST_CASE("drawing a rectangular quiver with its strands") {
    Quiver q = grid_quiver(3, 5);
    auto d = zig_zag_strands(q);
    DrawOptions opt;
    opt.strands = &d;
    std::string svg = export_svg(q, opt);
    CHECK(occurrences(svg, "class=\"strand\"") == d.strands.size());
    CHECK(d.strands.size() == 5);
    CHECK(svg == export_svg(q, opt));
    std::string tikz = export_tikz(q, opt);
    CHECK(occurrences(tikz, "\\draw[red,->]") == d.strands.size());
    CHECK(export_svg(q) != svg);
}

TEST_CASE("layouts of quivers without coordinates") {
    Quiver q = fan_quiver(6);
    for (auto& v : q.vertices) v.coord.reset();
    auto pos = layout(q);
    CHECK(pos.size() == static_cast<size_t>(q.num_vertices()));
    for (size_t i = 0; i < pos.size(); ++i)
        for (size_t j = i + 1; j < pos.size(); ++j) CHECK(std::hypot(pos[i].row - pos[j].row, pos[i].col - pos[j].col) > 1e-6);
    CHECK(export_svg(q) == export_svg(q));
}

TEST_CASE("annuli are drawn cut open") {
    auto a = annulus_quiver({2, 6, 1});
    CHECK_THROWS_AS(layout(a.quiver), LayoutError);
    CHECK_THROWS_AS(export_svg(a.quiver), LayoutError);
    auto c = cut_open(a);
    CHECK(surface_invariants(c.disk).kind == SurfaceKind::Disk);
    CHECK(c.seam.size() == 2 * static_cast<size_t>(a.spec.k));
    DrawOptions opt;
    opt.marked_arrows = c.seam;
    std::string svg = export_svg(c.disk, opt);
    CHECK(occurrences(svg, "stroke-dasharray") == c.seam.size());
}
