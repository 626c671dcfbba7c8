#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "dimer/builders.hpp"
#include "dimer/strands.hpp"
#include "fixtures.hpp"

using namespace dimer;

namespace {

// The recursion for the bridge matrix, evaluated entry by entry.  The copy
// rule reads "i, j mod d <= d-2" on lattice columns 1 .. d-2; column d (residue
// 0) would land on the wrong row of the smaller lattice.
int bridge_entry(int d, int i, int j) {
    if (d == 3) {
        static const std::set<std::pair<int, int>> ones{{1, 2}, {2, 5}, {5, 1}, {5, 9}, {8, 5}, {9, 8}};
        return ones.count({i, j}) ? 1 : 0;
    }
    const int lim = (d + 1) * (d - 2);
    if (i > lim || j > lim) {
        if (i <= (d - 2) * (d - 3) || j <= (d - 2) * (d - 3)) return 0;
        int a = d * d + 1 - i, b = d * d + 1 - j;
        return a <= lim && b <= lim ? bridge_entry(d, a, b) : 0;
    }
    for (int t = 1; t <= d - 2; ++t) {
        if (i == t * d - 2 && j == t * d - 1) return 1;
        if (t < d - 2) {
            if (i == t * d - 1 && j == (t + 1) * d - 1) return 1;
            if (i == t * d - 2 && j == (t + 1) * d - 2) return 1;
            if (i == (t + 1) * d - 1 && j == t * d - 2) return 1;
        }
    }
    const int ci = (i - 1) % d + 1, cj = (j - 1) % d + 1;  // lattice columns
    if (ci <= d - 2 && cj <= d - 2) {
        // same lattice point one column narrower
        int ri = (i - 1) / d, rj = (j - 1) / d;
        return bridge_entry(d - 1, ri * (d - 1) + ci, rj * (d - 1) + cj);
    }
    return 0;
}

std::map<std::pair<int, int>, int> by_coord(const Quiver& q) {
    std::map<std::pair<int, int>, int> m;
    for (int v = 0; v < q.num_vertices(); ++v)
        m[{static_cast<int>(q.vertices[v].coord->row), static_cast<int>(q.vertices[v].coord->col)}] = v;
    return m;
}

bool has_arrow(const Quiver& q, int s, int t) {
    for (const auto& a : q.arrows)
        if (a.src == s && a.tgt == t) return true;
    return false;
}

// a face whose vertex cycle is exactly the given cycle
bool has_face_through(const Quiver& q, const std::vector<int>& cycle) {
    for (const auto& f : q.faces) {
        if (f.arrows.size() != cycle.size()) continue;
        std::vector<int> vs;
        for (int a : f.arrows) vs.push_back(q.arrows[a].src);
        for (size_t r = 0; r < vs.size(); ++r) {
            std::rotate(vs.begin(), vs.begin() + 1, vs.end());
            if (vs == cycle) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("bridge matrix for d = 3 is the displayed one") {
    auto m = bridge_matrix(3);
    CHECK(m.size() == 9);
    CHECK(m.nonzero() == 6);
    for (int j = 1; j <= 9; ++j) CHECK(m(5, j) == (j == 1 || j == 9 ? 1 : 0));
    CHECK_THROWS(bridge_matrix(2));
}

TEST_CASE("bridge matrix recursion") {
    CHECK(bridge_matrix(4)(6, 7) == 1);
    for (int d = 3; d <= 8; ++d) {
        CAPTURE(d);
        auto m = bridge_matrix(d);
        int bad = 0;
        for (int i = 1; i <= d * d; ++i)
            for (int j = 1; j <= d * d; ++j) bad += m(i, j) != bridge_entry(d, i, j);
        CHECK(bad == 0);
    }
}

TEST_CASE("bridge quivers") {
    SUBCASE("two triangles at a point") {
        Quiver q = bridge_quiver(2);
        CHECK(q.num_vertices() == 5);
        CHECK(q.num_arrows() == 6);
        CHECK(q.num_faces() == 2);
        CHECK(surface_invariants(q).description == "two disks meeting at a single vertex");
    }
    for (int k = 2; k <= 7; ++k) {
        CAPTURE(k);
        Quiver q = bridge_quiver(k);
        auto m = bridge_matrix(k + 1);
        // vertices are the nonzero rows, arrows the nonzero entries
        std::set<int> rows;
        for (int i = 1; i <= m.size(); ++i)
            for (int j = 1; j <= m.size(); ++j)
                if (m(i, j)) rows.insert(i), rows.insert(j);
        CHECK(q.num_vertices() == static_cast<int>(rows.size()));
        CHECK(q.num_arrows() == m.nonzero());
        auto at = by_coord(q);
        for (const auto& a : q.arrows) {
            auto s = q.vertices[a.src].coord, t = q.vertices[a.tgt].coord;
            int i = (static_cast<int>(s->row) - 1) * (k + 1) + static_cast<int>(s->col);
            int j = (static_cast<int>(t->row) - 1) * (k + 1) + static_cast<int>(t->col);
            CHECK(m(i, j) == 1);
        }
        // rotation about the centre maps arrows to arrows
        for (const auto& a : q.arrows) {
            auto s = q.vertices[a.src].coord, t = q.vertices[a.tgt].coord;
            auto rs = at.find({k + 2 - static_cast<int>(s->row), k + 2 - static_cast<int>(s->col)});
            auto rt = at.find({k + 2 - static_cast<int>(t->row), k + 2 - static_cast<int>(t->col)});
            REQUIRE(rs != at.end());
            REQUIRE(rt != at.end());
            CHECK(has_arrow(q, rs->second, rt->second));
        }
        CHECK(validate(q).ok());
        auto s = surface_invariants(q);
        if (k >= 3) {
            CHECK(s.kind == SurfaceKind::Disk);
            CHECK(s.euler_characteristic == 1);
            // corner triangles of the shape
            CHECK(has_face_through(q, {at.at({1, 1}), at.at({1, 2}), at.at({2, 2})}));
            CHECK(has_face_through(q, {at.at({k + 1, k + 1}), at.at({k + 1, k}), at.at({k, k})}));
            for (int i = 1; i <= k - 1; ++i) {
                CHECK(q.arrows[q.arrow("r_" + std::to_string(i))].src == at.at({i, k}));
                CHECK(q.arrows[q.arrow("r_" + std::to_string(i))].tgt == at.at({i + 1, k}));
            }
            CHECK(q.arrows[q.arrow("r_" + std::to_string(k))].src == at.at({k, k}));
            CHECK(q.arrows[q.arrow("r_" + std::to_string(k))].tgt == at.at({k + 1, k + 1}));
            CHECK(q.arrows[q.arrow("s_" + std::to_string(k))].src == at.at({2, 2}));
            CHECK(q.arrows[q.arrow("s_" + std::to_string(k))].tgt == at.at({1, 1}));
        }
    }
}

TEST_CASE("fan quivers") {
    for (int n = 4; n <= 8; ++n) {
        CAPTURE(n);
        Quiver q = fan_quiver(n);
        CHECK(q.num_vertices() == 2 * (n - 2) + 1);
        CHECK(validate(q).ok());
        CHECK(surface_invariants(q).kind == SurfaceKind::Disk);
        auto d = zig_zag_strands(q);
        CHECK(check_postnikov(q, d).ok());
        auto deg = diagram_degree(d);
        REQUIRE(deg);
        CHECK(deg->residues == std::vector<int>{2});
        CHECK(boundary_components(q).at(0).size() == static_cast<size_t>(n));
    }
    CHECK_THROWS(fan_quiver(3));
}

TEST_CASE("rectangular quivers") {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{1, 4}, {1, 6}, {2, 4}, {2, 5}, {3, 5}, {3, 6}, {2, 7}, {4, 9}}) {
        CAPTURE(k);
        CAPTURE(n);
        Quiver q = grid_quiver(k, n);
        CHECK(q.num_vertices() == k * (n - k) + 1);
        CHECK(validate(q).ok());
        CHECK(surface_invariants(q).kind == SurfaceKind::Disk);
        CHECK(boundary_components(q).at(0).size() == static_cast<size_t>(n));
        auto d = zig_zag_strands(q);
        CHECK(check_postnikov(q, d).ok());
        auto deg = diagram_degree(d);
        REQUIRE(deg);
        CHECK(deg->residues == std::vector<int>{k});
    }
    // (2, 5): every triangulation of the pentagon is a rotation of the fan
    CHECK(quiver_isomorphic(grid_quiver(2, 5), fan_quiver(5)).has_value());
    CHECK_THROWS(grid_quiver(0, 4));
    CHECK_THROWS(grid_quiver(4, 4));
}

TEST_CASE("annulus assembly") {
    for (const auto& c : fixtures::annulus_cases()) {
        CAPTURE(c.k);
        CAPTURE(c.n);
        auto a = annulus_quiver({c.k, c.n, c.m1});
        const int m2 = a.spec.m2();
        auto comps = boundary_components(a.quiver);
        REQUIRE(comps.size() == 2);
        CHECK(comps[a.outer_component()].size() == static_cast<size_t>(c.k + m2 - 1));
        CHECK(comps[a.inner_component()].size() == static_cast<size_t>(c.k + c.m1 - 1));
        CHECK(surface_invariants(a.quiver).euler_characteristic == 0);
        auto deg = diagram_degree(zig_zag_strands(a.quiver));
        REQUIRE(deg);
        CHECK(deg->admits(c.k));
        for (const Quiver* one : {&a.first_seam_only, &a.second_seam_only}) {
            CHECK(surface_invariants(*one).kind == SurfaceKind::Disk);
            CHECK(check_postnikov(*one, zig_zag_strands(*one)).ok());
        }
        // seams: I_1 is the arrows b_{n-k} .. b_{n-1} of the disk
        CHECK(a.seam1.I.size() == static_cast<size_t>(c.k));
        CHECK(a.seam2.I.size() == static_cast<size_t>(c.k));
        CHECK(a.r().size() == static_cast<size_t>(c.k));
        CHECK(a.s().size() == static_cast<size_t>(c.k));
        // u_i and v_i are parallel paths in opposite directions
        for (int i = 1; i <= c.n; ++i) {
            auto u = a.u(i), v = a.v(i);
            CHECK(a.quiver.arrows[u.front()].src == a.boundary_vertex(i));
            CHECK(a.quiver.arrows[v.back()].tgt == a.boundary_vertex(i));
        }
    }
    CHECK_THROWS(annulus_quiver({3, 5, 0}));
}

TEST_CASE("presentation of the boundary algebra") {
    auto check_counts = [](int m1, int m2, int k) {
        auto p = gamma_presentation(m1, m2, k);
        CHECK(p.num_vertices == 2 * k - 2 + m1 + m2);
        CHECK(p.outer == k + m2 - 1);
        CHECK(p.inner == k + m1 - 1);
        CHECK(p.count(1) == k + m2 - 1);
        CHECK(p.count(3) == k + m2 - 1);
        CHECK(p.count(2) == k + m1 - 1);
        CHECK(p.count(4) == k + m1 - 1);
        for (int t = 5; t <= 8; ++t) CHECK(p.count(t) == 1);
        // every relation is a difference of two parallel paths of Gamma
        auto ends = [&](const std::vector<int>& w) {
            for (size_t i = 0; i + 1 < w.size(); ++i) CHECK(p.arrows[w[i]].tgt == p.arrows[w[i + 1]].src);
            return std::pair{p.arrows[w.front()].src, p.arrows[w.back()].tgt};
        };
        for (const auto& r : p.relations) {
            CAPTURE(r.type);
            CHECK(ends(r.lhs) == ends(r.rhs));
        }
        for (const auto& r : p.relations)
            if (r.type == 5) {
                CHECK(r.lhs.size() == 1);
                CHECK(r.rhs.size() == static_cast<size_t>(m1 + k - 1 + 1 + m2 + k - 1));
            }
        return p;
    };
    check_counts(1, 1, 2);
    check_counts(0, 0, 2);
    check_counts(0, 1, 3);
    check_counts(2, 3, 4);
    CHECK(gamma_presentation(8, 4, 3).num_vertices == 16);
    auto p = gamma_presentation(1, 1, 2);
    // r runs from the outer cycle to the inner one, s back again
    CHECK(p.arrows[p.arrow("r")].src < p.outer);
    CHECK(p.arrows[p.arrow("r")].tgt >= p.outer);
    CHECK(p.arrows[p.arrow("s")].src >= p.outer);
    CHECK(p.arrows[p.arrow("s")].tgt < p.outer);
}
