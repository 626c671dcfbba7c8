#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "dimer/builders.hpp"
#include "dimer/gluing.hpp"
#include "fixtures.hpp"

using namespace dimer;
using fixtures::arrows;

namespace {

int euler(const Quiver& q) { return q.num_vertices() - q.num_arrows() + q.num_faces(); }

// reverse every arrow and flip every sign: the mirror image
Quiver mirror(const Quiver& q) {
    Quiver r = q;
    for (auto& a : r.arrows) std::swap(a.src, a.tgt);
    for (auto& f : r.faces) {
        f.sign = opposite(f.sign);
        std::reverse(f.arrows.begin(), f.arrows.end());
    }
    return r;
}

// crossings counted by trying every window of the path
int brute_crossings(const Quiver& q, int source, const std::vector<int>& path, const Seam& seam) {
    auto sv_list = seam.subquiver_vertices(q);
    std::set<int> sv(sv_list.begin(), sv_list.end());
    auto sa_list = seam.subquiver_arrows();
    std::set<int> sa(sa_list.begin(), sa_list.end());
    std::vector<int> x{source};
    for (int a : path) x.push_back(q.arrows[a].tgt);
    int n = static_cast<int>(path.size()), count = 0;
    for (int t = 1; t < n; ++t)
        for (int b = t; b < n; ++b) {
            bool ok = !sv.count(x[t - 1]) && !sv.count(x[b + 1]);
            for (int p = t; p <= b && ok; ++p) ok = sv.count(x[p]) > 0;
            for (int p = t; p < b && ok; ++p) ok = sa.count(path[p]) > 0;
            if (ok) ++count;
        }
    return count;
}

}  // namespace

TEST_CASE("parallel arrows") {
    Quiver q = fixtures::two_components();
    auto s1 = make_spec(q, arrows(q, {"alpha_4", "alpha_3"}), arrows(q, {"beta_1", "beta_2"}));
    CHECK(parallel(q, s1, 1));
    CHECK(parallel(q, s1, 2));
    auto s2 = make_spec(q, arrows(q, {"alpha_2"}), arrows(q, {"beta_5"}));
    CHECK_FALSE(parallel(q, s2, 1));
    auto s3 = make_spec(q, arrows(q, {"alpha_5"}), arrows(q, {"beta_2"}));
    CHECK(parallel(q, s3, 1));

    Quiver t = fixtures::two_triangles();
    auto st = make_spec(t, {t.arrow("i")}, {t.arrow("j")});
    CHECK(parallel(t, st, 1));
    Quiver m = mirror(t);
    auto sm = make_spec(m, {m.arrow("i")}, {m.arrow("j")});
    CHECK(parallel(m, sm, 1));
    CHECK(m.arrows[m.arrow("i")].src == sm.I.vertices[0]);
}

TEST_CASE("interval conditions") {
    Quiver q = fixtures::two_components();
    CHECK_THROWS_AS(make_spec(q, arrows(q, {"alpha_3", "alpha_4"}), arrows(q, {"beta_1", "beta_2"})), GluingError);
    CHECK_THROWS_AS(make_spec(q, arrows(q, {"alpha_4"}), arrows(q, {"beta_1", "beta_2"})), GluingError);
    CHECK_THROWS_AS(make_spec(q, arrows(q, {"gamma"}), arrows(q, {"alpha_1"})), GluingError);
    CHECK_THROWS_AS(make_spec(q, arrows(q, {"alpha_1"}), arrows(q, {"alpha_1"})), GluingError);
}

TEST_CASE("rho") {
    Quiver q = fixtures::two_components();
    auto all_parallel = make_spec(q, arrows(q, {"alpha_4", "alpha_3"}), arrows(q, {"beta_1", "beta_2"}));
    auto r1 = rho(q, all_parallel);
    CHECK(r1.quiver == q);
    CHECK(r1.rho == arrows(q, {"beta_1", "beta_2"}));

    auto one = make_spec(q, arrows(q, {"alpha_2"}), arrows(q, {"beta_5"}));
    auto r2 = rho(q, one);
    CHECK(r2.quiver.num_arrows() == q.num_arrows() + 1);
    CHECK(r2.quiver.num_faces() == q.num_faces() + 1);
    CHECK(validate(r2.quiver).ok());
    FaceIndex fx(r2.quiver);
    int b5 = q.arrow("beta_5");
    CHECK_FALSE(fx.is_boundary(b5));
    CHECK(fx.is_boundary(r2.rho[0]));
    // the digon carries the sign opposite to the face of beta_5
    CHECK(r2.quiver.faces.back().sign == Sign::Plus);
    CHECK(r2.quiver.arrows[r2.rho[0]].src == q.arrows[b5].tgt);
    CHECK(euler(r2.quiver) == euler(q));
}

TEST_CASE("single seams") {
    SUBCASE("two triangles along one arrow") {
        Quiver q = fixtures::two_triangles();
        auto spec = make_spec(q, {q.arrow("i")}, {q.arrow("j")});
        auto g = glue(q, spec);
        CHECK(g.quiver.num_vertices() == 4);
        CHECK(validate(g.quiver).ok());
        CHECK(surface_invariants(g.quiver).kind == SurfaceKind::Disk);
        FaceIndex fx(g.quiver);
        CHECK_FALSE(fx.is_boundary(g.seam.arrows[0]));
        CHECK(g.seam.partners[0] == -1);
    }
    SUBCASE("first example gluing gives a disk") {
        Quiver q = fixtures::two_components();
        auto spec = make_spec(q, arrows(q, {"alpha_4", "alpha_3"}), arrows(q, {"beta_1", "beta_2"}));
        auto g = glue(q, spec);
        CHECK(validate(g.quiver).ok());
        auto s = surface_invariants(g.quiver);
        CHECK(s.kind == SurfaceKind::Disk);
        CHECK(s.euler_characteristic == 1);
        // Euler characteristic: s arrows and s+1 vertex pairs merge
        CHECK(euler(g.quiver) == euler(g.rho.quiver) - (spec.size() + 1) + spec.size());
        FaceIndex fx(g.quiver);
        for (int a : g.seam.arrows) {
            REQUIRE_FALSE(fx.is_boundary(a));
            CHECK(fx.slot(a, Sign::Plus).has_value());
            CHECK(fx.slot(a, Sign::Minus).has_value());
        }
        // names of both glued arrows survive on the merged arrow
        int a4 = g.arrow_map[q.arrow("alpha_4")];
        CHECK(g.quiver.arrows[a4].names == std::vector<std::string>{"alpha_4", "beta_1"});
    }
    SUBCASE("a non-parallel pair leaves an internal two-cycle") {
        Quiver q = fixtures::two_components();
        auto spec = make_spec(q, arrows(q, {"alpha_2"}), arrows(q, {"beta_5"}));
        auto g = glue(q, spec);
        CHECK(validate(g.quiver).ok());
        int p = g.seam.partners[0];
        REQUIRE(p >= 0);
        bool digon = false;
        for (const auto& f : g.quiver.faces)
            if (f.arrows.size() == 2 && std::count(f.arrows.begin(), f.arrows.end(), p) &&
                std::count(f.arrows.begin(), f.arrows.end(), g.seam.arrows[0]))
                digon = true;
        CHECK(digon);
        FaceIndex fx(g.quiver);
        CHECK_FALSE(fx.is_boundary(p));
        CHECK_FALSE(fx.is_boundary(g.seam.arrows[0]));
    }
    SUBCASE("gluings that would create loops need consent") {
        auto a = annulus_quiver({2, 4, 0});
        CHECK_THROWS_AS(glue_many(a.both, {a.seam1, a.seam2}), GluingError);
        CHECK_NOTHROW(glue_many(a.both, {a.seam1, a.seam2}, GlueOptions{true}));
    }
}

TEST_CASE("two seams give the annulus of the example") {
    Quiver q = fixtures::two_components();
    SeamArrows first{arrows(q, {"alpha_2"}), arrows(q, {"beta_5"})};
    SeamArrows second{arrows(q, {"alpha_5"}), arrows(q, {"beta_2"})};
    auto g = glue_many(q, {first, second});
    CHECK(validate(g.quiver).ok());
    auto s = surface_invariants(g.quiver);
    CHECK(s.kind == SurfaceKind::Annulus);
    CHECK(s.euler_characteristic == 0);
    CHECK(g.seams.size() == 2);
    auto h = glue_many(q, {second, first});
    CHECK(quiver_isomorphic(g.quiver, h.quiver).has_value());
    CHECK(glue_many(q, {}).quiver == q);
    CHECK_THROWS_AS(glue_many(q, {first, first}), GluingError);
}

TEST_CASE("gluing order does not matter for the annulus fixtures") {
    for (const auto& c : fixtures::annulus_cases()) {
        CAPTURE(c.k);
        CAPTURE(c.n);
        auto a = annulus_quiver({c.k, c.n, c.m1});
        GlueOptions opt{true};
        auto x = glue_many(a.both, {a.seam1, a.seam2}, opt);
        auto y = glue_many(a.both, {a.seam2, a.seam1}, opt);
        CHECK(quiver_isomorphic(x.quiver, y.quiver).has_value());
        CHECK(quiver_isomorphic(x.quiver, a.quiver).has_value());
    }
}

TEST_CASE("seam crossings") {
    auto a = annulus_quiver({2, 6, 1});
    const Quiver& q = a.quiver;
    std::vector<std::vector<int>> out(q.num_vertices());
    for (int x = 0; x < q.num_arrows(); ++x) out[q.arrows[x].src].push_back(x);
    std::mt19937 rng(7);
    long total = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int v = static_cast<int>(rng() % q.num_vertices());
        std::vector<int> path;
        int cur = v;
        for (int len = 0; len < 12 && !out[cur].empty(); ++len) {
            int x = out[cur][rng() % out[cur].size()];
            path.push_back(x);
            cur = q.arrows[x].tgt;
        }
        for (const auto& seam : a.seams) {
            auto c = crosses_seam(q, v, path, seam);
            CHECK(static_cast<int>(c.size()) == brute_crossings(q, v, path, seam));
            total += c.size();
            for (const auto& x : c) {
                CHECK(x.before_start < x.first_arrow);
                CHECK(x.first_arrow <= x.last_arrow);
                CHECK(x.last_arrow < x.after_end);
            }
        }
    }
    CHECK(total > 0);
    // a path inside the bridge away from the seams, and one ending in a seam
    CHECK(crosses_seam(q, q.arrows[a.seams[0].arrows[0]].src, {a.seams[0].arrows[0]}, a.seams[0]).empty());
    CHECK(crosses_seam(q, 0, {}, a.seams[0]).empty());
}

TEST_CASE("formal gluing relations") {
    Quiver t = fixtures::two_triangles();
    auto st = make_spec(t, {t.arrow("i")}, {t.arrow("j")});
    auto r = glue_relation_set(rho(t, st), st);
    CHECK(r.paths.size() == 2);
    CHECK(r.idempotents.size() == 2);
    for (int k = 2; k <= 4; ++k) {
        auto a = annulus_quiver({k, 2 * k + 1, 0});
        auto spec = make_spec(a.both, a.seam1.I, a.seam1.J);
        auto f = glue_relation_set(rho(a.both, spec), spec);
        CHECK(f.paths.size() == static_cast<size_t>(2 * k));
        CHECK(f.idempotents.size() == static_cast<size_t>(k + 1));
    }
}
