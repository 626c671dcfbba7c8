#include "dimer/builders.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace dimer {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// 1-based residue in 1..n
int wrap(int i, int n) { return ((i - 1) % n + n) % n + 1; }

std::string nm(const std::string& base, int i) { return base + "_" + std::to_string(i); }

}  // namespace

int BridgeMatrix::nonzero() const {
    return static_cast<int>(std::count(m_.begin(), m_.end(), std::uint8_t{1}));
}

BridgeMatrix bridge_matrix(int d) {
    if (d < 3) throw std::invalid_argument("bridge_matrix needs d >= 3, got " + std::to_string(d));
    BridgeMatrix m(d);
    if (d == 3) {
        for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {2, 5}, {5, 1}, {5, 9}, {8, 5}, {9, 8}})
            m.at(i, j) = 1;
        return m;
    }
    BridgeMatrix p = bridge_matrix(d - 1);
    const int lim = (d + 1) * (d - 2);
    auto low = [&](int i, int j) -> std::uint8_t {
        for (int t = 1; t <= d - 2; ++t)
            if (i == t * d - 2 && j == t * d - 1) return 1;
        for (int t = 1; t <= d - 3; ++t) {
            if (i == t * d - 1 && j == (t + 1) * d - 1) return 1;
            if (i == t * d - 2 && j == (t + 1) * d - 2) return 1;
            if (i == (t + 1) * d - 1 && j == t * d - 2) return 1;
        }
        int ri = i % d, rj = j % d;
        if (ri >= 1 && ri <= d - 2 && rj >= 1 && rj <= d - 2) {
            int ii = i - ceil_div(i, d) + 1, jj = j - ceil_div(j, d) + 1;
            if (ii <= p.size() && jj <= p.size()) return p(ii, jj);
        }
        return 0;
    };
    const int n = d * d;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i <= lim && j <= lim) {
                m.at(i, j) = low(i, j);
            } else if (i > (d - 2) * (d - 3) && j > (d - 2) * (d - 3)) {
                int a = n + 1 - i, b = n + 1 - j;
                if (a <= lim && b <= lim) m.at(i, j) = low(a, b);
            }
        }
    return m;
}

void trace_faces(Quiver& q) {
    const int nv = q.num_vertices();
    for (int v = 0; v < nv; ++v)
        if (!q.vertices[v].coord) throw std::invalid_argument("trace_faces needs coordinates on every vertex");
    auto xy = [&](int v) {
        const Coord& c = *q.vertices[v].coord;
        return std::pair<double, double>{c.col, -c.row};
    };
    // incident half-edges (arrow, other end), sorted by angle
    std::vector<std::vector<std::pair<int, int>>> inc(nv);
    for (int a = 0; a < q.num_arrows(); ++a) {
        inc[q.arrows[a].src].push_back({a, q.arrows[a].tgt});
        inc[q.arrows[a].tgt].push_back({a, q.arrows[a].src});
    }
    for (int v = 0; v < nv; ++v) {
        auto [x0, y0] = xy(v);
        std::sort(inc[v].begin(), inc[v].end(), [&](const auto& e1, const auto& e2) {
            auto [x1, y1] = xy(e1.second);
            auto [x2, y2] = xy(e2.second);
            double t1 = std::atan2(y1 - y0, x1 - x0), t2 = std::atan2(y2 - y0, x2 - x0);
            return t1 != t2 ? t1 < t2 : e1.first < e2.first;
        });
    }
    struct Step {
        int arrow, from, to;
    };
    std::set<std::pair<int, int>> used;  // (arrow, from)
    std::vector<Face> faces;
    for (int a0 = 0; a0 < q.num_arrows(); ++a0)
        for (auto [from0, to0] : {std::pair{q.arrows[a0].src, q.arrows[a0].tgt}, std::pair{q.arrows[a0].tgt, q.arrows[a0].src}}) {
            if (used.count({a0, from0})) continue;
            std::vector<Step> cyc;
            Step cur{a0, from0, to0};
            while (!used.count({cur.arrow, cur.from})) {
                used.insert({cur.arrow, cur.from});
                cyc.push_back(cur);
                const auto& l = inc[cur.to];
                auto it = std::find(l.begin(), l.end(), std::pair<int, int>{cur.arrow, cur.from});
                int i = static_cast<int>(it - l.begin());
                auto [na, nto] = l[(i - 1 + l.size()) % l.size()];
                cur = {na, cur.to, nto};
            }
            double area = 0;
            for (const auto& s : cyc) {
                auto [xa, ya] = xy(s.from);
                auto [xb, yb] = xy(s.to);
                area += xa * yb - xb * ya;
            }
            if (area <= 0) continue;
            bool all_along = true, none_along = true;
            for (const auto& s : cyc) {
                bool along = q.arrows[s.arrow].src == s.from;
                all_along = all_along && along;
                none_along = none_along && !along;
            }
            Face f;
            if (all_along) {
                f.sign = Sign::Minus;
                for (const auto& s : cyc) f.arrows.push_back(s.arrow);
            } else if (none_along) {
                f.sign = Sign::Plus;
                for (auto it = cyc.rbegin(); it != cyc.rend(); ++it) f.arrows.push_back(it->arrow);
            } else {
                throw std::logic_error("traced face through arrow " + std::to_string(a0) + " is not an oriented cycle");
            }
            faces.push_back(std::move(f));
        }
    std::vector<std::array<int, 2>> seen(q.num_arrows(), {0, 0});
    for (const auto& f : faces)
        for (int a : f.arrows)
            if (++seen[a][f.sign == Sign::Plus ? 0 : 1] > 1)
                throw std::logic_error("arrow " + std::to_string(a) + " lies on two faces of the same sign");
    q.faces = std::move(faces);
}

Quiver bridge_quiver(int k) {
    if (k < 2) throw std::invalid_argument("bridge_quiver needs k >= 2, got " + std::to_string(k));
    const int d = k + 1;
    BridgeMatrix m = bridge_matrix(d);
    Quiver q;
    std::map<int, int> vid;
    auto vertex = [&](int i) {
        auto it = vid.find(i);
        if (it != vid.end()) return it->second;
        auto [r, c] = m.point(i);
        int v = q.add_vertex(Coord{double(r), double(c)}, "(" + std::to_string(r) + "," + std::to_string(c) + ")");
        vid[i] = v;
        return v;
    };
    for (int i = 1; i <= m.size(); ++i)
        for (int j = 1; j <= m.size(); ++j)
            if (m(i, j)) {
                int a = vertex(i), b = vertex(j);
                auto [r1, c1] = m.point(i);
                auto [r2, c2] = m.point(j);
                std::string name;
                if (r1 == 1 && r2 == 1 && c2 == c1 + 1) name = nm("w", c1);
                else if (c1 == k && c2 == k && r2 == r1 + 1) name = nm("r", r1);
                else if (r1 == k && c1 == k && r2 == k + 1 && c2 == k + 1) name = nm("r", k);
                else if (r1 == k + 1 && r2 == k + 1 && c2 == c1 - 1) name = nm("z", k + 2 - c1);
                else if (c1 == 2 && c2 == 2 && r2 == r1 - 1) name = nm("s", k + 2 - r1);
                else if (r1 == 2 && c1 == 2 && r2 == 1 && c2 == 1) name = nm("s", k);
                q.add_arrow(a, b, name);
            }
    trace_faces(q);
    return q;
}

Quiver fan_quiver(int n) {
    if (n < 4) throw std::invalid_argument("fan_quiver needs n >= 4, got " + std::to_string(n));
    const double radius = n / 2.0;
    auto corner = [&](int j) {
        double t = std::numbers::pi / 2 - 2 * std::numbers::pi * (j - 1) / n;
        return std::pair<double, double>{radius * std::cos(t), radius * std::sin(t)};
    };
    Quiver q;
    std::map<std::pair<int, int>, int> edge;  // polygon edge {a < b} -> vertex
    auto add_edge = [&](int a, int b, const std::string& label) {
        if (a > b) std::swap(a, b);
        auto [xa, ya] = corner(a);
        auto [xb, yb] = corner(b);
        edge[{a, b}] = q.add_vertex(Coord{-(ya + yb) / 2, (xa + xb) / 2}, label);
    };
    for (int j = 1; j <= n; ++j) add_edge(j, j % n + 1, "side " + std::to_string(j));
    for (int j = 3; j <= n - 1; ++j) add_edge(1, j, "diagonal 1-" + std::to_string(j));
    auto e = [&](int a, int b) { return edge.at({std::min(a, b), std::max(a, b)}); };
    auto area = [&](const std::vector<int>& vs) {
        double s = 0;
        for (size_t i = 0; i < vs.size(); ++i) {
            const Coord& p = *q.vertices[vs[i]].coord;
            const Coord& r = *q.vertices[vs[(i + 1) % vs.size()]].coord;
            s += p.col * (-r.row) - r.col * (-p.row);
        }
        return s;
    };
    // arrows of each triangle at each of its corners
    std::map<int, std::vector<int>> at_corner;
    for (int j = 2; j <= n - 1; ++j) {
        int c[3] = {1, j, j + 1};
        std::vector<int> mids = {e(c[0], c[1]), e(c[1], c[2]), e(c[2], c[0])};
        if (area(mids) < 0) {
            std::swap(mids[1], mids[2]);
            std::swap(c[0], c[1]);
        }
        // mids[t] = edge c[t]c[t+1]; the arrow mids[t] -> mids[t+1] turns at corner c[t+1]
        std::vector<int> face;
        for (int t = 0; t < 3; ++t) {
            int a = q.add_arrow(mids[t], mids[(t + 1) % 3]);
            face.push_back(a);
            at_corner[c[(t + 1) % 3]].push_back(a);
        }
        q.add_face(Sign::Minus, face);
    }
    for (auto& [p, arrows] : at_corner) {
        if (arrows.size() < 2) continue;
        std::set<int> tgts;
        for (int a : arrows) tgts.insert(q.arrows[a].tgt);
        int first = -1;
        for (int a : arrows)
            if (!tgts.count(q.arrows[a].src)) first = a;
        std::vector<int> chain{first};
        while (chain.size() < arrows.size()) {
            int last = q.arrows[chain.back()].tgt;
            auto it = std::find_if(arrows.begin(), arrows.end(), [&](int a) { return q.arrows[a].src == last; });
            if (it == arrows.end()) throw std::logic_error("fan corner arrows do not chain");
            chain.push_back(*it);
        }
        chain.push_back(q.add_arrow(q.arrows[chain.back()].tgt, q.arrows[first].src));
        q.add_face(Sign::Plus, chain);
    }
    return q;
}

Quiver grid_quiver(int k, int n) {
    if (k < 1 || k >= n) throw std::invalid_argument("grid_quiver needs 1 <= k < n");
    const int b = n - k;
    Quiver q;
    int empty = q.add_vertex(Coord{0, 0}, "empty");
    std::map<std::pair<int, int>, int> v;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= b; ++j)
            v[{i, j}] = q.add_vertex(Coord{double(j), double(i)}, std::to_string(i) + "x" + std::to_string(j));
    std::map<std::pair<int, int>, int> h, vert, diag;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j < b; ++j) h[{i, j}] = q.add_arrow(v[{i, j}], v[{i, j + 1}]);
    for (int i = 1; i < k; ++i)
        for (int j = 1; j <= b; ++j) vert[{i, j}] = q.add_arrow(v[{i, j}], v[{i + 1, j}]);
    for (int i = 1; i < k; ++i)
        for (int j = 1; j < b; ++j) diag[{i, j}] = q.add_arrow(v[{i + 1, j + 1}], v[{i, j}]);
    int e1 = q.add_arrow(empty, v[{1, 1}]);
    int top = q.add_arrow(v[{1, b}], empty);
    int left = q.add_arrow(v[{k, 1}], empty);
    for (int i = 1; i < k; ++i)
        for (int j = 1; j < b; ++j) {
            q.add_face(Sign::Plus, {vert[{i, j}], h[{i + 1, j}], diag[{i, j}]});
            q.add_face(Sign::Minus, {h[{i, j}], vert[{i, j + 1}], diag[{i, j}]});
        }
    std::vector<int> row{e1}, col{e1};
    for (int j = 1; j < b; ++j) row.push_back(h[{1, j}]);
    row.push_back(top);
    for (int i = 1; i < k; ++i) col.push_back(vert[{i, 1}]);
    col.push_back(left);
    q.add_face(Sign::Plus, row);
    q.add_face(Sign::Minus, col);
    return q;
}

// ---------------------------------------------------------------- annulus

int AnnulusQuiver::boundary_vertex(int i) const {
    return vertex_map[disk_vertex[wrap(i, spec.n) - 1]];
}

int AnnulusQuiver::boundary_arrow(int i) const {
    return arrow_map[disk_arrow[wrap(i, spec.n) - 1]];
}

namespace {

bool is_path(const Quiver& q, const std::vector<int>& p, int from, int to) {
    if (p.empty() || q.arrows[p.front()].src != from || q.arrows[p.back()].tgt != to) return false;
    for (size_t t = 0; t + 1 < p.size(); ++t)
        if (q.arrows[p[t]].tgt != q.arrows[p[t + 1]].src) return false;
    return true;
}

}  // namespace

static std::vector<int> directed(const AnnulusQuiver& a, int i, bool forward) {
    const Quiver& q = a.quiver;
    int x = a.boundary_arrow(i);
    int from = a.boundary_vertex(i), to = a.boundary_vertex(i + 1);
    if (!forward) std::swap(from, to);
    if (q.arrows[x].src == from && q.arrows[x].tgt == to) return {x};
    for (const auto& seam : a.seams)
        for (size_t m = 0; m < seam.arrows.size(); ++m)
            if (seam.arrows[m] == x && seam.partners[m] >= 0 && is_path(q, {seam.partners[m]}, from, to))
                return {seam.partners[m]};
    // complement of x in the face it had in the disk
    int dx = a.disk_arrow[wrap(i, a.spec.n) - 1];
    for (int f = 0; f < a.disk.num_faces(); ++f) {
        const auto& df = a.disk.faces[f].arrows;
        auto it = std::find(df.begin(), df.end(), dx);
        if (it == df.end()) continue;
        const auto& gf = q.faces[f].arrows;
        size_t p = it - df.begin();
        std::vector<int> c;
        for (size_t t = 1; t < gf.size(); ++t) c.push_back(gf[(p + t) % gf.size()]);
        if (is_path(q, c, from, to)) return c;
    }
    throw std::logic_error("no path along boundary arrow b_" + std::to_string(i));
}

std::vector<int> AnnulusQuiver::u(int i) const { return directed(*this, i, true); }
std::vector<int> AnnulusQuiver::v(int i) const { return directed(*this, i, false); }

std::vector<int> AnnulusQuiver::named(const std::string& base, int i) const {
    return {quiver.arrow(nm(base, i))};
}

std::vector<int> AnnulusQuiver::r() const {
    std::vector<int> p;
    for (int i = 1; i <= spec.k; ++i) p.push_back(quiver.arrow(nm("r", i)));
    return p;
}

std::vector<int> AnnulusQuiver::s() const {
    std::vector<int> p;
    for (int i = 1; i <= spec.k; ++i) p.push_back(quiver.arrow(nm("s", i)));
    return p;
}

int AnnulusQuiver::outer_component() const {
    auto comps = boundary_components(quiver);
    int w = quiver.arrow("w_1");
    for (size_t c = 0; c < comps.size(); ++c)
        if (std::count(comps[c].begin(), comps[c].end(), w)) return static_cast<int>(c);
    throw std::logic_error("w_1 is not on the boundary");
}

int AnnulusQuiver::inner_component() const {
    int o = outer_component();
    return o == 0 ? 1 : 0;
}

AnnulusQuiver annulus_quiver(const AnnulusSpec& spec) {
    const int k = spec.k, n = spec.n, m1 = spec.m1;
    if (k < 2) throw std::invalid_argument("annulus needs k >= 2");
    if (m1 < 0 || spec.m2() < 0) throw std::invalid_argument("annulus needs n >= 2k and 0 <= m1 <= n - 2k");
    AnnulusQuiver a;
    a.spec = spec;
    a.disk = grid_quiver(k, n);
    a.bridge = bridge_quiver(k);
    auto comps = boundary_components(a.disk);
    const auto& c = comps.at(0);
    FaceIndex fx(a.disk);
    for (int t = 0; t < n; ++t) {
        a.disk_arrow.push_back(c[t]);
        a.disk_vertex.push_back(cw_from(a.disk, fx, c[t]));
        a.disk.add_name(c[t], nm("b", t + 1));
    }
    a.both = disjoint_union(a.disk, a.bridge);
    const int shift = a.disk.num_arrows();
    auto bridge_arrow = [&](const std::string& name) { return a.bridge.arrow(name) + shift; };
    for (int t = n - k; t < n; ++t) a.seam1.I.push_back(c[t]);
    for (int t = m1; t < m1 + k; ++t) a.seam2.I.push_back(c[t]);
    for (int i = k; i >= 1; --i) {
        a.seam1.J.push_back(bridge_arrow(nm("s", i)));
        a.seam2.J.push_back(bridge_arrow(nm("r", i)));
    }
    a.first_seam_only = glue(a.both, make_spec(a.both, a.seam1.I, a.seam1.J)).quiver;
    a.second_seam_only = glue(a.both, make_spec(a.both, a.seam2.I, a.seam2.J)).quiver;
    // with k + m_i - 1 = 1 a boundary component has a single vertex
    auto g = glue_many(a.both, {a.seam1, a.seam2}, GlueOptions{.allow_loops = true});
    a.quiver = std::move(g.quiver);
    a.seams = std::move(g.seams);
    a.arrow_map = std::move(g.arrow_map);
    a.vertex_map = std::move(g.vertex_map);
    return a;
}

// ---------------------------------------------------------------- presentation

int AlgebraPresentation::arrow(const std::string& name) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return static_cast<int>(i);
    throw std::out_of_range("no arrow named " + name);
}

std::string AlgebraPresentation::word(const std::vector<int>& w) const {
    if (w.empty()) return "e";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + arrows[w[i]].name;
    return s;
}

int AlgebraPresentation::count(int type) const {
    return static_cast<int>(std::count_if(relations.begin(), relations.end(), [&](const auto& r) { return r.type == type; }));
}

AlgebraPresentation gamma_presentation(int m1, int m2, int k) {
    if (k < 2 || m1 < 0 || m2 < 0) throw std::invalid_argument("gamma_presentation needs k >= 2 and m1, m2 >= 0");
    AlgebraPresentation p;
    p.m1 = m1;
    p.m2 = m2;
    p.k = k;
    const int N = k + m2 - 1, Nb = k + m1 - 1;
    p.outer = N;
    p.inner = Nb;
    p.num_vertices = N + Nb;
    for (int i = 1; i <= N; ++i) p.vertex_names.push_back(std::to_string(i));
    for (int i = 1; i <= Nb; ++i) p.vertex_names.push_back(std::to_string(i) + "'");
    auto out = [&](int i) { return wrap(i, N) - 1; };
    auto in = [&](int i) { return N + wrap(i, Nb) - 1; };

    std::map<std::string, int> id;
    auto add = [&](const std::string& name, int s, int t) {
        id[name] = static_cast<int>(p.arrows.size());
        p.arrows.push_back({name, s, t});
    };
    for (int i = 1; i <= N; ++i) {
        add(nm("y", i), out(i), out(i + 1));
        add(nm("x", i), out(i + 1), out(i));
    }
    for (int i = 1; i <= Nb; ++i) {
        add(nm("xb", i), in(i), in(i + 1));
        add(nm("yb", i), in(i + 1), in(i));
    }
    add("r", out(k), in(k));
    add("s", in(1), out(1));

    auto y = [&](int i) { return id.at(nm("y", wrap(i, N))); };
    auto x = [&](int i) { return id.at(nm("x", wrap(i, N))); };
    auto xb = [&](int i) { return id.at(nm("xb", wrap(i, Nb))); };
    auto yb = [&](int i) { return id.at(nm("yb", wrap(i, Nb))); };
    const int r = id.at("r"), s = id.at("s");
    // runs: y and xb go forwards from c, x and yb go backwards from c
    auto ys = [&](int c, int e) { std::vector<int> w; for (int t = 0; t < e; ++t) w.push_back(y(c + t)); return w; };
    auto xs = [&](int c, int e) { std::vector<int> w; for (int t = 0; t < e; ++t) w.push_back(x(c - 1 - t)); return w; };
    auto yr = [&](int c, int e) { std::vector<int> w; for (int t = 0; t < e; ++t) w.push_back(yb(c - 1 - t)); return w; };
    auto xr = [&](int c, int e) { std::vector<int> w; for (int t = 0; t < e; ++t) w.push_back(xb(c + t)); return w; };
    auto cat = [](std::initializer_list<std::vector<int>> parts) {
        std::vector<int> w;
        for (const auto& part : parts) w.insert(w.end(), part.begin(), part.end());
        return w;
    };
    auto mod = [](int a, int b) { return ((a % b) + b) % b; };

    for (int i = 1; i <= N; ++i) p.relations.push_back({1, i, {y(i), x(i)}, {x(i - 1), y(i - 1)}});
    for (int i = 1; i <= Nb; ++i) p.relations.push_back({2, i, {xb(i), yb(i)}, {yb(i - 1), xb(i - 1)}});
    for (int c = 1; c <= N; ++c) {
        int j1 = mod(k - c, N);
        p.relations.push_back({3, c, xs(c, k), cat({ys(c, j1), {r}, yr(k, 2 * k + m1 - 2), {s}, ys(1, k + m2 - j1 - 2)})});
    }
    for (int c = 1; c <= Nb; ++c) {
        int j2 = mod(c - 1, Nb);
        p.relations.push_back({4, c, xr(c, k), cat({yr(c, j2), {s}, ys(1, 2 * k + m2 - 2), {r}, yr(k, k + m1 - j2 - 2)})});
    }
    p.relations.push_back({5, 1, {s}, cat({yr(1, Nb), {s}, ys(1, N)})});
    p.relations.push_back({6, 1, {r}, cat({ys(k, N), {r}, yr(k, Nb)})});
    p.relations.push_back({7, 1, {x(k - 1), y(k - 1), r}, {r, yb(k - 1), xb(k - 1)}});
    p.relations.push_back({8, 1, {yb(Nb), xb(Nb), s}, {s, x(N), y(N)}});
    return p;
}

}  // namespace dimer
