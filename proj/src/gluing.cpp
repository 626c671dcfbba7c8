#include "dimer/gluing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dimer {

namespace {

std::map<int, int> clockwise_successor(const Quiver& q) {
    std::map<int, int> succ;
    for (const auto& c : boundary_components(q))
        for (size_t i = 0; i < c.size(); ++i) succ[c[i]] = c[(i + 1) % c.size()];
    return succ;
}

std::string ids(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

GluingSpec make_spec(const Quiver& q, const std::vector<int>& I, const std::vector<int>& J) {
    if (I.empty() || I.size() != J.size())
        throw GluingError("intervals must be non-empty and of equal size (" + ids(I) + " : " + ids(J) + ")");
    FaceIndex fx(q);
    std::set<int> seen;
    for (const auto* side : {&I, &J})
        for (int a : *side) {
            if (a < 0 || a >= q.num_arrows()) throw GluingError("arrow " + std::to_string(a) + " does not exist");
            if (!fx.is_boundary(a)) throw GluingError("arrow " + std::to_string(a) + " is not a boundary arrow");
            if (!seen.insert(a).second) throw GluingError("arrow " + std::to_string(a) + " is used twice");
        }
    auto succ = clockwise_successor(q);
    auto pinches = validate(q).pinch_vertices;
    // a run may pass a pinch vertex from one sector into another
    auto follows = [&](int a, int b) {
        if (succ.at(a) == b) return true;
        int v = cw_to(q, fx, a);
        return v == cw_from(q, fx, b) && std::count(pinches.begin(), pinches.end(), v) > 0;
    };
    for (size_t m = 0; m + 1 < I.size(); ++m)
        if (!follows(I[m], I[m + 1]))
            throw GluingError("I is not a clockwise run of boundary arrows at " + std::to_string(I[m]));
    for (size_t m = 0; m + 1 < J.size(); ++m)
        if (!follows(J[m + 1], J[m]))
            throw GluingError("J is not an anticlockwise run of boundary arrows at " + std::to_string(J[m]));
    GluingSpec s;
    s.I.arrows = I;
    s.J.arrows = J;
    s.I.orientation = Orientation::Clockwise;
    s.J.orientation = Orientation::Anticlockwise;
    s.I.vertices.push_back(cw_from(q, fx, I[0]));
    for (int a : I) s.I.vertices.push_back(cw_to(q, fx, a));
    s.J.vertices.push_back(cw_to(q, fx, J[0]));
    for (int a : J) s.J.vertices.push_back(cw_from(q, fx, a));
    for (int m = 1; m < s.size(); ++m)
        if (s.I.vertices[m] == s.J.vertices[m])
            throw GluingError("v_" + std::to_string(m) + " and w_" + std::to_string(m) + " coincide");
    return s;
}

bool parallel(const Quiver& q, const GluingSpec& spec, int m) {
    const auto& i = q.arrows[spec.I.arrows[m - 1]];
    const auto& j = q.arrows[spec.J.arrows[m - 1]];
    const auto& v = spec.I.vertices;
    const auto& w = spec.J.vertices;
    bool i_fwd = i.src == v[m - 1] && i.tgt == v[m];
    bool i_bwd = i.src == v[m] && i.tgt == v[m - 1];
    bool j_fwd = j.src == w[m - 1] && j.tgt == w[m];
    bool j_bwd = j.src == w[m] && j.tgt == w[m - 1];
    return (i_fwd && j_fwd) || (i_bwd && j_bwd);
}

RhoResult rho(const Quiver& q, const GluingSpec& spec) {
    FaceIndex fx(q);
    RhoResult r{q, {}};
    for (int m = 1; m <= spec.size(); ++m) {
        int j = spec.J.arrows[m - 1];
        if (parallel(q, spec, m)) {
            r.rho.push_back(j);
            continue;
        }
        int back = r.quiver.add_arrow(q.arrows[j].tgt, q.arrows[j].src);
        r.quiver.add_face(opposite(fx.only_sign(j)), {j, back});
        r.rho.push_back(back);
    }
    return r;
}

std::vector<int> Seam::subquiver_arrows() const {
    std::set<int> s(arrows.begin(), arrows.end());
    for (int p : partners)
        if (p >= 0) s.insert(p);
    for (const auto& h : hat_i) s.insert(h.begin(), h.end());
    for (const auto& h : hat_rho) s.insert(h.begin(), h.end());
    return {s.begin(), s.end()};
}

std::vector<int> Seam::subquiver_vertices(const Quiver& q) const {
    std::set<int> s(vertices.begin(), vertices.end());
    for (int a : subquiver_arrows()) {
        s.insert(q.arrows[a].src);
        s.insert(q.arrows[a].tgt);
    }
    return {s.begin(), s.end()};
}

GlueResult glue(const Quiver& q, const GluingSpec& spec, const GlueOptions& opt) {
    GlueResult g;
    g.rho = rho(q, spec);
    const Quiver& R = g.rho.quiver;
    FaceIndex fr(R);
    int s = spec.size();

    std::vector<int> parent(R.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int m = 0; m <= s; ++m) {
        int a = find(spec.I.vertices[m]), b = find(spec.J.vertices[m]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::map<int, int> merged;  // rho(j_m) -> i_m
    for (int m = 0; m < s; ++m) {
        int i = spec.I.arrows[m], rj = g.rho.rho[m];
        if (fr.only_sign(i) == fr.only_sign(rj))
            throw GluingError("gluing arrow " + std::to_string(i) + " to " + std::to_string(rj) +
                              " would put two faces of the same sign on one arrow");
        merged[rj] = i;
    }

    g.vertex_map.assign(R.num_vertices(), -1);
    for (int v = 0; v < R.num_vertices(); ++v)
        if (find(v) == v) {
            g.vertex_map[v] = g.quiver.add_vertex(R.vertices[v].coord, R.vertices[v].label);
        }
    for (int v = 0; v < R.num_vertices(); ++v) g.vertex_map[v] = g.vertex_map[find(v)];

    g.arrow_map.assign(R.num_arrows(), -1);
    for (int a = 0; a < R.num_arrows(); ++a) {
        if (merged.count(a)) continue;
        const auto& ar = R.arrows[a];
        g.arrow_map[a] = g.quiver.num_arrows();
        g.quiver.arrows.push_back({g.vertex_map[ar.src], g.vertex_map[ar.tgt], ar.names});
    }
    for (auto [rj, i] : merged) {
        g.arrow_map[rj] = g.arrow_map[i];
        for (const auto& n : R.arrows[rj].names) g.quiver.add_name(g.arrow_map[i], n);
    }
    for (int a = 0; a < g.quiver.num_arrows() && !opt.allow_loops; ++a)
        if (g.quiver.arrows[a].src == g.quiver.arrows[a].tgt)
            throw GluingError("gluing turns arrow " + std::to_string(a) + " into a loop");
    for (const auto& f : R.faces) {
        Face nf{f.sign, {}};
        for (int a : f.arrows) nf.arrows.push_back(g.arrow_map[a]);
        g.quiver.faces.push_back(std::move(nf));
    }

    auto mapped = [&](std::vector<int> p) {
        for (int& a : p) a = g.arrow_map[a];
        return p;
    };
    for (int m = 0; m < s; ++m) {
        int i = spec.I.arrows[m], rj = g.rho.rho[m], j = spec.J.arrows[m];
        g.seam.arrows.push_back(g.arrow_map[i]);
        g.seam.partners.push_back(rj == j ? -1 : g.arrow_map[j]);
        g.seam.hat_i.push_back(mapped(fr.complement(fr.only_slot(i))));
        g.seam.hat_rho.push_back(mapped(fr.complement(fr.only_slot(rj))));
    }
    for (int m = 0; m <= s; ++m) g.seam.vertices.push_back(g.vertex_map[spec.I.vertices[m]]);
    return g;
}

GlueManyResult glue_many(const Quiver& q, const std::vector<SeamArrows>& seams, const GlueOptions& opt) {
    std::set<int> used;
    for (const auto& s : seams)
        for (const auto* side : {&s.I, &s.J})
            for (int a : *side)
                if (!used.insert(a).second) throw GluingError("seams overlap at arrow " + std::to_string(a));
    GlueManyResult out;
    out.quiver = q;
    out.arrow_map.resize(q.num_arrows());
    std::iota(out.arrow_map.begin(), out.arrow_map.end(), 0);
    out.vertex_map.resize(q.num_vertices());
    std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
    for (const auto& s : seams) {
        std::vector<int> I, J;
        for (int a : s.I) I.push_back(out.arrow_map[a]);
        for (int a : s.J) J.push_back(out.arrow_map[a]);
        auto g = glue(out.quiver, make_spec(out.quiver, I, J), opt);
        for (int& a : out.arrow_map) a = g.arrow_map[a];
        for (int& v : out.vertex_map) v = g.vertex_map[v];
        for (auto& old : out.seams) {
            for (int& a : old.arrows) a = g.arrow_map[a];
            for (int& a : old.partners)
                if (a >= 0) a = g.arrow_map[a];
            for (auto& h : old.hat_i)
                for (int& a : h) a = g.arrow_map[a];
            for (auto& h : old.hat_rho)
                for (int& a : h) a = g.arrow_map[a];
            for (int& v : old.vertices) v = g.vertex_map[v];
        }
        out.seams.push_back(g.seam);
        out.quiver = std::move(g.quiver);
    }
    return out;
}

std::vector<SeamCrossing> crosses_seam(const Quiver& q, int source, const std::vector<int>& path, const Seam& seam) {
    std::set<int> sv;
    for (int v : seam.subquiver_vertices(q)) sv.insert(v);
    auto sa_list = seam.subquiver_arrows();
    std::set<int> sa(sa_list.begin(), sa_list.end());
    int len = static_cast<int>(path.size());
    std::vector<int> x{source};
    for (int a : path) x.push_back(q.arrows[a].tgt);
    auto in = [&](int t) { return sv.count(x[t]) > 0; };

    std::vector<SeamCrossing> out;
    int t = 1;
    while (t < len) {
        if (!in(t) || in(t - 1)) {
            ++t;
            continue;
        }
        int b = t;
        while (b < len && in(b + 1) && sa.count(path[b])) ++b;
        if (b < len && !in(b + 1)) {
            int s0 = t - 1;
            while (s0 > 0 && !in(s0 - 1)) --s0;
            int e = b + 1;
            while (e < len && !in(e + 1)) ++e;
            out.push_back({t, b, s0, e});
        }
        t = b + 1;
    }
    return out;
}

FormalRelations glue_relation_set(const RhoResult& r, const GluingSpec& spec) {
    FaceIndex fx(r.quiver);
    FormalRelations out;
    for (int m = 0; m < spec.size(); ++m) {
        int i = spec.I.arrows[m], rj = r.rho[m];
        out.paths.push_back({r.quiver.arrows[i].src, {i}, {rj}});
        out.paths.push_back({r.quiver.arrows[i].tgt, fx.complement(fx.only_slot(i)), fx.complement(fx.only_slot(rj))});
    }
    for (int m = 0; m <= spec.size(); ++m) out.idempotents.push_back({spec.I.vertices[m], spec.J.vertices[m]});
    return out;
}

}  // namespace dimer
