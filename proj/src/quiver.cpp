#include "dimer/quiver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dimer {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

int mod(int a, int n) { return ((a % n) + n) % n; }

std::string number_word(int n) {
    static const char* w[] = {"zero", "one", "two", "three", "four", "five", "six"};
    return n >= 0 && n <= 6 ? w[n] : std::to_string(n);
}

}  // namespace

// ---------------------------------------------------------------- Quiver

int Quiver::add_vertex(std::optional<Coord> c, std::string label) {
    vertices.push_back({c, std::move(label)});
    return num_vertices() - 1;
}

int Quiver::add_arrow(int src, int tgt, std::string name) {
    Arrow a{src, tgt, {}};
    if (!name.empty()) a.names.push_back(std::move(name));
    arrows.push_back(std::move(a));
    return num_arrows() - 1;
}

int Quiver::add_face(Sign sign, std::vector<int> arr) {
    faces.push_back({sign, std::move(arr)});
    return num_faces() - 1;
}

std::optional<int> Quiver::find_arrow(const std::string& name) const {
    for (int i = 0; i < num_arrows(); ++i)
        for (const auto& n : arrows[i].names)
            if (n == name) return i;
    return std::nullopt;
}

int Quiver::arrow(const std::string& name) const {
    auto a = find_arrow(name);
    if (!a) throw std::out_of_range("no arrow named " + name);
    return *a;
}

void Quiver::add_name(int a, std::string name) {
    auto& ns = arrows.at(a).names;
    if (std::find(ns.begin(), ns.end(), name) == ns.end()) ns.push_back(std::move(name));
}

// ---------------------------------------------------------------- FaceIndex

FaceIndex::FaceIndex(const Quiver& q) : q_(&q), slots_(q.arrows.size()), mult_(q.arrows.size(), 0) {
    for (int f = 0; f < q.num_faces(); ++f) {
        const auto& face = q.faces[f];
        int si = face.sign == Sign::Plus ? 0 : 1;
        for (int p = 0; p < static_cast<int>(face.arrows.size()); ++p) {
            int a = face.arrows[p];
            if (a < 0 || a >= q.num_arrows()) continue;
            ++mult_[a];
            if (!slots_[a][si]) slots_[a][si] = FaceSlot{f, p};
        }
    }
}

FaceSlot FaceIndex::only_slot(int a) const {
    if (slots_[a][0]) return *slots_[a][0];
    if (slots_[a][1]) return *slots_[a][1];
    throw MalformedQuiver("arrow " + std::to_string(a) + " lies on no face");
}

Sign FaceIndex::only_sign(int a) const { return slots_[a][0] ? Sign::Plus : Sign::Minus; }

int FaceIndex::next(const FaceSlot& s) const {
    const auto& arr = q_->faces[s.face].arrows;
    return arr[mod(s.pos + 1, static_cast<int>(arr.size()))];
}

int FaceIndex::prev(const FaceSlot& s) const {
    const auto& arr = q_->faces[s.face].arrows;
    return arr[mod(s.pos - 1, static_cast<int>(arr.size()))];
}

std::vector<int> FaceIndex::complement(const FaceSlot& s) const {
    const auto& arr = q_->faces[s.face].arrows;
    int m = static_cast<int>(arr.size());
    std::vector<int> out;
    for (int t = 1; t < m; ++t) out.push_back(arr[mod(s.pos + t, m)]);
    return out;
}

std::vector<int> hat(const Quiver& q, int arrow) {
    FaceIndex fx(q);
    if (!fx.is_boundary(arrow))
        throw std::invalid_argument("arrow " + std::to_string(arrow) + " is not a boundary arrow");
    return fx.complement(fx.only_slot(arrow));
}

// ---------------------------------------------------------------- validation

const char* to_string(Axiom a) {
    switch (a) {
        case Axiom::NoLoops: return "no loops";
        case Axiom::FaceMultiplicity: return "face multiplicity one or two";
        case Axiom::OppositeSigns: return "opposite signs on internal arrows";
        case Axiom::FaceShape: return "composable face boundary of length at least two";
        case Axiom::IncidenceConnected: return "connected incidence graph";
        case Axiom::IsolatedVertex: return "non-empty incidence graph";
    }
    return "?";
}

void check_well_formed(const Quiver& q) {
    int nv = q.num_vertices();
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& ar = q.arrows[a];
        if (ar.src < 0 || ar.src >= nv || ar.tgt < 0 || ar.tgt >= nv)
            throw MalformedQuiver("arrow " + std::to_string(a) + " refers to a missing vertex");
    }
    for (int f = 0; f < q.num_faces(); ++f)
        for (int a : q.faces[f].arrows)
            if (a < 0 || a >= q.num_arrows())
                throw MalformedQuiver("face " + std::to_string(f) + " refers to missing arrow " +
                                      std::to_string(a));
}

IncidenceGraph incidence_graph(const Quiver& q, int v) {
    IncidenceGraph g;
    std::map<int, int> idx;
    for (int a = 0; a < q.num_arrows(); ++a)
        if (q.arrows[a].src == v || q.arrows[a].tgt == v) {
            idx[a] = static_cast<int>(g.nodes.size());
            g.nodes.push_back(a);
        }
    std::set<std::pair<int, int>> seen;
    for (const auto& f : q.faces) {
        int m = static_cast<int>(f.arrows.size());
        for (int p = 0; p < m; ++p) {
            int a = f.arrows[p], b = f.arrows[mod(p + 1, m)];
            if (q.arrows[a].tgt == v && q.arrows[b].src == v && seen.insert({a, b}).second)
                g.edges.push_back({a, b});
        }
    }
    Dsu d(static_cast<int>(g.nodes.size()));
    int comps = static_cast<int>(g.nodes.size());
    for (auto [a, b] : g.edges)
        if (d.unite(idx[a], idx[b])) --comps;
    g.components = comps;
    return g;
}

namespace {

// Incidence components at v: for each incident arrow end, its component.
// Returns true iff every component is a path whose end nodes are boundary arrows.
bool pinch_shape(const Quiver& q, const FaceIndex& fx, const IncidenceGraph& g) {
    std::map<int, int> idx;
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) idx[g.nodes[i]] = i;
    Dsu d(static_cast<int>(g.nodes.size()));
    std::vector<int> deg(g.nodes.size(), 0);
    for (auto [a, b] : g.edges) {
        d.unite(idx[a], idx[b]);
        ++deg[idx[a]];
        ++deg[idx[b]];
    }
    std::map<int, std::pair<int, int>> count;  // root -> (nodes, edges)
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) ++count[d.find(i)].first;
    for (auto [a, b] : g.edges) ++count[d.find(idx[a])].second;
    for (auto& [r, ne] : count)
        if (ne.second != ne.first - 1) return false;
    for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
        if (deg[i] > 2) return false;
        if (deg[i] < 2 && !fx.is_boundary(g.nodes[i])) return false;
    }
    (void)q;
    return true;
}

}  // namespace

ValidationReport validate(const Quiver& q, const ValidateOptions& opt) {
    check_well_formed(q);
    ValidationReport rep;
    auto add = [&](Axiom ax, std::string where, std::string msg) {
        rep.violations.push_back({ax, std::move(where), std::move(msg)});
    };
    for (int a = 0; a < q.num_arrows(); ++a)
        if (q.arrows[a].src == q.arrows[a].tgt)
            add(Axiom::NoLoops, "arrow " + std::to_string(a), "arrow is a loop at vertex " +
                                                                 std::to_string(q.arrows[a].src));
    for (int f = 0; f < q.num_faces(); ++f) {
        const auto& arr = q.faces[f].arrows;
        int m = static_cast<int>(arr.size());
        if (m < 2) {
            add(Axiom::FaceShape, "face " + std::to_string(f), "face boundary has fewer than two arrows");
            continue;
        }
        for (int p = 0; p < m; ++p)
            if (q.arrows[arr[p]].tgt != q.arrows[arr[mod(p + 1, m)]].src)
                add(Axiom::FaceShape, "face " + std::to_string(f),
                    "arrows " + std::to_string(arr[p]) + " and " + std::to_string(arr[mod(p + 1, m)]) +
                        " do not compose");
    }
    std::vector<int> plus(q.num_arrows(), 0), minus(q.num_arrows(), 0);
    for (const auto& f : q.faces)
        for (int a : f.arrows) ++(f.sign == Sign::Plus ? plus : minus)[a];
    for (int a = 0; a < q.num_arrows(); ++a) {
        int m = plus[a] + minus[a];
        if (m == 0 || m > 2)
            add(Axiom::FaceMultiplicity, "arrow " + std::to_string(a),
                "arrow lies on " + std::to_string(m) + " face boundaries");
        else if (m == 2 && (plus[a] != 1 || minus[a] != 1))
            add(Axiom::OppositeSigns, "arrow " + std::to_string(a),
                "both faces containing the arrow have the same sign");
    }
    FaceIndex fx(q);
    for (int v = 0; v < q.num_vertices(); ++v) {
        auto g = incidence_graph(q, v);
        if (g.empty()) {
            add(Axiom::IsolatedVertex, "vertex " + std::to_string(v), "no arrow meets the vertex");
            continue;
        }
        if (g.connected()) continue;
        if (pinch_shape(q, fx, g)) {
            rep.pinch_vertices.push_back(v);
            if (!opt.strict)
                continue;
        }
        add(Axiom::IncidenceConnected, "vertex " + std::to_string(v),
            "incidence graph has " + std::to_string(g.components) + " components");
    }
    return rep;
}

// ---------------------------------------------------------------- classification

ArrowClasses classify_arrows(const Quiver& q) {
    FaceIndex fx(q);
    ArrowClasses c;
    std::vector<char> bv(q.num_vertices(), 0);
    for (int a = 0; a < q.num_arrows(); ++a) {
        if (fx.is_boundary(a)) {
            c.boundary_arrows.push_back(a);
            bv[q.arrows[a].src] = bv[q.arrows[a].tgt] = 1;
        } else {
            c.internal_arrows.push_back(a);
        }
    }
    for (int v = 0; v < q.num_vertices(); ++v) (bv[v] ? c.boundary_vertices : c.internal_vertices).push_back(v);
    return c;
}

// ---------------------------------------------------------------- boundary walk

int cw_from(const Quiver& q, const FaceIndex& fx, int a) {
    return fx.only_sign(a) == Sign::Plus ? q.arrows[a].src : q.arrows[a].tgt;
}

int cw_to(const Quiver& q, const FaceIndex& fx, int a) {
    return fx.only_sign(a) == Sign::Plus ? q.arrows[a].tgt : q.arrows[a].src;
}

namespace {

// Next boundary arrow clockwise: turn around cw_to(a) through the faces of
// the sector until a boundary arrow is met.
int boundary_successor(const Quiver& q, const FaceIndex& fx, int a) {
    FaceSlot slot = fx.only_slot(a);
    bool at_head = fx.only_sign(a) == Sign::Plus;
    for (int guard = 0; guard <= 2 * q.num_arrows() + 2; ++guard) {
        int m = static_cast<int>(q.faces[slot.face].arrows.size());
        int pos = at_head ? mod(slot.pos + 1, m) : mod(slot.pos - 1, m);
        int y = q.faces[slot.face].arrows[pos];
        bool y_head = !at_head;
        if (fx.is_boundary(y)) return y;
        const auto& sp = fx.slot(y, Sign::Plus);
        const auto& sm = fx.slot(y, Sign::Minus);
        if (!sp || !sm) throw MalformedQuiver("arrow " + std::to_string(y) + " has inconsistent faces");
        slot = (sp->face == slot.face && sp->pos == pos) ? *sm : *sp;
        at_head = y_head;
    }
    throw MalformedQuiver("boundary walk does not close at arrow " + std::to_string(a));
}

}  // namespace

std::vector<std::vector<int>> boundary_components(const Quiver& q) {
    FaceIndex fx(q);
    std::vector<char> used(q.num_arrows(), 0);
    std::vector<std::vector<int>> out;
    for (int a = 0; a < q.num_arrows(); ++a) {
        if (!fx.is_boundary(a) || used[a]) continue;
        std::vector<int> cyc;
        int y = a;
        while (!used[y]) {
            used[y] = 1;
            cyc.push_back(y);
            y = boundary_successor(q, fx, y);
        }
        if (y != a) throw MalformedQuiver("boundary arrows do not form cycles near arrow " + std::to_string(a));
        out.push_back(std::move(cyc));
    }
    return out;
}

// ---------------------------------------------------------------- surface

const char* to_string(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::Disk: return "disk";
        case SurfaceKind::Annulus: return "annulus";
        case SurfaceKind::PinchedDisks: return "pinched";
        case SurfaceKind::Other: return "other";
        case SurfaceKind::Disconnected: return "disconnected";
    }
    return "?";
}

std::vector<std::vector<int>> connected_components(const Quiver& q) {
    Dsu d(q.num_vertices());
    for (const auto& a : q.arrows) d.unite(a.src, a.tgt);
    std::map<int, std::vector<int>> by;
    for (int v = 0; v < q.num_vertices(); ++v) by[d.find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [r, vs] : by) out.push_back(std::move(vs));
    return out;
}

namespace {

Quiver induced(const Quiver& q, const std::vector<int>& verts) {
    std::vector<int> vid(q.num_vertices(), -1), aid(q.num_arrows(), -1);
    Quiver r;
    for (int v : verts) vid[v] = r.add_vertex(q.vertices[v].coord, q.vertices[v].label);
    for (int a = 0; a < q.num_arrows(); ++a)
        if (vid[q.arrows[a].src] >= 0) {
            aid[a] = r.num_arrows();
            r.arrows.push_back({vid[q.arrows[a].src], vid[q.arrows[a].tgt], q.arrows[a].names});
        }
    for (const auto& f : q.faces)
        if (aid[f.arrows.front()] >= 0) {
            std::vector<int> arr;
            for (int a : f.arrows) arr.push_back(aid[a]);
            r.add_face(f.sign, std::move(arr));
        }
    return r;
}

// Pull apart every vertex along its incidence components.
Quiver split_pinches(const Quiver& q) {
    Quiver r;
    std::vector<std::map<int, int>> copy(q.num_vertices());  // vertex -> (component root arrow -> new id)
    std::vector<int> src(q.num_arrows()), tgt(q.num_arrows());
    for (int v = 0; v < q.num_vertices(); ++v) {
        auto g = incidence_graph(q, v);
        std::map<int, int> idx;
        for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) idx[g.nodes[i]] = i;
        Dsu d(static_cast<int>(g.nodes.size()));
        for (auto [a, b] : g.edges) d.unite(idx[a], idx[b]);
        if (g.nodes.empty()) r.add_vertex(q.vertices[v].coord, q.vertices[v].label);
        for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
            int root = d.find(i);
            auto it = copy[v].find(root);
            int nv = it != copy[v].end() ? it->second
                                         : (copy[v][root] = r.add_vertex(q.vertices[v].coord, q.vertices[v].label));
            int a = g.nodes[i];
            if (q.arrows[a].src == v) src[a] = nv;
            if (q.arrows[a].tgt == v) tgt[a] = nv;
        }
    }
    for (int a = 0; a < q.num_arrows(); ++a) r.arrows.push_back({src[a], tgt[a], q.arrows[a].names});
    r.faces = q.faces;
    return r;
}

SurfaceInfo connected_surface(const Quiver& q, const std::vector<int>& pinches) {
    SurfaceInfo s;
    s.euler_characteristic = q.num_vertices() - q.num_arrows() + q.num_faces();
    s.boundary_components = boundary_components(q);
    int b = static_cast<int>(s.boundary_components.size());
    if (pinches.empty()) {
        int twice_g = 2 - s.euler_characteristic - b;
        if (twice_g >= 0 && twice_g % 2 == 0) s.genus = twice_g / 2;
        if (s.euler_characteristic == 1 && b == 1) {
            s.kind = SurfaceKind::Disk;
            s.description = "disk";
        } else if (s.euler_characteristic == 0 && b == 2) {
            s.kind = SurfaceKind::Annulus;
            s.description = "annulus";
        } else {
            s.kind = SurfaceKind::Other;
            s.description = "surface with chi=" + std::to_string(s.euler_characteristic) + " and " +
                            std::to_string(b) + " boundary components";
        }
        return s;
    }
    Quiver sp = split_pinches(q);
    auto comps = connected_components(sp);
    s.kind = SurfaceKind::PinchedDisks;
    s.pieces = static_cast<int>(comps.size());
    s.pinch_vertices = static_cast<int>(pinches.size());
    s.shared_arrows = 0;  // every arrow belongs to exactly one piece after splitting
    bool all_disks = true;
    for (const auto& c : comps) {
        auto piece = connected_surface(induced(sp, c), {});
        all_disks = all_disks && piece.kind == SurfaceKind::Disk;
        s.components.push_back(std::move(piece));
    }
    if (!all_disks) s.kind = SurfaceKind::Other;
    std::string what = all_disks ? (s.pieces == 1 ? "disk" : "disks") : "surfaces";
    std::string where = s.pinch_vertices == 1 ? "a single vertex" : number_word(s.pinch_vertices) + " vertices";
    s.description = number_word(s.pieces) + " " + what + " meeting at " + where;
    return s;
}

}  // namespace

SurfaceInfo surface_invariants(const Quiver& q) {
    auto comps = connected_components(q);
    auto rep = validate(q);
    if (comps.size() <= 1) return connected_surface(q, rep.pinch_vertices);
    SurfaceInfo s;
    s.kind = SurfaceKind::Disconnected;
    s.euler_characteristic = q.num_vertices() - q.num_arrows() + q.num_faces();
    s.boundary_components = boundary_components(q);
    s.pieces = static_cast<int>(comps.size());
    for (const auto& c : comps) {
        Quiver sub = induced(q, c);
        s.components.push_back(connected_surface(sub, validate(sub).pinch_vertices));
    }
    s.description = "disconnected, " + std::to_string(comps.size()) + " components";
    return s;
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct IsoState {
    std::vector<int> amap, ainv, vmap, vinv, fmap, finv;
};

bool propagate(const Quiver& q1, const Quiver& q2, const FaceIndex& f1, const FaceIndex& f2, IsoState& st,
               int a0, int b0) {
    std::vector<std::pair<int, int>> work{{a0, b0}};
    auto mapv = [&](int x, int y) {
        if (st.vmap[x] == -1 && st.vinv[y] == -1) {
            st.vmap[x] = y;
            st.vinv[y] = x;
            return true;
        }
        return st.vmap[x] == y;
    };
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        if (st.amap[x] == y) continue;
        if (st.amap[x] != -1 || st.ainv[y] != -1) return false;
        if (f1.multiplicity(x) != f2.multiplicity(y)) return false;
        st.amap[x] = y;
        st.ainv[y] = x;
        if (!mapv(q1.arrows[x].src, q2.arrows[y].src) || !mapv(q1.arrows[x].tgt, q2.arrows[y].tgt)) return false;
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const auto& s1 = f1.slot(x, s);
            const auto& s2 = f2.slot(y, s);
            if (bool(s1) != bool(s2)) return false;
            if (!s1) continue;
            const auto& A = q1.faces[s1->face].arrows;
            const auto& B = q2.faces[s2->face].arrows;
            if (A.size() != B.size()) return false;
            if (st.fmap[s1->face] == -1 && st.finv[s2->face] == -1) {
                st.fmap[s1->face] = s2->face;
                st.finv[s2->face] = s1->face;
            } else if (st.fmap[s1->face] != s2->face) {
                return false;
            }
            int m = static_cast<int>(A.size());
            for (int t = 1; t < m; ++t) work.push_back({A[mod(s1->pos + t, m)], B[mod(s2->pos + t, m)]});
        }
    }
    return true;
}

bool search(const Quiver& q1, const Quiver& q2, const FaceIndex& f1, const FaceIndex& f2, IsoState& st) {
    int a = -1;
    for (int i = 0; i < q1.num_arrows(); ++i)
        if (st.amap[i] == -1) {
            a = i;
            break;
        }
    if (a == -1) return true;
    for (int b = 0; b < q2.num_arrows(); ++b) {
        if (st.ainv[b] != -1) continue;
        IsoState trial = st;
        if (propagate(q1, q2, f1, f2, trial, a, b) && search(q1, q2, f1, f2, trial)) {
            st = std::move(trial);
            return true;
        }
    }
    return false;
}

}  // namespace

std::optional<Isomorphism> quiver_isomorphic(const Quiver& q1, const Quiver& q2) {
    if (q1.num_vertices() != q2.num_vertices() || q1.num_arrows() != q2.num_arrows() ||
        q1.num_faces() != q2.num_faces())
        return std::nullopt;
    auto profile = [](const Quiver& q) {
        std::multiset<std::pair<int, int>> p;
        for (const auto& f : q.faces) p.insert({f.sign == Sign::Plus ? 0 : 1, static_cast<int>(f.arrows.size())});
        return p;
    };
    if (profile(q1) != profile(q2)) return std::nullopt;
    FaceIndex f1(q1), f2(q2);
    IsoState st{std::vector<int>(q1.num_arrows(), -1), std::vector<int>(q2.num_arrows(), -1),
                std::vector<int>(q1.num_vertices(), -1), std::vector<int>(q2.num_vertices(), -1),
                std::vector<int>(q1.num_faces(), -1), std::vector<int>(q2.num_faces(), -1)};
    if (!search(q1, q2, f1, f2, st)) return std::nullopt;
    // isolated vertices carry no structure; pair them in id order
    int next = 0;
    for (int v = 0; v < q1.num_vertices(); ++v) {
        if (st.vmap[v] != -1) continue;
        while (next < q2.num_vertices() && st.vinv[next] != -1) ++next;
        if (next == q2.num_vertices()) return std::nullopt;
        st.vmap[v] = next;
        st.vinv[next] = v;
    }
    for (int f = 0; f < q1.num_faces(); ++f)
        if (st.fmap[f] == -1) return std::nullopt;
    return Isomorphism{st.vmap, st.amap, st.fmap};
}

Quiver disjoint_union(const Quiver& a, const Quiver& b) {
    Quiver r = a;
    int nv = a.num_vertices(), na = a.num_arrows();
    for (const auto& v : b.vertices) r.vertices.push_back(v);
    for (const auto& ar : b.arrows) r.arrows.push_back({ar.src + nv, ar.tgt + nv, ar.names});
    for (const auto& f : b.faces) {
        Face g = f;
        for (int& x : g.arrows) x += na;
        r.faces.push_back(std::move(g));
    }
    return r;
}

}  // namespace dimer
