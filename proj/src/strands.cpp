#include "dimer/strands.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace dimer {

namespace {

struct Passage {
    int arrow;
    Side side;
};

int side_index(Side s) { return s == Side::Zig ? 0 : 1; }

}  // namespace

std::optional<MarkedPoint> StrandDiagram::marked_point(int arrow) const {
    for (int c = 0; c < static_cast<int>(components.size()); ++c)
        for (int i = 0; i < static_cast<int>(components[c].size()); ++i)
            if (components[c][i] == arrow) return MarkedPoint{c, i, arrow};
    return std::nullopt;
}

StrandDiagram zig_zag_strands(const Quiver& q) {
    FaceIndex fx(q);
    StrandDiagram d;
    d.components = boundary_components(q);
    std::map<int, MarkedPoint> mp;
    for (int c = 0; c < static_cast<int>(d.components.size()); ++c)
        for (int i = 0; i < static_cast<int>(d.components[c].size()); ++i)
            mp[d.components[c][i]] = MarkedPoint{c, i, d.components[c][i]};

    std::vector<std::array<char, 2>> seen(q.num_arrows(), {0, 0});
    auto trace = [&](Passage p, bool from_boundary) {
        Strand s;
        s.id = static_cast<int>(d.strands.size());
        if (from_boundary) s.start = mp.at(p.arrow);
        Passage cur = p;
        while (true) {
            if (seen[cur.arrow][side_index(cur.side)]) break;  // closed strand came back round
            seen[cur.arrow][side_index(cur.side)] = 1;
            s.crossings.push_back({cur.arrow, cur.side});
            Sign turn = cur.side == Side::Zig ? Sign::Plus : Sign::Minus;
            const auto& slot = fx.slot(cur.arrow, turn);
            if (!slot) {
                s.end = mp.at(cur.arrow);
                break;
            }
            cur = {fx.next(*slot), cur.side == Side::Zig ? Side::Zag : Side::Zig};
        }
        d.strands.push_back(std::move(s));
    };
    for (const auto& comp : d.components)
        for (int a : comp) {
            // the passage entering from the missing face starts a strand
            if (!fx.slot(a, Sign::Minus)) trace({a, Side::Zig}, true);
            if (!fx.slot(a, Sign::Plus)) trace({a, Side::Zag}, true);
        }
    for (int a = 0; a < q.num_arrows(); ++a)
        for (Side s : {Side::Zig, Side::Zag})
            if (!seen[a][side_index(s)]) trace({a, s}, false);
    for (const auto& s : d.strands)
        if (s.start && s.end) d.permutation[*s.start] = *s.end;
    return d;
}

PermutationView strand_permutation(const StrandDiagram& d) {
    for (const auto& s : d.strands)
        if (s.closed()) throw ClosedStrandError("strand " + std::to_string(s.id) + " never meets the boundary");
    PermutationView v;
    v.image.resize(d.components.size());
    for (int c = 0; c < static_cast<int>(d.components.size()); ++c) v.image[c].resize(d.components[c].size());
    for (const auto& [from, to] : d.permutation) v.image[from.component][from.position] = {to.component, to.position};
    bool multi = d.components.size() > 1;
    auto name = [&](int c, int i) {
        return multi ? std::to_string(c + 1) + "." + std::to_string(i + 1) : std::to_string(i + 1);
    };
    std::set<std::pair<int, int>> done;
    std::ostringstream os;
    for (int c = 0; c < static_cast<int>(v.image.size()); ++c)
        for (int i = 0; i < static_cast<int>(v.image[c].size()); ++i) {
            if (done.count({c, i})) continue;
            os << "(";
            std::pair<int, int> p{c, i};
            bool first = true;
            while (!done.count(p)) {
                done.insert(p);
                os << (first ? "" : " ") << name(p.first, p.second);
                first = false;
                p = v.image[p.first][p.second];
            }
            os << ")";
        }
    v.cycles = os.str();
    return v;
}

bool Degree::admits(int k) const {
    for (size_t j = 0; j < sizes.size(); ++j)
        if (((k % sizes[j]) + sizes[j]) % sizes[j] != residues[j]) return false;
    return true;
}

std::optional<Degree> diagram_degree(const StrandDiagram& d) {
    Degree deg;
    for (const auto& c : d.components) deg.sizes.push_back(static_cast<int>(c.size()));
    deg.residues.assign(d.components.size(), -1);
    for (const auto& [from, to] : d.permutation) {
        if (from.component != to.component) return std::nullopt;
        int n = deg.sizes[from.component];
        int r = ((to.position - from.position) % n + n) % n;
        int& slot = deg.residues[from.component];
        if (slot == -1) slot = r;
        if (slot != r) return std::nullopt;
    }
    long long l = 1;
    for (int s : deg.sizes) l = std::lcm(l, static_cast<long long>(s));
    for (long long k = 1; k <= l; ++k)
        if (deg.admits(static_cast<int>(k))) {
            deg.value = static_cast<int>(k);
            return deg;
        }
    return std::nullopt;
}

WeakPostnikovReport check_weak_postnikov(const Quiver& q, const StrandDiagram& d) {
    FaceIndex fx(q);
    WeakPostnikovReport r;
    auto bad = [&](std::string m) {
        r.ok = false;
        r.problems.push_back(std::move(m));
    };
    std::vector<std::array<int, 2>> count(q.num_arrows(), {0, 0});
    for (const auto& s : d.strands) {
        for (size_t i = 0; i < s.crossings.size(); ++i) {
            const auto& c = s.crossings[i];
            ++count[c.arrow][side_index(c.side)];
            if (i + 1 == s.crossings.size()) break;
            const auto& n = s.crossings[i + 1];
            if (n.side == c.side) {
                bad("strand " + std::to_string(s.id) + " crosses arrows " + std::to_string(c.arrow) + " and " +
                    std::to_string(n.arrow) + " from the same side");
                continue;
            }
            const auto& slot = fx.slot(c.arrow, c.side == Side::Zig ? Sign::Plus : Sign::Minus);
            if (!slot || fx.next(*slot) != n.arrow)
                bad("strand " + std::to_string(s.id) + " jumps from arrow " + std::to_string(c.arrow) + " to " +
                    std::to_string(n.arrow) + " without turning in a face");
        }
    }
    for (int a = 0; a < q.num_arrows(); ++a)
        if (count[a][0] != 1 || count[a][1] != 1)
            bad("arrow " + std::to_string(a) + " has " + std::to_string(count[a][0]) + " zig and " +
                std::to_string(count[a][1]) + " zag passages");
    return r;
}

PostnikovReport check_postnikov(const Quiver& q, const StrandDiagram& d) {
    auto surf = surface_invariants(q);
    if (surf.kind != SurfaceKind::Disk)
        throw UnsupportedSurface(std::string("global strand axioms are checked on disks only, surface is ") +
                                 surf.description);
    PostnikovReport r;
    int ns = static_cast<int>(d.strands.size());
    std::vector<std::map<int, int>> pos(ns);  // arrow -> first index along strand
    for (int s = 0; s < ns; ++s) {
        const auto& cr = d.strands[s].crossings;
        for (int i = 0; i < static_cast<int>(cr.size()); ++i)
            if (!pos[s].emplace(cr[i].arrow, i).second) r.self_intersections.push_back({s, cr[i].arrow});
    }
    for (int a = 0; a < ns; ++a)
        for (int b = a + 1; b < ns; ++b) {
            std::vector<int> common;
            for (auto [arrow, i] : pos[a])
                if (pos[b].count(arrow)) common.push_back(arrow);
            if (common.size() < 2) continue;
            std::sort(common.begin(), common.end(), [&](int x, int y) { return pos[a][x] < pos[a][y]; });
            std::vector<int> byb = common;
            std::sort(byb.begin(), byb.end(), [&](int x, int y) { return pos[b][x] < pos[b][y]; });
            std::map<int, int> rank;
            for (int i = 0; i < static_cast<int>(byb.size()); ++i) rank[byb[i]] = i;
            bool found = false;
            for (size_t i = 0; i + 1 < common.size(); ++i) {
                int x = common[i], y = common[i + 1];
                if (rank[y] == rank[x] + 1) {
                    r.unoriented_lenses.push_back({a, b, x, y});
                    found = true;
                }
            }
            if (found) continue;
            for (size_t i = 0; i + 1 < common.size(); ++i)
                if (rank[common[i + 1]] > rank[common[i]]) {
                    r.unoriented_lenses.push_back({a, b, common[i], common[i + 1]});
                    break;
                }
        }
    return r;
}

// ---------------------------------------------------------------- labels

std::vector<int> subset_elements(Subset s) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if (s >> i & 1) out.push_back(i + 1);
    return out;
}

Subset make_subset(const std::vector<int>& elems) {
    Subset s = 0;
    for (int e : elems) {
        if (e < 1 || e > 64) throw LabelError("subset element out of range: " + std::to_string(e));
        s |= Subset{1} << (e - 1);
    }
    return s;
}

std::vector<int> boundary_vertex_order(const Quiver& q) {
    auto comps = boundary_components(q);
    if (comps.empty()) return {};
    FaceIndex fx(q);
    std::vector<int> out;
    for (int a : comps[0]) out.push_back(cw_from(q, fx, a));
    return out;
}

std::vector<int> boundary_label(int k, int n, int i) {
    std::vector<int> out;
    for (int t = k; t >= 1; --t) out.push_back(((i - t - 1) % n + n) % n + 1);
    std::sort(out.begin(), out.end());
    return out;
}

RegionLabels label_regions(const Quiver& q, int k, int n, int seed_vertex, const std::vector<int>& seed_set) {
    if (n < 1 || n > 64) throw LabelError("n must lie in 1..64");
    if (static_cast<int>(seed_set.size()) != k) throw LabelError("seed set must have exactly k elements");
    for (int e : seed_set)
        if (e < 1 || e > n) throw LabelError("seed element " + std::to_string(e) + " outside 1..n");
    Subset seed = make_subset(seed_set);
    if (static_cast<int>(subset_elements(seed).size()) != k) throw LabelError("seed set has repeated elements");

    auto d = zig_zag_strands(q);
    if (d.components.size() != 1) throw LabelError("region labels need a single boundary component");
    if (static_cast<int>(d.components[0].size()) != n)
        throw LabelError("boundary has " + std::to_string(d.components[0].size()) + " marked points, not " +
                         std::to_string(n));
    RegionLabels L;
    L.k = k;
    L.n = n;
    L.c.assign(q.num_arrows(), 0);
    L.d.assign(q.num_arrows(), 0);
    for (const auto& s : d.strands) {
        if (s.closed()) throw LabelError("closed strand " + std::to_string(s.id));
        int lab = s.start->position + 1;
        for (const auto& c : s.crossings) (c.side == Side::Zag ? L.c : L.d)[c.arrow] = lab;
    }
    L.label.assign(q.num_vertices(), 0);
    std::vector<char> done(q.num_vertices(), 0);
    std::vector<std::vector<int>> inc(q.num_vertices());
    for (int a = 0; a < q.num_arrows(); ++a) {
        inc[q.arrows[a].src].push_back(a);
        inc[q.arrows[a].tgt].push_back(a);
    }
    L.label[seed_vertex] = seed;
    done[seed_vertex] = 1;
    std::vector<int> stack{seed_vertex};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int a : inc[v]) {
            Subset cb = Subset{1} << (L.c[a] - 1), db = Subset{1} << (L.d[a] - 1);
            bool forward = q.arrows[a].src == v;
            int w = forward ? q.arrows[a].tgt : q.arrows[a].src;
            Subset I = L.label[v], J;
            if (forward) {
                if (!(I & cb) || (I & db))
                    throw LabelError("label propagation fails across arrow " + std::to_string(a));
                J = (I & ~cb) | db;
            } else {
                if (!(I & db) || (I & cb))
                    throw LabelError("label propagation fails across arrow " + std::to_string(a));
                J = (I & ~db) | cb;
            }
            if (done[w]) {
                if (L.label[w] != J) throw LabelError("inconsistent labels across arrow " + std::to_string(a));
                continue;
            }
            L.label[w] = J;
            done[w] = 1;
            stack.push_back(w);
        }
    }
    for (int v = 0; v < q.num_vertices(); ++v)
        if (!done[v]) throw LabelError("vertex " + std::to_string(v) + " is not reached from the seed");
    return L;
}

Weight arrow_weight(const RegionLabels& labels, int arrow) {
    if (arrow < 0 || arrow >= static_cast<int>(labels.c.size()) || labels.c[arrow] == 0)
        throw LabelError("arrow " + std::to_string(arrow) + " has no label data");
    Weight w(labels.n + 1, 0);
    int n = labels.n;
    for (int i = labels.c[arrow]; i != labels.d[arrow]; i = i % n + 1) w[i] = 1;
    return w;
}

Weight path_weight(const RegionLabels& labels, const std::vector<int>& path) {
    Weight w(labels.n + 1, 0);
    for (int a : path) {
        auto aw = arrow_weight(labels, a);
        for (int i = 1; i <= labels.n; ++i) w[i] += aw[i];
    }
    return w;
}

int support_size(const Weight& w) {
    int s = 0;
    for (size_t i = 1; i < w.size(); ++i) s += w[i] > 0;
    return s;
}

bool is_sincere(const Weight& w) { return support_size(w) == static_cast<int>(w.size()) - 1; }

}  // namespace dimer
