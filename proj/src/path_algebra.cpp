#include "dimer/path_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

namespace dimer {

bool composable(const Quiver& q, const Path& p) {
    if (p.source < 0 || p.source >= q.num_vertices()) return false;
    int at = p.source;
    for (int a : p.arrows) {
        if (a < 0 || a >= q.num_arrows() || q.arrows[a].src != at) return false;
        at = q.arrows[a].tgt;
    }
    return true;
}

std::string path_string(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e" + std::to_string(p.source);
    std::string s;
    for (size_t i = 0; i < p.arrows.size(); ++i) {
        const auto& names = q.arrows[p.arrows[i]].names;
        s += (i ? " " : "") + (names.empty() ? "a" + std::to_string(p.arrows[i]) : names.front());
    }
    return s;
}

Potential potential(const Quiver& q) {
    Potential w;
    for (const auto& f : q.faces) w.terms.push_back({f.sign == Sign::Plus ? 1 : -1, f.arrows});
    return w;
}

RelationSet relations(const Quiver& q) {
    FaceIndex fx(q);
    RelationSet r;
    for (int a = 0; a < q.num_arrows(); ++a) {
        if (fx.multiplicity(a) != 2) continue;
        int start = q.arrows[a].tgt;
        r.arrows.push_back({a, {start, fx.complement(*fx.slot(a, Sign::Plus))}, {start, fx.complement(*fx.slot(a, Sign::Minus))}});
    }
    return r;
}

int max_face_size(const Quiver& q) {
    int m = 0;
    for (const auto& f : q.faces) m = std::max(m, static_cast<int>(f.arrows.size()));
    return m;
}

std::vector<Path> unit_cycles(const Quiver& q, int v) {
    std::vector<Path> out;
    for (const auto& f : q.faces)
        for (size_t p = 0; p < f.arrows.size(); ++p)
            if (q.arrows[f.arrows[p]].src == v) {
                Path c{v, {}};
                for (size_t t = 0; t < f.arrows.size(); ++t) c.arrows.push_back(f.arrows[(p + t) % f.arrows.size()]);
                out.push_back(std::move(c));
            }
    return out;
}

std::size_t path_budget() {
    if (const char* env = std::getenv("DIMER_PATH_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return 16'000'000;
}

namespace {

std::size_t search_limit() { return std::max<std::size_t>(path_budget() / 8, 1000); }

std::vector<PathRelation> potential_relations(const Quiver& q) {
    std::vector<PathRelation> out;
    for (const auto& r : relations(q).arrows) out.push_back({r.plus.source, r.plus.arrows, r.minus.arrows});
    return out;
}

}  // namespace

// ---------------------------------------------------------------- truncation

TruncatedAlgebra::TruncatedAlgebra(const Quiver& q, int max_len)
    : TruncatedAlgebra(q, max_len, potential_relations(q)) {}

TruncatedAlgebra::TruncatedAlgebra(const Quiver& q, int max_len, const std::vector<PathRelation>& rels)
    : q_(&q), max_len_(max_len) {
    int mf = max_face_size(q);
    if (max_len < mf || max_len > 255)
        throw std::invalid_argument("length bound must lie between the largest face size (" + std::to_string(mf) +
                                    ") and 255");
    safe_len_ = max_len - mf;
    out_.resize(q.num_vertices());
    in_.resize(q.num_vertices());
    out_pos_.resize(q.num_arrows());
    for (int a = 0; a < q.num_arrows(); ++a) {
        out_pos_[a] = static_cast<int>(out_[q.arrows[a].src].size());
        out_[q.arrows[a].src].push_back(a);
        in_[q.arrows[a].tgt].push_back(a);
    }
    for (int v = 0; v < q.num_vertices(); ++v) {
        auto cs = unit_cycles(q, v);
        Path best{v, {}};
        for (auto& c : cs)
            if (best.arrows.empty() || c.length() < best.length()) best = c;
        unit_.push_back(best);
    }
    build();
    close(rels);
}

void TruncatedAlgebra::build() {
    const int nv = q_->num_vertices();
    // count first so the budget is checked before allocating
    std::vector<long double> per(nv, 1.0L);
    long double total = nv;
    int achieved = 0;
    for (int l = 1; l <= max_len_; ++l) {
        std::vector<long double> next(nv, 0.0L);
        for (int v = 0; v < nv; ++v)
            for (int a : out_[v]) next[q_->arrows[a].tgt] += per[v];
        per = std::move(next);
        for (auto c : per) total += c;
        if (total > static_cast<long double>(path_budget()))
            throw BudgetExceeded("path budget of " + std::to_string(path_budget()) + " nodes exceeded at length " +
                                     std::to_string(l),
                                 achieved);
        achieved = l;
    }
    const auto n = static_cast<std::size_t>(total);
    parent_.reserve(n);
    last_.reserve(n);
    src_.reserve(n);
    len_.reserve(n);
    first_child_.reserve(n);
    for (int v = 0; v < nv; ++v) {
        parent_.push_back(-1);
        last_.push_back(-1);
        src_.push_back(v);
        len_.push_back(0);
    }
    for (std::size_t x = 0; x < parent_.size(); ++x) {
        if (len_[x] >= max_len_) {
            first_child_.push_back(-1);
            continue;
        }
        int t = target(static_cast<int>(x));
        first_child_.push_back(static_cast<int>(parent_.size()));
        for (int a : out_[t]) {
            parent_.push_back(static_cast<int>(x));
            last_.push_back(a);
            src_.push_back(src_[x]);
            len_.push_back(static_cast<std::uint8_t>(len_[x] + 1));
        }
    }
}

int TruncatedAlgebra::target(int node) const {
    return len_[node] == 0 ? node : q_->arrows[last_[node]].tgt;
}

int TruncatedAlgebra::child(int node, int arrow) const {
    if (len_[node] >= max_len_) return -1;
    return first_child_[node] + out_pos_[arrow];
}

int TruncatedAlgebra::extend(int node, const std::vector<int>& arrows) const {
    for (int a : arrows) {
        if (node < 0) return -1;
        if (q_->arrows[a].src != target(node)) throw std::invalid_argument("path does not compose");
        node = child(node, a);
    }
    return node;
}

int TruncatedAlgebra::node(const Path& p) const { return extend(trivial(p.source), p.arrows); }

Path TruncatedAlgebra::path(int node) const {
    Path p{src_[node], {}};
    for (int x = node; len_[x] > 0; x = parent_[x]) p.arrows.push_back(last_[x]);
    std::reverse(p.arrows.begin(), p.arrows.end());
    return p;
}

void TruncatedAlgebra::close(const std::vector<PathRelation>& rels) {
    const int n = num_nodes();
    std::vector<int> uf(n), ext(n);
    std::iota(uf.begin(), uf.end(), 0);
    for (int x = 0; x < n; ++x) ext[x] = len_[x] < max_len_ ? x : -1;
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    std::vector<std::pair<int, int>> work;
    for (const auto& r : rels) {
        int a = node({r.source, r.lhs}), b = node({r.source, r.rhs});
        if (a < 0 || b < 0) continue;
        if (target(a) != target(b)) throw std::invalid_argument("relation sides end at different vertices");
        work.push_back({a, b});
    }
    auto left = [&](int b, int x) {
        int y = child(trivial(q_->arrows[b].src), b);
        return extend(y, path(x).arrows);
    };
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        int rx = find(x), ry = find(y);
        if (rx == ry) continue;
        if (rx > ry) std::swap(rx, ry);
        uf[ry] = rx;
        int ex = ext[rx], ey = ext[ry];
        if (ex < 0) {
            ext[rx] = ey;
            continue;
        }
        if (ey < 0) continue;
        for (int a : out_[target(ex)]) work.push_back({child(ex, a), child(ey, a)});
        for (int b : in_[src_[ex]]) work.push_back({left(b, ex), left(b, ey)});
    }
    canon_.resize(n);
    for (int x = 0; x < n; ++x) canon_[x] = find(x);
}

bool TruncatedAlgebra::equal(const Path& a, const Path& b) const {
    int x = node(a), y = node(b);
    return x >= 0 && y >= 0 && canon_[x] == canon_[y];
}

std::vector<int> TruncatedAlgebra::classes(int a, int b, int max_len) const {
    std::vector<int> out;
    for (int x = 0; x < num_nodes() && len_[x] <= max_len; ++x)
        if (canon_[x] == x && src_[x] == a && target(x) == b) out.push_back(x);
    return out;
}

std::map<std::pair<int, int>, std::vector<int>> TruncatedAlgebra::all_classes(int max_len) const {
    std::map<std::pair<int, int>, std::vector<int>> out;
    for (int x = 0; x < num_nodes() && len_[x] <= max_len; ++x)
        if (canon_[x] == x) out[{src_[x], target(x)}].push_back(x);
    return out;
}

std::vector<int> TruncatedAlgebra::members(int cls, int max_len) const {
    if (member_start_.empty()) {
        const int n = num_nodes();
        member_start_.assign(n + 1, 0);
        for (int x = 0; x < n; ++x) ++member_start_[canon_[x] + 1];
        for (int x = 0; x < n; ++x) member_start_[x + 1] += member_start_[x];
        member_nodes_.assign(n, 0);
        std::vector<int> fill(member_start_.begin(), member_start_.end() - 1);
        for (int x = 0; x < n; ++x) member_nodes_[fill[canon_[x]]++] = x;
    }
    std::vector<int> out;
    for (int i = member_start_[cls]; i < member_start_[cls + 1]; ++i)
        if (len_[member_nodes_[i]] <= max_len) out.push_back(member_nodes_[i]);
    return out;
}

int TruncatedAlgebra::times_t(int cls) const {
    Path p = path(cls);
    std::vector<int> at{p.source};
    for (int a : p.arrows) at.push_back(q_->arrows[a].tgt);
    int best = -1, best_len = 0;
    for (size_t i = 0; i < at.size(); ++i) {
        const Path& u = unit_[at[i]];
        if (u.arrows.empty()) continue;
        if (best >= 0 && u.length() >= best_len) continue;
        best = static_cast<int>(i);
        best_len = u.length();
    }
    if (best < 0 || p.length() + best_len > max_len_) return -1;
    std::vector<int> w(p.arrows.begin(), p.arrows.begin() + best);
    w.insert(w.end(), unit_[at[best]].arrows.begin(), unit_[at[best]].arrows.end());
    w.insert(w.end(), p.arrows.begin() + best, p.arrows.end());
    return canon_[node({p.source, w})];
}

CentralReport check_central_t(const TruncatedAlgebra& alg) {
    const Quiver& q = alg.quiver();
    CentralReport r;
    r.window = alg.safe_len();
    for (int v = 0; v < q.num_vertices(); ++v) {
        std::set<int> cls;
        for (const auto& c : unit_cycles(q, v)) {
            int x = alg.node(c);
            if (x >= 0) cls.insert(alg.cls(x));
        }
        if (cls.size() > 1) r.split_vertices.push_back(v);
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Path& us = alg.unit_cycle(q.arrows[a].src);
        const Path& ut = alg.unit_cycle(q.arrows[a].tgt);
        Path left{us.source, us.arrows};
        left.arrows.push_back(a);
        Path right{q.arrows[a].src, {a}};
        right.arrows.insert(right.arrows.end(), ut.arrows.begin(), ut.arrows.end());
        if (!alg.equal(left, right)) r.failing_arrows.push_back(a);
    }
    r.ok = r.split_vertices.empty() && r.failing_arrows.empty();
    return r;
}

CentralReport check_central_t(const Quiver& q, int max_len) {
    Rewriter rw(q);
    CentralReport r;
    r.window = max_len;
    std::vector<Path> shortest(q.num_vertices());
    for (int v = 0; v < q.num_vertices(); ++v) {
        auto cs = unit_cycles(q, v);
        if (cs.empty()) continue;
        shortest[v] = *std::min_element(cs.begin(), cs.end(), [](const Path& x, const Path& y) { return x.length() < y.length(); });
        for (const auto& c : cs)
            if (rw.equal(shortest[v].arrows, c.arrows, max_len, search_limit()) != std::optional<bool>(true)) {
                r.split_vertices.push_back(v);
                break;
            }
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        std::vector<int> left = shortest[q.arrows[a].src].arrows;
        left.push_back(a);
        std::vector<int> right{a};
        const auto& ut = shortest[q.arrows[a].tgt].arrows;
        right.insert(right.end(), ut.begin(), ut.end());
        if (rw.equal(left, right, max_len, search_limit()) != std::optional<bool>(true)) r.failing_arrows.push_back(a);
    }
    r.ok = r.split_vertices.empty() && r.failing_arrows.empty();
    return r;
}

ThinReport is_thin_truncated(const TruncatedAlgebra& alg) {
    ThinReport r;
    r.window = alg.safe_len();
    auto all = alg.all_classes(r.window);
    const int nv = alg.quiver().num_vertices();
    for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b) {
            ThinPair p;
            p.a = a;
            p.b = b;
            auto it = all.find({a, b});
            if (it != all.end()) {
                const auto& cs = it->second;
                p.classes = static_cast<int>(cs.size());
                p.bottom = cs.front();
                std::set<int> chain;
                for (int c = p.bottom; c >= 0; c = alg.times_t(c))
                    if (!chain.insert(c).second) break;
                for (int c : cs)
                    if (!chain.count(c)) {
                        p.thin = false;
                        p.counterexample = {p.bottom, c};
                        break;
                    }
            }
            r.ok = r.ok && p.thin;
            r.pairs.push_back(p);
        }
    return r;
}

Path minimal_path(const TruncatedAlgebra& alg, int a, int b) {
    auto cs = alg.classes(a, b, alg.safe_len());
    if (cs.empty())
        throw Inconclusive("no path from " + std::to_string(a) + " to " + std::to_string(b) + " within length " +
                           std::to_string(alg.safe_len()));
    return alg.path(cs.front());
}

CompositionReport check_minimal_composition(const TruncatedAlgebra& alg, const ThinReport& thin) {
    CompositionReport r;
    std::set<int> bottoms;
    for (const auto& p : thin.pairs)
        if (p.bottom >= 0) bottoms.insert(p.bottom);
    auto is_bottom = [&](int node) { return node >= 0 && bottoms.count(alg.cls(node)) > 0; };
    for (int x = 0; x < alg.num_nodes() && alg.length(x) <= thin.window; ++x) {
        if (!is_bottom(x)) continue;
        Path p = alg.path(x);
        for (int i = 1; i < p.length(); ++i) {
            ++r.checked;
            int g = alg.node({p.source, {p.arrows.begin(), p.arrows.begin() + i}});
            int h = alg.node({alg.quiver().arrows[p.arrows[i]].src, {p.arrows.begin() + i, p.arrows.end()}});
            if (!is_bottom(g) || !is_bottom(h)) {
                r.ok = false;
                r.counterexample = {p, i};
                return r;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------- rewriting

namespace {

using Word = std::u16string;

Word to_word(const std::vector<int>& p) {
    Word w;
    for (int a : p) w.push_back(static_cast<char16_t>(a));
    return w;
}

std::vector<int> from_word(const Word& w) { return {w.begin(), w.end()}; }

}  // namespace

Rewriter::Rewriter(const Quiver& q) : by_first_(q.num_arrows()) {
    if (q.num_arrows() > 65535) throw std::invalid_argument("too many arrows for the rewriter");
    for (const auto& r : relations(q).arrows) {
        for (const auto* side : {&r.plus, &r.minus}) {
            const auto& other = side == &r.plus ? r.minus : r.plus;
            if (side->arrows.empty()) continue;
            by_first_[side->arrows.front()].push_back({side->arrows, other.arrows});
        }
    }
}

std::vector<std::vector<int>> Rewriter::moves(const std::vector<int>& p) const {
    std::vector<std::vector<int>> out;
    for (size_t i = 0; i < p.size(); ++i)
        for (const auto& rule : by_first_[p[i]]) {
            if (i + rule.lhs.size() > p.size() || !std::equal(rule.lhs.begin(), rule.lhs.end(), p.begin() + i)) continue;
            std::vector<int> w(p.begin(), p.begin() + i);
            w.insert(w.end(), rule.rhs.begin(), rule.rhs.end());
            w.insert(w.end(), p.begin() + i + rule.lhs.size(), p.end());
            out.push_back(std::move(w));
        }
    return out;
}

std::optional<bool> Rewriter::equal(const std::vector<int>& a, const std::vector<int>& b, int max_len,
                                    std::size_t limit) const {
    states_ = 2;
    if (a == b) return true;
    auto expand = [&](const Word& p, auto&& emit) {
        for (size_t i = 0; i < p.size(); ++i)
            for (const auto& rule : by_first_[p[i]]) {
                size_t m = rule.lhs.size();
                if (i + m > p.size()) continue;
                bool match = true;
                for (size_t t = 0; t < m && match; ++t) match = p[i + t] == rule.lhs[t];
                if (!match) continue;
                if (static_cast<int>(p.size() - m + rule.rhs.size()) > max_len) continue;
                Word w = p.substr(0, i);
                for (int x : rule.rhs) w.push_back(static_cast<char16_t>(x));
                w += p.substr(i + m);
                emit(std::move(w));
            }
    };
    std::unordered_set<Word> seen[2] = {{to_word(a)}, {to_word(b)}};
    std::vector<Word> frontier[2] = {{to_word(a)}, {to_word(b)}};
    while (!frontier[0].empty() || !frontier[1].empty()) {
        int s = frontier[1].empty() || (!frontier[0].empty() && seen[0].size() <= seen[1].size()) ? 0 : 1;
        std::vector<Word> next;
        bool met = false;
        for (const auto& p : frontier[s]) {
            expand(p, [&](Word w) {
                if (met || seen[s].count(w)) return;
                if (seen[1 - s].count(w)) {
                    met = true;
                    return;
                }
                seen[s].insert(w);
                next.push_back(std::move(w));
            });
            if (met) break;
        }
        states_ = seen[0].size() + seen[1].size();
        if (met) return true;
        if (states_ > limit) return std::nullopt;
        frontier[s] = std::move(next);
    }
    return false;
}

std::optional<std::vector<std::vector<int>>> Rewriter::class_of(const std::vector<int>& p, int max_len,
                                                                std::size_t limit) const {
    std::unordered_set<Word> seen{to_word(p)};
    std::vector<Word> todo{to_word(p)};
    while (!todo.empty()) {
        Word w = std::move(todo.back());
        todo.pop_back();
        for (auto& x : moves(from_word(w))) {
            if (static_cast<int>(x.size()) > max_len) continue;
            Word y = to_word(x);
            if (seen.insert(y).second) todo.push_back(std::move(y));
        }
        if (seen.size() > limit) {
            states_ = seen.size();
            return std::nullopt;
        }
    }
    states_ = seen.size();
    std::vector<std::vector<int>> out;
    for (const auto& w : seen) out.push_back(from_word(w));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- disk boundary

DiskBoundaryPaths disk_boundary_paths(const Quiver& q) {
    auto comps = boundary_components(q);
    if (comps.size() != 1) throw std::invalid_argument("expected a single boundary component");
    FaceIndex fx(q);
    DiskBoundaryPaths d;
    const auto& c = comps[0];
    d.n = static_cast<int>(c.size());
    d.vertex.assign(d.n + 1, -1);
    d.u.resize(d.n + 1);
    d.v.resize(d.n + 1);
    for (int i = 1; i <= d.n; ++i) d.vertex[i] = cw_from(q, fx, c[i - 1]);
    for (int i = 1; i <= d.n; ++i) {
        int a = c[i - 1];
        int from = d.vertex[i], to = d.vertex[i % d.n + 1];
        Path arrow{q.arrows[a].src, {a}};
        Path h{q.arrows[a].tgt, hat(q, a)};
        d.u[i] = q.arrows[a].src == from ? arrow : h;
        d.v[i] = q.arrows[a].src == from ? h : arrow;
        if (d.u[i].source != from || d.v[i].source != to) throw std::logic_error("boundary numbering mismatch");
    }
    return d;
}

Path DiskBoundaryPaths::u_run(int from, int count) const {
    auto idx = [&](int i) { return ((i - 1) % n + n) % n + 1; };
    Path p{vertex[idx(from)], {}};
    for (int t = 0; t < count; ++t) {
        const auto& s = u[idx(from + t)].arrows;
        p.arrows.insert(p.arrows.end(), s.begin(), s.end());
    }
    return p;
}

Path DiskBoundaryPaths::v_run(int from, int count) const {
    auto idx = [&](int i) { return ((i - 1) % n + n) % n + 1; };
    Path p{vertex[idx(from)], {}};
    for (int t = 0; t < count; ++t) {
        const auto& s = v[idx(from - 1 - t)].arrows;
        p.arrows.insert(p.arrows.end(), s.begin(), s.end());
    }
    return p;
}

UVReport check_uv_identity(const Quiver& q, int k, int max_len) {
    auto d = disk_boundary_paths(q);
    Rewriter rw(q);
    UVReport r;
    for (int m = 1; m <= d.n; ++m) {
        Path vk = d.v_run(m, k), uk = d.u_run(m, d.n - k);
        if (vk.target(q) != uk.target(q)) {
            r.failing_base_points.push_back(m);
            continue;
        }
        auto eq = rw.equal(vk.arrows, uk.arrows, max_len, search_limit());
        if (!eq) r.undecided_base_points.push_back(m);
        else if (!*eq) r.failing_base_points.push_back(m);
    }
    r.ok = r.failing_base_points.empty() && r.undecided_base_points.empty();
    return r;
}

// ---------------------------------------------------------------- comparison

Path PathMap::apply(const Path& p) const {
    Path out{vertex.at(p.source), {}};
    for (int a : p.arrows) {
        const auto& s = arrow.at(a);
        out.arrows.insert(out.arrows.end(), s.begin(), s.end());
    }
    return out;
}

CompareReport compare_algebras(const TruncatedAlgebra& a, const TruncatedAlgebra& b, const PathMap& f,
                               const PathMap& g) {
    CompareReport r;
    r.window = a.safe_len();
    auto problem = [&](std::string s) {
        r.ok = false;
        if (r.problems.size() < 20) r.problems.push_back(std::move(s));
    };
    const Quiver& qa = a.quiver();
    std::map<int, int> fwd, back;  // class of a -> class of b and back
    for (const auto& [st, cs] : a.all_classes(r.window))
        for (int x : cs) {
            int y = b.node(f.apply(a.path(x)));
            if (y < 0) {
                problem("image of " + path_string(qa, a.path(x)) + " is beyond the bound");
                continue;
            }
            y = b.cls(y);
            if (auto it = back.find(y); it != back.end()) {
                problem("classes of " + path_string(qa, a.path(it->second)) + " and " + path_string(qa, a.path(x)) +
                        " have the same image");
                continue;
            }
            fwd[x] = y;
            back[y] = x;
            auto [s, t] = st;
            ++r.counts[{s, t, a.length(x)}].first;
        }
    // inverse direction: every b class whose image lies in the window
    auto inverse = [&](int y) -> int {
        int found = -1;
        for (int m : b.members(y, b.max_len())) {
            int x = a.node(g.apply(b.path(m)));
            if (x < 0) continue;
            x = a.cls(x);
            if (found >= 0 && found != x) {
                problem("members of one class map to different classes");
                return found;
            }
            found = x;
        }
        return found;
    };
    for (const auto& [st, cs] : b.all_classes(r.window))
        for (int y : cs) {
            int x = inverse(y);
            if (x < 0 || a.length(x) > r.window) {
                if (back.count(y)) problem("no inverse image found for a class in the image");
                continue;
            }
            auto it = fwd.find(x);
            if (it == fwd.end() || it->second != y) {
                problem("the maps are not inverse on the class of " + path_string(qa, a.path(x)));
                continue;
            }
            ++r.counts[{a.source(x), a.target(x), a.length(x)}].second;
        }
    for (const auto& [key, c] : r.counts)
        if (c.first != c.second)
            problem("class counts differ from " + std::to_string(std::get<0>(key)) + " to " +
                    std::to_string(std::get<1>(key)) + " at length " + std::to_string(std::get<2>(key)));
    return r;
}

namespace {

PathMap identity_map(const Quiver& q) {
    PathMap m;
    m.vertex.resize(q.num_vertices());
    std::iota(m.vertex.begin(), m.vertex.end(), 0);
    for (int a = 0; a < q.num_arrows(); ++a) m.arrow.push_back({a});
    return m;
}

}  // namespace

CompareReport compare_rho(const Quiver& q, const GluingSpec& spec, int max_len) {
    RhoResult rq = rho(q, spec);
    TruncatedAlgebra a(q, max_len), b(rq.quiver, max_len);
    PathMap f = identity_map(q);
    PathMap g = identity_map(q);
    for (int x = q.num_arrows(); x < rq.quiver.num_arrows(); ++x) {
        // rho(j) = complement of j in its original face
        int m = static_cast<int>(std::find(rq.rho.begin(), rq.rho.end(), x) - rq.rho.begin());
        g.arrow.push_back(hat(q, spec.J.arrows[m]));
    }
    return compare_algebras(a, b, f, g);
}

CompareReport compare_glued(const Quiver& q, const GluingSpec& spec, int max_len) {
    GlueResult gl = glue(q, spec);
    const Quiver& G = gl.quiver;
    auto carry = [&](int src, const std::vector<int>& w) {
        std::vector<int> out;
        for (int x : w) out.push_back(gl.arrow_map[x]);
        return std::pair{gl.vertex_map[src], out};
    };
    std::vector<PathRelation> rels;
    for (const auto& r : potential_relations(gl.rho.quiver)) {
        auto [s, l] = carry(r.source, r.lhs);
        rels.push_back({s, l, carry(r.source, r.rhs).second});
    }
    for (const auto& r : glue_relation_set(gl.rho, spec).paths) {
        auto [s, l] = carry(r.source, r.lhs);
        rels.push_back({s, l, carry(r.source, r.rhs).second});
    }
    TruncatedAlgebra a(G, max_len, rels), b(G, max_len);
    PathMap id = identity_map(G);
    return compare_algebras(a, b, id, id);
}

// ---------------------------------------------------------------- annulus

std::vector<Generator> boundary_generators(const AnnulusQuiver& a) {
    const Quiver& q = a.quiver;
    if (!q.find_arrow("w_1") || !q.find_arrow("z_1") || !q.find_arrow("r_1"))
        throw std::invalid_argument("quiver lacks the bridge arrow names");
    const int k = a.spec.k, m1 = a.spec.m1, m2 = a.spec.m2();
    std::vector<Generator> g;
    auto arrow_path = [&](const std::vector<int>& w) { return Path{q.arrows[w.front()].src, w}; };
    g.push_back({"r", arrow_path(a.r())});
    g.push_back({"s", arrow_path(a.s())});
    for (int i = 1; i <= k - 1; ++i)
        for (const char* base : {"w", "z"}) {
            int x = a.named(base, i).front();
            std::string nm = std::string(base) + "_" + std::to_string(i);
            g.push_back({nm, arrow_path({x})});
            g.push_back({nm + "^", arrow_path(hat(q, x))});
        }
    auto uv = [&](int i) {
        g.push_back({"u_" + std::to_string(i), arrow_path(a.u(i))});
        g.push_back({"v_" + std::to_string(i), arrow_path(a.v(i))});
    };
    for (int i = 1; i <= m1 + 1; ++i) uv(i);
    for (int i = m1 + k + 1; i <= m1 + k + m2; ++i) uv(i);
    for (int v : classify_arrows(q).boundary_vertices) g.push_back({"e_" + std::to_string(v), Path{v, {}}});
    return g;
}

int default_lambda_length(const AnnulusQuiver& a) {
    return 4 * a.spec.k + a.spec.m1 + a.spec.m2() + 2 * max_face_size(a.quiver);
}

std::vector<Path> lambda_map(const AnnulusQuiver& a, const AlgebraPresentation& p) {
    const Quiver& q = a.quiver;
    const int k = p.k, m1 = p.m1;
    auto arrow_path = [&](const std::vector<int>& w) { return Path{q.arrows[w.front()].src, w}; };
    std::vector<Path> img;
    for (const auto& ar : p.arrows) {
        auto us = ar.name.find('_');
        std::string base = ar.name.substr(0, us);
        int i = us == std::string::npos ? 0 : std::stoi(ar.name.substr(us + 1));
        if (base == "r") img.push_back(arrow_path(a.r()));
        else if (base == "s") img.push_back(arrow_path(a.s()));
        else if (base == "y") img.push_back(arrow_path(i <= k - 1 ? a.named("w", i) : a.u(m1 + i + 1)));
        else if (base == "x") img.push_back(arrow_path(i <= k - 1 ? hat(q, a.named("w", i).front()) : a.v(m1 + i + 1)));
        else if (base == "yb") img.push_back(arrow_path(i <= k - 1 ? a.named("z", k - i) : a.u(m1 + k - i)));
        else if (base == "xb")
            img.push_back(arrow_path(i <= k - 1 ? hat(q, a.named("z", k - i).front()) : a.v(m1 + k - i)));
        else throw std::invalid_argument("unknown generator " + ar.name);
    }
    return img;
}

bool LambdaReport::ok() const {
    for (const auto& r : relations)
        if (!r.composable || r.equal != std::optional<bool>(true)) return false;
    return generation.complete && generation.uncovered.empty();
}

namespace {

Path concat_images(const Quiver& q, const std::vector<Path>& img, const std::vector<int>& word, bool& ok) {
    Path p;
    for (int g : word) {
        const Path& s = img[g];
        if (p.source < 0) p.source = s.source;
        else if (p.target(q) != s.source) ok = false;
        p.arrows.insert(p.arrows.end(), s.arrows.begin(), s.arrows.end());
    }
    return p;
}

// Prime paths (boundary to boundary through interior vertices, no face cycle)
// are checked in order of length.  When a path of length n is examined, every
// boundary path shorter than n is already known to be generated, so a class
// member that passes through a boundary vertex, or that contains a face cycle
// (equal to the shorter path times the central t), settles the class.
}  // namespace

GenerationCheck check_generation(const AnnulusQuiver& a, const std::vector<Generator>& generators, int max_len,
                                 int gen_len) {
    const Quiver& q = a.quiver;
    Rewriter rw(q);
    std::vector<Word> gens;
    for (const auto& g : generators)
        if (!g.path.arrows.empty()) gens.push_back(to_word(g.path.arrows));
    auto factors = [&](const Word& p) {
        std::vector<char> ok(p.size() + 1, 0);
        ok[0] = 1;
        for (size_t i = 0; i < p.size(); ++i) {
            if (!ok[i]) continue;
            for (const auto& g : gens)
                if (p.compare(i, g.size(), g) == 0) ok[i + g.size()] = 1;
        }
        return ok[p.size()] != 0;
    };
    std::unordered_set<Word> cycles;
    std::set<size_t> cycle_lengths;
    for (const auto& f : q.faces)
        for (size_t s = 0; s < f.arrows.size(); ++s) {
            Word w;
            for (size_t t = 0; t < f.arrows.size(); ++t) w.push_back(static_cast<char16_t>(f.arrows[(s + t) % f.arrows.size()]));
            cycles.insert(w);
            cycle_lengths.insert(w.size());
        }
    auto cls = classify_arrows(q);
    std::vector<char> boundary(q.num_vertices(), 0);
    for (int v : cls.boundary_vertices) boundary[v] = 1;
    std::vector<std::vector<int>> out(q.num_vertices());
    for (int x = 0; x < q.num_arrows(); ++x) out[q.arrows[x].src].push_back(x);

    // bound == 0 disables the inductive shortcuts
    auto reduces = [&](const Word& w, size_t bound) {
        if (bound == 0) return false;
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (boundary[q.arrows[w[i]].tgt] && i + 1 < bound && w.size() - i - 1 < bound) return true;
        for (size_t l : cycle_lengths) {
            if (l > w.size() || w.size() - l >= bound) continue;
            for (size_t s = 0; s + l <= w.size(); ++s)
                if (cycles.count(w.substr(s, l))) return true;
        }
        return false;
    };

    GenerationCheck gc;
    std::unordered_set<Word> good;
    const std::size_t limit = search_limit();
    auto settle = [&](const Word& p, size_t bound) {
        if (good.count(p) || factors(p) || reduces(p, bound)) return true;
        // widen the length cap step by step; most classes settle without
        // passing through longer paths
        std::unordered_set<Word> seen;
        bool found = false, cut = false;
        for (int cap = static_cast<int>(p.size()); cap <= max_len && !found && !cut; ++cap) {
            seen = {p};
            std::vector<Word> frontier{p};
            while (!frontier.empty() && !found) {
                std::vector<Word> next;
                for (const auto& x : frontier) {
                    for (auto& m : rw.moves(from_word(x))) {
                        if (static_cast<int>(m.size()) > cap) continue;
                        Word w = to_word(m);
                        if (!seen.insert(w).second) continue;
                        if (good.count(w) || factors(w) || reduces(w, bound)) found = true;
                        next.push_back(std::move(w));
                    }
                    if (found) break;
                }
                if (seen.size() > limit) {
                    cut = true;
                    break;
                }
                frontier = std::move(next);
            }
        }
        if (found) good.insert(seen.begin(), seen.end());
        else if (cut) gc.complete = false;
        return found;
    };
    auto record = [&](const Word& p, size_t bound) {
        ++gc.prime_paths;
        if (settle(p, bound)) ++gc.covered;
        else gc.uncovered.push_back(Path{q.arrows[p.front()].src, from_word(p)});
    };

    // t at a boundary vertex: face cycles based there, checked without the
    // cycle shortcut
    for (const auto& w : cycles)
        if (boundary[q.arrows[w.front()].src] && static_cast<int>(w.size()) <= gen_len) record(w, 0);

    std::function<void(int, Word&, int)> dfs = [&](int v, Word& p, int len) {
        for (int x : out[v]) {
            p.push_back(static_cast<char16_t>(x));
            bool has_cycle = false;
            for (size_t l : cycle_lengths)
                if (l <= p.size() && cycles.count(p.substr(p.size() - l))) has_cycle = true;
            int t = q.arrows[x].tgt;
            if (!has_cycle) {
                if (static_cast<int>(p.size()) == len) {
                    if (boundary[t]) record(p, p.size());
                } else if (!boundary[t]) {
                    dfs(t, p, len);
                }
            }
            p.pop_back();
        }
    };
    for (int len = 1; len <= gen_len; ++len)
        for (int v : cls.boundary_vertices) {
            Word p;
            dfs(v, p, len);
        }
    return gc;
}

LambdaReport check_lambda(const AnnulusQuiver& a, const AlgebraPresentation& p, int max_len, int gen_len) {
    const Quiver& q = a.quiver;
    LambdaReport r;
    r.max_len = max_len;
    r.gen_len = gen_len;
    auto comps = boundary_components(q);
    r.outer = static_cast<int>(comps[a.outer_component()].size());
    r.inner = static_cast<int>(comps[a.inner_component()].size());
    if (r.outer != p.outer || r.inner != p.inner)
        throw std::invalid_argument("presentation cycle sizes do not match the boundary of the glued quiver");
    auto img = lambda_map(a, p);
    Rewriter rw(q);
    for (const auto& rel : p.relations) {
        RelationCheck c;
        c.type = rel.type;
        c.instance = rel.instance;
        c.lhs = concat_images(q, img, rel.lhs, c.composable);
        c.rhs = concat_images(q, img, rel.rhs, c.composable);
        if (c.lhs.source != c.rhs.source || c.lhs.target(q) != c.rhs.target(q)) c.composable = false;
        if (c.composable) {
            c.equal = rw.equal(c.lhs.arrows, c.rhs.arrows, max_len, search_limit());
            c.states = rw.last_states();
        }
        r.relations.push_back(std::move(c));
    }
    r.generation = check_generation(a, boundary_generators(a), max_len, gen_len);
    return r;
}

StabilityReport compare_truncations(const TruncatedAlgebra& small, const TruncatedAlgebra& large) {
    StabilityReport r;
    r.window = small.safe_len();
    for (int x = 0; x < small.num_nodes() && small.length(x) <= r.window; ++x) {
        ++r.compared;
        if (small.cls(x) != large.cls(x)) {
            r.ok = false;
            r.differing_node = x;
            return r;
        }
    }
    return r;
}

StabilityReport compare_rewriting_bounds(const Quiver& q, int max_len) {
    const int mf = max_face_size(q);
    StabilityReport r;
    r.window = max_len - mf;
    if (r.window < 0) throw std::invalid_argument("length bound below the largest face size");
    Rewriter rw(q);
    std::vector<std::vector<int>> out(q.num_vertices());
    for (int a = 0; a < q.num_arrows(); ++a) out[q.arrows[a].src].push_back(a);
    std::set<std::vector<int>> settled;  // short members of classes already compared
    auto short_part = [&](const std::vector<std::vector<int>>& c) {
        std::vector<std::vector<int>> s;
        for (const auto& w : c)
            if (static_cast<int>(w.size()) <= r.window) s.push_back(w);
        return s;
    };
    std::function<void(int, std::vector<int>&)> walk = [&](int v, std::vector<int>& p) {
        if (!r.ok) return;
        if (!p.empty() && !settled.count(p)) {
            auto small = rw.class_of(p, max_len, search_limit());
            auto large = rw.class_of(p, max_len + mf, search_limit());
            ++r.compared;
            if (!small || !large || short_part(*small) != short_part(*large)) {
                r.ok = false;
                return;
            }
            for (auto& w : short_part(*small)) settled.insert(std::move(w));
        }
        if (static_cast<int>(p.size()) == r.window) return;
        for (int a : out[v]) {
            p.push_back(a);
            walk(q.arrows[a].tgt, p);
            p.pop_back();
        }
    };
    for (int v = 0; v < q.num_vertices() && r.ok; ++v) {
        std::vector<int> p;
        walk(v, p);
    }
    return r;
}

}  // namespace dimer
