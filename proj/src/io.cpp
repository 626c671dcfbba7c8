#include "dimer/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dimer {

using ordered_json = nlohmann::ordered_json;

std::string serialize(const Quiver& q) {
    ordered_json j;
    j["format"] = kFormat;
    j["vertices"] = ordered_json::array();
    for (int v = 0; v < q.num_vertices(); ++v) {
        ordered_json e;
        e["id"] = v;
        if (const auto& c = q.vertices[v].coord) e["coord"] = {c->row, c->col};
        if (!q.vertices[v].label.empty()) e["label"] = q.vertices[v].label;
        j["vertices"].push_back(std::move(e));
    }
    j["arrows"] = ordered_json::array();
    for (int a = 0; a < q.num_arrows(); ++a) {
        ordered_json e;
        e["id"] = a;
        e["src"] = q.arrows[a].src;
        e["tgt"] = q.arrows[a].tgt;
        if (!q.arrows[a].names.empty()) e["names"] = q.arrows[a].names;
        j["arrows"].push_back(std::move(e));
    }
    j["faces"] = ordered_json::array();
    for (int f = 0; f < q.num_faces(); ++f) {
        ordered_json e;
        e["id"] = f;
        e["sign"] = to_string(q.faces[f].sign);
        e["arrows"] = q.faces[f].arrows;
        j["faces"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

namespace {

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + " is not an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + " has no field \"" + key + "\"");
    return *it;
}

int get_int(const ordered_json& obj, const char* key, const std::string& where) {
    const auto& v = field(obj, key, where);
    if (!v.is_number_integer()) throw ParseError(where + ": field \"" + key + "\" must be an integer");
    return v.get<int>();
}

// records sorted by id; ids must be exactly 0..n-1
std::vector<const ordered_json*> by_id(const ordered_json& arr, const std::string& kind) {
    if (!arr.is_array()) throw ParseError("\"" + kind + "s\" must be an array");
    std::vector<const ordered_json*> out(arr.size(), nullptr);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string where = kind + " record " + std::to_string(i);
        int id = get_int(arr[i], "id", where);
        if (id < 0 || id >= static_cast<int>(arr.size()))
            throw ParseError(where + ": id " + std::to_string(id) + " out of range 0.." + std::to_string(arr.size() - 1));
        if (out[id]) throw ParseError(kind + " id " + std::to_string(id) + " is used twice");
        out[id] = &arr[i];
    }
    return out;
}

}  // namespace

Quiver parse(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string msg = e.what();
        auto pos = msg.find("syntax error");
        throw ParseError(pos == std::string::npos ? msg : msg.substr(pos), line, col);
    }
    if (!j.is_object()) throw ParseError("top level must be an object");
    if (auto it = j.find("format"); it != j.end() && (!it->is_string() || it->get<std::string>() != kFormat))
        throw ParseError("unsupported format " + it->dump());
    Quiver q;
    for (const auto* v : by_id(field(j, "vertices", "file"), "vertex")) {
        Vertex vx;
        if (auto it = v->find("coord"); it != v->end()) {
            if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
                throw ParseError("vertex " + std::to_string((*v)["id"].get<int>()) + ": coord must be [row, col]");
            vx.coord = Coord{(*it)[0].get<double>(), (*it)[1].get<double>()};
        }
        if (auto it = v->find("label"); it != v->end()) {
            if (!it->is_string()) throw ParseError("vertex label must be a string");
            vx.label = it->get<std::string>();
        }
        q.vertices.push_back(std::move(vx));
    }
    for (const auto* a : by_id(field(j, "arrows", "file"), "arrow")) {
        int id = (*a)["id"].get<int>();
        std::string where = "arrow " + std::to_string(id);
        Arrow ar{get_int(*a, "src", where), get_int(*a, "tgt", where), {}};
        for (auto [end, key] : {std::pair{ar.src, "src"}, std::pair{ar.tgt, "tgt"}})
            if (end < 0 || end >= q.num_vertices())
                throw ParseError(where + ": " + key + " refers to missing vertex " + std::to_string(end));
        if (auto it = a->find("names"); it != a->end()) {
            if (!it->is_array()) throw ParseError(where + ": names must be an array of strings");
            for (const auto& n : *it) {
                if (!n.is_string()) throw ParseError(where + ": names must be an array of strings");
                ar.names.push_back(n.get<std::string>());
            }
        }
        q.arrows.push_back(std::move(ar));
    }
    for (const auto* f : by_id(field(j, "faces", "file"), "face")) {
        int id = (*f)["id"].get<int>();
        std::string where = "face " + std::to_string(id);
        const auto& s = field(*f, "sign", where);
        if (!s.is_string() || (s != "+" && s != "-")) throw ParseError(where + ": sign must be \"+\" or \"-\"");
        Face face{s == "+" ? Sign::Plus : Sign::Minus, {}};
        const auto& arr = field(*f, "arrows", where);
        if (!arr.is_array()) throw ParseError(where + ": arrows must be an array");
        for (const auto& x : arr) {
            if (!x.is_number_integer()) throw ParseError(where + ": arrow ids must be integers");
            int a = x.get<int>();
            if (a < 0 || a >= q.num_arrows()) throw ParseError(where + ": refers to missing arrow " + std::to_string(a));
            face.arrows.push_back(a);
        }
        q.faces.push_back(std::move(face));
    }
    return q;
}

Quiver read_quiver_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------- drawing

std::vector<Coord> layout(const Quiver& q) {
    auto s = surface_invariants(q);
    bool planar = s.kind == SurfaceKind::Disk || s.kind == SurfaceKind::PinchedDisks;
    if (!planar)
        throw LayoutError(std::string("no planar layout for a quiver on a surface of kind ") + to_string(s.kind));
    bool all = true;
    for (const auto& v : q.vertices) all = all && v.coord.has_value();
    std::vector<Coord> pos(q.num_vertices());
    if (all) {
        for (int v = 0; v < q.num_vertices(); ++v) pos[v] = *q.vertices[v].coord;
        return pos;
    }
    if (s.kind != SurfaceKind::Disk) throw LayoutError("pinched quivers need stored coordinates");
    FaceIndex fx(q);
    const auto& c = s.boundary_components.at(0);
    std::vector<int> ring;
    for (int a : c) {
        int v = cw_from(q, fx, a);
        if (std::find(ring.begin(), ring.end(), v) == ring.end()) ring.push_back(v);
    }
    std::vector<char> fixed(q.num_vertices(), 0);
    const double r = std::max<double>(2, ring.size() / 2.0);
    for (size_t i = 0; i < ring.size(); ++i) {
        double t = std::numbers::pi / 2 - 2 * std::numbers::pi * i / ring.size();
        pos[ring[i]] = {-r * std::sin(t) + r, r * std::cos(t) + r};
        fixed[ring[i]] = 1;
    }
    std::vector<std::set<int>> nb(q.num_vertices());
    for (const auto& a : q.arrows) {
        nb[a.src].insert(a.tgt);
        nb[a.tgt].insert(a.src);
    }
    for (int v = 0; v < q.num_vertices(); ++v)
        if (!fixed[v]) pos[v] = {r, r};
    for (int it = 0; it < 2000; ++it)
        for (int v = 0; v < q.num_vertices(); ++v) {
            if (fixed[v] || nb[v].empty()) continue;
            Coord m{0, 0};
            for (int w : nb[v]) {
                m.row += pos[w].row;
                m.col += pos[w].col;
            }
            pos[v] = {m.row / nb[v].size(), m.col / nb[v].size()};
        }
    return pos;
}

namespace {

struct Scene {
    std::vector<Coord> pos;
    double min_row = 0, min_col = 0, width = 0, height = 0;
};

Scene scene(const Quiver& q, double scale) {
    Scene s{layout(q)};
    if (s.pos.empty()) return s;
    double r0 = s.pos[0].row, r1 = r0, c0 = s.pos[0].col, c1 = c0;
    for (const auto& p : s.pos) {
        r0 = std::min(r0, p.row);
        r1 = std::max(r1, p.row);
        c0 = std::min(c0, p.col);
        c1 = std::max(c1, p.col);
    }
    for (auto& p : s.pos) p = {(p.row - r0) * scale + scale, (p.col - c0) * scale + scale};
    s.width = (c1 - c0) * scale + 2 * scale;
    s.height = (r1 - r0) * scale + 2 * scale;
    return s;
}

std::string num(double x) {
    std::ostringstream o;
    o.precision(2);
    o << std::fixed << x;
    return o.str();
}

// midpoints of the arrows a strand crosses, in order
std::vector<Coord> strand_points(const Quiver& q, const Scene& s, const Strand& st) {
    std::vector<Coord> pts;
    for (const auto& c : st.crossings) {
        const auto& a = q.arrows[c.arrow];
        pts.push_back({(s.pos[a.src].row + s.pos[a.tgt].row) / 2, (s.pos[a.src].col + s.pos[a.tgt].col) / 2});
    }
    return pts;
}

std::string arrow_label(const Quiver& q, int a) {
    return q.arrows[a].names.empty() ? "" : q.arrows[a].names.front();
}

}  // namespace

std::string export_svg(const Quiver& q, const DrawOptions& opt) {
    Scene s = scene(q, opt.scale);
    std::set<int> marked(opt.marked_arrows.begin(), opt.marked_arrows.end());
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(s.width) << "\" height=\"" << num(s.height)
      << "\" viewBox=\"0 0 " << num(s.width) << " " << num(s.height) << "\">\n";
    o << "<defs>\n"
      << "<marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" "
         "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#222\"/></marker>\n"
      << "<marker id=\"strand\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
         "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#b2182b\"/></marker>\n"
      << "</defs>\n";
    for (const auto& f : q.faces) {
        o << "<polygon class=\"face " << (f.sign == Sign::Plus ? "plus" : "minus") << "\" fill=\""
          << (f.sign == Sign::Plus ? "#fde0dd" : "#deebf7") << "\" stroke=\"none\" points=\"";
        for (size_t i = 0; i < f.arrows.size(); ++i) {
            const Coord& p = s.pos[q.arrows[f.arrows[i]].src];
            o << (i ? " " : "") << num(p.col) << "," << num(p.row);
        }
        o << "\"/>\n";
    }
    const double shrink = opt.scale * 0.12;
    for (int a = 0; a < q.num_arrows(); ++a) {
        Coord p = s.pos[q.arrows[a].src], r = s.pos[q.arrows[a].tgt];
        double dr = r.row - p.row, dc = r.col - p.col, len = std::hypot(dr, dc);
        if (len > 2 * shrink) {
            p = {p.row + dr / len * shrink, p.col + dc / len * shrink};
            r = {r.row - dr / len * shrink, r.col - dc / len * shrink};
        }
        o << "<line class=\"arrow\" x1=\"" << num(p.col) << "\" y1=\"" << num(p.row) << "\" x2=\"" << num(r.col)
          << "\" y2=\"" << num(r.row) << "\" stroke=\"#222\" stroke-width=\"1.5\""
          << (marked.count(a) ? " stroke-dasharray=\"5,3\"" : "") << " marker-end=\"url(#head)\"/>\n";
        if (auto l = arrow_label(q, a); !l.empty())
            o << "<text x=\"" << num((p.col + r.col) / 2) << "\" y=\"" << num((p.row + r.row) / 2 - 4)
              << "\" font-size=\"10\" text-anchor=\"middle\">" << l << "</text>\n";
    }
    for (int v = 0; v < q.num_vertices(); ++v)
        o << "<circle class=\"vertex\" cx=\"" << num(s.pos[v].col) << "\" cy=\"" << num(s.pos[v].row)
          << "\" r=\"3.5\" fill=\"#222\"><title>" << v << (q.vertices[v].label.empty() ? "" : " " + q.vertices[v].label)
          << "</title></circle>\n";
    if (opt.strands)
        for (const auto& st : opt.strands->strands) {
            auto pts = strand_points(q, s, st);
            if (pts.size() < 2) continue;
            o << "<polyline class=\"strand\" fill=\"none\" stroke=\"#b2182b\" stroke-width=\"1\" "
                 "marker-mid=\"url(#strand)\" points=\"";
            for (size_t i = 0; i < pts.size(); ++i) o << (i ? " " : "") << num(pts[i].col) << "," << num(pts[i].row);
            o << "\"/>\n";
        }
    o << "</svg>\n";
    return o.str();
}

std::string export_tikz(const Quiver& q, const DrawOptions& opt) {
    Scene s = scene(q, 1.0);
    std::set<int> marked(opt.marked_arrows.begin(), opt.marked_arrows.end());
    std::ostringstream o;
    auto pt = [&](const Coord& c) { return "(" + num(c.col) + "," + num(-c.row) + ")"; };
    o << "\\begin{tikzpicture}[scale=1]\n";
    for (const auto& f : q.faces) {
        o << "  \\fill[" << (f.sign == Sign::Plus ? "red!12" : "blue!12") << "] ";
        for (int a : f.arrows) o << pt(s.pos[q.arrows[a].src]) << " -- ";
        o << "cycle;\n";
    }
    for (int v = 0; v < q.num_vertices(); ++v) o << "  \\node[circle,fill,inner sep=1pt] (v" << v << ") at " << pt(s.pos[v]) << " {};\n";
    for (int a = 0; a < q.num_arrows(); ++a) {
        o << "  \\draw[->" << (marked.count(a) ? ",dashed" : "") << "] (v" << q.arrows[a].src << ") -- (v" << q.arrows[a].tgt
          << ")";
        if (auto l = arrow_label(q, a); !l.empty()) o << " node[midway,above,font=\\tiny] {$" << l << "$}";
        o << ";\n";
    }
    if (opt.strands)
        for (const auto& st : opt.strands->strands) {
            auto pts = strand_points(q, s, st);
            if (pts.size() < 2) continue;
            o << "  \\draw[red,->] ";
            for (size_t i = 0; i < pts.size(); ++i) o << (i ? " -- " : "") << pt(pts[i]);
            o << ";\n";
        }
    o << "\\end{tikzpicture}\n";
    return o.str();
}

CutOpen cut_open(const AnnulusQuiver& a) {
    GlueResult g = glue(a.both, make_spec(a.both, a.seam1.I, a.seam1.J));
    CutOpen c{g.quiver, {}};
    // stored coordinates of the two pieces overlap; let the layout place them
    for (auto& v : c.disk.vertices) v.coord.reset();
    for (const auto* side : {&a.seam2.I, &a.seam2.J})
        for (int x : *side) c.seam.push_back(g.arrow_map[x]);
    return c;
}

}  // namespace dimer
