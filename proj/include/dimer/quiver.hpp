#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dimer {

enum class Sign { Plus, Minus };

inline Sign opposite(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline const char* to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

// Drawing coordinate in matrix layout: row grows downwards, col to the right.
struct Coord {
    double row = 0;
    double col = 0;
    bool operator==(const Coord&) const = default;
};

struct Vertex {
    std::optional<Coord> coord;
    std::string label;
    bool operator==(const Vertex&) const = default;
};

struct Arrow {
    int src = -1;
    int tgt = -1;
    std::vector<std::string> names;
    bool operator==(const Arrow&) const = default;
};

struct Face {
    Sign sign = Sign::Plus;
    std::vector<int> arrows;  // cyclic, composable head to tail
    bool operator==(const Face&) const = default;
};

// Thrown when ids do not resolve or the input is structurally unusable.
class MalformedQuiver : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Quiver {
    std::vector<Vertex> vertices;
    std::vector<Arrow> arrows;
    std::vector<Face> faces;

    int add_vertex(std::optional<Coord> c = std::nullopt, std::string label = {});
    int add_arrow(int src, int tgt, std::string name = {});
    int add_face(Sign sign, std::vector<int> arrows);

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_arrows() const { return static_cast<int>(arrows.size()); }
    int num_faces() const { return static_cast<int>(faces.size()); }

    std::optional<int> find_arrow(const std::string& name) const;
    int arrow(const std::string& name) const;  // throws if absent
    void add_name(int arrow, std::string name);

    bool operator==(const Quiver&) const = default;
};

// Position of an arrow inside a face boundary.
struct FaceSlot {
    int face = -1;
    int pos = -1;
};

// For every arrow, the slot in its + face and in its - face (if any).
class FaceIndex {
public:
    explicit FaceIndex(const Quiver& q);

    const std::optional<FaceSlot>& slot(int arrow, Sign s) const {
        return slots_[arrow][s == Sign::Plus ? 0 : 1];
    }
    int multiplicity(int arrow) const { return mult_[arrow]; }
    bool is_boundary(int arrow) const { return mult_[arrow] == 1; }
    // The unique face of a boundary arrow.
    FaceSlot only_slot(int arrow) const;
    Sign only_sign(int arrow) const;

    // Arrow following / preceding the slot in its face.
    int next(const FaceSlot& s) const;
    int prev(const FaceSlot& s) const;

    // Complement of arrow in the face given by the slot: the face boundary
    // read from the following arrow round to the preceding one.
    std::vector<int> complement(const FaceSlot& s) const;

private:
    const Quiver* q_;
    std::vector<std::array<std::optional<FaceSlot>, 2>> slots_;
    std::vector<int> mult_;
};

// Complement of a boundary arrow in its unique face (the "hat" path).
std::vector<int> hat(const Quiver& q, int arrow);

// ---------------------------------------------------------------- validation

enum class Axiom {
    NoLoops,
    FaceMultiplicity,
    OppositeSigns,
    FaceShape,
    IncidenceConnected,
    IsolatedVertex,
};

const char* to_string(Axiom a);

struct Violation {
    Axiom axiom;
    std::string where;  // "vertex 3", "arrow 7", "face 2"
    std::string message;
};

struct ValidateOptions {
    // A boundary vertex whose incidence graph splits into paths that each end
    // in boundary arrows is a point where pieces of surface touch.  Accepted
    // unless strict is set; it is always listed in pinch_vertices.
    bool strict = false;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<int> pinch_vertices;
    bool ok() const { return violations.empty(); }
};

// Throws MalformedQuiver for ids that do not resolve.
ValidationReport validate(const Quiver& q, const ValidateOptions& opt = {});

void check_well_formed(const Quiver& q);

// ---------------------------------------------------------------- classification

struct ArrowClasses {
    std::vector<int> boundary_arrows;
    std::vector<int> internal_arrows;
    std::vector<int> boundary_vertices;
    std::vector<int> internal_vertices;
};

ArrowClasses classify_arrows(const Quiver& q);

struct IncidenceGraph {
    std::vector<int> nodes;                  // arrows incident to the vertex
    std::vector<std::pair<int, int>> edges;  // (into v, out of v)
    int components = 0;
    bool empty() const { return nodes.empty(); }
    bool connected() const { return components == 1; }
};

IncidenceGraph incidence_graph(const Quiver& q, int v);

// ---------------------------------------------------------------- surface

// Ends of a boundary arrow in the clockwise direction of its boundary.
int cw_from(const Quiver& q, const FaceIndex& fx, int arrow);
int cw_to(const Quiver& q, const FaceIndex& fx, int arrow);

// Boundary arrows grouped into clockwise cycles.  Each cycle starts at its
// smallest arrow id; cycles are sorted by that id.
std::vector<std::vector<int>> boundary_components(const Quiver& q);

enum class SurfaceKind { Disk, Annulus, PinchedDisks, Other, Disconnected };

const char* to_string(SurfaceKind k);

struct SurfaceInfo {
    int euler_characteristic = 0;
    std::vector<std::vector<int>> boundary_components;
    std::optional<int> genus;
    SurfaceKind kind = SurfaceKind::Other;
    // Pinched surfaces: pieces obtained by pulling apart the pinch vertices.
    int pieces = 1;
    int pinch_vertices = 0;
    int shared_arrows = 0;
    std::string description;
    std::vector<SurfaceInfo> components;  // filled when disconnected
};

SurfaceInfo surface_invariants(const Quiver& q);

// Connected components as lists of vertex ids.
std::vector<std::vector<int>> connected_components(const Quiver& q);

// ---------------------------------------------------------------- isomorphism

struct Isomorphism {
    std::vector<int> vertex;  // q1 id -> q2 id
    std::vector<int> arrow;
    std::vector<int> face;
};

std::optional<Isomorphism> quiver_isomorphic(const Quiver& q1, const Quiver& q2);

// Disjoint union; ids of b are shifted past those of a.
Quiver disjoint_union(const Quiver& a, const Quiver& b);

}  // namespace dimer
