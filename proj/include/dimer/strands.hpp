#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/quiver.hpp"

namespace dimer {

// A strand passes every arrow twice.  On the zig passage it turns inside the
// + face (it continues with the arrow after the crossed one in that face); on
// the zag passage it turns inside the - face.
enum class Side { Zig, Zag };

inline const char* to_string(Side s) { return s == Side::Zig ? "zig" : "zag"; }

struct Crossing {
    int arrow = -1;
    Side side = Side::Zig;
    bool operator==(const Crossing&) const = default;
};

struct MarkedPoint {
    int component = 0;  // boundary component index
    int position = 0;   // 0-based, clockwise
    int arrow = -1;
    auto operator<=>(const MarkedPoint&) const = default;
};

struct Strand {
    int id = 0;
    std::vector<Crossing> crossings;
    std::optional<MarkedPoint> start, end;
    bool closed() const { return !start.has_value(); }
};

struct StrandDiagram {
    std::vector<Strand> strands;
    std::vector<std::vector<int>> components;  // boundary arrows, clockwise
    std::map<MarkedPoint, MarkedPoint> permutation;

    // Marked point carried by a boundary arrow.
    std::optional<MarkedPoint> marked_point(int arrow) const;
    int component_size(int c) const { return static_cast<int>(components[c].size()); }
};

StrandDiagram zig_zag_strands(const Quiver& q);

class ClosedStrandError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PermutationView {
    // per component: image[i] = (component, position) of pi(i)
    std::vector<std::vector<std::pair<int, int>>> image;
    std::string cycles;  // cycle notation, points written c.i (1-based), or just i on one component
};

PermutationView strand_permutation(const StrandDiagram& d);

struct Degree {
    std::vector<int> sizes;     // marked points per component
    std::vector<int> residues;  // shift on each component, in [0, size)
    int value = 0;              // smallest positive integer with all residues

    bool admits(int k) const;
};

// Degree of the strand permutation if it shifts every component by one
// common k; nullopt if some strand changes component or no k fits.
std::optional<Degree> diagram_degree(const StrandDiagram& d);

struct WeakPostnikovReport {
    bool ok = true;
    std::vector<std::string> problems;
};

// Local axioms: every arrow crossed once on each side, sides alternate
// along each strand, consecutive crossings share a face of the right sign.
WeakPostnikovReport check_weak_postnikov(const Quiver& q, const StrandDiagram& d);

class UnsupportedSurface : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Lens {
    int strand_a, strand_b;
    int arrow_first, arrow_second;  // in the order strand_a meets them
};

struct SelfIntersection {
    int strand;
    int arrow;
};

struct PostnikovReport {
    std::vector<SelfIntersection> self_intersections;
    std::vector<Lens> unoriented_lenses;
    bool ok() const { return self_intersections.empty() && unoriented_lenses.empty(); }
};

// Global axioms on a disk: no strand meets an arrow twice, and any two
// strands meet their common arrows in opposite orders.
PostnikovReport check_postnikov(const Quiver& q, const StrandDiagram& d);

// ---------------------------------------------------------------- labels

using Subset = std::uint64_t;  // bit i-1 set <=> i in the subset

std::vector<int> subset_elements(Subset s);
Subset make_subset(const std::vector<int>& elems);

class LabelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RegionLabels {
    int k = 0, n = 0;
    std::vector<Subset> label;  // per vertex
    // strand labels for the passages of each arrow: c and d in J = I - {c} + {d}
    std::vector<int> c, d;
};

// Label of a strand: the 1-based position of its starting marked point.
RegionLabels label_regions(const Quiver& q, int k, int n, int seed_vertex, const std::vector<int>& seed_set);

// Boundary vertex numbering used for labels: vertex 1 is cw_from of the first
// boundary arrow, and arrow i (1-based) joins vertices i and i+1.
std::vector<int> boundary_vertex_order(const Quiver& q);

// Label carried by boundary vertex i (1-based) of a (k, n) diagram under
// this numbering: the cyclic interval {i-k, ..., i-1} mod n.
std::vector<int> boundary_label(int k, int n, int i);

// Multiplicity vector indexed 1..n (entry 0 unused).
using Weight = std::vector<int>;

Weight arrow_weight(const RegionLabels& labels, int arrow);
Weight path_weight(const RegionLabels& labels, const std::vector<int>& path);
int support_size(const Weight& w);
bool is_sincere(const Weight& w);

}  // namespace dimer
