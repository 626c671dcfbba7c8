#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "dimer/builders.hpp"
#include "dimer/gluing.hpp"
#include "dimer/quiver.hpp"

namespace dimer {

struct Path {
    int source = -1;
    std::vector<int> arrows;
    int length() const { return static_cast<int>(arrows.size()); }
    int target(const Quiver& q) const { return arrows.empty() ? source : q.arrows[arrows.back()].tgt; }
    bool operator==(const Path&) const = default;
};

bool composable(const Quiver& q, const Path& p);
std::string path_string(const Quiver& q, const Path& p);

struct PotentialTerm {
    int sign;  // +1 for + faces, -1 for - faces
    std::vector<int> cycle;
};

struct Potential {
    std::vector<PotentialTerm> terms;
};

Potential potential(const Quiver& q);

// One relation per internal arrow: its complement in the + face equals its
// complement in the - face.
struct ArrowRelation {
    int arrow = -1;
    Path plus, minus;
};

struct RelationSet {
    std::vector<ArrowRelation> arrows;
    std::vector<PathRelation> extra;  // formal identifications, e.g. from a gluing
};

RelationSet relations(const Quiver& q);

int max_face_size(const Quiver& q);

// All face cycles read from an arrow leaving v.
std::vector<Path> unit_cycles(const Quiver& q, int v);

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, int achieved) : std::runtime_error(what), achieved_length(achieved) {}
    int achieved_length;  // longest bound that would have fit
};

// Node budget for truncation and class searches; DIMER_PATH_BUDGET overrides.
std::size_t path_budget();

// ---------------------------------------------------------------- truncation

// Every path of length <= L is a node of a trie stored in breadth-first
// order, so node ids grow with length and, within a length, with the arrow
// sequence.  Classes are closed under the congruence generated by the
// relations; each class is named by its smallest node, which is the
// lexicographically least shortest member.
class TruncatedAlgebra {
public:
    TruncatedAlgebra(const Quiver& q, int max_len);
    TruncatedAlgebra(const Quiver& q, int max_len, const std::vector<PathRelation>& rels);

    const Quiver& quiver() const { return *q_; }
    int max_len() const { return max_len_; }
    int safe_len() const { return safe_len_; }
    int num_nodes() const { return static_cast<int>(len_.size()); }

    int trivial(int v) const { return v; }
    int node(const Path& p) const;  // -1 if longer than L
    int extend(int node, const std::vector<int>& arrows) const;
    Path path(int node) const;
    int source(int node) const { return src_[node]; }
    int target(int node) const;
    int length(int node) const { return len_[node]; }

    int cls(int node) const { return canon_[node]; }
    bool equal(const Path& a, const Path& b) const;  // false if either is beyond L

    // Classes (by canonical node) from a to b whose shortest member is at
    // most max_len, shortest first.
    std::vector<int> classes(int a, int b, int max_len) const;
    std::map<std::pair<int, int>, std::vector<int>> all_classes(int max_len) const;
    std::vector<int> members(int cls, int max_len) const;

    // Shortest unit cycle at v and the product t * class, formed by inserting
    // the shortest available unit cycle into the canonical path.  -1 when
    // every insertion is longer than L.
    const Path& unit_cycle(int v) const { return unit_[v]; }
    int times_t(int cls) const;

private:
    void build();
    void close(const std::vector<PathRelation>& rels);
    int child(int node, int arrow) const;

    const Quiver* q_;
    int max_len_, safe_len_;
    std::vector<std::vector<int>> out_;  // out arrows per vertex
    std::vector<int> out_pos_;           // index of arrow among out arrows of its source
    std::vector<std::vector<int>> in_;
    std::vector<int> parent_, last_, first_child_, src_, canon_;
    std::vector<std::uint8_t> len_;
    std::vector<Path> unit_;
    mutable std::vector<int> member_start_, member_nodes_;  // built on first members() call
};

struct CentralReport {
    bool ok = true;
    int window = 0;
    std::vector<int> split_vertices;  // unit cycles at v fall into several classes
    std::vector<int> failing_arrows;  // u_src a != a u_tgt
};

CentralReport check_central_t(const TruncatedAlgebra& a);
// Same checks by bounded rewriting, for quivers too large to truncate.
CentralReport check_central_t(const Quiver& q, int max_len);

struct ThinPair {
    int a = -1, b = -1;
    int bottom = -1;   // canonical node of the minimal class, -1 if no path
    int classes = 0;   // classes within the window
    bool thin = true;
    std::optional<std::pair<int, int>> counterexample;  // bottom vs a class off the chain
};

struct ThinReport {
    bool ok = true;
    int window = 0;
    std::vector<ThinPair> pairs;
};

ThinReport is_thin_truncated(const TruncatedAlgebra& a);

class Inconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Chain-bottom class from a to b within the window.
Path minimal_path(const TruncatedAlgebra& alg, int a, int b);

struct CompositionReport {
    bool ok = true;
    long checked = 0;
    std::optional<std::pair<Path, int>> counterexample;  // member and split point
};

// If g h lies in a chain-bottom class then so do g and h; checked for every
// member of every chain-bottom class within the window.
CompositionReport check_minimal_composition(const TruncatedAlgebra& a, const ThinReport& thin);

// ---------------------------------------------------------------- rewriting

// Bounded search over the congruence class of a path: every move replaces
// the complement of an internal arrow in one face by its complement in the
// other face, keeping lengths at most the bound.
class Rewriter {
public:
    explicit Rewriter(const Quiver& q);
    std::vector<std::vector<int>> moves(const std::vector<int>& p) const;
    // nullopt when the search exceeds the state limit
    std::optional<bool> equal(const std::vector<int>& a, const std::vector<int>& b, int max_len,
                              std::size_t limit) const;
    std::size_t last_states() const { return states_; }
    // Whole class of p among paths of length <= max_len; nullopt past the limit.
    std::optional<std::vector<std::vector<int>>> class_of(const std::vector<int>& p, int max_len,
                                                          std::size_t limit) const;

private:
    struct Rule {
        std::vector<int> lhs, rhs;
    };
    std::vector<std::vector<Rule>> by_first_;
    mutable std::size_t states_ = 0;
};

// ---------------------------------------------------------------- disk boundary

// u_i : i -> i+1 and v_i : i+1 -> i on a disk, with the boundary vertices
// numbered as in boundary_vertex_order; index 1..n (entry 0 unused).
struct DiskBoundaryPaths {
    int n = 0;
    std::vector<int> vertex;  // vertex[i] for i = 1..n
    std::vector<Path> u, v;
    Path u_run(int from, int count) const;  // u_from u_{from+1} ...
    Path v_run(int from, int count) const;  // v_{from-1} v_{from-2} ..., starting at vertex from
};

DiskBoundaryPaths disk_boundary_paths(const Quiver& q);

struct UVReport {
    bool ok = true;
    std::vector<int> failing_base_points;
    std::vector<int> undecided_base_points;
};

// v^k = u^{n-k} starting at every boundary vertex m, by bounded rewriting.
UVReport check_uv_identity(const Quiver& q, int k, int max_len);

// ---------------------------------------------------------------- comparison

// Vertex map and arrow -> path substitution between two quivers.
struct PathMap {
    std::vector<int> vertex;
    std::vector<std::vector<int>> arrow;
    Path apply(const Path& p) const;
};

struct CompareReport {
    bool ok = true;
    int window = 0;
    // (source, target, length) -> class counts on each side
    std::map<std::tuple<int, int, int>, std::pair<int, int>> counts;
    std::vector<std::string> problems;
};

// f and g must induce mutually inverse bijections on classes whose shortest
// members lie in the window of a; lengths are measured in a.
CompareReport compare_algebras(const TruncatedAlgebra& a, const TruncatedAlgebra& b, const PathMap& f,
                               const PathMap& g);

CompareReport compare_rho(const Quiver& q, const GluingSpec& spec, int max_len);
// Glued quiver with its own relations against the relations of the rho
// quiver plus the gluing identifications, carried along the gluing map.
CompareReport compare_glued(const Quiver& q, const GluingSpec& spec, int max_len);

// ---------------------------------------------------------------- annulus boundary algebra

struct Generator {
    std::string name;
    Path path;
};

std::vector<Generator> boundary_generators(const AnnulusQuiver& a);

struct RelationCheck {
    int type = 0, instance = 0;
    Path lhs, rhs;
    bool composable = true;
    std::optional<bool> equal;
    std::size_t states = 0;
};

struct GenerationCheck {
    long prime_paths = 0;
    long covered = 0;
    std::vector<Path> uncovered;
    bool complete = true;  // false if a class search hit the limit
};

struct LambdaReport {
    int max_len = 0, gen_len = 0;
    int outer = 0, inner = 0;
    std::vector<RelationCheck> relations;
    GenerationCheck generation;
    bool ok() const;
};

int default_lambda_length(const AnnulusQuiver& a);

// phi sends the generators of the presentation to paths of the glued quiver.
std::vector<Path> lambda_map(const AnnulusQuiver& a, const AlgebraPresentation& p);

// Every boundary-to-boundary class within gen_len is a product of the given
// generators (class searches bounded by max_len).
GenerationCheck check_generation(const AnnulusQuiver& a, const std::vector<Generator>& generators, int max_len,
                                 int gen_len);

LambdaReport check_lambda(const AnnulusQuiver& a, const AlgebraPresentation& p, int max_len, int gen_len);

// ---------------------------------------------------------------- stability

struct StabilityReport {
    bool ok = true;
    int window = 0;
    long compared = 0;
    std::optional<int> differing_node;
};

// Same classes within the window of the smaller bound.
StabilityReport compare_truncations(const TruncatedAlgebra& small, const TruncatedAlgebra& large);
// The same comparison by rewriting, for quivers whose truncation at
// max_len + max_face_size would not fit the budget: the short members of every
// class within the window agree when searched up to max_len and up to
// max_len + max_face_size.  Not ok if a search hits the state limit.
StabilityReport compare_rewriting_bounds(const Quiver& q, int max_len);

}  // namespace dimer
