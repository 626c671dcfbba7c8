#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/quiver.hpp"

namespace dimer {

class GluingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Orientation { Clockwise, Anticlockwise };

struct BoundaryInterval {
    std::vector<int> arrows;    // i_1 .. i_s
    std::vector<int> vertices;  // v_0 .. v_s
    Orientation orientation = Orientation::Clockwise;
};

// I is read clockwise along its boundary, J anticlockwise.
struct GluingSpec {
    BoundaryInterval I, J;
    int size() const { return static_cast<int>(I.arrows.size()); }
};

// Checks the interval conditions and fills in the vertex lists.
GluingSpec make_spec(const Quiver& q, const std::vector<int>& I, const std::vector<int>& J);

bool parallel(const Quiver& q, const GluingSpec& spec, int m);  // m is 1-based

struct RhoResult {
    Quiver quiver;
    std::vector<int> rho;  // rho[m-1] = arrow id of rho(j_m)
};

RhoResult rho(const Quiver& q, const GluingSpec& spec);

struct Seam {
    std::vector<int> arrows;                 // i_m = rho(j_m) in the glued quiver
    std::vector<int> partners;               // j_m when it stays a separate arrow, else -1
    std::vector<std::vector<int>> hat_i;     // complement of i_m in its own face
    std::vector<std::vector<int>> hat_rho;   // complement of rho(j_m) in the other face
    std::vector<int> vertices;               // merged v_m ~ w_m, m = 0..s

    std::vector<int> subquiver_arrows() const;
    std::vector<int> subquiver_vertices(const Quiver& q) const;
};

struct GlueResult {
    Quiver quiver;
    Seam seam;
    RhoResult rho;                 // the intermediate quiver
    std::vector<int> vertex_map;   // rho quiver vertex -> glued vertex
    std::vector<int> arrow_map;    // rho quiver arrow -> glued arrow
};

struct GlueOptions {
    // Gluing an interval whose ends already touch the other side can turn a
    // boundary arrow into a loop; rejected unless allowed.
    bool allow_loops = false;
};

GlueResult glue(const Quiver& q, const GluingSpec& spec, const GlueOptions& opt = {});

// Arrow lists refer to the input quiver.
struct SeamArrows {
    std::vector<int> I, J;
};

struct GlueManyResult {
    Quiver quiver;
    std::vector<Seam> seams;
    std::vector<int> arrow_map;   // input arrow -> final arrow
    std::vector<int> vertex_map;  // input vertex -> final vertex
};

GlueManyResult glue_many(const Quiver& q, const std::vector<SeamArrows>& seams, const GlueOptions& opt = {});

struct SeamCrossing {
    // path positions: g_0 = [before_start, first_arrow), g_1 = [first_arrow,
    // last_arrow) runs inside the seam, g_2 = [last_arrow, after_end)
    int first_arrow, last_arrow;
    int before_start, after_end;
};

// Decomposition of a path into crossings of one seam.
std::vector<SeamCrossing> crosses_seam(const Quiver& q, int source, const std::vector<int>& path, const Seam& seam);

struct PathRelation {
    int source = -1;
    std::vector<int> lhs, rhs;
};

struct FormalRelations {
    std::vector<PathRelation> paths;
    std::vector<std::pair<int, int>> idempotents;
};

// Identifications turning the path algebra of rho(q) into that of the glued
// quiver: i_m = rho(j_m), their complements, and e_{v_m} = e_{w_m}.
// Ids refer to the rho quiver.
FormalRelations glue_relation_set(const RhoResult& r, const GluingSpec& spec);

}  // namespace dimer
