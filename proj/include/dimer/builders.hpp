#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dimer/gluing.hpp"
#include "dimer/quiver.hpp"

namespace dimer {

// d^2 x d^2 matrix of 0/1; entry (i,j) is 1-based as in the recursion.
class BridgeMatrix {
public:
    explicit BridgeMatrix(int d) : d_(d), m_(static_cast<size_t>(d) * d * d * d, 0) {}
    int d() const { return d_; }
    int size() const { return d_ * d_; }
    std::uint8_t operator()(int i, int j) const { return m_[idx(i, j)]; }
    std::uint8_t& at(int i, int j) { return m_[idx(i, j)]; }
    int nonzero() const;
    // lattice point (row, col), 1-based, of matrix index i
    std::pair<int, int> point(int i) const { return {(i - 1) / d_ + 1, (i - 1) % d_ + 1}; }

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i - 1) * size() + (j - 1); }
    int d_;
    std::vector<std::uint8_t> m_;
};

BridgeMatrix bridge_matrix(int d);

// Vertices carry lattice coordinates (row i, col j).  Boundary arrows are
// named w_i, r_i, z_i, s_i.
Quiver bridge_quiver(int k);

// Faces of a straight-line drawing, traced from the rotation system.  A face
// whose boundary runs along its arrows anticlockwise gets sign -, clockwise
// gets +; the unbounded face is dropped.  Throws if a bounded face mixes
// directions.
void trace_faces(Quiver& q);

Quiver fan_quiver(int n);

// Rectangular (k, n) quiver: vertex (i, j) for the i x j rectangle inside a
// k x (n-k) box, plus one vertex for the empty rectangle.
Quiver grid_quiver(int k, int n);

struct AnnulusSpec {
    int k = 2, n = 4, m1 = 0;
    int m2() const { return n - 2 * k - m1; }
};

struct AnnulusQuiver {
    AnnulusSpec spec;
    Quiver quiver;
    Quiver disk;                  // the (k, n) quiver before gluing
    Quiver bridge;                // Theta_k before gluing
    Quiver both;                  // disjoint union, disk first
    Quiver first_seam_only;       // I_1 = J_1 glued
    Quiver second_seam_only;      // I_2 = J_2 glued
    SeamArrows seam1, seam2;      // ids in `both`
    std::vector<Seam> seams;
    std::vector<int> arrow_map;   // `both` arrow -> glued arrow
    std::vector<int> vertex_map;  // `both` vertex -> glued vertex

    // Labelled boundary of the disk, 1-based: vertex i and the arrow b_i
    // joining i and i+1, as ids in the glued quiver.
    int boundary_vertex(int i) const;
    int boundary_arrow(int i) const;

    // u_i : i -> i+1 and v_i : i+1 -> i, the arrow b_i or its complement.
    std::vector<int> u(int i) const;
    std::vector<int> v(int i) const;

    std::vector<int> named(const std::string& base, int i) const;  // the arrow base_i as a path
    std::vector<int> r() const;  // r_1 ... r_k
    std::vector<int> s() const;  // s_1 ... s_k

    int outer_component() const;  // index into boundary_components(quiver)
    int inner_component() const;

    std::vector<int> disk_vertex;  // label i (1-based, index i-1) -> disk vertex id
    std::vector<int> disk_arrow;   // b_i -> disk arrow id
};

AnnulusQuiver annulus_quiver(const AnnulusSpec& spec);

// Formal presentation by a quiver with named arrows and binomial relations.
struct GammaArrow {
    std::string name;
    int src, tgt;
};

struct FormalRelation {
    int type;      // 1..8
    int instance;  // base point or index of the instance
    std::vector<int> lhs, rhs;
};

struct AlgebraPresentation {
    int m1 = 0, m2 = 0, k = 2;
    int outer = 0, inner = 0;  // cycle lengths k+m2-1 and k+m1-1
    int num_vertices = 0;
    std::vector<std::string> vertex_names;
    std::vector<GammaArrow> arrows;
    std::vector<FormalRelation> relations;

    int arrow(const std::string& name) const;
    std::string word(const std::vector<int>& w) const;
    int count(int type) const;
};

AlgebraPresentation gamma_presentation(int m1, int m2, int k);

}  // namespace dimer
