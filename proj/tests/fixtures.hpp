#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dimer/builders.hpp"
#include "dimer/quiver.hpp"

namespace fixtures {

using namespace dimer;

// Points of a regular polygon, listed clockwise on the page.
inline std::vector<Coord> polygon(int n, double cx, double radius) {
    std::vector<Coord> pts;
    for (int j = 0; j < n; ++j) {
        double t = std::numbers::pi / 2 - 2 * std::numbers::pi * j / n;
        pts.push_back({-radius * std::sin(t), cx + radius * std::cos(t)});
    }
    return pts;
}

// Two disks side by side.  Q_alpha is one - pentagon; read clockwise its
// boundary is alpha_5, alpha_4, alpha_3, alpha_2, alpha_1.  Q_beta is a +
// quadrilateral and a - triangle sharing the internal arrow gamma; read
// anticlockwise its boundary is beta_1 .. beta_5, with beta_1, beta_2, beta_3
// in the + face.
inline Quiver two_components() {
    Quiver q;
    auto pa = polygon(5, 0, 1), pb = polygon(5, 3, 1);
    std::vector<int> a, b;
    for (const auto& p : pa) a.push_back(q.add_vertex(p));
    for (const auto& p : pb) b.push_back(q.add_vertex(p));
    // arrow at clockwise position j runs a_{j+1} -> a_j
    std::vector<int> pos(5);
    for (int j = 0; j < 5; ++j) pos[j] = q.add_arrow(a[(j + 1) % 5], a[j], "alpha_" + std::to_string(5 - j));
    q.add_face(Sign::Minus, {pos[4], pos[3], pos[2], pos[1], pos[0]});

    int b01 = q.add_arrow(b[0], b[1], "beta_3");
    int b12 = q.add_arrow(b[1], b[2], "beta_2");
    int b23 = q.add_arrow(b[2], b[3], "beta_1");
    int gamma = q.add_arrow(b[3], b[0], "gamma");
    int b04 = q.add_arrow(b[0], b[4], "beta_4");
    int b43 = q.add_arrow(b[4], b[3], "beta_5");
    q.add_face(Sign::Plus, {b01, b12, b23, gamma});
    q.add_face(Sign::Minus, {gamma, b04, b43});
    return q;
}

inline std::vector<int> arrows(const Quiver& q, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const auto& n : names) out.push_back(q.arrow(n));
    return out;
}

// A - triangle and a + triangle, each a disk; "i" and "j" are parallel.
inline Quiver two_triangles() {
    Quiver q;
    auto pa = polygon(3, 0, 1), pb = polygon(3, 3, 1);
    std::vector<int> a, b;
    for (const auto& p : pa) a.push_back(q.add_vertex(p));
    for (const auto& p : pb) b.push_back(q.add_vertex(p));
    int a0 = q.add_arrow(a[1], a[0], "i");
    int a1 = q.add_arrow(a[2], a[1]);
    int a2 = q.add_arrow(a[0], a[2]);
    q.add_face(Sign::Minus, {a2, a1, a0});
    int b0 = q.add_arrow(b[0], b[1]);
    int b1 = q.add_arrow(b[1], b[2]);
    int b2 = q.add_arrow(b[2], b[0], "j");
    q.add_face(Sign::Plus, {b0, b1, b2});
    return q;
}

// One oriented triangle: the smallest disk.
inline Quiver triangle(Sign s = Sign::Plus) {
    Quiver q;
    auto p = polygon(3, 0, 1);
    for (const auto& c : p) q.add_vertex(c);
    if (s == Sign::Plus) {
        int x = q.add_arrow(0, 1), y = q.add_arrow(1, 2), z = q.add_arrow(2, 0);
        q.add_face(s, {x, y, z});
    } else {
        int x = q.add_arrow(1, 0), y = q.add_arrow(2, 1), z = q.add_arrow(0, 2);
        q.add_face(s, {z, y, x});
    }
    return q;
}

struct AnnulusCase {
    int k, n, m1;
};

inline const std::vector<AnnulusCase>& annulus_cases() {
    static const std::vector<AnnulusCase> cases{{2, 4, 0}, {2, 6, 1}, {3, 7, 0}, {4, 9, 0}};
    return cases;
}

}  // namespace fixtures
