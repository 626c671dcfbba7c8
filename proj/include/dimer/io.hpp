#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/builders.hpp"
#include "dimer/quiver.hpp"
#include "dimer/strands.hpp"

namespace dimer {

inline constexpr const char* kFormat = "dimer-quiver/1";

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                                      : what),
          line(line), column(column) {}
    int line, column;  // 0 for semantic errors
};

// Canonical text: keys in a fixed order, records sorted by id, two-space
// indentation, trailing newline.
std::string serialize(const Quiver& q);
Quiver parse(const std::string& text);

Quiver read_quiver_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

class LayoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DrawOptions {
    const StrandDiagram* strands = nullptr;
    std::vector<int> marked_arrows;  // drawn dashed, e.g. a seam still to be glued
    double scale = 60;
};

// Vertex positions: stored coordinates when every vertex has one and the
// quiver is a disk (or disks touching at points), otherwise a barycentric
// layout with the boundary on a circle.  Throws LayoutError on other
// surfaces.
std::vector<Coord> layout(const Quiver& q);

std::string export_svg(const Quiver& q, const DrawOptions& opt = {});
std::string export_tikz(const Quiver& q, const DrawOptions& opt = {});

// An annulus is drawn cut open along the second seam: the disk left after
// the first gluing, with the arrows of the second seam marked.
struct CutOpen {
    Quiver disk;
    std::vector<int> seam;
};

CutOpen cut_open(const AnnulusQuiver& a);

}  // namespace dimer
