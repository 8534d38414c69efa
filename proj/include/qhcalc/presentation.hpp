#ifndef QHCALC_PRESENTATION_HPP
#define QHCALC_PRESENTATION_HPP

#include <string>
#include <vector>

#include "qhcalc/matrix.hpp"

namespace qhcalc {

struct Arrow {
    std::string name;
    int src = -1; // vertex indices into Presentation::vertices
    int dst = -1;
    int degree = 1;
};

// coeff * (word of arrow indices, composed first-to-last)
struct PathTerm {
    Scalar coeff;
    std::vector<int> word;
};

// Homogeneous linear combination of composable paths with common
// source, target, and degree.
struct Relation {
    std::vector<PathTerm> terms;
    int src = -1;
    int dst = -1;
    int degree = 0;
};

// Quiver with homogeneous relations. The order of `vertices` is the
// quasi-hereditary order: vertices[0] < vertices[1] < ... .
struct Presentation {
    Field field;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int vertex_index(const std::string& label) const; // -1 when unknown
    int word_src(const std::vector<int>& word, int fallback = -1) const;
    int word_dst(const std::vector<int>& word, int fallback = -1) const;
    int word_degree(const std::vector<int>& word) const;
    bool word_composable(const std::vector<int>& word) const;

    // Structural validation: distinct labels, endpoints declared, relations
    // homogeneous and composable. Throws ParseError / NotPositivelyGraded.
    void validate() const;
};

// Line-oriented text format:
//   field Q | field Fp <prime>
//   vertices v1 v2 ... vn
//   arrow <name> <src> <dst> [degree]
//   relation <coeff>*<p1>.<p2>...<pk> [+ <term> ...]
// '#' starts a comment. Rational coefficients are written num/den.
Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);
std::string format_presentation(const Presentation& p);

} // namespace qhcalc

#endif
