#pragma once

#include <map>
#include <string>
#include <vector>

#include "gwtqft/repcat.hpp"

namespace gwtqft {

struct Strand {
    std::string colour;
    bool up = true;
    bool operator==(const Strand&) const = default;
};

enum class PieceKind { Id, Over, Under, CapLeft, CapRight, CupLeft, CupRight, TwistPos, TwistNeg };

/// One elementary piece of a slice. Over = x+ (c_{X,Y}), Under = x- (c^{-1}_{Y,X}).
/// Cups carry the colour of the strands they create; Id carries a strand count.
struct Piece {
    PieceKind kind = PieceKind::Id;
    std::size_t count = 1;
    std::string colour;
};

/// Slices are read bottom to top; each slice covers the whole current profile.
struct RibbonWord {
    std::vector<Strand> input;
    std::vector<std::vector<Piece>> slices;
};

/// Colours named in a word file.
struct ColourSpec {
    enum class Kind { Verma, OneDim, Kirby };
    Kind kind = Kind::Verma;
    RationalVector weight;  // highest weight, or the holonomy class for Kirby
    int parity = 0;
};

struct ParsedWord {
    RibbonWord word;
    std::map<std::string, ColourSpec> colours;
};

/// Grammar (one statement per line, '#' starts a comment):
///   colour NAME verma|one_dim|kirby w_1 ... w_r [odd]
///   input: NAME+ NAME- ...        (bottom profile, + = up, - = down; may be empty)
///   any other line is a slice of tokens: id  id:K  x+  x-  t+  t-  cap_l  cap_r  cup_l:NAME  cup_r:NAME
/// Throws ParseError with line and column.
ParsedWord parse_word(const std::string& text);
std::string format_word(const RibbonWord& w);

/// Profile after the last slice; throws ProfileMismatch naming the slice and position.
std::vector<Strand> validate_word(const RibbonWord& w);

using ColourTable = std::map<std::string, Module>;

/// Matrix of the word: dim(output profile) x dim(input profile). Throws ProfileMismatch,
/// SizeLimit (ambient dimension above 2^20) and UnsupportedObject for unknown colours.
CMatrix evaluate(const RibbonWord& w, const ColourTable& colours);

/// F' of the closure of a (1,1) word whose open strand is an upward typical Verma:
/// d(V) times the scalar of the evaluation. Throws NotScalar, UnsupportedObject.
Cyclotomic evaluate_cut(const RibbonWord& w, const ColourTable& colours);

/// Components of the closure (input strand j joined to output strand j).
struct LinkData {
    std::size_t components = 0;
    std::vector<std::string> colour;          // colour name per component
    std::vector<std::vector<long>> linking;   // framing on the diagonal
    std::vector<int> input_component;         // component of each input strand
};
LinkData link_data(const RibbonWord& w);

}  // namespace gwtqft
