#pragma once

// TLX is the line-oriented text format for fixtures and reports.  A document
// opens with a `group` line and then carries named blocks:
//
//   # comment
//   group m=5 t=0 ws=1 wt=1
//
//   complex C
//     ranks 1 1 1 1
//     d 1 1x1 [s - 1]
//     d 2 1x1 [1 + s + s^2 + s^3 + s^4]
//     d 3 1x1 [s - 1]
//   end
//
//   map f
//     src C
//     tgt C
//     f 0 1x1 [1]
//   end
//
//   duality P
//     complex C
//     n 3
//     p 0 1x1 [1]
//   end
//
//   double D
//     kind generalised
//     base C
//     n 9
//     alpha f
//     u [s + s^4 - 1]
//     basep P
//   end
//
// Matrices are written `ROWSxCOLS [ entries ]` with `,` between entries and
// `;` between rows; the element grammar is the one parse_element accepts.
// All-zero matrices (including degenerate shapes) may be omitted; the parser
// fills them in from the declared ranks.  Parsing validates every block
// against its module's constructor and reports errors with line numbers.
// Dualities and doubles are stored by reference and certified on demand.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlab/doubles.hpp"

namespace tlab {

struct TLXComplex {
    std::string name;
    BasedComplex c;

    bool operator==(const TLXComplex&) const = default;
};

// blocks are stored sparsely by degree; all-zero blocks are dropped on parse
// and omitted on emit, so documents stay hand-writable and round-trip exactly
struct TLXMap {
    std::string name;
    std::string src;
    std::string tgt;
    std::vector<std::pair<int, GRMatrix>> blocks;

    bool operator==(const TLXMap&) const = default;
};

struct TLXDuality {
    std::string name;
    std::string complex;
    int n = 0;
    std::vector<std::pair<int, GRMatrix>> blocks;

    bool operator==(const TLXDuality&) const = default;
};

struct TLXDoubleDecl {
    std::string name;
    DoubleKind kind = DoubleKind::Trivial;
    std::string base;
    int n = 0;
    std::string alpha;              // map name, empty for none
    std::optional<RingElement> u;   // unit representative of the prescribed class
    std::string basep;              // duality name, empty for none

    bool operator==(const TLXDoubleDecl&) const = default;
};

struct TLXDocument {
    GroupSpec group;
    std::vector<TLXComplex> complexes;
    std::vector<TLXMap> maps;
    std::vector<TLXDuality> dualities;
    std::vector<TLXDoubleDecl> doubles;

    bool operator==(const TLXDocument&) const = default;

    // lookups resolve names and build the module object; Input error when a
    // name is missing or the block does not assemble
    const BasedComplex& complex(const std::string& name) const;
    ChainMap map(const std::string& name) const;
    DualityPair duality(const std::string& name, int t_cap = 16) const;
    DoubleModel build_double(const std::string& name, int t_cap = 16) const;
};

TLXDocument parse_tlx(const std::string& text);
std::string emit_tlx(const TLXDocument& doc);

}  // namespace tlab