#pragma once

#include <string>

#include "objlog/converter.hpp"
#include "objlog/metamodel.hpp"

namespace objlog::testing {

inline const char* const kPolygonSchema = R"(
class('Point', [], [attr(id, string), attr(x, int), attr(y, int)]).
class('Segment', [], [attr(id, string), attr(point0, entity('Point')), attr(point1, entity('Point'))]).
class('Polygon', [], [attr(id, string), attr(segments, list(entity('Segment')))]).
class('Tetragon', [extends('Polygon'), functor('Polygon')], [attr(diagonals, list(entity('Segment')))]).
)";

// The ground tetragon fact as laid out in the polygon example.
inline const char* const kTetragonListing = R"('Polygon'(
 abcd,
 [
  'Segment'(ab,'Point'(a,2,2),'Point'(b,2,6)),
  'Segment'(bc,'Point'(b,2,6),'Point'(c,6,6)),
  'Segment'(cd,'Point'(c,6,6),'Point'(d,6,2)),
  'Segment'(da,'Point'(d,6,2),'Point'(a,2,2))
 ],
 [
  'Segment'(ac,'Point'(a,2,2),'Point'(c,6,6)),
  'Segment'(bd,'Point'(b,2,6),'Point'(d,6,2))
 ]
).
)";

inline const char* const kDeclarationListing = R"('Polygon'(Id,Segments).
'Polygon'(Id,Segments,Diagonals).
)";

// Drops every whitespace character outside quoted atoms.
inline std::string strip_layout(const std::string& text)
{
    std::string out;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted && (c == '\\' || (c == '\'' && i + 1 < text.size() && text[i + 1] == '\'')) && i + 1 < text.size()) {
            out += c;
            out += text[++i];
            continue;
        }
        if (c == '\'') {
            quoted = !quoted;
        } else if (!quoted && (c == ' ' || c == '\n' || c == '\t' || c == '\r')) {
            continue;
        }
        out += c;
    }
    return out;
}

inline ObjectValue point(const char* id, std::int64_t x, std::int64_t y)
{
    return ObjectValue::entity("Point", {ObjectValue::string(id), ObjectValue::integer(x), ObjectValue::integer(y)});
}

inline ObjectValue segment(const char* id, ObjectValue p0, ObjectValue p1)
{
    return ObjectValue::entity("Segment", {ObjectValue::string(id), std::move(p0), std::move(p1)});
}

// The tetragon built from points a(2,2), b(2,6), c(6,6), d(6,2).
inline ObjectValue sample_tetragon()
{
    return ObjectValue::entity(
        "Tetragon",
        {ObjectValue::string("abcd"),
         ObjectValue::array({segment("ab", point("a", 2, 2), point("b", 2, 6)),
                             segment("bc", point("b", 2, 6), point("c", 6, 6)),
                             segment("cd", point("c", 6, 6), point("d", 6, 2)),
                             segment("da", point("d", 6, 2), point("a", 2, 2))}),
         ObjectValue::array({segment("ac", point("a", 2, 2), point("c", 6, 6)),
                             segment("bd", point("b", 2, 6), point("d", 6, 2))})});
}

// Exercises every attribute type, nullability override, abstract parents,
// multi-level inheritance, subclass substitution and an association.
inline const char* const kRichSchema = R"(
class('Point', [], [attr(id, string), attr(x, int), attr(y, int)]).
class('Segment', [], [attr(id, string), attr(point0, entity('Point')), attr(point1, entity('Point'))]).
class('Polygon', [], [attr(id, string), attr(segments, list(entity('Segment')))]).
class('Tetragon', [extends('Polygon'), functor('Polygon')], [attr(diagonals, list(entity('Segment')))]).
class('Shape', [abstract], [attr(name, string), attr(visible, bool)]).
class('Circle', [extends('Shape')], [attr(center, entity('Point')), attr(radius, float)]).
class('Badge', [extends('Circle'), functor('org.example.Badge')], [attr(tags, list(string)), attr(weight, float, nullable)]).
class('Matrix', [], [attr(rows, list(list(int))), attr(scale, float)]).
class('Link', [association], [attr(source, entity('Shape')), attr(target, entity('Point')), attr(note, string, non_null), attr(flag, bool, nullable)]).
class('Record', [], [attr(key, string), attr(count, int, nullable), attr(ratios, list(float)), attr(flags, list(bool)), attr(owner, entity('Link'))]).
)";

}  // namespace objlog::testing
