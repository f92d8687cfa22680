#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "badic/tree.hpp"
#include "badic/windowed.hpp"

namespace badic {

// .bdt: "bdt b=<b> d=<d> n=<depth>" then one leaf per line as d
// comma-separated digit strings, sorted, no duplicates.
// .wdt: "wdt b=<b> d=<d> windows=<k>" then per window
// "window off=<i1,...,id> m=<m>" followed by its leaf lines.
using SetData = std::variant<CubeTree, WindowedSet>;

CubeTree parse_bdt(std::string_view text);
WindowedSet parse_wdt(std::string_view text);
// Dispatches on the header keyword.
SetData parse_set(std::string_view text);

void write_bdt(std::ostream& out, const CubeTree& tree);
void write_wdt(std::ostream& out, const WindowedSet& set);
std::string format_set(const SetData& set);

SetData load_set(const std::string& path);
void save_set(const std::string& path, const SetData& set);

}  // namespace badic
