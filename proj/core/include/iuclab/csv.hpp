#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iuclab {

/// Shortest-form decimal with 17 significant digits (round-trips doubles).
std::string fmt17(double v);

/// Writes one CSV record; fields are emitted verbatim (no quoting needed for
/// the numeric/identifier content this library produces).
void csv_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace iuclab
