#pragma once

// Text formats for sets.
//
//   1-D set:   "#N=<int>" header, then one member per line.
//   grid set:  "#k=<int> #M=<int>" header, then one comma separated k-tuple
//              per line.
//
// Blank lines are ignored; any other line starting with '#' after the header
// is a comment.

#include <iosfwd>
#include <string>

#include "polyrec/core.hpp"

namespace polyrec::io {

DenseSet read_set(std::istream& in);
DenseSet read_set_file(const std::string& path);
void write_set(std::ostream& out, const DenseSet& a);

GridSet read_grid(std::istream& in);
GridSet read_grid_file(const std::string& path);
void write_grid(std::ostream& out, const GridSet& b);

}  // namespace polyrec::io
