#pragma once

#include <iosfwd>
#include <string>

#include "qepsoar/types.hpp"

namespace qepsoar::mm {

/// Reads a Matrix Market coordinate file. Fields real, integer, complex and
/// pattern are accepted, with general, symmetric, skew-symmetric or
/// hermitian storage. Throws Error(InvalidInput) on malformed input.
SparseMatrix read(std::istream& in);
SparseMatrix read_file(const std::string& path);

/// Writes a complex general coordinate file with full double precision.
void write(std::ostream& out, const SparseMatrix& a);
void write_file(const std::string& path, const SparseMatrix& a);

}  // namespace qepsoar::mm
