#pragma once

#include <iosfwd>
#include <string>

#include "rmatrixlab/rmatrix.hpp"

namespace rml {

/// Row-major (re, im) pairs; metadata alongside.
std::string matrix_to_json(const RMatrix& R);
RMatrix matrix_from_json(const std::string& text);

/// Binary little-endian format: u32 n_dim, u32 tag length, tag bytes, then
/// 2 N^4 binary64 values row-major (re, im).
void matrix_to_binary(const RMatrix& R, std::ostream& out);
RMatrix matrix_from_binary(std::istream& in);

/// Fixed "%.17g"-style float formatting shared by all writers so that byte
/// streams are reproducible under a fixed seed.
std::string format_double(double v);

} // namespace rml
