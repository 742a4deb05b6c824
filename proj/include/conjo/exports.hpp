#pragma once

// File formats.
//   dot       digraph of M(X), vertices labelled by reduced words
//   csv       spectrum: re,im,multiplicity,is_max_modulus
//   matrix    sparse "row col coeff d_1 ... d_k" (0-based rows/cols) and a
//             dense integer CSV of M(X) at q = 1

#include <filesystem>
#include <string>
#include <vector>

#include "conjo/quantum.hpp"
#include "conjo/spectral.hpp"

namespace conjo {

std::string digraph_dot(const Digraph& d, const std::vector<std::string>& labels, const std::string& name);
std::string spectrum_csv(const Spectrum& s);
std::string sparse_matrix_text(const COperatorMatrix& m);
std::string dense_matrix_csv(const IntMatrix& m);

// Writes to a temporary file in the same directory, then renames it over
// the target. Throws OutputError.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace conjo
