#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kisin/phi_module.hpp"

namespace kisin {

// YAML record:
//   p, f (default 1), field_modulus (when f > 1; "x^2 + x + 1" or a
//   coefficient list, low degree first), e, r (integer or "inf"), rank,
//   matrix (list of rows of series literals).
// Other keys (inclusion, lattice_basis, input, kind, ...) are ignored.
// Shape errors throw ParseError; validation is left to the caller.
PhiModule parse_module_text(const std::string& text);
PhiModule load_module_file(const std::string& path);

struct Annotation {
    std::string key;
    std::string text;              // used when matrix is empty
    std::vector<std::vector<std::string>> matrix;
};

Annotation matrix_annotation(const std::string& key, const SeriesMatrix& m);
Annotation text_annotation(const std::string& key, const std::string& text);

// Canonical form; parse_module_text(emit_module(m)) == m.
std::string emit_module(const PhiModule& m, const std::vector<Annotation>& extra = {});

std::vector<int> parse_modulus(const std::string& text, int p);

}  // namespace kisin
